// cobos: batch CLI over the coboson numerics library.
//
// Subcommands: constants, spectrum, oracle, clock (+ clock packet),
// scatter, gpe (+ gpe ground), figures. Data files are deterministic CSV
// (17 significant digits); every data file gets a sidecar manifest JSON
// carrying the config hash and timestamps. Exit codes: 0 ok, 1 I/O,
// 2 config/validation, 3 numeric.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "cobos/clock.hpp"
#include "cobos/constants.hpp"
#include "cobos/gpe.hpp"
#include "cobos/io.hpp"
#include "cobos/oracle.hpp"
#include "cobos/quadrature.hpp"
#include "cobos/scattering.hpp"
#include "cobos/spectrum.hpp"
#include "cobos/units.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cobos;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string resolve_out(const std::string& path) {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  const char* dir = std::getenv("COBOS_OUT_DIR");
  if (!dir || !*dir) return path;
  return (fs::path(dir) / path).string();
}

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const auto& k : allowed)
      if (item.key() == k) ok = true;
    if (!ok) throw CliError("unknown key '" + item.key() + "' in " + where);
  }
}

double require_number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw CliError("missing key '" + key + "' in " + where);
  if (!j[key].is_number()) throw CliError("key '" + key + "' in " + where + " must be a number");
  return j[key].get<double>();
}

json load_json_file(const std::string& path) {
  const std::string text = read_file(path);
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw CliError("invalid JSON in " + path);
  return j;
}

Species parse_species(const std::string& spec) {
  try {
    return species_preset(spec);
  } catch (const std::invalid_argument&) {
  }
  if (!fs::exists(spec)) throw CliError("species '" + spec + "' is neither a preset nor a file");
  const json j = load_json_file(spec);
  reject_unknown_keys(j, {"m_e", "m_n", "Z"}, spec);
  const double m_e = require_number(j, "m_e", spec);
  const double m_n = require_number(j, "m_n", spec);
  if (!j.contains("Z") || !j["Z"].is_number_integer())
    throw CliError("key 'Z' in " + spec + " must be an integer");
  return make_species(m_e, m_n, j["Z"].get<int>());
}

WilsonCoefficients parse_wilson(const std::string& spec) {
  try {
    return WilsonCoefficients::preset(spec);
  } catch (const std::invalid_argument&) {
  }
  if (!fs::exists(spec)) throw CliError("wilson set '" + spec + "' is neither a preset nor a file");
  const json j = load_json_file(spec);
  const std::vector<std::string> keys = {"cF_e", "cF_n", "cD_e", "cD_n", "cS_e", "cS_n",
                                         "cW1_e", "cW1_n", "cA1_e", "cA1_n", "d1_en", "d1_ne",
                                         "d2_en", "d2_ne"};
  reject_unknown_keys(j, keys, spec);
  WilsonCoefficients w;
  auto pick = [&](const char* k, double& slot) {
    if (j.contains(k)) slot = j[k].get<double>();
  };
  pick("cF_e", w.cF_e);
  pick("cF_n", w.cF_n);
  pick("cD_e", w.cD_e);
  pick("cD_n", w.cD_n);
  pick("cS_e", w.cS_e);
  pick("cS_n", w.cS_n);
  pick("cW1_e", w.cW1_e);
  pick("cW1_n", w.cW1_n);
  pick("cA1_e", w.cA1_e);
  pick("cA1_n", w.cA1_n);
  pick("d1_en", w.d1_en);
  pick("d1_ne", w.d1_ne);
  pick("d2_en", w.d2_en);
  pick("d2_ne", w.d2_ne);
  return w;
}

QuantumNumbers parse_beta(const std::string& text) {
  QuantumNumbers b;
  int fields[5];
  char extra;
  if (std::sscanf(text.c_str(), "%d,%d,%d,%d,%d%c", &fields[0], &fields[1], &fields[2], &fields[3],
                  &fields[4], &extra) != 5)
    throw CliError("beta must be 'n,l,S,j,mj' (got '" + text + "')");
  b.n = fields[0];
  b.ell = fields[1];
  b.S = fields[2];
  b.j = fields[3];
  b.m_j = fields[4];
  validate(b);
  return b;
}

struct Sweep {
  double start = 0.0, stop = 0.0;
  int steps = 1;
  double at(int i) const {
    if (steps <= 1) return start;
    return start + (stop - start) * i / (steps - 1.0);
  }
};

Sweep parse_sweep(const std::string& text, const std::string& what) {
  Sweep s;
  char extra;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &s.start, &s.stop, &s.steps, &extra) != 3 ||
      s.steps < 1)
    throw CliError(what + " sweep must be 'start:stop:steps' (got '" + text + "')");
  return s;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || n < 2 * threads) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

void write_with_manifest(const CsvWriter& csv, const std::string& out_path,
                         const std::string& command, const std::string& config,
                         const std::string& coeff_set) {
  csv.write(out_path);
  RunManifest m;
  m.command = command;
  m.config_hash = fnv1a_hex(config);
  m.coefficient_set = coeff_set;
  m.outputs = {out_path};
  m.write(out_path + ".manifest.json");
}

// ---------------------------------------------------------------- constants

int cmd_constants(const std::string& out) {
  const std::string dump = constants_json();
  if (out.empty()) {
    std::cout << dump << "\n";
  } else {
    const std::string path = resolve_out(out);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << dump << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- spectrum

int cmd_spectrum(const std::string& species_spec, const std::string& wilson_spec, int nmax,
                 const std::string& out, const std::string& json_out, int threads) {
  const Species s = parse_species(species_spec);
  const WilsonCoefficients w = parse_wilson(wilson_spec);
  const auto betas = enumerate_states(nmax);

  std::vector<EnergyLevel> levels(betas.size());
  parallel_for(static_cast<int>(betas.size()), threads, [&](int i) {
    levels[i].beta = betas[i];
    levels[i].E0 = energy0(s, betas[i].n);
    levels[i].E1 = energy1(s, w, betas[i]);
    levels[i].M_alpha = state_mass(s, betas[i]);
  });
  std::sort(levels.begin(), levels.end(), [](const EnergyLevel& a, const EnergyLevel& b) {
    auto key = [](const EnergyLevel& e) {
      return std::tuple<int, double, int, int, int, int>(e.beta.n, e.E1, e.beta.ell, e.beta.S,
                                                         e.beta.j, e.beta.m_j);
    };
    return key(a) < key(b);
  });

  CsvWriter csv;
  csv.header = {"n", "ell", "S", "j", "m_j", "E0_hartree", "E1_hartree", "M_alpha_rel_shift"};
  for (const auto& lvl : levels) {
    csv.add_row({std::to_string(lvl.beta.n), std::to_string(lvl.beta.ell),
                 std::to_string(lvl.beta.S), std::to_string(lvl.beta.j),
                 std::to_string(lvl.beta.m_j), format_number(lvl.E0), format_number(lvl.E1),
                 format_number((lvl.M_alpha - s.M) / s.M)});
  }
  const std::string config = species_spec + "|" + wilson_spec + "|" + std::to_string(nmax);
  write_with_manifest(csv, resolve_out(out), "spectrum", config, wilson_spec);

  if (!json_out.empty()) {
    nlohmann::ordered_json j;
    j["constants_version"] = constants().version;
    j["coefficient_set"] = wilson_spec;
    j["species"] = {{"m_e", s.m_e}, {"m_n", s.m_n}, {"Z", s.Z}};
    j["levels"] = json::array();
    for (const auto& lvl : levels)
      j["levels"].push_back({{"n", lvl.beta.n},
                             {"ell", lvl.beta.ell},
                             {"S", lvl.beta.S},
                             {"j", lvl.beta.j},
                             {"m_j", lvl.beta.m_j},
                             {"E0_hartree", lvl.E0},
                             {"E1_hartree", lvl.E1},
                             {"M_alpha", lvl.M_alpha}});
    std::ofstream f(resolve_out(json_out), std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + json_out);
    f << j.dump(2) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------- oracle

int cmd_oracle(const std::string& species_spec, const std::string& wilson_spec,
               const std::string& beta_text, const std::string& out) {
  const Species s = parse_species(species_spec);
  const WilsonCoefficients w = parse_wilson(wilson_spec);
  const QuantumNumbers b = parse_beta(beta_text);
  const auto bd = energy1_oracle_breakdown(s, w, b, constants().c);
  const double closed = energy1(s, w, b);

  nlohmann::ordered_json j;
  j["beta"] = {{"n", b.n}, {"ell", b.ell}, {"S", b.S}, {"j", b.j}, {"m_j", b.m_j}};
  j["kinetic"] = bd.kinetic;
  j["kinetic_alt_route"] = bd.kinetic_alt;
  j["orbit_bare"] = bd.orbit_bare;
  j["orbit_counterterm"] = bd.orbit_counterterm;
  j["darwin"] = bd.darwin;
  j["contact"] = bd.contact;
  j["spin_orbit_total"] = bd.spin_orbit_total;
  j["spin_orbit_rel"] = bd.spin_orbit_rel;
  j["spin_dipole"] = bd.spin_dipole;
  j["total"] = bd.total;
  j["closed_form"] = closed;
  j["relative_difference"] = std::abs(bd.total - closed) / std::abs(closed);
  j["hermiticity_defect"] = bd.hermiticity_defect;
  const std::string text = j.dump(2);
  if (out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(resolve_out(out), std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + out);
    f << text << "\n";
  }
  return 0;
}

// -------------------------------------------------------------------- clock

int cmd_clock_sweep(const std::string& species_spec, const std::string& preset,
                    const std::string& g_text, const std::string& e_text,
                    const std::string& vsweep_text, const std::string& out) {
  ClockParams p;
  std::string config;
  if (!preset.empty()) {
    p = clock_preset(preset);
    config = "preset:" + preset;
  } else {
    const Species s = parse_species(species_spec);
    p = reduce_to_clock(s, parse_beta(g_text), parse_beta(e_text));
    config = species_spec + "|" + g_text + "|" + e_text;
  }
  if (vsweep_text.empty()) {
    nlohmann::ordered_json j;
    j["M"] = p.M;
    j["M_bar"] = p.M_bar;
    j["M_g"] = p.M_g;
    j["M_e"] = p.M_e;
    j["Omega_hartree"] = p.Omega;
    j["E_g0"] = p.E_g0;
    j["E_e0"] = p.E_e0;
    j["Omega_over_Mbar_c2"] = p.Omega / (p.M_bar * p.c * p.c);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  const Sweep sweep = parse_sweep(vsweep_text, "--vsweep");
  CsvWriter csv;
  csv.header = {"v_over_c", "v_au", "Omega_shifted_hartree", "relative_shift"};
  for (int i = 0; i < sweep.steps; ++i) {
    const double frac = sweep.at(i);
    const double v = frac * p.c;
    const double shifted = doppler_shift(p.Omega, v, p.c);
    csv.add_row({format_number(frac), format_number(v), format_number(shifted),
                 format_number(shifted / p.Omega - 1.0)});
  }
  write_with_manifest(csv, resolve_out(out), "clock", config + "|" + vsweep_text, "");
  return 0;
}

int cmd_clock_packet(const std::string& species_spec, const std::string& g_text,
                     const std::string& e_text, double sigma0, double p0, double x0,
                     const std::string& tsweep_text, const std::string& out) {
  const Species s = parse_species(species_spec);
  const ClockParams p = reduce_to_clock(s, parse_beta(g_text), parse_beta(e_text));
  const Sweep sweep = parse_sweep(tsweep_text, "--tsweep");
  GaussianPacket pg{p.M_g, x0, sigma0, p0};
  GaussianPacket pe{p.M_e, x0, sigma0, p0};
  CsvWriter csv;
  csv.header = {"t", "center_g", "width_g", "center_e", "width_e"};
  for (int i = 0; i < sweep.steps; ++i) {
    const double t = sweep.at(i);
    const auto sg = packet_evolve(pg, t);
    const auto se = packet_evolve(pe, t);
    csv.add_row({format_number(t), format_number(sg.center), format_number(sg.width),
                 format_number(se.center), format_number(se.width)});
  }
  const std::string config = species_spec + "|" + g_text + "|" + e_text + "|" + tsweep_text;
  write_with_manifest(csv, resolve_out(out), "clock packet", config, "");
  return 0;
}

// ------------------------------------------------------------------ scatter

Vec3 parse_vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw CliError(where + " must be a 3-vector [x,y,z]");
  return Vec3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

CobosonConfig parse_coboson(const json& j, const std::string& where) {
  reject_unknown_keys(j, {"R", "r", "P", "spin_n", "spin_e"}, where);
  CobosonConfig c;
  if (j.contains("R")) c.R = parse_vec3(j["R"], where + ".R");
  if (j.contains("r")) c.r = parse_vec3(j["r"], where + ".r");
  if (j.contains("P")) c.P = parse_vec3(j["P"], where + ".P");
  if (j.contains("spin_n")) c.spin_n = parse_vec3(j["spin_n"], where + ".spin_n");
  if (j.contains("spin_e")) c.spin_e = parse_vec3(j["spin_e"], where + ".spin_e");
  return c;
}

int cmd_scatter(const std::string& species_spec, const std::string& wilson_spec,
                const std::string& geometry_path, const std::string& sweep_text,
                const std::string& out, int threads) {
  const Species s = parse_species(species_spec);
  const WilsonCoefficients w = parse_wilson(wilson_spec);
  const json geo = load_json_file(geometry_path);
  reject_unknown_keys(geo, {"coboson1", "coboson2"}, geometry_path);
  if (!geo.contains("coboson1") || !geo.contains("coboson2"))
    throw CliError("geometry file needs 'coboson1' and 'coboson2'");
  const CobosonConfig base1 = parse_coboson(geo["coboson1"], "coboson1");
  const CobosonConfig base2 = parse_coboson(geo["coboson2"], "coboson2");

  Sweep dr_sweep{(base1.R - base2.R).norm(), (base1.R - base2.R).norm(), 1};
  Sweep th_sweep{0.0, 0.0, 1};
  bool has_theta = false;
  bool has_dr = false;
  if (!sweep_text.empty()) {
    // Parts separated by ';' or ','.
    std::string normalized = sweep_text;
    for (char& ch : normalized)
      if (ch == ',') ch = ';';
    std::istringstream is(normalized);
    std::string part;
    while (std::getline(is, part, ';')) {
      if (part.empty()) continue;
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw CliError("sweep part '" + part + "' must be key=a:b:n");
      const std::string key = part.substr(0, eq);
      const std::string val = part.substr(eq + 1);
      if (key == "DeltaR") {
        dr_sweep = parse_sweep(val, "DeltaR");
        has_dr = true;
      } else if (key == "theta") {
        th_sweep = parse_sweep(val, "theta");
        has_theta = true;
      } else {
        throw CliError("unknown sweep key '" + key + "' (DeltaR, theta)");
      }
    }
  }

  struct Row {
    double dr = 0.0, theta = 0.0;
    PotentialComponents pc;
    double mp = 0.0;
  };
  const int total = dr_sweep.steps * th_sweep.steps;
  std::vector<Row> rows(total);
  parallel_for(total, threads, [&](int idx) {
    const int i = idx / th_sweep.steps;
    const int k = idx % th_sweep.steps;
    const double dr = dr_sweep.at(i);
    CobosonConfig c1 = base1;
    CobosonConfig c2 = base2;
    if (has_dr || has_theta) {
      c1.R = Vec3{0.0, 0.0, dr};
      c2.R = Vec3{0.0, 0.0, 0.0};
    }
    double theta;
    if (has_theta) {
      theta = th_sweep.at(k);
      const Vec3 dir{std::sin(theta), 0.0, std::cos(theta)};
      c1.r = c1.r.norm() * dir;
      c2.r = c2.r.norm() * dir;
    } else {
      const double rn = c1.r.norm();
      theta = rn > 0.0 ? std::acos(c1.r.z / rn) : 0.0;
    }
    Row row;
    row.dr = dr;
    row.theta = theta;
    row.pc = potential_components(s, w, c1, c2);
    row.mp = multipole_potential(s, c1.r, c2.r, c1.R - c2.R);
    rows[idx] = row;
  });

  bool any_warning = false;
  CsvWriter csv;
  csv.header = {"DeltaR", "theta", "V_C", "V_LL", "V_LS", "V_SS", "V_sum", "V_multipole"};
  for (const Row& row : rows) {
    any_warning = any_warning || row.pc.scale_warning;
    csv.add_row({format_number(row.dr), format_number(row.theta), format_number(row.pc.C),
                 format_number(row.pc.LL), format_number(row.pc.LS), format_number(row.pc.SS),
                 format_number(row.pc.sum()), format_number(row.mp)});
  }
  if (any_warning)
    std::cerr << "warning: some configurations violate the multipole scale separation"
                 " |DeltaR| >= 2(|r1|+|r2|)\n";
  const std::string config = species_spec + "|" + read_file(geometry_path) + "|" + sweep_text;
  write_with_manifest(csv, resolve_out(out), "scatter", config, wilson_spec);
  return 0;
}

// ---------------------------------------------------------------------- gpe

GpeProblem parse_gpe_problem(const std::string& path, std::vector<json>* initial_specs,
                             std::vector<double>* mode_weights) {
  const json j = load_json_file(path);
  reject_unknown_keys(j,
                      {"grid", "c", "include_p4", "mass_p4", "gauge", "modes", "coupling", "eta",
                       "initial", "mode_weights"},
                      path);
  GpeProblem p;
  if (!j.contains("grid")) throw CliError("gpe problem needs 'grid'");
  reject_unknown_keys(j["grid"], {"length", "points"}, "grid");
  p.grid.length = require_number(j["grid"], "length", "grid");
  p.grid.points = static_cast<int>(require_number(j["grid"], "points", "grid"));
  if (j.contains("c")) p.c = j["c"].get<double>();
  if (j.contains("include_p4")) p.include_P4 = j["include_p4"].get<bool>();
  if (j.contains("mass_p4")) p.mass_p4 = j["mass_p4"].get<double>();

  if (!j.contains("modes") || !j["modes"].is_array() || j["modes"].empty())
    throw CliError("gpe problem needs a nonempty 'modes' array");
  for (const auto& jm : j["modes"]) {
    reject_unknown_keys(jm, {"label", "mass", "e_offset", "potential"}, "modes[]");
    GpeMode m;
    m.label = jm.contains("label") ? jm["label"].get<std::string>() : "mode";
    m.mass = require_number(jm, "mass", "modes[]");
    m.e_offset = jm.contains("e_offset") ? jm["e_offset"].get<double>() : 0.0;
    if (jm.contains("potential")) {
      const json& jp = jm["potential"];
      const std::string type = jp.value("type", "none");
      if (type == "none") {
      } else if (type == "harmonic") {
        reject_unknown_keys(jp, {"type", "omega", "center"}, "potential");
        const double omega = require_number(jp, "omega", "potential");
        const double center = jp.value("center", 0.0);
        m.v_ext.resize(p.grid.points);
        for (int i = 0; i < p.grid.points; ++i) {
          const double x = p.grid.x(i) - center;
          m.v_ext[i] = 0.5 * m.mass * omega * omega * x * x;
        }
      } else if (type == "values") {
        reject_unknown_keys(jp, {"type", "values"}, "potential");
        m.v_ext = jp["values"].get<std::vector<double>>();
      } else {
        throw CliError("unknown potential type '" + type + "'");
      }
    }
    p.modes.push_back(std::move(m));
  }
  const int K = p.n_modes();

  if (j.contains("coupling") && !j["coupling"].is_null()) {
    reject_unknown_keys(j["coupling"], {"constant", "x_modulation"}, "coupling");
    const json& jc = j["coupling"]["constant"];
    if (!jc.is_array() || static_cast<int>(jc.size()) != K)
      throw CliError("coupling.constant must be a KxK matrix of [re,im]");
    std::vector<cdouble> constant(static_cast<size_t>(K) * K, cdouble(0.0));
    for (int a = 0; a < K; ++a)
      for (int b = 0; b < K; ++b) {
        const json& e = jc[a][b];
        constant[static_cast<size_t>(a) * K + b] =
            e.is_array() ? cdouble(e[0].get<double>(), e[1].get<double>())
                         : cdouble(e.get<double>(), 0.0);
      }
    if (j["coupling"].contains("x_modulation")) {
      const auto mod = j["coupling"]["x_modulation"].get<std::vector<double>>();
      if (static_cast<int>(mod.size()) != p.grid.points)
        throw CliError("coupling.x_modulation must have grid.points samples");
      p.coupling_per_point = true;
      p.coupling.assign(static_cast<size_t>(K) * K * p.grid.points, cdouble(0.0));
      for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b)
          for (int ix = 0; ix < p.grid.points; ++ix)
            p.coupling[(static_cast<size_t>(a) * K + b) * p.grid.points + ix] =
                constant[static_cast<size_t>(a) * K + b] * mod[ix];
    } else {
      p.coupling = std::move(constant);
    }
  }

  if (j.contains("eta") && !j["eta"].is_null()) {
    p.eta.assign(static_cast<size_t>(K) * K * K * K, cdouble(0.0));
    for (const auto& je : j["eta"]) {
      reject_unknown_keys(je, {"indices", "value"}, "eta[]");
      const auto idx = je["indices"].get<std::vector<int>>();
      if (idx.size() != 4) throw CliError("eta indices must be [a,nu,b,mu]");
      for (int q : idx)
        if (q < 0 || q >= K) throw CliError("eta index out of range");
      const json& v = je["value"];
      const cdouble val = v.is_array() ? cdouble(v[0].get<double>(), v[1].get<double>())
                                       : cdouble(v.get<double>(), 0.0);
      p.eta[((static_cast<size_t>(idx[0]) * K + idx[1]) * K + idx[2]) * K + idx[3]] = val;
    }
  }

  // Gauge: "none", "min" (default), or an explicit number.
  double gauge = 0.0;
  bool gauge_min = true;
  if (j.contains("gauge")) {
    if (j["gauge"].is_string()) {
      const std::string g = j["gauge"].get<std::string>();
      if (g == "none") gauge_min = false;
      else if (g == "min") gauge_min = true;
      else throw CliError("gauge must be 'none', 'min' or a number");
    } else if (j["gauge"].is_number()) {
      gauge_min = false;
      gauge = j["gauge"].get<double>();
    } else {
      throw CliError("gauge must be 'none', 'min' or a number");
    }
  }
  if (gauge_min) {
    gauge = p.modes[0].e_offset;
    for (const auto& m : p.modes) gauge = std::min(gauge, m.e_offset);
  }
  p.gauge_offset = gauge;

  if (initial_specs) {
    initial_specs->clear();
    if (j.contains("initial")) {
      if (!j["initial"].is_array() || static_cast<int>(j["initial"].size()) != K)
        throw CliError("'initial' must have one entry per mode");
      for (const auto& ji : j["initial"]) initial_specs->push_back(ji);
    }
  }
  if (mode_weights) {
    if (j.contains("mode_weights")) {
      *mode_weights = j["mode_weights"].get<std::vector<double>>();
      if (static_cast<int>(mode_weights->size()) != K)
        throw CliError("'mode_weights' must have one entry per mode");
    } else {
      mode_weights->assign(K, 1.0 / K);
    }
  }
  return p;
}

GpeState build_initial_state(const GpeSimulator& sim, const std::vector<json>& specs) {
  const GpeProblem& p = sim.problem();
  const int K = p.n_modes();
  if (static_cast<int>(specs.size()) != K)
    throw CliError("gpe evolve requires an 'initial' entry per mode");
  GpeState st;
  st.psi.assign(K, std::vector<cdouble>(p.grid.points, cdouble(0.0)));
  for (int a = 0; a < K; ++a) {
    const json& js = specs[a];
    const std::string type = js.value("type", "");
    if (type == "gaussian") {
      reject_unknown_keys(js, {"type", "x0", "sigma", "k", "amplitude"}, "initial[]");
      const double x0 = js.value("x0", 0.0);
      const double sigma = require_number(js, "sigma", "initial[]");
      const double k = js.value("k", 0.0);
      const double amp = js.value("amplitude", 1.0);
      double nrm = 0.0;
      for (int i = 0; i < p.grid.points; ++i) {
        const double x = p.grid.x(i) - x0;
        const double env = std::exp(-x * x / (4.0 * sigma * sigma));
        st.psi[a][i] = env * std::exp(cdouble(0.0, k * p.grid.x(i)));
        nrm += std::norm(st.psi[a][i]) * p.grid.dx();
      }
      const double scale = nrm > 0.0 ? std::sqrt(amp * amp / nrm) : 0.0;
      for (auto& z : st.psi[a]) z *= scale;
    } else if (type == "plane_wave") {
      reject_unknown_keys(js, {"type", "k_index", "amplitude_re", "amplitude_im"}, "initial[]");
      const int kidx = static_cast<int>(require_number(js, "k_index", "initial[]"));
      const cdouble amp(js.value("amplitude_re", 1.0), js.value("amplitude_im", 0.0));
      const double k = 2.0 * kPi * kidx / p.grid.length;
      for (int i = 0; i < p.grid.points; ++i)
        st.psi[a][i] = amp * std::exp(cdouble(0.0, k * p.grid.x(i)));
    } else if (type == "uniform") {
      reject_unknown_keys(js, {"type", "amplitude"}, "initial[]");
      const double amp = js.value("amplitude", 1.0);
      for (auto& z : st.psi[a]) z = amp;
    } else {
      throw CliError("initial[].type must be gaussian, plane_wave or uniform");
    }
  }
  return st;
}

void write_snapshot(const GpeProblem& p, const GpeState& st, const std::string& path) {
  CsvWriter csv;
  csv.header = {"x"};
  for (const auto& m : p.modes) {
    csv.header.push_back("re_" + m.label);
    csv.header.push_back("im_" + m.label);
  }
  for (int i = 0; i < p.grid.points; ++i) {
    std::vector<std::string> row{format_number(p.grid.x(i))};
    for (int a = 0; a < p.n_modes(); ++a) {
      row.push_back(format_number(st.psi[a][i].real()));
      row.push_back(format_number(st.psi[a][i].imag()));
    }
    csv.add_row(std::move(row));
  }
  csv.write(path);
}

int cmd_gpe_evolve(const std::string& problem_path, double tmax, double dt, int snap_every,
                   const std::string& out_dir) {
  std::vector<json> init;
  GpeProblem p = parse_gpe_problem(problem_path, &init, nullptr);
  GpeSimulator sim(std::move(p));
  GpeState st = build_initial_state(sim, init);
  const std::string dir = resolve_out(out_dir);
  fs::create_directories(dir);

  const auto obs0 = sim.observables(st);
  CsvWriter series;
  series.header = {"t", "norm_total", "energy", "center", "width"};
  for (const auto& m : sim.problem().modes) series.header.push_back("pop_" + m.label);
  series.header.push_back("relative_phase_01");
  int cfl_warnings = 0;

  auto record = [&](const GpeState& state) {
    const auto obs = sim.observables(state);
    std::vector<std::string> row{format_number(state.t), format_number(obs.norm_total),
                                 format_number(obs.energy), format_number(obs.center),
                                 format_number(obs.width)};
    for (double pop : obs.populations) row.push_back(format_number(pop));
    row.push_back(format_number(obs.relative_phase_01));
    series.add_row(std::move(row));
  };

  record(st);
  std::vector<std::string> outputs;
  const int steps = static_cast<int>(std::llround(tmax / dt));
  int snap_index = 0;
  char name[64];
  std::snprintf(name, sizeof(name), "snapshot_%06d.csv", snap_index++);
  write_snapshot(sim.problem(), st, (fs::path(dir) / name).string());
  outputs.push_back((fs::path(dir) / name).string());
  for (int i = 1; i <= steps; ++i) {
    sim.step(st, dt);
    if (sim.last_diagnostics().cfl_warning) {
      if (cfl_warnings == 0)
        std::cerr << "warning: dt exceeds 2*pi/E_max for the grid kinetic energies\n";
      ++cfl_warnings;
    }
    if ((snap_every > 0 && i % snap_every == 0) || i == steps) {
      record(st);
      std::snprintf(name, sizeof(name), "snapshot_%06d.csv", snap_index++);
      write_snapshot(sim.problem(), st, (fs::path(dir) / name).string());
      outputs.push_back((fs::path(dir) / name).string());
    }
  }
  const auto obs1 = sim.observables(st);

  const std::string series_path = (fs::path(dir) / "timeseries.csv").string();
  series.write(series_path);
  outputs.push_back(series_path);

  nlohmann::ordered_json man;
  man["command"] = "gpe";
  man["config_hash"] = fnv1a_hex(read_file(problem_path));
  man["constants_version"] = constants().version;
  man["grid"] = {{"length", sim.problem().grid.length}, {"points", sim.problem().grid.points}};
  man["steps"] = steps;
  man["dt"] = dt;
  man["cfl_warnings"] = cfl_warnings;
  man["norm_initial"] = obs0.norm_total;
  man["norm_final"] = obs1.norm_total;
  man["norm_drift"] = obs1.norm_total - obs0.norm_total;
  man["energy_initial"] = obs0.energy;
  man["energy_final"] = obs1.energy;
  man["energy_drift_rel"] =
      (obs1.energy - obs0.energy) / std::max(std::abs(obs0.energy), 1e-300);
  man["outputs"] = outputs;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  man["timestamp_unix_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  std::ofstream f((fs::path(dir) / "run_manifest.json").string(), std::ios::binary);
  f << man.dump(2) << "\n";
  return 0;
}

int cmd_gpe_ground(const std::string& problem_path, double tol, double dtau,
                   const std::string& out_dir) {
  std::vector<double> weights;
  GpeProblem p = parse_gpe_problem(problem_path, nullptr, &weights);
  GpeSimulator sim(std::move(p));
  const auto gs = sim.ground_state(weights, tol, dtau);
  const std::string dir = resolve_out(out_dir);
  fs::create_directories(dir);
  const std::string ground_path = (fs::path(dir) / "ground.csv").string();
  write_snapshot(sim.problem(), gs.state, ground_path);

  nlohmann::ordered_json man;
  man["command"] = "gpe ground";
  man["config_hash"] = fnv1a_hex(read_file(problem_path));
  man["constants_version"] = constants().version;
  man["energy"] = gs.energy;
  man["chemical_potential"] = gs.chemical_potential;
  man["iterations"] = gs.iterations;
  man["converged"] = gs.converged;
  man["outputs"] = {ground_path};
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  man["timestamp_unix_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  std::ofstream f((fs::path(dir) / "run_manifest.json").string(), std::ios::binary);
  f << man.dump(2) << "\n";
  std::cout << "energy " << format_number(gs.energy) << "\nmu "
            << format_number(gs.chemical_potential) << "\niterations " << gs.iterations << "\n";
  return 0;
}

// ------------------------------------------------------------------ figures


int cmd_figures(const std::string& which, int Z, const std::string& out) {
  if (which == "fig4") {
    return cmd_spectrum("hydrogen", "hydrogen", 2, out, "", 1);
  }
  if (which == "fig5a" || which == "fig5b") {
    const int z_used = (which == "fig5a") ? std::max(Z, 2) : 1;
    CsvWriter csv;
    csv.header = {"DeltaR", "theta", "V"};
    for (int i = 0; i < 40; ++i) {
      const double dr = 2.0 + 48.0 * i / 39.0;
      for (int k = 0; k < 41; ++k) {
        const double theta = kPi * k / 40.0;
        csv.add_row({format_number(dr), format_number(theta),
                     format_number(dd_angular(z_used, 1.0, dr, theta))});
      }
    }
    write_with_manifest(csv, resolve_out(out), "figures " + which, which + std::to_string(z_used),
                        "");
    return 0;
  }
  if (which == "fig6") {
    return cmd_clock_packet("hydrogen", "1,0,0,0,0", "2,0,0,0,0", 50.0, 2.0, 0.0, "0:2.0e6:41",
                            out);
  }
  throw CliError("unknown figure '" + which + "' (fig4, fig5a, fig5b, fig6)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coboson numerics: spectra, clocks, scattering and mean-field dynamics"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for sweeps");

  // constants
  auto* c_cmd = app.add_subcommand("constants", "dump the pinned constants table");
  bool dump = false;
  std::string c_out;
  c_cmd->add_flag("--dump", dump, "emit the table as JSON");
  c_cmd->add_option("--out", c_out, "output file (stdout if omitted)");

  // spectrum
  auto* s_cmd = app.add_subcommand("spectrum", "level table with first-order shifts");
  std::string s_species = "hydrogen", s_wilson = "hydrogen", s_out, s_json;
  int s_nmax = 2;
  s_cmd->add_option("--species", s_species, "species preset or JSON file");
  s_cmd->add_option("--wilson", s_wilson, "Wilson preset or JSON file");
  s_cmd->add_option("--nmax", s_nmax, "largest principal quantum number")->required();
  s_cmd->add_option("--out", s_out, "CSV output")->required();
  s_cmd->add_option("--json", s_json, "also write a JSON variant with metadata");

  // oracle
  auto* o_cmd = app.add_subcommand("oracle", "per-term quadrature breakdown of E1");
  std::string o_species = "hydrogen", o_wilson = "tree", o_beta, o_out;
  o_cmd->add_option("--species", o_species, "species preset or JSON file");
  o_cmd->add_option("--wilson", o_wilson, "Wilson preset or JSON file");
  o_cmd->add_option("--beta", o_beta, "state as n,l,S,j,mj")->required();
  bool o_report = false;
  o_cmd->add_flag("--report", o_report, "emit the per-term JSON report (default behavior)");
  o_cmd->add_option("--out", o_out, "JSON output (stdout if omitted)");

  // clock
  auto* k_cmd = app.add_subcommand("clock", "two-level mass-defect reduction");
  std::string k_species = "hydrogen", k_preset, k_g, k_e, k_vsweep, k_out;
  k_cmd->add_option("--species", k_species, "species preset or JSON file");
  k_cmd->add_option("--preset", k_preset, "clock preset (sr88) instead of --g/--e");
  k_cmd->add_option("--g", k_g, "ground state n,l,S,j,mj");
  k_cmd->add_option("--e", k_e, "excited state n,l,S,j,mj");
  k_cmd->add_option("--vsweep", k_vsweep, "v/c sweep start:stop:steps");
  k_cmd->add_option("--out", k_out, "CSV output (required with --vsweep)");

  auto* kp_cmd = k_cmd->add_subcommand("packet", "state-dependent Gaussian packet evolution");
  std::string kp_species = "hydrogen", kp_g = "1,0,0,0,0", kp_e = "2,0,0,0,0", kp_tsweep, kp_out;
  double kp_sigma0 = 10.0, kp_p0 = 1.0, kp_x0 = 0.0;
  kp_cmd->add_option("--species", kp_species, "species preset or JSON file");
  kp_cmd->add_option("--g", kp_g, "ground state n,l,S,j,mj");
  kp_cmd->add_option("--e", kp_e, "excited state n,l,S,j,mj");
  kp_cmd->add_option("--sigma0", kp_sigma0, "initial width (bohr)");
  kp_cmd->add_option("--p0", kp_p0, "mean momentum (a.u.)");
  kp_cmd->add_option("--x0", kp_x0, "initial center (bohr)");
  kp_cmd->add_option("--tsweep,--t-sweep", kp_tsweep, "time sweep start:stop:steps")->required();
  kp_cmd->add_option("--out", kp_out, "CSV output")->required();

  // scatter
  auto* sc_cmd = app.add_subcommand("scatter", "pair potential components on a geometry sweep");
  std::string sc_species = "hydrogen", sc_wilson = "tree", sc_geometry, sc_sweep, sc_out;
  sc_cmd->add_option("--species", sc_species, "species preset or JSON file");
  sc_cmd->add_option("--wilson", sc_wilson, "Wilson preset or JSON file");
  sc_cmd->add_option("--geometry", sc_geometry, "geometry JSON file")->required();
  sc_cmd->add_option("--sweep", sc_sweep, "e.g. DeltaR=10:80:8;theta=0:3.14:25");
  sc_cmd->add_option("--out", sc_out, "CSV output")->required();

  // gpe
  auto* g_cmd = app.add_subcommand("gpe", "multi-mode mean-field evolution");
  std::string g_problem, g_out = ".";
  double g_tmax = 0.0, g_dt = 0.0;
  int g_snap = 0;
  g_cmd->add_option("--problem", g_problem, "problem JSON file");
  g_cmd->add_option("--tmax", g_tmax, "total real time");
  g_cmd->add_option("--dt", g_dt, "time step");
  g_cmd->add_option("--snap-every", g_snap, "snapshot interval in steps");
  g_cmd->add_option("--out", g_out, "output directory");

  auto* gg_cmd = g_cmd->add_subcommand("ground", "imaginary-time ground state");
  std::string gg_problem, gg_out = ".";
  double gg_tol = 1e-10, gg_dtau = 0.0;
  gg_cmd->add_option("--problem", gg_problem, "problem JSON file")->required();
  gg_cmd->add_option("--tol", gg_tol, "relative energy tolerance per step");
  gg_cmd->add_option("--dtau", gg_dtau, "imaginary time step (auto if omitted)");
  gg_cmd->add_option("--out", gg_out, "output directory");

  // figures
  auto* f_cmd = app.add_subcommand("figures", "regenerate reference data grids");
  std::string f_which, f_out;
  int f_Z = 1;
  f_cmd->add_option("figure", f_which, "fig4 | fig5a | fig5b | fig6")->required();
  f_cmd->add_option("--Z", f_Z, "charge number for fig5 grids");
  f_cmd->add_option("--out", f_out, "CSV output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << app.help() << "\n";
    return 2;
  }

  try {
    if (c_cmd->parsed()) return cmd_constants(c_out);
    if (s_cmd->parsed()) return cmd_spectrum(s_species, s_wilson, s_nmax, s_out, s_json, threads);
    if (o_cmd->parsed()) return cmd_oracle(o_species, o_wilson, o_beta, o_out);
    if (k_cmd->parsed()) {
      if (kp_cmd->parsed())
        return cmd_clock_packet(kp_species, kp_g, kp_e, kp_sigma0, kp_p0, kp_x0, kp_tsweep,
                                kp_out);
      if (k_preset.empty() && (k_g.empty() || k_e.empty()))
        throw CliError("clock needs either --preset or both --g and --e");
      if (!k_vsweep.empty() && k_out.empty()) throw CliError("clock --vsweep requires --out");
      return cmd_clock_sweep(k_species, k_preset, k_g, k_e, k_vsweep, k_out);
    }
    if (sc_cmd->parsed())
      return cmd_scatter(sc_species, sc_wilson, sc_geometry, sc_sweep, sc_out, threads);
    if (g_cmd->parsed()) {
      if (gg_cmd->parsed()) return cmd_gpe_ground(gg_problem, gg_tol, gg_dtau, gg_out);
      if (g_problem.empty() || !(g_tmax > 0.0) || !(g_dt > 0.0))
        throw CliError("gpe evolve needs --problem, --tmax > 0 and --dt > 0");
      return cmd_gpe_evolve(g_problem, g_tmax, g_dt, g_snap, g_out);
    }
    if (f_cmd->parsed()) return cmd_figures(f_which, f_Z, f_out);
    std::cerr << app.help() << "\n";
    return 2;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const unit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 1;
  }
}
