#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = COBOS_CLI_PATH;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string out_file = (fs::temp_directory_path() / "cobos_cli_out.txt").string();
  const std::string cmd = kCli + " " + args + " > " + out_file + " 2>&1";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(rc);
  std::ifstream f(out_file);
  std::ostringstream os;
  os << f.rdbuf();
  r.output = os.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("cobos_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("constants --dump prints the pinned table") {
  const auto r = run("constants --dump");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("CODATA-2018") != std::string::npos);
}

TEST_CASE("unknown flag exits 2 with usage text") {
  const auto r = run("spectrum --does-not-exist 1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("Usage") != std::string::npos);
}

TEST_CASE("unknown subcommand exits 2") {
  const auto r = run("fourier");
  CHECK(r.exit_code == 2);
}

TEST_CASE("spectrum: determinism and content") {
  TempDir tmp;
  const std::string out1 = tmp.file("levels1.csv");
  const std::string out2 = tmp.file("levels2.csv");
  const auto r1 = run("spectrum --species hydrogen --wilson hydrogen --nmax 2 --out " + out1);
  REQUIRE(r1.exit_code == 0);
  const auto r2 = run("spectrum --species hydrogen --wilson hydrogen --nmax 2 --out " + out2);
  REQUIRE(r2.exit_code == 0);
  const std::string a = slurp(out1);
  CHECK(a == slurp(out2));  // byte identical
  // Header plus all 20 levels for n <= 2.
  CHECK(a.find("n,ell,S,j,m_j,E0_hartree,E1_hartree,M_alpha_rel_shift") == 0);
  int lines = 0;
  for (char ch : a)
    if (ch == '\n') ++lines;
  CHECK(lines == 21);
  // Sidecar manifest exists and carries the constants version.
  const std::string man = slurp(out1 + ".manifest.json");
  CHECK(man.find("CODATA-2018") != std::string::npos);
}

TEST_CASE("spectrum --threads gives identical bytes") {
  TempDir tmp;
  const std::string out1 = tmp.file("a.csv");
  const std::string out2 = tmp.file("b.csv");
  REQUIRE(run("spectrum --species hydrogen --wilson tree --nmax 3 --out " + out1).exit_code == 0);
  REQUIRE(run("--threads 2 spectrum --species hydrogen --wilson tree --nmax 3 --out " + out2)
              .exit_code == 0);
  CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("oracle report: closed form vs quadrature in the emitted JSON") {
  const auto r = run("oracle --species hydrogen --wilson tree --beta 2,1,1,2,1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("relative_difference") != std::string::npos);
  CHECK(r.output.find("orbit_counterterm") != std::string::npos);
}

TEST_CASE("oracle rejects invalid quantum numbers with exit 2") {
  const auto r = run("oracle --species hydrogen --beta 1,0,1,0,0");
  CHECK(r.exit_code == 2);
}

TEST_CASE("clock vsweep CSV") {
  TempDir tmp;
  const std::string out = tmp.file("clock.csv");
  const auto r = run("clock --species hydrogen --g 1,0,0,0,0 --e 2,0,0,0,0 --vsweep 0:0.03:4 --out " +
                     out);
  REQUIRE(r.exit_code == 0);
  const std::string text = slurp(out);
  CHECK(text.find("v_over_c,v_au,Omega_shifted_hartree,relative_shift") == 0);
  // Last row carries the 4.5e-4 second-order shift.
  const auto tail = text.find_last_of(',');
  const double shift = std::atof(text.substr(tail + 1).c_str());
  CHECK(std::abs(shift + 4.5e-4) < 1e-12);
}

TEST_CASE("clock preset sr88 prints parameters") {
  const auto r = run("clock --preset sr88");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Omega_over_Mbar_c2") != std::string::npos);
}

TEST_CASE("clock packet sweep") {
  TempDir tmp;
  const std::string out = tmp.file("packet.csv");
  const auto r = run(
      "clock packet --species hydrogen --g 1,0,0,0,0 --e 2,0,0,0,0 --sigma0 50 --p0 2 "
      "--tsweep 0:1e6:5 --out " +
      out);
  REQUIRE(r.exit_code == 0);
  CHECK(slurp(out).find("t,center_g,width_g,center_e,width_e") == 0);
}

TEST_CASE("scatter sweep over a geometry file") {
  TempDir tmp;
  const std::string geo = tmp.file("geom.json");
  {
    std::ofstream f(geo);
    f << R"({"coboson1": {"R": [0,0,10], "r": [0,0,1]},
             "coboson2": {"R": [0,0,0], "r": [0,0,1]}})";
  }
  const std::string out = tmp.file("scatter.csv");
  const auto r = run("scatter --species hydrogen --geometry " + geo +
                     " --sweep \"DeltaR=10:40:3;theta=0:1.2:3\" --out " + out);
  REQUIRE(r.exit_code == 0);
  const std::string text = slurp(out);
  CHECK(text.find("DeltaR,theta,V_C,V_LL,V_LS,V_SS,V_sum,V_multipole") == 0);
  int lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == 10);  // header + 3x3 grid
}

TEST_CASE("scatter rejects unknown geometry keys with exit 2") {
  TempDir tmp;
  const std::string geo = tmp.file("geom.json");
  {
    std::ofstream f(geo);
    f << R"({"coboson1": {"R": [0,0,10], "r": [0,0,1], "charge": 2},
             "coboson2": {"R": [0,0,0]}})";
  }
  const auto r = run("scatter --species hydrogen --geometry " + geo + " --out " + tmp.file("x.csv"));
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("charge") != std::string::npos);
}

TEST_CASE("gpe evolve: determinism of snapshots and manifest diagnostics") {
  TempDir tmp;
  const std::string prob = tmp.file("problem.json");
  {
    std::ofstream f(prob);
    f << R"({
      "grid": {"length": 20.0, "points": 64},
      "modes": [{"label": "g", "mass": 1.0, "e_offset": 0.0,
                 "potential": {"type": "harmonic", "omega": 1.0}}],
      "eta": [{"indices": [0,0,0,0], "value": 0.5}],
      "initial": [{"type": "gaussian", "x0": 1.0, "sigma": 1.0, "k": 0.0, "amplitude": 1.0}]
    })";
  }
  const std::string dir1 = tmp.file("run1");
  const std::string dir2 = tmp.file("run2");
  REQUIRE(run("gpe --problem " + prob + " --tmax 0.2 --dt 0.002 --snap-every 50 --out " + dir1)
              .exit_code == 0);
  REQUIRE(run("gpe --problem " + prob + " --tmax 0.2 --dt 0.002 --snap-every 50 --out " + dir2)
              .exit_code == 0);
  CHECK(slurp(dir1 + "/snapshot_000002.csv") == slurp(dir2 + "/snapshot_000002.csv"));
  CHECK(slurp(dir1 + "/timeseries.csv") == slurp(dir2 + "/timeseries.csv"));
  const std::string man = slurp(dir1 + "/run_manifest.json");
  CHECK(man.find("norm_drift") != std::string::npos);
}

TEST_CASE("gpe ground: harmonic trap energy within 1e-8 of 0.5") {
  TempDir tmp;
  const std::string prob = tmp.file("problem.json");
  {
    std::ofstream f(prob);
    f << R"({
      "grid": {"length": 16.0, "points": 256},
      "modes": [{"label": "g", "mass": 1.0, "e_offset": 0.0,
                 "potential": {"type": "harmonic", "omega": 1.0}}]
    })";
  }
  const auto r = run("gpe ground --problem " + prob + " --tol 1e-14 --dtau 0.002 --out " +
                     tmp.file("gs"));
  REQUIRE(r.exit_code == 0);
  const auto pos = r.output.find("energy ");
  REQUIRE(pos != std::string::npos);
  const double e = std::atof(r.output.substr(pos + 7).c_str());
  CHECK(std::abs(e - 0.5) < 1e-8);
}

TEST_CASE("gpe rejects unknown problem keys with exit 2") {
  TempDir tmp;
  const std::string prob = tmp.file("problem.json");
  {
    std::ofstream f(prob);
    f << R"({"grid": {"length": 10.0, "points": 32}, "modes": [{"mass": 1.0}], "tempature": 3})";
  }
  const auto r = run("gpe --problem " + prob + " --tmax 0.1 --dt 0.01 --out " + tmp.file("d"));
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("tempature") != std::string::npos);
}

TEST_CASE("empty config file exits 2") {
  TempDir tmp;
  const std::string prob = tmp.file("empty.json");
  { std::ofstream f(prob); }
  const auto r = run("gpe --problem " + prob + " --tmax 0.1 --dt 0.01 --out " + tmp.file("d"));
  CHECK(r.exit_code == 2);
}

TEST_CASE("figures fig5b reproduces the magic-angle sign change") {
  TempDir tmp;
  const std::string out = tmp.file("fig5b.csv");
  REQUIRE(run("figures fig5b --out " + out).exit_code == 0);
  const std::string text = slurp(out);
  // The neutral curve must cross zero: both signs present in column V.
  bool has_pos = false, has_neg = false;
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    const auto lastcomma = line.rfind(',');
    const double v = std::atof(line.substr(lastcomma + 1).c_str());
    has_pos = has_pos || v > 0.0;
    has_neg = has_neg || v < 0.0;
  }
  CHECK(has_pos);
  CHECK(has_neg);
}

TEST_CASE("COBOS_OUT_DIR redirects relative outputs") {
  TempDir tmp;
  const std::string cmd = "COBOS_OUT_DIR=" + tmp.path.string() + " " + kCli +
                          " spectrum --species hydrogen --wilson tree --nmax 1 --out env.csv";
  const int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(rc) == 0);
  CHECK(fs::exists(tmp.path / "env.csv"));
}

TEST_CASE("species and wilson coefficient files are loaded and validated") {
  TempDir tmp;
  const std::string sp = tmp.file("muonium.json");
  {
    std::ofstream f(sp);
    f << R"({"m_e": 1.0, "m_n": 206.768, "Z": 1})";
  }
  const std::string wl = tmp.file("wilson.json");
  {
    std::ofstream f(wl);
    f << R"({"cF_e": 1.0011597, "cF_n": 1.0})";
  }
  const std::string out = tmp.file("mu.csv");
  CHECK(run("spectrum --species " + sp + " --wilson " + wl + " --nmax 1 --out " + out).exit_code ==
        0);
  // Unknown key in the wilson file is a config error.
  {
    std::ofstream f(wl);
    f << R"({"cF_e": 1.0, "gF_n": 2.0})";
  }
  const auto r = run("spectrum --species " + sp + " --wilson " + wl + " --nmax 1 --out " + out);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("gF_n") != std::string::npos);
}

TEST_CASE("gpe problem validation: include_p4 without mass_p4 is rejected") {
  TempDir tmp;
  const std::string prob = tmp.file("p.json");
  {
    std::ofstream f(prob);
    f << R"({"grid": {"length": 10.0, "points": 32}, "include_p4": true,
             "modes": [{"mass": 1.0}],
             "initial": [{"type": "uniform", "amplitude": 1.0}]})";
  }
  const auto r = run("gpe --problem " + prob + " --tmax 0.1 --dt 0.01 --out " + tmp.file("d"));
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("mass_p4") != std::string::npos);
}

TEST_CASE("gpe coupling x_modulation round trips through the loader") {
  TempDir tmp;
  const std::string prob = tmp.file("p.json");
  {
    std::ofstream f(prob);
    f << R"({"grid": {"length": 10.0, "points": 8},
             "modes": [{"label": "g", "mass": 1.0}, {"label": "e", "mass": 1.0}],
             "coupling": {"constant": [[0.0, 0.2], [0.2, 0.0]],
                          "x_modulation": [0, 0, 0, 0, 1, 1, 1, 1]},
             "initial": [{"type": "uniform", "amplitude": 1.0},
                         {"type": "uniform", "amplitude": 0.0}]})";
  }
  const auto r = run("gpe --problem " + prob + " --tmax 0.05 --dt 0.01 --out " + tmp.file("d"));
  CHECK(r.exit_code == 0);
  // Wrong sample count is a config error.
  {
    std::ofstream f(prob);
    f << R"({"grid": {"length": 10.0, "points": 8},
             "modes": [{"label": "g", "mass": 1.0}, {"label": "e", "mass": 1.0}],
             "coupling": {"constant": [[0.0, 0.2], [0.2, 0.0]], "x_modulation": [1, 1]},
             "initial": [{"type": "uniform", "amplitude": 1.0},
                         {"type": "uniform", "amplitude": 0.0}]})";
  }
  CHECK(run("gpe --problem " + prob + " --tmax 0.05 --dt 0.01 --out " + tmp.file("d")).exit_code ==
        2);
}
