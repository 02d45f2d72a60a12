#include "cobos/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cobos/constants.hpp"
#include "json.hpp"

namespace cobos {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void CsvWriter::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  rows.push_back(std::move(cells));
}

void CsvWriter::add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }

std::string CsvWriter::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

void CsvWriter::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << to_string();
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void RunManifest::write(const std::string& path) const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["config_hash"] = config_hash;
  j["constants_version"] = constants_version.empty() ? constants().version : constants_version;
  j["coefficient_set"] = coefficient_set;
  j["outputs"] = outputs;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  j["timestamp_unix_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << j.dump(2) << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace cobos
