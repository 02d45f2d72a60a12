#pragma once

#include <string>
#include <vector>

namespace cobos {

/// Formats a double with 17 significant digits, lowercase scientific
/// notation, so fixtures round-trip exactly.
std::string format_number(double v);

/// CSV writer: header row plus rows of pre-formatted cells; no timestamps.
struct CsvWriter {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(const std::vector<double>& values);
  void add_row(std::vector<std::string> cells);
  /// Throws std::runtime_error on I/O failure.
  void write(const std::string& path) const;
  std::string to_string() const;
};

/// FNV-1a hash of a string, hex-encoded; used to fingerprint configs in the
/// run manifest.
std::string fnv1a_hex(const std::string& data);

/// Sidecar run manifest (JSON). Timestamps live here, never in data files.
struct RunManifest {
  std::string command;
  std::string config_hash;
  std::string constants_version;
  std::string coefficient_set;
  std::vector<std::string> outputs;

  void write(const std::string& path) const;
};

std::string read_file(const std::string& path);

}  // namespace cobos
