#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qa/ising.hpp"

namespace qa {

/// Schedule description as it appears in a run config; resolved into a
/// Schedule object per sweep cell by the runner.
struct ScheduleSpec {
  std::string kind = "power";  // power | extended | linear | exponential | constant
  double alpha = 0.0;          // 0 = calibrate from delta
  double delta = 0.1;
  double gamma_cap = 0.0;      // 0 = auto: e_max - e_min
  double gamma_start = 1.0;    // linear / exponential
  double rate = 1.0;           // exponential
  double gamma_value = 1.0;    // constant
};

/// Flat key=value run configuration with [run], [schedule] and [sweep]
/// sections. Lists in [sweep] are whitespace-separated values.
struct RunConfig {
  std::string instance_path;
  DriverKind driver = DriverKind::TransverseField;
  ScheduleSpec schedule;
  double t_final = 10.0;
  double dt = 1e-2;
  int samples = 100;
  int levels = 8;  // eigenvalue columns in spectrum CSV output
  std::vector<double> gamma_list;
  std::vector<double> alpha_list;
  std::vector<double> delta_list;
  std::vector<double> t_final_list;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  int workers = 0;  // 0 = hardware concurrency
  Limits limits;
  std::string raw_text;  // the bytes this config was parsed from, for fingerprinting
};

RunConfig parse_config(std::string_view text);

/// Reads and parses a config file. Throws ParseError on malformed content.
RunConfig load_config(const std::string& path);

/// Checks cross-field constraints and that referenced files exist.
void validate_config(const RunConfig& config);

/// FNV-1a content hash over the config and instance bytes, as 16 hex digits.
/// Deterministically reproducible from the same bytes.
std::string fingerprint_hex(std::string_view config_bytes, std::string_view instance_bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace qa
