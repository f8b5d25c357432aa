#include "qa/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qa {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view tok, int line) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError("invalid number '" + std::string(tok) + "'", line);
  return v;
}

long to_long(std::string_view tok, int line) {
  long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError("invalid integer '" + std::string(tok) + "'", line);
  return v;
}

std::vector<double> to_list(std::string_view value, int line) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < value.size()) {
    while (i < value.size() && std::isspace(static_cast<unsigned char>(value[i]))) ++i;
    std::size_t j = i;
    while (j < value.size() && !std::isspace(static_cast<unsigned char>(value[j]))) ++j;
    if (j > i) out.push_back(to_double(value.substr(i, j - i), line));
    i = j;
  }
  if (out.empty()) throw ParseError("empty list value", line);
  return out;
}

/// gamma_grid = <min> <max> <count> [log|lin]
std::vector<double> expand_grid(std::string_view value, int line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < value.size()) {
    while (i < value.size() && std::isspace(static_cast<unsigned char>(value[i]))) ++i;
    std::size_t j = i;
    while (j < value.size() && !std::isspace(static_cast<unsigned char>(value[j]))) ++j;
    if (j > i) toks.push_back(value.substr(i, j - i));
    i = j;
  }
  if (toks.size() != 3 && toks.size() != 4)
    throw ParseError("expected '<min> <max> <count> [log|lin]'", line);
  const double lo = to_double(toks[0], line);
  const double hi = to_double(toks[1], line);
  const long count = to_long(toks[2], line);
  const bool log_spaced = toks.size() < 4 || toks[3] == "log";
  if (toks.size() == 4 && toks[3] != "log" && toks[3] != "lin")
    throw ParseError("grid spacing must be 'log' or 'lin'", line);
  if (count < 1 || lo > hi || (log_spaced && lo <= 0))
    throw ParseError("invalid grid bounds", line);
  std::vector<double> out;
  for (long k = 0; k < count; ++k) {
    const double f = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
    out.push_back(log_spaced ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo));
  }
  return out;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  cfg.raw_text = std::string(text);
  std::string section = "run";
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "run" && section != "schedule" && section != "sweep")
        throw ParseError("unknown section '" + section + "'", line_no);
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw ParseError("empty value for '" + key + "'", line_no);

    if (section == "run") {
      if (key == "instance") cfg.instance_path = std::string(value);
      else if (key == "driver") cfg.driver = driver_from_name(value);
      else if (key == "out") cfg.out_dir = std::string(value);
      else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(value, line_no));
      else if (key == "workers") cfg.workers = static_cast<int>(to_long(value, line_no));
      else if (key == "t_final") cfg.t_final = to_double(value, line_no);
      else if (key == "dt") cfg.dt = to_double(value, line_no);
      else if (key == "samples") cfg.samples = static_cast<int>(to_long(value, line_no));
      else if (key == "levels") cfg.levels = static_cast<int>(to_long(value, line_no));
      else if (key == "dense_limit") cfg.limits.dense_limit = static_cast<std::size_t>(to_long(value, line_no));
      else if (key == "matrix_free_limit") cfg.limits.matrix_free_limit = static_cast<std::size_t>(to_long(value, line_no));
      else if (key == "enumeration_limit") cfg.limits.enumeration_limit = static_cast<std::size_t>(to_long(value, line_no));
      else throw ParseError("unknown [run] key '" + key + "'", line_no);
    } else if (section == "schedule") {
      if (key == "schedule") cfg.schedule.kind = std::string(value);
      else if (key == "alpha") cfg.schedule.alpha = to_double(value, line_no);
      else if (key == "delta") cfg.schedule.delta = to_double(value, line_no);
      else if (key == "gamma_cap") cfg.schedule.gamma_cap = to_double(value, line_no);
      else if (key == "gamma_start") cfg.schedule.gamma_start = to_double(value, line_no);
      else if (key == "rate") cfg.schedule.rate = to_double(value, line_no);
      else if (key == "gamma") cfg.schedule.gamma_value = to_double(value, line_no);
      else throw ParseError("unknown [schedule] key '" + key + "'", line_no);
    } else {  // sweep
      if (key == "gamma") cfg.gamma_list = to_list(value, line_no);
      else if (key == "gamma_grid") cfg.gamma_list = expand_grid(value, line_no);
      else if (key == "alpha") cfg.alpha_list = to_list(value, line_no);
      else if (key == "delta") cfg.delta_list = to_list(value, line_no);
      else if (key == "t_final") cfg.t_final_list = to_list(value, line_no);
      else throw ParseError("unknown [sweep] key '" + key + "'", line_no);
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

void validate_config(const RunConfig& config) {
  if (config.schedule.kind != "power" && config.schedule.kind != "extended" &&
      config.schedule.kind != "linear" && config.schedule.kind != "exponential" &&
      config.schedule.kind != "constant")
    throw ParseError("unknown schedule kind '" + config.schedule.kind + "'");
  if (!(config.t_final > 0)) throw ParseError("t_final must be positive");
  if (!(config.dt > 0)) throw ParseError("dt must be positive");
  if (config.samples < 1) throw ParseError("samples must be >= 1");
  if (config.levels < 1) throw ParseError("levels must be >= 1");
  if (!config.instance_path.empty() && !std::filesystem::exists(config.instance_path))
    throw ParseError("instance file '" + config.instance_path + "' does not exist");
  for (double g : config.gamma_list)
    if (!(g >= 0)) throw ParseError("sweep gamma values must be nonnegative");
  for (double d : config.delta_list)
    if (!(d > 0 && d < 1)) throw ParseError("sweep delta values must lie in (0, 1)");
  for (double t : config.t_final_list)
    if (!(t > 0)) throw ParseError("sweep t_final values must be positive");
  for (double a : config.alpha_list)
    if (!(a > 0)) throw ParseError("sweep alpha values must be positive");
}

std::string fingerprint_hex(std::string_view config_bytes, std::string_view instance_bytes) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  mix(config_bytes);
  mix("\x1f");  // field separator so (a, b) and (ab, "") differ
  mix(instance_bytes);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file '" + path + "'");
  out << content;
}

}  // namespace qa
