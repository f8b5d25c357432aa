#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qa/config.hpp"
#include "qa/ising.hpp"

namespace qa {

/// One unit of harness output: a flat JSON payload (bound report or run
/// summary) tied to the content fingerprint of config + instance. Timing goes
/// to the log stream only, so output files stay byte-deterministic.
struct ResultRecord {
  std::string fingerprint;
  nlohmann::json payload;
  double elapsed_seconds = 0.0;
};

/// Random instance with `count` distinct site sets per (order, count) entry and
/// couplings uniform in [-scale, scale]. Deterministic for a given rng state.
IsingInstance random_instance(int n_sites, const std::vector<std::pair<int, int>>& order_counts,
                              std::mt19937_64& rng, double coupling_scale = 1.0);

/// Uniform double in [-1, 1] drawn from the top 53 bits of the generator,
/// identical across platforms.
double uniform_pm1(std::mt19937_64& rng);

/// Parses an order profile string like "1:4,2:6" into (order, count) pairs.
std::vector<std::pair<int, int>> parse_order_profile(std::string_view text);

/// Scans a gamma grid and writes eigenvalue columns. Exit code 0 on success.
int run_spectrum(const RunConfig& config, std::ostream& log);

/// Emits one flat JSON report per gamma as JSON lines; exit code 1 when any
/// enforced check fails.
int run_bounds(const RunConfig& config, std::ostream& log);

/// Executes the sweep grid, one trajectory CSV per cell plus summary.csv.
/// Norm-drift aborts are recorded per run without killing the sweep.
int run_anneal(const RunConfig& config, std::ostream& log);

/// Built-in invariant suite at small N; prints one pass/fail line per check.
int run_verify(std::ostream& out);

/// Writes a generated instance file. Records the seed in a comment.
int run_gen(int n_sites, const std::string& order_profile, std::uint64_t seed,
            const std::string& out_path, std::ostream& log);

}  // namespace qa
