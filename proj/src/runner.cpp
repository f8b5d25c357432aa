#include "qa/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qa/bounds.hpp"
#include "qa/classical.hpp"
#include "qa/dynamics.hpp"
#include "qa/schedule.hpp"
#include "qa/spectra.hpp"

namespace fs = std::filesystem;

namespace qa {

double uniform_pm1(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * u - 1.0;
}

std::vector<std::pair<int, int>> parse_order_profile(std::string_view text) {
  std::vector<std::pair<int, int>> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                             : comma - pos);
    pos = comma == std::string_view::npos ? text.size() : comma + 1;
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("order profile entries look like '<order>:<count>'");
    const int order = std::stoi(std::string(item.substr(0, colon)));
    const int count = std::stoi(std::string(item.substr(colon + 1)));
    if (order < 1 || count < 1) throw ParseError("order and count must be positive");
    out.emplace_back(order, count);
  }
  if (out.empty()) throw ParseError("empty order profile");
  return out;
}

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b *= double(n - i) / double(i + 1);
  return b;
}

std::vector<int> sample_site_set(int n, int order, std::mt19937_64& rng) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int k = 0; k < order; ++k) {
    const int j = k + static_cast<int>(rng() % (n - k));
    std::swap(pool[k], pool[j]);
  }
  std::vector<int> sites(pool.begin(), pool.begin() + order);
  std::sort(sites.begin(), sites.end());
  return sites;
}

void all_site_sets(int n, int order, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(order);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == order) {
      out.push_back(cur);
      return;
    }
    for (int s = start; s < n; ++s) {
      cur[depth] = s;
      rec(s + 1, depth + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

IsingInstance random_instance(int n_sites, const std::vector<std::pair<int, int>>& order_counts,
                              std::mt19937_64& rng, double coupling_scale) {
  if (n_sites < 1) throw Error("random_instance needs n_sites >= 1");
  IsingInstance inst;
  inst.n_sites = n_sites;
  for (const auto& [order, count] : order_counts) {
    if (order > n_sites) throw Error("term order exceeds n_sites");
    std::vector<std::vector<int>> sets;
    if (count >= binomial(n_sites, order)) {
      all_site_sets(n_sites, order, sets);
    } else {
      std::set<std::vector<int>> seen;
      while (static_cast<int>(seen.size()) < count)
        seen.insert(sample_site_set(n_sites, order, rng));
      sets.assign(seen.begin(), seen.end());
    }
    for (auto& sites : sets) {
      IsingTerm term;
      term.coefficient = coupling_scale * uniform_pm1(rng);
      term.sites = std::move(sites);
      inst.terms.push_back(std::move(term));
    }
  }
  validate_instance(inst);
  return inst;
}

namespace {

std::string resolve_out(const std::string& out, const std::string& default_name) {
  fs::path p(out.empty() ? "." : out);
  if (p.has_extension()) {
    if (!p.parent_path().empty()) fs::create_directories(p.parent_path());
    return p.string();
  }
  fs::create_directories(p);
  return (p / default_name).string();
}

std::vector<double> gamma_grid_or_default(const RunConfig& config, std::vector<double> fallback) {
  return config.gamma_list.empty() ? std::move(fallback) : config.gamma_list;
}

IsingInstance load_instance(const RunConfig& config) {
  if (config.instance_path.empty()) throw ParseError("no instance file given");
  return parse_instance(read_file(config.instance_path));
}

}  // namespace

int run_spectrum(const RunConfig& config, std::ostream& log) {
  validate_config(config);
  const IsingInstance inst = load_instance(config);
  std::vector<double> grid;
  if (config.gamma_list.empty())
    for (int k = 0; k <= 20; ++k) grid.push_back(2.0 * k / 20.0);
  else
    grid = config.gamma_list;

  const Eigen::Index levels =
      std::min<Eigen::Index>(config.levels, static_cast<Eigen::Index>(inst.dim()));
  std::ostringstream csv;
  csv.precision(17);
  csv << "gamma";
  for (Eigen::Index k = 0; k < levels; ++k) csv << ",eps_" << k;
  csv << ",gap\n";
  for (double g : grid) {
    const HamiltonianView h = make_hamiltonian(inst, config.driver, g, config.limits);
    const Spectrum spec = full_spectrum(h, false, config.limits);
    csv << g;
    for (Eigen::Index k = 0; k < levels; ++k) csv << ',' << spec.eigenvalues[k];
    csv << ',' << gap(spec) << '\n';
  }
  const std::string path = resolve_out(config.out_dir, "spectrum.csv");
  write_file(path, csv.str());
  log << "spectrum: " << grid.size() << " gamma points -> " << path << "\n";
  return 0;
}

int run_bounds(const RunConfig& config, std::ostream& log) {
  validate_config(config);
  const IsingInstance inst = load_instance(config);
  const ClassicalSummary summary = enumerate_classical(inst, config.limits);
  const std::string fp =
      fingerprint_hex(config.raw_text, read_file(config.instance_path));
  const std::vector<double> grid = gamma_grid_or_default(config, {1e-3, 1e-2, 1e-1});

  std::ostringstream lines;
  bool any_failed = false;
  for (double g : grid) {
    const auto started = std::chrono::steady_clock::now();
    const HamiltonianView h = make_hamiltonian(inst, config.driver, g, config.limits);
    const BoundsReport rep = gap_bound_check(h, summary, config.limits);
    if (!rep.strict_positive_at_default)
      log << "note: (e_max - H)^" << rep.exponent_default
          << " is not strictly positive; continued with exponent " << rep.exponent_p << "\n";
    if (!rep.all_enforced_pass()) {
      any_failed = true;
      for (const BoundCheck& c : rep.checks)
        if (c.enforced && !c.pass)
          log << "FAILED check '" << c.name << "' at gamma = " << g << " (margin " << c.margin
              << ")\n";
    }
    ResultRecord record;
    record.fingerprint = fp;
    record.payload = to_flat_json(rep);
    record.payload["fingerprint"] = fp;
    record.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    log << "gamma " << g << ": " << record.elapsed_seconds << " s\n";
    lines << record.payload.dump() << '\n';
  }
  const std::string path = resolve_out(config.out_dir, "bounds.jsonl");
  write_file(path, lines.str());
  log << "bounds: " << grid.size() << " reports -> " << path << "\n";
  return any_failed ? 1 : 0;
}

namespace {

struct SweepCell {
  int index = 0;
  double delta = std::numeric_limits<double>::quiet_NaN();  // NaN when alpha given directly
  double alpha = 0.0;                                       // 0 = calibrate from delta
  double t_final = 0.0;
};

struct CellOutcome {
  std::string status = "ok";
  Schedule schedule;
  double final_gamma = std::numeric_limits<double>::quiet_NaN();
  double final_fidelity = std::numeric_limits<double>::quiet_NaN();
  double final_excitation = std::numeric_limits<double>::quiet_NaN();
  double final_residual = std::numeric_limits<double>::quiet_NaN();
  double final_success = std::numeric_limits<double>::quiet_NaN();
  double max_norm_drift = std::numeric_limits<double>::quiet_NaN();
  double elapsed_seconds = 0.0;
  std::string csv;  // empty when the run aborted
};

Schedule build_schedule(const RunConfig& config, const ClassicalSummary& summary,
                        const SweepCell& cell, int n_sites) {
  const ScheduleSpec& spec = config.schedule;
  const double delta_e = summary.e_max - summary.e_min;
  const double cap = spec.gamma_cap > 0 ? spec.gamma_cap : (delta_e > 0 ? delta_e : 1.0);
  if (spec.kind == "power") {
    double alpha = cell.alpha;
    if (alpha <= 0) {
      const double a0 = coefficient_a(summary, summary.e_min, n_sites);
      alpha = calibrate_alpha({cell.delta}, a0, n_sites);
    }
    return Schedule::power_law(alpha, n_sites, cap);
  }
  if (spec.kind == "extended") {
    double alpha = cell.alpha;
    if (alpha <= 0) {
      const double a0 = coefficient_a_pairwise(summary, summary.e_min, n_sites);
      alpha = calibrate_alpha_extended({cell.delta}, a0, n_sites);
    }
    return Schedule::extended_power_law(alpha, n_sites, cap);
  }
  if (spec.kind == "linear") return Schedule::linear(spec.gamma_start, cell.t_final);
  if (spec.kind == "exponential") return Schedule::exponential(spec.gamma_start, spec.rate);
  return Schedule::constant(spec.gamma_value);
}

}  // namespace

int run_anneal(const RunConfig& config, std::ostream& log) {
  validate_config(config);
  const IsingInstance inst = load_instance(config);
  const ClassicalSummary summary = enumerate_classical(inst, config.limits);
  const std::string fp = fingerprint_hex(config.raw_text, read_file(config.instance_path));

  const bool power_kind = config.schedule.kind == "power" || config.schedule.kind == "extended";
  if (!power_kind && (!config.delta_list.empty() || !config.alpha_list.empty()))
    throw ParseError("delta/alpha sweep axes apply only to power/extended schedules");
  if (!config.delta_list.empty() && !config.alpha_list.empty())
    throw ParseError("sweep either delta or alpha, not both");
  if (config.schedule.kind == "power" && config.driver != DriverKind::TransverseField)
    log << "warning: 'power' schedule calibration assumes the transverse driver\n";
  if (config.schedule.kind == "extended" && config.driver != DriverKind::TransverseFieldPlusPairwise)
    log << "warning: 'extended' schedule calibration assumes the pairwise driver\n";

  std::vector<SweepCell> cells;
  const std::vector<double> t_axis =
      config.t_final_list.empty() ? std::vector<double>{config.t_final} : config.t_final_list;
  if (!config.alpha_list.empty()) {
    for (double a : config.alpha_list)
      for (double t : t_axis)
        cells.push_back({static_cast<int>(cells.size()),
                         std::numeric_limits<double>::quiet_NaN(), a, t});
  } else {
    const std::vector<double> d_axis =
        config.delta_list.empty() ? std::vector<double>{config.schedule.delta} : config.delta_list;
    for (double d : d_axis)
      for (double t : t_axis)
        cells.push_back({static_cast<int>(cells.size()), d, config.schedule.alpha, t});
  }

  std::vector<CellOutcome> outcomes(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      CellOutcome& out = outcomes[i];
      const auto started = std::chrono::steady_clock::now();
      try {
        out.schedule = build_schedule(config, summary, cells[i], inst.n_sites);
        const Trajectory traj = evolve(inst, config.driver, out.schedule, cells[i].t_final,
                                       {config.dt, config.samples}, config.limits);
        const TrajectorySample& last = traj.samples.back();
        out.final_gamma = traj.final_gamma;
        out.final_fidelity = last.fidelity;
        out.final_excitation = last.excitation;
        out.final_residual = last.residual_energy;
        out.final_success = last.success_prob;
        double drift = 0.0;
        for (const TrajectorySample& s : traj.samples) drift = std::max(drift, s.norm_drift);
        out.max_norm_drift = drift;
        std::ostringstream csv;
        write_trajectory_csv(csv, traj);
        out.csv = csv.str();
      } catch (const NumericalError& e) {
        out.status = std::string("norm_drift_abort: ") + e.what();
      } catch (const std::exception& e) {
        out.status = std::string("error: ") + e.what();
      }
      out.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned nworkers = std::min<std::size_t>(
      cells.size(), config.workers > 0 ? static_cast<unsigned>(config.workers) : hw);
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < nworkers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  fs::path dir(config.out_dir.empty() ? "." : config.out_dir);
  fs::create_directories(dir);
  std::ostringstream summary_csv;
  summary_csv.precision(17);
  summary_csv << "run,fingerprint,kind,driver,delta,alpha,gamma_cap,t_final,dt,samples,status,"
                 "final_gamma,final_fidelity,final_excitation,final_residual_energy,"
                 "final_success_prob,max_norm_drift\n";
  int aborted = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const CellOutcome& out = outcomes[i];
    char name[32];
    std::snprintf(name, sizeof(name), "anneal_%03zu.csv", i);
    if (!out.csv.empty()) write_file((dir / name).string(), out.csv);
    const bool ok = out.status == "ok";
    if (!ok) ++aborted;
    const std::string status_tag =
        ok ? "ok" : (out.status.rfind("norm_drift_abort", 0) == 0 ? "norm_drift_abort" : "error");
    summary_csv << i << ',' << fp << ',' << config.schedule.kind << ','
                << driver_name(config.driver) << ',' << cells[i].delta << ','
                << out.schedule.alpha << ',' << out.schedule.gamma_cap << ',' << cells[i].t_final
                << ',' << config.dt << ',' << config.samples << ','
                << status_tag << ',' << out.final_gamma << ','
                << out.final_fidelity << ',' << out.final_excitation << ',' << out.final_residual
                << ',' << out.final_success << ',' << out.max_norm_drift << '\n';
    if (!ok) log << "run " << i << " aborted: " << out.status << "\n";
    log << "run " << i << ": " << out.elapsed_seconds << " s\n";
  }
  write_file((dir / "summary.csv").string(), summary_csv.str());
  log << "anneal: " << cells.size() << " runs (" << aborted << " aborted) -> "
      << (dir / "summary.csv").string() << "\n";
  return 0;
}

int run_gen(int n_sites, const std::string& order_profile, std::uint64_t seed,
            const std::string& out_path, std::ostream& log) {
  const auto profile = parse_order_profile(order_profile);
  for (const auto& [order, count] : profile)
    if (order > n_sites)
      throw ParseError("order " + std::to_string(order) + " exceeds n = " +
                       std::to_string(n_sites));
  std::mt19937_64 rng(seed);
  const IsingInstance inst = random_instance(n_sites, profile, rng);
  std::ostringstream comment;
  comment << "generated by qalab gen\nseed " << seed << "\norders " << order_profile;
  write_file(out_path, format_instance(inst, comment.str()));
  log << "gen: n=" << n_sites << " terms=" << inst.terms.size() << " -> " << out_path << "\n";
  return 0;
}

}  // namespace qa
