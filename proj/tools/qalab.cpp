// qalab - transverse-field Ising annealing laboratory command line.
//
// Subcommands: spectrum, bounds, anneal, verify, gen.
// Exit codes: 0 ok, 1 invariant/check failure, 2 usage error, 3 capacity.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qa/config.hpp"
#include "qa/runner.hpp"

namespace {

struct CommonFlags {
  std::string instance_path;
  std::string config_path;
  std::string out;
  std::int64_t seed = -1;
  int workers = 0;
  std::int64_t dense_limit = 0;
};

void add_common(CLI::App* cmd, CommonFlags& fl, bool needs_instance) {
  auto* inst = cmd->add_option("--instance", fl.instance_path, "instance file");
  if (needs_instance) inst->check(CLI::ExistingFile);
  cmd->add_option("--config", fl.config_path, "run config file")->check(CLI::ExistingFile);
  cmd->add_option("--out", fl.out, "output file or directory");
  cmd->add_option("--seed", fl.seed, "random seed override");
  cmd->add_option("--workers", fl.workers, "parallel worker count (0 = hardware)");
  cmd->add_option("--dense-limit", fl.dense_limit, "dense state-space limit override");
}

qa::RunConfig make_config(const CommonFlags& fl) {
  qa::RunConfig cfg;
  if (!fl.config_path.empty()) cfg = qa::load_config(fl.config_path);
  if (!fl.instance_path.empty()) cfg.instance_path = fl.instance_path;
  if (!fl.out.empty()) cfg.out_dir = fl.out;
  if (fl.seed >= 0) cfg.seed = static_cast<std::uint64_t>(fl.seed);
  if (fl.workers > 0) cfg.workers = fl.workers;
  if (fl.dense_limit > 0) cfg.limits.dense_limit = static_cast<std::size_t>(fl.dense_limit);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale quantum annealing laboratory"};
  app.require_subcommand(1);

  CommonFlags spectrum_fl, bounds_fl, anneal_fl;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues and gap over a gamma grid");
  add_common(spectrum_cmd, spectrum_fl, true);
  auto* bounds_cmd = app.add_subcommand("bounds", "gap-bound chain reports over a gamma grid");
  add_common(bounds_cmd, bounds_fl, true);
  auto* anneal_cmd = app.add_subcommand("anneal", "Schrodinger annealing sweep");
  add_common(anneal_cmd, anneal_fl, true);

  auto* verify_cmd = app.add_subcommand("verify", "run the built-in invariant suite");

  int gen_n = 4;
  std::string gen_orders = "1:4,2:6";
  std::uint64_t gen_seed = 1;
  std::string gen_out = "instance.txt";
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--n", gen_n, "site count")->required();
  gen_cmd->add_option("--orders", gen_orders, "order profile, e.g. 1:4,2:6");
  gen_cmd->add_option("--seed", gen_seed, "random seed");
  gen_cmd->add_option("--out", gen_out, "output instance file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (spectrum_cmd->parsed()) return qa::run_spectrum(make_config(spectrum_fl), std::cerr);
    if (bounds_cmd->parsed()) return qa::run_bounds(make_config(bounds_fl), std::cerr);
    if (anneal_cmd->parsed()) return qa::run_anneal(make_config(anneal_fl), std::cerr);
    if (verify_cmd->parsed()) return qa::run_verify(std::cout);
    if (gen_cmd->parsed()) return qa::run_gen(gen_n, gen_orders, gen_seed, gen_out, std::cerr);
  } catch (const qa::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const qa::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
