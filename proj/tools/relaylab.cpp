/**
 * @file relaylab.cpp
 * @brief Command-line front end: figure sweeps, experiment listing and the
 * lemma oracle report.
 */
#include <omp.h>

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "relaylab/config.hpp"
#include "relaylab/error.hpp"
#include "relaylab/experiments.hpp"
#include "relaylab/lemmas.hpp"

int main(int argc, char** argv) {
  CLI::App app{"relaylab: hybrid analog/digital AF relay laboratory"};
  app.require_subcommand(1);

  std::string experiment, config_path, out_path, dump_path;
  std::uint64_t seed = 0;
  long trials = 2000;
  int workers = 0;
  std::vector<double> values;

  auto* run = app.add_subcommand("run", "run one experiment and write its CSV");
  run->add_option("--experiment", experiment, "experiment id (see 'relaylab list')")->required();
  run->add_option("--config", config_path, "configuration file (built-in defaults if omitted)");
  run->add_option("--seed", seed, "master seed")->default_val(0);
  run->add_option("--trials", trials, "Monte Carlo trials per point")->default_val(2000)
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_path, "output CSV path")->required();
  run->add_option("--workers", workers, "OpenMP threads (0 = runtime default)")->default_val(0)
      ->check(CLI::NonNegativeNumber);
  run->add_option("--values", values, "override the sweep values");

  auto* list = app.add_subcommand("list", "list experiment ids and their figures");

  long draws = 100000;
  auto* lemmas = app.add_subcommand("lemmas", "Monte Carlo check of the random-matrix lemmas");
  lemmas->add_option("--seed", seed, "master seed")->default_val(0);
  lemmas->add_option("--draws", draws, "draws per identity")->default_val(100000)
      ->check(CLI::PositiveNumber);

  auto* config = app.add_subcommand("config", "print the normalised configuration");
  config->add_option("--config", config_path, "configuration file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& e : relaylab::experiments())
        std::cout << e.id << "\t" << e.figure << "\t" << e.description << "\n";
      std::cout << "lemmas\trandom-matrix identities\trun with 'relaylab lemmas'\n";
      return 0;
    }
    if (*lemmas) {
      relaylab::LemmaOracleParams p;
      p.draws = draws;
      const auto report = relaylab::lemma_oracles(p, seed);
      std::cout << report.to_text();
      std::cout << (report.all_pass() ? "all identities pass\n" : "some identities FAIL\n");
      return report.all_pass() ? 0 : 1;
    }
    relaylab::SystemConfig cfg;
    if (!config_path.empty()) cfg = relaylab::load_config(config_path);
    if (*config) {
      std::cout << relaylab::dump_config(cfg);
      return 0;
    }
    if (workers > 0) omp_set_num_threads(workers);
    relaylab::RunOptions opt;
    opt.seed = seed;
    opt.trials = trials;
    opt.workers = workers;
    opt.values = values;
    const auto rows = relaylab::run_experiment(experiment, cfg, opt);
    relaylab::write_csv_file(out_path, rows);
    std::cerr << "wrote " << rows.size() << " rows to " << out_path << "\n";
  } catch (const relaylab::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
