/**
 * @file test_experiments.cpp
 * @brief Experiment registry and the CSV contract.
 */
#include <doctest.h>

#include <set>
#include <sstream>

#include "relaylab/error.hpp"
#include "relaylab/experiments.hpp"

using namespace relaylab;

namespace {

std::string csv(const std::string& id, const SystemConfig& c, RunOptions opt) {
  std::ostringstream os;
  write_csv(os, run_experiment(id, c, opt));
  return os.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("registry lists each experiment once with a figure reference") {
  std::set<std::string> ids;
  for (const auto& e : experiments()) {
    CHECK(ids.insert(e.id).second);
    CHECK(!e.figure.empty());
    CHECK(!e.default_values.empty());
  }
  CHECK(ids.size() == 9);
  CHECK_THROWS(run_experiment("nope", SystemConfig{}, RunOptions{}));
}

TEST_CASE("CSV header and fully digital reference row") {
  RunOptions opt;
  opt.trials = 20;
  opt.values = {50, 128};
  const auto rows = lines(csv("se_vs_rf", SystemConfig{}, opt));
  REQUIRE(!rows.empty());
  CHECK(rows[0] == kCsvHeader);
  CHECK(rows[0] ==
        "experiment,sweep_key,sweep_value,scheme,beamformer,quant_bits,se_analytical,se_mc,"
        "se_mc_ci_half,relay_power_mc,k_prime,nu");
  bool digital = false;
  for (const auto& l : rows)
    if (l.rfind("se_vs_rf,K_a,128,zf,uab,", 0) == 0) digital = true;
  CHECK(digital);
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(std::count(rows[i].begin(), rows[i].end(), ',') == 11);
}

TEST_CASE("CSV output is deterministic across worker counts") {
  SystemConfig c;
  c.N = 32;
  c.K = 4;
  c.K_a = c.K_b = 12;
  c.sounding_rf = 8;
  c.repeats = 3;
  RunOptions a;
  a.trials = 30;
  a.seed = 123;
  a.workers = 1;
  RunOptions b = a;
  b.workers = 4;
  for (const char* id : {"se_vs_rf", "quantization", "eig_cdf", "nmse_sweep"}) {
    const std::string name = id;
    a.values.clear();
    if (name == "se_vs_rf") a.values = {12, 32};
    if (name == "nmse_sweep") a.values = {5, 20};
    b.values = a.values;
    CHECK(csv(id, c, a) == csv(id, c, a));
    CHECK(csv(id, c, a) == csv(id, c, b));
  }
}

TEST_CASE("numbers use a fixed format") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(128) == "128");
}

TEST_CASE("eig_cdf rows are a valid empirical CDF") {
  SystemConfig c;
  c.N = 16;
  c.K = 2;
  c.K_a = c.K_b = 8;
  c.tau_p = 4;
  RunOptions opt;
  opt.values = {0.25};
  const auto rows = run_experiment("eig_cdf", c, opt);
  REQUIRE(rows.size() == 16);
  double prev_x = -1.0, prev_f = 0.0;
  for (const auto& r : rows) {
    CHECK(*r.se_analytical >= prev_x);
    CHECK(*r.se_mc > prev_f);
    prev_x = *r.se_analytical;
    prev_f = *r.se_mc;
  }
  CHECK(prev_f == doctest::Approx(1.0));
}
