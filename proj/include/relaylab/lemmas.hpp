/**
 * @file lemmas.hpp
 * @brief Monte Carlo checks of the Gaussian random-matrix identities behind
 * the closed forms.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace relaylab {

struct LemmaOracleParams {
  int N = 16;
  int K = 4;
  long draws = 100000;
  double sigma2 = 2.0;        ///< entry variance used for the first identity
  double z_threshold = 4.0;   ///< pass when |empirical - analytic| <= z * SE
};

struct LemmaCheck {
  std::string lemma;  ///< "L1" .. "L5", "C1"
  std::string quantity;
  double empirical = 0.0;
  double analytic = 0.0;
  double std_error = 0.0;
  bool upper_bound = false;  ///< analytic is a bound, check empirical <= analytic + z SE
  bool pass = false;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  bool all_pass() const;
  bool lemma_pass(const std::string& lemma) const;
  std::string to_text() const;
};

LemmaReport lemma_oracles(const LemmaOracleParams& params, std::uint64_t seed);

}  // namespace relaylab
