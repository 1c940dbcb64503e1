/**
 * @file montecarlo.hpp
 * @brief Brute-force simulation of the two-hop signal chain: per-term powers of
 * the received-signal decomposition, relay transmit power and spectral
 * efficiency with confidence intervals.
 *
 * Trial i draws everything from streams keyed by (master_seed, i), so the
 * result does not depend on the number of workers. Per-trial records are
 * reduced sequentially in ascending trial order.
 */
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "relaylab/analysis.hpp"
#include "relaylab/config.hpp"
#include "relaylab/estimation.hpp"
#include "relaylab/scenario.hpp"

namespace relaylab {

enum class Kernel { serial, parallel };

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long n = 0;
  bool se_defined = false;  ///< false for n < 2
  double ci_half() const { return 1.96 * std_error; }
};

/// Fixed inputs shared by all trials.
struct TrialContext {
  TrialContext(const EstimationStats& s1, const EstimationStats& s2, const CMat& f1,
               const CMat& f2, Scheme scheme, double alpha, const SystemConfig& config);
  explicit TrialContext(const Scenario& s);

  EstimateSampler sampler1;
  EstimateSampler sampler2;
  CMat F1, F2;
  CMat F1F1h, F2F2h;  ///< analog Gram matrices, explicit model
  CMat left1, left2;  ///< (F F^H)^+ F, explicit model
  Scheme scheme;
  RelayModel relay_model;
  double alpha;
  int K;
  double P_u, sigma2_nR, sigma2_nD;
};

/// Per-trial quantities, averaged over the K users.
struct TrialRecord {
  cplx m1;            ///< mean_k d_k, d_k = ghat2_k^H A ghat1_k
  double m2 = 0.0;    ///< mean_k |d_k|^2
  std::array<double, 6> t{};  ///< conditional powers of t2..t7
  double relay_power = 0.0;   ///< E[Tr(y_R y_R^H) | channels]
  double received = 0.0;      ///< mean_k |y_Dk|^2 with realised symbols and noise
  double decomposed = 0.0;    ///< P_u m2 + P_u (t2..t5) + t6 + t7 + sigma2_nD
};

TrialRecord simulate_trial(const TrialContext& ctx, std::uint64_t master_seed, long trial);

struct TrialPlan {
  SystemConfig config;
  long n_trials = 2000;
  std::uint64_t master_seed = 0;
  Kernel kernel = Kernel::parallel;
  int workers = 0;  ///< 0 keeps the OpenMP default
};

struct McResult {
  SinrTerms terms;                  ///< origin monte_carlo, ci = 95% half-widths
  std::array<McEstimate, 8> term_estimates;
  SpectralEfficiencyResult se;
  McEstimate sum_se;                ///< delta-method standard error
  McEstimate relay_power;
  McEstimate received_power;
  McEstimate completeness_gap;      ///< decomposed - received
  long n_trials = 0;
};

/// Runs every trial and keeps the records (index = trial).
std::vector<TrialRecord> run_trials(const TrialContext& ctx, long n_trials,
                                    std::uint64_t master_seed, Kernel kernel,
                                    int workers = 0);

/// Sequential reduction of records in index order.
McResult reduce_records(const std::vector<TrialRecord>& records, const TrialContext& ctx,
                        int tau_c, int tau_p);

McResult run_scenario(const Scenario& s, long n_trials, std::uint64_t master_seed,
                      Kernel kernel = Kernel::parallel, int workers = 0);

McResult run_plan(const TrialPlan& plan);

}  // namespace relaylab
