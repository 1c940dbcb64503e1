/**
 * @file scenario.hpp
 * @brief Long-term quantities of one configuration: covariances, analog
 * beamformers, estimation statistics, amplification and closed-form SE.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "relaylab/analog.hpp"
#include "relaylab/analysis.hpp"
#include "relaylab/config.hpp"

namespace relaylab {

struct Scenario {
  SystemConfig config;
  CovarianceMatrix R1;
  CovarianceMatrix R2;
  AnalogBeamformer F1;
  AnalogBeamformer F2;
  EstimationStats stats1;
  EstimationStats stats2;
  double alpha = 0.0;
  SinrTerms terms;  ///< closed form for config.scheme
  SpectralEfficiencyResult se;
  std::vector<double> path_angles_rx;  ///< parametric model only
  std::vector<double> path_angles_tx;
};

/// Covariance of one hop. For the parametric model the path angles are drawn
/// from (seed, 0, angles_rx / angles_tx).
CovarianceMatrix link_covariance(const SystemConfig& c, ArraySide side, std::uint64_t seed,
                                 std::vector<double>* angles = nullptr);

AnalogBeamformer make_beamformer(const SystemConfig& c, const CovarianceMatrix& r,
                                 Eigen::Index rf_chains);

Scenario build_scenario(const SystemConfig& c, std::uint64_t seed);

/// Scenario on given true covariances. Beamformers are designed on design1 /
/// design2 when supplied (e.g. estimated covariances), otherwise on r1 / r2.
Scenario build_scenario(const SystemConfig& c, CovarianceMatrix r1, CovarianceMatrix r2,
                        const CovarianceMatrix* design1 = nullptr,
                        const CovarianceMatrix* design2 = nullptr);

}  // namespace relaylab
