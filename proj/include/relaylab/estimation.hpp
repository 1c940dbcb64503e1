/**
 * @file estimation.hpp
 * @brief Pilot training, MMSE channel estimation and the (U, Ue) statistics.
 */
#pragma once

#include <optional>

#include "relaylab/channel.hpp"
#include "relaylab/linalg.hpp"
#include "relaylab/rng.hpp"

namespace relaylab {

struct PilotConfig {
  int tau_p = 20;     ///< pilot length in symbols
  double P_p = 1.0;   ///< average pilot power
  double energy() const { return static_cast<double>(tau_p) * P_p; }
  /// Throws InvalidParameter unless 2K <= tau_p and P_p > 0.
  void validate(int K) const;
};

/// Estimation covariance U and error covariance Ue of one link (U + Ue = R).
struct EstimationStats {
  CMat U;
  CMat Ue;
  std::optional<double> nu;
  std::optional<int> K_prime;
};

enum class EstimationForm {
  automatic,  ///< inverse form unless cond(R) > 1e10
  inverse,    ///< Ue = (R^-1 + tau_p P_p F^H F)^-1
  former,     ///< U = tau_p P_p R F^H (tau_p P_p F R F^H + I)^-1 F R
};

EstimationStats estimation_covariances(const CovarianceMatrix& r, const CMat& f,
                                       const PilotConfig& pilot,
                                       EstimationForm form = EstimationForm::automatic);

/// Y = sqrt(tau_p P_p) F G + N with unit complex Gaussian N. With add_noise
/// false the noise term is omitted (test hook).
CMat simulate_training(const CMat& g, const CMat& f, const PilotConfig& pilot, Rng& rng,
                       bool add_noise = true);

/// Ghat = sqrt(tau_p P_p) R F^H (tau_p P_p F R F^H + I)^-1 Y
CMat mmse_estimate(const CMat& y, const CovarianceMatrix& r, const CMat& f,
                   const PilotConfig& pilot);

struct EstimateDraw {
  CMat Ghat;
  CMat E;
};

/**
 * Draws Ghat ~ U^{1/2} Hhat and E ~ Ue^{1/2} He.
 *
 * The Gaussian draws go through thin factors S S^H = U, which have the same
 * distribution as the Hermitian square root but cost O(N r K) with r the rank.
 * Ghat uses rng_est, E uses rng_err.
 */
class EstimateSampler {
 public:
  explicit EstimateSampler(const EstimationStats& stats);
  EstimateDraw draw(Eigen::Index k, Rng& rng_est, Rng& rng_err) const;
  const CMat& factor_u() const { return factor_u_; }
  const CMat& factor_ue() const { return factor_ue_; }

 private:
  CMat factor_u_;
  CMat factor_ue_;
};

/// Ghat = U^{1/2} Hhat and E = Ue^{1/2} He with Hermitian square roots; both
/// Gaussian matrices come from rng in that order.
EstimateDraw equivalent_estimate_draw(const EstimationStats& stats, Eigen::Index k, Rng& rng);

}  // namespace relaylab
