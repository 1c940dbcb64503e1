/**
 * @file analog.hpp
 * @brief Correlation-based analog beamformers: water-filling design, constant
 * modulus projection, phase quantization and the Hadamard baseline.
 */
#pragma once

#include <optional>
#include <string>

#include "relaylab/channel.hpp"
#include "relaylab/estimation.hpp"
#include "relaylab/linalg.hpp"

namespace relaylab {

enum class BeamformerMode { uab, cab, quantized, hadamard };

std::string to_string(BeamformerMode mode);
BeamformerMode beamformer_mode_from_string(const std::string& s);

struct WaterfillResult {
  RVec x;           ///< power per bin, length K_a
  double nu = 0.0;  ///< Lagrange multiplier, level = sqrt(tau_p P_p / nu)
  double level = 0.0;
  int K_prime = 0;  ///< number of filled bins
};

struct AnalogBeamformer {
  CMat F;  ///< K_a x N
  BeamformerMode mode = BeamformerMode::uab;
  int bits = 0;  ///< quantizer resolution, Quantized mode only
  std::optional<WaterfillResult> waterfill;

  Eigen::Index rf_chains() const { return F.rows(); }
  Eigen::Index antennas() const { return F.cols(); }
};

/// gamma_i = 1 / lambda_i in ascending order; eigenvalues at or below
/// 1e-12 * lambda_1 map to +infinity and are never filled.
RVec inverse_eigenvalues(const CovarianceMatrix& r);

/**
 * Water-filling over K_a bins.
 *
 * @param gammas ascending, positive; +infinity marks an unusable bin
 * @param K_a    power budget and maximal number of bins
 * @param tau_p_P_p pilot energy
 */
WaterfillResult waterfill(const RVec& gammas, int K_a, double tau_p_P_p);

/// F = diag(sqrt(x)) U_R^H restricted to the first K_a eigenvectors.
AnalogBeamformer design_uab(const CovarianceMatrix& r, int K_a, const PilotConfig& pilot);

/// Keeps phases, sets every modulus to 1/sqrt(N); zero entries take phase 0.
AnalogBeamformer constrain_cab(const AnalogBeamformer& uab);

/// Maps each phase to the nearest point of {2 pi m / 2^b}, ties to the lower m.
AnalogBeamformer quantize_phases(const AnalogBeamformer& f, int bits);

/// First K_a rows of the Sylvester Hadamard matrix scaled by 1/sqrt(N).
AnalogBeamformer hadamard_beamformer(Eigen::Index n, Eigen::Index K_a);

/// Estimation statistics with the water-filling metadata copied over.
EstimationStats estimation_covariances(const CovarianceMatrix& r, const AnalogBeamformer& f,
                                       const PilotConfig& pilot);

}  // namespace relaylab
