/**
 * @file channel.hpp
 * @brief Spatial covariance models and correlated channel draws.
 */
#pragma once

#include <vector>

#include "relaylab/linalg.hpp"
#include "relaylab/rng.hpp"

namespace relaylab {

enum class ArraySide { receive, transmit };

/// Gaussian angular-spread model of a uniform linear array.
struct CovarianceModelParams {
  double antenna_spacing = 0.5;  ///< wavelengths
  double mean_angle = 0.4 * 3.14159265358979323846;  ///< radians, [0, 2pi)
  double angle_spread = 0.25;  ///< radians
  ArraySide side = ArraySide::receive;
};

/**
 * Hermitian PSD N x N matrix with a cached eigendecomposition.
 *
 * Eigenvalues are sorted in descending order and clamped at zero; each
 * eigenvector is rotated so its largest-magnitude entry is real positive.
 * Construction throws NotPsdError if an eigenvalue is below -1e-10 * lambda_1
 * and InvalidParameter if the input is not Hermitian to 1e-12 (relative).
 */
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(const CMat& entries);

  const CMat& entries() const { return entries_; }
  const RVec& eigenvalues() const { return eigenvalues_; }
  const CMat& eigenvectors() const { return eigenvectors_; }
  Eigen::Index dim() const { return entries_.rows(); }
  double trace() const { return trace_re(entries_); }

  /// S with S S = R, built from the cached decomposition.
  CMat sqrt() const;

 private:
  CMat entries_;
  RVec eigenvalues_;
  CMat eigenvectors_;
};

/// Entry (m, n) = exp(-j 2pi s Delta cos(theta)) exp(-(2pi s Delta sin(theta) sigma)^2 / 2)
/// with s = n - m on the receive side and s = m - n on the transmit side.
CovarianceMatrix build_covariance(const CovarianceModelParams& params, Eigen::Index n);

/// Hermitian PSD square root with clamped eigenvalues.
CMat hermitian_sqrt(const CovarianceMatrix& r);

/// R^{1/2} H with H of i.i.d. CN(0, 1) entries.
CMat sample_channel(const CovarianceMatrix& r, Eigen::Index k, Rng& rng);

/// ULA steering vector (1/sqrt(N)) [exp(j 2pi n d cos(phi))]_n.
CVec array_response(double phi, Eigen::Index n, double spacing);

struct ParametricChannelParams {
  int num_paths = 10;
  std::vector<double> path_angles;  ///< empty: drawn uniform on [0, 2pi)
  double antenna_spacing = 0.5;     ///< wavelengths
};

/// Steering matrix A_r = [a(phi_1) ... a(phi_L)].
CMat steering_matrix(const std::vector<double>& angles, Eigen::Index n, double spacing);

/// Draws path angles uniformly on [0, 2pi).
std::vector<double> draw_path_angles(int num_paths, Rng& rng);

/// sqrt(N/L) A_r H with H of i.i.d. CN(0, 1) entries of size L x K.
/// Angles are drawn from rng when params.path_angles is empty.
CMat parametric_channel(const ParametricChannelParams& params, Eigen::Index n,
                        Eigen::Index k, Rng& rng);

/// Covariance (N/L) A_r A_r^H of the parametric model for fixed angles.
CovarianceMatrix parametric_covariance(const std::vector<double>& angles, Eigen::Index n,
                                       double spacing);

}  // namespace relaylab
