#include "relaylab/channel.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

#include "relaylab/error.hpp"

namespace relaylab {
namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kNegativeEigTol = 1e-10;

}  // namespace

CovarianceMatrix::CovarianceMatrix(const CMat& entries) {
  if (entries.rows() != entries.cols())
    throw ShapeError("covariance matrix must be square");
  if (!entries.allFinite()) throw InvalidParameter("covariance matrix has non-finite entries");
  const double scale = entries.norm();
  if ((entries - entries.adjoint()).norm() > kHermitianTol * std::max(scale, 1e-300))
    throw InvalidParameter("covariance matrix is not Hermitian");
  entries_ = hermitian_part(entries);

  const Eigen::Index n = entries_.rows();
  Eigen::SelfAdjointEigenSolver<CMat> es(entries_);
  if (es.info() != Eigen::Success) throw NotPsdError("eigendecomposition failed");

  eigenvalues_.resize(n);
  eigenvectors_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    eigenvalues_(i) = es.eigenvalues()(n - 1 - i);
    eigenvectors_.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  const double top = n > 0 ? eigenvalues_(0) : 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (eigenvalues_(i) < -kNegativeEigTol * std::abs(top))
      throw NotPsdError("covariance matrix has eigenvalue " +
                        std::to_string(eigenvalues_(i)) + " below tolerance");
    if (eigenvalues_(i) < 0.0) eigenvalues_(i) = 0.0;
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index pivot = 0;
    eigenvectors_.col(i).cwiseAbs().maxCoeff(&pivot);
    const cplx v = eigenvectors_(pivot, i);
    if (std::abs(v) > 0.0) eigenvectors_.col(i) *= std::conj(v) / std::abs(v);
  }
}

CMat CovarianceMatrix::sqrt() const {
  RVec root = eigenvalues_.cwiseSqrt();
  return eigenvectors_ * root.asDiagonal() * eigenvectors_.adjoint();
}

CovarianceMatrix build_covariance(const CovarianceModelParams& p, Eigen::Index n) {
  if (n < 1) throw InvalidParameter("N must be at least 1");
  if (!std::isfinite(p.antenna_spacing) || !std::isfinite(p.mean_angle) ||
      !std::isfinite(p.angle_spread))
    throw InvalidParameter("covariance parameters must be finite");
  if (p.antenna_spacing <= 0.0) throw InvalidParameter("antenna spacing must be positive");
  if (p.angle_spread < 0.0) throw InvalidParameter("angle spread must be non-negative");

  const double two_pi = 2.0 * std::numbers::pi;
  const double sign = p.side == ArraySide::receive ? 1.0 : -1.0;
  CMat r(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    r(m, m) = 1.0;
    for (Eigen::Index col = m + 1; col < n; ++col) {
      const double s = sign * static_cast<double>(col - m);
      const double phase = -two_pi * s * p.antenna_spacing * std::cos(p.mean_angle);
      const double spread = two_pi * s * p.antenna_spacing * std::sin(p.mean_angle) * p.angle_spread;
      const cplx v = std::polar(std::exp(-0.5 * spread * spread), phase);
      r(m, col) = v;
      r(col, m) = std::conj(v);
    }
  }
  return CovarianceMatrix(r);
}

CMat hermitian_sqrt(const CovarianceMatrix& r) { return r.sqrt(); }

CMat sample_channel(const CovarianceMatrix& r, Eigen::Index k, Rng& rng) {
  return r.sqrt() * complex_gaussian(r.dim(), k, rng);
}

CVec array_response(double phi, Eigen::Index n, double spacing) {
  CVec a(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    a(i) = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(i) * spacing * std::cos(phi));
  return a;
}

CMat steering_matrix(const std::vector<double>& angles, Eigen::Index n, double spacing) {
  CMat a(n, static_cast<Eigen::Index>(angles.size()));
  for (std::size_t l = 0; l < angles.size(); ++l)
    a.col(static_cast<Eigen::Index>(l)) = array_response(angles[l], n, spacing);
  return a;
}

std::vector<double> draw_path_angles(int num_paths, Rng& rng) {
  std::vector<double> angles(static_cast<std::size_t>(std::max(num_paths, 0)));
  for (auto& a : angles) a = 2.0 * std::numbers::pi * rng.uniform();
  return angles;
}

CMat parametric_channel(const ParametricChannelParams& params, Eigen::Index n, Eigen::Index k,
                        Rng& rng) {
  if (params.num_paths < 1) throw InvalidParameter("number of paths L must be at least 1");
  std::vector<double> angles = params.path_angles;
  if (angles.empty()) angles = draw_path_angles(params.num_paths, rng);
  if (static_cast<int>(angles.size()) != params.num_paths)
    throw InvalidParameter("path_angles must have L entries");
  const CMat a = steering_matrix(angles, n, params.antenna_spacing);
  const double gain = std::sqrt(static_cast<double>(n) / params.num_paths);
  return gain * a * complex_gaussian(params.num_paths, k, rng);
}

CovarianceMatrix parametric_covariance(const std::vector<double>& angles, Eigen::Index n,
                                       double spacing) {
  if (angles.empty()) throw InvalidParameter("number of paths L must be at least 1");
  const CMat a = steering_matrix(angles, n, spacing);
  const double gain = static_cast<double>(n) / static_cast<double>(angles.size());
  return CovarianceMatrix(hermitian_part(gain * a * a.adjoint()));
}

}  // namespace relaylab
