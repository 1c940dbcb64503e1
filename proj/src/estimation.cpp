#include "relaylab/estimation.hpp"

#include <cmath>
#include <string>

#include "relaylab/error.hpp"

namespace relaylab {
namespace {

constexpr double kFormerFormCondition = 1e10;

void check_shapes(const CovarianceMatrix& r, const CMat& f) {
  if (f.cols() != r.dim())
    throw ShapeError("beamformer has " + std::to_string(f.cols()) +
                     " columns but covariance is " + std::to_string(r.dim()) + "x" +
                     std::to_string(r.dim()));
}

EstimationStats former_form(const CovarianceMatrix& r, const CMat& f, double c) {
  const CMat& rm = r.entries();
  const CMat fr = f * rm;
  CMat inner = c * fr * f.adjoint();
  inner.diagonal().array() += 1.0;
  Eigen::LLT<CMat> llt(hermitian_part(inner));
  const CMat u = c * fr.adjoint() * llt.solve(fr);
  EstimationStats s;
  s.U = hermitian_part(u);
  s.Ue = hermitian_part(rm - s.U);
  return s;
}

EstimationStats inverse_form(const CovarianceMatrix& r, const CMat& f, double c) {
  const RVec inv = r.eigenvalues().cwiseInverse();
  CMat a = r.eigenvectors() * inv.asDiagonal() * r.eigenvectors().adjoint();
  a += c * f.adjoint() * f;
  Eigen::LLT<CMat> llt(hermitian_part(a));
  if (llt.info() != Eigen::Success) return former_form(r, f, c);
  EstimationStats s;
  s.Ue = hermitian_part(llt.solve(CMat::Identity(r.dim(), r.dim())));
  s.U = hermitian_part(r.entries() - s.Ue);
  return s;
}

}  // namespace

void PilotConfig::validate(int K) const {
  if (!(P_p > 0.0) || !std::isfinite(P_p)) throw InvalidParameter("P_p > 0 required");
  if (tau_p < 2 * K)
    throw InvalidParameter("2K <= tau_p required for orthogonal pilots");
}

EstimationStats estimation_covariances(const CovarianceMatrix& r, const CMat& f,
                                       const PilotConfig& pilot, EstimationForm form) {
  check_shapes(r, f);
  const double c = pilot.energy();
  if (!(c > 0.0)) throw InvalidParameter("tau_p P_p must be positive");
  if (form == EstimationForm::automatic) {
    const RVec& lam = r.eigenvalues();
    const double lmin = lam.size() ? lam(lam.size() - 1) : 0.0;
    const bool singular = lmin <= 0.0 || lam(0) / lmin > kFormerFormCondition;
    form = singular ? EstimationForm::former : EstimationForm::inverse;
  }
  return form == EstimationForm::inverse ? inverse_form(r, f, c) : former_form(r, f, c);
}

CMat simulate_training(const CMat& g, const CMat& f, const PilotConfig& pilot, Rng& rng,
                       bool add_noise) {
  if (f.cols() != g.rows()) throw ShapeError("beamformer and channel dimensions differ");
  CMat y = std::sqrt(pilot.energy()) * (f * g);
  if (add_noise) y += complex_gaussian(y.rows(), y.cols(), rng);
  return y;
}

CMat mmse_estimate(const CMat& y, const CovarianceMatrix& r, const CMat& f,
                   const PilotConfig& pilot) {
  check_shapes(r, f);
  if (y.rows() != f.rows()) throw ShapeError("observation rows must equal K_a");
  const double c = pilot.energy();
  const CMat rf = r.entries() * f.adjoint();
  CMat inner = c * f * rf;
  inner.diagonal().array() += 1.0;
  inner = hermitian_part(inner);
  Eigen::LLT<CMat> llt(inner);
  if (llt.info() != Eigen::Success || !std::isfinite(hermitian_condition(inner)))
    throw IllConditionedEstimate("MMSE inner matrix is not invertible");
  return std::sqrt(c) * rf * llt.solve(y);
}

EstimateSampler::EstimateSampler(const EstimationStats& stats)
    : factor_u_(psd_factor(stats.U)), factor_ue_(psd_factor(stats.Ue)) {
  if (stats.U.rows() != stats.Ue.rows()) throw ShapeError("U and Ue sizes differ");
}

EstimateDraw EstimateSampler::draw(Eigen::Index k, Rng& rng_est, Rng& rng_err) const {
  EstimateDraw d;
  d.Ghat = factor_u_ * complex_gaussian(factor_u_.cols(), k, rng_est);
  d.E = factor_ue_ * complex_gaussian(factor_ue_.cols(), k, rng_err);
  return d;
}

EstimateDraw equivalent_estimate_draw(const EstimationStats& stats, Eigen::Index k, Rng& rng) {
  const Eigen::Index n = stats.U.rows();
  EstimateDraw d;
  d.Ghat = psd_sqrt(stats.U) * complex_gaussian(n, k, rng);
  d.E = psd_sqrt(stats.Ue) * complex_gaussian(n, k, rng);
  return d;
}

}  // namespace relaylab
