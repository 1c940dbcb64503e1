#include "relaylab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace relaylab {

CMat hermitian_part(const CMat& a) { return (a + a.adjoint()) * 0.5; }

double trace_re(const CMat& a) { return a.trace().real(); }

double trace_product_re(const CMat& a, const CMat& b) {
  // Tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return a.cwiseProduct(b.conjugate()).sum().real();
}

CMat psd_sqrt(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a));
  RVec root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

CMat psd_factor(const CMat& a, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a));
  const RVec& w = es.eigenvalues();
  const Eigen::Index n = w.size();
  const double top = n > 0 ? w(n - 1) : 0.0;
  Eigen::Index r = 0;
  while (r < n && top > 0.0 && w(n - 1 - r) > rel_tol * top) ++r;
  CMat s(a.rows(), r);
  for (Eigen::Index i = 0; i < r; ++i)
    s.col(i) = es.eigenvectors().col(n - 1 - i) * std::sqrt(w(n - 1 - i));
  return s;
}

CMat psd_pinv(const CMat& a, double rel_tol, Eigen::Index* rank) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a));
  const RVec& w = es.eigenvalues();
  const double top = w.size() > 0 ? w.maxCoeff() : 0.0;
  RVec inv = RVec::Zero(w.size());
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (top > 0.0 && w(i) > rel_tol * top) {
      inv(i) = 1.0 / w(i);
      ++r;
    }
  }
  if (rank != nullptr) *rank = r;
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

double hermitian_condition(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

double rel_frob_error(const CMat& a, const CMat& b) {
  const double nb = b.norm();
  const double diff = (a - b).norm();
  return nb > 0.0 ? diff / nb : diff;
}

}  // namespace relaylab
