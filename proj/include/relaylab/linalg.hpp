/**
 * @file linalg.hpp
 * @brief Complex matrix aliases and small Hermitian helpers on top of Eigen.
 */
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace relaylab {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// (A + A^H) / 2
CMat hermitian_part(const CMat& a);

/// Real part of the trace.
double trace_re(const CMat& a);

/// Squared Frobenius norm.
inline double frob2(const CMat& a) { return a.squaredNorm(); }

/// Re Tr(A B) for Hermitian A, B, computed as an entrywise product sum.
double trace_product_re(const CMat& a, const CMat& b);

/// Principal square root of a Hermitian PSD matrix; negative eigenvalues are
/// clamped to zero.
CMat psd_sqrt(const CMat& a);

/// Thin factor S (N x r) with S S^H = A, keeping eigenvalues above
/// rel_tol * lambda_max. Columns are ordered by descending eigenvalue.
CMat psd_factor(const CMat& a, double rel_tol = 1e-13);

/// Moore-Penrose pseudo-inverse of a Hermitian PSD matrix. Eigenvalues below
/// rel_tol * lambda_max are treated as zero. The numerical rank is written to
/// *rank when rank is non-null.
CMat psd_pinv(const CMat& a, double rel_tol = 1e-10, Eigen::Index* rank = nullptr);

/// lambda_max / lambda_min of a Hermitian matrix (infinity when lambda_min <= 0).
double hermitian_condition(const CMat& a);

/// Relative Frobenius distance ||A - B|| / ||B|| (absolute when B = 0).
double rel_frob_error(const CMat& a, const CMat& b);

}  // namespace relaylab
