/**
 * @file analysis.hpp
 * @brief Closed-form SINR terms t0..t7, sum spectral efficiency and the
 * simplified ZF approximation.
 */
#pragma once

#include <array>
#include <vector>

#include "relaylab/digital.hpp"
#include "relaylab/estimation.hpp"

namespace relaylab {

enum class TermOrigin { closed_form, monte_carlo };

struct SinrTerms {
  std::array<double, 8> t{};
  double alpha = 0.0;
  Scheme scheme = Scheme::mrc;
  TermOrigin origin = TermOrigin::closed_form;
  std::array<double, 8> ci{};  ///< 95% half-widths, Monte Carlo origin only
};

struct SpectralEfficiencyResult {
  std::vector<double> per_user_sinr;
  double sum_se = 0.0;
  double prelog = 0.0;
};

SinrTerms sinr_terms_mrc(const EstimationStats& s1, const EstimationStats& s2, int K,
                         double alpha, double sigma2_nR);

/// Large-N limits of the ZF terms. Throws DegenerateConfig if Tr(U_i) = 0.
SinrTerms sinr_terms_zf(const EstimationStats& s1, const EstimationStats& s2, int K,
                        double alpha, double sigma2_nR);

SinrTerms sinr_terms(Scheme scheme, const EstimationStats& s1, const EstimationStats& s2,
                     int K, double alpha, double sigma2_nR);

/// SINR = P_u t0 / (P_u (t1 + ... + t5) + t6 + t7 + sigma2_nD).
double sinr_from_terms(const std::array<double, 8>& t, double P_u, double sigma2_nD);

/// (tau_c - tau_p) / (2 tau_c); throws InvalidParameter unless 0 < tau_p < tau_c.
double prelog(int tau_c, int tau_p);

SpectralEfficiencyResult spectral_efficiency(const SinrTerms& terms, double P_u,
                                             double sigma2_nD, int K, int tau_c, int tau_p);

struct SimplifiedRate {
  double value = 0.0;
  bool infinite = false;
};

/// (K (tau_c - tau_p) / 2 tau_c) log2(1 + Tr(U) / (2 K zeta + sigma2_nR / P_u + sigma2_nD K / P_r))
SimplifiedRate zf_simplified(const CMat& u, double zeta, int K, double P_u, double P_r,
                             double sigma2_nR, double sigma2_nD, int tau_c, int tau_p);

/// zeta = sqrt(nu / (tau_p P_p)).
double zeta_from_nu(double nu, double tau_p_P_p);

}  // namespace relaylab
