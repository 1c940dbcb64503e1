#include "relaylab/analysis.hpp"

#include <cmath>
#include <limits>

#include "relaylab/error.hpp"

namespace relaylab {

SinrTerms sinr_terms_mrc(const EstimationStats& s1, const EstimationStats& s2, int K,
                         double alpha, double sigma2_nR) {
  const double k = K;
  const double a2 = alpha * alpha;
  const double tr1 = trace_re(s1.U), tr2 = trace_re(s2.U);
  const double n1 = frob2(s1.U), n2 = frob2(s2.U);
  const double e1 = trace_product_re(s1.U, s1.Ue), e2 = trace_product_re(s2.U, s2.Ue);
  const double bracket = tr1 * tr1 * n2 + tr2 * tr2 * n1 + k * n1 * n2;

  SinrTerms s;
  s.scheme = Scheme::mrc;
  s.alpha = alpha;
  s.t[0] = a2 * tr1 * tr1 * tr2 * tr2;
  s.t[1] = a2 * bracket;
  s.t[2] = (k - 1.0) * a2 * bracket;
  s.t[3] = k * a2 * e1 * (tr2 * tr2 + k * n2);
  s.t[4] = k * a2 * e2 * (tr1 * tr1 + k * n1);
  s.t[5] = k * k * a2 * e1 * e2;
  s.t[6] = a2 * sigma2_nR * tr1 * (tr2 * tr2 + k * n2);
  s.t[7] = a2 * sigma2_nR * k * tr1 * e2;
  return s;
}

SinrTerms sinr_terms_zf(const EstimationStats& s1, const EstimationStats& s2, int K,
                        double alpha, double sigma2_nR) {
  const double k = K;
  const double a2 = alpha * alpha;
  const double tr1 = trace_re(s1.U), tr2 = trace_re(s2.U);
  if (!(tr1 > 0.0) || !(tr2 > 0.0)) throw DegenerateConfig("Tr(U) = 0");
  const double e1 = trace_product_re(s1.U, s1.Ue), e2 = trace_product_re(s2.U, s2.Ue);

  SinrTerms s;
  s.scheme = Scheme::zf;
  s.alpha = alpha;
  s.t[0] = a2;
  s.t[1] = 0.0;
  s.t[2] = 0.0;
  s.t[3] = k * a2 * e1 / (tr1 * tr1);
  s.t[4] = k * a2 * e2 / (tr2 * tr2);
  s.t[5] = k * k * a2 * e1 * e2 / (tr1 * tr1 * tr2 * tr2);
  s.t[6] = a2 * sigma2_nR / tr1;
  s.t[7] = k * a2 * sigma2_nR * e2 / (tr1 * tr2 * tr2);
  return s;
}

SinrTerms sinr_terms(Scheme scheme, const EstimationStats& s1, const EstimationStats& s2,
                     int K, double alpha, double sigma2_nR) {
  return scheme == Scheme::mrc ? sinr_terms_mrc(s1, s2, K, alpha, sigma2_nR)
                               : sinr_terms_zf(s1, s2, K, alpha, sigma2_nR);
}

double sinr_from_terms(const std::array<double, 8>& t, double P_u, double sigma2_nD) {
  const double den = P_u * (t[1] + t[2] + t[3] + t[4] + t[5]) + t[6] + t[7] + sigma2_nD;
  if (t[0] == 0.0) return 0.0;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return P_u * t[0] / den;
}

double prelog(int tau_c, int tau_p) {
  if (tau_p >= tau_c) throw InvalidParameter("tau_p < tau_c required");
  if (tau_p <= 0 || tau_c <= 0) throw InvalidParameter("coherence lengths must be positive");
  return static_cast<double>(tau_c - tau_p) / (2.0 * static_cast<double>(tau_c));
}

SpectralEfficiencyResult spectral_efficiency(const SinrTerms& terms, double P_u,
                                             double sigma2_nD, int K, int tau_c, int tau_p) {
  SpectralEfficiencyResult r;
  r.prelog = prelog(tau_c, tau_p);
  const double sinr = sinr_from_terms(terms.t, P_u, sigma2_nD);
  r.per_user_sinr.assign(static_cast<std::size_t>(K), sinr);
  double sum = 0.0;
  for (double v : r.per_user_sinr) sum += std::log2(1.0 + v);
  r.sum_se = r.prelog * sum;
  return r;
}

SimplifiedRate zf_simplified(const CMat& u, double zeta, int K, double P_u, double P_r,
                             double sigma2_nR, double sigma2_nD, int tau_c, int tau_p) {
  const double pre = static_cast<double>(K) * prelog(tau_c, tau_p);
  const double den = 2.0 * K * zeta + sigma2_nR / P_u + sigma2_nD / (P_r / K);
  const double tr = trace_re(u);
  SimplifiedRate r;
  if (den <= 0.0) {
    r.infinite = tr > 0.0;
    r.value = r.infinite ? std::numeric_limits<double>::infinity() : 0.0;
    return r;
  }
  r.value = pre * std::log2(1.0 + tr / den);
  return r;
}

double zeta_from_nu(double nu, double tau_p_P_p) { return std::sqrt(nu / tau_p_P_p); }

}  // namespace relaylab
