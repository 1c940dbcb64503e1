#include "relaylab/digital.hpp"

#include <cmath>

#include "relaylab/error.hpp"

namespace relaylab {
namespace {

constexpr double kGramCondition = 1e12;

struct Traces {
  double tr1, tr2, fro1, fro2, err1, err2;
};

Traces traces(const EstimationStats& s1, const EstimationStats& s2) {
  return {trace_re(s1.U), trace_re(s2.U), frob2(s1.U), frob2(s2.U),
          trace_product_re(s1.U, s1.Ue), trace_product_re(s2.U, s2.Ue)};
}

double checked_alpha(double num, double den) {
  if (!(den > 0.0) || !std::isfinite(den))
    throw DegenerateConfig("amplification factor denominator is zero");
  return std::sqrt(num / den);
}

CMat gram_inverse(const CMat& g) {
  const CMat gram = hermitian_part(g.adjoint() * g);
  if (hermitian_condition(gram) > kGramCondition)
    throw IllConditionedEstimate("Gram matrix of the channel estimate is ill-conditioned");
  Eigen::LLT<CMat> llt(gram);
  return llt.solve(CMat::Identity(gram.rows(), gram.cols()));
}

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::mrc ? "mrc" : "zf"; }

Scheme scheme_from_string(const std::string& s) {
  if (s == "mrc") return Scheme::mrc;
  if (s == "zf") return Scheme::zf;
  throw InvalidParameter("unknown scheme '" + s + "'");
}

double alpha_mrc(const EstimationStats& s1, const EstimationStats& s2, int K, double P_u,
                 double P_r, double sigma2_nR) {
  const Traces t = traces(s1, s2);
  const double k = K;
  const double den = P_u * k * t.tr2 * (t.tr1 * t.tr1 + k * t.fro1) +
                     P_u * k * k * t.err1 * t.tr2 + sigma2_nR * k * t.tr1 * t.tr2;
  return checked_alpha(P_r, den);
}

double alpha_zf(const EstimationStats& s1, const EstimationStats& s2, int K, double P_u,
                double P_r, double sigma2_nR) {
  const Traces t = traces(s1, s2);
  if (!(t.tr1 > 0.0)) throw DegenerateConfig("Tr(U1) = 0");
  const double k = K;
  const double den = P_u * k * t.tr1 + P_u * k * k * t.err1 / t.tr1 + k * sigma2_nR;
  return checked_alpha(P_r * t.tr1 * t.tr2, den);
}

double alpha_for(Scheme scheme, const EstimationStats& s1, const EstimationStats& s2, int K,
                 double P_u, double P_r, double sigma2_nR) {
  return scheme == Scheme::mrc ? alpha_mrc(s1, s2, K, P_u, P_r, sigma2_nR)
                               : alpha_zf(s1, s2, K, P_u, P_r, sigma2_nR);
}

CMat analog_left_inverse(const CMat& f, Eigen::Index K) {
  Eigen::Index rank = 0;
  const CMat p = psd_pinv(hermitian_part(f * f.adjoint()), 1e-10, &rank);
  if (rank < K) throw SingularBeamformer("analog beamformer rank is below K");
  return p * f;
}

CMat zf_core(const CMat& ghat1, const CMat& ghat2) {
  return gram_inverse(ghat2) * gram_inverse(ghat1);
}

DigitalProcessor mrc_processor(const CMat& ghat1, const CMat& ghat2, const CMat& f1,
                               const CMat& f2, double alpha) {
  if (ghat1.cols() != ghat2.cols()) throw ShapeError("estimates must have K columns");
  const Eigen::Index K = ghat1.cols();
  const CMat l2 = analog_left_inverse(f2, K);
  const CMat l1 = analog_left_inverse(f1, K);
  DigitalProcessor p;
  p.W = alpha * (l2 * ghat2) * (l1 * ghat1).adjoint();
  p.scheme = Scheme::mrc;
  p.alpha = alpha;
  return p;
}

DigitalProcessor zf_processor(const CMat& ghat1, const CMat& ghat2, const CMat& f1,
                              const CMat& f2, double alpha) {
  if (ghat1.cols() != ghat2.cols()) throw ShapeError("estimates must have K columns");
  const Eigen::Index K = ghat1.cols();
  const CMat core = zf_core(ghat1, ghat2);
  const CMat l2 = analog_left_inverse(f2, K);
  const CMat l1 = analog_left_inverse(f1, K);
  DigitalProcessor p;
  p.W = alpha * (l2 * ghat2) * core * (l1 * ghat1).adjoint();
  p.scheme = Scheme::zf;
  p.alpha = alpha;
  return p;
}

}  // namespace relaylab
