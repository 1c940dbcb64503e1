#include "relaylab/montecarlo.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include "relaylab/error.hpp"

namespace relaylab {
namespace {

constexpr int kDim = 9;  // Re m1, Im m1, m2, t2..t7
using Vec9 = Eigen::Matrix<double, kDim, 1>;
using Mat9 = Eigen::Matrix<double, kDim, kDim>;

struct VectorWelford {
  long n = 0;
  Vec9 mean = Vec9::Zero();
  Mat9 co = Mat9::Zero();
  void add(const Vec9& x) {
    ++n;
    const Vec9 d = x - mean;
    mean += d / static_cast<double>(n);
    co += d * (x - mean).transpose();
  }
  /// Var(a^T mean) estimate.
  double var_of(const Vec9& a) const {
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    return a.dot(co * a) / static_cast<double>(n - 1) / static_cast<double>(n);
  }
};

struct ScalarWelford {
  long n = 0;
  double mean = 0.0, m2 = 0.0;
  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  McEstimate estimate() const {
    McEstimate e;
    e.mean = mean;
    e.n = n;
    e.se_defined = n >= 2;
    e.std_error = e.se_defined
                      ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n))
                      : std::numeric_limits<double>::quiet_NaN();
    return e;
  }
};

McEstimate from_linear(double mean, const VectorWelford& w, const Vec9& grad) {
  McEstimate e;
  e.mean = mean;
  e.n = w.n;
  e.se_defined = w.n >= 2;
  e.std_error = e.se_defined ? std::sqrt(std::max(0.0, w.var_of(grad)))
                             : std::numeric_limits<double>::quiet_NaN();
  return e;
}

/// Squared norms of the rows of m.
RVec row_power(const CMat& m) { return m.cwiseAbs2().rowwise().sum(); }

}  // namespace

TrialContext::TrialContext(const EstimationStats& s1, const EstimationStats& s2,
                           const CMat& f1, const CMat& f2, Scheme sch, double a,
                           const SystemConfig& c)
    : sampler1(s1),
      sampler2(s2),
      F1(f1),
      F2(f2),
      scheme(sch),
      relay_model(c.relay_model),
      alpha(a),
      K(c.K),
      P_u(c.P_u),
      sigma2_nR(c.sigma2_nR),
      sigma2_nD(c.sigma2_nD) {
  if (relay_model == RelayModel::explicit_w) {
    F1F1h = hermitian_part(F1 * F1.adjoint());
    F2F2h = hermitian_part(F2 * F2.adjoint());
    left1 = analog_left_inverse(F1, K);
    left2 = analog_left_inverse(F2, K);
  }
}

TrialContext::TrialContext(const Scenario& s)
    : TrialContext(s.stats1, s.stats2, s.F1.F, s.F2.F, s.config.scheme, s.alpha, s.config) {}

TrialRecord simulate_trial(const TrialContext& ctx, std::uint64_t seed, long trial) {
  const auto t = static_cast<std::uint64_t>(trial);
  Rng est1(seed, t, StreamId::estimate_rx), err1(seed, t, StreamId::error_rx);
  Rng est2(seed, t, StreamId::estimate_tx), err2(seed, t, StreamId::error_tx);
  Rng sym(seed, t, StreamId::symbols), nr(seed, t, StreamId::relay_noise);
  Rng nd(seed, t, StreamId::destination_noise);

  const Eigen::Index k = ctx.K;
  const EstimateDraw d1 = ctx.sampler1.draw(k, est1, err1);
  const EstimateDraw d2 = ctx.sampler2.draw(k, est2, err2);

  // Relay transform A = T2^H C T1.
  CMat b1, c1, b2, c2, p1, p2, core;
  if (ctx.relay_model == RelayModel::target) {
    b1 = d1.Ghat.adjoint() * d1.Ghat;
    c1 = d1.Ghat.adjoint() * d1.E;
    b2 = d2.Ghat.adjoint() * d2.Ghat;
    c2 = d2.Ghat.adjoint() * d2.E;
    p1 = b1;
    p2 = b2;
    core = ctx.scheme == Scheme::mrc ? CMat(ctx.alpha * CMat::Identity(k, k))
                                     : CMat(ctx.alpha * zf_core(d1.Ghat, d2.Ghat));
  } else {
    b1 = ctx.F1 * d1.Ghat;
    c1 = ctx.F1 * d1.E;
    b2 = ctx.F2 * d2.Ghat;
    c2 = ctx.F2 * d2.E;
    p1 = ctx.F1F1h;
    p2 = ctx.F2F2h;
    const CMat mid = ctx.scheme == Scheme::mrc ? CMat::Identity(k, k).eval()
                                               : zf_core(d1.Ghat, d2.Ghat);
    core = ctx.alpha * (ctx.left2 * d2.Ghat) * mid * (ctx.left1 * d1.Ghat).adjoint();
  }

  const CMat l2 = b2.adjoint() * core;
  const CMat l2e = c2.adjoint() * core;
  const CMat dmat = l2 * b1;
  const RVec off = row_power(dmat) - dmat.diagonal().cwiseAbs2();
  const double kd = static_cast<double>(k);

  TrialRecord r;
  r.m1 = dmat.diagonal().mean();
  r.m2 = dmat.diagonal().cwiseAbs2().mean();
  r.t[0] = off.mean();
  r.t[1] = row_power(l2 * c1).mean();
  r.t[2] = row_power(l2e * b1).mean();
  r.t[3] = row_power(l2e * c1).mean();
  r.t[4] = ctx.sigma2_nR * (l2 * p1 * l2.adjoint()).diagonal().real().mean();
  r.t[5] = ctx.sigma2_nR * (l2e * p1 * l2e.adjoint()).diagonal().real().mean();

  const CMat g1 = b1 + c1;
  const CMat m = core * g1;
  r.relay_power = ctx.P_u * trace_product_re(p2 * m, m) +
                  ctx.sigma2_nR * trace_product_re(p2 * core * p1, core);

  r.decomposed = ctx.P_u * (r.m2 + r.t[0] + r.t[1] + r.t[2] + r.t[3]) + r.t[4] + r.t[5] +
                 ctx.sigma2_nD;

  const CVec x = complex_gaussian(k, 1, sym).col(0);
  const CVec n_r = complex_gaussian(d1.Ghat.rows(), 1, nr, ctx.sigma2_nR).col(0);
  const CVec n_d = complex_gaussian(k, 1, nd, ctx.sigma2_nD).col(0);
  const CMat eff = l2 + l2e;
  CVec t1n;
  if (ctx.relay_model == RelayModel::target) t1n = d1.Ghat.adjoint() * n_r;
  else t1n = ctx.F1 * n_r;
  const CVec y = std::sqrt(ctx.P_u) * (eff * (g1 * x)) + eff * t1n + n_d;
  r.received = y.squaredNorm() / kd;
  return r;
}

std::vector<TrialRecord> run_trials(const TrialContext& ctx, long n_trials,
                                    std::uint64_t seed, Kernel kernel, int workers) {
  if (n_trials < 1) throw InvalidParameter("n_trials >= 1 required");
  std::vector<TrialRecord> records(static_cast<std::size_t>(n_trials));
  if (kernel == Kernel::serial) {
    for (long i = 0; i < n_trials; ++i) records[static_cast<std::size_t>(i)] = simulate_trial(ctx, seed, i);
    return records;
  }
  std::exception_ptr failure;
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
  for (long i = 0; i < n_trials; ++i) {
    try {
      records[static_cast<std::size_t>(i)] = simulate_trial(ctx, seed, i);
    } catch (...) {
#pragma omp critical(relaylab_mc_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

McResult reduce_records(const std::vector<TrialRecord>& records, const TrialContext& ctx,
                        int tau_c, int tau_p) {
  VectorWelford w;
  ScalarWelford power, received, gap;
  for (const TrialRecord& r : records) {
    Vec9 z;
    z << r.m1.real(), r.m1.imag(), r.m2, r.t[0], r.t[1], r.t[2], r.t[3], r.t[4], r.t[5];
    w.add(z);
    power.add(r.relay_power);
    received.add(r.received);
    gap.add(r.decomposed - r.received);
  }

  const double mr = w.mean(0), mi = w.mean(1);
  McResult out;
  out.n_trials = w.n;
  std::array<double, 8> t{};
  t[0] = mr * mr + mi * mi;
  t[1] = std::max(0.0, w.mean(2) - t[0]);
  for (int j = 0; j < 6; ++j) t[2 + j] = w.mean(3 + j);

  Vec9 g0 = Vec9::Zero();
  g0(0) = 2.0 * mr;
  g0(1) = 2.0 * mi;
  out.term_estimates[0] = from_linear(t[0], w, g0);
  Vec9 g1 = -g0;
  g1(2) = 1.0;
  out.term_estimates[1] = from_linear(t[1], w, g1);
  for (int j = 0; j < 6; ++j) {
    Vec9 e = Vec9::Zero();
    e(3 + j) = 1.0;
    out.term_estimates[2 + j] = from_linear(t[2 + j], w, e);
  }

  out.terms.t = t;
  out.terms.alpha = ctx.alpha;
  out.terms.scheme = ctx.scheme;
  out.terms.origin = TermOrigin::monte_carlo;
  for (int j = 0; j < 8; ++j) out.terms.ci[j] = out.term_estimates[j].ci_half();

  out.se = spectral_efficiency(out.terms, ctx.P_u, ctx.sigma2_nD, ctx.K, tau_c, tau_p);

  // Delta method for the sum SE.
  const double pu = ctx.P_u;
  const double den = pu * (t[1] + t[2] + t[3] + t[4] + t[5]) + t[6] + t[7] + ctx.sigma2_nD;
  const double sinr = out.se.per_user_sinr.empty() ? 0.0 : out.se.per_user_sinr.front();
  Vec9 gs = Vec9::Zero();
  if (den > 0.0 && std::isfinite(sinr)) {
    const double d2 = den * den;
    gs(0) = pu * 2.0 * mr / den + pu * t[0] * pu * 2.0 * mr / d2;
    gs(1) = pu * 2.0 * mi / den + pu * t[0] * pu * 2.0 * mi / d2;
    gs(2) = -pu * t[0] * pu / d2;
    for (int j = 3; j < 7; ++j) gs(j) = -pu * t[0] * pu / d2;
    gs(7) = gs(8) = -pu * t[0] / d2;
    gs *= out.se.prelog * ctx.K / ((1.0 + sinr) * std::numbers::ln2);
  }
  out.sum_se = from_linear(out.se.sum_se, w, gs);
  out.relay_power = power.estimate();
  out.received_power = received.estimate();
  out.completeness_gap = gap.estimate();
  return out;
}

McResult run_scenario(const Scenario& s, long n_trials, std::uint64_t seed, Kernel kernel,
                      int workers) {
  const TrialContext ctx(s);
  const auto records = run_trials(ctx, n_trials, seed, kernel, workers);
  return reduce_records(records, ctx, s.config.tau_c, s.config.tau_p);
}

McResult run_plan(const TrialPlan& plan) {
  const Scenario s = build_scenario(plan.config, plan.master_seed);
  return run_scenario(s, plan.n_trials, plan.master_seed, plan.kernel, plan.workers);
}

}  // namespace relaylab
