#include "relaylab/lemmas.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "relaylab/channel.hpp"
#include "relaylab/error.hpp"
#include "relaylab/linalg.hpp"
#include "relaylab/rng.hpp"

namespace relaylab {
namespace {

/// Running mean and variance (Welford).
struct Moments {
  long n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double std_error() const {
    return n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  }
};

class Collector {
 public:
  explicit Collector(double z) : z_(z) {}

  void equal(const std::string& lemma, const std::string& what, const Moments& m,
             double analytic) {
    LemmaCheck c{lemma, what, m.mean, analytic, m.std_error(), false, false};
    c.pass = std::abs(c.empirical - analytic) <= z_ * c.std_error + 1e-12 * std::abs(analytic);
    checks_.push_back(c);
  }

  void bounded(const std::string& lemma, const std::string& what, double empirical,
               double se, double bound) {
    LemmaCheck c{lemma, what, empirical, bound, se, true, false};
    c.pass = empirical <= bound + z_ * se;
    checks_.push_back(c);
  }

  std::vector<LemmaCheck> take() { return std::move(checks_); }

 private:
  double z_;
  std::vector<LemmaCheck> checks_;
};

std::string entry(const char* name, int i, int j) {
  return std::string(name) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

bool LemmaReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

bool LemmaReport::lemma_pass(const std::string& lemma) const {
  bool seen = false;
  for (const auto& c : checks) {
    if (c.lemma != lemma) continue;
    seen = true;
    if (!c.pass) return false;
  }
  return seen;
}

std::string LemmaReport::to_text() const {
  std::ostringstream os;
  char buf[256];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%-3s %-28s empirical=% .6e %s=% .6e se=%.3e %s\n",
                  c.lemma.c_str(), c.quantity.c_str(), c.empirical,
                  c.upper_bound ? "bound   " : "analytic", c.analytic, c.std_error,
                  c.pass ? "PASS" : "FAIL");
    os << buf;
  }
  return os.str();
}

LemmaReport lemma_oracles(const LemmaOracleParams& p, std::uint64_t seed) {
  if (p.N < 2 || p.K < 2 || p.draws < 2) throw InvalidParameter("lemma oracles need N, K, draws >= 2");
  const Eigen::Index n = p.N, k = p.K;

  Rng setup(seed, 0, StreamId::generic);
  CMat a = complex_gaussian(n, n, setup);
  const CMat v = hermitian_part(a);
  const double tr_v = trace_re(v);

  CovarianceModelParams cp;
  const CovarianceMatrix cov = build_covariance(cp, n);
  const CMat& u = cov.entries();
  const CMat su = cov.sqrt();
  const double tr_u = cov.trace();
  const double fro_u = frob2(u);
  const RVec& lam = cov.eigenvalues();

  std::vector<Moments> l1(static_cast<std::size_t>(k * k * 2));
  std::vector<Moments> l3(static_cast<std::size_t>(k * k * 2));
  std::vector<Moments> c1(static_cast<std::size_t>(k * k * 2));
  Moments l2_cross, l2_self, l4_mean, l4_var, l5_re, l5_im, l5_var;

  Rng rng(seed, 1, StreamId::generic);
  for (long d = 0; d < p.draws; ++d) {
    const CMat h1 = complex_gaussian(n, k, rng, p.sigma2);
    const CMat q1 = h1.adjoint() * v * h1;

    const CMat h = complex_gaussian(n, k, rng);
    const CMat g = su * h;
    const CMat gg = g.adjoint() * g;
    const CMat q3 = gg * gg;
    const CMat c = h.adjoint() * u * h / tr_u;

    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) {
        const std::size_t idx = static_cast<std::size_t>(2 * (i * k + j));
        l1[idx].add(q1(i, j).real());
        l1[idx + 1].add(q1(i, j).imag());
        l3[idx].add(q3(i, j).real());
        l3[idx + 1].add(q3(i, j).imag());
        c1[idx].add(c(i, j).real());
        c1[idx + 1].add(c(i, j).imag());
      }

    const CVec hv = h.col(0), gv = h.col(1);
    const cplx cross = hv.dot(u * gv);
    const cplx self = hv.dot(u * hv);
    l2_cross.add(std::norm(cross));
    l2_self.add(std::norm(self));
    const double x = self.real() / tr_u;
    l4_mean.add(x);
    l4_var.add((x - 1.0) * (x - 1.0));
    const cplx y = cross / tr_u;
    l5_re.add(y.real());
    l5_im.add(y.imag());
    l5_var.add(std::norm(y));
  }

  Collector out(p.z_threshold);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i; j < k; ++j) {
      const std::size_t idx = static_cast<std::size_t>(2 * (i * k + j));
      const int ii = static_cast<int>(i) + 1, jj = static_cast<int>(j) + 1;
      out.equal("L1", "Re " + entry("E[H^H V H]", ii, jj), l1[idx],
                i == j ? p.sigma2 * tr_v : 0.0);
      if (i != j) out.equal("L1", "Im " + entry("E[H^H V H]", ii, jj), l1[idx + 1], 0.0);
    }
  out.equal("L2", "E|h^H U g|^2", l2_cross, fro_u);
  out.equal("L2", "E|h^H U h|^2", l2_self, tr_u * tr_u + fro_u);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i; j < k; ++j) {
      const std::size_t idx = static_cast<std::size_t>(2 * (i * k + j));
      const int ii = static_cast<int>(i) + 1, jj = static_cast<int>(j) + 1;
      out.equal("L3", "Re " + entry("E[G^H G G^H G]", ii, jj), l3[idx],
                i == j ? tr_u * tr_u + static_cast<double>(k) * fro_u : 0.0);
      if (i != j) out.equal("L3", "Im " + entry("E[G^H G G^H G]", ii, jj), l3[idx + 1], 0.0);
    }
  const double ratio = fro_u / (tr_u * tr_u);
  out.equal("L4", "E[h^H U h / Tr U]", l4_mean, 1.0);
  out.equal("L4", "var(h^H U h / Tr U)", l4_var, ratio);
  const double cheby =
      1.0 / (1.0 + static_cast<double>(n - 1) * lam(n - 1) * lam(n - 1) / (lam(0) * lam(0)));
  out.bounded("L4", "var <= Chebyshev bound", l4_var.mean, l4_var.std_error(), cheby);
  out.equal("L5", "Re E[h^H U g / Tr U]", l5_re, 0.0);
  out.equal("L5", "Im E[h^H U g / Tr U]", l5_im, 0.0);
  out.equal("L5", "var(h^H U g / Tr U)", l5_var, ratio);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i; j < k; ++j) {
      const std::size_t idx = static_cast<std::size_t>(2 * (i * k + j));
      const int ii = static_cast<int>(i) + 1, jj = static_cast<int>(j) + 1;
      out.equal("C1", "Re " + entry("E[H^H U H / Tr U]", ii, jj), c1[idx], i == j ? 1.0 : 0.0);
      if (i != j) out.equal("C1", "Im " + entry("E[H^H U H / Tr U]", ii, jj), c1[idx + 1], 0.0);
    }

  LemmaReport r;
  r.checks = out.take();
  return r;
}

}  // namespace relaylab
