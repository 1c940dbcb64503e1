#include "relaylab/covariance.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <numbers>

#include "relaylab/error.hpp"
#include "relaylab/rng.hpp"

namespace relaylab {
namespace {

constexpr double kMaxSoundingCondition = 1e8;
constexpr double kNmseFloorDb = -300.0;

}  // namespace

SoundingBeamformers dft_sounding_beamformers(Eigen::Index n, Eigen::Index K_a) {
  if (n < 1 || K_a < 1 || K_a > n) throw InvalidParameter("1 <= K_a <= N required");
  if (n % K_a != 0) throw InvalidParameter("N / K_a must be an integer");
  SoundingBeamformers sb;
  sb.K_a = K_a;
  sb.blocks = n / K_a;
  sb.F_c.resize(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k)
      sb.F_c(m, k) = std::polar(scale, -2.0 * std::numbers::pi *
                                           static_cast<double>((m * k) % n) /
                                           static_cast<double>(n));
  sb.F_d = CMat::Zero(n, sb.blocks * n);
  for (Eigen::Index t = 0; t < sb.blocks; ++t)
    sb.F_d.block(t * K_a, t * n, K_a, n) = sb.block(t);
  return sb;
}

SnapshotSet collect_snapshots(const CovarianceMatrix& r, const SoundingBeamformers& sb,
                              double P_p, double sigma2_n, int n_q, std::uint64_t seed) {
  if (n_q < 0) throw InvalidParameter("N_Q must be non-negative");
  if (sb.F_c.cols() != r.dim()) throw ShapeError("sounding beamformers do not match R");
  const Eigen::Index n = r.dim();
  const CMat root = r.sqrt();
  const double amp = std::sqrt(P_p);
  SnapshotSet s;
  s.y.resize(static_cast<std::size_t>(n_q));
  s.F_c = sb.F_c;
  s.F_d = sb.F_d;
  s.P_p = P_p;
  s.sigma2_n = sigma2_n;
#pragma omp parallel for schedule(static)
  for (int q = 0; q < n_q; ++q) {
    Rng rng(seed, static_cast<std::uint64_t>(q), StreamId::snapshot);
    const CVec g = root * complex_gaussian(n, 1, rng).col(0);
    CVec y = amp * (sb.F_c * g);
    for (Eigen::Index t = 0; t < sb.blocks; ++t) {
      const CVec noise = complex_gaussian(n, 1, rng, sigma2_n).col(0);
      y.segment(t * sb.K_a, sb.K_a) += sb.block(t) * noise;
    }
    s.y[static_cast<std::size_t>(q)] = std::move(y);
  }
  return s;
}

CMat sample_covariance(const SnapshotSet& s) {
  if (s.y.empty()) throw InvalidParameter("sample covariance needs at least one snapshot");
  const Eigen::Index n = s.y.front().size();
  CMat y(n, static_cast<Eigen::Index>(s.y.size()));
  for (std::size_t i = 0; i < s.y.size(); ++i) y.col(static_cast<Eigen::Index>(i)) = s.y[i];
  return hermitian_part(y * y.adjoint() / static_cast<double>(s.y.size()));
}

ShrinkageEstimate ledoit_wolf(const SnapshotSet& s) {
  const CMat sample = sample_covariance(s);
  const Eigen::Index n = sample.rows();
  const double nd = static_cast<double>(n);
  const double nq = static_cast<double>(s.y.size());

  ShrinkageEstimate out;
  ShrinkageParams& p = out.params;
  p.mu = trace_re(sample) / nd;
  CMat centered = sample;
  centered.diagonal().array() -= p.mu;
  p.delta2 = frob2(centered) / nd;

  if (s.y.size() < 2 || !(p.delta2 > 0.0)) {
    p.beta2 = p.delta2;
    p.alpha2 = 0.0;
    out.full_shrinkage = true;
    out.R_c = p.mu * CMat::Identity(n, n);
    return out;
  }

  // ||y y^H - S||^2 = ||y||^4 - 2 y^H S y + ||S||^2
  const double s2 = frob2(sample);
  double acc = 0.0;
  for (const CVec& y : s.y) {
    const double yy = y.squaredNorm();
    acc += yy * yy - 2.0 * y.dot(sample * y).real() + s2;
  }
  p.beta2 = std::min(p.delta2, std::max(0.0, acc / (nd * nq * nq)));
  p.alpha2 = std::max(0.0, p.delta2 - p.beta2);
  const double shrink = p.beta2 / p.delta2;
  out.R_c = (1.0 - shrink) * sample;
  out.R_c.diagonal().array() += shrink * p.mu;
  return out;
}

CovarianceMatrix recover_r(const CMat& r_c, const CMat& F_c, const CMat& F_d, double P_p,
                           double sigma2_n) {
  if (F_c.rows() != F_c.cols() || r_c.rows() != F_c.rows() || F_d.rows() != F_c.rows())
    throw ShapeError("recover_r dimensions disagree");
  if (!(P_p > 0.0)) throw InvalidParameter("P_p > 0 required");
  Eigen::BDCSVD<CMat> svd(F_c);
  const RVec& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) >= kMaxSoundingCondition)
    throw SingularBeamformer("sounding matrix F_c is singular");
  Eigen::PartialPivLU<CMat> lu(F_c);
  const CMat inner = r_c - sigma2_n * (F_d * F_d.adjoint());
  const CMat left = lu.solve(inner);
  const CMat x = lu.solve(left.adjoint()).adjoint() / P_p;
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(x));
  const RVec w = es.eigenvalues().cwiseMax(0.0);
  return CovarianceMatrix(
      hermitian_part(es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint()));
}

double nmse(const CMat& r_true, const CMat& r_hat) {
  const double den = frob2(r_true);
  const double num = frob2(r_true - r_hat);
  if (den == 0.0) return num == 0.0 ? kNmseFloorDb : std::numeric_limits<double>::infinity();
  if (num == 0.0) return kNmseFloorDb;
  return std::max(kNmseFloorDb, 10.0 * std::log10(num / den));
}

NmsePoint estimate_covariance(const CovarianceMatrix& r_true, const SoundingBeamformers& sb,
                              double P_p, double sigma2_n, int n_q, std::uint64_t seed) {
  const SnapshotSet s = collect_snapshots(r_true, sb, P_p, sigma2_n, n_q, seed);
  const CovarianceMatrix raw = recover_r(sample_covariance(s), s.F_c, s.F_d, P_p, sigma2_n);
  CovarianceMatrix reg = recover_r(ledoit_wolf(s).R_c, s.F_c, s.F_d, P_p, sigma2_n);
  NmsePoint p{nmse(r_true.entries(), raw.entries()), nmse(r_true.entries(), reg.entries()),
              std::move(reg)};
  return p;
}

}  // namespace relaylab
