#include "relaylab/analog.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "relaylab/error.hpp"

namespace relaylab {
namespace {

constexpr double kUsableEigenvalue = 1e-12;

}  // namespace

std::string to_string(BeamformerMode mode) {
  switch (mode) {
    case BeamformerMode::uab: return "uab";
    case BeamformerMode::cab: return "cab";
    case BeamformerMode::quantized: return "quantized";
    case BeamformerMode::hadamard: return "hadamard";
  }
  return "?";
}

BeamformerMode beamformer_mode_from_string(const std::string& s) {
  if (s == "uab") return BeamformerMode::uab;
  if (s == "cab") return BeamformerMode::cab;
  if (s == "quantized") return BeamformerMode::quantized;
  if (s == "hadamard") return BeamformerMode::hadamard;
  throw InvalidParameter("unknown beamformer '" + s + "'");
}

RVec inverse_eigenvalues(const CovarianceMatrix& r) {
  const RVec& lam = r.eigenvalues();
  RVec g(lam.size());
  const double floor = lam.size() ? kUsableEigenvalue * lam(0) : 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    g(i) = (lam(i) > floor && lam(i) > 0.0) ? 1.0 / lam(i)
                                             : std::numeric_limits<double>::infinity();
  return g;
}

WaterfillResult waterfill(const RVec& gammas, int K_a, double c) {
  const auto n = gammas.size();
  if (K_a <= 0) throw InvalidParameter("K_a must be positive");
  if (K_a > n) throw InvalidParameter("K_a <= N required");
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidParameter("tau_p P_p must be positive");

  Eigen::Index usable = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(gammas(i) > 0.0)) throw InvalidParameter("gammas must be positive");
    if (i > 0 && gammas(i) < gammas(i - 1)) throw InvalidParameter("gammas must be ascending");
    if (std::isfinite(gammas(i))) ++usable;
  }
  if (usable == 0) throw DegenerateConfig("no usable eigenmode to fill");

  Eigen::Index kp = std::min<Eigen::Index>(K_a, usable);
  double level = 0.0;
  for (;; --kp) {
    level = (c * K_a + gammas.head(kp).sum()) / static_cast<double>(kp);
    if (gammas(kp - 1) <= level || kp == 1) break;
  }

  WaterfillResult w;
  w.x = RVec::Zero(K_a);
  for (Eigen::Index i = 0; i < kp; ++i) w.x(i) = (level - gammas(i)) / c;
  w.level = level;
  w.nu = c / (level * level);
  w.K_prime = static_cast<int>(kp);
  return w;
}

AnalogBeamformer design_uab(const CovarianceMatrix& r, int K_a, const PilotConfig& pilot) {
  WaterfillResult w = waterfill(inverse_eigenvalues(r), K_a, pilot.energy());
  AnalogBeamformer f;
  f.F = w.x.cwiseSqrt().asDiagonal() * r.eigenvectors().leftCols(K_a).adjoint();
  f.mode = BeamformerMode::uab;
  f.waterfill = std::move(w);
  return f;
}

AnalogBeamformer constrain_cab(const AnalogBeamformer& uab) {
  if (uab.mode != BeamformerMode::uab) throw InvalidParameter("CAB projection expects a UAB");
  const double mod = 1.0 / std::sqrt(static_cast<double>(uab.antennas()));
  AnalogBeamformer out;
  out.F = uab.F.unaryExpr([mod](const cplx& v) {
    return v == cplx(0.0) ? cplx(mod, 0.0) : std::polar(mod, std::arg(v));
  });
  out.mode = BeamformerMode::cab;
  return out;
}

AnalogBeamformer quantize_phases(const AnalogBeamformer& f, int bits) {
  if (bits < 1) throw InvalidParameter("quantizer needs b >= 1");
  if (bits > 30) throw InvalidParameter("quantizer supports b <= 30");
  if (f.mode != BeamformerMode::cab && f.mode != BeamformerMode::quantized)
    throw InvalidParameter("phase quantization expects a CAB");
  const double mod = 1.0 / std::sqrt(static_cast<double>(f.antennas()));
  const long levels = 1L << bits;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(levels);
  AnalogBeamformer out;
  out.F = f.F.unaryExpr([&](const cplx& v) {
    double phase = std::arg(v);
    if (phase < 0.0) phase += 2.0 * std::numbers::pi;
    long m = static_cast<long>(std::ceil(phase / step - 0.5)) % levels;
    if (m < 0) m += levels;
    return std::polar(mod, step * static_cast<double>(m));
  });
  out.mode = BeamformerMode::quantized;
  out.bits = bits;
  return out;
}

AnalogBeamformer hadamard_beamformer(Eigen::Index n, Eigen::Index K_a) {
  if (n < 1 || (n & (n - 1)) != 0) throw InvalidParameter("Hadamard beamformer needs N a power of 2");
  if (K_a < 1 || K_a > n) throw InvalidParameter("K_a <= N required");
  Eigen::MatrixXd h = Eigen::MatrixXd::Ones(1, 1);
  while (h.rows() < n) {
    const Eigen::Index m = h.rows();
    Eigen::MatrixXd next(2 * m, 2 * m);
    next << h, h, h, -h;
    h = std::move(next);
  }
  AnalogBeamformer out;
  out.F = (h.topRows(K_a) / std::sqrt(static_cast<double>(n))).cast<cplx>();
  out.mode = BeamformerMode::hadamard;
  return out;
}

EstimationStats estimation_covariances(const CovarianceMatrix& r, const AnalogBeamformer& f,
                                       const PilotConfig& pilot) {
  EstimationStats s = estimation_covariances(r, f.F, pilot);
  if (f.waterfill) {
    s.nu = f.waterfill->nu;
    s.K_prime = f.waterfill->K_prime;
  }
  return s;
}

}  // namespace relaylab
