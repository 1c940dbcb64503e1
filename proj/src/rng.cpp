#include "relaylab/rng.hpp"

#include <cmath>
#include <numbers>

namespace relaylab {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t stream) {
  std::uint64_t k = mix64(master_seed + kGolden);
  k = mix64(k ^ mix64(trial + 0x632BE59BD9B4E019ULL));
  k = mix64(k ^ mix64(stream + 0x8CB92BA72F3D8DD7ULL));
  key_ = k;
}

Rng::Rng(std::uint64_t master_seed, std::uint64_t trial, StreamId stream)
    : Rng(master_seed, trial, static_cast<std::uint64_t>(stream)) {}

Rng::result_type Rng::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

cplx Rng::complex_normal() {
  // |z|^2 ~ Exp(1) and a uniform phase give CN(0, 1).
  const double u1 = static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return mix64(mix64(master_seed ^ 0xD1B54A32D192ED03ULL) + mix64(index + kGolden));
}

CMat complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng, double variance) {
  CMat out(rows, cols);
  const double s = std::sqrt(variance);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = s * rng.complex_normal();
  return out;
}

}  // namespace relaylab
