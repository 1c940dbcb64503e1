/**
 * @file test_analog.cpp
 * @brief Water-filling, UAB design, CAB projection, phase quantization and Hadamard.
 */
#include <doctest.h>

#include <cmath>

#include "relaylab/analog.hpp"
#include "relaylab/channel.hpp"
#include "relaylab/error.hpp"

using namespace relaylab;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Exhaustive scan: the largest K' whose level keeps every filled bin positive.
RVec brute_force_water(const RVec& g, int ka, double c) {
  RVec best = RVec::Zero(ka);
  for (int kp = 1; kp <= ka; ++kp) {
    const double level = (c * ka + g.head(kp).sum()) / kp;
    bool feasible = true;
    for (int i = 0; i < kp; ++i) feasible = feasible && level - g(i) > 0.0;
    if (!feasible) continue;
    best.setZero();
    for (int i = 0; i < kp; ++i) best(i) = (level - g(i)) / c;
  }
  return best;
}

}  // namespace

TEST_CASE("uniform bins get uniform water") {
  const RVec g = RVec::Ones(6);
  const WaterfillResult w = waterfill(g, 4, 20.0);
  CHECK(w.level == doctest::Approx(21.0));
  CHECK(w.K_prime == 4);
  for (int i = 0; i < 4; ++i) CHECK(w.x(i) == doctest::Approx(1.0));
}

TEST_CASE("waterfill matches the exhaustive oracle") {
  RVec g(4);
  g << 0.1, 1.0, 10.0, 100.0;
  const WaterfillResult w = waterfill(g, 2, 20.0);
  const RVec ref = brute_force_water(g, 2, 20.0);
  CHECK((w.x - ref).cwiseAbs().maxCoeff() < 1e-12);

  Rng rng(8, 0, StreamId::generic);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform() * 20);
    RVec gs(n);
    for (int i = 0; i < n; ++i) gs(i) = std::exp(8.0 * rng.uniform() - 4.0);
    std::sort(gs.data(), gs.data() + n);
    const int ka = 1 + static_cast<int>(rng.uniform() * n);
    const double c = 0.1 + 30.0 * rng.uniform();
    const WaterfillResult wr = waterfill(gs, ka, c);
    CHECK((wr.x - brute_force_water(gs, ka, c)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(wr.x.sum() == doctest::Approx(ka).epsilon(1e-12));
  }
}

TEST_CASE("single RF chain takes all the water") {
  RVec g(3);
  g << 0.5, 2.0, 3.0;
  const WaterfillResult w = waterfill(g, 1, 5.0);
  CHECK(w.x(0) == doctest::Approx(1.0));
  CHECK(w.K_prime == 1);
}

TEST_CASE("waterfill input validation") {
  const RVec g = RVec::Ones(3);
  CHECK_THROWS_AS(waterfill(g, 4, 1.0), InvalidParameter);
  CHECK_THROWS_AS(waterfill(g, 0, 1.0), InvalidParameter);
}

TEST_CASE("design_uab on the identity selects orthonormal rows") {
  const CovarianceMatrix r(CMat::Identity(8, 8));
  const AnalogBeamformer f = design_uab(r, 3, PilotConfig{});
  CHECK(rel_frob_error(f.F * f.F.adjoint(), CMat::Identity(3, 3)) < 1e-12);
  for (Eigen::Index i = 0; i < 3; ++i)
    CHECK(f.F.row(i).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("design_uab meets the RF budget at the default geometry") {
  const CovarianceMatrix r = build_covariance(CovarianceModelParams{}, 128);
  const AnalogBeamformer f = design_uab(r, 50, PilotConfig{20, 1.0});
  CHECK(std::abs(frob2(f.F) - 50.0) < 1e-9);
  REQUIRE(f.waterfill.has_value());
  CHECK(f.waterfill->K_prime <= 50);
  CHECK(f.waterfill->nu > 0.0);
}

TEST_CASE("constrain_cab snaps the modulus and keeps phases") {
  AnalogBeamformer uab;
  uab.F = CMat::Constant(2, 16, cplx(0.1, 0.0));
  uab.F(0, 3) = std::polar(0.3, kPi / 4.0);
  const AnalogBeamformer cab = constrain_cab(uab);
  CHECK(cab.mode == BeamformerMode::cab);
  CHECK(std::abs(cab.F(0, 3) - std::polar(0.25, kPi / 4.0)) < 1e-15);
  for (Eigen::Index j = 0; j < 16; ++j)
    if (j != 3) CHECK(std::abs(cab.F(1, j) - cplx(0.25, 0.0)) < 1e-15);
}

TEST_CASE("quantize_phases") {
  AnalogBeamformer cab;
  cab.mode = BeamformerMode::cab;
  cab.F = CMat::Constant(1, 4, 0.5);
  cab.F(0, 1) = std::polar(0.5, kPi / 3.0);
  const AnalogBeamformer q1 = quantize_phases(cab, 1);
  CHECK(std::abs(q1.F(0, 1) - cplx(0.5, 0.0)) < 1e-15);

  const CovarianceMatrix r = build_covariance(CovarianceModelParams{}, 32);
  const AnalogBeamformer c = constrain_cab(design_uab(r, 8, PilotConfig{}));
  for (int b : {1, 2, 3, 4}) {
    const AnalogBeamformer q = quantize_phases(c, b);
    CHECK(q.bits == b);
    CHECK((quantize_phases(q, b).F - q.F).norm() == 0.0);
    CHECK((q.F.cwiseAbs().array() - 1.0 / std::sqrt(32.0)).abs().maxCoeff() < 1e-15);
  }
  CHECK_THROWS_AS(quantize_phases(c, 0), InvalidParameter);
}

TEST_CASE("hadamard_beamformer") {
  const AnalogBeamformer h = hadamard_beamformer(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(h.F(0, 0) - s) < 1e-15);
  CHECK(std::abs(h.F(0, 1) - s) < 1e-15);
  CHECK(std::abs(h.F(1, 0) - s) < 1e-15);
  CHECK(std::abs(h.F(1, 1) + s) < 1e-15);
  const AnalogBeamformer h16 = hadamard_beamformer(16, 5);
  CHECK(rel_frob_error(h16.F * h16.F.adjoint(), CMat::Identity(5, 5)) < 1e-14);
  CHECK_THROWS_AS(hadamard_beamformer(6, 2), InvalidParameter);
}

TEST_CASE("mode strings round trip") {
  for (BeamformerMode m :
       {BeamformerMode::uab, BeamformerMode::cab, BeamformerMode::quantized,
        BeamformerMode::hadamard})
    CHECK(beamformer_mode_from_string(to_string(m)) == m);
}
