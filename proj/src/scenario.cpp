#include "relaylab/scenario.hpp"

#include "relaylab/error.hpp"

namespace relaylab {

CovarianceMatrix link_covariance(const SystemConfig& c, ArraySide side, std::uint64_t seed,
                                 std::vector<double>* angles) {
  if (c.channel_model == ChannelModel::correlated)
    return build_covariance(side == ArraySide::receive ? c.cov_rx : c.cov_tx, c.N);
  Rng rng(seed, 0, side == ArraySide::receive ? StreamId::angles_rx : StreamId::angles_tx);
  std::vector<double> phi = draw_path_angles(c.paths, rng);
  if (angles) *angles = phi;
  return parametric_covariance(phi, c.N, c.path_spacing);
}

AnalogBeamformer make_beamformer(const SystemConfig& c, const CovarianceMatrix& r,
                                 Eigen::Index rf_chains) {
  const int ka = static_cast<int>(rf_chains);
  switch (c.beamformer) {
    case BeamformerMode::uab:
      return design_uab(r, ka, c.pilot());
    case BeamformerMode::cab:
      return constrain_cab(design_uab(r, ka, c.pilot()));
    case BeamformerMode::quantized:
      if (!c.quant_bits) throw InvalidParameter("quantized beamformer needs quant_bits");
      return quantize_phases(constrain_cab(design_uab(r, ka, c.pilot())), *c.quant_bits);
    case BeamformerMode::hadamard:
      return hadamard_beamformer(c.N, rf_chains);
  }
  throw InvalidParameter("unknown beamformer mode");
}

Scenario build_scenario(const SystemConfig& c, CovarianceMatrix r1, CovarianceMatrix r2,
                        const CovarianceMatrix* design1, const CovarianceMatrix* design2) {
  c.validate();
  if (r1.dim() != c.N || r2.dim() != c.N) throw ShapeError("covariance size differs from N");
  AnalogBeamformer f1 = make_beamformer(c, design1 ? *design1 : r1, c.K_a);
  AnalogBeamformer f2 = make_beamformer(c, design2 ? *design2 : r2, c.K_b);
  EstimationStats s1 = estimation_covariances(r1, f1, c.pilot());
  EstimationStats s2 = estimation_covariances(r2, f2, c.pilot());
  const double alpha = alpha_for(c.scheme, s1, s2, c.K, c.P_u, c.P_r, c.sigma2_nR);
  SinrTerms terms = sinr_terms(c.scheme, s1, s2, c.K, alpha, c.sigma2_nR);
  SpectralEfficiencyResult se =
      spectral_efficiency(terms, c.P_u, c.sigma2_nD, c.K, c.tau_c, c.tau_p);
  return Scenario{c,
                  std::move(r1),
                  std::move(r2),
                  std::move(f1),
                  std::move(f2),
                  std::move(s1),
                  std::move(s2),
                  alpha,
                  terms,
                  std::move(se),
                  {},
                  {}};
}

Scenario build_scenario(const SystemConfig& c, std::uint64_t seed) {
  c.validate();
  std::vector<double> ang_rx, ang_tx;
  CovarianceMatrix r1 = link_covariance(c, ArraySide::receive, seed, &ang_rx);
  CovarianceMatrix r2 = link_covariance(c, ArraySide::transmit, seed, &ang_tx);
  Scenario s = build_scenario(c, std::move(r1), std::move(r2));
  s.path_angles_rx = std::move(ang_rx);
  s.path_angles_tx = std::move(ang_tx);
  return s;
}

}  // namespace relaylab
