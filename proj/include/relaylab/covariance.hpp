/**
 * @file covariance.hpp
 * @brief Covariance estimation from DFT-sounded snapshots: sample covariance,
 * Ledoit-Wolf shrinkage, the bridge back to R and NMSE.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "relaylab/channel.hpp"
#include "relaylab/linalg.hpp"

namespace relaylab {

struct SoundingBeamformers {
  CMat F_c;  ///< N x N unitary DFT, rows grouped into N / K_a blocks
  CMat F_d;  ///< block-diagonal stacking of the blocks, N x N^2 / K_a
  Eigen::Index K_a = 0;
  Eigen::Index blocks = 0;
  /// Rows [t K_a, (t + 1) K_a) of F_c.
  CMat block(Eigen::Index t) const { return F_c.middleRows(t * K_a, K_a); }
};

SoundingBeamformers dft_sounding_beamformers(Eigen::Index n, Eigen::Index K_a);

struct SnapshotSet {
  std::vector<CVec> y;  ///< stacked observations, length N_Q
  CMat F_c;
  CMat F_d;
  double P_p = 1.0;
  double sigma2_n = 1.0;
};

/// y_c = sqrt(P_p) F_c g + F_d n_c with fresh g ~ CN(0, R) and n_c ~ CN(0, sigma2_n I).
/// Snapshot q draws from stream (seed, q, snapshot), in parallel.
SnapshotSet collect_snapshots(const CovarianceMatrix& r, const SoundingBeamformers& sb,
                              double P_p, double sigma2_n, int n_q, std::uint64_t seed);

/// (1 / N_Q) sum y y^H. Throws InvalidParameter on an empty set.
CMat sample_covariance(const SnapshotSet& s);

struct ShrinkageParams {
  double mu = 0.0;
  double delta2 = 0.0;
  double beta2 = 0.0;
  double alpha2 = 0.0;
};

struct ShrinkageEstimate {
  CMat R_c;
  ShrinkageParams params;
  bool full_shrinkage = false;  ///< R_c = mu I (N_Q < 2 or delta2 = 0)
};

ShrinkageEstimate ledoit_wolf(const SnapshotSet& s);

/// R = (1 / P_p) F_c^-1 (R_c - sigma2_n F_d F_d^H) F_c^-H, Hermitianised and clamped to PSD.
/// Throws SingularBeamformer when cond(F_c) >= 1e8.
CovarianceMatrix recover_r(const CMat& r_c, const CMat& F_c, const CMat& F_d, double P_p,
                           double sigma2_n);

/// 10 log10(||R - Rhat||^2 / ||R||^2), floored at -300 dB.
double nmse(const CMat& r_true, const CMat& r_hat);

struct NmsePoint {
  double sample_db = 0.0;
  double regularized_db = 0.0;
  CovarianceMatrix regularized;
};

/// One covariance-estimation run: snapshots, both estimators, recovery, NMSE.
NmsePoint estimate_covariance(const CovarianceMatrix& r_true, const SoundingBeamformers& sb,
                              double P_p, double sigma2_n, int n_q, std::uint64_t seed);

}  // namespace relaylab
