/**
 * @file digital.hpp
 * @brief MRC/MRT and ZF baseband processors and their amplification factors.
 */
#pragma once

#include <string>

#include "relaylab/estimation.hpp"
#include "relaylab/linalg.hpp"

namespace relaylab {

enum class Scheme { mrc, zf };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct DigitalProcessor {
  CMat W;  ///< K_b x K_a
  Scheme scheme = Scheme::mrc;
  double alpha = 0.0;
};

/// Long-term amplification factor for MRC/MRT (returns alpha, not alpha^2).
double alpha_mrc(const EstimationStats& s1, const EstimationStats& s2, int K, double P_u,
                 double P_r, double sigma2_nR);

/// Long-term amplification factor for ZF (returns alpha, not alpha^2).
double alpha_zf(const EstimationStats& s1, const EstimationStats& s2, int K, double P_u,
                double P_r, double sigma2_nR);

double alpha_for(Scheme scheme, const EstimationStats& s1, const EstimationStats& s2, int K,
                 double P_u, double P_r, double sigma2_nR);

/// W = alpha (F2 F2^H)^+ F2 Ghat2 Ghat1^H F1^H (F1 F1^H)^+
/// Throws SingularBeamformer when rank(F_i) < K.
DigitalProcessor mrc_processor(const CMat& ghat1, const CMat& ghat2, const CMat& f1,
                               const CMat& f2, double alpha);

/// W = alpha (F2 F2^H)^+ F2 Ghat2 (Ghat2^H Ghat2)^-1 (Ghat1^H Ghat1)^-1 Ghat1^H F1^H (F1 F1^H)^+
/// Throws IllConditionedEstimate when a Gram matrix has condition number above 1e12.
DigitalProcessor zf_processor(const CMat& ghat1, const CMat& ghat2, const CMat& f1,
                              const CMat& f2, double alpha);

/// (Ghat2^H Ghat2)^-1 (Ghat1^H Ghat1)^-1 with the conditioning check of zf_processor.
CMat zf_core(const CMat& ghat1, const CMat& ghat2);

/// (F F^H)^+ F, throwing SingularBeamformer when rank(F) < K.
CMat analog_left_inverse(const CMat& f, Eigen::Index K);

}  // namespace relaylab
