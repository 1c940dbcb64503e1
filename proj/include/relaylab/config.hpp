/**
 * @file config.hpp
 * @brief System configuration with Table-1 defaults and a line-oriented
 * `key = value` file format organised in `[section]` blocks.
 */
#pragma once

#include <optional>
#include <string>

#include "relaylab/analog.hpp"
#include "relaylab/channel.hpp"
#include "relaylab/digital.hpp"
#include "relaylab/estimation.hpp"

namespace relaylab {

enum class ChannelModel { correlated, parametric };

/// How the Monte Carlo harness builds the relay transform A = F2^H W F1.
enum class RelayModel {
  target,    ///< A equals the processor target (alpha Ghat2 Ghat1^H or its ZF analogue)
  explicit_w ///< A built from the explicit W with pseudo-inverses of F F^H
};

std::string to_string(ChannelModel m);
std::string to_string(RelayModel m);

struct SystemConfig {
  // [system]
  int N = 128;
  int K = 10;
  int K_a = 50;
  int K_b = 50;
  int tau_c = 196;
  int tau_p = 20;
  // [power]
  double P_u = 1.0;
  double P_p = 1.0;
  double P_r = 3.1622776601683795;  // 10^0.5
  double sigma2_nR = 1.0;
  double sigma2_nD = 1.0;
  // [channel]
  ChannelModel channel_model = ChannelModel::correlated;
  CovarianceModelParams cov_rx{0.5, 0.4 * 3.14159265358979323846, 0.25, ArraySide::receive};
  CovarianceModelParams cov_tx{0.5, 0.4 * 3.14159265358979323846, 0.25, ArraySide::transmit};
  int paths = 10;
  double path_spacing = 0.5;
  // [processing]
  Scheme scheme = Scheme::zf;
  BeamformerMode beamformer = BeamformerMode::uab;
  std::optional<int> quant_bits;
  RelayModel relay_model = RelayModel::target;
  // [covariance]
  int sounding_rf = 32;
  double sigma2_n = 1.0;
  int repeats = 20;

  PilotConfig pilot() const { return {tau_p, P_p}; }

  /// Throws InvalidParameter naming the first violated invariant.
  void validate() const;
};

/// Parses configuration text; missing keys keep their defaults. Unknown
/// sections or keys and malformed values raise ParseError with the line number.
SystemConfig parse_config(const std::string& text);

SystemConfig load_config(const std::string& path);

/// Canonical text form: every key, fixed order, shortest round-trip numbers.
std::string dump_config(const SystemConfig& c);

/// Sets a numeric or enumerated key addressed as "section.key".
void set_config_value(SystemConfig& c, const std::string& path, const std::string& value);

/// Reads a numeric key addressed as "section.key".
double get_config_number(const SystemConfig& c, const std::string& path);

/// Parses a real number with an optional "pi" suffix ("0.4pi", "pi/4", "2*pi").
double parse_real(const std::string& s);

}  // namespace relaylab
