#include "relaylab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include "relaylab/error.hpp"

namespace relaylab {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_plain(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty())
    throw InvalidParameter("not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InvalidParameter("not an integer: '" + s + "'");
  return v;
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct Key {
  std::function<void(SystemConfig&, const std::string&)> set;
  std::function<std::string(const SystemConfig&)> get;
  bool numeric = true;
};

Key int_key(int SystemConfig::*m) {
  return {[m](SystemConfig& c, const std::string& v) { c.*m = parse_int(v); },
          [m](const SystemConfig& c) { return std::to_string(c.*m); }};
}

Key real_key(double SystemConfig::*m) {
  return {[m](SystemConfig& c, const std::string& v) { c.*m = parse_real(v); },
          [m](const SystemConfig& c) { return format_real(c.*m); }};
}

Key cov_key(CovarianceModelParams SystemConfig::*side, double CovarianceModelParams::*field) {
  return {[=](SystemConfig& c, const std::string& v) { (c.*side).*field = parse_real(v); },
          [=](const SystemConfig& c) { return format_real((c.*side).*field); }};
}

/// Ordered (section, key) table; the order defines dump output.
const std::vector<std::pair<std::string, Key>>& key_table() {
  static const std::vector<std::pair<std::string, Key>> table = [] {
    std::vector<std::pair<std::string, Key>> t;
    t.emplace_back("system.N", int_key(&SystemConfig::N));
    t.emplace_back("system.K", int_key(&SystemConfig::K));
    t.emplace_back("system.K_a", int_key(&SystemConfig::K_a));
    t.emplace_back("system.K_b", int_key(&SystemConfig::K_b));
    t.emplace_back("system.tau_c", int_key(&SystemConfig::tau_c));
    t.emplace_back("system.tau_p", int_key(&SystemConfig::tau_p));
    t.emplace_back("power.P_u", real_key(&SystemConfig::P_u));
    t.emplace_back("power.P_p", real_key(&SystemConfig::P_p));
    t.emplace_back("power.P_r", real_key(&SystemConfig::P_r));
    t.emplace_back("power.sigma2_nR", real_key(&SystemConfig::sigma2_nR));
    t.emplace_back("power.sigma2_nD", real_key(&SystemConfig::sigma2_nD));
    t.emplace_back("channel.model",
                   Key{[](SystemConfig& c, const std::string& v) {
                         if (v == "correlated") c.channel_model = ChannelModel::correlated;
                         else if (v == "parametric") c.channel_model = ChannelModel::parametric;
                         else throw InvalidParameter("channel model must be correlated or parametric");
                       },
                       [](const SystemConfig& c) { return to_string(c.channel_model); }, false});
    t.emplace_back("channel.spacing_rx",
                   cov_key(&SystemConfig::cov_rx, &CovarianceModelParams::antenna_spacing));
    t.emplace_back("channel.theta_rx",
                   cov_key(&SystemConfig::cov_rx, &CovarianceModelParams::mean_angle));
    t.emplace_back("channel.sigma_rx",
                   cov_key(&SystemConfig::cov_rx, &CovarianceModelParams::angle_spread));
    t.emplace_back("channel.spacing_tx",
                   cov_key(&SystemConfig::cov_tx, &CovarianceModelParams::antenna_spacing));
    t.emplace_back("channel.theta_tx",
                   cov_key(&SystemConfig::cov_tx, &CovarianceModelParams::mean_angle));
    t.emplace_back("channel.sigma_tx",
                   cov_key(&SystemConfig::cov_tx, &CovarianceModelParams::angle_spread));
    t.emplace_back("channel.paths", int_key(&SystemConfig::paths));
    t.emplace_back("channel.path_spacing", real_key(&SystemConfig::path_spacing));
    t.emplace_back("processing.scheme",
                   Key{[](SystemConfig& c, const std::string& v) { c.scheme = scheme_from_string(v); },
                       [](const SystemConfig& c) { return to_string(c.scheme); }, false});
    t.emplace_back("processing.beamformer",
                   Key{[](SystemConfig& c, const std::string& v) {
                         c.beamformer = beamformer_mode_from_string(v);
                       },
                       [](const SystemConfig& c) { return to_string(c.beamformer); }, false});
    t.emplace_back("processing.quant_bits",
                   Key{[](SystemConfig& c, const std::string& v) {
                         if (v == "none") c.quant_bits.reset();
                         else c.quant_bits = parse_int(v);
                       },
                       [](const SystemConfig& c) {
                         return c.quant_bits ? std::to_string(*c.quant_bits) : std::string("none");
                       }});
    t.emplace_back("processing.relay_model",
                   Key{[](SystemConfig& c, const std::string& v) {
                         if (v == "target") c.relay_model = RelayModel::target;
                         else if (v == "explicit") c.relay_model = RelayModel::explicit_w;
                         else throw InvalidParameter("relay_model must be target or explicit");
                       },
                       [](const SystemConfig& c) { return to_string(c.relay_model); }, false});
    t.emplace_back("covariance.sounding_rf", int_key(&SystemConfig::sounding_rf));
    t.emplace_back("covariance.sigma2_n", real_key(&SystemConfig::sigma2_n));
    t.emplace_back("covariance.repeats", int_key(&SystemConfig::repeats));
    return t;
  }();
  return table;
}

const Key* find_key(const std::string& path) {
  for (const auto& [name, key] : key_table())
    if (name == path) return &key;
  return nullptr;
}

void require(bool ok, const char* invariant) {
  if (!ok) throw InvalidParameter(std::string("constraint violated: ") + invariant);
}

}  // namespace

std::string to_string(ChannelModel m) {
  return m == ChannelModel::correlated ? "correlated" : "parametric";
}

std::string to_string(RelayModel m) { return m == RelayModel::target ? "target" : "explicit"; }

double parse_real(const std::string& raw) {
  std::string s = trim(raw);
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return parse_plain(s);
  std::string head = trim(s.substr(0, pos));
  std::string tail = trim(s.substr(pos + 2));
  double v = std::numbers::pi;
  if (!head.empty()) {
    if (head.back() == '*') head = trim(head.substr(0, head.size() - 1));
    v *= head == "-" ? -1.0 : parse_plain(head);
  }
  if (!tail.empty()) {
    if (tail.front() != '/') throw InvalidParameter("malformed pi expression: '" + raw + "'");
    v /= parse_plain(trim(tail.substr(1)));
  }
  return v;
}

void SystemConfig::validate() const {
  require(N >= 1, "N ≥ 1");
  require(K >= 1, "K ≥ 1");
  require(K <= K_a, "K ≤ K_a");
  require(K <= K_b, "K ≤ K_b");
  require(K_a <= N, "K_a ≤ N");
  require(K_b <= N, "K_b ≤ N");
  require(2 * K <= tau_p, "2K ≤ tau_p");
  require(tau_p < tau_c, "tau_p < tau_c");
  require(P_u > 0.0, "P_u > 0");
  require(P_p > 0.0, "P_p > 0");
  require(P_r > 0.0, "P_r > 0");
  require(sigma2_nR >= 0.0, "sigma2_nR ≥ 0");
  require(sigma2_nD >= 0.0, "sigma2_nD ≥ 0");
  for (const auto* cov : {&cov_rx, &cov_tx}) {
    require(std::isfinite(cov->antenna_spacing) && cov->antenna_spacing > 0.0, "spacing > 0");
    require(std::isfinite(cov->angle_spread) && cov->angle_spread >= 0.0, "sigma ≥ 0");
    require(std::isfinite(cov->mean_angle) && cov->mean_angle >= 0.0 &&
                cov->mean_angle < 2.0 * std::numbers::pi,
            "theta in [0, 2pi)");
  }
  require(paths >= 1, "L ≥ 1");
  require(path_spacing > 0.0, "path_spacing > 0");
  if (beamformer == BeamformerMode::quantized)
    require(quant_bits.has_value() && *quant_bits >= 1, "quant_bits ≥ 1 for quantized beamformer");
  require(sounding_rf >= 1, "sounding_rf ≥ 1");
  require(sigma2_n >= 0.0, "sigma2_n ≥ 0");
  require(repeats >= 1, "repeats ≥ 1");
}

SystemConfig parse_config(const std::string& text) {
  SystemConfig c;
  static const std::vector<std::string> sections = {"system", "power", "channel", "processing",
                                                    "covariance"};
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      bool known = false;
      for (const auto& s : sections) known = known || s == section;
      if (!known) throw ParseError(lineno, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw ParseError(lineno, "key '" + key + "' outside any section");
    const Key* k = find_key(section + "." + key);
    if (!k) throw ParseError(lineno, "unknown key '" + key + "' in [" + section + "]");
    if (value.empty()) throw ParseError(lineno, "missing value for '" + key + "'");
    try {
      k->set(c, value);
    } catch (const InvalidParameter& e) {
      throw ParseError(lineno, e.what());
    }
  }
  c.validate();
  return c;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const SystemConfig& c) {
  std::ostringstream os;
  std::string section;
  for (const auto& [name, key] : key_table()) {
    const auto dot = name.find('.');
    const std::string sec = name.substr(0, dot);
    if (sec != section) {
      if (!section.empty()) os << "\n";
      os << "[" << sec << "]\n";
      section = sec;
    }
    os << name.substr(dot + 1) << " = " << key.get(c) << "\n";
  }
  return os.str();
}

void set_config_value(SystemConfig& c, const std::string& path, const std::string& value) {
  const Key* k = find_key(path);
  if (!k) throw InvalidParameter("unknown config key '" + path + "'");
  k->set(c, value);
}

double get_config_number(const SystemConfig& c, const std::string& path) {
  const Key* k = find_key(path);
  if (!k) throw InvalidParameter("unknown config key '" + path + "'");
  if (!k->numeric) throw InvalidParameter("config key '" + path + "' is not numeric");
  return parse_real(k->get(c));
}

}  // namespace relaylab
