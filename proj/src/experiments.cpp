#include "relaylab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>

#include "relaylab/covariance.hpp"
#include "relaylab/error.hpp"
#include "relaylab/montecarlo.hpp"
#include "relaylab/scenario.hpp"

namespace relaylab {
namespace {

constexpr double kFixedAntennaRatio = 3.0;

struct Variant {
  BeamformerMode mode;
  std::optional<int> bits;
};

std::string variant_name(const Variant& v) { return to_string(v.mode); }

CsvRow point_row(const std::string& id, const std::string& key, std::optional<double> value,
                 SystemConfig c, Scheme scheme, const Variant& v, const RunOptions& opt,
                 const std::function<Scenario(const SystemConfig&)>& build) {
  c.scheme = scheme;
  c.beamformer = v.mode;
  c.quant_bits = v.bits;
  const Scenario s = build(c);

  CsvRow row;
  row.experiment = id;
  row.sweep_key = key;
  row.sweep_value = value;
  row.scheme = to_string(scheme);
  row.beamformer = variant_name(v);
  row.quant_bits = v.bits;
  row.se_analytical = s.se.sum_se;
  if (s.F1.waterfill) {
    row.k_prime = s.F1.waterfill->K_prime;
    row.nu = s.F1.waterfill->nu;
  }
  try {
    const McResult mc = run_scenario(s, opt.trials, opt.seed, Kernel::parallel, opt.workers);
    row.se_mc = mc.se.sum_se;
    if (mc.sum_se.se_defined) row.se_mc_ci_half = mc.sum_se.ci_half();
    row.relay_power_mc = mc.relay_power.mean;
  } catch (const IllConditionedEstimate&) {
  } catch (const SingularBeamformer&) {
  }
  return row;
}

std::function<Scenario(const SystemConfig&)> default_builder(std::uint64_t seed) {
  return [seed](const SystemConfig& c) { return build_scenario(c, seed); };
}

std::vector<double> values_or_default(const ExperimentInfo& info, const RunOptions& opt) {
  return opt.values.empty() ? info.default_values : opt.values;
}

int as_int(double v, const char* what) {
  const double r = std::round(v);
  if (std::abs(r - v) > 1e-9) throw InvalidParameter(std::string(what) + " must be an integer");
  return static_cast<int>(r);
}

const std::vector<Scheme> kSchemes = {Scheme::mrc, Scheme::zf};

std::vector<CsvRow> run_se_vs_rf(const ExperimentInfo& info, const SystemConfig& base,
                                 const RunOptions& opt) {
  std::vector<CsvRow> rows;
  const std::vector<Variant> variants = {{BeamformerMode::uab, {}}, {BeamformerMode::cab, {}}};
  for (double v : values_or_default(info, opt)) {
    SystemConfig c = base;
    c.K_a = c.K_b = as_int(v, "K_a");
    for (Scheme sch : kSchemes)
      for (const Variant& var : variants)
        rows.push_back(point_row(info.id, info.sweep_key, v, c, sch, var, opt,
                                 default_builder(opt.seed)));
  }
  return rows;
}

std::vector<CsvRow> run_se_vs_sigma(const ExperimentInfo& info, const SystemConfig& base,
                                    const RunOptions& opt) {
  std::vector<CsvRow> rows;
  for (double v : values_or_default(info, opt)) {
    SystemConfig c = base;
    c.cov_rx.angle_spread = c.cov_tx.angle_spread = v;
    for (Scheme sch : kSchemes)
      rows.push_back(point_row(info.id, info.sweep_key, v, c, sch, {base.beamformer, base.quant_bits},
                               opt, default_builder(opt.seed)));
  }
  return rows;
}

std::vector<CsvRow> run_quantization(const ExperimentInfo& info, const SystemConfig& base,
                                     const RunOptions& opt) {
  std::vector<CsvRow> rows;
  const bool pow2 = base.N > 0 && (base.N & (base.N - 1)) == 0;
  for (Scheme sch : kSchemes) {
    rows.push_back(point_row(info.id, info.sweep_key, std::nullopt, base, sch,
                             {BeamformerMode::uab, {}}, opt, default_builder(opt.seed)));
    rows.push_back(point_row(info.id, info.sweep_key, std::nullopt, base, sch,
                             {BeamformerMode::cab, {}}, opt, default_builder(opt.seed)));
    if (pow2)
      rows.push_back(point_row(info.id, info.sweep_key, std::nullopt, base, sch,
                               {BeamformerMode::hadamard, {}}, opt, default_builder(opt.seed)));
    for (double v : values_or_default(info, opt)) {
      const int bits = as_int(v, "quant_bits");
      rows.push_back(point_row(info.id, info.sweep_key, v, base, sch,
                               {BeamformerMode::quantized, bits}, opt,
                               default_builder(opt.seed)));
    }
  }
  return rows;
}

std::vector<CsvRow> run_se_vs_n(const ExperimentInfo& info, const SystemConfig& base,
                                const RunOptions& opt, bool fixed_ratio) {
  std::vector<CsvRow> rows;
  for (double v : values_or_default(info, opt)) {
    SystemConfig c = base;
    c.N = as_int(v, "N");
    if (fixed_ratio) c.K_a = c.K_b = static_cast<int>(std::lround(c.N / kFixedAntennaRatio));
    for (Scheme sch : kSchemes)
      rows.push_back(point_row(info.id, info.sweep_key, v, c, sch, {base.beamformer, base.quant_bits},
                               opt, default_builder(opt.seed)));
  }
  return rows;
}

std::vector<CsvRow> run_parametric(const ExperimentInfo& info, const SystemConfig& base,
                                   const RunOptions& opt) {
  std::vector<CsvRow> rows;
  SystemConfig pc = base;
  pc.channel_model = ChannelModel::parametric;
  for (double v : values_or_default(info, opt)) {
    SystemConfig c = pc;
    c.K_a = c.K_b = as_int(v, "K_a");
    for (Scheme sch : kSchemes)
      rows.push_back(point_row(info.id, info.sweep_key, v, c, sch, {base.beamformer, base.quant_bits},
                               opt, default_builder(opt.seed)));
  }
  return rows;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<CsvRow> run_nmse_sweep(const ExperimentInfo& info, const SystemConfig& c,
                                   const RunOptions& opt) {
  const CovarianceMatrix r = link_covariance(c, ArraySide::receive, opt.seed);
  const SoundingBeamformers sb = dft_sounding_beamformers(c.N, c.sounding_rf);
  std::vector<CsvRow> rows;
  for (double v : values_or_default(info, opt)) {
    const int nq = as_int(v, "N_Q");
    std::vector<double> sample, reg;
    for (int rep = 0; rep < c.repeats; ++rep) {
      const NmsePoint p = estimate_covariance(r, sb, c.P_p, c.sigma2_n, nq,
                                              derive_seed(opt.seed, static_cast<std::uint64_t>(rep)));
      sample.push_back(p.sample_db);
      reg.push_back(p.regularized_db);
    }
    for (const auto& [name, vals] : {std::pair{"sample", &sample}, std::pair{"ledoit_wolf", &reg}}) {
      CsvRow row;
      row.experiment = info.id;
      row.sweep_key = info.sweep_key;
      row.sweep_value = v;
      row.beamformer = name;
      row.se_mc = median(*vals);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<CsvRow> run_robustness(const ExperimentInfo& info, const SystemConfig& c,
                                   const RunOptions& opt) {
  const CovarianceMatrix r1 = link_covariance(c, ArraySide::receive, opt.seed);
  const CovarianceMatrix r2 = link_covariance(c, ArraySide::transmit, opt.seed);
  const SoundingBeamformers sb = dft_sounding_beamformers(c.N, c.sounding_rf);
  std::vector<CsvRow> rows;
  for (double v : values_or_default(info, opt)) {
    const int nq = as_int(v, "N_Q");
    const NmsePoint e1 = estimate_covariance(r1, sb, c.P_p, c.sigma2_n, nq, derive_seed(opt.seed, 0));
    const NmsePoint e2 = estimate_covariance(r2, sb, c.P_p, c.sigma2_n, nq, derive_seed(opt.seed, 1));
    auto builder = [&](const SystemConfig& cc) {
      return build_scenario(cc, r1, r2, &e1.regularized, &e2.regularized);
    };
    for (Scheme sch : kSchemes)
      rows.push_back(point_row(info.id, info.sweep_key, e1.regularized_db, c, sch,
                               {c.beamformer, c.quant_bits}, opt, builder));
  }
  return rows;
}

std::vector<CsvRow> run_eig_cdf(const ExperimentInfo& info, const SystemConfig& base,
                                const RunOptions& opt) {
  std::vector<CsvRow> rows;
  for (double v : values_or_default(info, opt)) {
    SystemConfig c = base;
    c.cov_rx.angle_spread = v;
    const CovarianceMatrix r = link_covariance(c, ArraySide::receive, opt.seed);
    const RVec& lam = r.eigenvalues();
    const Eigen::Index n = lam.size();
    for (Eigen::Index i = 0; i < n; ++i) {
      CsvRow row;
      row.experiment = info.id;
      row.sweep_key = info.sweep_key;
      row.sweep_value = v;
      row.se_analytical = lam(n - 1 - i);
      row.se_mc = static_cast<double>(i + 1) / static_cast<double>(n);
      rows.push_back(row);
    }
  }
  return rows;
}

void put(std::ostream& os, const std::optional<double>& v) {
  if (v) os << format_number(*v);
}

void put(std::ostream& os, const std::optional<int>& v) {
  if (v) os << *v;
}

}  // namespace

const std::vector<ExperimentInfo>& experiments() {
  static const std::vector<ExperimentInfo> list = {
      {"se_vs_rf", "Fig. 4", "K_a", {10, 20, 30, 40, 50, 60, 80, 100, 128},
       "sum SE vs RF chains (K_a = K_b), MRC and ZF, UAB and CAB"},
      {"se_vs_sigma", "Fig. 5", "sigma", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.8, 1.0},
       "sum SE vs angle spread, MRC and ZF"},
      {"quantization", "Fig. 7", "quant_bits", {1, 2, 3, 4},
       "sum SE with b-bit phase shifters against CAB, UAB and Hadamard"},
      {"se_vs_N_fixed_ratio", "Fig. 8", "N", {30, 60, 90, 120, 150, 180, 210, 240},
       "sum SE vs N with N / K_a = 3"},
      {"se_vs_N_fixed_rf", "Fig. 9 (left)", "N", {64, 96, 128, 160, 192, 224, 256},
       "sum SE vs N with K_a = K_b fixed"},
      {"nmse_sweep", "Fig. 3", "N_Q", {5, 10, 25, 50, 100},
       "median NMSE (dB) of sample and Ledoit-Wolf covariance estimates vs snapshots"},
      {"covariance_nmse_robustness", "Fig. 9 (NMSE)", "nmse_db", {5, 10, 25, 50, 100},
       "sum SE with beamformers designed on estimated covariances; sweep values are N_Q"},
      {"eig_cdf", "Fig. 6", "sigma", {0.1, 0.25, 0.5, 1.0},
       "empirical CDF of covariance eigenvalues"},
      {"parametric", "Fig. 10", "K_a", {5, 8, 10, 12, 16, 20, 32, 64},
       "sum SE vs RF chains under the L-path parametric channel"},
  };
  return list;
}

const ExperimentInfo& find_experiment(const std::string& id) {
  for (const auto& e : experiments())
    if (e.id == id) return e;
  throw InvalidParameter("unknown experiment '" + id + "'");
}

std::vector<CsvRow> run_experiment(const std::string& id, const SystemConfig& config,
                                   const RunOptions& opt) {
  const ExperimentInfo& info = find_experiment(id);
  config.validate();
  if (opt.trials < 1) throw InvalidParameter("trials >= 1 required");
  if (id == "se_vs_rf") return run_se_vs_rf(info, config, opt);
  if (id == "se_vs_sigma") return run_se_vs_sigma(info, config, opt);
  if (id == "quantization") return run_quantization(info, config, opt);
  if (id == "se_vs_N_fixed_ratio") return run_se_vs_n(info, config, opt, true);
  if (id == "se_vs_N_fixed_rf") return run_se_vs_n(info, config, opt, false);
  if (id == "nmse_sweep") return run_nmse_sweep(info, config, opt);
  if (id == "covariance_nmse_robustness") return run_robustness(info, config, opt);
  if (id == "eig_cdf") return run_eig_cdf(info, config, opt);
  return run_parametric(info, config, opt);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<CsvRow>& rows) {
  os << kCsvHeader << "\n";
  for (const CsvRow& r : rows) {
    os << r.experiment << "," << r.sweep_key << ",";
    put(os, r.sweep_value);
    os << "," << r.scheme << "," << r.beamformer << ",";
    put(os, r.quant_bits);
    os << ",";
    put(os, r.se_analytical);
    os << ",";
    put(os, r.se_mc);
    os << ",";
    put(os, r.se_mc_ci_half);
    os << ",";
    put(os, r.relay_power_mc);
    os << ",";
    put(os, r.k_prime);
    os << ",";
    put(os, r.nu);
    os << "\n";
  }
}

void write_csv_file(const std::string& path, const std::vector<CsvRow>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  write_csv(f, rows);
  f.flush();
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace relaylab
