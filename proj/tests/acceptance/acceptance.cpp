/**
 * @file acceptance.cpp
 * @brief Acceptance runner: one PASS/FAIL line per criterion.
 *
 * Usage: relaylab_acceptance [--only <id>] [--seed <u64>]
 */
#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "relaylab/analog.hpp"
#include "relaylab/analysis.hpp"
#include "relaylab/config.hpp"
#include "relaylab/covariance.hpp"
#include "relaylab/estimation.hpp"
#include "relaylab/experiments.hpp"
#include "relaylab/lemmas.hpp"
#include "relaylab/montecarlo.hpp"
#include "relaylab/scenario.hpp"

using namespace relaylab;

namespace {

// Tolerances and sizes of each criterion.
constexpr long kMrcTrials = 20000;
constexpr double kMrcRelTol = 0.03;
constexpr double kMrcSeTol = 3.0;
constexpr double kMrcSeconds = 120.0;

constexpr long kZfTrials = 4000;
constexpr double kZfRelTol = 0.10;
constexpr double kZfSeconds = 600.0;

constexpr long kPowerTrials = 10000;
constexpr double kPowerSeTol = 3.0;
constexpr double kZfPowerRelTol = 0.05;

constexpr int kTraceConfigs = 50;
constexpr double kTraceRelTol = 1e-8;

constexpr double kBudgetTol = 1e-10;
constexpr double kLevelTol = 1e-9;
constexpr int kKktInstances = 20;
constexpr int kKktCompetitors = 200;

constexpr long kHybridTrials = 2000;
constexpr double kHybridRatio = 0.90;
constexpr double kHybridSeconds = 900.0;

constexpr long kQuantTrials = 2000;
constexpr double kQuantRatio = 0.93;

constexpr double kNmseGateDb = -10.0;
constexpr int kNmseRepeats = 20;
constexpr int kNmseGateSnapshots = 25;
constexpr double kNmseSeconds = 300.0;

constexpr long kLemmaDraws = 100000;
constexpr double kLemmaSeconds = 60.0;

constexpr long kCompletenessTrials = 4000;
constexpr double kCompletenessSeTol = 3.0;

constexpr long kDeterminismTrials = 40;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

SystemConfig table1() { return SystemConfig{}; }

Outcome mrc_term_oracle(std::uint64_t seed) {
  Outcome out{true, ""};
  std::ostringstream os;
  for (int n : {8, 32})
    for (int k : {2, 4}) {
      const auto t0 = Clock::now();
      SystemConfig c = table1();
      c.N = n;
      c.K = k;
      c.K_a = c.K_b = n / 2;
      c.scheme = Scheme::mrc;
      const Scenario s = build_scenario(c, seed);
      const McResult mc = run_scenario(s, kMrcTrials, seed);
      double worst = 0.0;
      int worst_term = 0;
      bool ok = true;
      for (int j = 0; j < 8; ++j) {
        const double cf = s.terms.t[j];
        const double est = mc.terms.t[j];
        const double se = mc.term_estimates[j].std_error;
        const double tol = std::max(kMrcRelTol * std::abs(cf), kMrcSeTol * se);
        const double score = std::abs(est - cf) / tol;
        if (score > worst) {
          worst = score;
          worst_term = j;
        }
        ok = ok && std::abs(est - cf) <= tol;
      }
      const double secs = seconds_since(t0);
      ok = ok && secs < kMrcSeconds;
      out.pass = out.pass && ok;
      os << "N=" << n << ",K=" << k << ": worst t" << worst_term << " at "
         << fmt("%.2f", worst) << "x tol, " << fmt("%.1fs", secs) << (ok ? "" : " [fail]")
         << "; ";
    }
  out.detail = os.str();
  return out;
}

Outcome zf_asymptotic_oracle(std::uint64_t seed) {
  const auto t0 = Clock::now();
  std::ostringstream os;
  std::vector<double> max_err;
  bool at128 = false;
  for (int n : {32, 64, 128}) {
    SystemConfig c = table1();
    c.N = n;
    c.K_a = c.K_b = static_cast<int>(std::lround(50.0 * n / 128.0));
    c.scheme = Scheme::zf;
    const Scenario s = build_scenario(c, seed);
    const McResult mc = run_scenario(s, kZfTrials, seed);
    double worst = 0.0;
    os << "N=" << n << " (K_a=" << c.K_a << ")";
    for (int j : {3, 4, 6}) {
      const double rel = std::abs(s.terms.t[j] - mc.terms.t[j]) / std::abs(mc.terms.t[j]);
      worst = std::max(worst, rel);
      os << " t" << j << "=" << fmt("%.3f", rel);
    }
    os << "; ";
    max_err.push_back(worst);
    if (n == 128) at128 = worst <= kZfRelTol;
  }
  const bool monotone = max_err[1] <= max_err[0] && max_err[2] <= max_err[1];
  const double secs = seconds_since(t0);
  os << "within 10% at N=128: " << (at128 ? "yes" : "no") << ", non-increasing: "
     << (monotone ? "yes" : "no") << ", " << fmt("%.1fs", secs);
  return {at128 && monotone && secs < kZfSeconds, os.str()};
}

Outcome relay_power_constraint(std::uint64_t seed) {
  SystemConfig c = table1();
  c.scheme = Scheme::mrc;
  const Scenario s = build_scenario(c, seed);
  const McResult mc = run_scenario(s, kPowerTrials, seed);
  const double dev = std::abs(mc.relay_power.mean - c.P_r);
  const bool ok = dev <= kPowerSeTol * mc.relay_power.std_error;

  SystemConfig z = table1();
  const Scenario sz = build_scenario(z, seed);
  const McResult mz = run_scenario(sz, kHybridTrials, seed);
  const double zrel = std::abs(mz.relay_power.mean - z.P_r) / z.P_r;

  std::ostringstream os;
  os << "MRC E[Tr] = " << fmt("%.4f", mc.relay_power.mean) << " vs P_r = "
     << fmt("%.4f", c.P_r) << " (" << fmt("%.2f", dev / mc.relay_power.std_error)
     << " SE); info: ZF E[Tr] = " << fmt("%.4f", mz.relay_power.mean) << " ("
     << fmt("%.1f%%", 100.0 * zrel) << " off, 5% example "
     << (zrel <= kZfPowerRelTol ? "met" : "not met") << ")";
  return {ok, os.str()};
}

Outcome trace_connection(std::uint64_t seed) {
  Rng rng(seed, 0, StreamId::generic);
  double worst = 0.0;
  for (int i = 0; i < kTraceConfigs; ++i) {
    CovarianceModelParams p;
    p.antenna_spacing = 0.3 + 0.7 * rng.uniform();
    p.mean_angle = 2.0 * 3.14159265358979323846 * rng.uniform();
    p.angle_spread = 0.05 + 0.95 * rng.uniform();
    const int n = 16 + static_cast<int>(rng.uniform() * 113);
    const int ka = 1 + static_cast<int>(rng.uniform() * n);
    PilotConfig pilot{2 + static_cast<int>(rng.uniform() * 40), 0.1 + 2.0 * rng.uniform()};
    const CovarianceMatrix r = build_covariance(p, n);
    const AnalogBeamformer f = design_uab(r, ka, pilot);
    const EstimationStats st = estimation_covariances(r, f, pilot);
    const double lhs = trace_re(st.U);
    const double rhs = std::sqrt(pilot.energy() / *st.nu) * trace_product_re(st.U, st.Ue);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
  }
  return {worst <= kTraceRelTol, "max relative deviation " + fmt("%.3e", worst) + " over " +
                                     std::to_string(kTraceConfigs) + " configs"};
}

Outcome error_monotonicity(std::uint64_t) {
  SystemConfig c = table1();
  std::ostringstream os;
  double prev = -1.0;
  bool ok = true;
  for (double sigma : {1.0, 0.5, 0.25, 0.1}) {
    c.cov_rx.angle_spread = sigma;
    const CovarianceMatrix r = build_covariance(c.cov_rx, c.N);
    const AnalogBeamformer f = design_uab(r, c.K_a, c.pilot());
    const EstimationStats st = estimation_covariances(r, f, c.pilot());
    const double ratio = trace_re(st.Ue) / r.trace();
    if (prev >= 0.0 && ratio > prev) ok = false;
    prev = ratio;
    os << "sigma=" << sigma << ": " << fmt("%.5f", ratio) << "; ";
  }
  return {ok, "Tr(Ue)/Tr(R) " + os.str()};
}

Outcome waterfill_kkt(std::uint64_t seed) {
  Rng rng(seed, 0, StreamId::competitor);
  double budget_err = 0.0, level_err = 0.0, worst_margin = 1e300;
  bool slack_ok = true;
  for (int inst = 0; inst < kKktInstances; ++inst) {
    CovarianceModelParams p;
    p.antenna_spacing = 0.3 + 0.7 * rng.uniform();
    p.mean_angle = 2.0 * 3.14159265358979323846 * rng.uniform();
    p.angle_spread = 0.2 + 0.8 * rng.uniform();
    const int n = 8 + static_cast<int>(rng.uniform() * 25);
    const int ka = 1 + static_cast<int>(rng.uniform() * n);
    const PilotConfig pilot{2 + static_cast<int>(rng.uniform() * 20), 0.2 + rng.uniform()};
    const double c = pilot.energy();
    const CovarianceMatrix r = build_covariance(p, n);
    const RVec g = inverse_eigenvalues(r);
    const WaterfillResult w = waterfill(g, ka, c);
    budget_err = std::max(budget_err, std::abs(w.x.sum() - ka));
    for (int i = 0; i < ka; ++i) {
      if (i < w.K_prime) level_err = std::max(level_err, std::abs(g(i) + c * w.x(i) - w.level));
      else slack_ok = slack_ok && g(i) >= w.level * (1.0 - 1e-12);
    }
    const AnalogBeamformer f = design_uab(r, ka, pilot);
    const double best = trace_re(estimation_covariances(r, f.F, pilot).Ue);
    for (int k = 0; k < kKktCompetitors; ++k) {
      CMat fc;
      if (k % 2 == 0) {
        fc = complex_gaussian(ka, n, rng);
      } else {
        RVec pw(ka);
        for (int i = 0; i < ka; ++i) pw(i) = rng.uniform();
        fc = pw.cwiseSqrt().asDiagonal() * r.eigenvectors().leftCols(ka).adjoint();
      }
      fc *= std::sqrt(static_cast<double>(ka) / frob2(fc));
      const double val = trace_re(estimation_covariances(r, fc, pilot).Ue);
      worst_margin = std::min(worst_margin, (val - best) / std::abs(best));
    }
  }
  const bool optimal = worst_margin >= -1e-12;
  std::ostringstream os;
  os << "budget err " << fmt("%.2e", budget_err) << ", level err " << fmt("%.2e", level_err)
     << ", slackness " << (slack_ok ? "ok" : "violated") << ", min competitor margin "
     << fmt("%.3e", worst_margin);
  return {budget_err <= kBudgetTol && level_err <= kLevelTol && slack_ok && optimal, os.str()};
}

Outcome hybrid_vs_full_digital(std::uint64_t seed) {
  const auto t0 = Clock::now();
  SystemConfig h = table1();
  h.scheme = Scheme::zf;
  SystemConfig f = h;
  f.K_a = f.K_b = f.N;
  const Scenario sh = build_scenario(h, seed);
  const Scenario sf = build_scenario(f, seed);
  const McResult mh = run_scenario(sh, kHybridTrials, seed);
  const McResult mf = run_scenario(sf, kHybridTrials, seed);
  const double ratio_a = sh.se.sum_se / sf.se.sum_se;
  const double ratio_mc = mh.se.sum_se / mf.se.sum_se;
  const double ratio_lo =
      (mh.se.sum_se - mh.sum_se.ci_half()) / (mf.se.sum_se + mf.sum_se.ci_half());
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << "analytical " << fmt("%.4f", ratio_a) << ", MC " << fmt("%.4f", ratio_mc)
     << " (CI lower " << fmt("%.4f", ratio_lo) << "), hybrid "
     << fmt("%.3f", mh.se.sum_se) << " vs full " << fmt("%.3f", mf.se.sum_se) << " b/s/Hz, "
     << fmt("%.1fs", secs);
  return {ratio_a >= kHybridRatio && ratio_lo > kHybridRatio && secs < kHybridSeconds, os.str()};
}

Outcome phase_quantization(std::uint64_t seed) {
  auto run = [&](Scheme sch, BeamformerMode mode, std::optional<int> bits) {
    SystemConfig c = table1();
    c.scheme = sch;
    c.beamformer = mode;
    c.quant_bits = bits;
    const Scenario s = build_scenario(c, seed);
    const McResult m = run_scenario(s, kQuantTrials, seed);
    return std::pair{s.se.sum_se, m.se.sum_se};
  };
  const auto cab = run(Scheme::mrc, BeamformerMode::cab, {});
  const auto q2 = run(Scheme::mrc, BeamformerMode::quantized, 2);
  const auto q1 = run(Scheme::zf, BeamformerMode::quantized, 1);
  const auto had = run(Scheme::zf, BeamformerMode::hadamard, {});
  const double ra = q2.first / cab.first, rm = q2.second / cab.second;
  const bool ok = ra >= kQuantRatio && rm >= kQuantRatio && q1.first > had.first &&
                  q1.second > had.second;
  std::ostringstream os;
  os << "MRC 2-bit/CAB analytical " << fmt("%.4f", ra) << ", MC " << fmt("%.4f", rm)
     << "; ZF 1-bit " << fmt("%.3f", q1.first) << "/" << fmt("%.3f", q1.second)
     << " vs Hadamard " << fmt("%.3f", had.first) << "/" << fmt("%.3f", had.second)
     << " (analytical/MC)";
  return {ok, os.str()};
}

Outcome covariance_estimation(std::uint64_t seed) {
  const auto t0 = Clock::now();
  SystemConfig c = table1();
  c.N = 120;
  c.cov_rx.angle_spread = 0.6;
  c.cov_rx.mean_angle = 3.14159265358979323846 / 4.0;
  const double P_p = 1.0, sigma2_n = 1.0;
  const CovarianceMatrix r = build_covariance(c.cov_rx, c.N);
  const SoundingBeamformers sb = dft_sounding_beamformers(c.N, 20);
  bool dominance = true;
  double gate = 0.0;
  std::ostringstream os;
  for (int nq : {5, 10, 25, 50, 100}) {
    std::vector<double> s, l;
    for (int rep = 0; rep < kNmseRepeats; ++rep) {
      const NmsePoint p =
          estimate_covariance(r, sb, P_p, sigma2_n, nq, derive_seed(seed, static_cast<std::uint64_t>(rep)));
      s.push_back(p.sample_db);
      l.push_back(p.regularized_db);
      dominance = dominance && p.regularized_db <= p.sample_db;
    }
    std::sort(s.begin(), s.end());
    std::sort(l.begin(), l.end());
    const double ms = 0.5 * (s[9] + s[10]), ml = 0.5 * (l[9] + l[10]);
    if (nq == kNmseGateSnapshots) gate = ml;
    os << "N_Q=" << nq << ": " << fmt("%.2f", ml) << "/" << fmt("%.2f", ms) << " dB; ";
  }
  const double secs = seconds_since(t0);
  os << "median at N_Q=25 " << (gate <= kNmseGateDb ? "meets" : "misses") << " -10 dB, "
     << "regularized <= sample " << (dominance ? "everywhere" : "violated") << ", "
     << fmt("%.1fs", secs);
  return {gate <= kNmseGateDb && dominance && secs < kNmseSeconds,
          "regularized/sample " + os.str()};
}

Outcome lemma_suite(std::uint64_t seed) {
  const auto t0 = Clock::now();
  LemmaOracleParams p;
  p.N = 16;
  p.K = 4;
  p.draws = kLemmaDraws;
  const LemmaReport rep = lemma_oracles(p, seed);
  const double secs = seconds_since(t0);
  int failed = 0;
  for (const auto& c : rep.checks) failed += c.pass ? 0 : 1;
  std::ostringstream os;
  os << rep.checks.size() << " checks, " << failed << " failed, " << fmt("%.1fs", secs);
  return {rep.all_pass() && secs < kLemmaSeconds, os.str()};
}

Outcome completeness(std::uint64_t seed) {
  std::ostringstream os;
  bool ok = true;
  for (Scheme sch : {Scheme::mrc, Scheme::zf})
    for (BeamformerMode mode : {BeamformerMode::uab, BeamformerMode::cab}) {
      SystemConfig c = table1();
      c.scheme = sch;
      c.beamformer = mode;
      const Scenario s = build_scenario(c, seed);
      const McResult m = run_scenario(s, kCompletenessTrials, seed);
      const double z = std::abs(m.completeness_gap.mean) / m.completeness_gap.std_error;
      ok = ok && z <= kCompletenessSeTol;
      os << to_string(sch) << "/" << to_string(mode) << ": gap " << fmt("%.4f", m.completeness_gap.mean)
         << " (" << fmt("%.2f", z) << " SE) of " << fmt("%.3f", m.received_power.mean) << "; ";
    }
  return {ok, os.str()};
}

std::string run_csv(const std::string& id, const SystemConfig& c, std::uint64_t seed, int workers) {
  RunOptions opt;
  opt.seed = seed;
  opt.trials = kDeterminismTrials;
  opt.workers = workers;
  std::ostringstream os;
  write_csv(os, run_experiment(id, c, opt));
  return os.str();
}

Outcome determinism(std::uint64_t seed) {
  std::ostringstream os;
  bool ok = true;
  for (const auto& e : experiments()) {
    SystemConfig c = table1();
    if (e.id == "parametric") {
      c.N = 64;
      c.K = 5;
      c.tau_p = 10;
      c.K_a = c.K_b = 10;
    }
    const std::string a = run_csv(e.id, c, seed, 1);
    const std::string b = run_csv(e.id, c, seed, 1);
    const std::string d = run_csv(e.id, c, seed, 4);
    const bool same = a == b && a == d;
    ok = ok && same;
    if (!same) os << e.id << " differs; ";
  }
  os << experiments().size() << " experiments compared at workers {1, 4}";
  return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relaylab acceptance criteria"};
  std::string only;
  std::uint64_t seed = 20240601;
  app.add_option("--only", only, "run a single criterion");
  app.add_option("--seed", seed, "master seed");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome(std::uint64_t)>>> criteria = {
      {"mrc_term_oracle", mrc_term_oracle},
      {"zf_asymptotic_oracle", zf_asymptotic_oracle},
      {"relay_power_constraint", relay_power_constraint},
      {"trace_connection_identity", trace_connection},
      {"correlation_error_monotonicity", error_monotonicity},
      {"waterfill_kkt", waterfill_kkt},
      {"hybrid_vs_full_digital", hybrid_vs_full_digital},
      {"phase_quantization", phase_quantization},
      {"covariance_estimation_nmse", covariance_estimation},
      {"lemma_oracles", lemma_suite},
      {"decomposition_completeness", completeness},
      {"determinism", determinism},
  };

  int failures = 0, ran = 0;
  for (const auto& [id, fn] : criteria) {
    if (!only.empty() && only != id) continue;
    ++ran;
    Outcome o;
    try {
      o = fn(seed);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", id.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
