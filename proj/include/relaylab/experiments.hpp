/**
 * @file experiments.hpp
 * @brief Figure sweeps written as CSV rows with a fixed schema.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "relaylab/config.hpp"

namespace relaylab {

inline constexpr const char* kCsvHeader =
    "experiment,sweep_key,sweep_value,scheme,beamformer,quant_bits,se_analytical,se_mc,"
    "se_mc_ci_half,relay_power_mc,k_prime,nu";

struct ExperimentInfo {
  std::string id;
  std::string figure;
  std::string sweep_key;
  std::vector<double> default_values;
  std::string description;
};

const std::vector<ExperimentInfo>& experiments();
const ExperimentInfo& find_experiment(const std::string& id);

struct CsvRow {
  std::string experiment;
  std::string sweep_key;
  std::optional<double> sweep_value;
  std::string scheme;
  std::string beamformer;
  std::optional<int> quant_bits;
  std::optional<double> se_analytical;
  std::optional<double> se_mc;
  std::optional<double> se_mc_ci_half;
  std::optional<double> relay_power_mc;
  std::optional<int> k_prime;
  std::optional<double> nu;
};

struct RunOptions {
  std::uint64_t seed = 0;
  long trials = 2000;
  int workers = 0;              ///< 0 keeps the OpenMP default
  std::vector<double> values;   ///< overrides the default sweep values
};

/// Runs one experiment; rows come out in sweep order.
std::vector<CsvRow> run_experiment(const std::string& id, const SystemConfig& config,
                                   const RunOptions& options);

/// %.12g, "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

void write_csv(std::ostream& os, const std::vector<CsvRow>& rows);

/// Writes to path; throws std::runtime_error if the file cannot be written.
void write_csv_file(const std::string& path, const std::vector<CsvRow>& rows);

}  // namespace relaylab
