#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ors/baselines.hpp"
#include "ors/core.hpp"
#include "ors/optimizer.hpp"
#include "ors/stats.hpp"

namespace ors::harness {

/// Bad campaign configuration (unknown id, malformed value).
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Output directory or report file could not be written.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Environment variable that, when set, replaces CampaignConfig::output_dir.
inline constexpr const char* output_dir_env = "ORS_OUTPUT_DIR";

struct AlgorithmSpec
{
  std::string id;               // "ors", "de" or "random"
  nlohmann::json overrides = nlohmann::json::object();
};

struct CampaignConfig
{
  std::vector<std::string> problems;
  std::vector<AlgorithmSpec> algorithms;
  int runs = 20;
  int iterations = 1000;
  int population = 30;
  std::uint64_t base_seed = 0;
  std::filesystem::path output_dir = "results";
  unsigned threads = 0; // 0 = hardware concurrency

  /// Seed of run r (0-based).
  std::uint64_t seed_for_run(int run) const { return base_seed + static_cast<std::uint64_t>(run); }

  /// Throws ConfigError on unknown ids, bad overrides or bad counts.
  void validate() const;

  static CampaignConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

const std::vector<std::string>& algorithm_ids();
/// Benchmark ids followed by engineering ids.
std::vector<std::string> problem_ids();

/// ORS / DE parameters for a campaign cell with overrides applied.
OrsParams ors_params(const nlohmann::json& overrides, int population, int iterations);
DeParams de_params(const nlohmann::json& overrides, int population, int iterations);

struct RunRecord
{
  int run = 0;
  std::uint64_t seed = 0;
  /// Reported result: the raw objective of the best feasible design for
  /// engineering problems (penalized best when none was feasible), the
  /// objective value otherwise.
  double final_best = 0.0;
  bool feasible = true;
  std::vector<double> best_point;
  ConvergenceTrace trace;
  std::size_t evaluations = 0;
};

struct CellResult
{
  std::string algorithm;
  std::string problem;
  std::vector<RunRecord> runs;
  stats::Summary summary; // std is 0 for a single run
  double best = 0.0;
  double worst = 0.0;

  stats::RunSample sample() const;
};

struct PairwiseTest
{
  std::string problem;
  std::string reference; // first-listed algorithm
  std::string baseline;
  stats::WilcoxonResult result;
};

struct CampaignResult
{
  CampaignConfig config;
  std::vector<CellResult> cells; // algorithm-major, in config order
  std::vector<PairwiseTest> tests;

  const CellResult& cell(const std::string& algorithm, const std::string& problem) const;
};

/// One run of one algorithm on one problem.
RunRecord run_cell(const AlgorithmSpec& algorithm, const std::string& problem,
                   const CampaignConfig& config, int run);

/// Executes every (algorithm, problem, run) cell, computes summaries and
/// Wilcoxon tests against the first algorithm, and writes the reports.
/// Configuration errors and an unwritable output directory are reported
/// before any run starts.
CampaignResult run_campaign(const CampaignConfig& config);

/// Same as run_campaign without writing anything.
CampaignResult execute_campaign(const CampaignConfig& config);

/// Replaces config.output_dir with $ORS_OUTPUT_DIR when that is set and
/// non-empty.
void apply_environment(CampaignConfig& config);

/// Writes summary.csv, wilcoxon.csv, runs.csv, trace_<alg>_<prob>_<run>.csv
/// and campaign.json into dir. On failure every file written so far is
/// removed and IoError is thrown.
std::vector<std::filesystem::path> emit_reports(const CampaignResult& result,
                                                const std::filesystem::path& dir);

nlohmann::json to_json(const CampaignResult& result);

/// Fixed 17-significant-digit text ('.' decimal separator, "nan"/"inf" for
/// non-finite values); reads back as the same double.
std::string format_double(double value);

} // namespace ors::harness
