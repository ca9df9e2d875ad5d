#include "ors/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "ors/benchmarks.hpp"
#include "ors/engineering.hpp"

namespace ors::harness {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> ors_keys{
    "omega1",          "omega2",           "omega3",         "omega4",        "omega5",
    "k",               "k1",               "k2",             "temp_tol",      "temp_max",
    "temp_sample_low", "temp_sample_high", "day_length",     "t1",            "t2",
    "t3",              "hours_per_iteration", "survival_cutoff", "cutoff",    "retention_low",
    "retention_high",  "emergence"};
const std::set<std::string> de_keys{"F", "CR"};

double number(const json& overrides, const std::string& key)
{
  const json& v = overrides.at(key);
  if (!v.is_number())
    throw ConfigError("parameter '" + key + "' must be a number");
  return v.get<double>();
}

void read(const json& overrides, const std::string& key, double& target)
{
  if (overrides.contains(key))
    target = number(overrides, key);
}

void check_keys(const std::string& algorithm, const json& overrides,
                const std::set<std::string>& allowed)
{
  if (!overrides.is_object())
    throw ConfigError("parameters of '" + algorithm + "' must be an object");
  for (const auto& [key, value] : overrides.items()) {
    if (!allowed.count(key))
      throw ConfigError("unknown parameter '" + key + "' for algorithm '" + algorithm + "'");
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback)
{
  if (!j.contains(key))
    return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

json number_json(double v)
{
  return std::isfinite(v) ? json(v) : json(nullptr);
}

json vector_json(const std::vector<double>& values)
{
  json out = json::array();
  for (double v : values)
    out.push_back(number_json(v));
  return out;
}

} // namespace

std::string format_double(double value)
{
  if (std::isnan(value))
    return "nan";
  if (std::isinf(value))
    return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto [end, ec] =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
  return std::string(buffer, end);
}

const std::vector<std::string>& algorithm_ids()
{
  static const std::vector<std::string> ids{"ors", "de", "random"};
  return ids;
}

std::vector<std::string> problem_ids()
{
  std::vector<std::string> ids;
  for (const auto& e : bench::suite())
    ids.push_back(e.id);
  for (const auto& id : eng::problem_ids())
    ids.push_back(id);
  return ids;
}

OrsParams ors_params(const json& overrides, int population, int iterations)
{
  check_keys("ors", overrides, ors_keys);
  OrsParams p;
  p.population_size = static_cast<std::size_t>(population);
  p.max_iterations = static_cast<std::size_t>(iterations);
  read(overrides, "omega1", p.omega1);
  read(overrides, "omega2", p.omega2);
  read(overrides, "omega3", p.omega3);
  read(overrides, "omega4", p.omega4);
  read(overrides, "omega5", p.omega5);
  read(overrides, "k", p.k);
  if (overrides.contains("k1"))
    p.k1 = number(overrides, "k1");
  if (overrides.contains("k2"))
    p.k2 = number(overrides, "k2");
  read(overrides, "temp_tol", p.temp_tol);
  read(overrides, "temp_max", p.temp_max);
  read(overrides, "temp_sample_low", p.temp_sample_low);
  read(overrides, "temp_sample_high", p.temp_sample_high);
  read(overrides, "day_length", p.clock.day_length);
  read(overrides, "t1", p.clock.t1);
  read(overrides, "t2", p.clock.t2);
  read(overrides, "t3", p.clock.t3);
  read(overrides, "hours_per_iteration", p.clock.hours_per_iteration);
  read(overrides, "survival_cutoff", p.survival_cutoff);
  read(overrides, "retention_low", p.retention_low);
  read(overrides, "retention_high", p.retention_high);
  if (overrides.contains("cutoff")) {
    const auto mode = overrides.at("cutoff").get<std::string>();
    if (mode == "strict")
      p.cutoff_comparison = CutoffComparison::Strict;
    else if (mode == "inclusive")
      p.cutoff_comparison = CutoffComparison::Inclusive;
    else
      throw ConfigError("cutoff must be 'strict' or 'inclusive', got '" + mode + "'");
  }
  if (overrides.contains("emergence")) {
    const auto mode = overrides.at("emergence").get<std::string>();
    if (mode == "tercile")
      p.emergence_assignment = EmergenceAssignment::Tercile;
    else if (mode == "random")
      p.emergence_assignment = EmergenceAssignment::Random;
    else
      throw ConfigError("emergence must be 'tercile' or 'random', got '" + mode + "'");
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

DeParams de_params(const json& overrides, int population, int iterations)
{
  check_keys("de", overrides, de_keys);
  DeParams p;
  p.population_size = static_cast<std::size_t>(population);
  p.max_iterations = static_cast<std::size_t>(iterations);
  read(overrides, "F", p.F);
  read(overrides, "CR", p.CR);
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

void CampaignConfig::validate() const
{
  if (problems.empty())
    throw ConfigError("campaign lists no problems");
  if (algorithms.empty())
    throw ConfigError("campaign lists no algorithms");
  if (runs < 1)
    throw ConfigError("runs must be at least 1");
  if (iterations < 1)
    throw ConfigError("iterations must be at least 1");
  if (population < 2)
    throw ConfigError("population must be at least 2");
  std::set<std::string> seen;
  for (const auto& id : problems) {
    if (!bench::has(id) && !eng::has(id))
      throw ConfigError("unknown problem id '" + id + "'");
    if (!seen.insert(id).second)
      throw ConfigError("problem '" + id + "' listed twice");
  }
  seen.clear();
  for (const auto& a : algorithms) {
    if (a.id == "ors")
      ors_params(a.overrides, population, iterations);
    else if (a.id == "de")
      de_params(a.overrides, population, iterations);
    else if (a.id == "random")
      check_keys("random", a.overrides, {});
    else
      throw ConfigError("unknown algorithm id '" + a.id + "'");
    if (!seen.insert(a.id).second)
      throw ConfigError("algorithm '" + a.id + "' listed twice");
  }
}

CampaignConfig CampaignConfig::from_json(const json& j)
{
  if (!j.is_object())
    throw ConfigError("campaign configuration must be a JSON object");
  static const std::set<std::string> known{"problems", "algorithms", "runs",      "iterations",
                                           "population", "base_seed", "output_dir", "threads"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key))
      throw ConfigError("unknown configuration field '" + key + "'");
  }

  CampaignConfig c;
  c.problems = get_or<std::vector<std::string>>(j, "problems", {});
  if (j.contains("algorithms")) {
    const json& list = j.at("algorithms");
    if (!list.is_array())
      throw ConfigError("'algorithms' must be an array");
    for (const json& entry : list) {
      AlgorithmSpec spec;
      if (entry.is_string()) {
        spec.id = entry.get<std::string>();
      } else if (entry.is_object() && entry.contains("id") && entry.at("id").is_string()) {
        spec.id = entry.at("id").get<std::string>();
        if (entry.contains("params"))
          spec.overrides = entry.at("params");
        for (const auto& [key, value] : entry.items()) {
          if (key != "id" && key != "params")
            throw ConfigError("unknown field '" + key + "' in algorithm entry");
        }
      } else {
        throw ConfigError("algorithm entries must be an id string or {\"id\", \"params\"}");
      }
      c.algorithms.push_back(std::move(spec));
    }
  }
  c.runs = get_or<int>(j, "runs", c.runs);
  c.iterations = get_or<int>(j, "iterations", c.iterations);
  c.population = get_or<int>(j, "population", c.population);
  c.base_seed = get_or<std::uint64_t>(j, "base_seed", c.base_seed);
  c.output_dir = get_or<std::string>(j, "output_dir", c.output_dir.string());
  c.threads = get_or<unsigned>(j, "threads", c.threads);
  c.validate();
  return c;
}

json CampaignConfig::to_json() const
{
  json algs = json::array();
  for (const auto& a : algorithms)
    algs.push_back({{"id", a.id}, {"params", a.overrides}});
  return {{"problems", problems},     {"algorithms", algs},
          {"runs", runs},             {"iterations", iterations},
          {"population", population}, {"base_seed", base_seed},
          {"output_dir", output_dir.string()}};
}

void apply_environment(CampaignConfig& config)
{
  if (const char* dir = std::getenv(output_dir_env); dir && *dir)
    config.output_dir = dir;
}

stats::RunSample CellResult::sample() const
{
  stats::RunSample s{algorithm, problem, {}};
  for (const auto& r : runs)
    s.final_bests.push_back(r.final_best);
  return s;
}

const CellResult& CampaignResult::cell(const std::string& algorithm,
                                       const std::string& problem) const
{
  for (const auto& c : cells) {
    if (c.algorithm == algorithm && c.problem == problem)
      return c;
  }
  throw std::out_of_range("no cell for " + algorithm + " on " + problem);
}

RunRecord run_cell(const AlgorithmSpec& algorithm, const std::string& problem,
                   const CampaignConfig& config, int run)
{
  RunRecord record;
  record.run = run;
  record.seed = config.seed_for_run(run);
  RandomSource rng(record.seed);

  std::shared_ptr<eng::FeasibleRecord> feasible;
  ObjectiveSpec objective;
  if (bench::has(problem)) {
    objective = bench::lookup(problem).spec;
  } else {
    feasible = std::make_shared<eng::FeasibleRecord>();
    objective = eng::tracked_objective(eng::lookup(problem), feasible);
  }
  auto evaluations = std::make_shared<std::size_t>(0);
  objective = counting(std::move(objective), evaluations);

  double best_value = 0.0;
  if (algorithm.id == "ors") {
    const OrsParams params = ors_params(algorithm.overrides, config.population, config.iterations);
    OrsResult r = optimize(objective, params, rng);
    best_value = r.best.objective_value;
    record.best_point = r.best.velocity;
    record.trace = std::move(r.trace);
  } else {
    SearchResult r;
    if (algorithm.id == "de")
      r = de_optimize(objective, de_params(algorithm.overrides, config.population, config.iterations),
                      rng);
    else if (algorithm.id == "random")
      r = random_search(objective, static_cast<std::size_t>(config.population),
                        static_cast<std::size_t>(config.iterations), rng);
    else
      throw ConfigError("unknown algorithm id '" + algorithm.id + "'");
    best_value = r.best_value;
    record.best_point = r.best_point;
    record.trace = std::move(r.trace);
  }
  record.trace.run_id = run;
  record.evaluations = *evaluations;
  record.final_best = best_value;
  record.feasible = true;
  if (feasible) {
    if (feasible->best_feasible_value) {
      record.final_best = *feasible->best_feasible_value;
      record.best_point = feasible->best_feasible_point;
    } else {
      record.feasible = false;
    }
  }
  return record;
}

CampaignResult execute_campaign(const CampaignConfig& config)
{
  config.validate();

  CampaignResult result;
  result.config = config;
  for (const auto& a : config.algorithms) {
    for (const auto& p : config.problems) {
      CellResult cell;
      cell.algorithm = a.id;
      cell.problem = p;
      cell.runs.resize(static_cast<std::size_t>(config.runs));
      result.cells.push_back(std::move(cell));
    }
  }

  // Tasks are (cell, run) pairs; each writes only its own slot.
  const std::size_t runs = static_cast<std::size_t>(config.runs);
  const std::size_t total = result.cells.size() * runs;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      CellResult& cell = result.cells[task / runs];
      const int run = static_cast<int>(task % runs);
      const auto& algorithm = config.algorithms[task / runs / config.problems.size()];
      try {
        cell.runs[static_cast<std::size_t>(run)] = run_cell(algorithm, cell.problem, config, run);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
        next = total;
      }
    }
  };
  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(worker);
  }
  if (failure)
    std::rethrow_exception(failure);

  for (auto& cell : result.cells) {
    const auto values = cell.sample().final_bests;
    if (values.size() >= 2) {
      cell.summary = stats::summarize(values);
    } else {
      cell.summary.mean = values.front();
      cell.summary.std = 0.0;
    }
    cell.best = *std::min_element(values.begin(), values.end());
    cell.worst = *std::max_element(values.begin(), values.end());
  }

  const std::string& reference = config.algorithms.front().id;
  for (const auto& problem : config.problems) {
    const auto ref = result.cell(reference, problem).sample().final_bests;
    for (std::size_t a = 1; a < config.algorithms.size(); ++a) {
      const auto& other = config.algorithms[a].id;
      const auto values = result.cell(other, problem).sample().final_bests;
      result.tests.push_back({problem, reference, other, stats::wilcoxon_signed_rank(ref, values)});
    }
  }
  return result;
}

namespace {

void ensure_writable(const fs::path& dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const fs::path probe = dir / ".ors_write_probe";
  {
    std::ofstream out(probe);
    if (!(out << "probe"))
      throw IoError("output directory '" + dir.string() + "' is not writable");
  }
  fs::remove(probe, ec);
}

class ReportWriter
{
public:
  explicit ReportWriter(fs::path dir) : dir_(std::move(dir)) {}

  ~ReportWriter()
  {
    if (!committed_) {
      std::error_code ec;
      for (const auto& p : written_)
        fs::remove(p, ec);
    }
  }

  void write(const std::string& name, const std::string& content)
  {
    const fs::path path = dir_ / name;
    written_.push_back(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out)
      throw IoError("failed to write '" + path.string() + "'");
  }

  std::vector<fs::path> commit()
  {
    committed_ = true;
    return written_;
  }

private:
  fs::path dir_;
  std::vector<fs::path> written_;
  bool committed_ = false;
};

} // namespace

json to_json(const CampaignResult& result)
{
  json cells = json::array();
  for (const auto& c : result.cells) {
    json runs = json::array();
    for (const auto& r : c.runs) {
      runs.push_back({{"run", r.run},
                      {"seed", r.seed},
                      {"final_best", number_json(r.final_best)},
                      {"feasible", r.feasible},
                      {"evaluations", r.evaluations},
                      {"best_point", vector_json(r.best_point)},
                      {"initial_best", number_json(r.trace.initial_best)},
                      {"trace", vector_json(r.trace.best_per_iteration)}});
    }
    cells.push_back({{"algorithm", c.algorithm},
                     {"problem", c.problem},
                     {"mean", number_json(c.summary.mean)},
                     {"std", number_json(c.summary.std)},
                     {"best", number_json(c.best)},
                     {"worst", number_json(c.worst)},
                     {"runs", runs}});
  }
  json tests = json::array();
  for (const auto& t : result.tests) {
    tests.push_back({{"problem", t.problem},
                     {"reference", t.reference},
                     {"baseline", t.baseline},
                     {"W", t.result.statistic_W},
                     {"w_plus", t.result.w_plus},
                     {"w_minus", t.result.w_minus},
                     {"p_value", t.result.p_value},
                     {"n_effective", t.result.n_effective},
                     {"method", stats::to_string(t.result.method)}});
  }
  return {{"config", result.config.to_json()}, {"cells", cells}, {"wilcoxon", tests}};
}

std::vector<fs::path> emit_reports(const CampaignResult& result, const fs::path& dir)
{
  ensure_writable(dir);
  ReportWriter writer(dir);

  std::ostringstream summary;
  summary << "algorithm,problem,mean,std,best,worst\n";
  for (const auto& c : result.cells) {
    summary << c.algorithm << ',' << c.problem << ',' << format_double(c.summary.mean) << ','
            << format_double(c.summary.std) << ',' << format_double(c.best) << ','
            << format_double(c.worst) << '\n';
  }
  writer.write("summary.csv", summary.str());

  std::ostringstream wilcoxon;
  wilcoxon << "problem,baseline,W,p_value,n_effective,method\n";
  for (const auto& t : result.tests) {
    wilcoxon << t.problem << ',' << t.baseline << ',' << format_double(t.result.statistic_W) << ','
             << format_double(t.result.p_value) << ',' << t.result.n_effective << ','
             << stats::to_string(t.result.method) << '\n';
  }
  writer.write("wilcoxon.csv", wilcoxon.str());

  std::ostringstream runs;
  runs << "algorithm,problem,run,seed,final_best,feasible,evaluations\n";
  for (const auto& c : result.cells) {
    for (const auto& r : c.runs) {
      runs << c.algorithm << ',' << c.problem << ',' << r.run << ',' << r.seed << ','
           << format_double(r.final_best) << ',' << (r.feasible ? "true" : "false") << ','
           << r.evaluations << '\n';
    }
  }
  writer.write("runs.csv", runs.str());

  for (const auto& c : result.cells) {
    for (const auto& r : c.runs) {
      std::ostringstream trace;
      trace << "iteration,best_so_far\n";
      for (std::size_t t = 0; t < r.trace.best_per_iteration.size(); ++t)
        trace << t + 1 << ',' << format_double(r.trace.best_per_iteration[t]) << '\n';
      writer.write("trace_" + c.algorithm + "_" + c.problem + "_" + std::to_string(r.run) + ".csv",
                   trace.str());
    }
  }

  writer.write("campaign.json", to_json(result).dump(2) + "\n");
  return writer.commit();
}

CampaignResult run_campaign(const CampaignConfig& config)
{
  config.validate();
  ensure_writable(config.output_dir);
  CampaignResult result = execute_campaign(config);
  emit_reports(result, config.output_dir);
  return result;
}

} // namespace ors::harness
