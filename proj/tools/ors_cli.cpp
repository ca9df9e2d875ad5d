// Command-line front end for the benchmark harness.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ors/benchmarks.hpp"
#include "ors/engineering.hpp"
#include "ors/harness.hpp"
#include "ors/stats.hpp"

namespace {

using namespace ors;

/// One value per row; the last comma-separated field of each row is used
/// and a non-numeric first row is skipped as a header.
std::vector<double> read_column(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  std::vector<double> values;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos)
      continue;
    const std::string field = line.substr(line.rfind(',') + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(field, &used);
      if (field.find_first_not_of(" \t", used) != std::string::npos)
        throw std::invalid_argument(field);
      values.push_back(v);
    } catch (const std::exception&) {
      if (row == 1)
        continue;
      throw std::runtime_error(path + ":" + std::to_string(row) + ": not a number: '" + field +
                               "'");
    }
  }
  return values;
}

int run_command(const std::string& config_path)
{
  std::ifstream in(config_path);
  if (!in)
    throw harness::IoError("cannot open configuration '" + config_path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw harness::ConfigError(config_path + ": " + e.what());
  }
  auto config = harness::CampaignConfig::from_json(j);
  harness::apply_environment(config);
  const auto result = harness::run_campaign(config);

  std::cout << "algorithm,problem,mean,std,best,worst\n";
  for (const auto& c : result.cells) {
    std::cout << c.algorithm << ',' << c.problem << ',' << harness::format_double(c.summary.mean)
              << ',' << harness::format_double(c.summary.std) << ','
              << harness::format_double(c.best) << ',' << harness::format_double(c.worst) << '\n';
  }
  std::cout << "reports written to " << config.output_dir.string() << '\n';
  return 0;
}

int list_problems()
{
  for (const auto& e : bench::suite()) {
    std::cout << e.id << '\t' << e.spec.name << "\td=" << e.spec.space.dimension() << "\t["
              << e.spec.space.lower.front() << ", " << e.spec.space.upper.front()
              << "]\tfmin=" << e.fmin << '\t' << bench::to_string(e.modality) << '\n';
  }
  for (const auto& id : eng::problem_ids()) {
    const auto& p = eng::lookup(id);
    std::cout << p.id << '\t' << p.name << "\td=" << p.space.dimension() << '\t'
              << p.constraints.size() << " constraints\n";
  }
  return 0;
}

int list_algorithms()
{
  std::cout << "ors\tolive ridley survival\n"
               "de\tdifferential evolution rand/1/bin\n"
               "random\tuniform random search\n";
  return 0;
}

int wilcoxon_command(const std::string& a_path, const std::string& b_path)
{
  const auto a = read_column(a_path);
  const auto b = read_column(b_path);
  const auto r = stats::wilcoxon_signed_rank(a, b);
  std::cout << "W,p_value,n_effective,method\n"
            << harness::format_double(r.statistic_W) << ',' << harness::format_double(r.p_value)
            << ',' << r.n_effective << ',' << stats::to_string(r.method) << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Olive ridley survival optimizer and benchmark harness"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a campaign described by a JSON configuration");
  run->add_option("--config", config_path, "Campaign configuration file")->required();

  auto* problems = app.add_subcommand("list-problems", "List problem ids");
  auto* algorithms = app.add_subcommand("list-algorithms", "List algorithm ids");

  std::string a_path, b_path;
  auto* wilcoxon = app.add_subcommand("wilcoxon", "Paired signed-rank test on two value columns");
  wilcoxon->add_option("--a", a_path, "First sample (CSV)")->required();
  wilcoxon->add_option("--b", b_path, "Second sample (CSV)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run)
      return run_command(config_path);
    if (*problems)
      return list_problems();
    if (*algorithms)
      return list_algorithms();
    if (*wilcoxon)
      return wilcoxon_command(a_path, b_path);
  } catch (const harness::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const harness::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
