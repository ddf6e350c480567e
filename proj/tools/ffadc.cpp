// Command-line scenario runner for the folding-flash ADC model.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "ffadc/error.hpp"
#include "ffadc/scenario.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPipeline = 3;

int fail(const ffadc::Error& e) {
  nlohmann::json line = {{"error", std::string(ffadc::to_string(e.kind()))}, {"message", e.what()}};
  if (const auto* c = dynamic_cast<const ffadc::ConfigError*>(&e)) line["path"] = c->path();
  std::cerr << line.dump() << '\n';
  return e.kind() == ffadc::ErrorKind::kConfig ? kExitConfig : kExitPipeline;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ffadc::ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) throw ffadc::Error(ffadc::ErrorKind::kIo, "cannot write '" + path.string() + "'");
}

void write_run(const fs::path& dir, const ffadc::RunOutput& run) {
  write_file(dir / "report.json", run.report.dump(2) + "\n");
  for (const auto& [name, contents] : run.files) write_file(dir / name, contents);
}

std::vector<std::string> split_values(const std::string& text) {
  std::vector<std::string> out;
  if (text.find_first_not_of(" \t") == std::string::npos) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Folding-flash ADC behavioural simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string param;
  std::string values;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "Scenario config file")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides output.dir)");
    sub->add_option("--seed", seed, "RNG seed (overrides seed)");
    sub->add_option("--format", format, "json: report only; csv: also plot-ready CSVs")
        ->check(CLI::IsMember({"json", "csv"}));
  };
  auto* run = app.add_subcommand("run", "Run one scenario");
  add_common(run);
  auto* sweep = app.add_subcommand("sweep", "Run a scenario once per parameter value");
  add_common(sweep);
  sweep->add_option("--param", param, "Dotted config path of a numeric field")->required();
  sweep->add_option("--values", values, "Comma-separated values with units, e.g. 0,3mV,20mV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    auto scenario = ffadc::parse_scenario(read_file(config_path));
    if (seed) scenario.seed = *seed;
    const fs::path dir = out_dir ? *out_dir : scenario.output_dir;
    const bool with_csv = format == "csv";

    if (run->parsed()) {
      const auto result = ffadc::run_scenario(scenario, with_csv);
      write_run(dir, result);
      std::cout << dir.string() << "/report.json\n";
      return EXIT_SUCCESS;
    }

    const auto result = ffadc::sweep_scenario(scenario, param, split_values(values), with_csv);
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "run_%03zu", i);
      write_run(dir / name, result.runs[i]);
    }
    write_file(dir / "sweep_summary.csv", result.summary_csv);
    std::cout << dir.string() << "/sweep_summary.csv\n";
    return EXIT_SUCCESS;
  } catch (const ffadc::Error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
    return kExitPipeline;
  }
}
