#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ffadc/converter.hpp"
#include "ffadc/metrics.hpp"

namespace ffadc {

enum class StimulusType { kSine, kRamp };
enum class LinearityMethod { kRamp, kSine };

struct StimulusSpec {
  StimulusType type = StimulusType::kSine;
  double amplitude_dbfs = -0.5;
  double frequency = 100e6;  // target; snapped to a coherent bin
  std::size_t n = 4096;
  double phase = 0.0;
};

struct ClockSpec {
  double fs = 1e9;
  double track_duty = 0.5;
  double ck1_delay = 100e-12;
  double ck2_lead = 100e-12;
};

struct MetricsRequest {
  bool spectrum = true;
  Window window = Window::kRectangular;
  bool linearity = true;
  LinearityMethod linearity_method = LinearityMethod::kRamp;
  std::size_t linearity_n = std::size_t{1} << 20;
  double linearity_overdrive = 0.02;
  double linearity_frequency = 100e6;
  bool fom = true;
  double power = 700e-6;
  std::array<double, 4> power_fractions = kDefaultPowerFractions;
};

struct Scenario {
  double full_scale = kDefaultFullScale;
  StimulusSpec stimulus;
  ClockSpec clock;
  FrontendSpec frontend;
  ComparatorSpec comparator;  // prototype; widths come from the bank builder
  double w_sum = 2.0;
  std::array<double, kFlashComparators> trims{};
  double folder_trim = 0.0;
  MetricsRequest metrics;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
};

// Flat `dotted.key = value` text; '#' starts a comment. Unknown keys, duplicate
// keys, bad units and failed validation throw ConfigError naming the key.
Scenario parse_scenario(std::string_view text);

/// Overrides one numeric field, with the value parsed in that field's unit.
void set_scenario_field(Scenario& s, std::string_view path, std::string_view value);

/// Every effective parameter as re-parseable text, keyed by config path.
std::map<std::string, std::string> effective_config(const Scenario& s);
std::string render_config(const Scenario& s);

/// Config paths that name numeric scalars (valid sweep parameters).
std::vector<std::string> numeric_fields();

ConverterConfig converter_config(const Scenario& s);

struct RunOutput {
  nlohmann::json report;
  std::map<std::string, std::string> files;  // relative name -> contents (CSV etc.)
  std::optional<DynamicMetrics> dynamic;
  std::optional<LinearityReport> linearity;
  std::optional<double> fom;
};

// Runs the full pipeline in memory. Nothing is written to disk here.
RunOutput run_scenario(const Scenario& s, bool with_csv);

struct SweepOutput {
  std::vector<std::string> values;
  std::vector<RunOutput> runs;
  std::string summary_csv;  // value,sndr,enob,max_dnl,max_inl,fom
};

// Runs one scenario per value concurrently; results keep input order.
SweepOutput sweep_scenario(const Scenario& base, std::string_view path,
                           const std::vector<std::string>& values, bool with_csv);

}  // namespace ffadc
