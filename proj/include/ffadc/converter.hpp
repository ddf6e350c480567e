#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ffadc/comparator.hpp"
#include "ffadc/digital.hpp"
#include "ffadc/frontend.hpp"
#include "ffadc/signal.hpp"
#include "ffadc/timing.hpp"

namespace ffadc {

struct ConverterConfig {
  double full_scale = kDefaultFullScale;
  ClockSchedule schedule = build_schedule(1e9, 0.5, 100e-12, 100e-12);
  FrontendSpec frontend;
  ComparatorSpec prototype;  // device fields shared by the bank and the folder
  double w_sum = 2.0;        // um, per comparator reset pair
  std::array<double, kFlashComparators> trims{};
  double folder_trim = 0.0;

  // No kickback, no settling error, no parasitic, no noise, no trims.
  static ConverterConfig ideal(double fs = 1e9);
};

struct ConversionResult {
  std::vector<AdcCode> codes;
  std::size_t residual_bubbles = 0;  // conversions decoded by ones-count fallback

  std::vector<int> values() const;
};

// T/H -> folding comparator + chopper -> charge share -> kickback -> 7-comparator
// flash -> bubble correction -> code assembly. One instance holds immutable
// specs; convert() is reentrant and deterministic for a given seed.
class FoldingFlashAdc {
 public:
  explicit FoldingFlashAdc(const ConverterConfig& config);
  // Uses a caller-sized bank instead of the built-in reference ladder.
  FoldingFlashAdc(const ConverterConfig& config, std::vector<ComparatorSpec> bank);

  ConversionResult convert(const Waveform& input, std::uint64_t seed) const;

  const ConverterConfig& config() const { return config_; }
  const std::vector<ComparatorSpec>& bank() const { return bank_; }
  const ComparatorSpec& folder() const { return folder_; }

 private:
  // Balanced (zero built-in offset) single-clock comparator driving the chopper.
  static ComparatorSpec make_folder(const ConverterConfig& config);

  ConverterConfig config_;
  std::vector<ComparatorSpec> bank_;
  ComparatorSpec folder_;
};

}  // namespace ffadc
