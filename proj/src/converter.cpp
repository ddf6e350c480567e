#include "ffadc/converter.hpp"

#include "ffadc/error.hpp"
#include "ffadc/rng.hpp"

namespace ffadc {
namespace {

// Stream ids for derive_seed: 0..6 flash comparators, then these.
constexpr std::uint64_t kFolderStream = 7;
constexpr std::uint64_t kKickbackStream = 8;

}  // namespace

ConverterConfig ConverterConfig::ideal(double fs) {
  ConverterConfig c;
  c.schedule = build_schedule(fs, 0.5, 0.1 / fs, 0.1 / fs);
  c.frontend.c_par = 0.0;
  c.frontend.settling_tau = 0.0;
  c.frontend.kickback_amp = 0.0;
  return c;
}

std::vector<int> ConversionResult::values() const {
  std::vector<int> v;
  v.reserve(codes.size());
  for (const auto& c : codes) v.push_back(c.value);
  return v;
}

FoldingFlashAdc::FoldingFlashAdc(const ConverterConfig& config) : config_(config) {
  config_.frontend.validate();
  config_.prototype.validate();
  // The flash sees the charge-shared node, so its references live on that scale.
  const double flash_scale = config_.full_scale * config_.frontend.share_gain();
  bank_ = build_flash_bank(flash_scale, config_.prototype, config_.w_sum, config_.trims);
  folder_ = make_folder(config_);
}

FoldingFlashAdc::FoldingFlashAdc(const ConverterConfig& config, std::vector<ComparatorSpec> bank)
    : config_(config), bank_(std::move(bank)) {
  config_.frontend.validate();
  if (bank_.size() != kFlashComparators)
    throw Error(ErrorKind::kInvalidRequest, "flash bank needs exactly 7 comparators");
  for (const auto& c : bank_) c.validate();
  folder_ = make_folder(config_);
}

ComparatorSpec FoldingFlashAdc::make_folder(const ConverterConfig& config) {
  ComparatorSpec folder = config.prototype;
  folder.w_r1 = config.w_sum / 2.0;
  folder.w_r2 = config.w_sum / 2.0;
  folder.trim = config.folder_trim;
  folder.clock_mode = ClockMode::kSingleClock;
  return folder;
}

ConversionResult FoldingFlashAdc::convert(const Waveform& input, std::uint64_t seed) const {
  const auto held = track_and_hold(input, config_.schedule, config_.frontend);

  ConversionResult result;
  result.codes.reserve(held.size());
  for (std::size_t k = 0; k < held.size(); ++k) {
    const int sign_bit = compare(held[k], folder_, derive_seed(seed, k, kFolderStream));
    const double shared = charge_share(chop(held[k], sign_bit), config_.frontend);
    const auto kick = inject_kickback(shared, kFlashComparators, config_.frontend,
                                      derive_seed(seed, k, kKickbackStream));

    ThermometerWord raw;
    for (std::size_t i = 0; i < bank_.size(); ++i) {
      raw.bits[i] = static_cast<std::uint8_t>(compare(kick.compared, bank_[i], derive_seed(seed, k, i)));
    }
    const auto corrected = bubble_correct(raw);
    int count = 0;
    if (corrected.is_clean()) {
      count = therm_to_count(corrected);
    } else {
      // Higher-order bubble: decode like a ones counter and keep going.
      count = corrected.ones();
      ++result.residual_bubbles;
    }
    result.codes.push_back(assemble_code(sign_bit, count));
  }
  return result;
}

}  // namespace ffadc
