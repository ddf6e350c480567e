#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace ffadc {

// Flash comparator outputs, index 0 = lowest trip point. A clean word has its
// ones as a prefix.
struct ThermometerWord {
  std::array<std::uint8_t, 7> bits{};

  static ThermometerWord from_string(std::string_view text);
  static ThermometerWord from_mask(unsigned mask);  // bit i of mask -> bits[i]
  std::string to_string() const;
  unsigned mask() const;
  bool is_clean() const;
  int ones() const;

  friend bool operator==(const ThermometerWord&, const ThermometerWord&) = default;
};

using GrayBits = std::array<std::uint8_t, 4>;  // MSB first

struct AdcCode {
  int value = 0;
  GrayBits gray{};

  std::string gray_string() const;
  friend bool operator==(const AdcCode&, const AdcCode&) = default;
};

// First-order correction: out[i] = majority(in[i-1], in[i], in[i+1]) with
// in[-1] = 1 and in[7] = 0.
ThermometerWord bubble_correct(const ThermometerWord& raw);

/// Number of ones of a clean word; throws kResidualBubble otherwise.
int therm_to_count(const ThermometerWord& clean);

// MSB from the fold, LSBs from the flash: 8 + count above zero, 7 - count below.
AdcCode assemble_code(int sign_bit, int count);

GrayBits bin_to_gray(int value);
int gray_to_bin(const GrayBits& gray);

// Reference 16-level quantizer with thresholds at (i - 8)*LSB, i = 1..15,
// LSB = full_scale/16. A value sitting exactly on a threshold >= 0 maps to the
// lower code; on a negative threshold it maps to the upper code. This matches
// the fold (0 -> sign 0) and strict comparator conventions.
int oracle_quantize(double v_diff, double full_scale);

// CSV `index,value,gray_bits` with gray rendered MSB-first.
void write_codes_csv(std::ostream& out, std::span<const AdcCode> codes);

}  // namespace ffadc
