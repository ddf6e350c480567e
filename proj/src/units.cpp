#include "ffadc/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>

#include "ffadc/error.hpp"

namespace ffadc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

constexpr std::array<std::pair<std::string_view, int>, 11> kPrefixes{{
    {"f", -15}, {"p", -12}, {"n", -9}, {"u", -6}, {"\xC2\xB5", -6}, {"m", -3},
    {"k", 3}, {"M", 6}, {"G", 9}, {"T", 12}, {"", 0},
}};

// Splits a leading floating-point literal from the rest.
std::pair<double, std::string_view> split_number(std::string_view text, std::string_view original) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || !std::isfinite(value))
    throw Error(ErrorKind::kConfig, "not a number: '" + std::string(original) + "'");
  return {value, std::string_view(ptr, static_cast<std::size_t>(last - ptr))};
}

double scale_by_power_of_ten(double mantissa, int exponent) {
  // Dividing by an exact power of ten rounds once, unlike multiplying by 1e-k.
  if (exponent >= 0) return mantissa * std::pow(10.0, exponent);
  return mantissa / std::pow(10.0, -exponent);
}

}  // namespace

double parse_quantity(std::string_view text, std::string_view base_unit, int target_exponent) {
  const auto original = trim(text);
  if (original.empty()) throw Error(ErrorKind::kConfig, "empty value");
  const auto [mantissa, suffix_raw] = split_number(original, original);
  const auto suffix = trim(suffix_raw);

  if (suffix.empty()) {
    if (mantissa == 0.0) return 0.0;
    throw Error(ErrorKind::kConfig,
                "missing unit in '" + std::string(original) + "' (expected " + std::string(base_unit) + ")");
  }
  if (!suffix.ends_with(base_unit)) {
    throw Error(ErrorKind::kConfig, "unit of '" + std::string(original) + "' is not " +
                                        std::string(base_unit));
  }
  const auto prefix = suffix.substr(0, suffix.size() - base_unit.size());
  const bool prefixable = !base_unit.starts_with("dB");
  for (const auto& [p, exponent] : kPrefixes) {
    if (p == prefix && (prefixable || p.empty()))
      return scale_by_power_of_ten(mantissa, exponent - target_exponent);
  }
  throw Error(ErrorKind::kConfig,
              "unknown unit prefix '" + std::string(prefix) + "' in '" + std::string(original) + "'");
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string format_quantity(double value, std::string_view base_unit) {
  return format_number(value) + std::string(base_unit);
}

double parse_fraction(std::string_view text) {
  const auto original = trim(text);
  if (original.empty()) throw Error(ErrorKind::kConfig, "empty value");
  const auto [value, suffix_raw] = split_number(original, original);
  const auto suffix = trim(suffix_raw);
  if (suffix.empty()) return value;
  if (suffix == "%") return value / 100.0;
  throw Error(ErrorKind::kConfig, "expected a plain number or percentage, got '" + std::string(original) + "'");
}

}  // namespace ffadc
