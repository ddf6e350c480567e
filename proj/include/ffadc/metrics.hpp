#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace ffadc {

inline constexpr int kResolutionBits = 4;
inline constexpr int kCodeCount = 16;

// Code-density linearity with endpoint fit. dnl[i] belongs to code i+1
// (codes 1..14, end codes excluded); inl[j] is the deviation of transition
// T_{j+1} (j = 0..14), so inl.front() = inl.back() = 0.
struct LinearityReport {
  std::vector<double> dnl;
  std::vector<double> inl;
  double max_abs_dnl = 0.0;
  double max_abs_inl = 0.0;
};

LinearityReport dnl_inl_ramp(std::span<const int> codes);

// Sine-histogram variant: transitions from the arcsine distribution,
// T_k = -cos(pi * P(code < k)). Requires a coherent sine overdriving the range
// by at least 1% (amplitude_overdrive >= 0.01).
LinearityReport dnl_inl_sine(std::span<const int> codes, double amplitude_overdrive);

enum class Window { kRectangular, kHann };

std::string_view to_string(Window w);
Window window_from_string(std::string_view text);

// One-sided power spectrum of mean-removed codes, bins 0..n/2. Powers are in
// code units squared and sum to the (windowed) variance; dbfs is relative to a
// full-scale sine (amplitude 2^N/2 codes).
struct Spectrum {
  std::vector<double> power;
  std::vector<double> dbfs;
  Window window = Window::kRectangular;
  std::size_t n = 0;

  /// Bins on each side of dc/signal treated as leakage of that tone.
  std::size_t leakage_span() const { return window == Window::kHann ? 3 : 0; }
  std::size_t peak_bin() const;
};

Spectrum psd(std::span<const double> codes, Window window);
Spectrum psd(std::span<const int> codes, Window window);

inline constexpr double kSndrCapDb = 200.0;

struct DynamicMetrics {
  double sndr_db = 0.0;
  double sfdr_db = 0.0;
  double enob_bits = 0.0;
};

// SNDR: signal power over every other non-dc bin. SFDR: signal over the
// largest remaining bin. Degenerate (noise-free) cases cap at 200 dB.
DynamicMetrics sndr_sfdr_enob(const Spectrum& spectrum, std::size_t signal_bin);

inline double enob_from_sndr(double sndr_db) { return (sndr_db - 1.76) / 6.02; }

/// Walden figure of merit, joules per conversion step: power / (2^enob * fs).
double fom(double power, double enob, double fs);

struct PowerLedger {
  double total = 0.0;
  double th_fraction = 0.10;
  double comparator_fraction = 0.25;
  double clock_fraction = 0.45;
  double encoder_fraction = 0.20;

  double th() const { return total * th_fraction; }
  double comparators() const { return total * comparator_fraction; }
  double clock() const { return total * clock_fraction; }
  double encoder() const { return total * encoder_fraction; }
};

inline constexpr std::array<double, 4> kDefaultPowerFractions{0.10, 0.25, 0.45, 0.20};

// Fractions in order T/H, comparators, clock, encoder. Throws kConfig when they
// are negative or do not sum to 1 within 1e-9.
PowerLedger power_ledger(double total, std::span<const double> fractions = kDefaultPowerFractions);

nlohmann::json to_json(const LinearityReport& r);
nlohmann::json to_json(const PowerLedger& p);

/// Rounds to a fixed number of decimals for report output.
double round_to(double value, int decimals);

}  // namespace ffadc
