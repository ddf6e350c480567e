#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ffadc/frontend.hpp"

namespace ffadc {

inline constexpr int kFlashComparators = 7;

// Unbalanced double-tail comparator. The built-in reference comes from the
// width mismatch of the two reset transistors; the input pair stays matched.
// Widths and length are in micrometres, c_ox in F/um^2.
struct ComparatorSpec {
  double w_r1 = 1.0;
  double w_r2 = 1.0;
  double length = 0.06;
  double v_ov = 0.45;
  double a_cc = 10.0;
  double c_ox = 10e-15;
  double trim = 0.0;         // additive bulk-trim correction, volts
  double noise_sigma = 0.0;  // input-referred, volts
  ClockMode clock_mode = ClockMode::kTwoClock;

  void validate() const;
};

struct TriodeCaps {
  double c_gs = 0.0;
  double c_gd = 0.0;
};

struct CapacitanceBreakdown {
  double c_gs_r1 = 0.0;
  double c_gd_r1 = 0.0;
  double c_gs_r2 = 0.0;
  double c_gd_r2 = 0.0;
  double c_diff = 0.0;
  double c_sum = 0.0;
};

/// Reset transistor in triode: C_gs = C_gd = c_ox * w * l.
TriodeCaps triode_caps(double w, double l, double c_ox);

// Load at the mid nodes: each side contributes C_gs + C_gd*(1 + A_cc).
CapacitanceBreakdown cap_breakdown(const ComparatorSpec& spec);

/// Trip-point shift from a mid-node load imbalance: (v_ov/2) * c_diff/c_sum.
double offset_general(double v_ov, double c_diff, double c_sum);

/// Same shift with equal gate lengths: (v_ov/2) * (w1 - w2)/(w1 + w2).
double offset_from_widths(const ComparatorSpec& spec);

// Inverse sizing: widths summing to w_sum whose imbalance yields `target`.
// Throws kUnreachableOffset unless |target| < v_ov/2.
std::pair<double, double> widths_for_offset(double target, double v_ov, double w_sum);

/// Effective threshold: built-in offset plus trim.
double trip_point(const ComparatorSpec& spec);

// Returns 1 iff v_in + noise > trip_point(spec). Noise is drawn from a
// generator seeded with rng_seed, so the decision is reproducible.
int compare(double v_in, const ComparatorSpec& spec, std::uint64_t rng_seed);

/// Folded-scale LSB of the 3-bit flash: (full_scale/2)/8.
double flash_lsb(double full_scale);

// Smallest overdrive that can realise every built-in trip for this full scale.
double minimum_v_ov(double full_scale);

// Seven comparators with trips at (k+1)*LSB on the folded scale, k = 0..6, so
// together with the fold at zero the 4-bit transfer is a uniform mid-rise
// quantizer. Width sum, v_ov and the remaining device fields come from
// `prototype`; trims are applied per comparator.
std::vector<ComparatorSpec> build_flash_bank(double full_scale, const ComparatorSpec& prototype,
                                             double w_sum, std::span<const double> trims);

}  // namespace ffadc
