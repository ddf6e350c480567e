#include "ffadc/comparator.hpp"

#include <cmath>
#include <random>
#include <string>
#include <tuple>

#include "ffadc/error.hpp"
#include "ffadc/rng.hpp"

namespace ffadc {

void ComparatorSpec::validate() const {
  if (!(w_r1 > 0.0 && w_r2 > 0.0)) throw Error(ErrorKind::kInvalidRequest, "reset widths must be > 0");
  if (!(length > 0.0)) throw Error(ErrorKind::kInvalidRequest, "gate length must be > 0");
  if (!(c_ox > 0.0)) throw Error(ErrorKind::kInvalidRequest, "c_ox must be > 0");
  if (!(v_ov > 0.0)) throw Error(ErrorKind::kInvalidRequest, "v_ov must be > 0");
  if (!(a_cc >= 0.0)) throw Error(ErrorKind::kInvalidRequest, "a_cc must be >= 0");
  if (!(noise_sigma >= 0.0)) throw Error(ErrorKind::kInvalidRequest, "noise_sigma must be >= 0");
}

TriodeCaps triode_caps(double w, double l, double c_ox) {
  if (!(w > 0.0 && l > 0.0 && c_ox > 0.0))
    throw Error(ErrorKind::kInvalidRequest, "triode_caps needs positive w, l and c_ox");
  const double c = c_ox * w * l;
  return {c, c};
}

CapacitanceBreakdown cap_breakdown(const ComparatorSpec& spec) {
  spec.validate();
  const auto r1 = triode_caps(spec.w_r1, spec.length, spec.c_ox);
  const auto r2 = triode_caps(spec.w_r2, spec.length, spec.c_ox);
  CapacitanceBreakdown b;
  b.c_gs_r1 = r1.c_gs;
  b.c_gd_r1 = r1.c_gd;
  b.c_gs_r2 = r2.c_gs;
  b.c_gd_r2 = r2.c_gd;
  const double side1 = b.c_gs_r1 + b.c_gd_r1 * (1.0 + spec.a_cc);
  const double side2 = b.c_gs_r2 + b.c_gd_r2 * (1.0 + spec.a_cc);
  // Same caps are linear in width; difference the widths first so near-matched
  // pairs do not lose precision to cancellation.
  const double dc = spec.c_ox * (spec.w_r1 - spec.w_r2) * spec.length;
  b.c_diff = dc + dc * (1.0 + spec.a_cc);
  b.c_sum = side1 + side2;
  return b;
}

double offset_general(double v_ov, double c_diff, double c_sum) {
  if (!(c_sum > 0.0)) throw Error(ErrorKind::kInvalidRequest, "c_sum must be > 0");
  return v_ov / 2.0 * (c_diff / c_sum);
}

double offset_from_widths(const ComparatorSpec& spec) {
  spec.validate();
  return spec.v_ov / 2.0 * ((spec.w_r1 - spec.w_r2) / (spec.w_r1 + spec.w_r2));
}

std::pair<double, double> widths_for_offset(double target, double v_ov, double w_sum) {
  if (!(v_ov > 0.0)) throw Error(ErrorKind::kInvalidRequest, "v_ov must be > 0");
  if (!(w_sum > 0.0)) throw Error(ErrorKind::kInvalidRequest, "w_sum must be > 0");
  if (!(std::abs(target) < v_ov / 2.0)) {
    throw Error(ErrorKind::kUnreachableOffset,
                "offset " + std::to_string(target * 1e3) + " mV unreachable; feasible range is (" +
                    std::to_string(-v_ov / 2.0 * 1e3) + ", " + std::to_string(v_ov / 2.0 * 1e3) +
                    ") mV for v_ov " + std::to_string(v_ov * 1e3) + " mV");
  }
  const double ratio = 2.0 * target / v_ov;
  return {w_sum / 2.0 * (1.0 + ratio), w_sum / 2.0 * (1.0 - ratio)};
}

double trip_point(const ComparatorSpec& spec) { return offset_from_widths(spec) + spec.trim; }

int compare(double v_in, const ComparatorSpec& spec, std::uint64_t rng_seed) {
  double v = v_in;
  if (spec.noise_sigma > 0.0) {
    SplitMix64 g(rng_seed);
    std::normal_distribution<double> noise(0.0, spec.noise_sigma);
    v += noise(g);
  }
  return v > trip_point(spec) ? 1 : 0;
}

double flash_lsb(double full_scale) { return full_scale / 2.0 / 8.0; }

double minimum_v_ov(double full_scale) { return 2.0 * kFlashComparators * flash_lsb(full_scale); }

std::vector<ComparatorSpec> build_flash_bank(double full_scale, const ComparatorSpec& prototype,
                                             double w_sum, std::span<const double> trims) {
  if (trims.size() != kFlashComparators)
    throw Error(ErrorKind::kInvalidRequest, "flash bank needs exactly 7 trims");
  if (!(full_scale > 0.0)) throw Error(ErrorKind::kInvalidRequest, "full scale must be > 0");
  const double lsb = flash_lsb(full_scale);
  const double top = kFlashComparators * lsb;
  if (!(top < prototype.v_ov / 2.0)) {
    throw Error(ErrorKind::kUnreachableOffset,
                "top trip " + std::to_string(top * 1e3) + " mV needs v_ov > " +
                    std::to_string(minimum_v_ov(full_scale) * 1e3) + " mV (got " +
                    std::to_string(prototype.v_ov * 1e3) + " mV)");
  }
  std::vector<ComparatorSpec> bank;
  bank.reserve(kFlashComparators);
  for (int k = 0; k < kFlashComparators; ++k) {
    ComparatorSpec c = prototype;
    std::tie(c.w_r1, c.w_r2) = widths_for_offset((k + 1) * lsb, prototype.v_ov, w_sum);
    c.trim = trims[static_cast<std::size_t>(k)];
    c.validate();
    bank.push_back(c);
  }
  return bank;
}

}  // namespace ffadc
