#pragma once

#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace ffadc {

// Event offsets (seconds) within one conversion period:
// track_start < hold_start < ck1_time < ck2_time < track_start + period.
struct ClockSchedule {
  double period = 0.0;
  double track_start = 0.0;
  double hold_start = 0.0;
  double ck1_time = 0.0;
  double ck2_time = 0.0;

  double track_time() const { return hold_start - track_start; }
  double ck1_delay() const { return ck1_time - hold_start; }
  double ck2_lead() const { return track_start + period - ck2_time; }
};

ClockSchedule build_schedule(double fs, double track_duty, double ck1_delay, double ck2_lead);

// Cumulative edge times of an inverter chain with the given stage delays.
std::vector<double> delay_chain(std::span<const double> stage_delays);

/// Event times rounded to integer picoseconds.
nlohmann::json to_json(const ClockSchedule& s);

}  // namespace ffadc
