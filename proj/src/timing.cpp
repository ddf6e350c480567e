#include "ffadc/timing.hpp"

#include <cmath>
#include <string>

#include "ffadc/error.hpp"

namespace ffadc {

ClockSchedule build_schedule(double fs, double track_duty, double ck1_delay, double ck2_lead) {
  if (!(fs > 0.0)) throw Error(ErrorKind::kScheduleInfeasible, "fs > 0 violated");
  if (!(track_duty > 0.0 && track_duty < 1.0))
    throw Error(ErrorKind::kScheduleInfeasible, "0 < track_duty < 1 violated");
  if (!(ck1_delay > 0.0))
    throw Error(ErrorKind::kScheduleInfeasible, "hold_start < ck1_time violated (ck1_delay must be > 0)");
  if (!(ck2_lead > 0.0))
    throw Error(ErrorKind::kScheduleInfeasible,
                "ck2_time < track_start + period violated (ck2_lead must be > 0)");

  ClockSchedule s;
  s.period = 1.0 / fs;
  s.track_start = 0.0;
  s.hold_start = track_duty * s.period;
  s.ck1_time = s.hold_start + ck1_delay;
  s.ck2_time = s.period - ck2_lead;
  if (!(ck1_delay + ck2_lead < (1.0 - track_duty) * s.period)) {
    throw Error(ErrorKind::kScheduleInfeasible,
                "ck1_time < ck2_time violated: ck1_delay + ck2_lead = " +
                    std::to_string((ck1_delay + ck2_lead) * 1e12) + " ps exceeds hold window " +
                    std::to_string((1.0 - track_duty) * s.period * 1e12) + " ps");
  }
  return s;
}

std::vector<double> delay_chain(std::span<const double> stage_delays) {
  std::vector<double> edges;
  edges.reserve(stage_delays.size());
  double t = 0.0;
  for (double d : stage_delays) {
    if (!(d > 0.0)) throw Error(ErrorKind::kInvalidRequest, "stage delays must be > 0");
    t += d;
    edges.push_back(t);
  }
  return edges;
}

nlohmann::json to_json(const ClockSchedule& s) {
  auto ps = [](double t) { return static_cast<long long>(std::llround(t * 1e12)); };
  return {{"period_ps", ps(s.period)},
          {"track_start_ps", ps(s.track_start)},
          {"hold_start_ps", ps(s.hold_start)},
          {"ck1_ps", ps(s.ck1_time)},
          {"ck2_ps", ps(s.ck2_time)}};
}

}  // namespace ffadc
