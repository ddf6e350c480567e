#include "ffadc/frontend.hpp"

#include <cmath>
#include <string>

#include "ffadc/error.hpp"
#include "ffadc/rng.hpp"

namespace ffadc {

std::string_view to_string(ClockMode mode) {
  return mode == ClockMode::kSingleClock ? "single_clock" : "two_clock";
}

ClockMode clock_mode_from_string(std::string_view text) {
  if (text == "single_clock") return ClockMode::kSingleClock;
  if (text == "two_clock") return ClockMode::kTwoClock;
  throw Error(ErrorKind::kInvalidRequest,
              "unknown clock mode '" + std::string(text) + "' (single_clock|two_clock)");
}

void FrontendSpec::validate() const {
  if (!(c_s > 0.0)) throw Error(ErrorKind::kInvalidRequest, "c_s must be > 0");
  if (!(c_par >= 0.0)) throw Error(ErrorKind::kInvalidRequest, "c_par must be >= 0");
  if (!(settling_tau >= 0.0)) throw Error(ErrorKind::kInvalidRequest, "settling_tau must be >= 0");
  if (!(kickback_amp >= 0.0)) throw Error(ErrorKind::kInvalidRequest, "kickback_amp must be >= 0");
}

TrackAndHold::TrackAndHold(double track_time, double settling_tau)
    : residual_(settling_tau > 0.0 ? std::exp(-track_time / settling_tau) : 0.0) {}

double TrackAndHold::step(double v_in) {
  // Keep the ideal case exact rather than v*(1-0) + h*0.
  held_ = residual_ == 0.0 ? v_in : v_in * (1.0 - residual_) + held_ * residual_;
  return held_;
}

std::vector<double> track_and_hold(const Waveform& w, const ClockSchedule& sched,
                                   const FrontendSpec& spec) {
  w.validate();
  spec.validate();
  if (std::abs(w.sample_period - sched.period) > 1e-9 * sched.period) {
    throw Error(ErrorKind::kInvalidRequest,
                "waveform sample period does not match the conversion period");
  }
  TrackAndHold th(sched.track_time(), spec.settling_tau);
  std::vector<double> held(w.samples.size());
  for (std::size_t k = 0; k < held.size(); ++k) held[k] = th.step(w.samples[k]);
  return held;
}

double charge_share(double held, const FrontendSpec& spec) {
  if (spec.c_par == 0.0) return held;
  return held * spec.share_gain();
}

FoldedSample fold(double v_diff) {
  return {v_diff > 0.0 ? 1 : 0, std::abs(v_diff)};
}

KickbackEffect inject_kickback(double sampled, int decision_count, const FrontendSpec& spec,
                               std::uint64_t seed) {
  if (decision_count < 0)
    throw Error(ErrorKind::kInvalidRequest, "decision_count must be >= 0");
  if (decision_count == 0 || spec.kickback_amp == 0.0) return {sampled, sampled};

  double direction = 0.0;
  if (spec.kickback_random) {
    SplitMix64 g(seed);
    direction = (g() >> 63) ? 1.0 : -1.0;
  } else {
    direction = (sampled > 0.0) - (sampled < 0.0);
  }
  const double disturbed = sampled + direction * spec.kickback_amp;
  if (spec.kickback_mode == ClockMode::kSingleClock) return {disturbed, disturbed};
  // Two-clock: the input was already sampled at CK1; c_par is reset before the
  // next conversion, so the step never reaches a decision.
  return {sampled, disturbed};
}

}  // namespace ffadc
