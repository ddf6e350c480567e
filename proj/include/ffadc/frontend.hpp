#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ffadc/signal.hpp"
#include "ffadc/timing.hpp"

namespace ffadc {

// single_clock: sampling and latch decision share one edge, so kickback lands
// on the value being decided. two_clock: CK1 samples, CK2 decides later.
enum class ClockMode { kSingleClock, kTwoClock };

std::string_view to_string(ClockMode mode);
ClockMode clock_mode_from_string(std::string_view text);

struct FrontendSpec {
  double c_s = 500e-15;        // sampling capacitor
  double c_par = 50e-15;       // flash input parasitic, reset every track phase
  double settling_tau = 0.0;   // T/H first-order time constant
  double kickback_amp = 0.0;   // volts per conversion
  ClockMode kickback_mode = ClockMode::kTwoClock;
  bool kickback_random = false;  // zero-mean random sign instead of input-correlated

  void validate() const;
  /// c_s / (c_s + c_par)
  double share_gain() const { return c_s / (c_s + c_par); }
};

struct FoldedSample {
  int sign_bit = 0;          // 1 when the differential input is > 0
  double folded_value = 0.0; // |v|
};

// First-order T/H with one sample of memory:
// held[k] = v[k]*(1 - r) + held[k-1]*r, r = exp(-t_track/tau).
class TrackAndHold {
 public:
  TrackAndHold(double track_time, double settling_tau);

  double step(double v_in);
  double residual() const { return residual_; }
  void reset() { held_ = 0.0; }

 private:
  double residual_;
  double held_ = 0.0;
};

// Waveform samples are taken as the input value at each hold instant, so the
// schedule period must equal the waveform sample period.
std::vector<double> track_and_hold(const Waveform& w, const ClockSchedule& sched,
                                   const FrontendSpec& spec);

double charge_share(double held, const FrontendSpec& spec);

FoldedSample fold(double v_diff);

/// Chopper output for a given folding decision: v when sign_bit = 1, -v otherwise.
inline double chop(double v_diff, int sign_bit) { return sign_bit ? v_diff : -v_diff; }

struct KickbackEffect {
  double compared = 0.0;       // value the latch decision actually sees
  double post_decision = 0.0;  // input node right after the decision
};

// Applies one kickback step of kickback_amp per conversion (when any comparator
// fires). The step follows the sign of the sampled value, or a seeded random
// sign when kickback_random is set.
KickbackEffect inject_kickback(double sampled, int decision_count, const FrontendSpec& spec,
                               std::uint64_t seed = 0);

}  // namespace ffadc
