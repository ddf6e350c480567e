#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

namespace ffadc {

inline constexpr double kDefaultFullScale = 0.5;  // volts peak-to-peak, differential

// Differential waveform: each sample is v_p - v_n in volts, uniformly spaced.
struct Waveform {
  std::vector<double> samples;
  double sample_period = 0.0;
  double full_scale = kDefaultFullScale;

  std::size_t size() const { return samples.size(); }
  double sample_rate() const { return 1.0 / sample_period; }
  void validate() const;
};

// samples[k] = amplitude * sin(2*pi*frequency*k/fs + phase).
// Requires 0 < frequency < fs/2, |amplitude| <= full_scale/2 and n > 0.
Waveform gen_sine(double amplitude, double frequency, double fs, std::size_t n,
                  double phase = 0.0, double full_scale = kDefaultFullScale);

// Odd cycle count m nearest n*target/fs, restricted to 0 < m < n/2.
// n must be a power of two, so every odd m is coprime with it.
std::size_t coherent_cycles(double fs, std::size_t n, double target);

/// Returns m/n * fs for m = coherent_cycles(fs, n, target).
double coherent_frequency(double fs, std::size_t n, double target);

// Linear sweep including both endpoints. The waveform's full_scale is widened
// to cover the endpoints when they exceed the nominal range.
Waveform gen_ramp(double v_start, double v_end, std::size_t n, double sample_period = 1e-9,
                  double full_scale = kDefaultFullScale);

double dbfs_to_amplitude(double dbfs, double full_scale);

bool is_power_of_two(std::size_t n);

// CSV with header `index,volts`; period and full scale travel in a JSON sidecar.
void write_waveform_csv(std::ostream& out, const Waveform& w);
nlohmann::json waveform_metadata(const Waveform& w);
Waveform read_waveform_csv(std::istream& csv, const nlohmann::json& metadata);

}  // namespace ffadc
