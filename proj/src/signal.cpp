#include "ffadc/signal.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "ffadc/error.hpp"

namespace ffadc {

void Waveform::validate() const {
  if (samples.empty()) throw Error(ErrorKind::kEmptyRequest, "waveform has no samples");
  if (!(sample_period > 0.0))
    throw Error(ErrorKind::kInvalidRequest, "waveform sample period must be > 0");
  if (!(full_scale > 0.0)) throw Error(ErrorKind::kInvalidRequest, "full scale must be > 0");
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Waveform gen_sine(double amplitude, double frequency, double fs, std::size_t n, double phase,
                  double full_scale) {
  if (n == 0) throw Error(ErrorKind::kEmptyRequest, "sine requested with zero samples");
  if (!(fs > 0.0)) throw Error(ErrorKind::kInvalidStimulus, "sample rate must be > 0");
  if (!(frequency > 0.0) || !(frequency < fs / 2.0)) {
    throw Error(ErrorKind::kInvalidStimulus,
                "sine frequency must satisfy 0 < f < fs/2 (got " + std::to_string(frequency) +
                    " Hz at fs " + std::to_string(fs) + " Hz)");
  }
  if (std::abs(amplitude) > full_scale / 2.0) {
    throw Error(ErrorKind::kInvalidStimulus, "sine amplitude exceeds half the full scale");
  }
  Waveform w;
  w.sample_period = 1.0 / fs;
  w.full_scale = full_scale;
  w.samples.resize(n);
  const double step = 2.0 * std::numbers::pi * frequency / fs;
  for (std::size_t k = 0; k < n; ++k) {
    w.samples[k] = amplitude * std::sin(step * static_cast<double>(k) + phase);
  }
  return w;
}

std::size_t coherent_cycles(double fs, std::size_t n, double target) {
  if (!is_power_of_two(n))
    throw Error(ErrorKind::kInvalidRequest, "record length must be a power of two");
  if (!(fs > 0.0) || !(target > 0.0) || !(target < fs / 2.0))
    throw Error(ErrorKind::kInvalidRequest, "target frequency must satisfy 0 < f < fs/2");
  if (n < 4) throw Error(ErrorKind::kInvalidRequest, "no odd cycle count below n/2");

  const double x = static_cast<double>(n) * target / fs;
  // Nearest odd integer; the lower one wins an exact tie.
  auto m = static_cast<long long>(2.0 * std::floor((x - 1.0) / 2.0) + 1.0);
  if (x - static_cast<double>(m) > 1.0) m += 2;
  const auto half = static_cast<long long>(n / 2);
  m = std::clamp(m, 1LL, half - 1);
  return static_cast<std::size_t>(m);
}

double coherent_frequency(double fs, std::size_t n, double target) {
  const std::size_t m = coherent_cycles(fs, n, target);
  return static_cast<double>(m) / static_cast<double>(n) * fs;
}

Waveform gen_ramp(double v_start, double v_end, std::size_t n, double sample_period,
                  double full_scale) {
  if (n < 2) throw Error(ErrorKind::kEmptyRequest, "ramp needs at least two samples");
  if (!(sample_period > 0.0))
    throw Error(ErrorKind::kInvalidRequest, "ramp sample period must be > 0");
  Waveform w;
  w.sample_period = sample_period;
  w.full_scale = std::max(full_scale, 2.0 * std::max(std::abs(v_start), std::abs(v_end)));
  w.samples.resize(n);
  const double span = v_end - v_start;
  const double last = static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    w.samples[k] = v_start + span * (static_cast<double>(k) / last);
  }
  w.samples.back() = v_end;
  return w;
}

double dbfs_to_amplitude(double dbfs, double full_scale) {
  return full_scale / 2.0 * std::pow(10.0, dbfs / 20.0);
}

void write_waveform_csv(std::ostream& out, const Waveform& w) {
  out << "index,volts\n";
  std::ostringstream line;
  line.precision(17);
  for (std::size_t k = 0; k < w.samples.size(); ++k) {
    line.str({});
    line << k << ',' << w.samples[k] << '\n';
    out << line.str();
  }
}

nlohmann::json waveform_metadata(const Waveform& w) {
  return {{"sample_period_s", w.sample_period},
          {"full_scale_v", w.full_scale},
          {"samples", w.samples.size()}};
}

Waveform read_waveform_csv(std::istream& csv, const nlohmann::json& metadata) {
  Waveform w;
  try {
    w.sample_period = metadata.at("sample_period_s").get<double>();
    w.full_scale = metadata.at("full_scale_v").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kIo, std::string("waveform metadata: ") + e.what());
  }
  std::string line;
  if (!std::getline(csv, line) || line != "index,volts")
    throw Error(ErrorKind::kIo, "waveform CSV must start with header `index,volts`");
  std::size_t expected = 0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::kIo, "malformed waveform row: " + line);
    try {
      const auto index = std::stoull(line.substr(0, comma));
      if (index != expected) throw Error(ErrorKind::kIo, "waveform rows out of order");
      w.samples.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::kIo, "malformed waveform row: " + line);
    }
    ++expected;
  }
  w.validate();
  return w;
}

}  // namespace ffadc
