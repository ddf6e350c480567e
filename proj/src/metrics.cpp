#include "ffadc/metrics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

#include "ffadc/error.hpp"
#include "ffadc/signal.hpp"

namespace ffadc {
namespace {

std::vector<std::size_t> histogram(std::span<const int> codes) {
  if (codes.empty()) throw Error(ErrorKind::kEmptyRequest, "no codes to histogram");
  std::vector<std::size_t> counts(kCodeCount, 0);
  for (int c : codes) {
    if (c < 0 || c >= kCodeCount) throw Error(ErrorKind::kInvalidRequest, "code out of range");
    ++counts[static_cast<std::size_t>(c)];
  }
  for (int c = 0; c < kCodeCount; ++c) {
    if (counts[static_cast<std::size_t>(c)] == 0)
      throw Error(ErrorKind::kMissingCode, "missing code " + std::to_string(c));
  }
  return counts;
}

// Transition levels T_1..T_15 (arbitrary linear units) -> endpoint-fit DNL/INL.
LinearityReport from_transitions(const std::vector<double>& t) {
  const std::size_t edges = t.size();  // 15
  const double avg = (t.back() - t.front()) / static_cast<double>(edges - 1);
  LinearityReport r;
  r.dnl.resize(edges - 1);
  r.inl.resize(edges);
  for (std::size_t i = 0; i + 1 < edges; ++i) r.dnl[i] = (t[i + 1] - t[i]) / avg - 1.0;
  double acc = 0.0;
  r.inl[0] = 0.0;
  for (std::size_t j = 1; j < edges; ++j) {
    acc += r.dnl[j - 1];
    r.inl[j] = acc;
  }
  for (double d : r.dnl) r.max_abs_dnl = std::max(r.max_abs_dnl, std::abs(d));
  for (double v : r.inl) r.max_abs_inl = std::max(r.max_abs_inl, std::abs(v));
  return r;
}

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

class RealFft {
 public:
  explicit RealFft(std::size_t n)
      : n_(n),
        in_(static_cast<double*>(fftw_malloc(sizeof(double) * n))),
        out_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)))) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_ESTIMATE);
  }
  ~RealFft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::span<double> input() { return {in_.get(), n_}; }
  void execute() { fftw_execute(plan_); }
  double magnitude_squared(std::size_t k) const {
    return out_.get()[k][0] * out_.get()[k][0] + out_.get()[k][1] * out_.get()[k][1];
  }

 private:
  std::size_t n_;
  std::unique_ptr<double, FftwFree> in_;
  std::unique_ptr<fftw_complex, FftwFree> out_;
  fftw_plan plan_ = nullptr;
};

}  // namespace

LinearityReport dnl_inl_ramp(std::span<const int> codes) {
  const auto counts = histogram(codes);
  // Uniform density: transition k sits at the cumulative count below code k.
  std::vector<double> t;
  double cumulative = static_cast<double>(counts[0]);
  for (int k = 1; k < kCodeCount; ++k) {
    t.push_back(cumulative);
    cumulative += static_cast<double>(counts[static_cast<std::size_t>(k)]);
  }
  return from_transitions(t);
}

LinearityReport dnl_inl_sine(std::span<const int> codes, double amplitude_overdrive) {
  if (!(amplitude_overdrive >= 0.01))
    throw Error(ErrorKind::kInvalidRequest, "sine histogram needs at least 1% overdrive");
  const auto counts = histogram(codes);
  const double total = static_cast<double>(codes.size());
  std::vector<double> t;
  double cumulative = static_cast<double>(counts[0]);
  for (int k = 1; k < kCodeCount; ++k) {
    t.push_back(-std::cos(std::numbers::pi * cumulative / total));
    cumulative += static_cast<double>(counts[static_cast<std::size_t>(k)]);
  }
  return from_transitions(t);
}

std::string_view to_string(Window w) { return w == Window::kHann ? "hann" : "rectangular"; }

Window window_from_string(std::string_view text) {
  if (text == "rectangular") return Window::kRectangular;
  if (text == "hann") return Window::kHann;
  throw Error(ErrorKind::kInvalidRequest,
              "unknown window '" + std::string(text) + "' (rectangular|hann)");
}

std::size_t Spectrum::peak_bin() const {
  if (power.size() < 2) throw Error(ErrorKind::kEmptySpectrum, "spectrum has no bins");
  const std::size_t first = std::min(leakage_span() + 1, power.size() - 1);
  const auto it = std::max_element(power.begin() + static_cast<std::ptrdiff_t>(first), power.end());
  return static_cast<std::size_t>(it - power.begin());
}

Spectrum psd(std::span<const double> codes, Window window) {
  const std::size_t n = codes.size();
  if (!is_power_of_two(n) || n < 2)
    throw Error(ErrorKind::kLengthError, "spectrum length must be a power of two (got " +
                                             std::to_string(n) + ")");
  const double mean = std::accumulate(codes.begin(), codes.end(), 0.0) / static_cast<double>(n);

  RealFft fft(n);
  auto in = fft.input();
  double window_energy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double w = 1.0;
    if (window == Window::kHann)
      w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    in[k] = (codes[k] - mean) * w;
    window_energy += w * w;
  }
  fft.execute();

  // Scaled so that the bins sum to the variance (exactly for rectangular).
  Spectrum s;
  s.window = window;
  s.n = n;
  s.power.resize(n / 2 + 1);
  const double norm = static_cast<double>(n) * window_energy;
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const double one_sided = (k == 0 || k == n / 2) ? 1.0 : 2.0;
    s.power[k] = one_sided * fft.magnitude_squared(k) / norm;
  }
  const double full_scale_sine = std::pow(kCodeCount / 2.0, 2) / 2.0;
  s.dbfs.resize(s.power.size());
  for (std::size_t k = 0; k < s.power.size(); ++k) {
    s.dbfs[k] = s.power[k] > 0.0 ? 10.0 * std::log10(s.power[k] / full_scale_sine)
                                 : -std::numeric_limits<double>::infinity();
  }
  return s;
}

Spectrum psd(std::span<const int> codes, Window window) {
  std::vector<double> v(codes.begin(), codes.end());
  return psd(std::span<const double>(v), window);
}

DynamicMetrics sndr_sfdr_enob(const Spectrum& spectrum, std::size_t signal_bin) {
  const auto& p = spectrum.power;
  if (p.size() < 2) throw Error(ErrorKind::kEmptySpectrum, "spectrum is empty");
  if (signal_bin == 0 || signal_bin >= p.size())
    throw Error(ErrorKind::kInvalidRequest, "signal bin must be a nonzero bin of the spectrum");

  const std::size_t span = spectrum.leakage_span();
  const std::size_t lo = signal_bin > span ? signal_bin - span : 1;
  const std::size_t hi = std::min(signal_bin + span, p.size() - 1);

  double signal = 0.0;
  double noise = 0.0;
  double spur = 0.0;
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (k >= lo && k <= hi) {
      signal += p[k];
    } else if (k > span) {
      noise += p[k];
      spur = std::max(spur, p[k]);
    }
  }
  if (!(signal > 0.0)) throw Error(ErrorKind::kEmptySpectrum, "no power in the signal bin");

  auto ratio_db = [](double num, double den) {
    if (den <= 0.0) return kSndrCapDb;
    return std::min(kSndrCapDb, 10.0 * std::log10(num / den));
  };
  DynamicMetrics m;
  m.sndr_db = ratio_db(signal, noise);
  m.sfdr_db = ratio_db(signal, spur);
  m.enob_bits = enob_from_sndr(m.sndr_db);
  return m;
}

double fom(double power, double enob, double fs) {
  if (!(power > 0.0 && fs > 0.0))
    throw Error(ErrorKind::kInvalidRequest, "FoM needs positive power and sample rate");
  return power / (std::pow(2.0, enob) * fs);
}

PowerLedger power_ledger(double total, std::span<const double> fractions) {
  if (!(total > 0.0)) throw Error(ErrorKind::kInvalidRequest, "total power must be > 0");
  if (fractions.size() != 4)
    throw Error(ErrorKind::kConfig, "power ledger needs four fractions (T/H, comparators, clock, encoder)");
  double sum = 0.0;
  for (double f : fractions) {
    if (f < 0.0) throw Error(ErrorKind::kConfig, "power fractions must be nonnegative");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorKind::kConfig, "power fractions sum to " + std::to_string(sum) + ", not 1");
  return {total, fractions[0], fractions[1], fractions[2], fractions[3]};
}

double round_to(double value, int decimals) {
  if (!std::isfinite(value)) return value;
  const double scale = std::pow(10.0, decimals);
  const double r = std::round(value * scale) / scale;
  return r == 0.0 ? 0.0 : r;
}

nlohmann::json to_json(const LinearityReport& r) {
  nlohmann::json dnl = nlohmann::json::array();
  nlohmann::json inl = nlohmann::json::array();
  for (double d : r.dnl) dnl.push_back(round_to(d, 3));
  for (double v : r.inl) inl.push_back(round_to(v, 3));
  return {{"dnl_lsb", dnl},
          {"inl_lsb", inl},
          {"max_abs_dnl_lsb", round_to(r.max_abs_dnl, 3)},
          {"max_abs_inl_lsb", round_to(r.max_abs_inl, 3)},
          {"dnl_codes", "1..14 (end codes excluded)"},
          {"inl_fit", "endpoint"}};
}

nlohmann::json to_json(const PowerLedger& p) {
  return {{"total_w", p.total},
          {"th_fraction", p.th_fraction},
          {"comparator_fraction", p.comparator_fraction},
          {"clock_fraction", p.clock_fraction},
          {"encoder_fraction", p.encoder_fraction},
          {"th_w", p.th()},
          {"comparators_w", p.comparators()},
          {"clock_w", p.clock()},
          {"encoder_w", p.encoder()}};
}

}  // namespace ffadc
