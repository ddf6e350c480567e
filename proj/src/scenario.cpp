#include "ffadc/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "ffadc/error.hpp"
#include "ffadc/rng.hpp"
#include "ffadc/units.hpp"

namespace ffadc {
namespace {

using Setter = std::function<void(Scenario&, std::string_view)>;
using Getter = std::function<std::string(const Scenario&)>;

struct Field {
  std::string path;
  bool numeric;
  Setter set;
  Getter get;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> items;
  while (true) {
    const auto comma = text.find(',');
    items.push_back(trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return items;
}

// Physical quantity stored in 10^exponent base units (micrometres for widths).
Field quantity(std::string path, std::string unit, std::function<double&(Scenario&)> ref, int exponent = 0) {
  const std::string shown = exponent == -6 ? "u" + unit : unit;
  return Field{std::move(path), true,
               [unit, exponent, ref](Scenario& s, std::string_view v) {
                 ref(s) = parse_quantity(v, unit, exponent);
               },
               [shown, ref](const Scenario& s) { return format_quantity(ref(const_cast<Scenario&>(s)), shown); }};
}

Field fraction(std::string path, std::function<double&(Scenario&)> ref) {
  return Field{std::move(path), true,
               [ref](Scenario& s, std::string_view v) { ref(s) = parse_fraction(v); },
               [ref](const Scenario& s) { return format_number(ref(const_cast<Scenario&>(s))); }};
}

template <typename Int>
Field integer(std::string path, std::function<Int&(Scenario&)> ref) {
  return Field{std::move(path), true,
               [ref](Scenario& s, std::string_view v) {
                 Int value{};
                 const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
                 if (ec != std::errc{} || ptr != v.data() + v.size())
                   throw Error(ErrorKind::kConfig, "expected a nonnegative integer, got '" + std::string(v) + "'");
                 ref(s) = value;
               },
               [ref](const Scenario& s) { return std::to_string(ref(const_cast<Scenario&>(s))); }};
}

Field boolean(std::string path, std::function<bool&(Scenario&)> ref) {
  return Field{std::move(path), false,
               [ref](Scenario& s, std::string_view v) {
                 if (v == "true") ref(s) = true;
                 else if (v == "false") ref(s) = false;
                 else throw Error(ErrorKind::kConfig, "expected true or false, got '" + std::string(v) + "'");
               },
               [ref](const Scenario& s) { return std::string(ref(const_cast<Scenario&>(s)) ? "true" : "false"); }};
}

Field text(std::string path, Setter set, Getter get) {
  return Field{std::move(path), false, std::move(set), std::move(get)};
}

template <std::size_t N>
Field list(std::string path, std::string unit, std::function<std::array<double, N>&(Scenario&)> ref) {
  return Field{std::move(path), false,
               [unit, ref](Scenario& s, std::string_view v) {
                 const auto items = split_list(v);
                 if (items.size() != N)
                   throw Error(ErrorKind::kConfig, "expected " + std::to_string(N) + " comma-separated values");
                 auto& target = ref(s);
                 for (std::size_t i = 0; i < N; ++i)
                   target[i] = unit.empty() ? parse_fraction(items[i]) : parse_quantity(items[i], unit);
               },
               [unit, ref](const Scenario& s) {
                 std::string out;
                 for (double x : ref(const_cast<Scenario&>(s))) {
                   if (!out.empty()) out += ", ";
                   out += unit.empty() ? format_number(x) : format_quantity(x, unit);
                 }
                 return out;
               }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(quantity("adc.full_scale", "V", [](Scenario& s) -> double& { return s.full_scale; }));

    f.push_back(text(
        "stimulus.type",
        [](Scenario& s, std::string_view v) {
          if (v == "sine") s.stimulus.type = StimulusType::kSine;
          else if (v == "ramp") s.stimulus.type = StimulusType::kRamp;
          else throw Error(ErrorKind::kConfig, "expected sine or ramp");
        },
        [](const Scenario& s) { return std::string(s.stimulus.type == StimulusType::kSine ? "sine" : "ramp"); }));
    f.push_back(quantity("stimulus.amplitude", "dBFS",
                         [](Scenario& s) -> double& { return s.stimulus.amplitude_dbfs; }));
    f.push_back(quantity("stimulus.frequency", "Hz", [](Scenario& s) -> double& { return s.stimulus.frequency; }));
    f.push_back(integer<std::size_t>("stimulus.n", [](Scenario& s) -> std::size_t& { return s.stimulus.n; }));
    f.push_back(quantity("stimulus.phase", "rad", [](Scenario& s) -> double& { return s.stimulus.phase; }));

    f.push_back(quantity("clock.fs", "Hz", [](Scenario& s) -> double& { return s.clock.fs; }));
    f.push_back(fraction("clock.track_duty", [](Scenario& s) -> double& { return s.clock.track_duty; }));
    f.push_back(quantity("clock.ck1_delay", "s", [](Scenario& s) -> double& { return s.clock.ck1_delay; }));
    f.push_back(quantity("clock.ck2_lead", "s", [](Scenario& s) -> double& { return s.clock.ck2_lead; }));

    f.push_back(quantity("frontend.c_s", "F", [](Scenario& s) -> double& { return s.frontend.c_s; }));
    f.push_back(quantity("frontend.c_par", "F", [](Scenario& s) -> double& { return s.frontend.c_par; }));
    f.push_back(quantity("frontend.settling_tau", "s",
                         [](Scenario& s) -> double& { return s.frontend.settling_tau; }));
    f.push_back(quantity("frontend.kickback_amp", "V",
                         [](Scenario& s) -> double& { return s.frontend.kickback_amp; }));
    f.push_back(boolean("frontend.kickback_random",
                        [](Scenario& s) -> bool& { return s.frontend.kickback_random; }));

    f.push_back(text(
        "comparator.clock_mode",
        [](Scenario& s, std::string_view v) {
          s.comparator.clock_mode = clock_mode_from_string(v);
          s.frontend.kickback_mode = s.comparator.clock_mode;
        },
        [](const Scenario& s) { return std::string(to_string(s.comparator.clock_mode)); }));
    f.push_back(quantity("comparator.v_ov", "V", [](Scenario& s) -> double& { return s.comparator.v_ov; }));
    f.push_back(quantity("comparator.w_sum", "m", [](Scenario& s) -> double& { return s.w_sum; }, -6));
    f.push_back(quantity("comparator.length", "m",
                         [](Scenario& s) -> double& { return s.comparator.length; }, -6));
    f.push_back(fraction("comparator.a_cc", [](Scenario& s) -> double& { return s.comparator.a_cc; }));
    f.push_back(quantity("comparator.c_ox", "F/um2", [](Scenario& s) -> double& { return s.comparator.c_ox; }));
    f.push_back(quantity("comparator.noise_sigma", "V",
                         [](Scenario& s) -> double& { return s.comparator.noise_sigma; }));
    f.push_back(list<kFlashComparators>(
        "comparator.trims", "V",
        [](Scenario& s) -> std::array<double, kFlashComparators>& { return s.trims; }));
    f.push_back(quantity("comparator.folder_trim", "V", [](Scenario& s) -> double& { return s.folder_trim; }));

    f.push_back(boolean("metrics.spectrum", [](Scenario& s) -> bool& { return s.metrics.spectrum; }));
    f.push_back(text(
        "metrics.window",
        [](Scenario& s, std::string_view v) { s.metrics.window = window_from_string(v); },
        [](const Scenario& s) { return std::string(to_string(s.metrics.window)); }));
    f.push_back(boolean("metrics.linearity", [](Scenario& s) -> bool& { return s.metrics.linearity; }));
    f.push_back(text(
        "metrics.linearity_method",
        [](Scenario& s, std::string_view v) {
          if (v == "ramp") s.metrics.linearity_method = LinearityMethod::kRamp;
          else if (v == "sine") s.metrics.linearity_method = LinearityMethod::kSine;
          else throw Error(ErrorKind::kConfig, "expected ramp or sine");
        },
        [](const Scenario& s) {
          return std::string(s.metrics.linearity_method == LinearityMethod::kRamp ? "ramp" : "sine");
        }));
    f.push_back(integer<std::size_t>("metrics.linearity_n",
                                     [](Scenario& s) -> std::size_t& { return s.metrics.linearity_n; }));
    f.push_back(fraction("metrics.linearity_overdrive",
                         [](Scenario& s) -> double& { return s.metrics.linearity_overdrive; }));
    f.push_back(quantity("metrics.linearity_frequency", "Hz",
                         [](Scenario& s) -> double& { return s.metrics.linearity_frequency; }));
    f.push_back(boolean("metrics.fom", [](Scenario& s) -> bool& { return s.metrics.fom; }));
    f.push_back(quantity("metrics.power", "W", [](Scenario& s) -> double& { return s.metrics.power; }));
    f.push_back(list<4>("metrics.power_fractions", "",
                        [](Scenario& s) -> std::array<double, 4>& { return s.metrics.power_fractions; }));

    f.push_back(text(
        "output.dir", [](Scenario& s, std::string_view v) { s.output_dir = std::string(v); },
        [](const Scenario& s) { return s.output_dir; }));
    f.push_back(integer<std::uint64_t>("seed", [](Scenario& s) -> std::uint64_t& { return s.seed; }));
    return f;
  }();
  return table;
}

const Field& find_field(std::string_view path) {
  for (const auto& f : fields()) {
    if (f.path == path) return f;
  }
  throw ConfigError(std::string(path), "unknown key");
}

void apply(Scenario& s, const Field& f, std::string_view value) {
  try {
    f.set(s, value);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(f.path, e.what());
  }
}

// Range checks that belong to a single field report that field's path.
void validate(const Scenario& s) {
  auto require = [](bool ok, const char* path, const char* what) {
    if (!ok) throw ConfigError(path, what);
  };
  require(s.full_scale > 0.0, "adc.full_scale", "must be > 0");
  require(s.stimulus.n > 0, "stimulus.n", "must be > 0");
  require(s.stimulus.frequency > 0.0, "stimulus.frequency", "must be > 0");
  require(s.clock.fs > 0.0, "clock.fs", "must be > 0");
  require(s.frontend.c_s > 0.0, "frontend.c_s", "must be > 0");
  require(s.frontend.c_par >= 0.0, "frontend.c_par", "must be >= 0");
  require(s.frontend.settling_tau >= 0.0, "frontend.settling_tau", "must be >= 0");
  require(s.frontend.kickback_amp >= 0.0, "frontend.kickback_amp", "must be >= 0");
  require(s.comparator.v_ov > 0.0, "comparator.v_ov", "must be > 0");
  require(s.w_sum > 0.0, "comparator.w_sum", "must be > 0");
  require(s.comparator.length > 0.0, "comparator.length", "must be > 0");
  require(s.comparator.a_cc >= 0.0, "comparator.a_cc", "must be >= 0");
  require(s.comparator.c_ox > 0.0, "comparator.c_ox", "must be > 0");
  require(s.comparator.noise_sigma >= 0.0, "comparator.noise_sigma", "must be >= 0");
  require(s.metrics.linearity_n >= 2, "metrics.linearity_n", "must be >= 2");
  require(s.metrics.linearity_overdrive >= 0.0, "metrics.linearity_overdrive", "must be >= 0");
  require(s.metrics.power > 0.0, "metrics.power", "must be > 0");
  if (s.metrics.spectrum) {
    require(s.stimulus.type == StimulusType::kSine, "metrics.spectrum", "needs stimulus.type = sine");
    require(is_power_of_two(s.stimulus.n), "stimulus.n", "spectrum needs a power-of-two record length");
  }
  if (s.metrics.fom) require(s.metrics.spectrum, "metrics.fom", "needs metrics.spectrum = true (ENOB)");
  if (s.metrics.linearity && s.metrics.linearity_method == LinearityMethod::kSine) {
    require(is_power_of_two(s.metrics.linearity_n), "metrics.linearity_n", "sine method needs a power of two");
    require(s.metrics.linearity_overdrive >= 0.01, "metrics.linearity_overdrive", "sine method needs >= 1%");
  }
  try {
    power_ledger(s.metrics.power, s.metrics.power_fractions);
  } catch (const Error& e) {
    throw ConfigError("metrics.power_fractions", e.what());
  }
}

nlohmann::json bank_json(const FoldingFlashAdc& adc) {
  nlohmann::json bank = nlohmann::json::array();
  int index = 0;
  for (const auto& c : adc.bank()) {
    bank.push_back({{"index", index++},
                    {"w_r1_um", c.w_r1},
                    {"w_r2_um", c.w_r2},
                    {"v_ov_mv", c.v_ov * 1e3},
                    {"builtin_offset_mv", offset_from_widths(c) * 1e3},
                    {"trim_mv", c.trim * 1e3},
                    {"trip_mv", trip_point(c) * 1e3}});
  }
  return bank;
}

std::string dbfs_text(double db) {
  if (!std::isfinite(db)) return "-inf";
  return format_number(round_to(db, 2));
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected `key = value`");
    const auto key = std::string(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
    if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
    apply(s, find_field(key), value);
  }
  validate(s);
  return s;
}

void set_scenario_field(Scenario& s, std::string_view path, std::string_view value) {
  const auto& f = find_field(path);
  if (!f.numeric) throw ConfigError(std::string(path), "not a numeric field");
  apply(s, f, trim(value));
  validate(s);
}

std::vector<std::string> numeric_fields() {
  std::vector<std::string> out;
  for (const auto& f : fields()) {
    if (f.numeric) out.push_back(f.path);
  }
  return out;
}

std::map<std::string, std::string> effective_config(const Scenario& s) {
  std::map<std::string, std::string> out;
  for (const auto& f : fields()) out[f.path] = f.get(s);
  return out;
}

std::string render_config(const Scenario& s) {
  std::string out;
  for (const auto& [key, value] : effective_config(s)) out += key + " = " + value + "\n";
  return out;
}

ConverterConfig converter_config(const Scenario& s) {
  ConverterConfig c;
  c.full_scale = s.full_scale;
  c.schedule = build_schedule(s.clock.fs, s.clock.track_duty, s.clock.ck1_delay, s.clock.ck2_lead);
  c.frontend = s.frontend;
  c.frontend.kickback_mode = s.comparator.clock_mode;
  c.prototype = s.comparator;
  c.w_sum = s.w_sum;
  c.trims = s.trims;
  c.folder_trim = s.folder_trim;
  return c;
}

RunOutput run_scenario(const Scenario& s, bool with_csv) {
  const FoldingFlashAdc adc(converter_config(s));
  const double fs = s.clock.fs;
  RunOutput out;

  auto config_echo = effective_config(s);
  config_echo.erase("output.dir");
  nlohmann::json& report = out.report;
  report["config"] = config_echo;
  report["clock_schedule"] = to_json(adc.config().schedule);
  report["comparator_bank"] = bank_json(adc);
  report["frontend"] = {{"share_gain", adc.config().frontend.share_gain()},
                        {"settling_residual",
                         TrackAndHold(adc.config().schedule.track_time(), s.frontend.settling_tau).residual()},
                        {"kickback_mode", to_string(adc.config().frontend.kickback_mode)}};

  // Main stimulus.
  Waveform stimulus;
  std::size_t cycles = 0;
  if (s.stimulus.type == StimulusType::kSine) {
    cycles = coherent_cycles(fs, s.stimulus.n, s.stimulus.frequency);
    const double f = static_cast<double>(cycles) / static_cast<double>(s.stimulus.n) * fs;
    stimulus = gen_sine(dbfs_to_amplitude(s.stimulus.amplitude_dbfs, s.full_scale), f, fs, s.stimulus.n,
                        s.stimulus.phase, s.full_scale);
    report["stimulus"] = {{"type", "sine"},
                          {"frequency_hz", f},
                          {"cycles", cycles},
                          {"n", s.stimulus.n},
                          {"amplitude_v", dbfs_to_amplitude(s.stimulus.amplitude_dbfs, s.full_scale)}};
  } else {
    stimulus = gen_ramp(-s.full_scale / 2.0, s.full_scale / 2.0, s.stimulus.n, 1.0 / fs, s.full_scale);
    report["stimulus"] = {{"type", "ramp"}, {"n", s.stimulus.n}};
  }
  const auto conversion = adc.convert(stimulus, s.seed);
  report["residual_bubbles"] = conversion.residual_bubbles;

  if (with_csv) {
    std::ostringstream w;
    write_waveform_csv(w, stimulus);
    out.files["stimulus.csv"] = w.str();
    out.files["stimulus.json"] = waveform_metadata(stimulus).dump(2) + "\n";
    std::ostringstream c;
    write_codes_csv(c, conversion.codes);
    out.files["codes.csv"] = c.str();
  }

  if (s.metrics.spectrum) {
    const auto spectrum = psd(std::span<const int>(conversion.values()), s.metrics.window);
    const auto m = sndr_sfdr_enob(spectrum, cycles);
    out.dynamic = m;
    report["spectrum"] = {{"window", to_string(s.metrics.window)},
                          {"n", spectrum.n},
                          {"signal_bin", cycles},
                          {"signal_dbfs", round_to(spectrum.dbfs[cycles], 2)},
                          {"sndr_db", round_to(m.sndr_db, 2)},
                          {"sfdr_db", round_to(m.sfdr_db, 2)},
                          {"enob_bits", round_to(m.enob_bits, 3)}};
    if (with_csv) {
      std::ostringstream p;
      p << "bin,frequency_hz,power_dbfs\n";
      for (std::size_t k = 0; k < spectrum.dbfs.size(); ++k) {
        p << k << ',' << format_number(static_cast<double>(k) * fs / static_cast<double>(spectrum.n)) << ','
          << dbfs_text(spectrum.dbfs[k]) << '\n';
      }
      out.files["psd.csv"] = p.str();
    }
  }

  if (s.metrics.linearity) {
    const double od = s.metrics.linearity_overdrive;
    const std::uint64_t lin_seed = derive_seed(s.seed, 0x11ea, 1);
    LinearityReport lin;
    if (s.metrics.linearity_method == LinearityMethod::kRamp) {
      const double half = (1.0 + od) * s.full_scale / 2.0;
      const auto ramp = gen_ramp(-half, half, s.metrics.linearity_n, 1.0 / fs, s.full_scale);
      lin = dnl_inl_ramp(adc.convert(ramp, lin_seed).values());
    } else {
      const double amplitude = (1.0 + od) * s.full_scale / 2.0;
      const double f = coherent_frequency(fs, s.metrics.linearity_n, s.metrics.linearity_frequency);
      const auto sine = gen_sine(amplitude, f, fs, s.metrics.linearity_n, 0.0, 2.0 * amplitude);
      lin = dnl_inl_sine(adc.convert(sine, lin_seed).values(), od);
    }
    out.linearity = lin;
    report["linearity"] = to_json(lin);
    report["linearity"]["method"] = s.metrics.linearity_method == LinearityMethod::kRamp ? "ramp" : "sine";
    report["linearity"]["samples"] = s.metrics.linearity_n;
    if (with_csv) {
      std::ostringstream d;
      d << "code,dnl_lsb\n";
      for (std::size_t i = 0; i < lin.dnl.size(); ++i) d << i + 1 << ',' << format_number(round_to(lin.dnl[i], 3)) << '\n';
      out.files["dnl.csv"] = d.str();
      std::ostringstream n;
      n << "transition,inl_lsb\n";
      for (std::size_t j = 0; j < lin.inl.size(); ++j) n << j + 1 << ',' << format_number(round_to(lin.inl[j], 3)) << '\n';
      out.files["inl.csv"] = n.str();
    }
  }

  if (s.metrics.fom && out.dynamic) {
    const auto ledger = power_ledger(s.metrics.power, s.metrics.power_fractions);
    const double value = fom(ledger.total, out.dynamic->enob_bits, fs);
    out.fom = value;
    report["power"] = to_json(ledger);
    report["fom"] = {{"fj_per_conversion", round_to(value * 1e15, 2)},
                     {"enob_bits", round_to(out.dynamic->enob_bits, 3)},
                     {"fs_hz", fs}};
  }
  return out;
}

SweepOutput sweep_scenario(const Scenario& base, std::string_view path, const std::vector<std::string>& values,
                           bool with_csv) {
  // Resolve every override before running anything.
  std::vector<Scenario> scenarios;
  scenarios.reserve(values.size());
  for (const auto& v : values) {
    Scenario s = base;
    set_scenario_field(s, path, v);
    scenarios.push_back(std::move(s));
  }

  SweepOutput out;
  out.values = values;
  out.runs.resize(scenarios.size());
  std::vector<std::exception_ptr> errors(scenarios.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        out.runs[i] = run_scenario(scenarios[i], with_csv);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(scenarios.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::ostringstream csv;
  csv << "value,sndr,enob,max_dnl,max_inl,fom\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& r = out.runs[i];
    csv << trim(values[i]) << ',';
    if (r.dynamic) csv << format_number(round_to(r.dynamic->sndr_db, 2));
    csv << ',';
    if (r.dynamic) csv << format_number(round_to(r.dynamic->enob_bits, 3));
    csv << ',';
    if (r.linearity) csv << format_number(round_to(r.linearity->max_abs_dnl, 3));
    csv << ',';
    if (r.linearity) csv << format_number(round_to(r.linearity->max_abs_inl, 3));
    csv << ',';
    if (r.fom) csv << format_number(round_to(*r.fom * 1e15, 2));
    csv << '\n';
  }
  out.summary_csv = csv.str();
  return out;
}

}  // namespace ffadc
