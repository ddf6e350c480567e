#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "ffadc/digital.hpp"
#include "ffadc/error.hpp"
#include "ffadc/metrics.hpp"
#include "ffadc/signal.hpp"
#include "oracles.hpp"

using namespace ffadc;

namespace {

std::vector<int> quantize(const Waveform& w, double full_scale = 0.5) {
  std::vector<int> codes;
  codes.reserve(w.size());
  for (double v : w.samples) codes.push_back(oracle_quantize(v, full_scale));
  return codes;
}

std::vector<double> as_double(const std::vector<int>& codes) { return {codes.begin(), codes.end()}; }

TEST(DnlInlRamp, IdealQuantizerIsFlat) {
  const auto ramp = gen_ramp(-0.26, 0.26, std::size_t{1} << 20);
  const auto r = dnl_inl_ramp(quantize(ramp));
  ASSERT_EQ(r.dnl.size(), 14u);
  ASSERT_EQ(r.inl.size(), 15u);
  EXPECT_LT(r.max_abs_dnl, 0.05);
  EXPECT_LT(r.max_abs_inl, 0.05);
  EXPECT_EQ(r.inl.front(), 0.0);
  EXPECT_NEAR(r.inl.back(), 0.0, 1e-12);
}

TEST(DnlInlRamp, InlIsCumulativeDnl) {
  // Irregular but complete histogram.
  std::vector<int> codes;
  std::mt19937_64 rng(4);
  for (int c = 0; c < 16; ++c) {
    const int count = std::uniform_int_distribution<int>(50, 150)(rng);
    codes.insert(codes.end(), static_cast<std::size_t>(count), c);
  }
  const auto r = dnl_inl_ramp(codes);
  double acc = 0.0;
  EXPECT_EQ(r.inl[0], 0.0);
  for (std::size_t j = 1; j < r.inl.size(); ++j) {
    acc += r.dnl[j - 1];
    EXPECT_NEAR(r.inl[j], acc, 1e-12);
  }
  EXPECT_NEAR(r.inl.back(), 0.0, 1e-12);
  for (double d : r.dnl) EXPECT_GE(d, -1.0);
}

TEST(DnlInlRamp, ShiftedThresholdRecovered) {
  // Oracle quantizer with the threshold between codes 10 and 11 moved up 0.2 LSB.
  const double lsb = 0.5 / 16.0;
  const auto ramp = gen_ramp(-0.26, 0.26, std::size_t{1} << 20);
  std::vector<int> codes;
  for (double v : ramp.samples) {
    int c = oracle_quantize(v, 0.5);
    if (c == 11 && v <= 3.2 * lsb) c = 10;
    codes.push_back(c);
  }
  const auto r = dnl_inl_ramp(codes);
  EXPECT_NEAR(r.dnl[10 - 1], 0.2, 0.02);
  EXPECT_NEAR(r.dnl[11 - 1], -0.2, 0.02);
}

TEST(DnlInlRamp, MissingCodeNamed) {
  const std::vector<int> constant(1000, 7);
  try {
    dnl_inl_ramp(constant);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingCode);
    EXPECT_NE(std::string(e.what()).find("missing code 0"), std::string::npos);
  }
}

TEST(DnlInlSine, AgreesWithRampOnIdealQuantizer) {
  const std::size_t n = std::size_t{1} << 22;
  const double amplitude = 0.25 * 1.02;
  const auto sine = gen_sine(amplitude, coherent_frequency(1e9, n, 100e6), 1e9, n, 0.0, 2.0 * amplitude);
  const auto s = dnl_inl_sine(quantize(sine), 0.02);
  const auto r = dnl_inl_ramp(quantize(gen_ramp(-0.26, 0.26, std::size_t{1} << 20)));
  for (std::size_t i = 0; i < 14; ++i) EXPECT_NEAR(s.dnl[i], r.dnl[i], 0.03) << "code " << i + 1;
  for (std::size_t j = 0; j < 15; ++j) EXPECT_NEAR(s.inl[j], r.inl[j], 0.03);
}

TEST(DnlInlSine, ZeroAmplitudeMissesCodes) {
  const auto silent = gen_sine(0.0, 100e6, 1e9, 1024);
  EXPECT_THROW(dnl_inl_sine(quantize(silent), 0.02), Error);
}

TEST(DnlInlSine, RequiresOverdrive) {
  const std::vector<int> codes(16, 0);
  EXPECT_THROW(dnl_inl_sine(codes, 0.005), Error);
}

TEST(Psd, DcOnlyHasNoAcPower) {
  const std::vector<int> dc(1024, 9);
  const auto s = psd(dc, Window::kRectangular);
  for (double p : s.power) EXPECT_EQ(p, 0.0);
  for (double d : s.dbfs) EXPECT_TRUE(std::isinf(d) && d < 0);
}

TEST(Psd, RejectsNonPowerOfTwo) {
  const std::vector<int> codes(1000, 1);
  try {
    psd(codes, Window::kRectangular);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLengthError);
  }
}

TEST(Psd, ParsevalRectangular) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> code(0, 15);
  for (std::size_t n : {16u, 256u, 4096u}) {
    std::vector<double> x(n);
    for (auto& v : x) v = code(rng);
    const auto s = psd(std::span<const double>(x), Window::kRectangular);
    const double total = std::accumulate(s.power.begin(), s.power.end(), 0.0);
    EXPECT_NEAR(total, oracle::variance(x), 1e-9 * oracle::variance(x));
  }
}

TEST(Psd, FullScaleSineSitsAtZeroDbfs) {
  const std::size_t n = 4096;
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = 7.5 + 8.0 * std::sin(2.0 * std::numbers::pi * 409.0 * k / n);
  const auto s = psd(std::span<const double>(x), Window::kRectangular);
  EXPECT_NEAR(s.dbfs[409], 0.0, 1e-9);
  EXPECT_EQ(s.peak_bin(), 409u);
}

TEST(Sndr, IdealFourBitQuantizerMatchesTheoryAndTimeDomain) {
  const std::size_t n = 4096;
  const std::size_t m = coherent_cycles(1e9, n, 100e6);
  const auto w = gen_sine(dbfs_to_amplitude(-0.5, 0.5), static_cast<double>(m) / n * 1e9, 1e9, n);
  const auto codes = as_double(quantize(w));
  const auto metrics = sndr_sfdr_enob(psd(std::span<const double>(codes), Window::kRectangular), m);
  // 6.02*4 + 1.76 = 25.84 dB for a full-scale tone.
  EXPECT_NEAR(metrics.sndr_db, 25.8, 0.6);
  EXPECT_NEAR(metrics.sndr_db, oracle::time_domain_sndr_db(codes, m), 0.1);
  EXPECT_NEAR(metrics.enob_bits, 4.0, 0.1);
  EXPECT_GT(metrics.sfdr_db, metrics.sndr_db);
}

TEST(Sndr, HannOnNonCoherentToneTracksCoherentValue) {
  const std::size_t n = 4096;
  const std::size_t m = coherent_cycles(1e9, n, 100e6);
  const double a = dbfs_to_amplitude(-0.5, 0.5);
  const auto coherent = quantize(gen_sine(a, static_cast<double>(m) / n * 1e9, 1e9, n));
  const auto reference = sndr_sfdr_enob(psd(coherent, Window::kRectangular), m);

  // 398.54 cycles: off-bin, and not a simple fraction of fs (100 MHz would make
  // the quantization error periodic and concentrate it in a few harmonics).
  const auto off_bin = quantize(gen_sine(a, 97.3e6, 1e9, n));
  const auto spectrum = psd(off_bin, Window::kHann);
  const auto windowed = sndr_sfdr_enob(spectrum, spectrum.peak_bin());
  EXPECT_NEAR(windowed.sndr_db, reference.sndr_db, 0.5);
}

TEST(Sndr, TimeDomainAgreementAcrossTones) {
  const std::size_t n = 4096;
  for (double target : {13e6, 100e6, 250e6, 499e6}) {
    const std::size_t m = coherent_cycles(1e9, n, target);
    const auto codes =
        as_double(quantize(gen_sine(dbfs_to_amplitude(-0.5, 0.5), static_cast<double>(m) / n * 1e9, 1e9, n)));
    const auto metrics = sndr_sfdr_enob(psd(std::span<const double>(codes), Window::kRectangular), m);
    EXPECT_NEAR(metrics.sndr_db, oracle::time_domain_sndr_db(codes, m), 0.1) << target;
  }
}

TEST(Sndr, NoiselessSingleBinCaps) {
  Spectrum s;
  s.power = {0.0, 0.0, 5.0, 0.0, 0.0};
  s.n = 8;
  const auto m = sndr_sfdr_enob(s, 2);
  EXPECT_EQ(m.sndr_db, kSndrCapDb);
  EXPECT_EQ(m.sfdr_db, kSndrCapDb);
}

TEST(Sndr, Errors) {
  Spectrum empty;
  EXPECT_THROW(sndr_sfdr_enob(empty, 1), Error);
  Spectrum s;
  s.power = {1.0, 1.0, 1.0};
  EXPECT_THROW(sndr_sfdr_enob(s, 0), Error);
}

TEST(Enob, TableValues) {
  EXPECT_NEAR(enob_from_sndr(22.3), 3.42, 0.015);
  EXPECT_NEAR(enob_from_sndr(22.3), 3.41196, 1e-5);
  EXPECT_NEAR(enob_from_sndr(21.8), 3.34, 0.015);
  EXPECT_NEAR(enob_from_sndr(21.8), 3.32890, 1e-5);
}

TEST(Fom, WaldenArithmetic) {
  EXPECT_NEAR(fom(700e-6, 3.42, 1e9) * 1e15, 65.40, 0.01);
  EXPECT_NEAR(fom(700e-6, 4.42, 1e9), fom(700e-6, 3.42, 1e9) / 2.0, 1e-30);
  EXPECT_NEAR(fom(2.5e-3, enob_from_sndr(23.8), 1.25e9) * 1e15, 158.10, 0.01);
  EXPECT_NEAR(fom(2.5e-3, enob_from_sndr(23.8), 1.25e9) * 1e15, 160.0, 0.02 * 160.0);
}

TEST(Fom, MonotoneAndLinear) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> p(1e-6, 1e-1), e(0.0, 12.0), f(1e6, 1e11);
  for (int trial = 0; trial < 1000; ++trial) {
    const double pw = p(rng), en = e(rng), fs = f(rng);
    ASSERT_LT(fom(pw, en + 0.01, fs), fom(pw, en, fs));
    ASSERT_LT(fom(pw, en, fs * 1.01), fom(pw, en, fs));
    ASSERT_NEAR(fom(3.0 * pw, en, fs), 3.0 * fom(pw, en, fs), 1e-12 * fom(3.0 * pw, en, fs));
  }
}

TEST(PowerLedger, DefaultSplit) {
  const auto l = power_ledger(700e-6);
  EXPECT_NEAR(l.th(), 70e-6, 1e-15);
  EXPECT_NEAR(l.comparators(), 175e-6, 1e-15);
  EXPECT_NEAR(l.clock(), 315e-6, 1e-15);
  EXPECT_NEAR(l.encoder(), 140e-6, 1e-15);
  EXPECT_NEAR(l.th_fraction + l.comparator_fraction + l.clock_fraction + l.encoder_fraction, 1.0, 1e-9);
}

TEST(PowerLedger, CustomAndInvalidFractions) {
  const std::array<double, 4> all_th{1.0, 0.0, 0.0, 0.0};
  EXPECT_EQ(power_ledger(1e-3, all_th).th(), 1e-3);
  EXPECT_EQ(power_ledger(1e-3, all_th).clock(), 0.0);
  const std::array<double, 4> short_sum{0.3, 0.3, 0.2, 0.1};
  try {
    power_ledger(1e-3, short_sum);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
  const std::array<double, 4> negative{1.2, -0.2, 0.0, 0.0};
  EXPECT_THROW(power_ledger(1e-3, negative), Error);
}

TEST(RoundTo, ReportPrecision) {
  EXPECT_EQ(round_to(22.3049, 2), 22.3);
  EXPECT_EQ(round_to(0.12345, 3), 0.123);
  EXPECT_EQ(round_to(-0.0004, 3), 0.0);
}

}  // namespace
