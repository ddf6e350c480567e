#include "ffadc/digital.hpp"

#include <cmath>
#include <ostream>

#include "ffadc/error.hpp"

namespace ffadc {

ThermometerWord ThermometerWord::from_string(std::string_view text) {
  if (text.size() != 7)
    throw Error(ErrorKind::kInvalidRequest, "thermometer word needs 7 characters");
  ThermometerWord w;
  for (std::size_t i = 0; i < 7; ++i) {
    if (text[i] != '0' && text[i] != '1')
      throw Error(ErrorKind::kInvalidRequest, "thermometer word must be 0/1 only");
    w.bits[i] = text[i] == '1';
  }
  return w;
}

ThermometerWord ThermometerWord::from_mask(unsigned mask) {
  ThermometerWord w;
  for (std::size_t i = 0; i < 7; ++i) w.bits[i] = (mask >> i) & 1u;
  return w;
}

std::string ThermometerWord::to_string() const {
  std::string s(7, '0');
  for (std::size_t i = 0; i < 7; ++i) s[i] = bits[i] ? '1' : '0';
  return s;
}

unsigned ThermometerWord::mask() const {
  unsigned m = 0;
  for (std::size_t i = 0; i < 7; ++i) m |= static_cast<unsigned>(bits[i]) << i;
  return m;
}

bool ThermometerWord::is_clean() const {
  for (std::size_t i = 0; i + 1 < 7; ++i) {
    if (bits[i] < bits[i + 1]) return false;
  }
  return true;
}

int ThermometerWord::ones() const {
  int n = 0;
  for (auto b : bits) n += b;
  return n;
}

std::string AdcCode::gray_string() const {
  std::string s(4, '0');
  for (std::size_t i = 0; i < 4; ++i) s[i] = gray[i] ? '1' : '0';
  return s;
}

ThermometerWord bubble_correct(const ThermometerWord& raw) {
  ThermometerWord out;
  for (std::size_t i = 0; i < 7; ++i) {
    const int below = i == 0 ? 1 : raw.bits[i - 1];
    const int above = i == 6 ? 0 : raw.bits[i + 1];
    out.bits[i] = (below + raw.bits[i] + above) >= 2;
  }
  return out;
}

int therm_to_count(const ThermometerWord& clean) {
  if (!clean.is_clean())
    throw Error(ErrorKind::kResidualBubble, "residual bubble in thermometer word " + clean.to_string());
  return clean.ones();
}

AdcCode assemble_code(int sign_bit, int count) {
  if (count < 0 || count > 7) throw Error(ErrorKind::kInvalidRequest, "flash count out of range");
  AdcCode c;
  c.value = sign_bit ? 8 + count : 7 - count;
  c.gray = bin_to_gray(c.value);
  return c;
}

GrayBits bin_to_gray(int value) {
  if (value < 0 || value > 15) throw Error(ErrorKind::kInvalidRequest, "code out of range");
  const unsigned g = static_cast<unsigned>(value) ^ (static_cast<unsigned>(value) >> 1);
  return {static_cast<std::uint8_t>((g >> 3) & 1u), static_cast<std::uint8_t>((g >> 2) & 1u),
          static_cast<std::uint8_t>((g >> 1) & 1u), static_cast<std::uint8_t>(g & 1u)};
}

int gray_to_bin(const GrayBits& gray) {
  unsigned b = 0;
  unsigned acc = 0;
  for (auto bit : gray) {
    if (bit > 1) throw Error(ErrorKind::kInvalidRequest, "gray bits must be 0/1");
    acc ^= bit;
    b = (b << 1) | acc;
  }
  return static_cast<int>(b);
}

int oracle_quantize(double v_diff, double full_scale) {
  const double lsb = full_scale / 16.0;
  int code = 0;
  for (int i = 1; i <= 15; ++i) {
    const double threshold = (i - 8) * lsb;
    const bool above = threshold >= 0.0 ? v_diff > threshold : v_diff >= threshold;
    code += above;
  }
  return code;
}

void write_codes_csv(std::ostream& out, std::span<const AdcCode> codes) {
  out << "index,value,gray_bits\n";
  for (std::size_t k = 0; k < codes.size(); ++k) {
    out << k << ',' << codes[k].value << ',' << codes[k].gray_string() << '\n';
  }
}

}  // namespace ffadc
