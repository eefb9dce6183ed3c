#include "winsum/closeness.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <string_view>

namespace winsum {

namespace {

// Parses the shortest round-trip decimal of `v` (0 < v < 1) into b/10^k.
bool decimal_fraction(double v, std::int64_t& num, std::int64_t& den) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  if (res.ec != std::errc{}) return false;
  std::string_view s(buf, static_cast<std::size_t>(res.ptr - buf));
  const auto e_pos = s.find('e');
  if (e_pos == std::string_view::npos) return false;
  int exponent = 0;
  std::from_chars(s.data() + e_pos + 1 + (s[e_pos + 1] == '+' ? 1 : 0), s.data() + s.size(),
                  exponent);
  std::int64_t mantissa = 0;
  int frac_digits = 0;
  bool after_point = false;
  for (char c : s.substr(0, e_pos)) {
    if (c == '.') {
      after_point = true;
      continue;
    }
    if (mantissa > 100'000'000'000'000'000) return false;
    mantissa = mantissa * 10 + (c - '0');
    if (after_point) ++frac_digits;
  }
  const int scale = frac_digits - exponent;  // v = mantissa / 10^scale
  if (scale < 0 || scale > 18) return false;
  std::int64_t pow10 = 1;
  for (int i = 0; i < scale; ++i) pow10 *= 10;
  const std::int64_t g = std::gcd(mantissa, pow10);
  num = mantissa / g;
  den = pow10 / g;
  return true;
}

}  // namespace

Closeness::Closeness(double eps) : eps_(eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("closeness factor must lie in (0, 1)");
  if (!decimal_fraction(eps, num_, den_)) {
    num_ = 0;
    den_ = 0;
  }
}

bool Closeness::at_least(Value y, Value x) const noexcept {
  if (den_ != 0) {
    const __int128 lhs = static_cast<__int128>(den_) * y;
    const __int128 rhs = static_cast<__int128>(den_ - num_) * x;
    return lhs >= rhs;
  }
  if (x == 0) return y >= 0;
  const long double keep = 1.0L - static_cast<long double>(eps_);
  const long double bound = keep * static_cast<long double>(x);
  return static_cast<long double>(y) >= bound * (1.0L + 1e-15L) + 1e-9L;
}

bool Closeness::within(Value diff, Value ref) const noexcept {
  const __int128 d = diff < 0 ? -static_cast<__int128>(diff) : diff;
  const __int128 r = ref < 0 ? -static_cast<__int128>(ref) : ref;
  if (den_ != 0) return den_ * d <= num_ * r;
  return static_cast<long double>(d) <=
         static_cast<long double>(eps_) * static_cast<long double>(r) * (1.0L - 1e-15L);
}

}  // namespace winsum
