#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "scope/errors.hpp"

namespace scope {

// Fixed-point money in integer micro-cents (1e-6 cent). Billing arithmetic
// must be reproducible across runs and platforms, so cost terms are computed
// as (micro-cents x real factor) rounded once per step, nearest / half away
// from zero. Sums and comparisons are exact integer operations.
class Money {
 public:
  static constexpr std::int64_t kMicroPerCent = 1'000'000;

  constexpr Money() = default;

  static constexpr Money from_micro(std::int64_t micro) { return Money(micro); }

  static Money round_cents(long double cents) {
    return Money(llroundl(cents * static_cast<long double>(kMicroPerCent)));
  }

  // Exact parse of a decimal cent amount ("16.64", "0.004659"). At most six
  // fractional digits; anything else is a ConfigError.
  static Money parse(std::string_view text);

  constexpr std::int64_t micro() const { return micro_; }
  double cents() const { return static_cast<double>(micro_) / kMicroPerCent; }
  constexpr bool negative() const { return micro_ < 0; }

  // Canonical decimal rendering, trailing fractional zeros stripped.
  std::string str() const;

  // One scaling step: round(this * factor) under the fixed rounding rule.
  Money scaled(long double factor) const {
    return Money(llroundl(static_cast<long double>(micro_) * factor));
  }

  constexpr Money operator+(Money o) const { return Money(micro_ + o.micro_); }
  constexpr Money operator-(Money o) const { return Money(micro_ - o.micro_); }
  constexpr Money& operator+=(Money o) {
    micro_ += o.micro_;
    return *this;
  }
  constexpr auto operator<=>(const Money&) const = default;

 private:
  constexpr explicit Money(std::int64_t micro) : micro_(micro) {}
  std::int64_t micro_ = 0;
};

inline Money Money::parse(std::string_view text) {
  if (text.empty()) throw ConfigError("empty money value");
  bool neg = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    i = 1;
  }
  std::int64_t whole = 0, frac = 0;
  int frac_digits = 0;
  bool any_digit = false, in_frac = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (in_frac) throw ConfigError("bad money value: " + std::string(text));
      in_frac = true;
      continue;
    }
    if (c < '0' || c > '9') throw ConfigError("bad money value: " + std::string(text));
    any_digit = true;
    if (in_frac) {
      if (++frac_digits > 6)
        throw ConfigError("money value has more than 6 decimal places: " + std::string(text));
      frac = frac * 10 + (c - '0');
    } else {
      whole = whole * 10 + (c - '0');
    }
  }
  if (!any_digit) throw ConfigError("bad money value: " + std::string(text));
  for (int d = frac_digits; d < 6; ++d) frac *= 10;
  std::int64_t micro = whole * kMicroPerCent + frac;
  return Money(neg ? -micro : micro);
}

inline std::string Money::str() const {
  std::int64_t m = micro_;
  std::string sign;
  if (m < 0) {
    sign = "-";
    m = -m;
  }
  std::int64_t whole = m / kMicroPerCent;
  std::int64_t frac = m % kMicroPerCent;
  std::string out = sign + std::to_string(whole);
  if (frac != 0) {
    std::string f = std::to_string(frac);
    f.insert(f.begin(), 6 - f.size(), '0');
    while (f.back() == '0') f.pop_back();
    out += "." + f;
  }
  return out;
}

}  // namespace scope
