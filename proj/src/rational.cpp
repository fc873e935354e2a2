#include "ladderlab/rational.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>

#include "ladderlab/errors.hpp"

namespace ladderlab {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw numerical_error("rational overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw numerical_error("rational overflow");
  return out;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw usage_error("not a rational number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw usage_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g ? num / g : 0;
  den_ = g ? den / g : 1;
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw usage_error("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 12) throw usage_error("too many decimals in '" + std::string(text) + "'");
    const bool negative = !whole.empty() && whole.front() == '-';
    if (negative || (!whole.empty() && whole.front() == '+')) whole.remove_prefix(1);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    if (w < 0 || f < 0) throw usage_error("not a rational number: '" + std::string(text) + "'");
    const std::int64_t num = checked_add(checked_mul(w, scale), f);
    return Rational(negative ? -num : num, scale);
  }
  return Rational(parse_int(text));
}

std::int64_t Rational::to_integer() const {
  if (den_ != 1) throw usage_error("expected an integer, got " + str());
  return num_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(Rational a, Rational b) {
  return Rational(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                  checked_mul(a.den_, b.den_));
}

Rational operator-(Rational a, Rational b) { return a + (-b); }

Rational operator*(Rational a, Rational b) {
  return Rational(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
}

Rational operator/(Rational a, Rational b) {
  if (b.num_ == 0) throw numerical_error("rational division by zero");
  return Rational(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
}

std::strong_ordering operator<=>(Rational a, Rational b) {
  return checked_mul(a.num_, b.den_) <=> checked_mul(b.num_, a.den_);
}

}  // namespace ladderlab
