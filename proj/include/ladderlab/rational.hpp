#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ladderlab {

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Quantum labels on the factorization lattice move in half
/// units, so doubles are not good enough for lattice bookkeeping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Accepts "3", "-1/2", "0.5", "1.25".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const { return den_ == 1; }
  /// True for integers and odd multiples of 1/2.
  bool is_half_integer() const { return den_ == 1 || den_ == 2; }
  std::int64_t to_integer() const;  // throws unless is_integer()

  Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }
  std::string str() const;

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(Rational o) { return *this = *this + o; }
  Rational& operator-=(Rational o) { return *this = *this - o; }

  friend bool operator==(Rational a, Rational b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend std::strong_ordering operator<=>(Rational a, Rational b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline const Rational kHalf{1, 2};

/// Label pair (n, l) of a state on the factorization lattice.
struct QuantumNumbers {
  Rational n;
  Rational l;

  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
  friend auto operator<=>(const QuantumNumbers& a, const QuantumNumbers& b) {
    if (auto c = a.n <=> b.n; c != 0) return c;
    return a.l <=> b.l;
  }
  QuantumNumbers operator+(const QuantumNumbers& d) const { return {n + d.n, l + d.l}; }
  QuantumNumbers operator-(const QuantumNumbers& d) const { return {n - d.n, l - d.l}; }
  std::string str() const { return "(" + n.str() + "," + l.str() + ")"; }
};

}  // namespace ladderlab
