#pragma once

// Exact arithmetic: arbitrary-precision integers and rationals, elements of
// real quadratic fields, and the units of their maximal orders.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace fibcomm {

using Integer = mpz_class;

Integer isqrt(const Integer& n);
Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

/// Reduced fraction with positive denominator. Zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int n) : q_(n) {}   // NOLINT(google-explicit-constructor)
  Rational(const Integer& n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den);

  /// Accepts "p", "-p", "p/q"; anything else throws std::invalid_argument.
  static Rational parse(std::string_view text);

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  Rational abs() const;
  Rational reciprocal() const;
  Integer floor() const;

  std::string str() const;
  double to_double() const { return q_.get_d(); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return q_; }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Largest squarefree d with n = d·m². Requires n ≥ 1.
Integer squarefree_part(const Integer& n);

/// a + b·√d in Q(√d), d a squarefree integer ≥ 2. Values with b = 0 are
/// rationals and compare equal across fields.
class QuadraticNumber {
 public:
  QuadraticNumber(Integer d, Rational a, Rational b = 0);

  const Integer& d() const { return d_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  QuadraticNumber conjugate() const { return {d_, a_, -b_}; }
  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }
  Rational trace() const { return a_ + a_; }
  int sign() const;
  bool is_rational() const { return b_.is_zero(); }
  bool is_algebraic_integer() const;

  QuadraticNumber operator-() const { return {d_, -a_, -b_}; }
  QuadraticNumber operator+(const QuadraticNumber& o) const;
  QuadraticNumber operator-(const QuadraticNumber& o) const;
  QuadraticNumber operator*(const QuadraticNumber& o) const;
  QuadraticNumber operator/(const QuadraticNumber& o) const;
  QuadraticNumber pow(unsigned long k) const;

  /// Exact comparison; operands must lie in the same field.
  std::strong_ordering compare(const QuadraticNumber& o) const;
  bool operator==(const QuadraticNumber& o) const;

  double to_double() const;
  std::string str() const;

 private:
  void require_same_field(const QuadraticNumber& o) const;
  Integer d_;
  Rational a_;
  Rational b_;
};

/// A unit u > 1 of the ring of integers of Q(√d), stored canonically as
/// a + b√d with b > 0.
class QuadraticUnit {
 public:
  /// Throws std::invalid_argument unless the value is an algebraic integer
  /// of norm ±1 that exceeds 1 and d is squarefree ≥ 2.
  QuadraticUnit(Integer d, Rational a, Rational b);
  explicit QuadraticUnit(const QuadraticNumber& x);

  const Integer& d() const { return value_.d(); }
  const Rational& a() const { return value_.a(); }
  const Rational& b() const { return value_.b(); }
  int norm() const { return norm_; }
  const QuadraticNumber& value() const { return value_; }

  QuadraticUnit pow(unsigned long k) const;
  double log() const;
  std::string str() const { return value_.str(); }

  bool operator==(const QuadraticUnit& o) const { return d() == o.d() && value_ == o.value_; }

 private:
  QuadraticNumber value_;
  int norm_;
};

/// Smallest unit > 1 of the maximal order of Q(√d), from the period of the
/// continued fraction of √d (d ≢ 1 mod 4) or (1+√d)/2 (d ≡ 1 mod 4).
QuadraticUnit fundamental_unit(const Integer& d);

/// The exponent k ≥ 1 with u = ε^k for the fundamental unit ε of u's field.
unsigned long unit_exponent(const QuadraticUnit& u);

/// log(u)/log(v) when it is rational, i.e. when u and v are powers of one
/// fundamental unit; nullopt otherwise.
std::optional<Rational> unit_log_ratio(const QuadraticUnit& u, const QuadraticUnit& v);

}  // namespace fibcomm
