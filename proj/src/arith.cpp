#include "fibcomm/arith.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fibcomm {

Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of a negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
      }
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw std::invalid_argument("rational '" + std::string(text) + "' needs a positive denominator");
  return Rational(parse_int(text.substr(0, slash)), den);
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::reciprocal() const {
  if (is_zero()) throw std::domain_error("reciprocal of zero");
  return Rational(mpq_class(1) / q_);
}

Integer Rational::floor() const {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Integer squarefree_part(const Integer& n) {
  if (n < 1) throw std::invalid_argument("squarefree_part needs n >= 1");
  Integer rest = n;
  Integer result = 1;
  for (Integer p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e % 2 == 1) result *= p;
  }
  return result * rest;
}

// ---------------------------------------------------------------------------
// QuadraticNumber

namespace {

bool is_squarefree_at_least_two(const Integer& d) { return d >= 2 && squarefree_part(d) == d; }

}  // namespace

QuadraticNumber::QuadraticNumber(Integer d, Rational a, Rational b)
    : d_(std::move(d)), a_(std::move(a)), b_(std::move(b)) {
  if (d_ < 2) throw std::invalid_argument("quadratic field needs d >= 2");
}

void QuadraticNumber::require_same_field(const QuadraticNumber& o) const {
  if (d_ != o.d_ && !is_rational() && !o.is_rational()) {
    throw std::invalid_argument("quadratic numbers from different fields");
  }
}

QuadraticNumber QuadraticNumber::operator+(const QuadraticNumber& o) const {
  require_same_field(o);
  return {is_rational() ? o.d_ : d_, a_ + o.a_, b_ + o.b_};
}

QuadraticNumber QuadraticNumber::operator-(const QuadraticNumber& o) const { return *this + (-o); }

QuadraticNumber QuadraticNumber::operator*(const QuadraticNumber& o) const {
  require_same_field(o);
  const Integer& d = is_rational() ? o.d_ : d_;
  return {d, a_ * o.a_ + Rational(d) * b_ * o.b_, a_ * o.b_ + b_ * o.a_};
}

QuadraticNumber QuadraticNumber::operator/(const QuadraticNumber& o) const {
  Rational n = o.norm();
  if (n.is_zero()) throw std::domain_error("division by zero in quadratic field");
  QuadraticNumber t = *this * o.conjugate();
  return {t.d_, t.a_ / n, t.b_ / n};
}

QuadraticNumber QuadraticNumber::pow(unsigned long k) const {
  QuadraticNumber result(d_, 1, 0);
  QuadraticNumber base = *this;
  while (k > 0) {
    if (k & 1UL) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

int QuadraticNumber::sign() const {
  // sign(a + b√d) from the signs of a and b and the comparison a² vs d·b².
  int sa = a_.sign();
  int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Rational lhs = a_ * a_;
  Rational rhs = Rational(d_) * b_ * b_;
  return lhs > rhs ? sa : sb;
}

bool QuadraticNumber::is_algebraic_integer() const {
  Rational t = trace();
  Rational n = norm();
  return t.is_integer() && n.is_integer();
}

std::strong_ordering QuadraticNumber::compare(const QuadraticNumber& o) const {
  int s = (*this - o).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool QuadraticNumber::operator==(const QuadraticNumber& o) const {
  if (is_rational() && o.is_rational()) return a_ == o.a_;
  return d_ == o.d_ && a_ == o.a_ && b_ == o.b_;
}

double QuadraticNumber::to_double() const {
  return a_.to_double() + b_.to_double() * std::sqrt(d_.get_d());
}

std::string QuadraticNumber::str() const {
  std::ostringstream os;
  // (p + q√d)/r with a common denominator reads better than two fractions.
  Integer den = lcm(a_.den(), b_.den());
  Integer p = a_.num() * (den / a_.den());
  Integer q = b_.num() * (den / b_.den());
  std::string root = "sqrt(" + d_.get_str() + ")";
  std::string body;
  if (q == 0) {
    body = p.get_str();
  } else {
    Integer aq = abs(q);
    std::string qs = (aq == 1) ? root : aq.get_str() + "*" + root;
    if (p == 0) {
      body = (q < 0 ? "-" : "") + qs;
    } else {
      body = p.get_str() + (q < 0 ? "-" : "+") + qs;
    }
  }
  if (den == 1) return body;
  os << "(" << body << ")/" << den;
  return os.str();
}

// ---------------------------------------------------------------------------
// QuadraticUnit

QuadraticUnit::QuadraticUnit(Integer d, Rational a, Rational b)
    : QuadraticUnit(QuadraticNumber(std::move(d), std::move(a), std::move(b))) {}

QuadraticUnit::QuadraticUnit(const QuadraticNumber& x) : value_(x), norm_(0) {
  if (!is_squarefree_at_least_two(x.d())) {
    throw std::invalid_argument("unit field discriminant must be squarefree >= 2, got " + x.d().get_str());
  }
  if (!x.is_algebraic_integer()) throw std::invalid_argument(x.str() + " is not an algebraic integer");
  Rational n = x.norm();
  if (n != 1 && n != -1) throw std::invalid_argument(x.str() + " has norm " + n.str() + ", not a unit");
  if (x.compare(QuadraticNumber(x.d(), 1, 0)) != std::strong_ordering::greater) {
    throw std::invalid_argument(x.str() + " does not exceed 1");
  }
  norm_ = n.sign();
}

QuadraticUnit QuadraticUnit::pow(unsigned long k) const {
  if (k == 0) throw std::invalid_argument("unit power must be positive");
  return QuadraticUnit(value_.pow(k));
}

double QuadraticUnit::log() const { return std::log(value_.to_double()); }

QuadraticUnit fundamental_unit(const Integer& d) {
  if (!is_squarefree_at_least_two(d)) {
    throw std::invalid_argument("fundamental_unit needs squarefree d >= 2, got " + d.get_str());
  }
  // Expand θ = (P0 + √d)/Q0 with Q0 | d - P0². Complete quotients from index 1
  // on are reduced, so the expansion is purely periodic from there. With k the
  // period length, ε = p_{k-1} - q_{k-1}·θ̄.
  const bool one_mod_four = (d % 4 == 1);
  const Integer P0 = one_mod_four ? 1 : 0;
  const Integer Q0 = one_mod_four ? 2 : 1;
  const Integer s = isqrt(d);

  Integer P = P0;
  Integer Q = Q0;
  Integer a = (P + s) / Q;
  // Convergents p_{-1}=1, p_{-2}=0; q_{-1}=0, q_{-2}=1.
  Integer p_prev = 1, p = a;
  Integer q_prev = 0, q = 1;

  auto step = [&] {
    P = a * Q - P;
    Q = (d - P * P) / Q;
    a = (P + s) / Q;
  };

  step();
  const Integer P1 = P;
  const Integer Q1 = Q;
  for (;;) {
    // State (P, Q) describes x_i; check whether x_{i+1} closes the period.
    Integer pa = a;
    step();
    if (P == P1 && Q == Q1) break;
    Integer pn = pa * p + p_prev;
    Integer qn = pa * q + q_prev;
    p_prev = p;
    p = pn;
    q_prev = q;
    q = qn;
  }
  // θ̄ = (P0 - √d)/Q0.
  Rational conj_a(P0, Q0);
  Rational conj_b(Integer(-1), Q0);
  QuadraticNumber eps(d, Rational(p) - Rational(q) * conj_a, -Rational(q) * conj_b);
  return QuadraticUnit(eps);
}

unsigned long unit_exponent(const QuadraticUnit& u) {
  const QuadraticUnit eps = fundamental_unit(u.d());
  const QuadraticNumber one(u.d(), 1, 0);
  QuadraticNumber x = u.value();
  unsigned long k = 0;
  // Each division strictly decreases x; the loop stops once x ≤ 1.
  while (x.compare(one) == std::strong_ordering::greater) {
    x = x / eps.value();
    ++k;
  }
  if (!(x == one)) throw std::logic_error("unit " + u.str() + " is not a power of " + eps.str());
  return k;
}

std::optional<Rational> unit_log_ratio(const QuadraticUnit& u, const QuadraticUnit& v) {
  if (u.d() != v.d()) return std::nullopt;
  return Rational(Integer(unit_exponent(u)), Integer(unit_exponent(v)));
}

}  // namespace fibcomm
