#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "nichols/intpoly.hpp"

namespace nichols {

enum class FieldMode : uint8_t { GenericQ, Cyclotomic };

/// Coefficient field: Q(q) with q transcendental, or Q[q]/Phi_N with q a
/// distinguished primitive N-th root of unity.
struct FieldSpec {
  FieldMode mode = FieldMode::GenericQ;
  uint32_t n = 0;  // N in Cyclotomic mode

  static FieldSpec generic() { return {FieldMode::GenericQ, 0}; }
  static FieldSpec cyclotomic(uint32_t n) {
    if (n < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
    return {FieldMode::Cyclotomic, n};
  }
  bool operator==(const FieldSpec& o) const { return mode == o.mode && n == o.n; }
  std::string str() const;
};

struct ScalarError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(std::size_t p, const std::string& msg)
      : std::runtime_error(msg + " (at position " + std::to_string(p) + ")"), pos(p) {}
};

/// Exact field element in canonical form.
///
/// GenericQ: reduced fraction num/den of integer polynomials, gcd(num,den) = 1
/// in Z[q] (contents included), lc(den) > 0.
/// Cyclotomic(N): num an integer polynomial of degree < phi(N) (reduced mod
/// Phi_N), den a positive integer with gcd(content(num), den) = 1.
///
/// Canonical form is unique, so operator== is representational equality.
/// Values are immutable after construction and freely shareable across threads.
class Fq {
 public:
  Fq() : spec_{FieldMode::GenericQ, 0}, num_(), den_(1) {}  // zero

  static Fq zero(FieldSpec fs) { return Fq(fs, ZPoly{}, ZPoly(1)); }
  static Fq one(FieldSpec fs) { return Fq(fs, ZPoly(1), ZPoly(1)); }
  static Fq q(FieldSpec fs) { return Fq(fs, ZPoly::monomial(Int(1), 1), ZPoly(1)); }
  static Fq qpow(FieldSpec fs, long e);
  static Fq integer(FieldSpec fs, long v) { return Fq(fs, ZPoly(v), ZPoly(1)); }
  static Fq integer(FieldSpec fs, Int v) { return Fq(fs, ZPoly(std::move(v)), ZPoly(1)); }
  static Fq rational(FieldSpec fs, Int num, Int den);
  static Fq fromFraction(FieldSpec fs, ZPoly num, ZPoly den);

  const FieldSpec& spec() const { return spec_; }
  bool isZero() const { return num_.isZero(); }
  bool isOne() const { return num_.isOne() && den_.isOne(); }
  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }

  friend Fq operator+(const Fq& a, const Fq& b);
  friend Fq operator-(const Fq& a, const Fq& b);
  friend Fq operator*(const Fq& a, const Fq& b);
  friend Fq operator/(const Fq& a, const Fq& b);
  Fq operator-() const;
  Fq inv() const;
  Fq pow(long e) const;
  Fq& operator+=(const Fq& o) { *this = *this + o; return *this; }
  Fq& operator-=(const Fq& o) { *this = *this - o; return *this; }
  Fq& operator*=(const Fq& o) { *this = *this * o; return *this; }
  Fq& operator/=(const Fq& o) { *this = *this / o; return *this; }

  friend bool operator==(const Fq& a, const Fq& b);
  friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

  /// Rational constant view; nullopt when q genuinely appears.
  std::optional<Rat> asRational() const;

  std::size_t hash() const;
  std::string str() const;

 private:
  Fq(FieldSpec fs, ZPoly num, ZPoly den);
  void normalize();
  static FieldSpec join(const Fq& a, const Fq& b);

  FieldSpec spec_;
  ZPoly num_, den_;
};

/// Least n >= 1 with x^n = 1, or nullopt for infinite order. x must be nonzero.
std::optional<uint32_t> mult_order(const Fq& x);

/// 1 + x + ... + x^{n-1}; q_number(0, x) = 0.
Fq q_number(uint32_t n, const Fq& x);

/// (n)_x! = (n)_x (n-1)_x ... (1)_x.
Fq q_factorial(uint32_t n, const Fq& x);

/// Gaussian binomial via the Pascal recursion. Requires k <= n.
Fq q_binomial(uint32_t n, uint32_t k, const Fq& x);

/// Scalar grammar parser. Core grammar:
///   expr := term (('+'|'-') term)*
///   term := [rat '*'] 'q' ['^' int] | rat
///   rat  := ['-'] int ['/' posint]
/// accepted verbatim; parenthesized subexpressions and '/' between factors are
/// accepted as a superset so every canonical printout parses back.
Fq parse_scalar(const std::string& text, FieldSpec fs);

}  // namespace nichols
