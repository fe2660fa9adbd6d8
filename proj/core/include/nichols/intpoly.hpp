#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace nichols {

using Int = mpz_class;
using Rat = mpq_class;

/// Dense univariate polynomial over Z, little-endian coefficients,
/// normalized so the leading coefficient is nonzero (zero = empty vector).
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(long v) { if (v != 0) c_.emplace_back(v); }
  explicit ZPoly(Int v) { if (v != 0) c_.push_back(std::move(v)); }
  explicit ZPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

  static ZPoly monomial(Int coeff, std::size_t deg);

  bool isZero() const { return c_.empty(); }
  bool isOne() const { return c_.size() == 1 && c_[0] == 1; }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const Int& coeff(std::size_t i) const;
  const Int& lc() const { return c_.back(); }
  const std::vector<Int>& coeffs() const { return c_; }
  bool isConstant() const { return c_.size() <= 1; }
  /// True when exactly one coefficient is nonzero.
  bool isMonomial() const { return c_.size() >= 1; }

  friend ZPoly operator+(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator-(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  ZPoly operator-() const;
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }

  ZPoly mulScalar(const Int& s) const;
  /// Multiply by x^k.
  ZPoly shifted(std::size_t k) const;

  /// gcd of |coefficients|; 0 for the zero polynomial.
  Int content() const;
  ZPoly primitivePart() const;

  /// Remainder of this modulo a monic divisor (exact over Z).
  ZPoly remMonic(const ZPoly& monic) const;
  /// Exact division; aborts if not divisible.
  ZPoly divExact(const ZPoly& d) const;

  std::size_t hash() const;
  std::string str(const std::string& var = "q") const;

 private:
  void trim();
  std::vector<Int> c_;
};

/// UFD gcd in Z[x] (content folded in), normalized to positive leading coefficient.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

/// N-th cyclotomic polynomial (cached, thread-safe).
const ZPoly& cyclotomic(uint32_t n);

/// Euler phi.
uint32_t eulerPhi(uint32_t n);

/// Polynomials over Q; only what cyclotomic inversion and parsing need.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static QPoly fromZ(const ZPoly& p);

  bool isZero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const Rat& lc() const { return c_.back(); }
  const std::vector<Rat>& coeffs() const { return c_; }

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  QPoly mulScalar(const Rat& s) const;

  /// Division with remainder: *this = q*d + r, deg r < deg d.
  void divRem(const QPoly& d, QPoly& q, QPoly& r) const;

  /// Split into integer polynomial and positive common denominator.
  void clearDenominators(ZPoly& num, Int& den) const;

 private:
  void trim();
  std::vector<Rat> c_;
};

/// Extended gcd over Q[x]: returns (g, u, v) with u*a + v*b = g, g monic or zero.
struct QXgcd {
  QPoly g, u, v;
};
QXgcd xgcd(const QPoly& a, const QPoly& b);

}  // namespace nichols
