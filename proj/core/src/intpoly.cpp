#include "nichols/intpoly.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace nichols {

void ZPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ZPoly ZPoly::monomial(Int coeff, std::size_t deg) {
  if (coeff == 0) return {};
  std::vector<Int> v(deg + 1);
  v[deg] = std::move(coeff);
  return ZPoly(std::move(v));
}

const Int& ZPoly::coeff(std::size_t i) const {
  static const Int zero(0);
  return i < c_.size() ? c_[i] : zero;
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
  std::vector<Int> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < a.c_.size()) v[i] += a.c_[i];
    if (i < b.c_.size()) v[i] += b.c_[i];
  }
  return ZPoly(std::move(v));
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
  std::vector<Int> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < a.c_.size()) v[i] += a.c_[i];
    if (i < b.c_.size()) v[i] -= b.c_[i];
  }
  return ZPoly(std::move(v));
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.isZero() || b.isZero()) return {};
  std::vector<Int> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      v[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return ZPoly(std::move(v));
}

ZPoly ZPoly::operator-() const {
  std::vector<Int> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
  return ZPoly(std::move(v));
}

ZPoly ZPoly::mulScalar(const Int& s) const {
  if (s == 0) return {};
  std::vector<Int> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * s;
  return ZPoly(std::move(v));
}

ZPoly ZPoly::shifted(std::size_t k) const {
  if (isZero() || k == 0) return k == 0 ? *this : ZPoly{};
  std::vector<Int> v(c_.size() + k);
  for (std::size_t i = 0; i < c_.size(); ++i) v[i + k] = c_[i];
  return ZPoly(std::move(v));
}

Int ZPoly::content() const {
  Int g(0);
  for (const auto& x : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly ZPoly::primitivePart() const {
  if (isZero()) return {};
  Int g = content();
  if (lc() < 0) g = -g;
  std::vector<Int> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] / g;
  return ZPoly(std::move(v));
}

ZPoly ZPoly::remMonic(const ZPoly& m) const {
  if (m.isZero() || m.lc() != 1) throw std::logic_error("remMonic: divisor not monic");
  std::vector<Int> r = c_;
  long dm = m.degree();
  for (long i = static_cast<long>(r.size()) - 1; i >= dm; --i) {
    if (r[i] == 0) continue;
    Int f = r[i];
    for (long j = 0; j <= dm; ++j) r[i - dm + j] -= f * m.c_[j];
  }
  r.resize(std::min<std::size_t>(r.size(), dm));
  return ZPoly(std::move(r));
}

ZPoly ZPoly::divExact(const ZPoly& d) const {
  if (d.isZero()) throw std::logic_error("divExact by zero");
  if (isZero()) return {};
  long dd = d.degree(), dn = degree();
  if (dn < dd) throw std::logic_error("divExact: not divisible");
  std::vector<Int> r = c_;
  std::vector<Int> q(dn - dd + 1);
  for (long i = dn; i >= dd; --i) {
    if (r[i] == 0) continue;
    Int f = r[i] / d.lc();
    if (f * d.lc() != r[i]) throw std::logic_error("divExact: not divisible");
    q[i - dd] = f;
    for (long j = 0; j <= dd; ++j) r[i - dd + j] -= f * d.c_[j];
  }
  for (const auto& x : r)
    if (x != 0) throw std::logic_error("divExact: nonzero remainder");
  return ZPoly(std::move(q));
}

std::size_t ZPoly::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (const auto& x : c_) {
    h ^= mpz_get_ui(x.get_mpz_t()) + (mpz_sgn(x.get_mpz_t()) < 0 ? 0x9e37ull : 0);
    h *= 1099511628211ull;
  }
  return h;
}

std::string ZPoly::str(const std::string& var) const {
  if (isZero()) return "0";
  std::string out;
  for (long i = degree(); i >= 0; --i) {
    const Int& a = c_[i];
    if (a == 0) continue;
    bool first = out.empty();
    Int abs = a < 0 ? Int(-a) : a;
    if (!first) out += a < 0 ? " - " : " + ";
    else if (a < 0) out += "-";
    if (i == 0) {
      out += abs.get_str();
    } else {
      if (abs != 1) out += abs.get_str() + "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

// Primitive PRS gcd.
ZPoly gcd(const ZPoly& a, const ZPoly& b) {
  if (a.isZero()) return b.isZero() ? ZPoly{} : b.primitivePart().mulScalar(b.content() < 0 ? -b.content() : b.content());
  if (b.isZero()) return gcd(b, a);
  Int cg;
  mpz_gcd(cg.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
  ZPoly f = a.primitivePart(), g = b.primitivePart();
  if (f.degree() < g.degree()) std::swap(f, g);
  while (!g.isZero()) {
    // pseudo-remainder: lc(g)^(deg f - deg g + 1) * f  mod  g
    long delta = f.degree() - g.degree();
    Int scale = 1;
    for (long i = 0; i <= delta; ++i) scale *= g.lc();
    std::vector<Int> r(f.coeffs());
    for (auto& x : r) x *= scale;
    long dg = g.degree();
    for (long i = static_cast<long>(r.size()) - 1; i >= dg; --i) {
      if (r[i] == 0) continue;
      Int q = r[i] / g.lc();
      // exact by construction of the pseudo-remainder scaling
      for (long j = 0; j <= dg; ++j) r[i - dg + j] -= q * g.coeffs()[j];
    }
    r.resize(dg);
    ZPoly rem = ZPoly(std::move(r)).primitivePart();
    f = std::move(g);
    g = std::move(rem);
  }
  ZPoly res = f.primitivePart().mulScalar(cg);
  if (!res.isZero() && res.lc() < 0) res = -res;
  return res;
}

uint32_t eulerPhi(uint32_t n) {
  uint32_t result = n;
  for (uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

const ZPoly& cyclotomic(uint32_t n) {
  static std::mutex mu;
  static std::map<uint32_t, ZPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n == 0) throw std::invalid_argument("cyclotomic(0)");
  ZPoly result;
  if (n == 1) {
    result = ZPoly(std::vector<Int>{Int(-1), Int(1)});
  } else {
    // (x^n - 1) / prod_{d|n, d<n} Phi_d
    std::vector<Int> xn(n + 1);
    xn[0] = -1;
    xn[n] = 1;
    ZPoly acc(std::move(xn));
    for (uint32_t d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      auto dit = cache.find(d);
      const ZPoly* phid;
      if (dit != cache.end()) {
        phid = &dit->second;
      } else {
        // Divisors of d are divisors of n below d, so they are already cached
        // by the ascending loop; build Phi_d inline without re-locking.
        ZPoly accd;
        if (d == 1) {
          accd = ZPoly(std::vector<Int>{Int(-1), Int(1)});
        } else {
          std::vector<Int> xd(d + 1);
          xd[0] = -1;
          xd[d] = 1;
          accd = ZPoly(std::move(xd));
          for (uint32_t e = 1; e < d; ++e) {
            if (d % e != 0) continue;
            accd = accd.divExact(cache.at(e));
          }
        }
        phid = &cache.emplace(d, std::move(accd)).first->second;
      }
      acc = acc.divExact(*phid);
    }
    result = std::move(acc);
  }
  return cache.emplace(n, std::move(result)).first->second;
}

// ---------------------------------------------------------------------------

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::fromZ(const ZPoly& p) {
  std::vector<Rat> v(p.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rat(p.coeffs()[i]);
  return QPoly(std::move(v));
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < a.c_.size()) v[i] += a.c_[i];
    if (i < b.c_.size()) v[i] += b.c_[i];
  }
  return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < a.c_.size()) v[i] += a.c_[i];
    if (i < b.c_.size()) v[i] -= b.c_[i];
  }
  return QPoly(std::move(v));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.isZero() || b.isZero()) return {};
  std::vector<Rat> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return QPoly(std::move(v));
}

QPoly QPoly::mulScalar(const Rat& s) const {
  if (s == 0) return {};
  std::vector<Rat> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * s;
  return QPoly(std::move(v));
}

void QPoly::divRem(const QPoly& d, QPoly& q, QPoly& r) const {
  if (d.isZero()) throw std::logic_error("QPoly divRem by zero");
  std::vector<Rat> rem = c_;
  long dd = d.degree();
  long dn = degree();
  std::vector<Rat> quot(dn >= dd ? dn - dd + 1 : 0);
  for (long i = dn; i >= dd; --i) {
    if (rem[i] == 0) continue;
    Rat f = rem[i] / d.lc();
    quot[i - dd] = f;
    for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.c_[j];
  }
  rem.resize(std::min<long>(static_cast<long>(rem.size()), dd < 0 ? 0 : dd));
  q = QPoly(std::move(quot));
  r = QPoly(std::move(rem));
}

void QPoly::clearDenominators(ZPoly& num, Int& den) const {
  den = 1;
  for (const auto& x : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
  std::vector<Int> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    Rat s = c_[i] * den;
    v[i] = s.get_num();
  }
  num = ZPoly(std::move(v));
}

QXgcd xgcd(const QPoly& a, const QPoly& b) {
  QPoly r0 = a, r1 = b;
  QPoly u0(std::vector<Rat>{Rat(1)}), u1;
  QPoly v0, v1(std::vector<Rat>{Rat(1)});
  while (!r1.isZero()) {
    QPoly q, r;
    r0.divRem(r1, q, r);
    QPoly u2 = u0 - q * u1;
    QPoly v2 = v0 - q * v1;
    r0 = std::move(r1); r1 = std::move(r);
    u0 = std::move(u1); u1 = std::move(u2);
    v0 = std::move(v1); v1 = std::move(v2);
  }
  if (!r0.isZero()) {
    Rat inv = 1 / r0.lc();
    r0 = r0.mulScalar(inv);
    u0 = u0.mulScalar(inv);
    v0 = v0.mulScalar(inv);
  }
  return {std::move(r0), std::move(u0), std::move(v0)};
}

}  // namespace nichols
