#include "nichols/scalars.hpp"

#include <cctype>
#include <map>
#include <numeric>

namespace nichols {

std::string FieldSpec::str() const {
  return mode == FieldMode::GenericQ ? "generic" : "cyclotomic(" + std::to_string(n) + ")";
}

Fq::Fq(FieldSpec fs, ZPoly num, ZPoly den) : spec_(fs), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

FieldSpec Fq::join(const Fq& a, const Fq& b) {
  if (a.isZero() && a.spec_.n == 0 && a.spec_.mode == FieldMode::GenericQ) return b.spec_;
  if (b.isZero() && b.spec_.n == 0 && b.spec_.mode == FieldMode::GenericQ) return a.spec_;
  if (!(a.spec_ == b.spec_)) throw ScalarError("field spec mismatch: " + a.spec_.str() + " vs " + b.spec_.str());
  return a.spec_;
}

namespace {

// lock-free per-thread view of the cyclotomic modulus table
const ZPoly& cyclotomicCached(uint32_t n) {
  thread_local std::map<uint32_t, const ZPoly*> local;
  auto it = local.find(n);
  if (it != local.end()) return *it->second;
  const ZPoly& p = cyclotomic(n);
  local.emplace(n, &p);
  return p;
}

}  // namespace

void Fq::normalize() {
  if (den_.isZero()) throw ScalarError("zero denominator");
  if (spec_.mode == FieldMode::Cyclotomic) {
    const ZPoly& phi = cyclotomicCached(spec_.n);
    if (num_.degree() >= phi.degree()) num_ = num_.remMonic(phi);
    if (!den_.isConstant()) {
      // reduce a polynomial denominator by inverting it mod Phi_N
      Fq d(spec_, den_, ZPoly(1));
      Fq n(spec_, num_, ZPoly(1));
      *this = n * d.inv();
      return;
    }
    if (num_.isZero()) {
      den_ = ZPoly(1);
      return;
    }
    Int dc = den_.coeff(0);
    if (dc == 1) return;
    if (dc < 0) {
      num_ = -num_;
      dc = -dc;
    }
    if (dc != 1) {
      Int g;
      mpz_gcd(g.get_mpz_t(), num_.content().get_mpz_t(), dc.get_mpz_t());
      if (g > 1) {
        std::vector<Int> v(num_.coeffs());
        for (auto& x : v) x /= g;
        num_ = ZPoly(std::move(v));
        dc /= g;
      }
    }
    den_ = ZPoly(dc);
  } else {
    if (num_.isZero()) {
      den_ = ZPoly(1);
      return;
    }
    if (den_.isOne()) return;
    ZPoly g = gcd(num_, den_);
    if (!g.isOne()) {
      num_ = num_.divExact(g);
      den_ = den_.divExact(g);
    }
    if (den_.lc() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }
}

Fq Fq::qpow(FieldSpec fs, long e) {
  if (e >= 0) return Fq(fs, ZPoly::monomial(Int(1), static_cast<std::size_t>(e)), ZPoly(1));
  return Fq(fs, ZPoly(1), ZPoly::monomial(Int(1), static_cast<std::size_t>(-e)));
}

Fq Fq::rational(FieldSpec fs, Int num, Int den) {
  if (den == 0) throw ScalarError("zero denominator");
  return Fq(fs, ZPoly(std::move(num)), ZPoly(std::move(den)));
}

Fq Fq::fromFraction(FieldSpec fs, ZPoly num, ZPoly den) {
  return Fq(fs, std::move(num), std::move(den));
}

Fq operator+(const Fq& a, const Fq& b) {
  FieldSpec fs = Fq::join(a, b);
  if (a.den_.isOne() && b.den_.isOne()) return Fq(fs, a.num_ + b.num_, ZPoly(1));
  return Fq(fs, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Fq operator-(const Fq& a, const Fq& b) {
  FieldSpec fs = Fq::join(a, b);
  if (a.den_.isOne() && b.den_.isOne()) return Fq(fs, a.num_ - b.num_, ZPoly(1));
  return Fq(fs, a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Fq operator*(const Fq& a, const Fq& b) {
  FieldSpec fs = Fq::join(a, b);
  if (a.isZero() || b.isZero()) return Fq::zero(fs);
  return Fq(fs, a.num_ * b.num_, a.den_ * b.den_);
}

Fq operator/(const Fq& a, const Fq& b) {
  return a * b.inv();
}

Fq Fq::operator-() const {
  Fq r = *this;
  r.num_ = -r.num_;
  return r;
}

Fq Fq::inv() const {
  if (isZero()) throw ScalarError("division by zero");
  if (spec_.mode == FieldMode::GenericQ) {
    return Fq(spec_, den_, num_);
  }
  // extended Euclid against Phi_N over Q
  QXgcd x = xgcd(QPoly::fromZ(num_), QPoly::fromZ(cyclotomic(spec_.n)));
  if (x.g.degree() != 0) throw ScalarError("non-invertible element in cyclotomic field");
  ZPoly unum;
  Int uden;
  x.u.clearDenominators(unum, uden);
  // inverse of num_/den_ is den_ * u / uden
  return Fq(spec_, unum * den_, ZPoly(uden));
}

Fq Fq::pow(long e) const {
  FieldSpec fs = spec_;
  if (e == 0) return Fq::one(fs);
  Fq base = e < 0 ? inv() : *this;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  Fq acc = Fq::one(fs);
  while (k) {
    if (k & 1) acc = acc * base;
    base = (k >>= 1) ? base * base : base;
  }
  return acc;
}

bool operator==(const Fq& a, const Fq& b) {
  if (a.isZero() && b.isZero()) return true;
  if (a.isZero() != b.isZero()) return false;
  return a.spec_ == b.spec_ && a.num_ == b.num_ && a.den_ == b.den_;
}

std::optional<Rat> Fq::asRational() const {
  if (isZero()) return Rat(0);
  if (num_.degree() > 0 || den_.degree() > 0) return std::nullopt;
  Rat r(num_.coeff(0), den_.coeff(0));
  r.canonicalize();
  return r;
}

std::size_t Fq::hash() const {
  return num_.hash() * 31 + den_.hash() + (spec_.mode == FieldMode::Cyclotomic ? spec_.n : 0);
}

std::optional<uint32_t> mult_order(const Fq& x) {
  if (x.isZero()) throw ScalarError("mult_order of zero");
  Fq one = Fq::one(x.spec());
  if (x == one) return 1;
  if (x.spec().mode == FieldMode::GenericQ) {
    // the only roots of unity in Q(q) are the rational constants +-1
    auto r = x.asRational();
    if (r && *r == -1) return 2;
    return std::nullopt;
  }
  // torsion of Q(zeta_N)^x is generated by -zeta_N, of order lcm(2, N)
  uint32_t n = x.spec().n;
  uint32_t bound = std::lcm(2u, n);
  Fq p = x;
  for (uint32_t k = 1; k <= bound; ++k) {
    if (p == one) return k;
    p = p * x;
  }
  return std::nullopt;
}

Fq q_number(uint32_t n, const Fq& x) {
  Fq acc = Fq::zero(x.spec());
  Fq p = Fq::one(x.spec());
  for (uint32_t i = 0; i < n; ++i) {
    acc = acc + p;
    p = p * x;
  }
  return acc;
}

Fq q_factorial(uint32_t n, const Fq& x) {
  Fq acc = Fq::one(x.spec());
  for (uint32_t i = 2; i <= n; ++i) acc = acc * q_number(i, x);
  return acc;
}

Fq q_binomial(uint32_t n, uint32_t k, const Fq& x) {
  if (k > n) throw ScalarError("q_binomial requires k <= n");
  // Pascal: binom(m,j) = binom(m-1,j-1) + x^j binom(m-1,j)
  std::vector<Fq> row(n + 1, Fq::zero(x.spec()));
  row[0] = Fq::one(x.spec());
  for (uint32_t m = 1; m <= n; ++m) {
    for (uint32_t j = std::min(m, k); j >= 1; --j) {
      row[j] = row[j - 1] + x.pow(j) * row[j];
    }
  }
  return row[k];
}

// --------------------------- parser / printer ------------------------------

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  FieldSpec fs;

  void skipWs() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    skipWs();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos, msg); }

  Int integer() {
    skipWs();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) fail("expected integer");
    return Int(s.substr(start, pos - start));
  }

  Fq expr() {
    Fq acc = term();
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }

  Fq term() {
    skipWs();
    bool neg = false;
    while (true) {
      if (eat('-')) neg = !neg;
      else if (eat('+')) continue;
      else break;
    }
    Fq acc = factor();
    for (;;) {
      if (eat('*')) acc = acc * factor();
      else if (eat('/')) acc = acc / factor();
      else break;
    }
    return neg ? -acc : acc;
  }

  Fq factor() {
    Fq base = primary();
    if (eat('^')) {
      Int e = integer();
      if (!e.fits_slong_p()) fail("exponent out of range");
      return base.pow(e.get_si());
    }
    return base;
  }

  Fq primary() {
    skipWs();
    if (pos >= s.size()) fail("unexpected end of input");
    if (eat('(')) {
      Fq inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    char c = s[pos];
    if (c == 'q') {
      ++pos;
      return Fq::q(fs);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int n = integer();
      return Fq::integer(fs, std::move(n));
    }
    fail("expected 'q', number, or '('");
  }
};

std::string printTermPoly(const ZPoly& num, const Int& den) {
  // num / den with den a positive integer; emit per-term reduced rationals
  std::string out;
  for (long i = num.degree(); i >= 0; --i) {
    const Int& a = num.coeff(static_cast<std::size_t>(i));
    if (a == 0) continue;
    Rat coeff(a, den);
    coeff.canonicalize();
    bool neg = coeff < 0;
    Rat abs = neg ? Rat(-coeff) : coeff;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string cs = abs.get_str();
    if (i == 0) {
      out += cs;
    } else {
      if (cs != "1") out += cs + "*";
      out += "q";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

Fq parse_scalar(const std::string& text, FieldSpec fs) {
  Parser p{text, 0, fs};
  Fq v = p.expr();
  p.skipWs();
  if (p.pos != text.size()) throw ParseError(p.pos, "trailing input");
  return v;
}

std::string Fq::str() const {
  if (isZero()) return "0";
  if (spec_.mode == FieldMode::Cyclotomic) {
    return printTermPoly(num_, den_.coeff(0));
  }
  if (den_.isOne()) return printTermPoly(num_, Int(1));
  if (den_.isConstant()) return printTermPoly(num_, den_.coeff(0));
  std::string n = printTermPoly(num_, Int(1));
  std::string d = printTermPoly(den_, Int(1));
  return "(" + n + ")/(" + d + ")";
}

}  // namespace nichols
