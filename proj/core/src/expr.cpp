#include "nichols/expr.hpp"

#include <cctype>

#include "nichols/coinvariants.hpp"

namespace nichols {

namespace {

struct Value {
  bool isScalar = true;
  Fq s;
  TensorVector t;
};

struct P {
  const std::string& s;
  std::size_t pos = 0;
  const ExprEval& env;
  const BraidedSpace& sp;

  P(const std::string& text, const ExprEval& e) : s(text), env(e), sp(e.space()) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ExprError(msg + " at position " + std::to_string(pos) + " in \"" + s + "\"");
  }
  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    ws();
    return pos < s.size() && s[pos] == c;
  }
  bool peek2(const char* two) {
    ws();
    return pos + 1 < s.size() && s[pos] == two[0] && s[pos + 1] == two[1];
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    ws();
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected identifier");
    return s.substr(start, pos - start);
  }

  // ----- integer expressions -----
  long intExpr() {
    long v = intTerm();
    for (;;) {
      if (eat('+')) v += intTerm();
      else if (eat('-')) v -= intTerm();
      else return v;
    }
  }
  long intTerm() {
    long v = intAtom();
    while (eat('*')) v *= intAtom();
    return v;
  }
  long intAtom() {
    ws();
    if (eat('-')) return -intAtom();
    if (eat('(')) {
      long v = intExpr();
      expect(')');
      return v;
    }
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return std::stol(s.substr(start, pos - start));
    }
    std::string id = ident();
    auto it = env.ints().find(id);
    if (it == env.ints().end()) fail("unknown index variable '" + id + "'");
    return it->second;
  }

  // ----- boolean clauses -----
  bool condOr() {
    bool v = condAnd();
    while (peek2("||")) {
      pos += 2;
      bool r = condAnd();
      v = v || r;
    }
    return v;
  }
  bool condAnd() {
    bool v = condCmp();
    while (peek2("&&")) {
      pos += 2;
      bool r = condCmp();
      v = v && r;
    }
    return v;
  }
  bool condCmp() {
    ws();
    if (eat('!')) {
      if (eat('(')) {
        bool v = condOr();
        expect(')');
        return !v;
      }
      fail("expected '(' after '!'");
    }
    if (eat('(')) {
      bool v = condOr();
      expect(')');
      return v;
    }
    long a = intExpr();
    ws();
    if (peek2("<=")) { pos += 2; return a <= intExpr(); }
    if (peek2(">=")) { pos += 2; return a >= intExpr(); }
    if (peek2("==")) { pos += 2; return a == intExpr(); }
    if (peek2("!=")) { pos += 2; return a != intExpr(); }
    if (eat('<')) return a < intExpr();
    if (eat('>')) return a > intExpr();
    fail("expected comparison operator");
  }

  // ----- root sums for the bilinear form -----
  std::vector<uint32_t> rootSum() {
    std::vector<uint32_t> v(sp.dim(), 0);
    for (;;) {
      ws();
      std::string id = ident();
      if (id != "alpha") fail("expected alpha(...)");
      expect('(');
      long i = intExpr();
      long j = i;
      if (eat(',')) j = intExpr();
      expect(')');
      if (i < 1 || j < i || j > static_cast<long>(sp.dim())) fail("alpha range out of bounds");
      for (long k = i; k <= j; ++k) v[k - 1] += 1;
      if (!eat('+')) return v;
    }
  }

  // ----- tensor/scalar expressions -----
  Value expr() {
    Value acc = term();
    for (;;) {
      ws();
      if (eat('+')) acc = add(acc, term(), false);
      else if (peek('-')) {
        ++pos;
        acc = add(acc, term(), true);
      } else
        return acc;
    }
  }

  Value add(Value a, Value b, bool negate) {
    if (a.isScalar != b.isScalar) fail("cannot add scalar and tensor");
    if (a.isScalar) {
      a.s = negate ? a.s - b.s : a.s + b.s;
      return a;
    }
    a.t = negate ? a.t - b.t : a.t + b.t;
    return a;
  }

  Value term() {
    ws();
    bool neg = false;
    while (eat('-')) neg = !neg;
    Value acc = factor();
    for (;;) {
      ws();
      if (eat('*')) acc = mul(acc, factor());
      else if (eat('/')) {
        Value d = factor();
        if (!d.isScalar) fail("division by a tensor");
        if (acc.isScalar) acc.s = acc.s / d.s;
        else acc.t = acc.t.scaled(d.s.inv());
      } else
        break;
    }
    if (neg) {
      if (acc.isScalar) acc.s = -acc.s;
      else acc.t = -acc.t;
    }
    return acc;
  }

  Value mul(Value a, Value b) {
    Value r;
    if (a.isScalar && b.isScalar) {
      r.s = a.s * b.s;
      return r;
    }
    r.isScalar = false;
    if (a.isScalar) r.t = b.t.scaled(a.s);
    else if (b.isScalar) r.t = a.t.scaled(b.s);
    else r.t = a.t * b.t;
    return r;
  }

  Value factor() {
    Value base = atom();
    ws();
    if (eat('^')) {
      long e = intAtom();
      if (base.isScalar) {
        base.s = base.s.pow(e);
        return base;
      }
      if (e < 0) fail("negative power of a tensor");
      Value r;
      r.isScalar = false;
      r.t = TensorVector::monomial({}, Fq::one(sp.field()));
      for (long k = 0; k < e; ++k) r.t = r.t * base.t;
      return r;
    }
    return base;
  }

  Value tensorValue(TensorVector t) {
    Value v;
    v.isScalar = false;
    v.t = std::move(t);
    return v;
  }

  Value scalarValue(Fq x) {
    Value v;
    v.s = std::move(x);
    return v;
  }

  TensorVector asTensor(Value v) {
    if (!v.isScalar) return v.t;
    // scalar as multiple of the empty word
    return TensorVector::monomial({}, v.s);
  }

  Value atom() {
    ws();
    if (pos >= s.size()) fail("unexpected end of expression");
    if (eat('(')) {
      Value v = expr();
      expect(')');
      return v;
    }
    if (eat('[')) {
      Value a = expr();
      expect(',');
      Value b = expr();
      expect(']');
      return tensorValue(braided_commutator(sp, asTensor(a), asTensor(b)));
    }
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      Int num(s.substr(start, pos - start));
      if (eat('/')) {
        std::size_t ds = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == ds) fail("expected denominator");
        return scalarValue(Fq::rational(sp.field(), num, Int(s.substr(ds, pos - ds))));
      }
      return scalarValue(Fq::integer(sp.field(), std::move(num)));
    }
    std::string id = ident();
    if (id == "fold") {
      // fold(init; var = from .. to; step) with 'acc' bound in the step;
      // "a .. b" iterates inclusively in either direction, "a upto b" iterates
      // ascending and is empty when a > b
      expect('(');
      Value init = expr();
      expect(';');
      std::string var = ident();
      expect('=');
      long from = intExpr();
      ws();
      bool uptoForm = false;
      if (pos + 1 < s.size() && s[pos] == '.' && s[pos + 1] == '.') {
        pos += 2;
      } else {
        std::string kw = ident();
        if (kw != "upto") fail("expected '..' or 'upto'");
        uptoForm = true;
      }
      long to = intExpr();
      expect(';');
      ws();
      std::size_t stepStart = pos;
      // capture the step expression by balanced parentheses up to the closing ')'
      int depth = 0;
      while (pos < s.size()) {
        char ch = s[pos];
        if (ch == '(' || ch == '[') ++depth;
        else if (ch == ')' || ch == ']') {
          if (ch == ')' && depth == 0) break;
          --depth;
        }
        ++pos;
      }
      std::string step = s.substr(stepStart, pos - stepStart);
      expect(')');
      TensorVector acc = asTensor(init);
      if (!(uptoForm && from > to)) {
        long stepDir = from <= to ? 1 : -1;
        for (long k = from;; k += stepDir) {
          ExprEval sub = env;
          sub.ints()[var] = k;
          sub.tensors()["acc"] = acc;
          acc = sub.evalTensor(step);
          if (k == to) break;
        }
      }
      return tensorValue(acc);
    }
    if (id == "ad") {
      expect('(');
      Value x = expr();
      expect(')');
      long e = 1;
      if (eat('^')) e = intAtom();
      expect('(');
      Value y = expr();
      expect(')');
      if (e < 0) fail("negative ad power");
      TensorVector acc = asTensor(y);
      TensorVector xv = asTensor(x);
      for (long k = 0; k < e; ++k) acc = ad_c(sp, xv, acc);
      return tensorValue(acc);
    }
    if (id == "x") {
      expect('(');
      std::vector<uint32_t> letters;
      for (;;) {
        long a = intExpr();
        long b = a;
        ws();
        if (pos + 1 < s.size() && s[pos] == '.' && s[pos + 1] == '.') {
          pos += 2;
          b = intExpr();
        }
        long step = a <= b ? 1 : -1;
        for (long k = a;; k += step) {
          if (k < 1 || k > static_cast<long>(sp.dim())) fail("letter index out of range");
          letters.push_back(static_cast<uint32_t>(k));
          if (k == b) break;
        }
        if (!eat(',')) break;
      }
      expect(')');
      return tensorValue(evalBracket(sp, iteratedWordBracket(letters)));
    }
    if (id == "qq") {
      expect('(');
      long i = intExpr();
      expect(',');
      long j = intExpr();
      expect(')');
      if (!sp.isDiagonal()) fail("qq(i,j) needs a diagonal braiding");
      if (i < 1 || j < 1 || i > static_cast<long>(sp.dim()) || j > static_cast<long>(sp.dim()))
        fail("qq index out of range");
      return scalarValue(sp.qMatrix()[i - 1][j - 1]);
    }
    if (id == "qn" || id == "qfact" || id == "qbin") {
      expect('(');
      long n = intExpr();
      long k = 0;
      if (id == "qbin") {
        expect(',');
        k = intExpr();
      }
      expect(')');
      auto qit = env.scalars().find("q");
      if (qit == env.scalars().end()) fail("q-combinatorics needs a named scalar 'q'");
      if (n < 0 || k < 0) fail("negative q-combinatorial argument");
      if (id == "qn") return scalarValue(q_number(static_cast<uint32_t>(n), qit->second));
      if (id == "qfact") return scalarValue(q_factorial(static_cast<uint32_t>(n), qit->second));
      return scalarValue(q_binomial(static_cast<uint32_t>(n), static_cast<uint32_t>(k), qit->second));
    }
    if (id == "bf") {
      expect('(');
      auto a = rootSum();
      expect(';');
      auto b = rootSum();
      expect(')');
      return scalarValue(bilinearForm(sp, a, b));
    }
    // bound tensor variable?
    if (auto it = env.tensors().find(id); it != env.tensors().end()) return tensorValue(it->second);
    // named scalar?
    if (auto it = env.scalars().find(id); it != env.scalars().end()) return scalarValue(it->second);
    // generator reference
    if (auto it = env.gens().find(id); it != env.gens().end()) {
      std::vector<long> args;
      if (eat('(')) {
        if (!peek(')')) {
          args.push_back(intExpr());
          while (eat(',')) args.push_back(intExpr());
        }
        expect(')');
      }
      if (args.size() != it->second.args.size())
        fail("generator '" + id + "' expects " + std::to_string(it->second.args.size()) +
             " arguments");
      // evaluate the definition with bound arguments
      ExprEval sub = env;
      for (std::size_t a = 0; a < args.size(); ++a) sub.ints()[it->second.args[a]] = args[a];
      return tensorValue(sub.evalTensor(it->second.expr));
    }
    fail("unknown name '" + id + "'");
  }
};

}  // namespace

TensorVector ExprEval::evalTensor(const std::string& text) const {
  P p(text, *this);
  Value v = p.expr();
  p.ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return p.asTensor(v);
}

Fq ExprEval::evalScalar(const std::string& text) const {
  P p(text, *this);
  Value v = p.expr();
  p.ws();
  if (p.pos != text.size()) p.fail("trailing input");
  if (!v.isScalar) throw ExprError("expected a scalar: " + text);
  return v.s;
}

long ExprEval::evalInt(const std::string& text) const {
  P p(text, *this);
  long v = p.intExpr();
  p.ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return v;
}

bool ExprEval::evalCond(const std::string& text) const {
  P p(text, *this);
  bool v = p.condOr();
  p.ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return v;
}

}  // namespace nichols
