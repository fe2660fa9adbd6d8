#include "nichols/braidspace.hpp"

#include <algorithm>
#include <functional>

#include "nichols/linalg.hpp"

namespace nichols {

namespace {

std::vector<std::vector<Fq>> matMul(const std::vector<std::vector<Fq>>& a,
                                    const std::vector<std::vector<Fq>>& b) {
  std::size_t n = a.size();
  std::vector<std::vector<Fq>> r(n, std::vector<Fq>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].isZero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[k][j].isZero()) continue;
        r[i][j] += a[i][k] * b[k][j];
      }
    }
  return r;
}

std::vector<std::vector<Fq>> matInv(const std::vector<std::vector<Fq>>& a, FieldSpec fs) {
  std::size_t n = a.size();
  std::vector<std::vector<Fq>> m = a;
  std::vector<std::vector<Fq>> inv(n, std::vector<Fq>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Fq::one(fs);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].isZero()) ++piv;
    if (piv == n) throw BraidError("singular matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Fq d = m[col][col].inv();
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] *= d;
      inv[col][j] *= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].isZero()) continue;
      Fq f = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

std::vector<std::vector<Fq>> matPow(std::vector<std::vector<Fq>> a, int32_t e, FieldSpec fs) {
  std::size_t n = a.size();
  if (e < 0) {
    a = matInv(a, fs);
    e = -e;
  }
  std::vector<std::vector<Fq>> r(n, std::vector<Fq>(n));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = Fq::one(fs);
  while (e) {
    if (e & 1) r = matMul(r, a);
    e >>= 1;
    if (e) a = matMul(a, a);
  }
  return r;
}

}  // namespace

Fq ghost(const BlockPointParams& p) {
  if (p.epsilon == 1) return Fq::integer(p.a.spec(), -2) * p.a;
  return p.a;
}

bool ghost_is_discrete(const BlockPointParams& p) {
  auto g = ghost(p).asRational();
  return g && *g > 0 && g->get_den() == 1;
}

std::string DynkinDiagram::text() const {
  // Path layout when the edge set is a path in index order, else explicit lists.
  uint32_t n = static_cast<uint32_t>(vertices.size());
  bool path = true;
  for (const auto& [e, s] : edges)
    if (e.second != e.first + 1) path = false;
  if (path) {
    std::string out;
    for (uint32_t i = 0; i < n; ++i) {
      if (i) {
        auto it = edges.find({i - 1, i});
        out += " -- " + (it == edges.end() ? std::string("1") : it->second.str()) + " -- ";
      }
      out += vertices[i].str();
    }
    return out;
  }
  std::string out;
  for (uint32_t i = 0; i < n; ++i) {
    if (i) out += "; ";
    out += "v" + std::to_string(i + 1) + ": " + vertices[i].str();
  }
  for (const auto& [e, s] : edges)
    out += "; e" + std::to_string(e.first + 1) + "," + std::to_string(e.second + 1) + ": " + s.str();
  return out;
}

void BraidedSpace::finalize() {
  // grading classes
  classOf_.assign(dim_, 0);
  if (real_) {
    std::map<std::vector<int32_t>, uint32_t> classes;
    for (uint32_t i = 0; i < dim_; ++i) {
      auto [it, fresh] = classes.emplace(real_->coactionDeg[i], static_cast<uint32_t>(classes.size()));
      classOf_[i] = it->second;
    }
    numClasses_ = static_cast<uint32_t>(classes.size());
  } else {
    numClasses_ = 1;
  }
  if (weights_.empty()) weights_.assign(dim_, 1);

  // composite letter actions
  letterAction_.clear();
  if (real_) {
    for (uint32_t i = 0; i < dim_; ++i) {
      std::vector<std::vector<Fq>> m(dim_, std::vector<Fq>(dim_));
      for (uint32_t r = 0; r < dim_; ++r) m[r][r] = Fq::one(fs_);
      for (uint32_t s = 0; s < real_->groupRank; ++s) {
        int32_t e = real_->coactionDeg[i][s];
        if (e != 0) m = matMul(m, matPow(real_->action[s], e, fs_));
      }
      letterAction_.push_back(std::move(m));
    }
  }

  // braiding invertibility + inverse table, via the dim^2 x dim^2 matrix
  uint32_t d2 = dim_ * dim_;
  std::vector<std::vector<Fq>> cm(d2, std::vector<Fq>(d2));
  for (uint32_t i = 0; i < dim_; ++i)
    for (uint32_t j = 0; j < dim_; ++j)
      for (const auto& e : ctab_[i][j]) cm[e.k * dim_ + e.l][i * dim_ + j] += e.coeff;
  auto inv = matInv(cm, fs_);
  cinv_.assign(dim_, std::vector<std::vector<CEntry>>(dim_));
  for (uint32_t i = 0; i < dim_; ++i)
    for (uint32_t j = 0; j < dim_; ++j)
      for (uint32_t k = 0; k < dim_; ++k)
        for (uint32_t l = 0; l < dim_; ++l) {
          const Fq& c = inv[k * dim_ + l][i * dim_ + j];
          if (!c.isZero())
            cinv_[i][j].push_back({static_cast<Letter>(k), static_cast<Letter>(l), c});
        }

  // grade homogeneity of the braiding
  for (uint32_t i = 0; i < dim_; ++i)
    for (uint32_t j = 0; j < dim_; ++j) {
      auto src = gradeOfLetter(static_cast<Letter>(i));
      auto sj = gradeOfLetter(static_cast<Letter>(j));
      for (std::size_t t = 0; t < src.size(); ++t) src[t] += sj[t];
      for (const auto& e : ctab_[i][j]) {
        auto dst = gradeOfLetter(e.k);
        auto dl = gradeOfLetter(e.l);
        for (std::size_t t = 0; t < dst.size(); ++t) dst[t] += dl[t];
        if (dst != src) throw BraidError("braiding is not homogeneous for the declared grading");
      }
    }
}

std::vector<uint32_t> BraidedSpace::gradeOfLetter(Letter i) const {
  if (real_) {
    std::vector<uint32_t> g(numClasses_, 0);
    g[classOf_[i]] = 1;
    return g;
  }
  return {weights_[i]};
}

std::vector<uint32_t> BraidedSpace::gradeOfWord(const Word& w) const {
  std::vector<uint32_t> g(real_ ? numClasses_ : 1, 0);
  for (Letter l : w) {
    if (real_) {
      g[classOf_[l]] += 1;
    } else {
      g[0] += weights_[l];
    }
  }
  return g;
}

std::shared_ptr<BraidedSpace> BraidedSpace::diagonal(FieldSpec fs, std::vector<std::vector<Fq>> q) {
  auto b = std::shared_ptr<BraidedSpace>(new BraidedSpace());
  b->fs_ = fs;
  b->dim_ = static_cast<uint32_t>(q.size());
  if (b->dim_ == 0) throw BraidError("empty braiding matrix");
  for (const auto& row : q) {
    if (row.size() != b->dim_) throw BraidError("braiding matrix not square");
    for (const auto& x : row)
      if (x.isZero()) throw BraidError("braiding matrix entries must be nonzero");
  }
  b->ctab_.assign(b->dim_, std::vector<std::vector<CEntry>>(b->dim_));
  for (uint32_t i = 0; i < b->dim_; ++i)
    for (uint32_t j = 0; j < b->dim_; ++j)
      b->ctab_[i][j].push_back({static_cast<Letter>(j), static_cast<Letter>(i), q[i][j]});
  // canonical Z^theta realization: g_i acts by row i, x_i has degree e_i
  Realization real;
  real.groupRank = b->dim_;
  real.action.resize(b->dim_);
  for (uint32_t s = 0; s < b->dim_; ++s) {
    real.action[s].assign(b->dim_, std::vector<Fq>(b->dim_));
    for (uint32_t j = 0; j < b->dim_; ++j) real.action[s][j][j] = q[s][j];
  }
  real.coactionDeg.assign(b->dim_, std::vector<int32_t>(b->dim_, 0));
  for (uint32_t i = 0; i < b->dim_; ++i) real.coactionDeg[i][i] = 1;
  b->real_ = std::move(real);
  b->diagQ_ = std::move(q);
  b->finalize();
  return b;
}

std::shared_ptr<BraidedSpace> BraidedSpace::fromRealization(FieldSpec fs, Realization real) {
  auto b = std::shared_ptr<BraidedSpace>(new BraidedSpace());
  b->fs_ = fs;
  b->dim_ = static_cast<uint32_t>(real.coactionDeg.size());
  for (uint32_t s = 0; s < real.groupRank; ++s)
    for (uint32_t t = s + 1; t < real.groupRank; ++t)
      if (!(matMul(real.action[s], real.action[t]) == matMul(real.action[t], real.action[s])))
        throw BraidError("realization action matrices do not commute");
  b->real_ = std::move(real);
  // induced braiding c(x_i (x) x_j) = (g_{d(i)} . x_j) (x) x_i
  b->ctab_.assign(b->dim_, std::vector<std::vector<CEntry>>(b->dim_));
  // need letterAction_ first; compute minimal version here
  std::vector<std::vector<std::vector<Fq>>> la;
  for (uint32_t i = 0; i < b->dim_; ++i) {
    std::vector<std::vector<Fq>> m(b->dim_, std::vector<Fq>(b->dim_));
    for (uint32_t r = 0; r < b->dim_; ++r) m[r][r] = Fq::one(fs);
    for (uint32_t s = 0; s < b->real_->groupRank; ++s) {
      int32_t e = b->real_->coactionDeg[i][s];
      if (e != 0) m = matMul(m, matPow(b->real_->action[s], e, fs));
    }
    la.push_back(std::move(m));
  }
  for (uint32_t i = 0; i < b->dim_; ++i)
    for (uint32_t j = 0; j < b->dim_; ++j)
      for (uint32_t k = 0; k < b->dim_; ++k) {
        const Fq& c = la[i][k][j];
        if (!c.isZero()) b->ctab_[i][j].push_back({static_cast<Letter>(k), static_cast<Letter>(i), c});
      }
  b->finalize();
  return b;
}

std::shared_ptr<BraidedSpace> BraidedSpace::blockPoint(const BlockPointParams& p) {
  if (p.epsilon != 1 && p.epsilon != -1) throw BraidError("epsilon must be +-1");
  FieldSpec fs = p.q12.spec();
  Fq eps = Fq::integer(fs, p.epsilon);
  Fq one = Fq::one(fs);
  Realization real;
  real.groupRank = 2;
  // g_1: x_1 -> eps x_1, x_2 -> eps x_2 + x_1, x_3 -> q12 x_3
  // g_2: x_1 -> q21 x_1, x_2 -> q21 (x_2 + a x_1), x_3 -> q22 x_3
  std::vector<std::vector<Fq>> a1(3, std::vector<Fq>(3)), a2(3, std::vector<Fq>(3));
  a1[0][0] = eps;
  a1[0][1] = one;
  a1[1][1] = eps;
  a1[2][2] = p.q12;
  a2[0][0] = p.q21;
  a2[0][1] = p.q21 * p.a;
  a2[1][1] = p.q21;
  a2[2][2] = p.q22;
  real.action = {a1, a2};
  real.coactionDeg = {{1, 0}, {1, 0}, {0, 1}};
  auto b = fromRealization(fs, std::move(real));

  // the induced braiding must reproduce the stated c-matrix entrywise
  auto expectEntry = [&](Letter i, Letter j, std::vector<CEntry> want) {
    want.erase(std::remove_if(want.begin(), want.end(),
                              [](const CEntry& e) { return e.coeff.isZero(); }),
               want.end());
    auto got = b->braidEntries(i, j);
    auto key = [](const CEntry& e) { return std::make_pair(e.k, e.l); };
    std::sort(got.begin(), got.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    std::sort(want.begin(), want.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    if (got.size() != want.size()) throw BraidError("block-point braiding mismatch");
    for (std::size_t t = 0; t < got.size(); ++t)
      if (key(got[t]) != key(want[t]) || !(got[t].coeff == want[t].coeff))
        throw BraidError("block-point braiding mismatch");
  };
  expectEntry(0, 0, {{0, 0, eps}});
  expectEntry(0, 1, {{1, 0, eps}, {0, 0, one}});
  expectEntry(0, 2, {{2, 0, p.q12}});
  expectEntry(1, 0, {{0, 1, eps}});
  expectEntry(1, 1, {{1, 1, eps}, {0, 1, one}});
  expectEntry(1, 2, {{2, 1, p.q12}});
  expectEntry(2, 0, {{0, 2, p.q21}});
  expectEntry(2, 1, {{1, 2, p.q21}, {0, 2, p.q21 * p.a}});
  expectEntry(2, 2, {{2, 2, p.q22}});
  return b;
}

std::shared_ptr<BraidedSpace> BraidedSpace::fromCMatrix(
    FieldSpec fs, uint32_t dim, std::vector<std::vector<std::vector<CEntry>>> c,
    std::vector<uint32_t> weights) {
  auto b = std::shared_ptr<BraidedSpace>(new BraidedSpace());
  b->fs_ = fs;
  b->dim_ = dim;
  b->ctab_ = std::move(c);
  b->weights_ = std::move(weights);
  b->finalize();
  return b;
}

std::shared_ptr<BraidedSpace> BraidedSpace::zuRank2(FieldSpec fs,
                                                    const std::vector<std::vector<Fq>>& q,
                                                    uint32_t searchBound) {
  if (q.size() != 2) throw BraidError("zuRank2 needs a 2x2 braiding matrix");
  auto diag = diagonal(fs, q);
  auto n12opt = cartan_entry(*diag, 1, 2, searchBound);
  if (!n12opt) throw BraidError("n_12 undefined below the search bound");
  uint32_t n12 = *n12opt;
  const Fq& q11 = q[0][0];
  const Fq& q12 = q[0][1];
  const Fq& q21 = q[1][0];
  const Fq& q22 = q[1][1];
  Fq qt = q12 * q21;
  // bracket(n) = prod_{j<n} (1 - q11^j qt)
  std::vector<Fq> bracket(n12 + 2, Fq::one(fs));
  for (uint32_t n = 1; n <= n12 + 1; ++n)
    bracket[n] = bracket[n - 1] * (Fq::one(fs) - q11.pow(n - 1) * qt);
  uint32_t d = n12 + 1;
  std::vector<std::vector<std::vector<CEntry>>> ctab(d, std::vector<std::vector<CEntry>>(d));
  for (uint32_t n = 0; n < d; ++n)
    for (uint32_t m = 0; m < d; ++m)
      for (uint32_t j = 0; j <= n && m + j <= n12; ++j) {
        Fq coeff = q11.pow(static_cast<long>(m) * (n - j)) * q12.pow(n - j) * q21.pow(m) * q22 *
                   q_binomial(n, j, q11) * bracket[n] / bracket[n - j];
        if (!coeff.isZero())
          ctab[n][m].push_back({static_cast<Letter>(m + j), static_cast<Letter>(n - j), coeff});
      }
  std::vector<uint32_t> weights(d);
  for (uint32_t n = 0; n < d; ++n) weights[n] = n + 1;
  return fromCMatrix(fs, d, std::move(ctab), std::move(weights));
}

std::shared_ptr<BraidedSpace> BraidedSpace::zvBlock(ZVKind kind, const BlockPointParams& p) {
  FieldSpec fs = p.q12.spec();
  Fq one = Fq::one(fs);
  Fq eps = Fq::integer(fs, p.epsilon);
  Fq a = p.a;
  const Fq& q12 = p.q12;
  const Fq& q21 = p.q21;
  const Fq& q22 = p.q22;
  auto E = [](Letter k, Letter l, Fq c) { return CEntry{k, l, std::move(c)}; };
  if (kind == ZVKind::WeakPm1 || kind == ZVKind::WeakOmega) {
    if (!((q12 * q21) == one)) throw BraidError("weak interaction requires q12 q21 = 1");
  }
  if (kind == ZVKind::WeakPm1) {
    auto o22 = mult_order(q22);
    if (!o22 || (*o22 != 1 && *o22 != 2)) throw BraidError("weak_pm1 requires q22 = +-1");
    std::vector<std::vector<std::vector<CEntry>>> c(3, std::vector<std::vector<CEntry>>(3));
    c[0][0] = {E(0, 0, eps)};
    c[0][1] = {E(1, 0, eps), E(0, 0, one)};
    c[0][2] = {E(2, 0, eps * q12)};
    c[1][0] = {E(0, 1, eps)};
    c[1][1] = {E(1, 1, eps), E(0, 1, one)};
    c[1][2] = {E(2, 1, eps * q12)};
    c[2][0] = {E(0, 2, eps * q21)};
    c[2][1] = {E(1, 2, eps * q21), E(0, 2, eps * q21 * (a + eps)), E(2, 0, -(a * eps))};
    c[2][2] = {E(2, 2, eps * q22)};
    return fromCMatrix(fs, 3, std::move(c), {1, 1, 2});
  }
  if (kind == ZVKind::WeakOmega) {
    auto o22 = mult_order(q22);
    if (!o22 || *o22 != 3) throw BraidError("weak_omega requires q22 of order 3");
    std::vector<std::vector<std::vector<CEntry>>> c(4, std::vector<std::vector<CEntry>>(4));
    c[0][0] = {E(0, 0, eps)};
    c[0][1] = {E(1, 0, eps), E(0, 0, one)};
    c[0][2] = {E(2, 0, eps * q12)};
    c[1][0] = {E(0, 1, eps)};
    c[1][1] = {E(1, 1, eps), E(0, 1, one)};
    c[1][2] = {E(2, 1, eps * q12)};
    c[2][0] = {E(0, 2, eps * q21)};
    c[2][1] = {E(1, 2, eps * q21), E(0, 2, eps * q21 * (a + eps)), E(2, 0, -(a * eps))};
    c[2][2] = {E(2, 2, eps * q22), E(3, 0, -(eps * a * q12))};
    c[0][3] = {E(3, 0, q12 * q12)};
    c[1][3] = {E(3, 1, q12 * q12)};
    c[2][3] = {E(3, 2, q12 * q22 * q22)};
    c[3][3] = {E(3, 3, q22)};
    c[3][0] = {E(0, 3, q21 * q21)};
    c[3][1] = {E(1, 3, q21 * q21), E(0, 3, q21 * q21 * (Fq::integer(fs, 2) * a + one)),
               E(2, 2, (one - q22 * q22) * q21), E(3, 0, a * (q22 - one))};
    c[3][2] = {E(2, 3, q21 * q22 * q22), E(3, 2, q22 - one)};
    return fromCMatrix(fs, 4, std::move(c), {1, 1, 2, 3});
  }
  // mild cyclop: q12 q21 = -1, eps = q22 = -1
  if (!((q12 * q21) == -one)) throw BraidError("mild interaction requires q12 q21 = -1");
  if (p.epsilon != -1 || !(q22 == -one)) throw BraidError("cyclop requires eps = q22 = -1");
  Fq two = Fq::integer(fs, 2);
  std::vector<std::vector<std::vector<CEntry>>> c(4, std::vector<std::vector<CEntry>>(4));
  for (Letter i : {Letter(0), Letter(1)}) {
    c[i][0] = {E(0, i, -one)};
    c[i][1] = {E(0, i, one), E(1, i, -one)};
    c[i][2] = {E(2, i, -q12)};
    c[i][3] = {E(2, i, q12), E(3, i, -q12)};
  }
  c[2][0] = {E(0, 2, -q21), E(2, 0, -two)};
  c[2][1] = {E(1, 2, -q21), E(2, 0, two), E(3, 0, -two)};
  c[2][2] = {E(2, 2, -one)};
  c[2][3] = {E(3, 2, -one)};
  c[3][0] = {E(0, 3, -q21), E(2, 1, -two), E(2, 0, -one)};
  // middle term (y_3 - y_4) (x) (2 y_2 + y_1), from
  // delta(y_4) = g1 g2 (x) y_4 + 2 x_3 g1 (x) y_2 + x_3 g1 (x) y_1
  c[3][1] = {E(1, 3, -q21), E(2, 1, two), E(2, 0, one), E(3, 1, -two), E(3, 0, -one)};
  c[3][2] = {E(2, 3, -one)};
  c[3][3] = {E(3, 3, -one)};
  return fromCMatrix(fs, 4, std::move(c), {1, 1, 2, 2});
}

std::string BraidedSpace::describe() const {
  std::string s = "dim " + std::to_string(dim_) + " over " + fs_.str();
  if (isDiagonal()) s += ", diagonal";
  else if (realized()) s += ", realized";
  else s += ", raw c-matrix";
  return s;
}

std::optional<uint32_t> cartan_entry(const BraidedSpace& b, uint32_t i, uint32_t j, uint32_t bound) {
  if (!b.isDiagonal()) throw BraidError("cartan_entry needs a diagonal braiding");
  if (i == j) throw BraidError("cartan_entry requires i != j");
  const auto& q = b.qMatrix();
  const Fq& qii = q[i - 1][i - 1];
  Fq qt = q[i - 1][j - 1] * q[j - 1][i - 1];
  Fq one = Fq::one(b.field());
  for (uint32_t n = 0; n <= bound; ++n) {
    Fq v = q_number(n + 1, qii) * (one - qii.pow(n) * qt);
    if (v.isZero()) return n;
  }
  return std::nullopt;
}

DynkinDiagram dynkin_diagram(const BraidedSpace& b) {
  if (!b.isDiagonal()) throw BraidError("dynkin_diagram needs a diagonal braiding");
  const auto& q = b.qMatrix();
  DynkinDiagram d;
  Fq one = Fq::one(b.field());
  for (uint32_t i = 0; i < b.dim(); ++i) d.vertices.push_back(q[i][i]);
  for (uint32_t i = 0; i < b.dim(); ++i)
    for (uint32_t j = i + 1; j < b.dim(); ++j) {
      Fq e = q[i][j] * q[j][i];
      if (!(e == one)) d.edges[{i, j}] = e;
    }
  return d;
}

TensorVector braid_op(const BraidedSpace& b, uint32_t i, const TensorVector& v) {
  if (v.isZero()) return v;
  if (i < 1 || i + 1 > v.length()) throw BraidError("braid_op position out of range");
  TensorVector out;
  for (const auto& [w, c] : v.terms()) {
    for (const auto& e : b.braidEntries(w[i - 1], w[i])) {
      Word nw = w;
      nw[i - 1] = e.k;
      nw[i] = e.l;
      out.add(std::move(nw), c * e.coeff);
    }
  }
  out.normalize();
  return out;
}

TensorVector braid_op_inverse(const BraidedSpace& b, uint32_t i, const TensorVector& v) {
  if (v.isZero()) return v;
  if (i < 1 || i + 1 > v.length()) throw BraidError("braid_op position out of range");
  TensorVector out;
  for (const auto& [w, c] : v.terms()) {
    for (const auto& e : b.braidInvEntries(w[i - 1], w[i])) {
      Word nw = w;
      nw[i - 1] = e.k;
      nw[i] = e.l;
      out.add(std::move(nw), c * e.coeff);
    }
  }
  out.normalize();
  return out;
}

bool check_braid_equation(const BraidedSpace& b) {
  FieldSpec fs = b.field();
  for (Letter i = 0; i < b.dim(); ++i)
    for (Letter j = 0; j < b.dim(); ++j)
      for (Letter k = 0; k < b.dim(); ++k) {
        TensorVector v = TensorVector::monomial({i, j, k}, Fq::one(fs));
        TensorVector lhs = braid_op(b, 1, braid_op(b, 2, braid_op(b, 1, v)));
        TensorVector rhs = braid_op(b, 2, braid_op(b, 1, braid_op(b, 2, v)));
        if (!(lhs == rhs)) return false;
      }
  return true;
}

TensorVector block_braid(const BraidedSpace& b, uint32_t m, uint32_t n, const TensorVector& v) {
  if (m == 0 || n == 0) return v;
  TensorVector cur = v;
  // move the block [1..m] to the right, last slot first
  for (uint32_t i = m; i >= 1; --i) {
    for (uint32_t k = i; k <= i + n - 1; ++k) cur = braid_op(b, k, cur);
  }
  return cur;
}

TensorVector braided_commutator(const BraidedSpace& b, const TensorVector& x,
                                const TensorVector& y) {
  if (x.isZero() || y.isZero()) return {};
  TensorVector xy = x * y;
  TensorVector cxy = block_braid(b, static_cast<uint32_t>(x.length()),
                                 static_cast<uint32_t>(y.length()), xy);
  return xy - cxy;
}

TensorVector ad_c(const BraidedSpace& b, const TensorVector& x, const TensorVector& y) {
  if (y.isZero()) return {};
  if (y.length() == 0) return x;  // ad_c(x)(1) = x
  return braided_commutator(b, x, y);
}

TensorVector letter_action_tensor(const BraidedSpace& b, Letter k, const TensorVector& v) {
  if (!b.realized()) throw BraidError("letter_action_tensor needs a realization");
  const auto& m = b.letterAction(k);
  TensorVector cur = v;
  if (v.isZero()) return cur;
  std::size_t len = v.length();
  for (std::size_t slot = 0; slot < len; ++slot) {
    TensorVector next;
    for (const auto& [w, c] : cur.terms()) {
      for (uint32_t r = 0; r < b.dim(); ++r) {
        const Fq& a = m[r][w[slot]];
        if (a.isZero()) continue;
        Word nw = w;
        nw[slot] = static_cast<Letter>(r);
        next.add(std::move(nw), c * a);
      }
    }
    next.normalize();
    cur = std::move(next);
  }
  return cur;
}

TensorVector quantum_symmetrizer(const BraidedSpace& b, uint32_t n, const TensorVector& v,
                                 uint32_t cutoff) {
  if (n > cutoff)
    throw BraidError("symmetrizer degree " + std::to_string(n) + " above cutoff " +
                     std::to_string(cutoff) + "; raise the cutoff or use the derivation engine");
  if (v.isZero()) return v;
  if (v.length() != n) throw BraidError("quantum_symmetrizer: length mismatch");
  if (n <= 1) return v;
  // S_n = (S_{n-1} (x) id) ∘ (id + c_{n-1} + c_{n-1}c_{n-2} + ... + c_{n-1}...c_1),
  // the tail sum evaluated as u + c_{n-1}(u + c_{n-2}(u + ... + c_1(u)...)).
  std::function<TensorVector(uint32_t, const TensorVector&)> sym =
      [&](uint32_t k, const TensorVector& u) -> TensorVector {
    if (k <= 1) return u;
    TensorVector acc = u;
    for (uint32_t j = 1; j <= k - 1; ++j) acc = u + braid_op(b, j, acc);
    // symmetrize the first k-1 slots of acc: group by last letter
    std::map<Letter, TensorVector> byLast;
    for (const auto& [w, c] : acc.terms()) {
      Word pre(w.begin(), w.end() - 1);
      byLast[w.back()].add(std::move(pre), c);
    }
    TensorVector out;
    for (auto& [last, pv] : byLast) {
      pv.normalize();
      TensorVector s = sym(k - 1, pv);
      for (const auto& [w, c] : s.terms()) {
        Word nw = w;
        nw.push_back(last);
        out.add(std::move(nw), c);
      }
    }
    out.normalize();
    return out;
  };
  return sym(n, v);
}

TensorVector derivation_T(const BraidedSpace& b, Letter k, const TensorVector& v) {
  if (!b.realized()) throw BraidError("derivation_T needs a realization");
  if (v.isZero() || v.length() == 0) return {};
  TensorVector out;
  // d_k(x_{i_1}...x_{i_n}) = sum_p [i_p = k] x_{i_1}..x_{i_{p-1}} (g_k . x_{i_{p+1}}..x_{i_n})
  // computed by the right-to-left recursion of the product rule.
  for (const auto& [w, c] : v.terms()) {
    for (std::size_t p = 0; p < w.size(); ++p) {
      if (w[p] != k) continue;
      Word tail(w.begin() + p + 1, w.end());
      if (tail.empty()) {
        Word head(w.begin(), w.begin() + p);
        out.add(std::move(head), c);
      } else {
        TensorVector acted = letter_action_tensor(b, k, TensorVector::monomial(std::move(tail), c));
        for (const auto& [tw, tc] : acted.terms()) {
          Word nw(w.begin(), w.begin() + p);
          nw.insert(nw.end(), tw.begin(), tw.end());
          out.add(std::move(nw), tc);
        }
      }
    }
  }
  out.normalize();
  return out;
}

}  // namespace nichols
