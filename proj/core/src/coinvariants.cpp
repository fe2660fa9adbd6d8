#include "nichols/coinvariants.hpp"

#include <algorithm>
#include <sstream>

namespace nichols {

void SplitSpec::validate(uint32_t dim) const {
  if (left.empty()) throw CoinvariantError("split: V must be nonempty");
  std::vector<bool> seen(dim, false);
  for (uint32_t l : left) {
    if (l < 1 || l > dim) throw CoinvariantError("split: letter index out of range");
    if (seen[l - 1]) throw CoinvariantError("split: duplicate letter");
    seen[l - 1] = true;
  }
  if (left.size() >= dim) throw CoinvariantError("split: V must be proper");
}

std::vector<uint64_t> ZuLayers::layerDims() const {
  std::vector<uint64_t> d;
  for (const auto& l : layers) d.push_back(l.size());
  return d;
}

uint64_t ZuLayers::totalDim() const {
  uint64_t t = 0;
  for (const auto& l : layers) t += l.size();
  return t;
}

namespace {

ModelElt adLetter(const NicholsModel& m, Letter i, const ModelElt& z) {
  // ad_c(x_i)(z) = x_i z - (g_{d(i)} . z) x_i
  ModelElt left = m.multiplyLetterLeft(i, z);
  ModelElt acted = m.letterAction(i, z);
  ModelElt right = m.multiply(acted, m.letterElt(i));
  ModelElt out{left.degree, left.coords};
  out.coords.axpy(-Fq::one(m.space().field()), right.coords);
  return out;
}

}  // namespace

ZuLayers zu_basis(const NicholsModel& m, const SplitSpec& split, uint32_t ghostDepth) {
  split.validate(m.space().dim());
  if (m.path() != EnginePath::Derivation)
    throw CoinvariantError("zu_basis needs the derivation path");
  std::vector<bool> isLeft(m.space().dim(), false);
  for (uint32_t l : split.left) isLeft[l - 1] = true;

  ZuLayers out;
  std::vector<ModelElt> layer;
  for (Letter u = 0; u < m.space().dim(); ++u)
    if (!isLeft[u]) layer.push_back(m.letterElt(u));
  out.layers.push_back(layer);

  for (uint32_t j = 1; j <= ghostDepth; ++j) {
    if (j + 1 > m.cutoff() && !m.finiteness().finite)
      throw CoinvariantError("zu_basis: insufficient cutoff at layer " + std::to_string(j));
    Echelon ech;
    std::vector<ModelElt> next;
    for (uint32_t l : split.left) {
      for (const ModelElt& z : out.layers.back()) {
        ModelElt cand = adLetter(m, static_cast<Letter>(l - 1), z);
        if (cand.isZero()) continue;
        if (ech.insert(cand.coords).isPivot) next.push_back(cand);
      }
    }
    if (next.empty()) {
      out.stopped = true;
      break;
    }
    out.layers.push_back(std::move(next));
  }
  return out;
}

std::vector<ModelElt> coinvariant_space(const NicholsModel& m, const SplitSpec& split, uint32_t n) {
  split.validate(m.space().dim());
  if (m.path() != EnginePath::Derivation)
    throw CoinvariantError("coinvariant_space needs the derivation path");
  uint64_t d = m.dim(n);
  std::vector<ModelElt> out;
  if (n == 0) {
    out.push_back(m.one());
    return out;
  }
  if (d == 0) return out;
  uint64_t dPrev = m.dim(n - 1);
  Echelon ech;
  std::vector<Idx> pivotCols;
  Fq one = Fq::one(m.space().field());
  for (Idx j = 0; j < d; ++j) {
    ModelElt e{n, SparseVec::unit(j, one)};
    SparseVec stacked;
    uint32_t kslot = 0;
    for (uint32_t l : split.left) {
      ModelElt dk = m.derive(static_cast<Letter>(l - 1), e);
      for (const auto& [r, c] : dk.coords.entries()) stacked.add(kslot * dPrev + r, c);
      ++kslot;
    }
    stacked.normalize();
    auto res = ech.insert(std::move(stacked));
    if (res.isPivot) {
      pivotCols.push_back(j);
    } else {
      SparseVec kv = SparseVec::unit(j, one);
      for (const auto& [ord, c] : res.expansion.entries()) kv.add(pivotCols[ord], -c);
      kv.normalize();
      out.push_back(ModelElt{n, std::move(kv)});
    }
  }
  return out;
}

std::vector<uint64_t> coinvariant_hilbert(const NicholsModel& m, const SplitSpec& split,
                                          uint32_t upTo) {
  std::vector<uint64_t> h;
  for (uint32_t n = 0; n <= upTo; ++n) h.push_back(coinvariant_space(m, split, n).size());
  return h;
}

bool GenerationReport::pass() const {
  for (const auto& d : degrees)
    if (!d.pass) return false;
  return true;
}

GenerationReport verify_K_is_generated_by_ZU(const NicholsModel& m, const SplitSpec& split,
                                             uint32_t upToDegree, uint32_t ghostDepth) {
  ZuLayers zu = zu_basis(m, split, ghostDepth);
  std::vector<bool> isLeft(m.space().dim(), false);
  for (uint32_t l : split.left) isLeft[l - 1] = true;

  GenerationReport rep;
  // span bases per degree, grown by left-multiplying with Z elements
  std::vector<std::vector<ModelElt>> span(upToDegree + 1);
  span[0].push_back(m.one());
  for (uint32_t dturn = 1; dturn <= upToDegree; ++dturn) {
    Echelon ech;
    std::vector<ModelElt> basis;
    for (uint32_t j = 0; j < zu.layers.size(); ++j) {
      uint32_t dz = j + 1;
      if (dz > dturn) break;
      for (const ModelElt& z : zu.layers[j]) {
        for (const ModelElt& b : span[dturn - dz]) {
          ModelElt prod = m.multiply(z, b);
          if (prod.isZero()) continue;
          if (ech.insert(prod.coords).isPivot) basis.push_back(prod);
        }
      }
    }
    // each product of coinvariants must be a coinvariant
    for (const ModelElt& b : basis)
      for (uint32_t l : split.left)
        if (!m.derive(static_cast<Letter>(l - 1), b).isZero())
          throw CoinvariantError("internal: Z_U span leaves the coinvariant algebra");
    uint64_t kdim = coinvariant_space(m, split, dturn).size();
    rep.degrees.push_back({dturn, basis.size() == kdim, basis.size(), kdim});
    span[dturn] = std::move(basis);
  }
  return rep;
}

namespace {

/// Restriction of a realized braided space to a subset of letters that fills
/// whole grading classes.
std::shared_ptr<BraidedSpace> restrictedSpace(const BraidedSpace& sp,
                                              const std::vector<uint32_t>& letters1) {
  std::vector<uint32_t> idx;
  for (uint32_t l : letters1) idx.push_back(l - 1);
  std::sort(idx.begin(), idx.end());
  const Realization& r = sp.realization();
  Realization sub;
  sub.groupRank = r.groupRank;
  sub.action.resize(r.groupRank);
  for (uint32_t s = 0; s < r.groupRank; ++s) {
    auto& a = sub.action[s];
    a.assign(idx.size(), std::vector<Fq>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) a[i][j] = r.action[s][idx[i]][idx[j]];
  }
  for (uint32_t i : idx) sub.coactionDeg.push_back(r.coactionDeg[i]);
  return BraidedSpace::fromRealization(sp.field(), sub);
}

}  // namespace

FactorizationReport factorization_check(const NicholsModel& m, const SplitSpec& split) {
  split.validate(m.space().dim());
  FactorizationReport rep;
  uint32_t cutoff = m.cutoff();

  // H_K per bidegree (V-letters, U-letters)
  std::vector<bool> isLeft(m.space().dim(), false);
  for (uint32_t l : split.left) isLeft[l - 1] = true;
  std::vector<int> classSide(m.space().numClasses(), -1);
  for (Letter i = 0; i < m.space().dim(); ++i) {
    int side = isLeft[i] ? 0 : 1;
    if (classSide[m.space().classOf(i)] == -1) classSide[m.space().classOf(i)] = side;
    else if (classSide[m.space().classOf(i)] != side)
      throw CoinvariantError("split does not respect grading classes");
  }
  auto bidegOfGrade = [&](const Grade& g) {
    std::pair<uint32_t, uint32_t> bd{0, 0};
    for (uint32_t cl = 0; cl < g.size(); ++cl) (classSide[cl] == 0 ? bd.first : bd.second) += g[cl];
    return bd;
  };
  std::map<std::pair<uint32_t, uint32_t>, uint64_t> hK;
  hK[{0, 0}] = 1;
  for (uint32_t n = 1; n <= cutoff; ++n) {
    for (const ModelElt& k : coinvariant_space(m, split, n)) {
      // kernel vectors are grade-homogeneous; read the grade off the support
      const Grade& g = m.gradeOf(n, k.coords.lead());
      hK[bidegOfGrade(g)] += 1;
    }
  }

  // B(V) on the restricted space
  auto sub = restrictedSpace(m.space(), split.left);
  EngineConfig cfg;
  cfg.cutoff = cutoff;
  cfg.path = EnginePath::Derivation;
  auto mv = NicholsModel::build(sub, cfg);
  std::vector<uint64_t> hV = mv->hilbert();
  hV.resize(cutoff + 1, 0);

  // H_W per bidegree
  std::map<std::pair<uint32_t, uint32_t>, uint64_t> hW;
  for (const auto& [g, dim] : m.bidegreeHilbert(split.left)) hW[g] = dim;

  rep.bigradedPass = true;
  std::ostringstream detail;
  for (uint32_t a = 0; a <= cutoff; ++a)
    for (uint32_t b = 0; a + b <= cutoff; ++b) {
      uint64_t lhs = 0;
      if (auto it = hW.find({a, b}); it != hW.end()) lhs = it->second;
      uint64_t rhs = 0;
      for (uint32_t a1 = 0; a1 <= a; ++a1) {
        auto it = hK.find({a1, b});
        if (it == hK.end()) continue;
        rhs += it->second * hV[a - a1];
      }
      if (lhs != rhs) {
        rep.bigradedPass = false;
        detail << "bidegree (" << a << "," << b << "): H_W=" << lhs << " vs H_K*H_V=" << rhs << "; ";
      }
    }

  if (m.finiteness().finite && mv->finiteness().finite) {
    rep.dimW = m.finiteness().totalDim;
    rep.dimBV = mv->finiteness().totalDim;
    uint64_t dk = 0;
    for (const auto& [bd, d] : hK) dk += d;
    rep.dimK = dk;
    rep.dimensionPass = (*rep.dimW == dk * *rep.dimBV);
    if (!rep.dimensionPass)
      detail << "dim identity fails: " << *rep.dimW << " != " << dk << " * " << *rep.dimBV << "; ";
  }
  rep.detail = detail.str();
  return rep;
}

// ---------------------------------------------------------------------------

BracketTree BracketTree::leaf(uint32_t letter1based) {
  BracketTree t;
  t.letter = static_cast<int>(letter1based);
  return t;
}

BracketTree BracketTree::br(BracketTree l, BracketTree r) {
  BracketTree t;
  t.lhs = std::make_unique<BracketTree>(std::move(l));
  t.rhs = std::make_unique<BracketTree>(std::move(r));
  return t;
}

BracketTree BracketTree::clone() const {
  BracketTree t;
  t.letter = letter;
  if (lhs) t.lhs = std::make_unique<BracketTree>(lhs->clone());
  if (rhs) t.rhs = std::make_unique<BracketTree>(rhs->clone());
  return t;
}

BracketTree iteratedWordBracket(const std::vector<uint32_t>& letters1based) {
  if (letters1based.empty()) throw CoinvariantError("empty bracket word");
  BracketTree t = BracketTree::leaf(letters1based.back());
  for (std::size_t i = letters1based.size() - 1; i-- > 0;)
    t = BracketTree::br(BracketTree::leaf(letters1based[i]), std::move(t));
  return t;
}

TensorVector evalBracket(const BraidedSpace& b, const BracketTree& t) {
  if (t.letter >= 1) return TensorVector::letter(static_cast<Letter>(t.letter - 1), b.field());
  TensorVector l = evalBracket(b, *t.lhs);
  TensorVector r = evalBracket(b, *t.rhs);
  return braided_commutator(b, l, r);
}

uint32_t RootDatum::height() const {
  uint32_t h = 0;
  for (uint32_t c : root) h += c;
  return h;
}

Fq bilinearForm(const BraidedSpace& b, const std::vector<uint32_t>& alpha,
                const std::vector<uint32_t>& beta) {
  if (!b.isDiagonal()) throw CoinvariantError("bilinear form needs a diagonal braiding");
  const auto& q = b.qMatrix();
  Fq acc = Fq::one(b.field());
  for (uint32_t i = 0; i < alpha.size(); ++i)
    for (uint32_t j = 0; j < beta.size(); ++j) {
      long e = static_cast<long>(alpha[i]) * beta[j];
      if (e) acc *= q[i][j].pow(e);
    }
  return acc;
}

std::vector<std::optional<uint32_t>> RootSystemData::orders(const BraidedSpace& b) const {
  std::vector<std::optional<uint32_t>> out;
  for (const auto& r : roots) out.push_back(mult_order(bilinearForm(b, r.root, r.root)));
  return out;
}

ModelElt root_vector(const NicholsModel& m, const BracketTree& recipe) {
  return m.project(evalBracket(m.space(), recipe));
}

PbwReport pbw_check(const NicholsModel& m, const RootSystemData& rsd) {
  PbwReport rep;
  uint32_t cutoff = m.cutoff();
  auto ords = rsd.orders(m.space());

  // (i) Hilbert identity
  std::vector<Int> pred(cutoff + 1);
  pred[0] = 1;
  for (std::size_t r = 0; r < rsd.roots.size(); ++r) {
    uint32_t ht = rsd.roots[r].height();
    std::vector<Int> next(cutoff + 1);
    for (uint32_t e = 0;; ++e) {
      if (ords[r] && e >= *ords[r]) break;
      uint64_t d = static_cast<uint64_t>(e) * ht;
      if (d > cutoff) break;
      for (uint32_t i = 0; i + d <= cutoff; ++i) next[i + d] += pred[i];
    }
    pred = std::move(next);
  }
  rep.hilbertPass = true;
  std::ostringstream detail;
  for (uint32_t n = 0; n <= cutoff; ++n) {
    uint64_t want = pred[n].fits_ulong_p() ? pred[n].get_ui() : ~0ull;
    if (want != m.dim(n)) {
      rep.hilbertPass = false;
      detail << "hilbert mismatch at degree " << n << ": model " << m.dim(n) << " vs product "
             << want << "; ";
    }
  }

  // (ii) independence and spanning per degree; monomials are built rightmost
  // factor first, each step left-multiplying by a power of the next root, so
  // the folded lift words stay short and partial products are shared
  rep.independencePass = true;
  std::vector<std::vector<ModelElt>> monos(cutoff + 1);
  std::vector<ModelElt> rootElts;
  for (const auto& r : rsd.roots) rootElts.push_back(root_vector(m, r.recipe));
  std::function<void(std::size_t, uint32_t, const ModelElt&)> gen =
      [&](std::size_t idx, uint32_t deg, const ModelElt& partial) {
        monos[deg].push_back(partial);
        for (std::size_t r = idx; r < rsd.roots.size(); ++r) {
          uint32_t ht = rsd.roots[r].height();
          if (deg + ht > cutoff) continue;
          ModelElt power = rootElts[r];
          for (uint32_t e = 1;; ++e) {
            if (ords[r] && e >= *ords[r]) break;
            uint32_t nd = deg + e * ht;
            if (nd > cutoff) break;
            gen(r + 1, nd, m.multiply(power, partial));
            if (nd + ht <= cutoff && !(ords[r] && e + 1 >= *ords[r]))
              power = m.multiply(rootElts[r], power);
          }
        }
      };
  gen(0, 0, m.one());

  for (uint32_t n = 0; n <= cutoff; ++n) {
    std::vector<SparseVec> vecs;
    for (const auto& e : monos[n]) vecs.push_back(e.coords);
    uint64_t rank = rankOf(vecs);
    bool pass = rank == vecs.size() && rank == m.dim(n);
    if (!pass) {
      rep.independencePass = false;
      detail << "degree " << n << ": " << vecs.size() << " monomials, rank " << rank << ", dim "
             << m.dim(n) << "; ";
    }
    rep.perDegree.push_back({n, pass, rank, m.dim(n)});
  }
  rep.detail = detail.str();
  return rep;
}

std::vector<ModelElt> pbwMonomialsOfDegree(const NicholsModel& m, const RootSystemData& rsd,
                                           uint32_t n) {
  auto ords = rsd.orders(m.space());
  std::vector<ModelElt> out;
  std::vector<ModelElt> rootElts;
  for (const auto& r : rsd.roots) rootElts.push_back(root_vector(m, r.recipe));
  std::function<void(std::size_t, uint32_t, const ModelElt&)> gen =
      [&](std::size_t idx, uint32_t deg, const ModelElt& partial) {
        if (deg == n) {
          out.push_back(partial);
          return;
        }
        for (std::size_t r = idx; r < rsd.roots.size(); ++r) {
          uint32_t ht = rsd.roots[r].height();
          if (deg + ht > n) continue;
          ModelElt power = rootElts[r];
          for (uint32_t e = 1;; ++e) {
            if (ords[r] && e >= *ords[r]) break;
            uint32_t nd = deg + e * ht;
            if (nd > n) break;
            gen(r + 1, nd, m.multiply(power, partial));
            if (nd + ht <= n && !(ords[r] && e + 1 >= *ords[r]))
              power = m.multiply(rootElts[r], power);
          }
        }
      };
  gen(0, 0, m.one());
  return out;
}

bool ConvexityReport::pass() const {
  for (const auto& p : pairs)
    if (!p.pass) return false;
  return true;
}

ConvexityReport convexity_check(const NicholsModel& m, const RootSystemData& rsd) {
  ConvexityReport rep;
  uint32_t cutoff = m.cutoff();
  auto ords = rsd.orders(m.space());
  for (uint32_t i = 0; i < rsd.roots.size(); ++i) {
    for (uint32_t j = i + 1; j < rsd.roots.size(); ++j) {
      uint32_t ht = rsd.roots[i].height() + rsd.roots[j].height();
      if (ht > cutoff) continue;
      TensorVector ci = evalBracket(m.space(), rsd.roots[i].recipe);
      TensorVector cj = evalBracket(m.space(), rsd.roots[j].recipe);
      ModelElt comm = m.project(braided_commutator(m.space(), ci, cj));
      if (j == i + 1) {
        rep.pairs.push_back({i, j, true, comm.isZero()});
        continue;
      }
      // target multidegree
      std::vector<uint32_t> target(rsd.roots[i].root.size());
      for (std::size_t t = 0; t < target.size(); ++t)
        target[t] = rsd.roots[i].root[t] + rsd.roots[j].root[t];
      // intermediate monomials with that multidegree
      std::vector<ModelElt> span;
      std::function<void(long, std::vector<uint32_t>, ModelElt)> gen =
          [&](long idx, std::vector<uint32_t> left, ModelElt partial) {
            bool done = true;
            for (uint32_t c : left)
              if (c) done = false;
            if (done) {
              span.push_back(partial);
              return;
            }
            if (idx <= static_cast<long>(i)) return;
            for (long r = idx; r > static_cast<long>(i); --r) {
              ModelElt acc = partial;
              std::vector<uint32_t> rem = left;
              for (uint32_t e = 1;; ++e) {
                if (ords[r] && e >= *ords[r]) break;
                bool fits = true;
                for (std::size_t t = 0; t < rem.size(); ++t)
                  if (rsd.roots[r].root[t] > rem[t]) fits = false;
                if (!fits) break;
                for (std::size_t t = 0; t < rem.size(); ++t) rem[t] -= rsd.roots[r].root[t];
                acc = m.multiply(acc, root_vector(m, rsd.roots[r].recipe));
                gen(r - 1, rem, acc);
              }
            }
          };
      std::vector<uint32_t> interior = target;
      gen(static_cast<long>(j) - 1, interior, m.one());
      Echelon ech;
      for (const auto& s : span) ech.insert(s.coords);
      SparseVec c = comm.coords;
      ech.reduce(c);
      rep.pairs.push_back({i, j, false, c.isZero()});
    }
  }
  return rep;
}

}  // namespace nichols
