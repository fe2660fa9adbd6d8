#include "nichols/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace {
using json = nlohmann::ordered_json;
}

namespace nichols {

namespace {

SparseVec applyColumns(const std::vector<SparseVec>& cols, const SparseVec& v) {
  SparseVec out;
  for (const auto& [j, c] : v.entries()) out.axpy(c, cols[j]);
  return out;
}

Grade addGrades(Grade a, const Grade& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

}  // namespace

std::shared_ptr<NicholsModel> NicholsModel::build(std::shared_ptr<const BraidedSpace> space,
                                                  const EngineConfig& cfg) {
  if (cfg.cutoff < 1) throw EngineError("cutoff must be >= 1");
  auto m = std::shared_ptr<NicholsModel>(new NicholsModel());
  m->space_ = std::move(space);
  m->path_ = cfg.path;
  m->requestedCutoff_ = cfg.cutoff;
  if (cfg.path == EnginePath::Derivation) {
    if (!m->space_->realized())
      throw EngineError("derivation path requires a group-like realization");
    m->buildDerivation(cfg.cutoff);
  } else {
    m->buildSymmetrizer(cfg.cutoff, cfg.symmetrizerCutoff);
  }
  return m;
}

void NicholsModel::buildDerivation(uint32_t cutoff) {
  const BraidedSpace& sp = *space_;
  const uint32_t theta = sp.dim();
  FieldSpec fs = sp.field();
  Fq one = Fq::one(fs);

  // level 0
  {
    Level l0;
    l0.grades.push_back(Grade(sp.numClasses(), 0));
    l0.basis.push_back({0, 0, {}, 0});
    l0.action.assign(theta, {SparseVec::unit(0, one)});
    levels_.push_back(std::move(l0));
  }
  // level 1: B^1 = V
  {
    Level l1;
    std::map<Grade, uint32_t> gid;
    l1.leftMult.assign(theta, std::vector<SparseVec>(1));
    l1.deriv.assign(theta, std::vector<SparseVec>(theta));
    l1.action.assign(theta, std::vector<SparseVec>(theta));
    for (Letter i = 0; i < theta; ++i) {
      Grade g = sp.gradeOfLetter(i);
      auto [it, fresh] = gid.emplace(g, static_cast<uint32_t>(l1.grades.size()));
      if (fresh) l1.grades.push_back(g);
      l1.basis.push_back({i, 0, {}, it->second});
      l1.leftMult[i][0] = SparseVec::unit(i, one);
    }
    for (Letter k = 0; k < theta; ++k) {
      for (Letter j = 0; j < theta; ++j) {
        l1.deriv[k][j] = (k == j) ? SparseVec::unit(0, one) : SparseVec();
        SparseVec col;
        const auto& am = sp.letterAction(k);
        for (uint32_t r = 0; r < theta; ++r)
          if (!am[r][j].isZero()) col.add(r, am[r][j]);
        col.normalize();
        l1.action[k][j] = std::move(col);
      }
    }
    levels_.push_back(std::move(l1));
  }

  computedCutoff_ = 1;
  const bool debugTiming = std::getenv("NICHOLS_DEBUG_TIMING") != nullptr;
  for (uint32_t n = 2; n <= cutoff; ++n) {
    auto levelStart = std::chrono::steady_clock::now();
    const Level& prev = levels_[n - 1];
    const uint32_t dimPrev = static_cast<uint32_t>(prev.basis.size());
    Level cur;
    cur.leftMult.assign(theta, std::vector<SparseVec>(dimPrev));
    cur.deriv.assign(theta, std::vector<SparseVec>());
    cur.action.assign(theta, std::vector<SparseVec>());

    // columns grouped by multidegree, ordered (letter, parent) within a block
    std::map<Grade, std::vector<std::pair<Letter, Idx>>> blocks;
    for (Letter i = 0; i < theta; ++i) {
      Grade gi = sp.gradeOfLetter(i);
      for (Idx j = 0; j < dimPrev; ++j)
        blocks[addGrades(gi, prev.grades[prev.basis[j].gradeId])].emplace_back(i, j);
    }

    std::map<Grade, uint32_t> gid;
    std::vector<std::vector<SparseVec>> rawPivotCols;  // per pivot: theta slices
    for (auto& [grade, cols] : blocks) {
      Echelon ech;
      std::vector<Idx> pivotGlobal;
      for (auto [i, j] : cols) {
        // Phi(x_i (x) b_j) component k = mu(x_i (x) d_k b_j) + delta_{ik} g_{d(k)} . b_j
        std::vector<SparseVec> comp(theta);
        SparseVec stacked;
        for (Letter k = 0; k < theta; ++k) {
          SparseVec ck = applyColumns(prev.leftMult[i], prev.deriv[k][j]);
          if (k == i) ck.axpy(one, prev.action[k][j]);
          for (const auto& [r, c] : ck.entries()) stacked.add(k * dimPrev + r, c);
          comp[k] = std::move(ck);
        }
        stacked.normalize();
        auto res = ech.insert(std::move(stacked));
        if (res.isPivot) {
          Idx global = static_cast<Idx>(cur.basis.size());
          pivotGlobal.push_back(global);
          auto [it, fresh] = gid.emplace(grade, static_cast<uint32_t>(cur.grades.size()));
          if (fresh) cur.grades.push_back(grade);
          cur.basis.push_back({i, j, {}, it->second});
          cur.leftMult[i][j] = SparseVec::unit(global, one);
          rawPivotCols.push_back(std::move(comp));
        } else {
          SparseVec expansion;
          for (const auto& [ord, c] : res.expansion.entries()) expansion.add(pivotGlobal[ord], c);
          expansion.normalize();
          cur.leftMult[i][j] = std::move(expansion);
        }
      }
    }

    const uint32_t dimCur = static_cast<uint32_t>(cur.basis.size());
    for (Letter k = 0; k < theta; ++k) {
      cur.deriv[k].resize(dimCur);
      cur.action[k].resize(dimCur);
    }
    for (Idx m0 = 0; m0 < dimCur; ++m0)
      for (Letter k = 0; k < theta; ++k) cur.deriv[k][m0] = std::move(rawPivotCols[m0][k]);

    // H_k(mu(x_i (x) b_j)) = sum_{i'} A_k[i'][i] mu(x_{i'} (x) H_k b_j)
    for (Letter k = 0; k < theta; ++k) {
      const auto& am = sp.letterAction(k);
      for (Idx m0 = 0; m0 < dimCur; ++m0) {
        Letter i = cur.basis[m0].letter;
        Idx j = cur.basis[m0].parent;
        SparseVec actedPrev = prev.action[k][j];
        SparseVec out;
        for (uint32_t i2 = 0; i2 < theta; ++i2) {
          if (am[i2][i].isZero()) continue;
          SparseVec term = applyColumns(cur.leftMult[i2], actedPrev);
          out.axpy(am[i2][i], term);
        }
        cur.action[k][m0] = std::move(out);
      }
    }

    bool zero = cur.basis.empty();
    if (debugTiming)
      std::fprintf(stderr, "level %u: dim %zu  %.2fs\n", n, cur.basis.size(),
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - levelStart)
                       .count());
    levels_.push_back(std::move(cur));
    computedCutoff_ = n;
    if (zero) {
      finite_.finite = true;
      uint64_t total = 0;
      for (const auto& l : levels_) total += l.basis.size();
      finite_.totalDim = total;
      return;
    }
  }
  finite_.finite = false;
}

void NicholsModel::buildSymmetrizer(uint32_t cutoff, uint32_t symCutoff) {
  const BraidedSpace& sp = *space_;
  const uint32_t theta = sp.dim();
  FieldSpec fs = sp.field();
  Fq one = Fq::one(fs);
  if (cutoff > symCutoff)
    throw EngineError("cutoff " + std::to_string(cutoff) + " above symmetrizer cutoff " +
                      std::to_string(symCutoff));

  {
    Level l0;
    l0.grades.push_back(Grade(sp.realized() ? sp.numClasses() : 1, 0));
    l0.basis.push_back({0, 0, {}, 0});
    levels_.push_back(std::move(l0));
  }

  computedCutoff_ = 0;
  // S_n images are extended level by level:
  // S_n(w l) = sum_k c_{n-1}...c_k applied to S_{n-1}(w) (x) l, evaluated as
  // the Horner tail u + c_{n-1}(u + c_{n-2}(... + c_1(u)...)).
  std::map<Word, TensorVector> prevImages;
  prevImages.emplace(Word{}, TensorVector::monomial({}, one));
  for (uint32_t n = 1; n <= cutoff; ++n) {
    std::map<Word, TensorVector> images;
    for (const auto& [w, sw] : prevImages) {
      for (Letter l = 0; l < theta; ++l) {
        Word nw = w;
        nw.push_back(l);
        // sum over the minimal coset lifts c_k ... c_{n-1} applied to
        // S_{n-1}(w) (x) l, accumulated along one running braid chain
        TensorVector u = sw * TensorVector::letter(l, fs);
        TensorVector acc = u;
        TensorVector run = u;
        for (uint32_t j = n; j-- > 1;) {
          run = braid_op(sp, j, run);
          acc = acc + run;
        }
        images.emplace(std::move(nw), std::move(acc));
      }
    }

    Level cur;
    std::map<Grade, std::vector<Word>> blocks;
    for (const auto& [w, img] : images) blocks[sp.gradeOfWord(w)].push_back(w);

    std::map<Grade, uint32_t> gid;
    for (auto& [grade, ws] : blocks) {
      Level::SymBlock blk;
      blk.rows = ws;  // sorted (map iteration order)
      auto rowOf = [&](const Word& w) -> Idx {
        auto it = std::lower_bound(blk.rows.begin(), blk.rows.end(), w);
        return static_cast<Idx>(it - blk.rows.begin());
      };
      for (const auto& w : ws) {
        const TensorVector& img = images.at(w);
        SparseVec col;
        for (const auto& [iw, c] : img.terms()) col.add(rowOf(iw), c);
        col.normalize();
        auto res = blk.ech.insert(std::move(col));
        if (res.isPivot) {
          Idx global = static_cast<Idx>(cur.basis.size());
          blk.pivotGlobal.push_back(global);
          auto [it, fresh] = gid.emplace(grade, static_cast<uint32_t>(cur.grades.size()));
          if (fresh) cur.grades.push_back(grade);
          cur.basis.push_back({0, 0, w, it->second});
        }
      }
      cur.symBlocks.emplace(grade, std::move(blk));
    }

    bool zero = cur.basis.empty();
    levels_.push_back(std::move(cur));
    computedCutoff_ = n;
    prevImages = std::move(images);
    if (zero) {
      finite_.finite = true;
      uint64_t total = 0;
      for (const auto& l : levels_) total += l.basis.size();
      finite_.totalDim = total;
      return;
    }
  }
  finite_.finite = false;
  (void)symCutoff;
}

uint64_t NicholsModel::dim(uint32_t n) const {
  if (n < levels_.size()) return levels_[n].basis.size();
  if (finite_.finite) return 0;
  throw EngineError("degree beyond cutoff");
}

std::vector<uint64_t> NicholsModel::hilbert() const {
  std::vector<uint64_t> h;
  for (const auto& l : levels_) h.push_back(l.basis.size());
  return h;
}

std::vector<std::pair<Grade, uint64_t>> NicholsModel::bihilbert() const {
  std::map<Grade, uint64_t> acc;
  for (const auto& l : levels_)
    for (const auto& b : l.basis) acc[l.grades[b.gradeId]] += 1;
  return {acc.begin(), acc.end()};
}

std::vector<std::pair<std::pair<uint32_t, uint32_t>, uint64_t>> NicholsModel::bidegreeHilbert(
    const std::vector<uint32_t>& leftLetters) const {
  if (!space_->realized()) throw EngineError("bidegree grading requires a realized space");
  std::vector<bool> isLeft(space_->dim(), false);
  for (uint32_t l : leftLetters) {
    if (l < 1 || l > space_->dim()) throw EngineError("letter index out of range");
    isLeft[l - 1] = true;
  }
  // bidegree = (sum of class counts of left classes, rest); left letters must
  // fill whole classes, otherwise bidegrees are not well defined
  std::vector<int> classSide(space_->numClasses(), -1);
  for (Letter i = 0; i < space_->dim(); ++i) {
    int side = isLeft[i] ? 0 : 1;
    if (classSide[space_->classOf(i)] == -1) classSide[space_->classOf(i)] = side;
    else if (classSide[space_->classOf(i)] != side)
      throw EngineError("split does not respect grading classes");
  }
  std::map<std::pair<uint32_t, uint32_t>, uint64_t> acc;
  for (const auto& l : levels_)
    for (const auto& b : l.basis) {
      const Grade& g = l.grades[b.gradeId];
      uint32_t a = 0, c = 0;
      for (uint32_t cl = 0; cl < g.size(); ++cl) (classSide[cl] == 0 ? a : c) += g[cl];
      acc[{a, c}] += 1;
    }
  return {acc.begin(), acc.end()};
}

const Grade& NicholsModel::gradeOf(uint32_t n, Idx basisIdx) const {
  const Level& l = levels_.at(n);
  return l.grades[l.basis[basisIdx].gradeId];
}

Word NicholsModel::liftWord(uint32_t n, Idx basisIdx) const {
  if (path_ == EnginePath::Symmetrizer) return levels_.at(n).basis[basisIdx].word;
  Word w;
  uint32_t lev = n;
  Idx idx = basisIdx;
  while (lev >= 1) {
    w.push_back(levels_[lev].basis[idx].letter);
    idx = levels_[lev].basis[idx].parent;
    --lev;
  }
  return w;
}

ModelElt NicholsModel::one() const {
  return {0, SparseVec::unit(0, Fq::one(space_->field()))};
}

ModelElt NicholsModel::letterElt(Letter i) const {
  if (path_ == EnginePath::Symmetrizer)
    return projectWord({i});
  return {1, SparseVec::unit(i, Fq::one(space_->field()))};
}

ModelElt NicholsModel::multiplyLetterLeft(Letter i, const ModelElt& u) const {
  uint32_t n = u.degree + 1;
  if (n >= levels_.size()) {
    if (finite_.finite) return {n, {}};
    throw EngineError("degree beyond cutoff");
  }
  if (path_ == EnginePath::Symmetrizer) {
    TensorVector lift;
    for (const auto& [j, c] : u.coords.entries())
      lift.add(levels_[u.degree].basis[j].word, c);
    lift.normalize();
    return project(TensorVector::letter(i, space_->field()) * lift);
  }
  return {n, applyColumns(levels_[n].leftMult[i], u.coords)};
}

ModelElt NicholsModel::projectWord(const Word& w) const {
  uint32_t n = static_cast<uint32_t>(w.size());
  if (n >= levels_.size() && finite_.finite) return {n, {}};
  if (n > computedCutoff_) throw EngineError("degree beyond cutoff");
  if (path_ == EnginePath::Symmetrizer)
    return project(TensorVector::monomial(w, Fq::one(space_->field())));
  ModelElt e = one();
  for (auto it = w.rbegin(); it != w.rend(); ++it) e = multiplyLetterLeft(*it, e);
  return e;
}

ModelElt NicholsModel::project(const TensorVector& v) const {
  if (v.isZero()) return {0, {}};
  uint32_t n = static_cast<uint32_t>(v.length());
  if (n >= levels_.size() && finite_.finite) return {n, {}};
  if (n > computedCutoff_) throw EngineError("degree beyond cutoff");
  if (path_ == EnginePath::Derivation) {
    ModelElt acc{n, {}};
    for (const auto& [w, c] : v.terms()) {
      ModelElt p = projectWord(w);
      acc.coords.axpy(c, p.coords);
    }
    return acc;
  }
  // symmetrizer path: reduce S_n(v) blockwise against the stored echelons
  const Level& l = levels_[n];
  TensorVector img = quantum_symmetrizer(*space_, n, v, n);
  std::map<Grade, TensorVector> parts;
  for (const auto& [w, c] : img.terms()) parts[space_->gradeOfWord(w)].add(w, c);
  ModelElt acc{n, {}};
  for (auto& [g, part] : parts) {
    part.normalize();
    auto it = l.symBlocks.find(g);
    if (it == l.symBlocks.end()) throw EngineError("internal: missing grade block");
    const auto& blk = it->second;
    SparseVec col;
    for (const auto& [w, c] : part.terms()) {
      auto rit = std::lower_bound(blk.rows.begin(), blk.rows.end(), w);
      col.add(static_cast<Idx>(rit - blk.rows.begin()), c);
    }
    col.normalize();
    SparseVec expansion = blk.ech.reduce(col);
    if (!col.isZero()) throw EngineError("internal: symmetrizer image fails to reduce");
    for (const auto& [ord, c] : expansion.entries()) acc.coords.add(blk.pivotGlobal[ord], c);
  }
  acc.coords.normalize();
  return acc;
}

ModelElt NicholsModel::multiply(const ModelElt& u, const ModelElt& v) const {
  if (u.isZero() || v.isZero()) return {u.degree + v.degree, {}};
  if (u.degree == 0) {
    ModelElt r = v;
    r.coords.scale(u.coords.at(0));
    return r;
  }
  ModelElt acc{u.degree + v.degree, {}};
  if (acc.degree >= levels_.size() && finite_.finite) return acc;
  if (acc.degree > computedCutoff_) throw EngineError("degree beyond cutoff");
  for (const auto& [m, c] : u.coords.entries()) {
    Word w = liftWord(u.degree, m);
    ModelElt t = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) t = multiplyLetterLeft(*it, t);
    acc.coords.axpy(c, t.coords);
  }
  return acc;
}

ModelElt NicholsModel::pow(const ModelElt& u, uint32_t e) const {
  ModelElt acc = one();
  for (uint32_t i = 0; i < e; ++i) acc = multiply(acc, u);
  return acc;
}

ModelElt NicholsModel::derive(Letter k, const ModelElt& u) const {
  if (path_ != EnginePath::Derivation) throw EngineError("derivations need the derivation path");
  if (u.degree == 0) return {0, {}};
  return {u.degree - 1, applyColumns(levels_[u.degree].deriv[k], u.coords)};
}

ModelElt NicholsModel::letterAction(Letter k, const ModelElt& u) const {
  if (path_ != EnginePath::Derivation) throw EngineError("actions need the derivation path");
  return {u.degree, applyColumns(levels_[u.degree].action[k], u.coords)};
}

ModelElt NicholsModel::wordAction(const Word& w, const ModelElt& u) const {
  ModelElt r = u;
  for (Letter l : w) r = letterAction(l, r);
  return r;
}

NicholsModel::RelationSpace NicholsModel::relation_space(uint32_t n) const {
  if (n < 2 || n > computedCutoff_) throw EngineError("relation_space degree out of range");
  RelationSpace rs;
  std::map<Grade, uint64_t> counts;
  const Level& cur = levels_[n];
  const Level& prev = levels_[n - 1];
  const uint32_t dimPrev = static_cast<uint32_t>(prev.basis.size());
  if (path_ == EnginePath::Derivation) {
    std::map<std::pair<Letter, Idx>, Idx> pivotOf;
    for (Idx m = 0; m < cur.basis.size(); ++m)
      pivotOf[{cur.basis[m].letter, cur.basis[m].parent}] = m;
    Fq one = Fq::one(space_->field());
    for (Letter i = 0; i < space_->dim(); ++i) {
      Grade gi = space_->gradeOfLetter(i);
      for (Idx j = 0; j < dimPrev; ++j) {
        auto it = pivotOf.find({i, j});
        if (it != pivotOf.end()) continue;
        SparseVec kv = SparseVec::unit(i * dimPrev + j, one);
        for (const auto& [m, c] : cur.leftMult[i][j].entries()) {
          const auto& be = cur.basis[m];
          kv.add(be.letter * dimPrev + be.parent, -c);
        }
        kv.normalize();
        counts[addGrades(gi, prev.grades[prev.basis[j].gradeId])] += 1;
        rs.kernel.push_back(std::move(kv));
      }
    }
  } else {
    // kernel of S_n over the enumerated words of each block
    for (const auto& [g, blk] : cur.symBlocks) {
      Echelon ech;
      std::vector<Idx> pivotLocal;
      Fq one = Fq::one(space_->field());
      for (Idx w = 0; w < blk.rows.size(); ++w) {
        TensorVector img = quantum_symmetrizer(*space_, n, TensorVector::monomial(blk.rows[w], one), n);
        SparseVec col;
        for (const auto& [iw, c] : img.terms()) {
          auto rit = std::lower_bound(blk.rows.begin(), blk.rows.end(), iw);
          col.add(static_cast<Idx>(rit - blk.rows.begin()), c);
        }
        col.normalize();
        auto res = ech.insert(std::move(col));
        if (res.isPivot) {
          pivotLocal.push_back(w);
        } else {
          SparseVec kv = SparseVec::unit(w, one);
          for (const auto& [ord, c] : res.expansion.entries()) kv.add(pivotLocal[ord], -c);
          kv.normalize();
          counts[g] += 1;
          rs.kernel.push_back(std::move(kv));
        }
      }
    }
  }
  rs.countsPerGrade.assign(counts.begin(), counts.end());
  return rs;
}

// ----------------------------- serialization -------------------------------

namespace {

json fqToJson(const Fq& x) { return x.str(); }

Fq fqFromJson(const json& j, FieldSpec fs) { return parse_scalar(j.get<std::string>(), fs); }

json vecToJson(const SparseVec& v) {
  json a = json::array();
  for (const auto& [i, c] : v.entries()) a.push_back(json::array({i, fqToJson(c)}));
  return a;
}

SparseVec vecFromJson(const json& j, FieldSpec fs) {
  SparseVec v;
  for (const auto& e : j) v.add(e[0].get<Idx>(), fqFromJson(e[1], fs));
  v.normalize();
  return v;
}

json matToJson(const std::vector<SparseVec>& cols) {
  json a = json::array();
  for (const auto& c : cols) a.push_back(vecToJson(c));
  return a;
}

std::vector<SparseVec> matFromJson(const json& j, FieldSpec fs) {
  std::vector<SparseVec> cols;
  for (const auto& c : j) cols.push_back(vecFromJson(c, fs));
  return cols;
}

json wordToJson(const Word& w) {
  json a = json::array();
  for (Letter l : w) a.push_back(static_cast<int>(l));
  return a;
}

Word wordFromJson(const json& j) {
  Word w;
  for (const auto& l : j) w.push_back(static_cast<Letter>(l.get<int>()));
  return w;
}

}  // namespace

void NicholsModel::serialize(std::ostream& os) const {
  json root;
  root["format"] = "nichols-model";
  root["version"] = 1;
  root["path"] = path_ == EnginePath::Derivation ? "derivation" : "symmetrizer";
  root["requestedCutoff"] = requestedCutoff_;
  root["computedCutoff"] = computedCutoff_;
  root["finite"] = finite_.finite;
  root["totalDim"] = finite_.totalDim;
  json jlevels = json::array();
  for (const auto& l : levels_) {
    json jl;
    json jg = json::array();
    for (const auto& g : l.grades) jg.push_back(g);
    jl["grades"] = jg;
    json jb = json::array();
    for (const auto& b : l.basis)
      jb.push_back(json::array(
          {static_cast<int>(b.letter), b.parent, wordToJson(b.word), b.gradeId}));
    jl["basis"] = jb;
    json jlm = json::array(), jd = json::array(), ja = json::array();
    for (const auto& m0 : l.leftMult) jlm.push_back(matToJson(m0));
    for (const auto& m0 : l.deriv) jd.push_back(matToJson(m0));
    for (const auto& m0 : l.action) ja.push_back(matToJson(m0));
    jl["leftMult"] = jlm;
    jl["deriv"] = jd;
    jl["action"] = ja;
    json jsb = json::array();
    for (const auto& [g, blk] : l.symBlocks) {
      json jblk;
      jblk["grade"] = g;
      json jr = json::array();
      for (const auto& w : blk.rows) jr.push_back(wordToJson(w));
      jblk["rows"] = jr;
      json jp = json::array();
      for (const auto& e : blk.ech.pivots())
        jp.push_back(json::array({vecToJson(e.vec), vecToJson(e.expansion)}));
      jblk["pivots"] = jp;
      jblk["pivotGlobal"] = blk.pivotGlobal;
      jsb.push_back(std::move(jblk));
    }
    jl["symBlocks"] = jsb;
    jlevels.push_back(std::move(jl));
  }
  root["levels"] = jlevels;
  os << root.dump();
}

std::shared_ptr<NicholsModel> NicholsModel::deserialize(std::istream& is,
                                                        std::shared_ptr<const BraidedSpace> space) {
  json root = json::parse(is);
  if (root.at("format") != "nichols-model" || root.at("version") != 1)
    throw EngineError("unrecognized model blob");
  auto m = std::shared_ptr<NicholsModel>(new NicholsModel());
  m->space_ = std::move(space);
  FieldSpec fs = m->space_->field();
  m->path_ = root.at("path") == "derivation" ? EnginePath::Derivation : EnginePath::Symmetrizer;
  m->requestedCutoff_ = root.at("requestedCutoff").get<uint32_t>();
  m->computedCutoff_ = root.at("computedCutoff").get<uint32_t>();
  m->finite_.finite = root.at("finite").get<bool>();
  m->finite_.totalDim = root.at("totalDim").get<uint64_t>();
  for (const auto& jl : root.at("levels")) {
    Level l;
    for (const auto& g : jl.at("grades")) l.grades.push_back(g.get<Grade>());
    for (const auto& b : jl.at("basis"))
      l.basis.push_back({static_cast<Letter>(b[0].get<int>()), b[1].get<Idx>(),
                         wordFromJson(b[2]), b[3].get<uint32_t>()});
    for (const auto& m0 : jl.at("leftMult")) l.leftMult.push_back(matFromJson(m0, fs));
    for (const auto& m0 : jl.at("deriv")) l.deriv.push_back(matFromJson(m0, fs));
    for (const auto& m0 : jl.at("action")) l.action.push_back(matFromJson(m0, fs));
    for (const auto& jblk : jl.at("symBlocks")) {
      Level::SymBlock blk;
      for (const auto& w : jblk.at("rows")) blk.rows.push_back(wordFromJson(w));
      std::vector<Echelon::Entry> entries;
      for (const auto& p : jblk.at("pivots"))
        entries.push_back({vecFromJson(p[0], fs), vecFromJson(p[1], fs)});
      blk.ech = Echelon::restore(std::move(entries));
      blk.pivotGlobal = jblk.at("pivotGlobal").get<std::vector<Idx>>();
      l.symBlocks.emplace(jblk.at("grade").get<Grade>(), std::move(blk));
    }
    m->levels_.push_back(std::move(l));
  }
  return m;
}

std::string NicholsModel::structuralSummary() const {
  std::ostringstream os;
  os << "path=" << (path_ == EnginePath::Derivation ? "derivation" : "symmetrizer")
     << " cutoff=" << computedCutoff_ << " finite=" << (finite_.finite ? 1 : 0);
  if (finite_.finite) os << " total=" << finite_.totalDim;
  os << " dims=";
  for (const auto& l : levels_) os << l.basis.size() << ",";
  return os.str();
}

// ------------------------------- growth fit --------------------------------

std::vector<Int> GrowthPrediction::seriesPrefix(uint32_t n) const {
  std::vector<Int> acc(n + 1);
  acc[0] = 1;
  for (const auto& [deg, bound] : generators) {
    if (deg == 0) throw EngineError("generator of degree 0 in growth prediction");
    std::vector<Int> next(n + 1);
    for (uint32_t e = 0;; ++e) {
      if (bound != 0 && e >= bound) break;
      uint64_t d = static_cast<uint64_t>(e) * deg;
      if (d > n) break;
      for (uint32_t i = 0; i + d <= n; ++i) next[i + d] += acc[i];
    }
    acc = std::move(next);
  }
  return acc;
}

uint32_t GrowthPrediction::polyDegree() const {
  uint32_t g = 0;
  for (const auto& [deg, bound] : generators)
    if (bound == 0) ++g;
  return g;
}

uint32_t GrowthPrediction::period() const {
  uint32_t p = 1;
  for (const auto& [deg, bound] : generators)
    if (bound == 0) p = std::lcm(p, deg);
  return p;
}

namespace {

// Degree of the interpolating polynomial through equally spaced samples;
// nullopt when saturated (highest difference row nonzero, degree not certified).
std::optional<uint32_t> interpolantDegree(std::vector<Int> cur) {
  const std::size_t m = cur.size();
  if (m < 2) return std::nullopt;
  auto allZero = [](const std::vector<Int>& v) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  };
  uint32_t level = 0, highest = 0;
  while (cur.size() > 1) {
    std::vector<Int> nxt(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) nxt[i] = cur[i + 1] - cur[i];
    ++level;
    if (!allZero(nxt)) highest = level;
    cur = std::move(nxt);
  }
  if (highest == m - 1) return std::nullopt;
  return highest;
}

}  // namespace

GrowthEstimate gk_growth_estimate(const NicholsModel& m,
                                  const std::optional<GrowthPrediction>& prediction) {
  return gk_growth_estimate_dims(m.hilbert(), m.finiteness().finite, prediction);
}

GrowthEstimate gk_growth_estimate_dims(const std::vector<uint64_t>& dims, bool knownFinite,
                                       const std::optional<GrowthPrediction>& prediction) {
  if (dims.empty()) return {GrowthVerdict::TooShort, std::nullopt, "no data"};
  uint32_t cutoff = static_cast<uint32_t>(dims.size()) - 1;
  if (!knownFinite && cutoff < 6)
    return {GrowthVerdict::TooShort, std::nullopt, "need at least 6 computed degrees"};

  if (knownFinite && !prediction)
    return {GrowthVerdict::Match, 0, "finite dimensional"};

  if (prediction) {
    auto pred = prediction->seriesPrefix(cutoff);
    for (uint32_t n = 0; n <= cutoff; ++n) {
      uint64_t want = pred[n].fits_ulong_p() ? pred[n].get_ui() : ~0ull;
      if (want != dims[n])
        return {GrowthVerdict::Mismatch, std::nullopt,
                "dimension mismatch with prediction at degree " + std::to_string(n)};
    }
    uint32_t g = prediction->polyDegree();
    if (g == 0) return {GrowthVerdict::Match, 0, "finite by prediction, dims verified"};
    uint32_t p = prediction->period();
    // certify degree g on the prediction's cumulative, sampled with step p
    uint32_t samples = g + 3;
    uint32_t horizon = p * samples + cutoff;
    auto ext = prediction->seriesPrefix(horizon);
    std::vector<Int> cum(ext.size());
    Int run = 0;
    for (std::size_t i = 0; i < ext.size(); ++i) {
      run += ext[i];
      cum[i] = run;
    }
    std::vector<Int> pick;
    for (uint32_t s = 0; s < samples; ++s) pick.push_back(cum[horizon - (samples - 1 - s) * p]);
    auto deg = interpolantDegree(std::move(pick));
    if (!deg || *deg != g)
      return {GrowthVerdict::Mismatch, std::nullopt, "prediction series is not of the claimed growth"};
    return {GrowthVerdict::Match, g, "dims match prediction; growth degree " + std::to_string(g)};
  }

  // raw fit: interpolant degree of the cumulative on the last ceil(cutoff/2) points
  uint32_t mwin = (cutoff + 1) / 2;
  if (mwin < 2) return {GrowthVerdict::TooShort, std::nullopt, "window too small"};
  std::vector<Int> cum;
  Int run = 0;
  for (uint64_t d : dims) {
    run += static_cast<unsigned long>(d);
    cum.push_back(run);
  }
  std::vector<Int> window(cum.end() - mwin, cum.end());
  auto deg = interpolantDegree(std::move(window));
  if (!deg) return {GrowthVerdict::TooShort, std::nullopt, "no stable fit on the window"};
  return {GrowthVerdict::Match, *deg, "window fit degree " + std::to_string(*deg)};
}

}  // namespace nichols
