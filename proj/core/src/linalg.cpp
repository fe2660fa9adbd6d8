#include "nichols/linalg.hpp"

#include <algorithm>

namespace nichols {

SparseVec SparseVec::unit(Idx i, const Fq& c) {
  SparseVec v;
  if (!c.isZero()) v.e_.emplace_back(i, c);
  return v;
}

void SparseVec::normalize() {
  if (!dirty_) return;
  std::sort(e_.begin(), e_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Idx, Fq>> out;
  out.reserve(e_.size());
  for (auto& [i, c] : e_) {
    if (!out.empty() && out.back().first == i) {
      out.back().second += c;
      if (out.back().second.isZero()) out.pop_back();
    } else if (!c.isZero()) {
      out.emplace_back(i, std::move(c));
    }
  }
  e_ = std::move(out);
  dirty_ = false;
}

void SparseVec::axpy(const Fq& c, const SparseVec& other) {
  if (c.isZero() || other.e_.empty()) return;
  std::vector<std::pair<Idx, Fq>> out;
  out.reserve(e_.size() + other.e_.size());
  std::size_t i = 0, j = 0;
  while (i < e_.size() || j < other.e_.size()) {
    if (j >= other.e_.size() || (i < e_.size() && e_[i].first < other.e_[j].first)) {
      out.push_back(std::move(e_[i++]));
    } else if (i >= e_.size() || other.e_[j].first < e_[i].first) {
      Fq v = c * other.e_[j].second;
      if (!v.isZero()) out.emplace_back(other.e_[j].first, std::move(v));
      ++j;
    } else {
      Fq v = e_[i].second + c * other.e_[j].second;
      if (!v.isZero()) out.emplace_back(e_[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  e_ = std::move(out);
}

void SparseVec::scale(const Fq& c) {
  if (c.isZero()) {
    e_.clear();
    return;
  }
  for (auto& [i, v] : e_) v *= c;
}

SparseVec SparseVec::scaled(const Fq& c) const {
  SparseVec r = *this;
  r.scale(c);
  return r;
}

Fq SparseVec::at(Idx i) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), i,
                             [](const auto& p, Idx k) { return p.first < k; });
  if (it != e_.end() && it->first == i) return it->second;
  return Fq();
}

SparseVec Echelon::reduce(SparseVec& v) const {
  SparseVec expansion;
  while (!v.isZero()) {
    auto it = byLead_.find(v.lead());
    if (it == byLead_.end()) break;
    const Entry& p = pivots_[it->second];
    Fq mu = v.leadCoeff();
    expansion.axpy(mu, p.expansion);
    v.axpy(-mu, p.vec);
  }
  return expansion;
}

Echelon::InsertResult Echelon::insert(SparseVec v) {
  v.normalize();
  SparseVec expansion;
  // full elimination pass: also clear non-leading hits for stability of leads
  while (!v.isZero()) {
    auto it = byLead_.find(v.lead());
    if (it == byLead_.end()) break;
    const Entry& p = pivots_[it->second];
    Fq mu = v.leadCoeff();
    expansion.axpy(mu, p.expansion);
    v.axpy(-mu, p.vec);
  }
  if (v.isZero()) {
    return {false, 0, std::move(expansion)};
  }
  Idx ord = static_cast<Idx>(pivots_.size());
  Fq lcInv = v.leadCoeff().inv();
  SparseVec nv = v.scaled(lcInv);
  // new pivot column = v_orig; e_new = v_orig - sum(expansion · original pivots), scaled
  SparseVec exp2;
  exp2.add(ord, lcInv);
  exp2.normalize();
  exp2.axpy(-lcInv, expansion);
  // e_new = lcInv * (v_orig - expansion·pivots)  =>  expansion over originals
  pivots_.push_back(Entry{std::move(nv), std::move(exp2)});
  byLead_[pivots_.back().vec.lead()] = ord;
  return {true, ord, {}};
}

Echelon Echelon::restore(std::vector<Entry> pivots) {
  Echelon e;
  e.pivots_ = std::move(pivots);
  for (Idx i = 0; i < e.pivots_.size(); ++i) e.byLead_[e.pivots_[i].vec.lead()] = i;
  return e;
}

std::size_t rankOf(const std::vector<SparseVec>& vecs) {
  Echelon e;
  for (const auto& v : vecs) e.insert(v);
  return e.rank();
}

}  // namespace nichols
