#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "nichols/scalars.hpp"

namespace nichols {

using Idx = uint32_t;

/// Sparse vector over Fq, entries sorted by index, no explicit zeros.
class SparseVec {
 public:
  SparseVec() = default;
  static SparseVec unit(Idx i, const Fq& c);

  bool isZero() const { return e_.empty(); }
  std::size_t nnz() const { return e_.size(); }
  Idx lead() const { return e_.front().first; }
  const Fq& leadCoeff() const { return e_.front().second; }
  const std::vector<std::pair<Idx, Fq>>& entries() const { return e_; }

  void add(Idx i, const Fq& c) { e_.emplace_back(i, c); dirty_ = true; }
  void normalize();

  /// this += c * other (both normalized).
  void axpy(const Fq& c, const SparseVec& other);
  void scale(const Fq& c);
  SparseVec scaled(const Fq& c) const;
  Fq at(Idx i) const;

  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.e_ == b.e_; }

 private:
  std::vector<std::pair<Idx, Fq>> e_;
  bool dirty_ = false;
};

/// Incremental Gaussian elimination with expansion bookkeeping.
///
/// Columns are inserted in a fixed order; pivot vectors are normalized to
/// leading coefficient 1 and fully reduced order is not maintained (only
/// forward elimination), which keeps insertion deterministic and cheap.
/// For every column the result reports either the new pivot ordinal or the
/// expansion of the column over the previously inserted pivot columns.
class Echelon {
 public:
  struct InsertResult {
    bool isPivot;
    Idx pivotOrdinal;   // valid when isPivot
    SparseVec expansion;  // over pivot ordinals, valid when !isPivot
  };

  struct Entry {
    SparseVec vec;    // reduced, lead coefficient 1
    SparseVec expansion;  // over pivot ordinals of the original pivot columns
  };

  InsertResult insert(SparseVec v);
  /// Reduce v against the pivots; returns expansion part and leaves remainder in v.
  SparseVec reduce(SparseVec& v) const;
  std::size_t rank() const { return pivots_.size(); }
  const std::vector<Entry>& pivots() const { return pivots_; }
  static Echelon restore(std::vector<Entry> pivots);

 private:
  std::vector<Entry> pivots_;
  std::map<Idx, Idx> byLead_;  // lead row -> pivot ordinal
};

/// Rank of a list of vectors.
std::size_t rankOf(const std::vector<SparseVec>& vecs);

}  // namespace nichols
