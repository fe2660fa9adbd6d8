#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nichols/scalars.hpp"

namespace nichols {

/// Letters are 0-based internally; external interfaces are 1-based.
using Letter = uint8_t;
using Word = std::vector<Letter>;

std::string wordStr(const Word& w);

/// Sparse linear combination of words of one common length, terms sorted by
/// word, no explicit zero coefficients.
class TensorVector {
 public:
  TensorVector() = default;
  static TensorVector monomial(Word w, Fq c);
  static TensorVector letter(Letter l, FieldSpec fs);

  bool isZero() const { return t_.empty(); }
  /// Word length; only meaningful for nonzero vectors.
  std::size_t length() const { return t_.empty() ? 0 : t_.front().first.size(); }
  const std::vector<std::pair<Word, Fq>>& terms() const { return t_; }

  void add(Word w, Fq c) { t_.emplace_back(std::move(w), std::move(c)); dirty_ = true; }
  void normalize();

  friend TensorVector operator+(const TensorVector& a, const TensorVector& b);
  friend TensorVector operator-(const TensorVector& a, const TensorVector& b);
  TensorVector operator-() const;
  TensorVector scaled(const Fq& c) const;
  /// Concatenation product in the tensor algebra.
  friend TensorVector operator*(const TensorVector& a, const TensorVector& b);
  friend bool operator==(const TensorVector& a, const TensorVector& b) { return a.t_ == b.t_; }

  std::string str() const;

 private:
  std::vector<std::pair<Word, Fq>> t_;
  bool dirty_ = false;
};

}  // namespace nichols
