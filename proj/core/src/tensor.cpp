#include "nichols/tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace nichols {

std::string wordStr(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += std::to_string(w[i] + 1);
  }
  return s.empty() ? "1" : s;
}

TensorVector TensorVector::monomial(Word w, Fq c) {
  TensorVector v;
  if (!c.isZero()) v.t_.emplace_back(std::move(w), std::move(c));
  return v;
}

TensorVector TensorVector::letter(Letter l, FieldSpec fs) {
  return monomial(Word{l}, Fq::one(fs));
}

void TensorVector::normalize() {
  if (!dirty_) return;
  for (const auto& [w, c] : t_) {
    if (w.size() != t_.front().first.size())
      throw std::logic_error("TensorVector mixes word lengths");
  }
  std::sort(t_.begin(), t_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Word, Fq>> out;
  out.reserve(t_.size());
  for (auto& [w, c] : t_) {
    if (!out.empty() && out.back().first == w) {
      out.back().second += c;
      if (out.back().second.isZero()) out.pop_back();
    } else if (!c.isZero()) {
      out.emplace_back(std::move(w), std::move(c));
    }
  }
  t_ = std::move(out);
  dirty_ = false;
}

TensorVector operator+(const TensorVector& a, const TensorVector& b) {
  if (a.isZero()) return b;
  if (b.isZero()) return a;
  if (a.length() != b.length()) throw std::logic_error("TensorVector sum of different lengths");
  TensorVector r;
  r.t_.reserve(a.t_.size() + b.t_.size());
  std::size_t i = 0, j = 0;
  while (i < a.t_.size() || j < b.t_.size()) {
    if (j >= b.t_.size() || (i < a.t_.size() && a.t_[i].first < b.t_[j].first)) {
      r.t_.push_back(a.t_[i++]);
    } else if (i >= a.t_.size() || b.t_[j].first < a.t_[i].first) {
      r.t_.push_back(b.t_[j++]);
    } else {
      Fq c = a.t_[i].second + b.t_[j].second;
      if (!c.isZero()) r.t_.emplace_back(a.t_[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

TensorVector operator-(const TensorVector& a, const TensorVector& b) { return a + (-b); }

TensorVector TensorVector::operator-() const {
  TensorVector r = *this;
  for (auto& [w, c] : r.t_) c = -c;
  return r;
}

TensorVector TensorVector::scaled(const Fq& c) const {
  if (c.isZero()) return {};
  TensorVector r = *this;
  for (auto& [w, x] : r.t_) x *= c;
  return r;
}

TensorVector operator*(const TensorVector& a, const TensorVector& b) {
  TensorVector r;
  for (const auto& [wa, ca] : a.t_) {
    for (const auto& [wb, cb] : b.t_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add(std::move(w), ca * cb);
    }
  }
  r.normalize();
  return r;
}

std::string TensorVector::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : t_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")*" + wordStr(w);
  }
  return s;
}

}  // namespace nichols
