#pragma once

#include <random>
#include <vector>

#include "nichols/braidspace.hpp"
#include "nichols/scalars.hpp"
#include "nichols/tensor.hpp"

namespace nichols::testing {

inline Fq randomLaurent(std::mt19937& rng, FieldSpec fs, int maxDeg = 4) {
  std::uniform_int_distribution<int> nterms(1, 3), coef(-5, 5), deg(-maxDeg, maxDeg);
  Fq acc = Fq::zero(fs);
  for (int t = 0, n = nterms(rng); t < n; ++t) {
    int c = coef(rng);
    if (c == 0) c = 1;
    acc += Fq::integer(fs, c) * Fq::qpow(fs, deg(rng));
  }
  return acc;
}

inline Fq randomNonzero(std::mt19937& rng, FieldSpec fs) {
  for (;;) {
    Fq x = randomLaurent(rng, fs);
    if (!x.isZero()) return x;
  }
}

/// Random diagonal braiding with root-of-unity entries of order <= maxOrd.
inline std::shared_ptr<BraidedSpace> randomRootOfUnityDiagonal(std::mt19937& rng, uint32_t rank,
                                                               uint32_t n, int /*maxOrd*/) {
  FieldSpec fs = FieldSpec::cyclotomic(n);
  std::uniform_int_distribution<int> pw(0, static_cast<int>(n) - 1);
  std::vector<std::vector<Fq>> q(rank, std::vector<Fq>(rank));
  for (uint32_t i = 0; i < rank; ++i)
    for (uint32_t j = 0; j < rank; ++j) q[i][j] = Fq::q(fs).pow(pw(rng));
  return BraidedSpace::diagonal(fs, q);
}

inline TensorVector randomTensor(std::mt19937& rng, const BraidedSpace& b, uint32_t len,
                                 int terms = 3) {
  std::uniform_int_distribution<int> letter(0, static_cast<int>(b.dim()) - 1);
  TensorVector v;
  for (int t = 0; t < terms; ++t) {
    Word w(len);
    for (auto& l : w) l = static_cast<Letter>(letter(rng));
    v.add(std::move(w), randomLaurent(rng, b.field(), 2));
  }
  v.normalize();
  return v;
}

/// Literal n!-term quantum symmetrizer: sum of braided lifts over all
/// permutations, each lift applied along a reduced word obtained by bubble
/// sort. Independent of the recursive implementation.
inline TensorVector literalSymmetrizer(const BraidedSpace& b, uint32_t n, const TensorVector& v) {
  std::vector<uint32_t> perm(n);
  for (uint32_t i = 0; i < n; ++i) perm[i] = i;
  TensorVector acc;
  do {
    // reduced word for perm via bubble sort: record adjacent transpositions
    std::vector<uint32_t> word;
    std::vector<uint32_t> p = perm;
    for (bool moved = true; moved;) {
      moved = false;
      for (uint32_t i = 0; i + 1 < n; ++i) {
        if (p[i] > p[i + 1]) {
          std::swap(p[i], p[i + 1]);
          word.push_back(i + 1);
          moved = true;
        }
      }
    }
    // braided lift: apply c_{word[last]} first (composition along the word)
    TensorVector t = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it) t = braid_op(b, *it, t);
    acc = acc + t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

/// Shuffle-coproduct route to the skew-derivation:
/// d_f = (id (x) f) Delta^{n-1,1}, with the (n-1,1) component assembled from
/// braid moves carrying each slot to the end.
inline TensorVector shuffleDerivation(const BraidedSpace& b, Letter k, const TensorVector& v) {
  if (v.isZero() || v.length() == 0) return {};
  uint32_t n = static_cast<uint32_t>(v.length());
  TensorVector acc;
  for (uint32_t p = 1; p <= n; ++p) {
    TensorVector moved = v;
    for (uint32_t s = p; s + 1 <= n; ++s) moved = braid_op(b, s, moved);
    for (const auto& [w, c] : moved.terms()) {
      if (w.back() != k) continue;
      Word head(w.begin(), w.end() - 1);
      acc.add(std::move(head), c);
    }
  }
  acc.normalize();
  return acc;
}

}  // namespace nichols::testing
