#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nichols/scalars.hpp"
#include "nichols/tensor.hpp"

namespace nichols {

struct BraidError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Group-like Yetter-Drinfeld realization over a free abelian group:
/// commuting invertible action matrices A_1..A_r and a coaction degree in Z^r
/// per basis letter. Column convention: (g_s . x_j) = sum_i action[s][i][j] x_i.
struct Realization {
  uint32_t groupRank = 0;
  std::vector<std::vector<std::vector<Fq>>> action;
  std::vector<std::vector<int32_t>> coactionDeg;
};

/// Parameters of the 3-dimensional block-and-point braiding.
struct BlockPointParams {
  int epsilon = 1;        // +-1
  Fq a;                   // rational ghost parameter
  Fq q12, q21, q22;       // nonzero scalars
};

/// epsilon = 1 -> -2a, epsilon = -1 -> a.
Fq ghost(const BlockPointParams& p);

/// Whether the ghost is a positive integer.
bool ghost_is_discrete(const BlockPointParams& p);

struct DynkinDiagram {
  std::vector<Fq> vertices;                 // q_ii
  std::map<std::pair<uint32_t, uint32_t>, Fq> edges;  // {i<j} -> q_ij q_ji, only != 1
  std::string text() const;
};

enum class ZVKind { WeakPm1, WeakOmega, MildCyclop };

/// A finite-dimensional braided vector space with explicit braiding table,
/// optionally carrying a group-like realization and a grading.
///
/// Letters belong to grading classes (by coaction degree when realized); the
/// grade of a word is its class-count vector. Raw c-matrix spaces instead
/// carry per-letter weights and are graded by total weight. The braiding
/// preserves grades; this is checked at construction.
class BraidedSpace {
 public:
  struct CEntry {
    Letter k, l;
    Fq coeff;
  };  // c(x_i (x) x_j)  ∋  coeff · x_k (x) x_l

  static std::shared_ptr<BraidedSpace> diagonal(FieldSpec fs, std::vector<std::vector<Fq>> q);
  static std::shared_ptr<BraidedSpace> blockPoint(const BlockPointParams& p);
  static std::shared_ptr<BraidedSpace> fromCMatrix(FieldSpec fs, uint32_t dim,
                                                   std::vector<std::vector<std::vector<CEntry>>> c,
                                                   std::vector<uint32_t> weights = {});
  static std::shared_ptr<BraidedSpace> fromRealization(FieldSpec fs, Realization real);
  /// Braided space on u_0..u_{n12} for a rank-2 diagonal braiding.
  static std::shared_ptr<BraidedSpace> zuRank2(FieldSpec fs, const std::vector<std::vector<Fq>>& q,
                                               uint32_t searchBound = 100);
  /// The stated Z_V braidings of the block-and-point decompositions.
  static std::shared_ptr<BraidedSpace> zvBlock(ZVKind kind, const BlockPointParams& p);

  FieldSpec field() const { return fs_; }
  uint32_t dim() const { return dim_; }
  const std::vector<CEntry>& braidEntries(Letter i, Letter j) const { return ctab_[i][j]; }
  const std::vector<CEntry>& braidInvEntries(Letter i, Letter j) const { return cinv_[i][j]; }
  bool realized() const { return real_.has_value(); }
  const Realization& realization() const { return *real_; }
  bool isDiagonal() const { return diagQ_.has_value(); }
  const std::vector<std::vector<Fq>>& qMatrix() const { return *diagQ_; }

  uint32_t numClasses() const { return numClasses_; }
  uint32_t classOf(Letter i) const { return classOf_[i]; }
  uint32_t weightOf(Letter i) const { return weights_[i]; }
  /// Grade key of a single letter (class counts, or [weight] for raw spaces).
  std::vector<uint32_t> gradeOfLetter(Letter i) const;
  std::vector<uint32_t> gradeOfWord(const Word& w) const;
  /// Composite action of the group-like g_{d(i)} attached to letter i.
  const std::vector<std::vector<Fq>>& letterAction(Letter i) const { return letterAction_[i]; }

  std::string describe() const;

 private:
  BraidedSpace() = default;
  void finalize();  // builds cinv_, classes, checks grade homogeneity

  FieldSpec fs_;
  uint32_t dim_ = 0;
  std::vector<std::vector<std::vector<CEntry>>> ctab_, cinv_;
  std::optional<Realization> real_;
  std::optional<std::vector<std::vector<Fq>>> diagQ_;
  std::vector<uint32_t> weights_;
  std::vector<uint32_t> classOf_;
  uint32_t numClasses_ = 1;
  std::vector<std::vector<std::vector<Fq>>> letterAction_;
};

/// n_ij = min{ n >= 0 : (n+1)_{q_ii} (1 - q_ii^n q_ij q_ji) = 0 }, searched up
/// to `bound`; nullopt when no such n is found below the bound.
std::optional<uint32_t> cartan_entry(const BraidedSpace& b, uint32_t i, uint32_t j,
                                     uint32_t bound = 100);

DynkinDiagram dynkin_diagram(const BraidedSpace& b);

/// Exact check of (c x id)(id x c)(c x id) = (id x c)(c x id)(id x c) on all
/// dim^3 basis tensors.
bool check_braid_equation(const BraidedSpace& b);

/// Apply c at tensor slots (i, i+1), 1-based. Linear, exact.
TensorVector braid_op(const BraidedSpace& b, uint32_t i, const TensorVector& v);
TensorVector braid_op_inverse(const BraidedSpace& b, uint32_t i, const TensorVector& v);

/// Braiding of a length-m block past a length-n block (the lift of the block
/// transposition), applied at slots [1..m+n] of each word.
TensorVector block_braid(const BraidedSpace& b, uint32_t m, uint32_t n, const TensorVector& v);

/// [x, y]_c = xy - mul(c(x (x) y)), x and y homogeneous.
TensorVector braided_commutator(const BraidedSpace& b, const TensorVector& x,
                                const TensorVector& y);

/// ad_c x (y); equals the braided commutator for homogeneous primitives.
TensorVector ad_c(const BraidedSpace& b, const TensorVector& x, const TensorVector& y);

/// Letterwise action of the group-like attached to letter k on a tensor.
TensorVector letter_action_tensor(const BraidedSpace& b, Letter k, const TensorVector& v);

/// Quantum symmetrizer S_n on homogeneous vectors of length n, computed by the
/// coset factorization S_n = (S_{n-1} (x) id) ∘ (sum of descending braid runs);
/// O(n^2) braid applications per call.
TensorVector quantum_symmetrizer(const BraidedSpace& b, uint32_t n, const TensorVector& v,
                                 uint32_t cutoff = 8);

/// Skew-derivation on T(V) for realized spaces:
/// d_k(x_i w) = x_i d_k(w) + delta_{ik} (g_{d(k)} . w), d_k(1) = 0.
TensorVector derivation_T(const BraidedSpace& b, Letter k, const TensorVector& v);

}  // namespace nichols
