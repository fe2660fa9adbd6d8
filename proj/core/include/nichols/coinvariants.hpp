#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nichols/engine.hpp"

namespace nichols {

struct CoinvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Decomposition W = V + U by designating a set of letters as V (1-based).
struct SplitSpec {
  std::vector<uint32_t> left;
  void validate(uint32_t dim) const;
};

/// Graded pieces Z^j = ad_c B^j(V) (U) inside the model of B(W).
struct ZuLayers {
  std::vector<std::vector<ModelElt>> layers;  // layer j: elements of degree j+1
  std::vector<uint64_t> layerDims() const;
  uint64_t totalDim() const;
  bool stopped = false;  // a zero layer was reached
};

/// Z^0 = U-letters; Z^j = span of ad_c(x_i)(z), i in V, z in Z^{j-1};
/// stops at a zero layer or at ghostDepth.
ZuLayers zu_basis(const NicholsModel& m, const SplitSpec& split, uint32_t ghostDepth = 12);

/// Basis of the degree-n coinvariant space  K^n = intersection of ker d_k,
/// k in the V-letters, inside B^n(W).
std::vector<ModelElt> coinvariant_space(const NicholsModel& m, const SplitSpec& split, uint32_t n);

struct DegreeReport {
  uint32_t degree;
  bool pass;
  uint64_t lhs, rhs;
};

/// Per degree: span of products of zu-layer elements equals the coinvariant
/// space.
struct GenerationReport {
  std::vector<DegreeReport> degrees;
  bool pass() const;
};
GenerationReport verify_K_is_generated_by_ZU(const NicholsModel& m, const SplitSpec& split,
                                             uint32_t upToDegree, uint32_t ghostDepth = 12);

/// Bigraded factorization H_W(tV, tU) = H_K(tV, tU) * H_{B(V)}(tV) up to the
/// cutoff, plus the scalar dimension identity when both factors are finite.
struct FactorizationReport {
  bool bigradedPass = false;
  std::string detail;
  std::optional<uint64_t> dimW, dimK, dimBV;  // set when finite
  bool dimensionPass = true;                  // vacuous unless all finite
};
FactorizationReport factorization_check(const NicholsModel& m, const SplitSpec& split);

/// Coinvariant dimensions per total degree 0..upTo.
std::vector<uint64_t> coinvariant_hilbert(const NicholsModel& m, const SplitSpec& split,
                                          uint32_t upTo);

// ---------------------------------------------------------------------------

/// Bracketing recipe for a root vector: a leaf letter or a braided commutator
/// of two recipes.
struct BracketTree {
  int letter = -1;  // 1-based when leaf
  std::unique_ptr<BracketTree> lhs, rhs;
  static BracketTree leaf(uint32_t letter1based);
  static BracketTree br(BracketTree l, BracketTree r);
  BracketTree clone() const;
};

/// Iterated left bracket x_{i1 i2 ... ik} = [x_{i1}, [x_{i2}, ... x_{ik}]...].
BracketTree iteratedWordBracket(const std::vector<uint32_t>& letters1based);

TensorVector evalBracket(const BraidedSpace& b, const BracketTree& t);

struct RootDatum {
  std::vector<uint32_t> root;  // multidegree in N^theta
  BracketTree recipe;
  uint32_t height() const;
};

struct RootSystemData {
  std::vector<RootDatum> roots;  // in convex order
  /// N_beta = ord q(beta, beta); nullopt = infinite.
  std::vector<std::optional<uint32_t>> orders(const BraidedSpace& b) const;
};

/// q(alpha, beta) for the bilinear form of a diagonal braiding.
Fq bilinearForm(const BraidedSpace& b, const std::vector<uint32_t>& alpha,
                const std::vector<uint32_t>& beta);

ModelElt root_vector(const NicholsModel& m, const BracketTree& recipe);

struct PbwReport {
  bool hilbertPass = false;
  bool independencePass = false;
  std::vector<DegreeReport> perDegree;
  std::string detail;
  bool pass() const { return hilbertPass && independencePass; }
};

/// (i) Hilbert identity against prod_beta (sum_{m < N_beta} t^{m ht beta});
/// (ii) independence and spanning of the projected PBW monomials per degree.
PbwReport pbw_check(const NicholsModel& m, const RootSystemData& rsd);

struct ConvexityReport {
  struct Pair {
    uint32_t i, j;
    bool consecutiveZero;  // j = i+1 case
    bool pass;
  };
  std::vector<Pair> pairs;
  bool pass() const;
};

/// [x_{beta_i}, x_{beta_j}]_c lies in the span of intermediate-root monomials
/// of the same multidegree; zero for consecutive pairs.
ConvexityReport convexity_check(const NicholsModel& m, const RootSystemData& rsd);

/// All PBW monomials of total degree n (exponent vectors in the convex order,
/// leftmost = last root), as model elements.
std::vector<ModelElt> pbwMonomialsOfDegree(const NicholsModel& m, const RootSystemData& rsd,
                                           uint32_t n);

}  // namespace nichols
