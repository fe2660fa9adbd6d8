#pragma once

#include <iosfwd>
#include <memory>
#include <optional>

#include "nichols/braidspace.hpp"
#include "nichols/linalg.hpp"

namespace nichols {

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EnginePath { Derivation, Symmetrizer };

struct EngineConfig {
  uint32_t cutoff = 10;
  EnginePath path = EnginePath::Derivation;
  uint32_t symmetrizerCutoff = 8;
};

struct Finiteness {
  bool finite = false;
  uint64_t totalDim = 0;  // valid when finite
};

using Grade = std::vector<uint32_t>;

/// Element of a fixed homogeneous component B^n, as coordinates in the chosen
/// basis of that component.
struct ModelElt {
  uint32_t degree = 0;
  SparseVec coords;
  bool isZero() const { return coords.isZero(); }
};

/// The degreewise-constructed Nichols algebra B(V) = T(V)/J(V).
///
/// Derivation path (needs a realization): B^n = (V (x) B^{n-1}) / ker Phi_n
/// where Phi_n(x_i (x) b) = ( mu(x_i (x) d_k b) + delta_{ik} g_{d(k)} . b )_k.
/// Symmetrizer path: dim B^n = rank of S_n on T^n, basis = pivot images.
class NicholsModel {
 public:
  static std::shared_ptr<NicholsModel> build(std::shared_ptr<const BraidedSpace> space,
                                             const EngineConfig& cfg);

  const BraidedSpace& space() const { return *space_; }
  std::shared_ptr<const BraidedSpace> spacePtr() const { return space_; }
  EnginePath path() const { return path_; }
  uint32_t cutoff() const { return computedCutoff_; }
  const Finiteness& finiteness() const { return finite_; }

  uint64_t dim(uint32_t n) const;
  std::vector<uint64_t> hilbert() const;
  /// Multidegree (class counts; weighted degree for raw spaces) -> dimension.
  std::vector<std::pair<Grade, uint64_t>> bihilbert() const;
  /// Bidegree (letters in `left` vs the rest) -> dimension. Realized spaces only.
  std::vector<std::pair<std::pair<uint32_t, uint32_t>, uint64_t>> bidegreeHilbert(
      const std::vector<uint32_t>& leftLetters) const;

  const Grade& gradeOf(uint32_t n, Idx basisIdx) const;
  /// Tensor representative of a basis element (a single word on both paths).
  Word liftWord(uint32_t n, Idx basisIdx) const;

  /// Quotient-map image of a homogeneous tensor vector.
  ModelElt project(const TensorVector& v) const;
  ModelElt projectWord(const Word& w) const;
  /// mu(x_i (x) u) for u in B^n.
  ModelElt multiplyLetterLeft(Letter i, const ModelElt& u) const;
  /// Associative product via lift-and-project.
  ModelElt multiply(const ModelElt& u, const ModelElt& v) const;
  ModelElt one() const;
  ModelElt letterElt(Letter i) const;
  ModelElt pow(const ModelElt& u, uint32_t e) const;

  bool is_relation(const TensorVector& v) const { return project(v).isZero(); }

  /// Skew-derivation d_k on B^n (derivation path only).
  ModelElt derive(Letter k, const ModelElt& u) const;
  /// Action of the group-like attached to letter k.
  ModelElt letterAction(Letter k, const ModelElt& u) const;
  /// Action of the group-like of a coaction-homogeneous word.
  ModelElt wordAction(const Word& w, const ModelElt& u) const;

  /// Degree-n kernel of Phi_n, reported as vectors over the (letter, parent)
  /// source basis of V (x) B^{n-1}, plus counts per multidegree.
  struct RelationSpace {
    std::vector<SparseVec> kernel;  // index = letter * dimPrev + parentIdx
    std::vector<std::pair<Grade, uint64_t>> countsPerGrade;
  };
  RelationSpace relation_space(uint32_t n) const;

  void serialize(std::ostream& os) const;
  static std::shared_ptr<NicholsModel> deserialize(std::istream& is,
                                                   std::shared_ptr<const BraidedSpace> space);
  /// Recompute-free structural digest input (deterministic).
  std::string structuralSummary() const;

  struct Level {
    struct BasisElt {
      Letter letter;     // derivation path
      Idx parent;        // index in previous level
      Word word;         // symmetrizer path lift
      uint32_t gradeId;
    };
    std::vector<BasisElt> basis;
    std::vector<Grade> grades;               // interned grade keys
    std::vector<std::vector<SparseVec>> leftMult;  // [letter][prevIdx] -> coords in this level
    std::vector<std::vector<SparseVec>> deriv;     // [letter][idx] -> coords in previous level
    std::vector<std::vector<SparseVec>> action;    // [letter][idx] -> coords in this level
    // symmetrizer path: echelon data per grade block for projection
    struct SymBlock {
      std::vector<Word> rows;       // interned word list, sorted
      Echelon ech;
      std::vector<Idx> pivotGlobal;  // pivot ordinal -> global basis index
    };
    std::map<Grade, SymBlock> symBlocks;
  };
  const Level& level(uint32_t n) const { return levels_.at(n); }

 private:
  NicholsModel() = default;
  void buildDerivation(uint32_t cutoff);
  void buildSymmetrizer(uint32_t cutoff, uint32_t symCutoff);

  std::shared_ptr<const BraidedSpace> space_;
  EnginePath path_ = EnginePath::Derivation;
  uint32_t requestedCutoff_ = 0;
  uint32_t computedCutoff_ = 0;
  Finiteness finite_;
  std::vector<Level> levels_;
};

enum class GrowthVerdict { Match, Mismatch, TooShort };

/// PBW-style growth prediction: per generator a degree and an exponent bound
/// (0 = unbounded).
struct GrowthPrediction {
  std::vector<std::pair<uint32_t, uint64_t>> generators;  // (degree, bound)
  /// Series coefficients up to `n` inclusive.
  std::vector<Int> seriesPrefix(uint32_t n) const;
  /// Number of unbounded generators = predicted polynomial growth degree.
  uint32_t polyDegree() const;
  /// lcm of unbounded generator degrees (quasi-period).
  uint32_t period() const;
};

struct GrowthEstimate {
  GrowthVerdict verdict;
  std::optional<uint32_t> degree;  // fitted growth degree when determined
  std::string detail;
};

/// Growth-degree fit of the cumulative Hilbert function against a PBW
/// prediction; see the module notes for the exact-fit semantics.
GrowthEstimate gk_growth_estimate(const NicholsModel& m,
                                  const std::optional<GrowthPrediction>& prediction);

/// Same fit on an explicit dimension sequence (degree 0..cutoff inclusive).
GrowthEstimate gk_growth_estimate_dims(const std::vector<uint64_t>& dims, bool knownFinite,
                                       const std::optional<GrowthPrediction>& prediction);

}  // namespace nichols
