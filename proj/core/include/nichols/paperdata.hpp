#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nichols/coinvariants.hpp"
#include "nichols/expr.hpp"

namespace nichols {

struct PaperDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One-dimensional Yetter-Drinfeld object k^b_a over Z/N: coaction g^a,
/// action chi = eta^b.
struct GagLabel {
  int a = 0, b = 0;
};

/// Diagonal braiding of V + U over Cyclotomic(4) with V = k^2_1 and
/// U = sum of the labelled one-dimensional objects; entries q^{a_i b_j}.
std::shared_ptr<BraidedSpace> corpus_gag(const std::vector<GagLabel>& uLabels);

enum class CartanType { A, B, C, D };

/// Positive roots with root-vector recipes in a convex order, from the
/// displayed tables: A (theta >= 2), B/C (theta >= 3), D (theta >= 4).
RootSystemData roots_cartan(CartanType type, uint32_t theta);

/// Rank-2 tables with the displayed beta numerations:
/// "A2", "B2", "C2", "G2", "G2rev".
RootSystemData roots_rank2(const std::string& family);

/// The braiding matrix of a rank-2 or Cartan family over a field:
/// families "A2","B2","C2","G2","G2rev" and "A","B","C","D" with theta.
std::shared_ptr<BraidedSpace> cartan_space(const std::string& family, uint32_t theta, FieldSpec fs);

/// Declarative presentation, instantiated from a corpus file.
struct Presentation {
  std::string family;
  std::string anchor;
  std::optional<SplitSpec> coinvariantSplit;  // target is K for this split when set
  struct Rel {
    std::string label;
    std::string anchor;
    TensorVector value;
  };
  std::vector<Rel> relations;
  struct PbwGen {
    std::string label;
    ModelElt value;            // evaluated in the target model
    TensorVector tensorValue;  // expression value in T(W)
    uint32_t degree = 0;
    std::optional<uint32_t> bound;  // nullopt = unbounded
  };
  std::vector<PbwGen> pbw;  // leftmost factor first
};

struct PresentationParams {
  std::map<std::string, long> ints;
  std::map<std::string, Fq> scalars;
};

/// Instantiate a corpus family for a model. The corpus file is located as
/// `<corpusDir>/<family>.json`.
Presentation presentation(const NicholsModel& model, const std::string& family,
                          const PresentationParams& params, const std::string& corpusDir = "");

/// Resolve the corpus directory: explicit argument, else NICHOLS_CORPUS_DIR,
/// else the build-time default.
std::string corpusDir(const std::string& overridePath = "");

/// Named elements of the paper's constructions, as tensor expressions:
///   u(n), xkl(k,l), w(i), wtB(j), wtC(j), wtD(), v(j)   [need int "theta"]
///   z(t), zt(t), y_weak(i), y_mild(i)                   [block-and-point]
TensorVector named_element(const BraidedSpace& space, const std::string& name,
                           const std::vector<long>& args,
                           const std::map<std::string, long>& ints = {});

struct PresentationReport {
  struct RelVerdict {
    std::string label;
    bool pass;
  };
  std::vector<RelVerdict> relations;     // (R), includes power relations
  std::vector<DegreeReport> perDegree;   // (I)+(S): lhs = monomial rank, rhs = target dim
  std::vector<std::string> skipped;      // checks beyond the cutoff
  bool relationsPass() const;
  bool basisPass() const;
  bool pass() const { return relationsPass() && basisPass(); }
  std::string summary() const;
};

/// (R) every relation projects to zero; (I) PBW monomials per degree are
/// independent; (S) their count equals the target Hilbert coefficient.
PresentationReport verify_presentation(const NicholsModel& m, const Presentation& p,
                                       uint32_t cutoff);

}  // namespace nichols
