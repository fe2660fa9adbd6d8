#pragma once

#include <map>
#include <string>

#include "nichols/braidspace.hpp"

namespace nichols {

struct ExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Expression evaluator for the corpus relation language.
///
/// Tensor grammar (over the letters of a braided space):
///   expr   := term (('+'|'-') term)*
///   term   := ['-'] factor ('*' factor)*
///   factor := atom ['^' intAtom]
///   atom   := '(' expr ')'
///           | '[' expr ',' expr ']'            braided commutator
///           | 'ad(' expr ')' ['^' intAtom] '(' expr ')'
///           | 'x(' seq ')'                     iterated bracket word x_{i1 i2 ...}
///           | name '(' intExpr,* ')'           generator reference
///           | scalar atom (see below)
///   seq    := run (',' run)* ; run := intExpr ['..' intExpr]   (inclusive, auto direction)
///
/// Scalar atoms: integers, 'p/q' rationals, named scalars, 'qq(i,j)' braiding
/// entries, 'qn(n)' q-numbers, 'qfact(n)', 'qbin(n,k)' over the named scalar
/// "q", and 'bf(rootsum; rootsum)' for the bilinear form with
/// rootsum := alpha(i[,j]) ('+' alpha(k[,l]))*.
///
/// Index expressions: integer arithmetic over named index variables.
class ExprEval {
 public:
  struct GenDef {
    std::vector<std::string> args;
    std::string expr;
  };

  explicit ExprEval(const BraidedSpace& space) : space_(space) {}

  std::map<std::string, long>& ints() { return ints_; }
  std::map<std::string, Fq>& scalars() { return scalars_; }
  std::map<std::string, GenDef>& gens() { return gens_; }
  const std::map<std::string, long>& ints() const { return ints_; }
  const std::map<std::string, Fq>& scalars() const { return scalars_; }
  const std::map<std::string, GenDef>& gens() const { return gens_; }

  std::map<std::string, TensorVector>& tensors() { return tensors_; }
  const std::map<std::string, TensorVector>& tensors() const { return tensors_; }

  TensorVector evalTensor(const std::string& text) const;
  Fq evalScalar(const std::string& text) const;
  long evalInt(const std::string& text) const;
  /// Boolean clause over index expressions with comparisons, '&&', '||', '!'.
  bool evalCond(const std::string& text) const;

  const BraidedSpace& space() const { return space_; }

 private:
  const BraidedSpace& space_;
  std::map<std::string, long> ints_;
  std::map<std::string, Fq> scalars_;
  std::map<std::string, GenDef> gens_;
  std::map<std::string, TensorVector> tensors_;
};

}  // namespace nichols
