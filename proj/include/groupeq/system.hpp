#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "groupeq/abelian_group.hpp"
#include "groupeq/linalg.hpp"
#include "groupeq/random.hpp"

namespace groupeq {

using VarId = std::string;

/// Finitely supported integer row indexed by variable; zero entries are never stored.
using Row = std::map<VarId, Int>;

void add_to_row(Row& row, const VarId& var, const Int& coeff);

/// k_1 x_1 + ... + k_n x_n = rhs
struct AbelianEquation {
  Row coeffs;
  Element rhs;
};

using Assignment = std::map<VarId, Element>;

struct AbelianSystem {
  AbelianGroup group;
  std::vector<AbelianEquation> equations;
  /// Variables that must receive a value even if no equation mentions them.
  std::vector<VarId> declared_vars;

  /// Sorted union of declared variables and those with nonzero coefficients.
  std::vector<VarId> variables() const;
  void add(Row coeffs, Element rhs);
};

/// A constant from G or a variable power x^e (e != 0) in a word over G * F(X).
struct ConstLiteral {
  Element value;
};
struct VarLiteral {
  VarId var;
  std::int64_t exp = 1;
};
using Literal = std::variant<ConstLiteral, VarLiteral>;

/// The equation w = 1 for the word w.
struct GroupEquation {
  std::vector<Literal> word;

  GroupEquation& c(Element g);
  GroupEquation& x(VarId v, std::int64_t e = 1);
};

struct GroupSystem {
  std::vector<GroupEquation> equations;
  std::vector<VarId> declared_vars;

  std::vector<VarId> variables() const;
};

Row exponent_row(const GroupEquation& eq);
inline const Row& exponent_row(const AbelianEquation& eq) { return eq.coeffs; }

/// Finitely supported rows over an ordered list of variables.
struct ExponentMatrix {
  std::vector<VarId> vars;
  std::vector<Row> rows;

  static ExponentMatrix of(const AbelianSystem& s);
  static ExponentMatrix of(const GroupSystem& s);
  static ExponentMatrix from_dense(const IntMatrix& m);
  IntMatrix dense() const;
};

struct SingularityReport {
  bool nonsingular = false;
  std::vector<Int> witness;  // row combination vanishing over Q
  std::map<Int, bool> p_nonsingular;
  std::map<Int, std::vector<Int>> p_witness;
  std::optional<bool> unimodular;
  /// For stream classifications: number of equations in the checked truncation.
  std::optional<std::size_t> checked_depth;
};

struct NonsingularityResult {
  bool ok = false;
  std::vector<Int> witness;
};

NonsingularityResult is_nonsingular(const IntMatrix& m);
NonsingularityResult is_p_nonsingular(const IntMatrix& m, const Int& p);
// is_unimodular(const IntMatrix&) lives in linalg.hpp

SingularityReport classify(const IntMatrix& m, const std::vector<Int>& primes, bool with_unimodular = true);

/// Classifies many matrices; the OpenMP kernel and the serial reference
/// must produce identical reports.
std::vector<SingularityReport> classify_batch(const std::vector<IntMatrix>& ms, const std::vector<Int>& primes);
std::vector<SingularityReport> classify_batch_serial(const std::vector<IntMatrix>& ms,
                                                     const std::vector<Int>& primes);

/// Square system in k variables plus the integer map back to the original n variables.
struct SquareReduction {
  AbelianSystem square;
  /// original variable -> integer combination of square-system variables
  std::map<VarId, Row> back_map;

  Assignment map_back(const Assignment& square_solution) const;
};

SquareReduction reduce_to_square(const AbelianSystem& sys, const std::vector<Int>& primes);

/// Evaluates sum_j k_j x_j - rhs for every equation; true iff all vanish.
bool verify_solution(const AbelianSystem& sys, const Assignment& assignment);

/// Deterministic, replayable stream of equations over a fixed group.
class EquationStream {
 public:
  using Generator = std::function<AbelianEquation(std::size_t)>;

  EquationStream(AbelianGroup group, Generator gen) : group_(std::move(group)), gen_(std::move(gen)) {}

  const AbelianGroup& group() const { return group_; }
  AbelianEquation at(std::size_t index) const { return gen_(index); }
  AbelianSystem truncation(std::size_t n) const;

 private:
  AbelianGroup group_;
  Generator gen_;
};

/// Unit lower-triangular stream: equation i introduces x_i with coefficient 1,
/// an optional new free variable w_i, and random coefficients on a few
/// earlier variables; the right-hand side is a random group element.
/// Every truncation is unimodular by construction.
EquationStream random_unimodular_stream(const AbelianGroup& group, std::uint64_t seed);

/// Random element of a finite group, or of bounded-denominator rationals in
/// Prüfer/Q coordinates.
Element random_element(const AbelianGroup& group, Rng& rng);

/// "Every checked truncation": classifies truncation(depth) of the stream.
SingularityReport classify_stream(const EquationStream& stream, std::size_t depth, const std::vector<Int>& primes);

}  // namespace groupeq
