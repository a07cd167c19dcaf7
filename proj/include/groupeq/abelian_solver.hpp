#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "groupeq/system.hpp"

namespace groupeq {

/// Values for every variable of the solved (truncated) system.
using Solution = Assignment;

/// p-nonsingular system over a group of prime period p (every summand Z/p).
/// Row reduction over Z/p; free variables get 0. Throws PSingular.
Solution solve_mod_p(const AbelianSystem& sys);

/// Residual right-hand sides a_i - m_i(x) after each lifting round of
/// solve_p_group. Round r's residuals lie in p^r A.
struct LiftTrace {
  std::vector<std::vector<Element>> residuals;
};

/// p-nonsingular system over a p-group of bounded period p^n: n rounds of
/// solving over A/pA, lifting the solution and recursing on the residual
/// system over pA.
Solution solve_p_group(const AbelianSystem& sys, LiftTrace* trace = nullptr);

/// System over a bounded-period group (all summands cyclic), solved per
/// primary component. Components where the system is p-nonsingular go
/// through solve_p_group; other components fall back to an exact Smith
/// form decision, and MissingPrimeNonsingularity(p) is raised only when
/// that component has no solution at all.
Solution solve_bounded(const AbelianSystem& sys);

/// Nonsingular system over a divisible group (Prüfer and Q summands):
/// square it, diagonalize with a Smith form and divide.
Solution solve_divisible(const AbelianSystem& sys);

/// Splits the group into divisible and reduced parts and solves each side.
/// Groups with a Z summand are rejected with UnsupportedGroup.
Solution solve_auto(const AbelianSystem& sys);

/// Incremental echelon form over each primary component Z/p^e of a
/// bounded-period group. Stored rows are kept fully reduced with pivot
/// coefficient 1, so a pivot variable appears in exactly one stored row.
class EchelonState {
 public:
  explicit EchelonState(AbelianGroup group);

  /// Throws DependentRow when the reduced row vanishes modulo p; the state is
  /// left unchanged in that case.
  void ingest(const AbelianEquation& eq);
  /// Free variables 0, pivot variables read off their rows.
  Solution solution() const;

  const AbelianGroup& group() const { return group_; }
  std::size_t ingested() const { return ingested_; }
  std::size_t pivot_count() const;

 private:
  using SparseRow = std::unordered_map<std::size_t, Int>;
  struct StoredRow {
    std::size_t pivot = 0;
    SparseRow coeffs;
    std::vector<Int> rhs;  // coordinates in the component
    SparseRow combo;       // ingested-equation index -> multiplier
  };
  struct Component {
    Int p;
    Int modulus;  // p^(max e)
    std::vector<std::size_t> positions;
    std::vector<Int> coord_moduli;
    std::vector<StoredRow> rows;
    std::unordered_map<std::size_t, std::size_t> row_of_pivot;
  };

  std::size_t var_index(const VarId& v);

  AbelianGroup group_;
  std::vector<Component> components_;
  std::vector<VarId> vars_;
  std::unordered_map<VarId, std::size_t> index_;
  std::size_t ingested_ = 0;
};

EchelonState stream_ingest(EchelonState state, const AbelianEquation& eq);
Solution stream_solution(const EchelonState& state);

/// Exhaustive search over a finite group, variables in sorted order, each
/// variable's values enumerated lexicographically by coordinate. Returns
/// the first solution in that order, nullopt if none exists. Throws
/// SearchSpaceTooLarge when |A|^#vars exceeds `limit`.
std::optional<Solution> brute_force_solve(const AbelianSystem& sys, std::uint64_t limit = 10'000'000);
/// Serial reference for brute_force_solve (the OpenMP kernel splits on the
/// leading variable; the lowest hit wins).
std::optional<Solution> brute_force_solve_serial(const AbelianSystem& sys, std::uint64_t limit = 10'000'000);

}  // namespace groupeq
