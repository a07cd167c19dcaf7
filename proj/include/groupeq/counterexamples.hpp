#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "groupeq/system.hpp"

namespace groupeq {

/// One depth of a divergence experiment: the necessary lower bound at that
/// depth, what was actually measured on the witness, and the witness itself.
struct GrowthRow {
  std::size_t depth = 0;
  Int bound;
  Int observed;
  Assignment witness;
  /// Smallest positive x in the solution class (integer-line experiment only).
  std::optional<Int> min_positive;
};

struct GrowthReport {
  std::string name;
  std::string metric;
  std::vector<GrowthRow> rows;

  bool bounds_nondecreasing() const;
};

/// k_0 = 0, k_{i+1} = 2 k_i + 1.
Int pbad_exponent(std::size_t i);

/// Z/p^{k_1} + ... + Z/p^{k_j} with x_i - p^{k_i - k_{i-1}} x_{i+1} = a_i,
/// a_i the generator of summand i, for i = 1..j.
AbelianSystem gen_pbad(const Int& p, std::size_t j);

/// Rows j = 2..max_depth: order of x_1 in the solved truncation against
/// p^{k_{j-1}+1}.
GrowthReport pbad_growth(const Int& p, std::size_t max_depth);

/// Z/p_1 + ... + Z/p_N with x + p_i y_i = a_i. Throws DuplicatePrime.
AbelianSystem gen_bad(const std::vector<Int>& primes, std::size_t n);

/// Rows N = 1..n: number of nonzero primary components of x in the solved
/// truncation against N. Throws std::logic_error if a generator a_i lies in p_i A.
GrowthReport bad_support_check(const std::vector<Int>& primes, std::size_t n);

/// Over Z: 2y_{i+1} - y_i = 0, 2y_1 - x = 1, x - 3z_1 = 0, z_i - 3z_{i+1} = 0.
AbelianSystem gen_zbad(std::size_t m);

/// Rows m = 1..max_depth. Congruences force x = 0 mod 3^m and x = -1 mod 2^m;
/// bound is 3^m, observed the smallest |x| in that class, min_positive the
/// smallest positive one. Every solution with |x| <= search_bound is found
/// by direct search and checked against the bound.
GrowthReport zbad_bound_check(std::size_t max_depth, long search_bound = 1'000'000);

}  // namespace groupeq
