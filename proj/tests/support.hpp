#pragma once

// Independent oracles and random generators shared by the unit tests and the
// acceptance runner. Nothing here calls the library's algebra beyond element
// canonicalization, so agreement with the library is meaningful.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "groupeq/abelian_group.hpp"
#include "groupeq/linalg.hpp"
#include "groupeq/nilpotent.hpp"
#include "groupeq/random.hpp"
#include "groupeq/system.hpp"

namespace oracle {

using groupeq::Int;
using groupeq::IntMatrix;
using groupeq::Rat;

inline long lmod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

inline long brute_inv(long a, long m) {
  for (long b = 0; b < m; ++b)
    if (lmod(a * b, m) == 1 % m) return b;
  return -1;
}

inline long crt_scan(long r1, long m1, long r2, long m2) {
  for (long x = 0; x < m1 * m2; ++x)
    if (lmod(x, m1) == lmod(r1, m1) && lmod(x, m2) == lmod(r2, m2)) return x;
  return -1;
}

inline unsigned long valuation_by_division(Int n, unsigned long p) {
  unsigned long k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

inline bool prime_by_trial(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Leibniz-formula determinant over all permutations (k <= 6).
inline Int permutation_det(const std::vector<std::vector<Int>>& a) {
  const std::size_t k = a.size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Int total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Int term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < k; ++i) term *= a[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// gcd of all k x k minors of a k x n matrix (0 if k > n).
inline Int gcd_of_maximal_minors(const IntMatrix& m) {
  const std::size_t k = m.rows(), n = m.cols();
  if (k == 0) return 1;
  if (k > n) return 0;
  Int g = 0;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::vector<Int>> sub(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (pick[j]) sub[i].push_back(m(i, j));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), permutation_det(sub).get_mpz_t());
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return g;
}

/// Rows independent mod p iff no nonzero coefficient vector in (Z/p)^k kills them.
inline bool rows_independent_mod_p_brute(const IntMatrix& m, long p) {
  const std::size_t k = m.rows();
  std::vector<long> c(k, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < k && ++c[i] == p) c[i++] = 0;
    if (i == k) return true;
    bool zero = true;
    for (std::size_t j = 0; j < m.cols() && zero; ++j) {
      long s = 0;
      for (std::size_t r = 0; r < k; ++r) s += c[r] * lmod(m(r, j).get_si(), p);
      zero = s % p == 0;
    }
    if (zero) return false;
  }
}

/// Rows independent over Q iff some k x k minor is nonzero.
inline bool rows_independent_over_q_brute(const IntMatrix& m) { return gcd_of_maximal_minors(m) != 0; }

inline IntMatrix random_matrix(groupeq::Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

/// Finite direct sum of cyclic groups with |A| <= max_order.
inline groupeq::AbelianGroup random_finite_group(groupeq::Rng& rng, long max_order) {
  static const long primes[] = {2, 3, 5, 7};
  for (;;) {
    std::vector<groupeq::Summand> s;
    long order = 1;
    const long count = rng.uniform(1, 3);
    for (long i = 0; i < count; ++i) {
      const long p = primes[rng.uniform(0, 3)];
      const long e = rng.uniform(1, 3);
      long q = 1;
      for (long t = 0; t < e; ++t) q *= p;
      if (order * q > max_order) continue;
      order *= q;
      s.push_back(groupeq::Summand::cyclic(Int(p), static_cast<unsigned long>(e)));
    }
    if (!s.empty()) return groupeq::AbelianGroup(std::move(s));
  }
}

/// All elements of a finite cyclic-sum group, first coordinate most significant.
inline std::vector<groupeq::Element> all_elements(const groupeq::AbelianGroup& g) {
  std::vector<groupeq::Element> out{groupeq::Element{}};
  for (const auto& s : g.summands()) {
    std::vector<groupeq::Element> next;
    const long m = s.modulus().get_si();
    for (const auto& e : out)
      for (long v = 0; v < m; ++v) {
        auto c = e.coords;
        c.emplace_back(v);
        next.push_back(groupeq::Element{std::move(c)});
      }
    out = std::move(next);
  }
  return out;
}

/// Exhaustive satisfiability of an abelian system by plain coordinate
/// arithmetic (no group operations from the library).
inline bool abelian_satisfiable(const groupeq::AbelianSystem& sys) {
  const auto vars = sys.variables();
  const auto elems = all_elements(sys.group);
  std::vector<long> moduli;
  for (const auto& s : sys.group.summands()) moduli.push_back(s.modulus().get_si());
  std::vector<std::size_t> idx(vars.size(), 0);
  for (;;) {
    bool ok = true;
    for (const auto& eq : sys.equations) {
      for (std::size_t c = 0; c < moduli.size() && ok; ++c) {
        long s = 0;
        for (const auto& [v, k] : eq.coeffs) {
          const auto j = static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
          s = lmod(s + lmod(k.get_si(), moduli[c]) * elems[idx[j]].coords[c].get_num().get_si(), moduli[c]);
        }
        ok = s == lmod(eq.rhs.coords[c].get_num().get_si(), moduli[c]);
      }
      if (!ok) break;
    }
    if (ok) return true;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == elems.size()) idx[i++] = 0;
    if (i == idx.size()) return false;
  }
}

/// Plain-integer Heisenberg multiplication mod n, used to build tables
/// independently of HeisenbergGroup.
inline std::vector<std::vector<std::uint32_t>> heisenberg_table(long n) {
  const long size = n * n * n;
  auto enc = [n](long a, long b, long c) { return static_cast<std::uint32_t>((a * n + b) * n + c); };
  std::vector<std::vector<std::uint32_t>> t(static_cast<std::size_t>(size), std::vector<std::uint32_t>(size));
  for (long x = 0; x < size; ++x)
    for (long y = 0; y < size; ++y) {
      const long a = x / (n * n), b = (x / n) % n, c = x % n;
      const long a2 = y / (n * n), b2 = (y / n) % n, c2 = y % n;
      t[x][y] = enc((a + a2) % n, (b + b2) % n, (c + c2 + a * b2) % n);
    }
  return t;
}

inline Rat random_rat(groupeq::Rng& rng, long height) {
  return groupeq::make_rat(Int(rng.uniform(-height, height)), Int(rng.uniform(1, height)));
}

/// Random word of exponent-sum row `row` with constants sprinkled in: each
/// variable appears as a sequence of powers summing to its coefficient.
inline groupeq::GroupEquation random_word(groupeq::Rng& rng, const groupeq::Row& row,
                                          const std::function<groupeq::Element()>& constant) {
  groupeq::GroupEquation eq;
  if (rng.coin()) eq.c(constant());
  for (const auto& [v, k] : row) {
    long remaining = k.get_si();
    if (rng.coin() && remaining != 0) {
      const long split = rng.uniform(-2, 2);
      if (split != 0 && split != remaining) {
        eq.x(v, split);
        remaining -= split;
        if (rng.coin()) eq.c(constant());
      }
    }
    eq.x(v, remaining);
    if (rng.coin()) eq.c(constant());
  }
  return eq;
}

}  // namespace oracle
