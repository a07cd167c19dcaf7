#include "groupeq/counterexamples.hpp"

#include <cstdio>
#include <set>
#include <stdexcept>

#include "groupeq/abelian_solver.hpp"

namespace groupeq {

namespace {

std::string indexed(char prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%02zu", prefix, i);
  return buf;
}

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

}  // namespace

bool GrowthReport::bounds_nondecreasing() const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].bound < rows[i - 1].bound) return false;
  return true;
}

Int pbad_exponent(std::size_t i) {
  // 2^i - 1
  return pow(Int(2), i) - 1;
}

AbelianSystem gen_pbad(const Int& p, std::size_t j) {
  require_prime(p);
  if (j < 1) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
  std::vector<Summand> summands;
  for (std::size_t i = 1; i <= j; ++i) summands.push_back(Summand::cyclic(p, pbad_exponent(i).get_ui()));
  AbelianSystem sys;
  sys.group = AbelianGroup(summands);
  for (std::size_t i = 1; i <= j; ++i) {
    const Int gap = pbad_exponent(i) - pbad_exponent(i - 1);
    Row row{{indexed('x', i), Int(1)}};
    add_to_row(row, indexed('x', i + 1), Int(-pow(p, gap.get_ui())));
    sys.add(std::move(row), sys.group.generator(i - 1));
  }
  return sys;
}

GrowthReport pbad_growth(const Int& p, std::size_t max_depth) {
  if (max_depth < 2) throw Error(ErrorCode::InvalidArgument, "depth must be >= 2");
  GrowthReport rep{"pbad", "order(x01)", {}};
  for (std::size_t j = 2; j <= max_depth; ++j) {
    const AbelianSystem sys = gen_pbad(p, j);
    Solution sol = solve_bounded(sys);
    if (!verify_solution(sys, sol)) throw std::logic_error("pbad witness does not verify");
    const ExtInt ord = sys.group.order(sol.at(indexed('x', 1)));
    const Int bound = pow(p, Int(pbad_exponent(j - 1) + 1).get_ui());
    if (ord.is_infinite() || ord.value() < bound) throw std::logic_error("pbad order below the derived bound");
    rep.rows.push_back({j, bound, ord.value(), std::move(sol), std::nullopt});
  }
  return rep;
}

AbelianSystem gen_bad(const std::vector<Int>& primes, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
  if (primes.size() < n) throw Error(ErrorCode::InvalidArgument, "need at least " + std::to_string(n) + " primes");
  std::set<Int> seen;
  std::vector<Summand> summands;
  for (std::size_t i = 0; i < n; ++i) {
    require_prime(primes[i]);
    if (!seen.insert(primes[i]).second) {
      throw Error(ErrorCode::DuplicatePrime, primes[i].get_str() + " repeated", {}, primes[i]);
    }
    summands.push_back(Summand::cyclic(primes[i], 1));
  }
  AbelianSystem sys;
  sys.group = AbelianGroup(summands);
  for (std::size_t i = 0; i < n; ++i) {
    Row row{{"x", Int(1)}, {indexed('y', i + 1), primes[i]}};
    sys.add(std::move(row), sys.group.generator(i));
  }
  return sys;
}

GrowthReport bad_support_check(const std::vector<Int>& primes, std::size_t n) {
  GrowthReport rep{"bad", "support(x)", {}};
  for (std::size_t depth = 1; depth <= n; ++depth) {
    const AbelianSystem sys = gen_bad(primes, depth);
    for (std::size_t i = 0; i < depth; ++i) {
      const std::vector<std::size_t> at{i};
      const ExtInt h = sys.group.restrict_to(at).height_p(sys.group.project(sys.equations[i].rhs, at), primes[i]);
      if (h.is_infinite() || h.value() != 0) throw std::logic_error("a_i lies in p_i A");
    }
    Solution sol = solve_bounded(sys);
    if (!verify_solution(sys, sol)) throw std::logic_error("bad witness does not verify");
    const Element& x = sol.at("x");
    Int support = 0;
    for (std::size_t i = 0; i < depth; ++i)
      if (!sys.group.primary_part(primes[i]).is_zero(sys.group.primary_component(x, primes[i]))) ++support;
    rep.rows.push_back({depth, Int(static_cast<unsigned long>(depth)), support, std::move(sol), std::nullopt});
  }
  return rep;
}

AbelianSystem gen_zbad(std::size_t m) {
  AbelianSystem sys;
  sys.group = AbelianGroup({Summand::integer()});
  if (m == 0) return sys;
  const auto one = [&](long v) { return sys.group.element_from_ints({Int(v)}); };
  for (std::size_t i = 1; i < m; ++i) sys.add({{indexed('y', i + 1), Int(2)}, {indexed('y', i), Int(-1)}}, one(0));
  sys.add({{indexed('y', 1), Int(2)}, {"x", Int(-1)}}, one(1));
  sys.add({{"x", Int(1)}, {indexed('z', 1), Int(-3)}}, one(0));
  for (std::size_t i = 1; i < m; ++i) sys.add({{indexed('z', i), Int(1)}, {indexed('z', i + 1), Int(-3)}}, one(0));
  return sys;
}

namespace {

// x, y_1..y_m, z_1..z_m determined by x, or nullopt when some division fails.
std::optional<Assignment> zbad_from_x(const AbelianGroup& z, std::size_t m, const Int& x) {
  Assignment a;
  a.emplace("x", z.element_from_ints({x}));
  Int y = x + 1;
  Int w = x;
  for (std::size_t i = 1; i <= m; ++i) {
    if (!mpz_divisible_ui_p(y.get_mpz_t(), 2) || !mpz_divisible_ui_p(w.get_mpz_t(), 3)) return std::nullopt;
    y /= 2;
    w /= 3;
    a.emplace(indexed('y', i), z.element_from_ints({y}));
    a.emplace(indexed('z', i), z.element_from_ints({w}));
  }
  return a;
}

}  // namespace

GrowthReport zbad_bound_check(std::size_t max_depth, long search_bound) {
  GrowthReport rep{"zbad", "min |x|", {}};
  for (std::size_t m = 1; m <= max_depth; ++m) {
    const AbelianSystem sys = gen_zbad(m);

    // y_m = t gives y_i = 2^{m-i} t and x = 2 y_1 - 1; z_m = s gives x = 3^m s
    Int ycoef = 1;
    for (std::size_t i = m; i > 1; --i) ycoef *= 2;
    const Residue two_side{mod(Int(-1), 2 * ycoef), 2 * ycoef};
    Int zcoef = 1;
    for (std::size_t i = m; i >= 1; --i) zcoef *= 3;
    const Residue three_side{Int(0), zcoef};
    const Residue cls = crt_pair(two_side, three_side);

    const Int min_positive = cls.value == 0 ? cls.modulus : cls.value;
    const Int other = min_positive - cls.modulus;
    const Int min_abs = abs_int(other) < min_positive ? other : min_positive;
    const Int bound = zcoef;
    if (abs_int(min_abs) < bound) throw std::logic_error("zbad congruence class violates the bound");

    auto witness = zbad_from_x(sys.group, m, min_abs);
    if (!witness || !verify_solution(sys, *witness)) throw std::logic_error("zbad witness does not verify");

    for (long x = -search_bound; x <= search_bound; ++x) {
      long y = x + 1, w = x;
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i) {
        ok = y % 2 == 0 && w % 3 == 0;
        y /= 2;
        w /= 3;
      }
      if (!ok) continue;
      const auto a = zbad_from_x(sys.group, m, Int(x));
      if (!a) continue;
      if (!verify_solution(sys, *a)) throw std::logic_error("zbad search produced a non-solution");
      if (abs_int(Int(x)) < bound) throw std::logic_error("zbad search found a solution below the bound");
      if (mod(Int(x) - cls.value, cls.modulus) != 0) throw std::logic_error("zbad solution outside the CRT class");
    }
    rep.rows.push_back({m, bound, abs_int(min_abs), std::move(*witness), min_positive});
  }
  return rep;
}

}  // namespace groupeq
