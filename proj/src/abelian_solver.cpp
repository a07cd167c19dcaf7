#include "groupeq/abelian_solver.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>

namespace groupeq {
namespace {

using IntRows = std::vector<std::vector<Int>>;

Solution zero_solution(const AbelianSystem& sys) {
  Solution s;
  for (const auto& v : sys.variables()) s.emplace(v, sys.group.zero());
  return s;
}

void require_cyclic(const AbelianGroup& g, const char* who) {
  for (const auto& s : g.summands()) {
    if (s.kind != SummandKind::Cyclic) {
      throw Error(ErrorCode::UnsupportedGroup, std::string(who) + " needs a bounded-period group, got " + g.str());
    }
  }
}

std::vector<Int> cyclic_moduli(const AbelianGroup& g) {
  std::vector<Int> m;
  for (const auto& s : g.summands()) m.push_back(s.modulus());
  return m;
}

// rhs of every equation restricted to the given coordinates, as integers
IntRows rhs_ints(const AbelianSystem& sys, const std::vector<std::size_t>& positions) {
  IntRows out;
  for (const auto& eq : sys.equations) {
    if (!sys.group.contains(eq.rhs)) throw Error(ErrorCode::DescriptorMismatch, "rhs is not in " + sys.group.str());
    std::vector<Int> r;
    for (auto c : positions) r.push_back(eq.rhs.coords[c].get_num());
    out.push_back(std::move(r));
  }
  return out;
}

// M * X per coordinate modulo the coordinate moduli
IntRows apply(const IntMatrix& m, const IntRows& x, const std::vector<Int>& moduli) {
  IntRows out(m.rows(), std::vector<Int>(moduli.size()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      for (std::size_t c = 0; c < moduli.size(); ++c) out[i][c] += m(i, j) * x[j][c];
    }
  for (auto& row : out)
    for (std::size_t c = 0; c < moduli.size(); ++c) row[c] = mod(row[c], moduli[c]);
  return out;
}

// Row reduction over Z/p with pivots on the lowest-indexed column.
IntRows mod_p_core(const IntMatrix& m, const IntRows& rhs, std::size_t r, const Int& p) {
  const std::size_t k = m.rows();
  const std::size_t n = m.cols();
  struct Stored {
    std::size_t pivot;
    std::vector<Int> coef, rhs, combo;
  };
  std::vector<Stored> rows;
  for (std::size_t i = 0; i < k; ++i) {
    Stored cur{0, std::vector<Int>(n), std::vector<Int>(r), std::vector<Int>(k)};
    for (std::size_t j = 0; j < n; ++j) cur.coef[j] = mod(m(i, j), p);
    for (std::size_t c = 0; c < r; ++c) cur.rhs[c] = mod(rhs[i][c], p);
    cur.combo[i] = 1;
    for (const auto& s : rows) {
      const Int f = cur.coef[s.pivot];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) cur.coef[j] = mod(cur.coef[j] - f * s.coef[j], p);
      for (std::size_t c = 0; c < r; ++c) cur.rhs[c] = mod(cur.rhs[c] - f * s.rhs[c], p);
      for (std::size_t t = 0; t < k; ++t) cur.combo[t] = mod(cur.combo[t] - f * s.combo[t], p);
    }
    const auto it = std::find_if(cur.coef.begin(), cur.coef.end(), [](const Int& v) { return v != 0; });
    if (it == cur.coef.end()) {
      throw Error(ErrorCode::PSingular, "rows are dependent modulo " + p.get_str(), cur.combo, p);
    }
    cur.pivot = static_cast<std::size_t>(it - cur.coef.begin());
    const Int inv = inv_mod(cur.coef[cur.pivot], p);
    for (auto& v : cur.coef) v = mod(v * inv, p);
    for (auto& v : cur.rhs) v = mod(v * inv, p);
    for (auto& v : cur.combo) v = mod(v * inv, p);
    for (auto& s : rows) {
      const Int f = s.coef[cur.pivot];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) s.coef[j] = mod(s.coef[j] - f * cur.coef[j], p);
      for (std::size_t c = 0; c < r; ++c) s.rhs[c] = mod(s.rhs[c] - f * cur.rhs[c], p);
      for (std::size_t t = 0; t < k; ++t) s.combo[t] = mod(s.combo[t] - f * cur.combo[t], p);
    }
    rows.push_back(std::move(cur));
  }
  IntRows x(n, std::vector<Int>(r));
  for (const auto& s : rows) x[s.pivot] = s.rhs;
  return x;
}

// n rounds of: solve modulo p, lift, continue with the residual in p^{r+1} A.
IntRows lift_p_group(const IntMatrix& m, const IntRows& rhs, const std::vector<Int>& moduli, const Int& p,
                     unsigned long rounds, std::vector<IntRows>* trace) {
  const std::size_t k = m.rows();
  const std::size_t r = moduli.size();
  IntRows x(m.cols(), std::vector<Int>(r));
  Int p_r = 1;
  for (unsigned long round = 0;; ++round) {
    IntRows mx = apply(m, x, moduli);
    IntRows residual(k, std::vector<Int>(r));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < r; ++c) residual[i][c] = mod(rhs[i][c] - mx[i][c], moduli[c]);
    if (trace) trace->push_back(residual);
    for (const auto& row : residual)
      for (const auto& v : row)
        if (mpz_divisible_p(v.get_mpz_t(), p_r.get_mpz_t()) == 0) {
          throw std::logic_error("lifting residual left p^r A");
        }
    if (round == rounds) break;
    IntRows reduced(k, std::vector<Int>(r));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < r; ++c) reduced[i][c] = mod(residual[i][c] / p_r, p);
    const IntRows lift = mod_p_core(m, reduced, r, p);
    for (std::size_t j = 0; j < x.size(); ++j)
      for (std::size_t c = 0; c < r; ++c) x[j][c] = mod(x[j][c] + p_r * lift[j][c], moduli[c]);
    p_r *= p;
  }
  return x;
}

// Exact decision for M x = a over a sum of cyclic groups via U M V = D.
std::optional<IntRows> solve_cyclic_snf(const IntMatrix& m, const IntRows& rhs, const std::vector<Int>& moduli) {
  const std::size_t k = m.rows();
  const std::size_t n = m.cols();
  const std::size_t r = moduli.size();
  const SmithForm snf = smith_normal_form(m);
  IntRows b(k, std::vector<Int>(r));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t c = 0; c < r; ++c) b[i][c] += snf.U(i, l) * rhs[l][c];
  IntRows y(n, std::vector<Int>(r));
  for (std::size_t i = 0; i < k; ++i) {
    const Int d = i < n ? snf.D(i, i) : Int(0);
    for (std::size_t c = 0; c < r; ++c) {
      const Int bi = mod(b[i][c], moduli[c]);
      const Int g = gcd(d, moduli[c]);
      if (mpz_divisible_p(bi.get_mpz_t(), g.get_mpz_t()) == 0) return std::nullopt;
      if (i >= n || d == 0) continue;  // 0 = 0, y stays 0
      const Int reduced_mod = moduli[c] / g;
      y[i][c] = reduced_mod == 1 ? Int(0) : mod((bi / g) * inv_mod(d / g, reduced_mod), reduced_mod);
    }
  }
  IntRows x(n, std::vector<Int>(r));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (snf.V(j, i) == 0) continue;
      for (std::size_t c = 0; c < r; ++c) x[j][c] += snf.V(j, i) * y[i][c];
    }
  for (auto& row : x)
    for (std::size_t c = 0; c < r; ++c) row[c] = mod(row[c], moduli[c]);
  return x;
}

// Writes component solutions (rows = variables) into the full solution.
void scatter(Solution& sol, const AbelianGroup& g, const std::vector<VarId>& vars, const IntRows& x,
             const std::vector<std::size_t>& positions) {
  for (std::size_t j = 0; j < vars.size(); ++j) {
    Element& e = sol.at(vars[j]);
    for (std::size_t c = 0; c < positions.size(); ++c) e.coords[positions[c]] = Rat(x[j][c]);
  }
  for (auto& [v, e] : sol) e = g.element(e.coords);
}

void check_or_throw(const AbelianSystem& sys, const Solution& sol, const char* who) {
  if (!verify_solution(sys, sol)) throw std::logic_error(std::string(who) + " produced a non-solution");
}

AbelianSystem restrict_system(const AbelianSystem& sys, const std::vector<std::size_t>& positions) {
  AbelianSystem out;
  out.group = sys.group.restrict_to(positions);
  out.declared_vars = sys.variables();
  for (const auto& eq : sys.equations) out.add(eq.coeffs, sys.group.project(eq.rhs, positions));
  return out;
}

}  // namespace

Solution solve_mod_p(const AbelianSystem& sys) {
  const AbelianGroup& g = sys.group;
  if (g.empty()) return zero_solution(sys);
  const Int p = g.summands().front().p;
  for (const auto& s : g.summands()) {
    if (s.kind != SummandKind::Cyclic || s.e != 1 || s.p != p) {
      throw Error(ErrorCode::UnsupportedGroup, "solve_mod_p needs a group of prime period, got " + g.str());
    }
  }
  const ExponentMatrix em = ExponentMatrix::of(sys);
  std::vector<std::size_t> all(g.rank());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const IntRows x = mod_p_core(em.dense(), rhs_ints(sys, all), all.size(), p);
  Solution sol = zero_solution(sys);
  scatter(sol, g, em.vars, x, all);
  check_or_throw(sys, sol, "solve_mod_p");
  return sol;
}

Solution solve_p_group(const AbelianSystem& sys, LiftTrace* trace) {
  const AbelianGroup& g = sys.group;
  require_cyclic(g, "solve_p_group");
  if (g.empty()) return zero_solution(sys);
  const Int p = g.summands().front().p;
  if (!g.is_p_group(p)) throw Error(ErrorCode::NotAPGroup, g.str() + " is not a p-group");
  const ExponentMatrix em = ExponentMatrix::of(sys);
  const IntMatrix m = em.dense();
  auto ns = is_p_nonsingular(m, p);
  if (!ns.ok) throw Error(ErrorCode::PSingular, "system is " + p.get_str() + "-singular", ns.witness, p);

  unsigned long rounds = 0;
  for (const auto& s : g.summands()) rounds = std::max(rounds, s.e);
  std::vector<std::size_t> all(g.rank());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<IntRows> raw;
  const IntRows x = lift_p_group(m, rhs_ints(sys, all), cyclic_moduli(g), p, rounds, trace ? &raw : nullptr);
  if (trace) {
    trace->residuals.clear();
    for (const auto& round : raw) {
      std::vector<Element> elems;
      for (const auto& row : round) elems.push_back(g.element_from_ints(row));
      trace->residuals.push_back(std::move(elems));
    }
  }
  Solution sol = zero_solution(sys);
  scatter(sol, g, em.vars, x, all);
  check_or_throw(sys, sol, "solve_p_group");
  return sol;
}

Solution solve_bounded(const AbelianSystem& sys) {
  const AbelianGroup& g = sys.group;
  require_cyclic(g, "solve_bounded");
  const ExponentMatrix em = ExponentMatrix::of(sys);
  const IntMatrix m = em.dense();
  Solution sol = zero_solution(sys);
  for (const auto& p : g.classify().primes) {
    std::vector<std::size_t> pos;
    const AbelianGroup part = g.primary_part(p, &pos);
    const std::vector<Int> moduli = cyclic_moduli(part);
    const IntRows rhs = rhs_ints(sys, pos);
    const auto ns = is_p_nonsingular(m, p);
    IntRows x;
    if (ns.ok) {
      unsigned long rounds = 0;
      for (const auto& s : part.summands()) rounds = std::max(rounds, s.e);
      x = lift_p_group(m, rhs, moduli, p, rounds, nullptr);
    } else {
      auto fallback = solve_cyclic_snf(m, rhs, moduli);
      if (!fallback) {
        throw Error(ErrorCode::MissingPrimeNonsingularity,
                    "system is " + p.get_str() + "-singular and has no solution in the " + p.get_str() +
                        "-component",
                    ns.witness, p);
      }
      x = std::move(*fallback);
    }
    scatter(sol, g, em.vars, x, pos);
  }
  check_or_throw(sys, sol, "solve_bounded");
  return sol;
}

Solution solve_divisible(const AbelianSystem& sys) {
  const AbelianGroup& g = sys.group;
  if (!g.is_divisible()) throw Error(ErrorCode::NotDivisible, g.str() + " is not divisible");
  const IntMatrix full = ExponentMatrix::of(sys).dense();
  auto ns = is_nonsingular(full);
  if (!ns.ok) throw Error(ErrorCode::Singular, "rows are dependent over Q", ns.witness);

  const SquareReduction sq = reduce_to_square(sys, {});
  const ExponentMatrix em = ExponentMatrix::of(sq.square);
  const IntMatrix l = em.dense();
  const SmithForm snf = smith_normal_form(l);
  if (snf.U * l * snf.V != snf.D) throw std::logic_error("Smith form identity U*M*V = D failed");

  const std::size_t k = l.rows();
  std::vector<Element> y(k, g.zero());
  for (std::size_t i = 0; i < k; ++i) {
    Element b = g.zero();
    for (std::size_t t = 0; t < k; ++t) b = g.add(b, g.scale(snf.U(i, t), sq.square.equations[t].rhs));
    const Int& d = snf.D(i, i);
    if (d == 0) throw std::logic_error("zero elementary divisor in a nonsingular system");
    y[i] = g.divide_exact(d, b);
  }
  Assignment square_sol;
  for (std::size_t j = 0; j < em.vars.size(); ++j) {
    Element xj = g.zero();
    for (std::size_t i = 0; i < k; ++i) xj = g.add(xj, g.scale(snf.V(j, i), y[i]));
    square_sol.emplace(em.vars[j], std::move(xj));
  }
  Solution sol = sq.map_back(square_sol);
  for (const auto& v : sys.variables()) sol.try_emplace(v, g.zero());
  check_or_throw(sys, sol, "solve_divisible");
  return sol;
}

Solution solve_auto(const AbelianSystem& sys) {
  const AbelianGroup& g = sys.group;
  for (const auto& s : g.summands()) {
    if (s.kind == SummandKind::Integer) {
      throw Error(ErrorCode::UnsupportedGroup, "no solver for groups with a Z summand (" + g.str() + ")");
    }
  }
  const GroupClassification cls = g.classify();
  Solution sol = zero_solution(sys);
  auto merge = [&](const Solution& part, const std::vector<std::size_t>& pos) {
    for (auto& [v, e] : sol) {
      const Element& pe = part.at(v);
      for (std::size_t c = 0; c < pos.size(); ++c) e.coords[pos[c]] = pe.coords[c];
    }
  };
  if (!cls.reduced.empty()) merge(solve_bounded(restrict_system(sys, cls.reduced_positions)), cls.reduced_positions);
  if (!cls.divisible.empty()) {
    merge(solve_divisible(restrict_system(sys, cls.divisible_positions)), cls.divisible_positions);
  }
  check_or_throw(sys, sol, "solve_auto");
  return sol;
}

// ---------------------------------------------------------------------------
// EchelonState

EchelonState::EchelonState(AbelianGroup group) : group_(std::move(group)) {
  require_cyclic(group_, "EchelonState");
  for (const auto& p : group_.classify().primes) {
    Component comp;
    comp.p = p;
    group_.primary_part(p, &comp.positions);
    unsigned long e = 0;
    for (auto i : comp.positions) {
      e = std::max(e, group_.summands()[i].e);
      comp.coord_moduli.push_back(group_.summands()[i].modulus());
    }
    comp.modulus = pow(p, e);
    components_.push_back(std::move(comp));
  }
}

std::size_t EchelonState::var_index(const VarId& v) {
  auto [it, fresh] = index_.try_emplace(v, vars_.size());
  if (fresh) vars_.push_back(v);
  return it->second;
}

std::size_t EchelonState::pivot_count() const {
  std::size_t n = 0;
  for (const auto& c : components_) n = std::max(n, c.rows.size());
  return n;
}

void EchelonState::ingest(const AbelianEquation& eq) {
  if (!group_.contains(eq.rhs)) throw Error(ErrorCode::DescriptorMismatch, "rhs is not in " + group_.str());
  SparseRow base;
  for (const auto& [v, c] : eq.coeffs) {
    if (c != 0) base[var_index(v)] = c;
  }
  const std::size_t eq_index = ingested_;

  // reduce in every component first; commit only if all succeed
  std::vector<StoredRow> fresh(components_.size());
  for (std::size_t ci = 0; ci < components_.size(); ++ci) {
    const Component& comp = components_[ci];
    StoredRow cur;
    for (const auto& [j, c] : base) {
      Int r = mod(c, comp.modulus);
      if (r != 0) cur.coeffs.emplace(j, std::move(r));
    }
    for (auto i : comp.positions) cur.rhs.push_back(eq.rhs.coords[i].get_num());
    cur.combo[eq_index] = 1;

    std::vector<std::pair<std::size_t, Int>> hits;
    for (const auto& [j, c] : cur.coeffs) {
      const auto it = comp.row_of_pivot.find(j);
      if (it != comp.row_of_pivot.end()) hits.emplace_back(it->second, c);
    }
    for (const auto& [ri, f] : hits) {
      const StoredRow& s = comp.rows[ri];
      for (const auto& [j, c] : s.coeffs) {
        Int& dst = cur.coeffs[j];
        dst = mod(dst - f * c, comp.modulus);
        if (dst == 0) cur.coeffs.erase(j);
      }
      for (std::size_t c = 0; c < cur.rhs.size(); ++c) {
        cur.rhs[c] = mod(cur.rhs[c] - f * s.rhs[c], comp.coord_moduli[c]);
      }
      for (const auto& [t, c] : s.combo) {
        Int& dst = cur.combo[t];
        dst = mod(dst - f * c, comp.modulus);
        if (dst == 0) cur.combo.erase(t);
      }
    }

    // lowest-ordered variable with a unit coefficient
    std::optional<std::size_t> pivot;
    for (const auto& [j, c] : cur.coeffs) {
      if (mpz_divisible_p(c.get_mpz_t(), comp.p.get_mpz_t()) != 0) continue;
      if (!pivot || vars_[j] < vars_[*pivot]) pivot = j;
    }
    if (!pivot) {
      std::vector<Int> witness(eq_index + 1);
      for (const auto& [t, c] : cur.combo) witness[t] = mod(c, comp.p);
      throw Error(ErrorCode::DependentRow,
                  "equation " + std::to_string(eq_index) + " is dependent modulo " + comp.p.get_str(),
                  std::move(witness), comp.p);
    }
    cur.pivot = *pivot;
    const Int inv = inv_mod(cur.coeffs.at(*pivot), comp.modulus);
    for (auto& [j, c] : cur.coeffs) c = mod(c * inv, comp.modulus);
    for (std::size_t c = 0; c < cur.rhs.size(); ++c) cur.rhs[c] = mod(cur.rhs[c] * inv, comp.coord_moduli[c]);
    for (auto& [t, c] : cur.combo) c = mod(c * inv, comp.modulus);
    fresh[ci] = std::move(cur);
  }

  for (std::size_t ci = 0; ci < components_.size(); ++ci) {
    Component& comp = components_[ci];
    StoredRow& cur = fresh[ci];
    for (auto& s : comp.rows) {
      const auto it = s.coeffs.find(cur.pivot);
      if (it == s.coeffs.end()) continue;
      const Int f = it->second;
      for (const auto& [j, c] : cur.coeffs) {
        Int& dst = s.coeffs[j];
        dst = mod(dst - f * c, comp.modulus);
        if (dst == 0) s.coeffs.erase(j);
      }
      for (std::size_t c = 0; c < s.rhs.size(); ++c) s.rhs[c] = mod(s.rhs[c] - f * cur.rhs[c], comp.coord_moduli[c]);
      for (const auto& [t, c] : cur.combo) {
        Int& dst = s.combo[t];
        dst = mod(dst - f * c, comp.modulus);
        if (dst == 0) s.combo.erase(t);
      }
    }
    comp.row_of_pivot[cur.pivot] = comp.rows.size();
    comp.rows.push_back(std::move(cur));
  }
  ++ingested_;
}

Solution EchelonState::solution() const {
  Solution sol;
  for (const auto& v : vars_) sol.emplace(v, group_.zero());
  for (const auto& comp : components_) {
    for (const auto& row : comp.rows) {
      Element& e = sol.at(vars_[row.pivot]);
      for (std::size_t c = 0; c < comp.positions.size(); ++c) e.coords[comp.positions[c]] = Rat(row.rhs[c]);
    }
  }
  return sol;
}

EchelonState stream_ingest(EchelonState state, const AbelianEquation& eq) {
  state.ingest(eq);
  return state;
}

Solution stream_solution(const EchelonState& state) { return state.solution(); }

// ---------------------------------------------------------------------------
// Brute force

namespace {

struct Flat {
  std::vector<VarId> vars;
  std::uint64_t group_order = 1;
  std::vector<std::int64_t> moduli;
  std::vector<std::vector<std::int64_t>> elems;          // element index -> coords
  std::vector<std::vector<std::vector<std::int64_t>>> a;  // [eq][var][coord] coefficient mod m_c
  std::vector<std::vector<std::int64_t>> rhs;             // [eq][coord]
  std::uint64_t space = 1;
};

Flat flatten(const AbelianSystem& sys, std::uint64_t limit) {
  const AbelianGroup& g = sys.group;
  if (!g.is_finite()) throw Error(ErrorCode::UnsupportedGroup, "brute force needs a finite group, got " + g.str());
  Flat f;
  f.vars = sys.variables();
  const Int order = *g.order_of_group();
  Int space = 1;
  for (std::size_t i = 0; i < f.vars.size(); ++i) {
    space *= order;
    if (space > limit) break;
  }
  if (space > limit) {
    throw Error(ErrorCode::SearchSpaceTooLarge,
                "|A|^#vars exceeds the limit of " + std::to_string(limit) + " assignments");
  }
  f.space = space.get_ui();
  f.group_order = order.get_ui();
  for (const auto& s : g.summands()) f.moduli.push_back(static_cast<std::int64_t>(s.modulus().get_si()));
  f.elems.resize(f.group_order);
  for (std::uint64_t idx = 0; idx < f.group_order; ++idx) {
    std::vector<std::int64_t> c(f.moduli.size());
    std::uint64_t rest = idx;
    for (std::size_t t = f.moduli.size(); t-- > 0;) {
      c[t] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(f.moduli[t]));
      rest /= static_cast<std::uint64_t>(f.moduli[t]);
    }
    f.elems[idx] = std::move(c);
  }
  for (const auto& eq : sys.equations) {
    if (!g.contains(eq.rhs)) throw Error(ErrorCode::DescriptorMismatch, "rhs is not in " + g.str());
    std::vector<std::vector<std::int64_t>> row(f.vars.size(), std::vector<std::int64_t>(f.moduli.size()));
    for (std::size_t j = 0; j < f.vars.size(); ++j) {
      const auto it = eq.coeffs.find(f.vars[j]);
      if (it == eq.coeffs.end()) continue;
      for (std::size_t c = 0; c < f.moduli.size(); ++c) {
        row[j][c] = static_cast<std::int64_t>(mod(it->second, Int(static_cast<long>(f.moduli[c]))).get_si());
      }
    }
    f.a.push_back(std::move(row));
    std::vector<std::int64_t> r;
    for (std::size_t c = 0; c < f.moduli.size(); ++c) r.push_back(eq.rhs.coords[c].get_num().get_si());
    f.rhs.push_back(std::move(r));
  }
  return f;
}

bool satisfies(const Flat& f, const std::vector<std::uint64_t>& choice) {
  for (std::size_t i = 0; i < f.a.size(); ++i) {
    for (std::size_t c = 0; c < f.moduli.size(); ++c) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < choice.size(); ++j) {
        const std::int64_t k = f.a[i][j][c];
        if (k != 0) acc = (acc + k * f.elems[choice[j]][c]) % f.moduli[c];
      }
      if (acc != f.rhs[i][c]) return false;
    }
  }
  return true;
}

// Odometer over variables [from, n) with the earlier ones fixed.
bool search_suffix(const Flat& f, std::vector<std::uint64_t>& choice, std::size_t from) {
  const std::size_t n = choice.size();
  for (std::size_t j = from; j < n; ++j) choice[j] = 0;
  for (;;) {
    if (satisfies(f, choice)) return true;
    std::size_t j = n;
    while (j > from) {
      --j;
      if (++choice[j] < f.group_order) break;
      choice[j] = 0;
      if (j == from) return false;
    }
    if (j == from && n == from) return false;
  }
}

Solution unflatten(const AbelianSystem& sys, const Flat& f, const std::vector<std::uint64_t>& choice) {
  Solution sol;
  for (std::size_t j = 0; j < f.vars.size(); ++j) {
    std::vector<Int> c;
    for (auto v : f.elems[choice[j]]) c.emplace_back(static_cast<long>(v));
    sol.emplace(f.vars[j], sys.group.element_from_ints(c));
  }
  return sol;
}

}  // namespace

std::optional<Solution> brute_force_solve_serial(const AbelianSystem& sys, std::uint64_t limit) {
  const Flat f = flatten(sys, limit);
  std::vector<std::uint64_t> choice(f.vars.size());
  if (!search_suffix(f, choice, 0)) return std::nullopt;
  return unflatten(sys, f, choice);
}

std::optional<Solution> brute_force_solve(const AbelianSystem& sys, std::uint64_t limit) {
  const Flat f = flatten(sys, limit);
  if (f.vars.empty()) {
    std::vector<std::uint64_t> none;
    if (!satisfies(f, none)) return std::nullopt;
    return unflatten(sys, f, none);
  }
  const auto lead_count = static_cast<std::int64_t>(f.group_order);
  std::atomic<std::int64_t> best{std::numeric_limits<std::int64_t>::max()};
  std::vector<std::vector<std::uint64_t>> hits(f.group_order);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t lead = 0; lead < lead_count; ++lead) {
    if (lead > best.load(std::memory_order_relaxed)) continue;
    std::vector<std::uint64_t> choice(f.vars.size());
    choice[0] = static_cast<std::uint64_t>(lead);
    if (!search_suffix(f, choice, 1)) continue;
    hits[static_cast<std::size_t>(lead)] = choice;
    std::int64_t cur = best.load();
    while (lead < cur && !best.compare_exchange_weak(cur, lead)) {
    }
  }
  const std::int64_t winner = best.load();
  if (winner == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  return unflatten(sys, f, hits[static_cast<std::size_t>(winner)]);
}

}  // namespace groupeq
