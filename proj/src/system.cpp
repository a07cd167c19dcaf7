#include "groupeq/system.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "groupeq/random.hpp"

namespace groupeq {

void add_to_row(Row& row, const VarId& var, const Int& coeff) {
  if (coeff == 0) return;
  auto it = row.find(var);
  if (it == row.end()) {
    row.emplace(var, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) row.erase(it);
}

std::vector<VarId> AbelianSystem::variables() const {
  std::set<VarId> vs(declared_vars.begin(), declared_vars.end());
  for (const auto& eq : equations)
    for (const auto& [v, c] : eq.coeffs) vs.insert(v);
  return {vs.begin(), vs.end()};
}

void AbelianSystem::add(Row coeffs, Element rhs) {
  for (auto it = coeffs.begin(); it != coeffs.end();) it = it->second == 0 ? coeffs.erase(it) : std::next(it);
  equations.push_back({std::move(coeffs), std::move(rhs)});
}

GroupEquation& GroupEquation::c(Element g) {
  word.emplace_back(ConstLiteral{std::move(g)});
  return *this;
}

GroupEquation& GroupEquation::x(VarId v, std::int64_t e) {
  if (e == 0) throw Error(ErrorCode::InvalidArgument, "variable literal with zero exponent");
  word.emplace_back(VarLiteral{std::move(v), e});
  return *this;
}

std::vector<VarId> GroupSystem::variables() const {
  std::set<VarId> vs(declared_vars.begin(), declared_vars.end());
  for (const auto& eq : equations)
    for (const auto& lit : eq.word)
      if (const auto* v = std::get_if<VarLiteral>(&lit)) vs.insert(v->var);
  return {vs.begin(), vs.end()};
}

Row exponent_row(const GroupEquation& eq) {
  Row row;
  for (const auto& lit : eq.word)
    if (const auto* v = std::get_if<VarLiteral>(&lit)) add_to_row(row, v->var, Int(static_cast<long>(v->exp)));
  return row;
}

ExponentMatrix ExponentMatrix::of(const AbelianSystem& s) {
  ExponentMatrix m;
  m.vars = s.variables();
  for (const auto& eq : s.equations) m.rows.push_back(eq.coeffs);
  return m;
}

ExponentMatrix ExponentMatrix::of(const GroupSystem& s) {
  ExponentMatrix m;
  m.vars = s.variables();
  for (const auto& eq : s.equations) m.rows.push_back(exponent_row(eq));
  return m;
}

ExponentMatrix ExponentMatrix::from_dense(const IntMatrix& d) {
  ExponentMatrix m;
  char buf[32];
  for (std::size_t j = 0; j < d.cols(); ++j) {
    std::snprintf(buf, sizeof buf, "c%04zu", j);
    m.vars.emplace_back(buf);
  }
  for (std::size_t i = 0; i < d.rows(); ++i) {
    Row r;
    for (std::size_t j = 0; j < d.cols(); ++j) add_to_row(r, m.vars[j], d(i, j));
    m.rows.push_back(std::move(r));
  }
  return m;
}

IntMatrix ExponentMatrix::dense() const {
  IntMatrix d(rows.size(), vars.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [v, c] : rows[i]) {
      const auto it = std::lower_bound(vars.begin(), vars.end(), v);
      if (it == vars.end() || *it != v) throw Error(ErrorCode::MissingVariable, "row mentions unknown variable " + v);
      d(i, static_cast<std::size_t>(it - vars.begin())) = c;
    }
  return d;
}

NonsingularityResult is_nonsingular(const IntMatrix& m) {
  auto r = rank_over_q(m);
  return {r.full_row_rank, std::move(r.witness)};
}

NonsingularityResult is_p_nonsingular(const IntMatrix& m, const Int& p) {
  auto r = rank_mod_p(m, p);
  return {r.full_row_rank, std::move(r.witness)};
}

SingularityReport classify(const IntMatrix& m, const std::vector<Int>& primes, bool with_unimodular) {
  SingularityReport rep;
  auto q = is_nonsingular(m);
  rep.nonsingular = q.ok;
  rep.witness = std::move(q.witness);
  for (const auto& p : primes) {
    auto r = is_p_nonsingular(m, p);
    rep.p_nonsingular[p] = r.ok;
    if (!r.ok) rep.p_witness[p] = std::move(r.witness);
  }
  if (with_unimodular) rep.unimodular = is_unimodular(m);
  return rep;
}

std::vector<SingularityReport> classify_batch_serial(const std::vector<IntMatrix>& ms,
                                                     const std::vector<Int>& primes) {
  std::vector<SingularityReport> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(classify(m, primes));
  return out;
}

std::vector<SingularityReport> classify_batch(const std::vector<IntMatrix>& ms, const std::vector<Int>& primes) {
  std::vector<SingularityReport> out(ms.size());
  const auto n = static_cast<long>(ms.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = classify(ms[static_cast<std::size_t>(i)], primes);
  return out;
}

Assignment SquareReduction::map_back(const Assignment& square_solution) const {
  const AbelianGroup& g = square.group;
  Assignment out;
  for (const auto& [var, combo] : back_map) {
    Element value = g.zero();
    for (const auto& [sv, k] : combo) {
      const auto it = square_solution.find(sv);
      if (it == square_solution.end()) throw Error(ErrorCode::MissingVariable, "square solution lacks " + sv);
      value = g.add(value, g.scale(k, it->second));
    }
    out.emplace(var, std::move(value));
  }
  return out;
}

SquareReduction reduce_to_square(const AbelianSystem& sys, const std::vector<Int>& primes) {
  const ExponentMatrix em = ExponentMatrix::of(sys);
  const IntMatrix m = em.dense();
  const std::size_t k = m.rows();
  const std::size_t n = m.cols();

  auto q = is_nonsingular(m);
  if (!q.ok) throw Error(ErrorCode::NotPiNonsingular, "system is singular", q.witness);
  for (const auto& p : primes) {
    auto r = is_p_nonsingular(m, p);
    if (!r.ok) throw Error(ErrorCode::NotPiNonsingular, "system is " + p.get_str() + "-singular", r.witness, p);
  }

  SquareReduction out;
  out.square.group = sys.group;
  if (k == n) {
    out.square = sys;
    for (const auto& v : em.vars) out.back_map[v] = Row{{v, Int(1)}};
    return out;
  }

  // M V = [L | 0]; with x = V y and y_{k..n-1} = 0 the system becomes L y = a.
  // V is unimodular, so L keeps the mod-p rank of M for every p.
  const ColumnHermite h = column_hermite(m);
  std::vector<VarId> square_vars(em.vars.begin(), em.vars.begin() + static_cast<std::ptrdiff_t>(k));
  for (std::size_t i = 0; i < k; ++i) {
    Row r;
    for (std::size_t j = 0; j < k; ++j) add_to_row(r, square_vars[j], h.L(i, j));
    out.square.add(std::move(r), sys.equations[i].rhs);
  }
  out.square.declared_vars = square_vars;
  for (std::size_t row = 0; row < n; ++row) {
    Row combo;
    for (std::size_t j = 0; j < k; ++j) add_to_row(combo, square_vars[j], h.V(row, j));
    out.back_map[em.vars[row]] = std::move(combo);
  }
  return out;
}

bool verify_solution(const AbelianSystem& sys, const Assignment& assignment) {
  const AbelianGroup& g = sys.group;
  for (const auto& v : sys.variables()) {
    const auto it = assignment.find(v);
    if (it == assignment.end()) throw Error(ErrorCode::MissingVariable, "no value for " + v);
    if (!g.contains(it->second)) {
      throw Error(ErrorCode::DescriptorMismatch, "value of " + v + " is not in " + g.str());
    }
  }
  for (const auto& eq : sys.equations) {
    if (!g.contains(eq.rhs)) throw Error(ErrorCode::DescriptorMismatch, "rhs is not in " + g.str());
    Element lhs = g.zero();
    for (const auto& [v, c] : eq.coeffs) lhs = g.add(lhs, g.scale(c, assignment.at(v)));
    if (lhs != eq.rhs) return false;
  }
  return true;
}

AbelianSystem EquationStream::truncation(std::size_t n) const {
  AbelianSystem s;
  s.group = group_;
  s.equations.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.equations.push_back(at(i));
  return s;
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Int random_below(Rng& rng, const Int& bound) {
  Int r = 0;
  for (int i = 0; i < 4; ++i) {
    r <<= 64;
    const std::uint64_t x = rng.next();
    Int part;
    mpz_import(part.get_mpz_t(), 1, -1, sizeof x, 0, 0, &x);
    r += part;
  }
  return mod(r, bound);
}

std::string indexed(char prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%04zu", prefix, i);
  return buf;
}

}  // namespace

Element random_element(const AbelianGroup& group, Rng& rng) {
  std::vector<Rat> c;
  for (const auto& s : group.summands()) {
    switch (s.kind) {
      case SummandKind::Cyclic: c.emplace_back(random_below(rng, s.modulus())); break;
      case SummandKind::Prufer: {
        const Int den = pow(s.p, static_cast<unsigned long>(rng.uniform(0, 3)));
        c.push_back(make_rat(random_below(rng, den), den));
        break;
      }
      case SummandKind::Rational: c.push_back(make_rat(Int(rng.uniform(-10, 10)), Int(rng.uniform(1, 10)))); break;
      case SummandKind::Integer: c.emplace_back(Int(rng.uniform(-10, 10))); break;
    }
  }
  return group.element(std::move(c));
}

EquationStream random_unimodular_stream(const AbelianGroup& group, std::uint64_t seed) {
  auto gen = [group, seed](std::size_t i) {
    Rng rng(mix(seed ^ mix(static_cast<std::uint64_t>(i))));
    Row row;
    row[indexed('x', i)] = 1;
    if (rng.coin()) add_to_row(row, indexed('w', i), Int(rng.uniform(-3, 3)));
    const long extra = i == 0 ? 0 : rng.uniform(0, 3);
    for (long t = 0; t < extra; ++t) {
      const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(i) - 1));
      add_to_row(row, indexed(rng.coin() ? 'x' : 'w', j), Int(rng.uniform(-5, 5)));
    }
    // x_i only ever appears with coefficient 1 in its own equation
    row[indexed('x', i)] = 1;
    return AbelianEquation{std::move(row), random_element(group, rng)};
  };
  return EquationStream(group, std::move(gen));
}

SingularityReport classify_stream(const EquationStream& stream, std::size_t depth, const std::vector<Int>& primes) {
  const auto m = ExponentMatrix::of(stream.truncation(depth)).dense();
  SingularityReport rep = classify(m, primes);
  rep.checked_depth = depth;
  return rep;
}

}  // namespace groupeq
