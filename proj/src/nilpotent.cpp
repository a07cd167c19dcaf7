#include "groupeq/nilpotent.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <stdexcept>

#include "groupeq/abelian_solver.hpp"
#include "groupeq/random.hpp"

namespace groupeq {

Element NilpotentGroup::power(const Element& g, std::int64_t n) const {
  Element base = n < 0 ? invert(g) : g;
  auto k = static_cast<std::uint64_t>(n < 0 ? -n : n);
  Element acc = identity();
  while (k > 0) {
    if (k & 1U) acc = multiply(acc, base);
    k >>= 1U;
    if (k > 0) base = multiply(base, base);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// AbelianHandle

ExtInt AbelianHandle::period_bound() const {
  if (!group_.is_finite()) return ExtInt::infinite();
  return group_.classify().period;
}

Element AbelianHandle::embed_center(const Element& z) const {
  if (!group_.contains(z)) throw Error(ErrorCode::DescriptorMismatch, "not in the center");
  return z;
}

std::optional<Element> AbelianHandle::recognize_center(const Element& g) const {
  if (!group_.contains(g)) throw Error(ErrorCode::DescriptorMismatch, "not a group element");
  return g;
}

GroupHandle AbelianHandle::quotient_by_center() const { return std::make_shared<AbelianHandle>(AbelianGroup()); }

Element AbelianHandle::project(const Element& g) const {
  if (!group_.contains(g)) throw Error(ErrorCode::DescriptorMismatch, "not a group element");
  return Element{};
}

Element AbelianHandle::section(const Element& q) const {
  if (!q.coords.empty()) throw Error(ErrorCode::DescriptorMismatch, "not an element of the trivial quotient");
  return group_.zero();
}

// ---------------------------------------------------------------------------
// HeisenbergGroup

HeisenbergGroup::HeisenbergGroup(AbelianGroup ring, bool over_q) : center_(std::move(ring)), over_q_(over_q) {
  const Summand s = center_.summands().front();
  quotient_ = std::make_shared<AbelianHandle>(AbelianGroup({s, s}));
}

std::shared_ptr<const HeisenbergGroup> HeisenbergGroup::mod(const Int& p, unsigned long e) {
  return std::shared_ptr<const HeisenbergGroup>(new HeisenbergGroup(AbelianGroup({Summand::cyclic(p, e)}), false));
}

std::shared_ptr<const HeisenbergGroup> HeisenbergGroup::rationals() {
  return std::shared_ptr<const HeisenbergGroup>(new HeisenbergGroup(AbelianGroup({Summand::rational()}), true));
}

std::string HeisenbergGroup::name() const { return "Heisenberg(" + center_.str() + ")"; }

Element HeisenbergGroup::identity() const { return Element{{Rat(0), Rat(0), Rat(0)}}; }

Element HeisenbergGroup::element(std::vector<Rat> coords) const {
  if (coords.size() != 3) throw Error(ErrorCode::DescriptorMismatch, "Heisenberg elements have 3 coordinates");
  for (auto& c : coords) c = center_.element({c}).coords[0];
  return Element{std::move(coords)};
}

bool HeisenbergGroup::contains(const Element& a) const {
  if (a.coords.size() != 3) return false;
  return std::all_of(a.coords.begin(), a.coords.end(), [&](const Rat& c) { return center_.contains(Element{{c}}); });
}

Element HeisenbergGroup::multiply(const Element& x, const Element& y) const {
  if (!contains(x) || !contains(y)) throw Error(ErrorCode::DescriptorMismatch, "not elements of " + name());
  const auto& a = x.coords;
  const auto& b = y.coords;
  return element({a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]});
}

Element HeisenbergGroup::invert(const Element& x) const {
  if (!contains(x)) throw Error(ErrorCode::DescriptorMismatch, "not an element of " + name());
  const auto& a = x.coords;
  return element({-a[0], -a[1], a[0] * a[1] - a[2]});
}

ExtInt HeisenbergGroup::period_bound() const {
  if (over_q_) return ExtInt::infinite();
  const Summand& s = center_.summands().front();
  // (a,b,c)^n = (na, nb, nc + C(n,2) ab); C(2^e, 2) is not divisible by 2^e
  return ExtInt::finite(s.p == 2 ? pow(s.p, s.e + 1) : pow(s.p, s.e));
}

Element HeisenbergGroup::embed_center(const Element& z) const {
  if (!center_.contains(z)) throw Error(ErrorCode::DescriptorMismatch, "not an element of the center");
  return Element{{Rat(0), Rat(0), z.coords[0]}};
}

std::optional<Element> HeisenbergGroup::recognize_center(const Element& g) const {
  if (!contains(g)) throw Error(ErrorCode::DescriptorMismatch, "not an element of " + name());
  if (g.coords[0] != 0 || g.coords[1] != 0) return std::nullopt;
  return Element{{g.coords[2]}};
}

Element HeisenbergGroup::project(const Element& g) const {
  if (!contains(g)) throw Error(ErrorCode::DescriptorMismatch, "not an element of " + name());
  return Element{{g.coords[0], g.coords[1]}};
}

Element HeisenbergGroup::section(const Element& q) const {
  if (!quotient_->contains(q)) throw Error(ErrorCode::DescriptorMismatch, "not an element of the quotient");
  return Element{{q.coords[0], q.coords[1], Rat(0)}};
}

std::vector<Element> HeisenbergGroup::elements() const {
  const auto n = center_.order_of_group();
  if (!n || *n * *n * *n > 512) throw Error(ErrorCode::OutOfRange, name() + " is too large to enumerate");
  const long m = n->get_si();
  std::vector<Element> out;
  for (long a = 0; a < m; ++a)
    for (long b = 0; b < m; ++b)
      for (long c = 0; c < m; ++c) out.push_back(Element{{Rat(a), Rat(b), Rat(c)}});
  return out;
}

// ---------------------------------------------------------------------------
// TableGroup

TableGroup::TableGroup(std::vector<std::vector<std::uint32_t>> table) : table_(std::move(table)) {
  const std::size_t n = table_.size();
  if (n == 0 || n > 512) throw Error(ErrorCode::InvalidArgument, "table groups need 1 <= n <= 512");
  for (const auto& row : table_) {
    if (row.size() != n) throw Error(ErrorCode::InvalidArgument, "table is not square");
    std::vector<bool> seen(n);
    for (auto v : row) {
      if (v >= n || seen[v]) throw Error(ErrorCode::InvalidArgument, "table rows must be permutations");
      seen[v] = true;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<bool> seen(n);
    for (std::size_t r = 0; r < n; ++r) {
      if (seen[table_[r][c]]) throw Error(ErrorCode::InvalidArgument, "table columns must be permutations");
      seen[table_[r][c]] = true;
    }
  }
  bool found = false;
  for (std::uint32_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::uint32_t x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::InvalidArgument, "table has no identity");
  inverse_.resize(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y)
      if (table_[x][y] == identity_) inverse_[x] = y;
    if (table_[inverse_[x]][x] != identity_) throw Error(ErrorCode::InvalidArgument, "inverses are not two-sided");
  }
  auto assoc = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    return table_[table_[a][b]][c] == table_[a][table_[b][c]];
  };
  if (n <= 64) {
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        for (std::uint32_t c = 0; c < n; ++c)
          if (!assoc(a, b, c)) throw Error(ErrorCode::InvalidArgument, "table is not associative");
  } else {
    Rng rng(0x5eed);
    for (int t = 0; t < 20000; ++t) {
      const auto a = static_cast<std::uint32_t>(rng.uniform(0, static_cast<long>(n) - 1));
      const auto b = static_cast<std::uint32_t>(rng.uniform(0, static_cast<long>(n) - 1));
      const auto c = static_cast<std::uint32_t>(rng.uniform(0, static_cast<long>(n) - 1));
      if (!assoc(a, b, c)) throw Error(ErrorCode::InvalidArgument, "table is not associative");
    }
  }
}

TableGroup TableGroup::from_handle(const NilpotentGroup& g, const std::vector<Element>& elements) {
  std::map<std::vector<std::string>, std::uint32_t> index;
  auto key = [](const Element& e) {
    std::vector<std::string> k;
    for (const auto& c : e.coords) k.push_back(to_string(c));
    return k;
  };
  for (std::uint32_t i = 0; i < elements.size(); ++i) index.emplace(key(elements[i]), i);
  std::vector<std::vector<std::uint32_t>> t(elements.size(), std::vector<std::uint32_t>(elements.size()));
  for (std::size_t a = 0; a < elements.size(); ++a)
    for (std::size_t b = 0; b < elements.size(); ++b) {
      const auto it = index.find(key(g.multiply(elements[a], elements[b])));
      if (it == index.end()) throw Error(ErrorCode::InvalidArgument, "element list is not closed");
      t[a][b] = it->second;
    }
  return TableGroup(std::move(t));
}

std::uint32_t TableGroup::power(std::uint32_t a, std::int64_t n) const {
  std::uint32_t base = n < 0 ? inverse_[a] : a;
  auto k = static_cast<std::uint64_t>(n < 0 ? -n : n);
  std::uint32_t acc = identity_;
  while (k > 0) {
    if (k & 1U) acc = table_[acc][base];
    k >>= 1U;
    if (k > 0) base = table_[base][base];
  }
  return acc;
}

std::vector<std::uint32_t> TableGroup::center() const {
  std::vector<std::uint32_t> z;
  for (std::uint32_t a = 0; a < order(); ++a) {
    bool central = true;
    for (std::uint32_t b = 0; b < order() && central; ++b) central = table_[a][b] == table_[b][a];
    if (central) z.push_back(a);
  }
  return z;
}

std::uint32_t TableGroup::index_of(const Element& e) const {
  if (e.coords.size() != 1 || e.coords[0].get_den() != 1 || e.coords[0] < 0 ||
      e.coords[0] >= static_cast<unsigned long>(order())) {
    throw Error(ErrorCode::DescriptorMismatch, to_string(e) + " is not a table element");
  }
  return static_cast<std::uint32_t>(e.coords[0].get_num().get_ui());
}

// ---------------------------------------------------------------------------
// Words

Element commutator(const NilpotentGroup& g, const Element& a, const Element& b) {
  return g.multiply(g.multiply(g.invert(a), g.invert(b)), g.multiply(a, b));
}

std::uint32_t commutator(const TableGroup& g, std::uint32_t a, std::uint32_t b) {
  return g.multiply(g.multiply(g.inverse(a), g.inverse(b)), g.multiply(a, b));
}

Element evaluate_word(const NilpotentGroup& g, const GroupEquation& eq, const Assignment& assignment) {
  Element acc = g.identity();
  for (const auto& lit : eq.word) {
    if (const auto* c = std::get_if<ConstLiteral>(&lit)) {
      acc = g.multiply(acc, c->value);
      continue;
    }
    const auto& v = std::get<VarLiteral>(lit);
    const auto it = assignment.find(v.var);
    if (it == assignment.end()) throw Error(ErrorCode::MissingVariable, "no value for " + v.var);
    acc = g.multiply(acc, g.power(it->second, v.exp));
  }
  return acc;
}

std::uint32_t evaluate_word(const TableGroup& g, const GroupEquation& eq, const Assignment& assignment) {
  std::uint32_t acc = g.identity();
  for (const auto& lit : eq.word) {
    if (const auto* c = std::get_if<ConstLiteral>(&lit)) {
      acc = g.multiply(acc, g.index_of(c->value));
      continue;
    }
    const auto& v = std::get<VarLiteral>(lit);
    const auto it = assignment.find(v.var);
    if (it == assignment.end()) throw Error(ErrorCode::MissingVariable, "no value for " + v.var);
    acc = g.multiply(acc, g.power(g.index_of(it->second), v.exp));
  }
  return acc;
}

bool verify_group_solution(const NilpotentGroup& g, const GroupSystem& sys, const Assignment& assignment) {
  const Element one = g.identity();
  for (const auto& eq : sys.equations)
    if (evaluate_word(g, eq, assignment) != one) return false;
  return true;
}

bool verify_group_solution(const TableGroup& g, const GroupSystem& sys, const Assignment& assignment) {
  for (const auto& eq : sys.equations)
    if (evaluate_word(g, eq, assignment) != g.identity()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Solvers

namespace {

enum class CenterMode { Bounded, Divisible };

Assignment solve_by_class(const GroupSystem& sys, const NilpotentGroup& g, CenterMode mode);

// Abelian system {row_i . z = -b_i} over Z(G), solved and embedded into G.
Assignment solve_in_center(const GroupSystem& sys, const NilpotentGroup& g, const std::vector<Element>& b,
                           CenterMode mode) {
  const AbelianGroup& z = g.center();
  AbelianSystem ab;
  ab.group = z;
  ab.declared_vars = sys.variables();
  for (std::size_t i = 0; i < sys.equations.size(); ++i) ab.add(exponent_row(sys.equations[i]), z.neg(b[i]));
  const Solution zs = mode == CenterMode::Bounded ? solve_bounded(ab) : solve_divisible(ab);
  Assignment out;
  for (const auto& [v, e] : zs) out.emplace(v, g.embed_center(e));
  return out;
}

Assignment solve_by_class(const GroupSystem& sys, const NilpotentGroup& g, CenterMode mode) {
  if (g.nilpotency_class() <= 1) {
    // every constant is central: w = 1  <=>  sum a_ij x_j = -(product of constants)
    std::vector<Element> b;
    for (const auto& eq : sys.equations) {
      Element prod = g.center().zero();
      for (const auto& lit : eq.word)
        if (const auto* c = std::get_if<ConstLiteral>(&lit)) {
          const auto z = g.recognize_center(c->value);
          if (!z) throw Error(ErrorCode::CentralityAssertionFailed, "constant outside the center of a class-1 group");
          prod = g.center().add(prod, *z);
        }
      b.push_back(std::move(prod));
    }
    return solve_in_center(sys, g, b, mode);
  }

  const GroupHandle q = g.quotient_by_center();
  GroupSystem projected;
  projected.declared_vars = sys.variables();
  for (const auto& eq : sys.equations) {
    GroupEquation pe;
    for (const auto& lit : eq.word) {
      if (const auto* c = std::get_if<ConstLiteral>(&lit)) {
        pe.c(g.project(c->value));
      } else {
        pe.word.push_back(lit);
      }
    }
    projected.equations.push_back(std::move(pe));
  }
  const Assignment qsol = solve_by_class(projected, *q, mode);

  std::map<VarId, Element> lift, lift_inv;
  for (const auto& [v, e] : qsol) {
    lift.emplace(v, g.section(e));
    lift_inv.emplace(v, g.invert(lift.at(v)));
  }

  // x -> c x: x^e becomes (c x)^e, x^-e becomes (x^-1 c^-1)^e
  std::vector<Element> b;
  const Assignment at_identity = [&] {
    Assignment a;
    for (const auto& v : sys.variables()) a.emplace(v, g.identity());
    return a;
  }();
  for (const auto& eq : sys.equations) {
    GroupEquation sub;
    for (const auto& lit : eq.word) {
      if (std::holds_alternative<ConstLiteral>(lit)) {
        sub.word.push_back(lit);
        continue;
      }
      const auto& v = std::get<VarLiteral>(lit);
      const std::int64_t reps = v.exp < 0 ? -v.exp : v.exp;
      for (std::int64_t t = 0; t < reps; ++t) {
        if (v.exp > 0) {
          sub.c(lift.at(v.var)).x(v.var, 1);
        } else {
          sub.x(v.var, -1).c(lift_inv.at(v.var));
        }
      }
    }
    const Element bi = evaluate_word(g, sub, at_identity);
    const auto central = g.recognize_center(bi);
    if (!central) {
      throw Error(ErrorCode::CentralityAssertionFailed,
                  "coefficient product " + to_string(bi) + " of a lifted equation is not central in " + g.name());
    }
    b.push_back(*central);
  }

  const Assignment zsol = solve_in_center(sys, g, b, mode);
  Assignment out;
  for (const auto& v : sys.variables()) out.emplace(v, g.multiply(lift.at(v), zsol.at(v)));
  return out;
}

void check_constants(const GroupSystem& sys, const NilpotentGroup& g) {
  for (const auto& eq : sys.equations)
    for (const auto& lit : eq.word)
      if (const auto* c = std::get_if<ConstLiteral>(&lit); c && !g.contains(c->value)) {
        throw Error(ErrorCode::DescriptorMismatch, to_string(c->value) + " is not an element of " + g.name());
      }
}

}  // namespace

Assignment solve_nilpotent_bounded(const GroupSystem& sys, const NilpotentGroup& g) {
  check_constants(sys, g);
  if (g.period_bound().is_infinite()) {
    throw Error(ErrorCode::UnsupportedGroup, g.name() + " does not have bounded period");
  }
  const IntMatrix m = ExponentMatrix::of(sys).dense();
  if (!is_unimodular(m)) {
    const auto ns = is_nonsingular(m);
    throw Error(ErrorCode::NotUnimodular, "system is not unimodular", ns.witness);
  }
  Assignment sol = solve_by_class(sys, g, CenterMode::Bounded);
  if (!verify_group_solution(g, sys, sol)) throw std::logic_error("solve_nilpotent_bounded produced a non-solution");
  return sol;
}

Assignment solve_nilpotent_divisible(const GroupSystem& sys, const NilpotentGroup& g) {
  check_constants(sys, g);
  if (!g.is_divisible()) throw Error(ErrorCode::UnsupportedGroup, g.name() + " is not divisible");
  const IntMatrix m = ExponentMatrix::of(sys).dense();
  const auto ns = is_nonsingular(m);
  if (!ns.ok) throw Error(ErrorCode::Singular, "rows are dependent over Q", ns.witness);
  Assignment sol = solve_by_class(sys, g, CenterMode::Divisible);
  if (!verify_group_solution(g, sys, sol)) throw std::logic_error("solve_nilpotent_divisible produced a non-solution");
  return sol;
}

Element nth_root_heisenberg_q(const HeisenbergGroup& h, const Element& g, std::int64_t n) {
  if (!h.over_rationals()) throw Error(ErrorCode::UnsupportedGroup, "root extraction needs Heisenberg(Q)");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "root index must be >= 1");
  if (!h.contains(g)) throw Error(ErrorCode::DescriptorMismatch, "not an element of " + h.name());
  // w^n = (n a', n b', n c' + C(n,2) a' b')
  const Rat nn(Int(static_cast<long>(n)));
  const Rat a = g.coords[0] / nn;
  const Rat b = g.coords[1] / nn;
  const Rat binom(Int(static_cast<long>(n)) * Int(static_cast<long>(n - 1)) / 2);
  const Rat c = (g.coords[2] - binom * a * b) / nn;
  Element w = h.element({a, b, c});
  if (h.power(w, n) != g) throw std::logic_error("root extraction closed form failed");
  return w;
}

// ---------------------------------------------------------------------------
// Brute force over tables

namespace {

struct FlatWord {
  // var index (>= 0) with exponent, or constant (var = -1) with element index
  struct Op {
    std::int64_t var;
    std::int64_t exp;
    std::uint32_t value;
  };
  std::vector<Op> ops;
};

struct FlatGroupSystem {
  std::vector<VarId> vars;
  std::vector<FlatWord> words;
};

FlatGroupSystem flatten(const GroupSystem& sys, const TableGroup& g, std::uint64_t limit) {
  FlatGroupSystem f;
  f.vars = sys.variables();
  Int space = 1;
  for (std::size_t i = 0; i < f.vars.size() && space <= limit; ++i) space *= static_cast<unsigned long>(g.order());
  if (space > limit) {
    throw Error(ErrorCode::SearchSpaceTooLarge,
                "|G|^#vars exceeds the limit of " + std::to_string(limit) + " assignments");
  }
  for (const auto& eq : sys.equations) {
    FlatWord w;
    for (const auto& lit : eq.word) {
      if (const auto* c = std::get_if<ConstLiteral>(&lit)) {
        w.ops.push_back({-1, 0, g.index_of(c->value)});
      } else {
        const auto& v = std::get<VarLiteral>(lit);
        const auto idx = std::lower_bound(f.vars.begin(), f.vars.end(), v.var) - f.vars.begin();
        w.ops.push_back({idx, v.exp, 0});
      }
    }
    f.words.push_back(std::move(w));
  }
  return f;
}

bool satisfies(const FlatGroupSystem& f, const TableGroup& g, const std::vector<std::uint32_t>& choice) {
  for (const auto& w : f.words) {
    std::uint32_t acc = g.identity();
    for (const auto& op : w.ops) {
      acc = g.multiply(acc, op.var < 0 ? op.value : g.power(choice[static_cast<std::size_t>(op.var)], op.exp));
    }
    if (acc != g.identity()) return false;
  }
  return true;
}

bool search_suffix(const FlatGroupSystem& f, const TableGroup& g, std::vector<std::uint32_t>& choice,
                   std::size_t from) {
  const std::size_t n = choice.size();
  const auto order = static_cast<std::uint32_t>(g.order());
  for (std::size_t j = from; j < n; ++j) choice[j] = 0;
  for (;;) {
    if (satisfies(f, g, choice)) return true;
    if (n == from) return false;
    std::size_t j = n;
    for (;;) {
      --j;
      if (++choice[j] < order) break;
      choice[j] = 0;
      if (j == from) return false;
    }
  }
}

Assignment to_assignment(const FlatGroupSystem& f, const std::vector<std::uint32_t>& choice) {
  Assignment a;
  for (std::size_t j = 0; j < f.vars.size(); ++j) a.emplace(f.vars[j], TableGroup::as_element(choice[j]));
  return a;
}

}  // namespace

std::optional<Assignment> brute_force_group_solve_serial(const GroupSystem& sys, const TableGroup& g,
                                                         std::uint64_t limit) {
  const FlatGroupSystem f = flatten(sys, g, limit);
  std::vector<std::uint32_t> choice(f.vars.size());
  if (!search_suffix(f, g, choice, 0)) return std::nullopt;
  return to_assignment(f, choice);
}

std::optional<Assignment> brute_force_group_solve(const GroupSystem& sys, const TableGroup& g,
                                                  std::uint64_t limit) {
  const FlatGroupSystem f = flatten(sys, g, limit);
  if (f.vars.empty()) {
    std::vector<std::uint32_t> none;
    if (!satisfies(f, g, none)) return std::nullopt;
    return to_assignment(f, none);
  }
  const auto lead_count = static_cast<std::int64_t>(g.order());
  std::atomic<std::int64_t> best{std::numeric_limits<std::int64_t>::max()};
  std::vector<std::vector<std::uint32_t>> hits(g.order());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t lead = 0; lead < lead_count; ++lead) {
    if (lead > best.load(std::memory_order_relaxed)) continue;
    std::vector<std::uint32_t> choice(f.vars.size());
    choice[0] = static_cast<std::uint32_t>(lead);
    if (!search_suffix(f, g, choice, 1)) continue;
    hits[static_cast<std::size_t>(lead)] = choice;
    std::int64_t cur = best.load();
    while (lead < cur && !best.compare_exchange_weak(cur, lead)) {
    }
  }
  const std::int64_t winner = best.load();
  if (winner == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  return to_assignment(f, hits[static_cast<std::size_t>(winner)]);
}

}  // namespace groupeq
