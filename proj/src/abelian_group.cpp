#include "groupeq/abelian_group.hpp"

#include <algorithm>
#include <sstream>

namespace groupeq {
namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool is_power_of(const Int& n, const Int& p) {
  Int rest = n;
  while (rest > 1 && mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t()) != 0) rest /= p;
  return rest == 1;
}

// k/p^m in lowest terms -> m
unsigned long prufer_depth(const Rat& v, const Int& p) {
  unsigned long m = 0;
  Int den = v.get_den();
  while (den > 1) {
    den /= p;
    ++m;
  }
  return m;
}

}  // namespace

Summand Summand::cyclic(const Int& p, unsigned long e) {
  require_prime(p);
  if (e == 0) throw Error(ErrorCode::InvalidArgument, "cyclic summand needs e >= 1");
  return {SummandKind::Cyclic, p, e};
}

Summand Summand::prufer(const Int& p) {
  require_prime(p);
  return {SummandKind::Prufer, p, 0};
}

Int Summand::modulus() const {
  if (kind != SummandKind::Cyclic) throw Error(ErrorCode::InvalidArgument, "modulus of non-cyclic summand");
  return pow(p, e);
}

std::string Summand::str() const {
  switch (kind) {
    case SummandKind::Cyclic:
      return e == 1 ? "Z/" + p.get_str() : "Z/" + p.get_str() + "^" + std::to_string(e);
    case SummandKind::Prufer: return "Z(" + p.get_str() + "^inf)";
    case SummandKind::Rational: return "Q";
    case SummandKind::Integer: return "Z";
  }
  return "?";
}

std::string to_string(const Element& a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (i) os << ", ";
    os << to_string(a.coords[i]);
  }
  os << ')';
  return os.str();
}

AbelianGroup::AbelianGroup(std::vector<Summand> summands) : summands_(std::move(summands)) {
  moduli_.reserve(summands_.size());
  for (const auto& s : summands_) {
    if (s.kind == SummandKind::Cyclic || s.kind == SummandKind::Prufer) require_prime(s.p);
    if (s.kind == SummandKind::Cyclic && s.e == 0) {
      throw Error(ErrorCode::InvalidArgument, "cyclic summand needs e >= 1");
    }
    moduli_.push_back(s.kind == SummandKind::Cyclic ? s.modulus() : Int(0));
  }
}

AbelianGroup AbelianGroup::cyclic_sum(const std::vector<PrimePower>& parts) {
  std::vector<Summand> s;
  s.reserve(parts.size());
  for (const auto& pp : parts) s.push_back(Summand::cyclic(pp.p, pp.e));
  return AbelianGroup(std::move(s));
}

bool AbelianGroup::is_finite() const {
  return std::all_of(summands_.begin(), summands_.end(),
                     [](const Summand& s) { return s.kind == SummandKind::Cyclic; });
}

bool AbelianGroup::is_periodic() const {
  return std::all_of(summands_.begin(), summands_.end(), [](const Summand& s) { return s.is_torsion(); });
}

bool AbelianGroup::is_divisible() const {
  return std::all_of(summands_.begin(), summands_.end(), [](const Summand& s) { return s.is_divisible(); });
}

bool AbelianGroup::is_p_group(const Int& p) const {
  return std::all_of(summands_.begin(), summands_.end(),
                     [&](const Summand& s) { return s.is_torsion() && s.p == p; });
}

std::optional<Int> AbelianGroup::order_of_group() const {
  if (!is_finite()) return std::nullopt;
  Int n = 1;
  for (const auto& m : moduli_) n *= m;
  return n;
}

Element AbelianGroup::zero() const { return Element{std::vector<Rat>(summands_.size(), Rat(0))}; }

Rat AbelianGroup::canonical_coord(std::size_t i, const Rat& v) const {
  const Summand& s = summands_[i];
  switch (s.kind) {
    case SummandKind::Cyclic:
      if (v.get_den() != 1) {
        throw Error(ErrorCode::DescriptorMismatch, "non-integer coordinate for " + s.str());
      }
      return Rat(mod(v.get_num(), moduli_[i]));
    case SummandKind::Prufer: {
      if (!is_power_of(v.get_den(), s.p)) {
        throw Error(ErrorCode::DescriptorMismatch,
                    "coordinate " + to_string(v) + " is not in " + s.str());
      }
      Rat r = v - Rat(floor_div(v.get_num(), v.get_den()));
      r.canonicalize();
      return r;
    }
    case SummandKind::Rational: return v;
    case SummandKind::Integer:
      if (v.get_den() != 1) throw Error(ErrorCode::DescriptorMismatch, "non-integer coordinate for Z");
      return v;
  }
  return v;
}

bool AbelianGroup::contains(const Element& a) const {
  if (a.coords.size() != summands_.size()) return false;
  try {
    for (std::size_t i = 0; i < summands_.size(); ++i) {
      if (canonical_coord(i, a.coords[i]) != a.coords[i]) return false;
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

void AbelianGroup::check(const Element& a) const {
  if (!contains(a)) {
    throw Error(ErrorCode::DescriptorMismatch, to_string(a) + " is not an element of " + str());
  }
}

Element AbelianGroup::element(std::vector<Rat> coords) const {
  if (coords.size() != summands_.size()) {
    throw Error(ErrorCode::DescriptorMismatch, "expected " + std::to_string(summands_.size()) +
                                                   " coordinates, got " + std::to_string(coords.size()));
  }
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = canonical_coord(i, coords[i]);
  return Element{std::move(coords)};
}

Element AbelianGroup::element_from_ints(const std::vector<Int>& coords) const {
  std::vector<Rat> r(coords.begin(), coords.end());
  return element(std::move(r));
}

Element AbelianGroup::generator(std::size_t i) const {
  Element g = zero();
  const Summand& s = summands_.at(i);
  g.coords[i] = s.kind == SummandKind::Prufer ? make_rat(1, s.p) : Rat(1);
  return g;
}

Element AbelianGroup::add(const Element& a, const Element& b) const {
  check(a);
  check(b);
  std::vector<Rat> c(summands_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords[i] + b.coords[i];
  return element(std::move(c));
}

Element AbelianGroup::neg(const Element& a) const {
  check(a);
  std::vector<Rat> c(summands_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coords[i];
  return element(std::move(c));
}

Element AbelianGroup::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

Element AbelianGroup::scale(const Int& k, const Element& a) const {
  check(a);
  std::vector<Rat> c(summands_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat(k) * a.coords[i];
  return element(std::move(c));
}

bool AbelianGroup::is_zero(const Element& a) const {
  check(a);
  return std::all_of(a.coords.begin(), a.coords.end(), [](const Rat& r) { return r == 0; });
}

ExtInt AbelianGroup::order(const Element& a) const {
  check(a);
  Int n = 1;
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    const Rat& v = a.coords[i];
    if (v == 0) continue;
    switch (summands_[i].kind) {
      case SummandKind::Cyclic: n = lcm(n, moduli_[i] / gcd(v.get_num(), moduli_[i])); break;
      case SummandKind::Prufer: n = lcm(n, v.get_den()); break;
      case SummandKind::Rational:
      case SummandKind::Integer: return ExtInt::infinite();
    }
  }
  return ExtInt::finite(n);
}

ExtInt AbelianGroup::height_p(const Element& a, const Int& p) const {
  check(a);
  require_prime(p);
  if (!is_p_group(p)) throw Error(ErrorCode::NotAPGroup, str() + " is not a " + p.get_str() + "-group");
  std::optional<Int> best;
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    const Rat& v = a.coords[i];
    if (v == 0 || summands_[i].kind == SummandKind::Prufer) continue;
    // in Z/p^e a nonzero residue r has height v_p(r) < e
    const Int h = val_p(v.get_num(), p).value();
    if (!best || h < *best) best = h;
  }
  return best ? ExtInt::finite(*best) : ExtInt::infinite();
}

AbelianGroup AbelianGroup::primary_part(const Int& p, std::vector<std::size_t>* positions) const {
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    if (summands_[i].is_torsion() && summands_[i].p == p) pos.push_back(i);
  }
  AbelianGroup g = restrict_to(pos);
  if (positions) *positions = std::move(pos);
  return g;
}

Element AbelianGroup::primary_component(const Element& a, const Int& p) const {
  check(a);
  if (!is_periodic()) throw Error(ErrorCode::NotPeriodic, str() + " is not periodic");
  std::vector<std::size_t> pos;
  primary_part(p, &pos);
  return project(a, pos);
}

AbelianGroup AbelianGroup::restrict_to(const std::vector<std::size_t>& positions) const {
  std::vector<Summand> s;
  s.reserve(positions.size());
  for (auto i : positions) s.push_back(summands_.at(i));
  return AbelianGroup(std::move(s));
}

Element AbelianGroup::project(const Element& a, const std::vector<std::size_t>& positions) const {
  check(a);
  Element out;
  out.coords.reserve(positions.size());
  for (auto i : positions) out.coords.push_back(a.coords.at(i));
  return out;
}

Element AbelianGroup::embed(const Element& part, const std::vector<std::size_t>& positions) const {
  if (part.coords.size() != positions.size()) {
    throw Error(ErrorCode::DescriptorMismatch, "embedding size mismatch");
  }
  Element out = zero();
  for (std::size_t k = 0; k < positions.size(); ++k) out.coords.at(positions[k]) = part.coords[k];
  check(out);
  return out;
}

ModPQuotient AbelianGroup::mod_p_quotient(const Int& p) const {
  require_prime(p);
  ModPQuotient q;
  q.p = p;
  q.source = *this;
  std::vector<Summand> parts;
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    const Summand& s = summands_[i];
    const bool contributes = (s.kind == SummandKind::Cyclic && s.p == p) || s.kind == SummandKind::Integer;
    if (contributes) {
      parts.push_back(Summand::cyclic(p, 1));
      q.positions.push_back(i);
    }
  }
  q.quotient = AbelianGroup(std::move(parts));
  return q;
}

Element ModPQuotient::project(const Element& a) const {
  Element x = source.project(a, positions);
  for (auto& c : x.coords) c = Rat(mod(c.get_num(), p));
  return x;
}

Element ModPQuotient::section(const Element& x) const {
  if (!quotient.contains(x)) throw Error(ErrorCode::DescriptorMismatch, "not an element of A/pA");
  return source.embed(x, positions);
}

Element AbelianGroup::divide_exact(const Int& n, const Element& a) const {
  check(a);
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "divide_exact needs n >= 1");
  if (!is_divisible()) throw Error(ErrorCode::NotDivisible, str() + " has a non-divisible summand");
  std::vector<Rat> c(summands_.size());
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    const Summand& s = summands_[i];
    if (s.kind == SummandKind::Rational) {
      c[i] = a.coords[i] / Rat(n);
      continue;
    }
    // k/p^m -> (u^{-1} mod p^{m+v}) * k / p^{m+v}, n = p^v * u
    const Rat& v = a.coords[i];
    const unsigned long m = prufer_depth(v, s.p);
    Int u = n;
    unsigned long val = 0;
    while (mpz_divisible_p(u.get_mpz_t(), s.p.get_mpz_t()) != 0) {
      u /= s.p;
      ++val;
    }
    const Int big = pow(s.p, m + val);
    const Int uinv = big == 1 ? Int(0) : inv_mod(u, big);
    c[i] = make_rat(uinv * v.get_num(), big);
  }
  return element(std::move(c));
}

GroupClassification AbelianGroup::classify() const {
  GroupClassification c;
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    (summands_[i].is_divisible() ? c.divisible_positions : c.reduced_positions).push_back(i);
  }
  c.divisible = restrict_to(c.divisible_positions);
  c.reduced = restrict_to(c.reduced_positions);
  Int period = 1;
  for (auto i : c.reduced_positions) {
    if (summands_[i].kind == SummandKind::Integer) {
      c.bounded_period = false;
      c.period = ExtInt::infinite();
      break;
    }
    period = lcm(period, moduli_[i]);
  }
  if (c.bounded_period) {
    c.period = ExtInt::finite(period);
    for (auto i : c.reduced_positions) {
      if (std::find(c.primes.begin(), c.primes.end(), summands_[i].p) == c.primes.end()) {
        c.primes.push_back(summands_[i].p);
      }
    }
    std::sort(c.primes.begin(), c.primes.end());
  }
  return c;
}

std::string AbelianGroup::str() const {
  if (summands_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    if (i) s += " + ";
    s += summands_[i].str();
  }
  return s;
}

}  // namespace groupeq
