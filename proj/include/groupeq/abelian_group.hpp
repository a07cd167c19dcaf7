#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "groupeq/ring.hpp"

namespace groupeq {

enum class SummandKind { Cyclic, Prufer, Rational, Integer };

/// One direct summand: Z/p^e, the Prüfer group Z(p^inf), Q or Z.
struct Summand {
  SummandKind kind = SummandKind::Integer;
  Int p = 0;             // Cyclic, Prufer
  unsigned long e = 0;   // Cyclic

  static Summand cyclic(const Int& p, unsigned long e);
  static Summand prufer(const Int& p);
  static Summand rational() { return {SummandKind::Rational, 0, 0}; }
  static Summand integer() { return {SummandKind::Integer, 0, 0}; }

  bool is_divisible() const { return kind == SummandKind::Prufer || kind == SummandKind::Rational; }
  bool is_torsion() const { return kind == SummandKind::Cyclic || kind == SummandKind::Prufer; }
  Int modulus() const;  // p^e for Cyclic
  std::string str() const;

  friend bool operator==(const Summand&, const Summand&) = default;
};

/// Coordinates of an element, one per summand. Canonical form:
///   Cyclic  -> integer residue in [0, p^e)
///   Prufer  -> rational in [0, 1) whose denominator is a power of p
///   Q       -> any rational
///   Z       -> any integer
struct Element {
  std::vector<Rat> coords;

  friend bool operator==(const Element&, const Element&) = default;
};

std::string to_string(const Element& a);

struct GroupClassification;
struct ModPQuotient;

/// An immutable finite direct sum of summands. Positions are part of the
/// identity: two descriptors with the same summands in a different order
/// are different groups as far as coordinates are concerned.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<Summand> summands);

  /// Z/m_1 + ... + Z/m_k for prime powers m_i.
  static AbelianGroup cyclic_sum(const std::vector<PrimePower>& parts);

  const std::vector<Summand>& summands() const { return summands_; }
  std::size_t rank() const { return summands_.size(); }
  bool empty() const { return summands_.empty(); }

  bool is_finite() const;
  bool is_periodic() const;
  bool is_divisible() const;
  bool is_p_group(const Int& p) const;
  /// Number of elements when finite, otherwise nullopt.
  std::optional<Int> order_of_group() const;

  Element zero() const;
  bool contains(const Element& a) const;
  /// Canonicalizes raw coordinates (reduces residues, takes Prüfer values mod 1).
  Element element(std::vector<Rat> coords) const;
  Element element_from_ints(const std::vector<Int>& coords) const;
  /// i-th generator: 1 in a cyclic/Z/Q coordinate, 1/p in a Prüfer coordinate.
  Element generator(std::size_t i) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element scale(const Int& k, const Element& a) const;
  bool is_zero(const Element& a) const;

  ExtInt order(const Element& a) const;
  ExtInt height_p(const Element& a, const Int& p) const;

  /// Sub-descriptor of all summands that are p-groups (Cyclic(p,.) or Prufer(p)),
  /// together with their positions in this descriptor.
  AbelianGroup primary_part(const Int& p, std::vector<std::size_t>* positions = nullptr) const;
  Element primary_component(const Element& a, const Int& p) const;

  /// Sub-descriptor on the listed positions; projection and embedding helpers.
  AbelianGroup restrict_to(const std::vector<std::size_t>& positions) const;
  Element project(const Element& a, const std::vector<std::size_t>& positions) const;
  Element embed(const Element& part, const std::vector<std::size_t>& positions) const;

  ModPQuotient mod_p_quotient(const Int& p) const;
  Element divide_exact(const Int& n, const Element& a) const;
  GroupClassification classify() const;

  std::string str() const;
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  void check(const Element& a) const;
  Rat canonical_coord(std::size_t i, const Rat& v) const;

  std::vector<Summand> summands_;
  std::vector<Int> moduli_;  // p^e for cyclic summands, 0 otherwise
};

struct GroupClassification {
  AbelianGroup divisible;
  AbelianGroup reduced;
  std::vector<std::size_t> divisible_positions;
  std::vector<std::size_t> reduced_positions;
  /// True when every reduced summand is cyclic (no Z). Vacuously true with
  /// period 1 when the reduced part is empty.
  bool bounded_period = true;
  ExtInt period = ExtInt::finite(1);
  std::vector<Int> primes;  // prime divisors of the reduced period
};

/// A/pA as a sum of copies of Z/p, with the projection A -> A/pA and a
/// section choosing residues in [0, p) as preimages.
struct ModPQuotient {
  Int p;
  AbelianGroup source;
  AbelianGroup quotient;
  std::vector<std::size_t> positions;  // source summand behind each quotient coordinate

  Element project(const Element& a) const;
  Element section(const Element& x) const;
};

}  // namespace groupeq
