#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "groupeq/abelian_group.hpp"
#include "groupeq/system.hpp"

namespace groupeq {

/// A nilpotent group presented by its operations, its center and its
/// quotient by the center. Elements are coordinate vectors (Element) in a
/// canonical form fixed by each implementation, so equality is ==.
class NilpotentGroup {
 public:
  virtual ~NilpotentGroup() = default;

  virtual std::string name() const = 0;
  virtual Element identity() const = 0;
  virtual Element multiply(const Element& a, const Element& b) const = 0;
  virtual Element invert(const Element& a) const = 0;
  virtual bool contains(const Element& a) const = 0;
  /// Canonicalizes raw coordinates into an element (throws DescriptorMismatch).
  virtual Element element(std::vector<Rat> coords) const = 0;

  virtual int nilpotency_class() const = 0;
  virtual ExtInt period_bound() const = 0;
  virtual bool is_divisible() const = 0;

  /// Z(G) as an abelian descriptor, with embed: Z(G) -> G and its partial
  /// inverse (nullopt for non-central elements).
  virtual const AbelianGroup& center() const = 0;
  virtual Element embed_center(const Element& z) const = 0;
  virtual std::optional<Element> recognize_center(const Element& g) const = 0;

  virtual std::shared_ptr<const NilpotentGroup> quotient_by_center() const = 0;
  virtual Element project(const Element& g) const = 0;
  /// Coset representative; project(section(q)) == q.
  virtual Element section(const Element& q) const = 0;

  Element power(const Element& g, std::int64_t n) const;
};

using GroupHandle = std::shared_ptr<const NilpotentGroup>;

/// Abelian group viewed as a nilpotent group of class 1 (class 0 if trivial).
class AbelianHandle final : public NilpotentGroup {
 public:
  explicit AbelianHandle(AbelianGroup group) : group_(std::move(group)) {}

  std::string name() const override { return group_.str(); }
  Element identity() const override { return group_.zero(); }
  Element multiply(const Element& a, const Element& b) const override { return group_.add(a, b); }
  Element invert(const Element& a) const override { return group_.neg(a); }
  bool contains(const Element& a) const override { return group_.contains(a); }
  Element element(std::vector<Rat> coords) const override { return group_.element(std::move(coords)); }

  int nilpotency_class() const override { return group_.empty() ? 0 : 1; }
  ExtInt period_bound() const override;
  bool is_divisible() const override { return group_.is_divisible(); }

  const AbelianGroup& center() const override { return group_; }
  Element embed_center(const Element& z) const override;
  std::optional<Element> recognize_center(const Element& g) const override;

  GroupHandle quotient_by_center() const override;
  Element project(const Element& g) const override;
  Element section(const Element& q) const override;

  const AbelianGroup& group() const { return group_; }

 private:
  AbelianGroup group_;
};

/// Heisenberg group of triples over R = Z/p^e or Q with
///   (a, b, c) * (a', b', c') = (a + a', b + b', c + c' + a b').
/// Center {(0, 0, c)} = R, quotient R + R.
class HeisenbergGroup final : public NilpotentGroup {
 public:
  static std::shared_ptr<const HeisenbergGroup> mod(const Int& p, unsigned long e);
  static std::shared_ptr<const HeisenbergGroup> rationals();

  std::string name() const override;
  Element identity() const override;
  Element multiply(const Element& a, const Element& b) const override;
  Element invert(const Element& a) const override;
  bool contains(const Element& a) const override;
  Element element(std::vector<Rat> coords) const override;

  int nilpotency_class() const override { return 2; }
  ExtInt period_bound() const override;
  bool is_divisible() const override { return over_q_; }

  const AbelianGroup& center() const override { return center_; }
  Element embed_center(const Element& z) const override;
  std::optional<Element> recognize_center(const Element& g) const override;

  GroupHandle quotient_by_center() const override { return quotient_; }
  Element project(const Element& g) const override;
  Element section(const Element& q) const override;

  bool over_rationals() const { return over_q_; }
  const AbelianGroup& ring() const { return center_; }
  /// Elements in lexicographic coordinate order (finite rings only, order <= 512).
  std::vector<Element> elements() const;

 private:
  HeisenbergGroup(AbelianGroup ring, bool over_q);

  AbelianGroup center_;  // additive group of the ring
  bool over_q_;
  GroupHandle quotient_;
};

/// Finite group given by a multiplication table; an independent oracle for
/// small nilpotent groups. Elements are indices 0..n-1.
class TableGroup {
 public:
  explicit TableGroup(std::vector<std::vector<std::uint32_t>> table);

  /// Table of a finite handle over the listed elements (which must be closed
  /// under multiplication). Element i of the list becomes index i.
  static TableGroup from_handle(const NilpotentGroup& g, const std::vector<Element>& elements);

  std::size_t order() const { return table_.size(); }
  std::uint32_t identity() const { return identity_; }
  std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const { return table_[a][b]; }
  std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }
  std::uint32_t power(std::uint32_t a, std::int64_t n) const;
  const std::vector<std::vector<std::uint32_t>>& table() const { return table_; }

  /// Brute-force intersection of centralizers.
  std::vector<std::uint32_t> center() const;

  static Element as_element(std::uint32_t index) { return Element{{Rat(static_cast<unsigned long>(index))}}; }
  std::uint32_t index_of(const Element& e) const;

 private:
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> inverse_;
  std::uint32_t identity_ = 0;
};

Element commutator(const NilpotentGroup& g, const Element& a, const Element& b);
std::uint32_t commutator(const TableGroup& g, std::uint32_t a, std::uint32_t b);

/// Left-to-right product with variables substituted; throws MissingVariable.
Element evaluate_word(const NilpotentGroup& g, const GroupEquation& eq, const Assignment& assignment);
std::uint32_t evaluate_word(const TableGroup& g, const GroupEquation& eq, const Assignment& assignment);

bool verify_group_solution(const NilpotentGroup& g, const GroupSystem& sys, const Assignment& assignment);
bool verify_group_solution(const TableGroup& g, const GroupSystem& sys, const Assignment& assignment);

/// Center of a handle: its declared center descriptor. For tables, see TableGroup::center.
inline const AbelianGroup& center_of(const NilpotentGroup& g) { return g.center(); }
inline std::vector<std::uint32_t> center_of(const TableGroup& g) { return g.center(); }

/// Unimodular system over a nilpotent group of bounded period, solved by
/// recursion on the class: solve over G/Z(G), lift, and correct by a
/// solution of the induced abelian system in Z(G).
Assignment solve_nilpotent_bounded(const GroupSystem& sys, const NilpotentGroup& g);

/// Nonsingular system over a divisible nilpotent group, same recursion with
/// the center step done by the divisible abelian solver.
Assignment solve_nilpotent_divisible(const GroupSystem& sys, const NilpotentGroup& g);

/// w with w^n = g in the Heisenberg group over Q.
Element nth_root_heisenberg_q(const HeisenbergGroup& h, const Element& g, std::int64_t n);

/// Exhaustive search over a table group in deterministic order (variables
/// sorted, values by index); lowest assignment wins. nullopt if unsolvable.
std::optional<Assignment> brute_force_group_solve(const GroupSystem& sys, const TableGroup& g,
                                                  std::uint64_t limit = 10'000'000);
std::optional<Assignment> brute_force_group_solve_serial(const GroupSystem& sys, const TableGroup& g,
                                                         std::uint64_t limit = 10'000'000);

}  // namespace groupeq
