#pragma once

#include <optional>
#include <string>

#include "groupeq/counterexamples.hpp"
#include "groupeq/nilpotent.hpp"
#include "groupeq/system.hpp"
#include "json.hpp"

namespace groupeq {

using json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become ParseError with line and column.
json parse_json_text(const std::string& text);
std::string read_file(const std::string& path);

/// Space-separated integer rows, one per line; blank lines and '#' comments
/// are skipped. ParseError reports line and column of the offending token.
IntMatrix parse_matrix_text(const std::string& text);

/// Integers as JSON numbers when they fit in 64 bits, decimal strings otherwise.
json int_to_json(const Int& v);
Int int_from_json(const json& j);
Rat rat_from_json(const json& j);

json group_to_json(const AbelianGroup& g);
AbelianGroup group_from_json(const json& j);

json element_to_json(const Element& e);
/// Raw coordinates; canonicalize with the owning group's element().
std::vector<Rat> coords_from_json(const json& j);

json assignment_to_json(const Assignment& a);

/// A group file: an abelian descriptor ({"summands": ...}), a Heisenberg
/// group or a multiplication table.
struct AnyGroup {
  std::optional<AbelianGroup> abelian;
  GroupHandle nilpotent;
  std::optional<TableGroup> table;
};
AnyGroup any_group_from_json(const json& j);

/// {"group"?, "vars"?, "equations": [{"coeffs": {...}, "rhs": [...]}]}.
/// The group argument wins over the file's own "group" entry.
AbelianSystem abelian_system_from_json(const json& j, const std::optional<AbelianGroup>& group);
json abelian_system_to_json(const AbelianSystem& sys);

/// {"vars"?, "equations": [{"word": [{"const": [...]}, {"var": "x", "exp": -2}]}]};
/// constants are canonicalized by `canon` (identity for table groups).
GroupSystem group_system_from_json(const json& j, const std::function<Element(std::vector<Rat>)>& canon);
json group_system_to_json(const GroupSystem& sys);

/// Exponent matrix of either system kind, read from a system file.
ExponentMatrix exponent_matrix_from_json(const json& j);

json report_to_json(const SingularityReport& r);
std::string report_to_text(const SingularityReport& r);

json growth_to_json(const GrowthReport& r);
std::string growth_to_text(const GrowthReport& r);

}  // namespace groupeq
