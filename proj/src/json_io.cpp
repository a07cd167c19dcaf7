#include "groupeq/json_io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace groupeq {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

[[noreturn]] void fail_at(std::size_t line, std::size_t column, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::string string_member(const json& j, const char* key, const std::string& where) {
  const json& v = member(j, key, where);
  if (!v.is_string()) fail(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

json int_list(const std::vector<Int>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(int_to_json(x));
  return a;
}

}  // namespace

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail_at(line, column, "malformed JSON");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

IntMatrix parse_matrix_text(const std::string& text) {
  std::vector<std::vector<Int>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::vector<Int> row;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::string tok = line.substr(start, i - start);
      try {
        row.push_back(parse_int(tok));
      } catch (const Error&) {
        fail_at(lineno, start + 1, "expected an integer, got \"" + tok + "\"");
      }
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail_at(lineno, 1, "row has " + std::to_string(row.size()) + " entries, expected " +
                             std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<unsigned long>()) : Int(j.get<long>());
  if (j.is_string()) return parse_int(j.get<std::string>());
  fail("expected an integer, got " + j.dump());
}

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(int_from_json(j));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  fail("expected a rational, got " + j.dump());
}

json group_to_json(const AbelianGroup& g) {
  json summands = json::array();
  for (const auto& s : g.summands()) {
    switch (s.kind) {
      case SummandKind::Cyclic:
        summands.push_back({{"kind", "cyclic"}, {"p", int_to_json(s.p)}, {"e", s.e}});
        break;
      case SummandKind::Prufer: summands.push_back({{"kind", "prufer"}, {"p", int_to_json(s.p)}}); break;
      case SummandKind::Rational: summands.push_back({{"kind", "q"}}); break;
      case SummandKind::Integer: summands.push_back({{"kind", "z"}}); break;
    }
  }
  return {{"summands", summands}};
}

AbelianGroup group_from_json(const json& j) {
  const json& list = member(j, "summands", "group");
  if (!list.is_array()) fail("group: \"summands\" must be an array");
  std::vector<Summand> out;
  for (const auto& s : list) {
    const std::string kind = string_member(s, "kind", "summand");
    if (kind == "cyclic") {
      const json& e = member(s, "e", "cyclic summand");
      if (!e.is_number_unsigned() || e.get<unsigned long>() == 0) fail("cyclic summand: \"e\" must be >= 1");
      out.push_back(Summand::cyclic(int_from_json(member(s, "p", "cyclic summand")), e.get<unsigned long>()));
    } else if (kind == "prufer") {
      out.push_back(Summand::prufer(int_from_json(member(s, "p", "prufer summand"))));
    } else if (kind == "q") {
      out.push_back(Summand::rational());
    } else if (kind == "z") {
      out.push_back(Summand::integer());
    } else {
      fail("unknown summand kind \"" + kind + "\"");
    }
  }
  return AbelianGroup(std::move(out));
}

json element_to_json(const Element& e) {
  json a = json::array();
  for (const auto& c : e.coords) a.push_back(to_string(c));
  return a;
}

std::vector<Rat> coords_from_json(const json& j) {
  if (!j.is_array()) fail("element must be an array, got " + j.dump());
  std::vector<Rat> out;
  for (const auto& c : j) out.push_back(rat_from_json(c));
  return out;
}

json assignment_to_json(const Assignment& a) {
  json o = json::object();
  for (const auto& [v, e] : a) o[v] = element_to_json(e);
  return o;
}

AnyGroup any_group_from_json(const json& j) {
  AnyGroup g;
  if (j.is_object() && j.contains("summands")) {
    g.abelian = group_from_json(j);
    return g;
  }
  const std::string kind = string_member(j, "kind", "group");
  if (kind == "heisenberg") {
    const json& ring = member(j, "ring", "heisenberg group");
    const std::string rk = string_member(ring, "kind", "ring");
    if (rk == "q") {
      g.nilpotent = HeisenbergGroup::rationals();
    } else if (rk == "mod") {
      const json& e = member(ring, "e", "ring");
      if (!e.is_number_unsigned() || e.get<unsigned long>() == 0) fail("ring: \"e\" must be >= 1");
      g.nilpotent = HeisenbergGroup::mod(int_from_json(member(ring, "p", "ring")), e.get<unsigned long>());
    } else {
      fail("unknown ring kind \"" + rk + "\"");
    }
  } else if (kind == "table") {
    const json& t = member(j, "table", "table group");
    std::vector<std::vector<std::uint32_t>> rows;
    try {
      rows = t.get<std::vector<std::vector<std::uint32_t>>>();
    } catch (const json::exception&) {
      fail("table group: \"table\" must be a matrix of element indices");
    }
    g.table.emplace(std::move(rows));
  } else {
    fail("unknown group kind \"" + kind + "\"");
  }
  return g;
}

namespace {

std::vector<VarId> vars_from_json(const json& j) {
  std::vector<VarId> vars;
  if (!j.contains("vars")) return vars;
  const json& v = j.at("vars");
  if (!v.is_array()) fail("system: \"vars\" must be an array");
  for (const auto& name : v) {
    if (!name.is_string()) fail("system: variable names must be strings");
    vars.push_back(name.get<std::string>());
  }
  return vars;
}

const json& equations_of(const json& j) {
  const json& eqs = member(j, "equations", "system");
  if (!eqs.is_array()) fail("system: \"equations\" must be an array");
  return eqs;
}

Row row_from_json(const json& coeffs) {
  if (!coeffs.is_object()) fail("equation: \"coeffs\" must be an object");
  Row r;
  for (const auto& [v, k] : coeffs.items()) add_to_row(r, v, int_from_json(k));
  return r;
}

}  // namespace

AbelianSystem abelian_system_from_json(const json& j, const std::optional<AbelianGroup>& group) {
  AbelianSystem sys;
  if (group) {
    sys.group = *group;
  } else if (j.contains("group")) {
    sys.group = group_from_json(j.at("group"));
  } else {
    fail("system: no group given");
  }
  sys.declared_vars = vars_from_json(j);
  for (const auto& eq : equations_of(j)) {
    Row r = row_from_json(member(eq, "coeffs", "equation"));
    std::vector<Rat> rhs = coords_from_json(member(eq, "rhs", "equation"));
    try {
      sys.add(std::move(r), sys.group.element(std::move(rhs)));
    } catch (const Error& e) {
      fail(std::string("equation rhs: ") + e.what());
    }
  }
  return sys;
}

json abelian_system_to_json(const AbelianSystem& sys) {
  json eqs = json::array();
  for (const auto& eq : sys.equations) {
    json coeffs = json::object();
    for (const auto& [v, k] : eq.coeffs) coeffs[v] = int_to_json(k);
    eqs.push_back({{"coeffs", coeffs}, {"rhs", element_to_json(eq.rhs)}});
  }
  return {{"group", group_to_json(sys.group)}, {"vars", sys.variables()}, {"equations", eqs}};
}

GroupSystem group_system_from_json(const json& j, const std::function<Element(std::vector<Rat>)>& canon) {
  GroupSystem sys;
  sys.declared_vars = vars_from_json(j);
  for (const auto& eq : equations_of(j)) {
    const json& word = member(eq, "word", "equation");
    if (!word.is_array()) fail("equation: \"word\" must be an array");
    GroupEquation ge;
    for (const auto& lit : word) {
      if (lit.is_object() && lit.contains("const")) {
        try {
          ge.c(canon(coords_from_json(lit.at("const"))));
        } catch (const Error& e) {
          if (e.code() == ErrorCode::ParseError) throw;
          fail(std::string("word constant: ") + e.what());
        }
      } else if (lit.is_object() && lit.contains("var")) {
        const std::string v = string_member(lit, "var", "word literal");
        std::int64_t e = 1;
        if (lit.contains("exp")) {
          if (!lit.at("exp").is_number_integer() || lit.at("exp").get<std::int64_t>() == 0) {
            fail("word literal: \"exp\" must be a nonzero integer");
          }
          e = lit.at("exp").get<std::int64_t>();
        }
        ge.x(v, e);
      } else {
        fail("word literal must have \"const\" or \"var\": " + lit.dump());
      }
    }
    sys.equations.push_back(std::move(ge));
  }
  return sys;
}

json group_system_to_json(const GroupSystem& sys) {
  json eqs = json::array();
  for (const auto& eq : sys.equations) {
    json word = json::array();
    for (const auto& lit : eq.word) {
      if (const auto* c = std::get_if<ConstLiteral>(&lit)) {
        word.push_back({{"const", element_to_json(c->value)}});
      } else {
        const auto& v = std::get<VarLiteral>(lit);
        word.push_back({{"var", v.var}, {"exp", v.exp}});
      }
    }
    eqs.push_back({{"word", word}});
  }
  return {{"vars", sys.variables()}, {"equations", eqs}};
}

ExponentMatrix exponent_matrix_from_json(const json& j) {
  ExponentMatrix m;
  std::set<VarId> vars;
  for (const auto& v : vars_from_json(j)) vars.insert(v);
  for (const auto& eq : equations_of(j)) {
    Row r;
    if (eq.is_object() && eq.contains("coeffs")) {
      r = row_from_json(eq.at("coeffs"));
    } else {
      const json& word = member(eq, "word", "equation");
      if (!word.is_array()) fail("equation: \"word\" must be an array");
      for (const auto& lit : word)
        if (lit.is_object() && lit.contains("var")) {
          add_to_row(r, string_member(lit, "var", "word literal"),
                     lit.contains("exp") ? int_from_json(lit.at("exp")) : Int(1));
        }
    }
    for (const auto& [v, k] : r) vars.insert(v);
    m.rows.push_back(std::move(r));
  }
  m.vars.assign(vars.begin(), vars.end());
  return m;
}

json report_to_json(const SingularityReport& r) {
  json o = json::object();
  o["nonsingular"] = r.nonsingular;
  if (!r.nonsingular) o["witness"] = int_list(r.witness);
  json pn = json::object();
  for (const auto& [p, ok] : r.p_nonsingular) {
    json entry = {{"p_nonsingular", ok}};
    if (const auto it = r.p_witness.find(p); it != r.p_witness.end()) entry["witness"] = int_list(it->second);
    pn[p.get_str()] = entry;
  }
  o["primes"] = pn;
  if (r.unimodular) o["unimodular"] = *r.unimodular;
  if (r.checked_depth) o["checked_depth"] = *r.checked_depth;
  return o;
}

std::string report_to_text(const SingularityReport& r) {
  std::ostringstream out;
  auto list = [](const std::vector<Int>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x.get_str();
    return s;
  };
  if (r.checked_depth) out << "checked depth: " << *r.checked_depth << "\n";
  out << "nonsingular: " << (r.nonsingular ? "true" : "false") << "\n";
  if (!r.nonsingular) out << "  witness: " << list(r.witness) << "\n";
  for (const auto& [p, ok] : r.p_nonsingular) {
    out << p.get_str() << "-nonsingular: " << (ok ? "true" : "false") << "\n";
    if (const auto it = r.p_witness.find(p); it != r.p_witness.end()) out << "  witness: " << list(it->second) << "\n";
  }
  if (r.unimodular) out << "unimodular: " << (*r.unimodular ? "true" : "false") << "\n";
  return out.str();
}

json growth_to_json(const GrowthReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json o = {{"depth", row.depth}, {"bound", int_to_json(row.bound)}, {"observed", int_to_json(row.observed)}};
    if (row.min_positive) o["min_positive"] = int_to_json(*row.min_positive);
    o["witness"] = assignment_to_json(row.witness);
    rows.push_back(std::move(o));
  }
  return {{"experiment", r.name}, {"metric", r.metric}, {"rows", rows}};
}

std::string growth_to_text(const GrowthReport& r) {
  std::ostringstream out;
  out << r.name << ": " << r.metric << "\n";
  out << "depth\tbound\tobserved";
  const bool extra = !r.rows.empty() && r.rows.front().min_positive.has_value();
  if (extra) out << "\tmin positive";
  out << "\n";
  for (const auto& row : r.rows) {
    out << row.depth << "\t" << row.bound.get_str() << "\t" << row.observed.get_str();
    if (extra && row.min_positive) out << "\t" << row.min_positive->get_str();
    out << "\n";
  }
  return out.str();
}

}  // namespace groupeq
