#include "doctest.h"
#include "groupeq/abelian_solver.hpp"
#include "groupeq/json_io.hpp"

using namespace groupeq;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("json_io") {

TEST_CASE("group descriptors round-trip") {
  const auto j = parse_json_text(
      R"({"summands":[{"kind":"cyclic","p":2,"e":3},{"kind":"prufer","p":5},{"kind":"q"},{"kind":"z"}]})");
  const AbelianGroup g = group_from_json(j);
  CHECK(g == AbelianGroup({Summand::cyclic(2, 3), Summand::prufer(5), Summand::rational(), Summand::integer()}));
  CHECK(group_from_json(group_to_json(g)) == g);
  CHECK(code_of([] { group_from_json(parse_json_text(R"({"summands":[{"kind":"cyclic","p":4,"e":1}]})")); }) ==
        ErrorCode::NotAPrime);
  CHECK(code_of([] { group_from_json(parse_json_text(R"({"summands":[{"kind":"torus"}]})")); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("elements") {
  const AbelianGroup g({Summand::cyclic(2, 3), Summand::prufer(5), Summand::rational(), Summand::integer()});
  const Element a = g.element({Rat(5), make_rat(2, 25), make_rat(-7, 3), Rat(-4)});
  CHECK(element_to_json(a).dump() == R"(["5","2/25","-7/3","-4"])");
  CHECK(g.element(coords_from_json(element_to_json(a))) == a);
  CHECK(coords_from_json(parse_json_text("[3, \"1/2\"]")) == std::vector<Rat>{Rat(3), make_rat(1, 2)});
}

TEST_CASE("abelian systems round-trip") {
  const auto j = parse_json_text(R"({
    "group": {"summands": [{"kind": "cyclic", "p": 2, "e": 3}]},
    "vars": ["x", "y1"],
    "equations": [{"coeffs": {"x": 1, "y1": 2}, "rhs": ["3"]}, {"coeffs": {"y1": 1}, "rhs": [1]}]
  })");
  const AbelianSystem s = abelian_system_from_json(j, std::nullopt);
  CHECK(s.equations.size() == 2);
  CHECK(s.variables() == std::vector<VarId>{"x", "y1"});
  const AbelianSystem back = abelian_system_from_json(abelian_system_to_json(s), std::nullopt);
  CHECK(back.group == s.group);
  REQUIRE(back.equations.size() == 2);
  CHECK(back.equations[0].coeffs == s.equations[0].coeffs);
  CHECK(back.equations[1].rhs == s.equations[1].rhs);
  CHECK(verify_solution(s, solve_auto(s)));
  CHECK(code_of([] { abelian_system_from_json(parse_json_text(R"({"equations":[]})"), std::nullopt); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("word systems and nilpotent group files") {
  const auto g = any_group_from_json(parse_json_text(R"({"kind":"heisenberg","ring":{"kind":"mod","p":3,"e":2}})"));
  REQUIRE(g.nilpotent);
  CHECK(g.nilpotent->name() == "Heisenberg(Z/3^2)");
  CHECK(any_group_from_json(parse_json_text(R"({"kind":"heisenberg","ring":{"kind":"q"}})")).nilpotent->is_divisible());
  const auto t = any_group_from_json(parse_json_text(R"({"kind":"table","table":[[0,1],[1,0]]})"));
  REQUIRE(t.table);
  CHECK(t.table->order() == 2);
  CHECK(any_group_from_json(parse_json_text(R"({"summands":[]})")).abelian.has_value());

  const auto j = parse_json_text(R"({"equations":[{"word":[{"const":["1","2","0"]},{"var":"x","exp":-2},{"var":"y"}]}]})");
  const NilpotentGroup& h = *g.nilpotent;
  const GroupSystem s = group_system_from_json(j, [&](std::vector<Rat> c) { return h.element(std::move(c)); });
  REQUIRE(s.equations.size() == 1);
  CHECK(exponent_row(s.equations[0]) == Row{{"x", Int(-2)}, {"y", Int(1)}});
  const GroupSystem back =
      group_system_from_json(group_system_to_json(s), [&](std::vector<Rat> c) { return h.element(std::move(c)); });
  CHECK(group_system_to_json(back) == group_system_to_json(s));
  const auto em = exponent_matrix_from_json(j);
  CHECK(em.dense() == IntMatrix{{-2, 1}});
  CHECK(code_of([&] {
          group_system_from_json(parse_json_text(R"({"equations":[{"word":[{"var":"x","exp":0}]}]})"),
                                 [&](std::vector<Rat> c) { return h.element(std::move(c)); });
        }) == ErrorCode::ParseError);
}

TEST_CASE("matrix text") {
  CHECK(parse_matrix_text("1 -8\n0 1\n") == IntMatrix{{1, -8}, {0, 1}});
  CHECK(parse_matrix_text("# comment\n\n  2  \n") == IntMatrix{{2}});
  try {
    parse_matrix_text("1 2\n3 x4\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 2, column 3") != std::string::npos);
  }
  CHECK(code_of([] { parse_matrix_text("1 2\n3\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("malformed JSON reports a position") {
  try {
    parse_json_text("{\n  \"a\": [1, 2,\n}");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("reports") {
  const auto rep = classify(IntMatrix{{2}}, {2});
  const json j = report_to_json(rep);
  CHECK(j["nonsingular"] == true);
  CHECK(j["primes"]["2"]["p_nonsingular"] == false);
  CHECK(j["unimodular"] == false);
  CHECK(report_to_text(rep).find("2-nonsingular: false") != std::string::npos);
  CHECK(int_from_json(int_to_json(pow(Int(2), 100))) == pow(Int(2), 100));
  CHECK(int_to_json(Int(-5)) == -5);
}

}
