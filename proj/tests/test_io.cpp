#include <doctest.h>

#include "multdefl/io.hpp"
#include "multdefl/mult_structure.hpp"
#include "multdefl/suite.hpp"

using namespace multdefl;

TEST_CASE("parse a system file") {
  const auto sf = parse_system_text(
      "# comment\n"
      "vars: x1 x2\n"
      "f: x1 + x2^2   # trailing comment\n"
      "f: x1**2 + 2x2^2/3\n"
      "root: 0, 1/2\n"
      "basis: 0 0; 0 1\n"
      "tol: 1e-9\n");
  REQUIRE(sf.exact());
  CHECK(sf.names == std::vector<std::string>{"x1", "x2"});
  const auto& f = std::get<0>(sf.system);
  CHECK(f[1] == parse_rational_poly("x1^2 + (2/3)*x2^2", sf.names));
  CHECK(sf.root[1] == Complex(0.5));
  REQUIRE(sf.basis);
  CHECK(sf.basis->size() == 2);
  CHECK(*sf.tol == 1e-9);
}

TEST_CASE("decimal literals switch to the floating domain") {
  const auto sf = parse_system_text("vars: x\nf: x^2 - 2.25\nroot: 1.5\n");
  CHECK_FALSE(sf.exact());
  CHECK(std::get<1>(sf.system)[0].constant_term() == Complex(-2.25));
}

TEST_CASE("complex literals") {
  CHECK(parse_complex_literal("2") == Complex(2));
  CHECK(parse_complex_literal("-1.5i") == Complex(0, -1.5));
  CHECK(parse_complex_literal("1-2i") == Complex(1, -2));
  CHECK(parse_complex_literal("3/4") == Complex(0.75));
  CHECK(parse_complex_literal("i") == Complex(0, 1));
  CHECK_THROWS_AS(parse_complex_literal("1+"), InvalidArgument);
  CHECK_THROWS_AS(parse_complex_literal("abc"), InvalidArgument);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_system_text("vars: x y\nf: x + z\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 0);
  }
  CHECK_THROWS_AS(parse_system_text("vars: x\n"), ParseError);
  CHECK_THROWS_AS(parse_system_text("f: x\n"), ParseError);
  CHECK_THROWS_AS(parse_system_text("vars: x\nf: (x + 1\n"), ParseError);
  CHECK_THROWS_AS(parse_system_text("vars: x y\nf: x\nroot: 1\n"), ParseError);
  CHECK_THROWS_AS(parse_system_text("vars: x\nf: x\nfoo: 1\n"), ParseError);
}

TEST_CASE("exponent lists") {
  const auto e = parse_exponent_list("0 0 ; 1 0;0 1", 2);
  CHECK(e == std::vector<ExponentVector>{ExponentVector{0, 0}, ExponentVector{1, 0}, ExponentVector{0, 1}});
  CHECK_THROWS_AS(parse_exponent_list("0 0 0", 2), InvalidArgument);
  CHECK_THROWS_AS(parse_system_text("vars: x y\nf: x\nbasis: 0 0 0\n"), ParseError);
}

TEST_CASE("JSON round trip is exact") {
  const auto f = gen_family(3);
  DeflationOptions o;
  o.reduce = true;
  const auto sys = build_deflated_system(f, exponent_sets(family_basis(3), ExponentOrder::AsGiven), o);
  const auto j = system_to_json(sys.system(), sys.names);
  CHECK(j["format"] == 1);
  const auto back = system_from_json(nlohmann::json::parse(j.dump()));
  REQUIRE(back.exact());
  CHECK(std::get<0>(back.system) == sys.system());
  CHECK(back.names == sys.names);

  PolySystem<Complex> c{parse_complex_poly("0.1*x + 3.3e-7*y^2", {"x", "y"})};
  const auto jc = system_to_json(c, {"x", "y"});
  const auto cb = system_from_json(nlohmann::json::parse(jc.dump()));
  CHECK(std::get<1>(cb.system) == c);
}

TEST_CASE("text output re-parses") {
  const auto f = gen_family(4);
  const auto names = default_names(4);
  const std::string text = system_to_text(f, names);
  std::string file = "vars: x1 x2 x3 x4\n";
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    file += "f: " + text.substr(pos, nl - pos) + "\n";
    pos = nl + 1;
  }
  CHECK(std::get<0>(parse_system_text(file).system) == f);
}
