#include "doctest.h"
#include "dvint/errors.hpp"
#include "dvint/parser.hpp"
#include "generators.hpp"
#include "support.hpp"

using namespace dvint;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

const RegistryPtr kReg =
    make_registry({{"t", VarKind::Time}, {"y0", VarKind::Fiber}, {"y1", VarKind::Fiber}, {"a", VarKind::Aux}});

}  // namespace

TEST_SUITE("parser") {
  TEST_CASE("expressions") {
    auto e = parse_expression("6*y0^2 + t", kReg);
    CHECK(e.is_polynomial());
    CHECK(to_string(e) == "6*y0^2 + t");
    auto h = parse_expression("(y1 - 2*y0)/a", kReg);
    CHECK(h.denominator() == Polynomial::variable(kReg, 3));
    CHECK(to_string(h) == "(-2*y0 + y1)/a");
    CHECK(parse_expression("-(1/2)*y0^(3)", kReg) == parse_expression("-y0^3/2", kReg));
    CHECK(parse_expression("2^3*y0 - 8*y0", kReg).is_zero());
  }

  TEST_CASE("syntax errors carry offsets") {
    try {
      parse_expression("y0 +", kReg);
      FAIL("no error");
    } catch (const SyntaxError& e) {
      CHECK(e.offset() == 4);
    }
    CHECK_THROWS_AS(parse_expression("y0 * (t", kReg), SyntaxError);
    CHECK_THROWS_AS(parse_expression("1.5*y0", kReg), SyntaxError);
    CHECK_THROWS_AS(parse_expression("y0^-1", kReg), SyntaxError);
    CHECK_THROWS_AS(parse_expression("y0/(t - t)", kReg), Error);
    CHECK(code_of([] { parse_expression("z + 1", kReg); }) == ErrorCode::UnknownVariable);
  }

  TEST_CASE("Painleve I file") {
    auto spec = parse_problem_file(dvtest::read_problem("painleve1.dv"));
    CHECK(spec.mode == ProblemMode::ExplicitOde);
    CHECK(spec.ode_order == 2);
    const auto& reg = *spec.registry;
    REQUIRE(spec.state_vars().size() == 2);
    CHECK(reg[spec.state_vars()[0]].name == "y1");
    CHECK(reg[spec.state_vars()[1]].name == "y2");
    CHECK(spec.rhs_or_F == parse_expression("6*y1^2 + t", spec.registry));
  }

  TEST_CASE("elliptic file") {
    auto spec = parse_problem_file(dvtest::read_problem("elliptic.dv"));
    CHECK(spec.mode == ProblemMode::ImplicitOde);
    CHECK(spec.ode_order == 2);
    CHECK(spec.rhs_or_F == parse_expression("y1^2 - 4*y0^3 - 4*y0 - 1", spec.registry));
  }

  TEST_CASE("derivative notation") {
    auto spec = parse_problem_file("ode: y''' = y^(2) + y'*t\n");
    CHECK(spec.ode_order == 3);
    CHECK(spec.rhs_or_F == parse_expression("y'' + y'*t", spec.registry));
  }

  TEST_CASE("problem-file errors") {
    CHECK(code_of([] { parse_problem_file("vars: y, y\nsection: y = 1\n"); }) == ErrorCode::DuplicateVariable);
    CHECK(code_of([] { parse_problem_file("vars: x, y\nsection: x = y\n"); }) == ErrorCode::MissingSection);
    CHECK(code_of([] { parse_problem_file("ode: y' = z\n"); }) == ErrorCode::UnknownVariable);
    CHECK(code_of([] { parse_problem_file("bogus: 1\n"); }) == ErrorCode::Syntax);
    CHECK(code_of([] { parse_problem_file("# nothing\n"); }) == ErrorCode::Syntax);
    try {
      parse_problem_file("ode: y' = y +\n");
      FAIL("no error");
    } catch (const SyntaxError& e) {
      auto [line, col] = line_column("ode: y' = y +\n", e.offset());
      CHECK(line == 1);
      CHECK(col == 14);
    }
  }

  TEST_CASE("dvariety mode with parameters and auxiliary variables") {
    auto spec = parse_problem_file(
        "# two-dimensional example\n"
        "vars: x, y\n"
        "params: k\n"
        "aux: a' = k*a\n"
        "ideal: x^2 + y^2 - 1\n"
        "section: x = -y\n"
        "section: y' = x\n"
        "irreducible: true\n");
    CHECK(spec.mode == ProblemMode::DVariety);
    CHECK(spec.ideal_gens.size() == 1);
    CHECK(spec.section.size() == 3);
    CHECK((*spec.registry)[spec.registry->index_of("k")].kind == VarKind::Param);
  }

  TEST_CASE("round trip of the shipped problems") {
    for (const char* name : {"painleve1.dv", "elliptic.dv", "cubic.dv", "linear.dv"}) {
      CAPTURE(name);
      auto spec = parse_problem_file(dvtest::read_problem(name));
      auto again = parse_problem_file(emit_problem(spec));
      CHECK(again == spec);
      CHECK(emit_problem(again) == emit_problem(spec));
    }
  }

  TEST_CASE("round trip of generated specs") {
    dvtest::Gen gen(7);
    for (int k = 0; k < 60; ++k) {
      std::string text;
      const int mode = k % 3;
      if (mode == 0) {
        const int order = gen.uniform(1, 3);
        std::vector<std::string> names{"t", "u"};
        for (int i = 1; i < order; ++i) names.push_back("u" + std::string(static_cast<std::size_t>(i), '\''));
        text =
            "ode: u" + std::string(static_cast<std::size_t>(order), '\'') + " = " + gen.expression(names, 3, 3) + "\n";
        if (gen.uniform(0, 1)) text += "aux: w' = " + gen.expression({"t", "w"}, 2, 2) + "\n";
      } else if (mode == 1) {
        text = "state: p, q\nimplicit: q^2 - " + gen.expression({"t", "p"}, 3, 3) + "\n";
      } else {
        text = "vars: x, y\nparams: m\nideal: " + gen.expression({"x", "y", "m"}, 2, 3) +
               "\nsection: x = " + gen.expression({"x", "y", "t"}, 2, 2) +
               "\nsection: y = " + gen.expression({"x", "y"}, 2, 2) + "\nintegrals: x + y; x*y\n";
      }
      CAPTURE(text);
      ProblemSpec spec;
      try {
        spec = parse_problem_file(text);
      } catch (const Error& e) {
        FAIL(e.what());
      }
      CHECK(parse_problem_file(emit_problem(spec)) == spec);
    }
  }

  TEST_CASE("parse after print is the identity on canonical forms") {
    dvtest::Gen gen(11);
    std::vector<std::size_t> vars{0, 1, 2, 3};
    for (int k = 0; k < 100; ++k) {
      auto f = gen.rational(kReg, vars, 4);
      CHECK(parse_expression(to_string(f), kReg) == f);
    }
  }
}
