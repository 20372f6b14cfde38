#include "doctest.h"
#include "dvint/errors.hpp"
#include "support.hpp"

using namespace dvint;
using dvtest::load;
using dvtest::rf;

namespace {

RationalFunction section_of(const ProductSystem& sys, const std::string& name) {
  return sys.system.variety.section[*sys.registry()->find(name)];
}

ProductSystem elliptic() { return load("elliptic.dv"); }

// The elliptic variety with s = (y0, 6*y0^2 + 2), which is not tangent.
DVariety corrupted_elliptic() {
  auto sys = elliptic();
  const auto& v = sys.system.variety;
  auto section = v.section;
  section[*v.registry->find("y0")] = rf(sys, "y0");
  return make_dvariety(v.registry, v.ideal.generators, section, {}, true);
}

}  // namespace

TEST_SUITE("dvariety") {
  TEST_CASE("explicit ODEs") {
    auto p1 = load("painleve1.dv");
    CHECK(p1.v_vars.size() == 2);
    CHECK(p1.w_vars.empty());
    CHECK(p1.ideal().generators.empty());
    CHECK(section_of(p1, "y1") == rf(p1, "y2"));
    CHECK(section_of(p1, "y2") == rf(p1, "6*y1^2 + t"));
    CHECK(section_of(p1, "t") == rf(p1, "1"));

    auto cubic = load("cubic.dv");
    CHECK(cubic.v_vars.size() == 1);
    CHECK(section_of(cubic, "y") == rf(cubic, "-y^3/2"));

    auto lin = dvtest::compile_text("ode: y'' = 4*y' - 4*y\n");
    CHECK(section_of(lin, "y") == rf(lin, "y'"));
    CHECK(section_of(lin, "y'") == rf(lin, "4*y' - 4*y"));
  }

  TEST_CASE("elliptic implicit ODE") {
    auto sys = elliptic();
    REQUIRE(sys.ideal().generators.size() == 1);
    // Generators are stored monic, so compare up to a scalar.
    CHECK((RationalFunction(sys.ideal().generators[0]) / rf(sys, "y1^2 - 4*y0^3 - 4*y0 - 1")).is_constant());
    CHECK(section_of(sys, "y0") == rf(sys, "y1"));
    CHECK(section_of(sys, "y1") == rf(sys, "6*y0^2 + 2"));
    const auto& ex = sys.system.variety.excluded_locus;
    CHECK(std::find(ex.begin(), ex.end(), dvtest::poly(sys, "y1")) != ex.end());
    CHECK(verify_section(sys.system.variety).pass);
  }

  TEST_CASE("implicit ODE with a constant top derivative") {
    auto sys = dvtest::compile_text("state: y0, y1\nimplicit: y1^2 - y0\n");
    CHECK(section_of(sys, "y0") == rf(sys, "y1"));
    CHECK(section_of(sys, "y1") == rf(sys, "1/2"));
    CHECK((RationalFunction(sys.ideal().generators[0]) / rf(sys, "y1^2 - y0")).is_constant());
    CHECK(verify_section(sys.system.variety).pass);
  }

  TEST_CASE("implicit ODE without derivative dependence") {
    try {
      dvtest::compile_text("state: y0, y1\nimplicit: t\n");
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateLeadingDerivative);
    }
  }

  TEST_CASE("explicit rhs may not mention undeclared derivatives") {
    CHECK_THROWS_AS(dvtest::compile_text("ode: y' = y''\n"), Error);
  }

  TEST_CASE("shifted tangent residual") {
    auto sys = elliptic();
    const auto& v = sys.system.variety;
    auto F = dvtest::poly(sys, "y1^2 - 4*y0^3 - 4*y0 - 1");
    CHECK(shifted_tangent_residual(F, v).is_zero());

    auto bad = corrupted_elliptic();
    auto expected = normal_form(rf(sys, "(-12*y0^2 - 4)*y0 + 2*y1*(6*y0^2 + 2)"), v.ideal);
    auto r = shifted_tangent_residual(F, bad);
    CHECK_FALSE(r.is_zero());
    CHECK(r == expected);

    auto report = verify_section(bad);
    CHECK_FALSE(report.pass);
    REQUIRE(report.residuals.size() == 1);
    CHECK((report.residuals[0].residual / expected).is_constant());

    // a constant under the zero section has no residual
    auto reg = make_registry({{"t", VarKind::Time}, {"x", VarKind::Fiber}});
    auto zero = make_dvariety(reg, {}, {RationalFunction::constant(reg, 1), RationalFunction::constant(reg, 0)}, {});
    CHECK(shifted_tangent_residual(Polynomial::constant(reg, 7), zero).is_zero());
    CHECK(verify_section(load("painleve1.dv").system.variety).pass);
  }

  TEST_CASE("denominator vanishing on the variety is rejected") {
    try {
      dvtest::compile_text("vars: x\nideal: x\nsection: x = 1/x\n");
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DenominatorVanishesOnVariety);
    }
  }

  TEST_CASE("fibered product with an auxiliary exponential") {
    auto sys = load("linear.dv");
    const auto& reg = *sys.registry();
    REQUIRE(sys.w_vars.size() == 1);
    CHECK(reg[sys.w_vars[0]].name == "a");
    REQUIRE(sys.v_vars.size() == 2);
    CHECK(reg[sys.v_vars[0]].name == "y");
    CHECK(reg[sys.v_vars[1]].name == "y'");
    CHECK(section_of(sys, "t") == rf(sys, "1"));
    CHECK(section_of(sys, "a") == rf(sys, "2*a"));
    CHECK(section_of(sys, "y") == rf(sys, "y'"));
    CHECK(section_of(sys, "y'") == rf(sys, "4*y' - 4*y"));
  }

  TEST_CASE("empty auxiliary system is an identity") {
    auto spec = parse_problem_file(dvtest::read_problem("painleve1.dv"));
    auto v = compile_explicit_ode(spec);
    auto w = compile_aux(spec);
    auto p = fibered_product(w, v);
    CHECK(p.w_vars.empty());
    CHECK(p.registry()->size() == v.registry()->size());
    for (std::size_t i = 0; i < v.registry()->size(); ++i) {
      CHECK((*p.registry())[i].name == (*v.registry())[i].name);
      CHECK(to_string(p.system.variety.section[i]) == to_string(v.variety.section[i]));
    }
  }

  TEST_CASE("elliptic times elliptic") {
    auto spec = parse_problem_file(dvtest::read_problem("elliptic.dv"));
    auto e = compile_implicit_ode(spec);
    auto p = fibered_product(e, e);
    CHECK(p.system.variety.state_variables().size() == 4);
    CHECK(p.ideal().generators.size() == 2);
    CHECK(p.w_vars.size() == 2);
    CHECK(p.v_vars.size() == 2);
    CHECK(p.registry()->find("y0_2").has_value());
    CHECK(verify_section(p.system.variety).pass);
  }

  TEST_CASE("fibered product is associative up to renaming") {
    auto a = compile_explicit_ode(parse_problem_file("ode: u' = u^2\n"));
    auto b = compile_explicit_ode(parse_problem_file("ode: v' = t*v\n"));
    auto c = compile_implicit_ode(parse_problem_file(dvtest::read_problem("elliptic.dv")));
    auto left = fibered_product(fibered_product(a, b).system, c);
    auto right = fibered_product(a, fibered_product(b, c).system);
    // Compare sections variable by variable through names.
    const auto& lr = *left.registry();
    const auto& rr = *right.registry();
    REQUIRE(lr.size() == rr.size());
    for (std::size_t i = 0; i < lr.size(); ++i) {
      auto j = rr.find(lr[i].name);
      REQUIRE(j.has_value());
      CHECK(to_string(left.system.variety.section[i]) == to_string(right.system.variety.section[*j]));
    }
    CHECK(left.ideal().generators.size() == right.ideal().generators.size());
    CHECK(left.system.variety.state_variables().size() == 4);
  }

  TEST_CASE("lie derivative examples") {
    auto lin = load("linear.dv");
    CHECK(lie_derivative(rf(lin, "(y' - 2*y)/a"), lin).is_zero());
    auto cubic = load("cubic.dv");
    CHECK(lie_derivative(rf(cubic, "t - 1/y^2"), cubic).is_zero());
    auto p1 = load("painleve1.dv");
    CHECK(lie_derivative(rf(p1, "y1"), p1) == rf(p1, "y2"));
    CHECK(lie_derivative(rf(p1, "t"), p1) == rf(p1, "1"));
    CHECK(lie_derivative(rf(p1, "17/3"), p1).is_zero());
    auto ell = elliptic();
    CHECK(lie_derivative(rf(ell, "y1^2 - 4*y0^3 - 4*y0"), ell).is_zero());
  }

  TEST_CASE("scaled derivation agrees with the lie derivative") {
    auto sys = dvtest::compile_text("ode: y' = 1/(y + t)\n");
    const auto& v = sys.system.variety;
    auto p = dvtest::poly(sys, "y^2*t + 3*y");
    auto lhs = RationalFunction(scaled_derivation(p, v)) / RationalFunction(v.section_denominator);
    CHECK(lhs == lie_derivative(RationalFunction(p), v));
  }
}
