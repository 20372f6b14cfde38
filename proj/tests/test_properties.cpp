#include <algorithm>

#include "doctest.h"
#include "dvint/errors.hpp"
#include "dvint/integrals.hpp"
#include "generators.hpp"
#include "support.hpp"

using namespace dvint;

namespace {

const RegistryPtr kReg =
    make_registry({{"t", VarKind::Time}, {"x", VarKind::Fiber}, {"y", VarKind::Fiber}, {"z", VarKind::Fiber}});
const std::vector<std::size_t> kVars{0, 1, 2, 3};

IdealBasis random_ideal(dvtest::Gen& gen) {
  std::vector<Polynomial> gens;
  const int n = gen.uniform(1, 2);
  for (int k = 0; k < n; ++k) gens.push_back(gen.polynomial(kReg, {1, 2, 3}, 2, 3));
  return groebner_basis(make_ideal(*kReg, gens));
}

std::vector<std::string> example_files() { return {"painleve1.dv", "elliptic.dv", "cubic.dv", "linear.dv"}; }

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("partial derivatives are derivations") {
    dvtest::Gen gen(101);
    for (int k = 0; k < 200; ++k) {
      auto f = gen.rational(kReg, kVars, 5);
      auto g = gen.rational(kReg, kVars, 5);
      const auto v = static_cast<std::size_t>(gen.uniform(0, 3));
      CHECK(partial_derivative(f * g, v) == partial_derivative(f, v) * g + f * partial_derivative(g, v));
      CHECK(partial_derivative(f + g, v) == partial_derivative(f, v) + partial_derivative(g, v));
    }
  }

  TEST_CASE("lie derivative is a derivation modulo the ideal") {
    dvtest::Gen gen(102);
    for (const auto& name : example_files()) {
      CAPTURE(name);
      auto sys = dvtest::load(name);
      const auto& v = sys.system.variety;
      std::vector<std::size_t> vars{*sys.registry()->time()};
      for (auto i : v.state_variables()) vars.push_back(i);
      for (int k = 0; k < 50; ++k) {
        auto f = normalize_ratfunc(gen.polynomial(sys.registry(), vars, 3, 3), Polynomial::constant(sys.registry(), 1));
        auto g = gen.rational(sys.registry(), vars, 2);
        if (!normal_form(RationalFunction(g.denominator()), v.ideal).numerator().is_zero()) {
          CHECK(lie_derivative(f * g, v) == normal_form(lie_derivative(f, v) * g + f * lie_derivative(g, v), v.ideal));
          CHECK(lie_derivative(f + g, v) == normal_form(lie_derivative(f, v) + lie_derivative(g, v), v.ideal));
        }
      }
    }
  }

  TEST_CASE("normal form is idempotent") {
    dvtest::Gen gen(103);
    for (int k = 0; k < 200; ++k) {
      auto basis = random_ideal(gen);
      auto f = gen.polynomial(kReg, kVars, 4, 5);
      auto once = reduce(f, basis);
      CHECK(reduce(once, basis) == once);
      CHECK(ideal_contains(basis, f - once));
    }
  }

  TEST_CASE("membership in principal ideals agrees with exact division") {
    dvtest::Gen gen(104);
    for (int k = 0; k < 100; ++k) {
      auto g = gen.polynomial(kReg, kVars, 2, 3);
      if (g.is_constant()) continue;
      auto basis = groebner_basis(make_ideal(*kReg, {g}));
      auto member = g * gen.polynomial(kReg, kVars, 2, 3);
      auto other = gen.polynomial(kReg, kVars, 3, 4);
      for (const auto& p : {member, other}) CHECK(reduce(p, basis).is_zero() == divide_exact(p, g).has_value());
    }
  }

  TEST_CASE("reduced Groebner basis does not depend on generator order") {
    dvtest::Gen gen(105);
    for (int k = 0; k < 40; ++k) {
      std::vector<Polynomial> gens;
      for (int i = 0; i < 3; ++i) gens.push_back(gen.polynomial(kReg, {1, 2, 3}, 2, 3));
      auto a = groebner_basis(make_ideal(*kReg, gens));
      std::reverse(gens.begin(), gens.end());
      std::rotate(gens.begin(), gens.begin() + 1, gens.end());
      auto b = groebner_basis(make_ideal(*kReg, gens));
      CHECK(a.generators == b.generators);
    }
  }

  TEST_CASE("generated explicit ODEs compile to valid sections") {
    dvtest::Gen gen(106);
    int accepted = 0;
    for (int k = 0; k < 50; ++k) {
      const int order = gen.uniform(1, 3);
      std::vector<std::string> names{"t", "u"};
      for (int i = 1; i < order; ++i) names.push_back("u" + std::string(static_cast<std::size_t>(i), '\''));
      std::string rhs = gen.expression(names, 4, 4);
      if (gen.uniform(0, 1)) rhs = "(" + rhs + ")/(" + gen.expression(names, 2, 2) + ")";
      const std::string text = "ode: u" + std::string(static_cast<std::size_t>(order), '\'') + " = " + rhs + "\n";
      CAPTURE(text);
      try {
        auto sys = dvtest::compile_text(text);
        CHECK(verify_section(sys.system.variety).pass);
        CHECK(sys.v_vars.size() == static_cast<std::size_t>(order));
        ++accepted;
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroDenominator);
      }
    }
    CHECK(accepted >= 45);
  }

  TEST_CASE("generated implicit ODEs compile to valid sections") {
    dvtest::Gen gen(107);
    int accepted = 0;
    for (int k = 0; k < 50; ++k) {
      const int order = gen.uniform(1, 3);
      std::vector<std::string> state, names{"t"};
      for (int i = 0; i < order; ++i) state.push_back("y" + std::to_string(i));
      names.insert(names.end(), state.begin(), state.end());
      const std::string& top = state.back();
      std::string F = top + "^" + std::to_string(gen.uniform(1, 2)) + " - (" + gen.expression(names, 4, 4) + ")";
      std::string decl;
      for (std::size_t i = 0; i < state.size(); ++i) decl += (i ? ", " : "") + state[i];
      const std::string text = "state: " + decl + "\nimplicit: " + F + "\n";
      CAPTURE(text);
      try {
        auto sys = dvtest::compile_text(text);
        auto report = verify_section(sys.system.variety);
        CHECK(report.pass);
        // definitional consistency with the residual of each generator
        for (const auto& g : sys.ideal().generators) CHECK(shifted_tangent_residual(g, sys.system.variety).is_zero());
        ++accepted;
      } catch (const Error& e) {
        const auto c = e.code();
        CHECK((c == ErrorCode::NotSolvable || c == ErrorCode::DegenerateLeadingDerivative ||
               c == ErrorCode::DenominatorVanishesOnVariety));
      }
    }
    CHECK(accepted >= 40);
  }

  TEST_CASE("w-independence implies independence on the examples") {
    dvtest::Gen gen(108);
    for (const auto& name : example_files()) {
      CAPTURE(name);
      auto sys = dvtest::load(name);
      auto spec = parse_problem_file(dvtest::read_problem(name));
      std::vector<std::size_t> vars{*sys.registry()->time()};
      for (auto i : sys.system.variety.state_variables()) vars.push_back(i);
      std::vector<std::vector<RationalFunction>> lists;
      std::vector<RationalFunction> file;
      for (const auto& s : spec.candidate_integrals) file.push_back(dvtest::rf(sys, s));
      lists.push_back(file);
      for (int k = 0; k < 10; ++k) {
        std::vector<RationalFunction> hs;
        const int n = gen.uniform(1, 3);
        for (int i = 0; i < n; ++i) hs.push_back(gen.rational(sys.registry(), vars, 2));
        lists.push_back(hs);
      }
      for (const auto& hs : lists) {
        auto r = w_independence_test(hs, sys);
        if (r.w_independent) CHECK(r.independent);
      }
    }
  }

  TEST_CASE("a single function is independent iff nonconstant modulo the ideal") {
    dvtest::Gen gen(109);
    for (const auto& name : example_files()) {
      auto sys = dvtest::load(name);
      std::vector<std::size_t> vars{*sys.registry()->time()};
      for (auto i : sys.system.variety.state_variables()) vars.push_back(i);
      for (int k = 0; k < 20; ++k) {
        auto h = k % 5 == 0 ? RationalFunction::constant(sys.registry(), gen.coeff())
                            : gen.rational(sys.registry(), vars, 3);
        const bool nonconstant = !normal_form(h, sys.ideal()).is_constant();
        CHECK(independence_test({h}, sys).independent == nonconstant);
      }
    }
    auto ell = dvtest::load("elliptic.dv");
    CHECK_FALSE(independence_test({dvtest::rf(ell, "y1^2 - 4*y0^3 - 4*y0")}, ell).independent);
  }

  TEST_CASE("fiber degree one means zero-dimensional fibers") {
    auto sys = dvtest::load("linear.dv");
    std::vector<RationalFunction> hs{dvtest::rf(sys, "(y' - 2*y)/a"), dvtest::rf(sys, "((1 + 2*t)*y - t*y')/a")};
    auto deg = generic_fiber_degree(hs, sys);
    REQUIRE(deg.finite);
    CHECK(deg.degree == 1);
    CHECK(level_set_dimension(hs, sys, true) == 1);  // only t remains free
    auto cubic = dvtest::load("cubic.dv");
    std::vector<RationalFunction> h{dvtest::rf(cubic, "t - 1/y^2")};
    auto d2 = generic_fiber_degree(h, cubic);
    CHECK(d2.finite);
    CHECK(d2.degree == 2);
  }

  TEST_CASE("functions of first integrals are first integrals") {
    dvtest::Gen gen(110);
    auto sys = dvtest::load("linear.dv");
    auto h = dvtest::rf(sys, "(y' - 2*y)/a");
    auto cubic = dvtest::load("cubic.dv");
    auto hc = dvtest::rf(cubic, "t - 1/y^2");
    for (int k = 0; k < 20; ++k) {
      BigRational p0 = gen.coeff(), p1 = gen.coeff(), p2 = gen.coeff(), q0 = gen.coeff(), q1 = gen.coeff();
      auto phi = [&](const RationalFunction& x) {
        const auto& r = x.numerator().registry();
        auto c = [&](const BigRational& q) { return RationalFunction::constant(r, q); };
        return (c(p0) + c(p1) * x + c(p2) * x * x) / (c(q0) + c(q1) * x);
      };
      CHECK(verify_first_integral(phi(h), sys).verified);
      CHECK(verify_first_integral(phi(hc), cubic).verified);
    }
  }

  TEST_CASE("search results verify and grow with the degree") {
    for (const auto& name : example_files()) {
      CAPTURE(name);
      auto sys = dvtest::load(name);
      std::size_t prev = 0;
      for (int d = 1; d <= 4; ++d) {
        auto found = search_polynomial_integrals(sys.system, d);
        CHECK(found.size() >= prev);
        prev = found.size();
        for (const auto& fi : found) CHECK(lie_derivative(fi.h, sys).is_zero());
      }
    }
    auto lin = dvtest::load("linear.dv");
    auto a = dvtest::poly(lin, "a");
    std::size_t prev = 0;
    for (int d = 1; d <= 3; ++d) {
      auto found = search_rational_integrals(lin.system, a, d);
      CHECK(found.size() >= prev);
      prev = found.size();
      for (const auto& fi : found) CHECK(lie_derivative(fi.h, lin).is_zero());
    }
    CHECK(prev >= 2);
  }
}
