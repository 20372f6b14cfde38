#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dvint/errors.hpp"
#include "dvint/numeric.hpp"
#include "support.hpp"

using namespace dvint;
using dvtest::load;
using dvtest::rf;

namespace {

double cubic_endpoint(double step) {
  auto sys = load("cubic.dv");
  return integrate_flow(sys.system, 5.0, {0.5}, 10.0, step).values.back()[0];
}

}  // namespace

TEST_SUITE("numeric") {
  TEST_CASE("cubic benchmark") {
    auto sys = load("cubic.dv");
    auto traj = integrate_flow(sys.system, 5.0, {0.5}, 10.0, 1e-3);
    CHECK(traj.times.front() == 5.0);
    CHECK(traj.times.back() == 10.0);
    CHECK(traj.size() == 5001);
    for (std::size_t k = 1; k < traj.size(); ++k) CHECK(traj.times[k] > traj.times[k - 1]);
    // closed form y = 1/sqrt(t - 1)
    CHECK(std::fabs(traj.values.back()[0] - 1.0 / 3.0) < 1e-8);
    CHECK(std::fabs(traj.values[1000][0] - 1.0 / std::sqrt(traj.times[1000] - 1.0)) < 1e-10);
  }

  TEST_CASE("exponential auxiliary system") {
    auto sys = dvtest::compile_text("ode: a' = 2*a\n");
    auto traj = integrate_flow(sys.system, 0.0, {1.0}, 1.0, 1e-3);
    CHECK(std::fabs(traj.values.back()[0] - std::exp(2.0)) < 1e-7);
  }

  TEST_CASE("last step lands on t_end") {
    auto sys = dvtest::compile_text("ode: a' = 2*a\n");
    auto traj = integrate_flow(sys.system, 0.0, {1.0}, 1.0, 0.3);
    CHECK(traj.size() == 5);
    CHECK(traj.times.back() == 1.0);
    CHECK(std::fabs(traj.values.back()[0] - std::exp(2.0)) < 1e-2);
  }

  TEST_CASE("zero section gives a constant trajectory") {
    auto sys = dvtest::compile_text("vars: x, y\nsection: x = 0\nsection: y = 0\n");
    auto traj = integrate_flow(sys.system, -1.0, {3.0, -2.5}, 2.0, 0.25);
    for (const auto& v : traj.values) {
      CHECK(v[0] == 3.0);
      CHECK(v[1] == -2.5);
    }
  }

  TEST_CASE("constancy checks") {
    auto sys = load("cubic.dv");
    auto traj = integrate_flow(sys.system, 5.0, {0.5}, 10.0, 1e-3);
    auto c = check_constancy(rf(sys, "t - 1/y^2"), traj, 1e-6);
    CHECK(c.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.max_drift < 1e-8);
    CHECK(c.pass);
    auto y = check_constancy(rf(sys, "y"), traj, 1e-6);
    CHECK_FALSE(y.pass);
    CHECK(y.max_drift == doctest::Approx(1.0 / 6.0).epsilon(1e-6));
    auto k = check_constancy(rf(sys, "3/7"), traj, 0.0);
    CHECK(k.max_drift == 0.0);
    CHECK(k.pass);
    CHECK_THROWS_AS(check_constancy(rf(sys, "1/(y - 1/2)"), traj, 1e-6), Error);
  }

  TEST_CASE("halving the step divides the error by about sixteen") {
    const double exact = 1.0 / 3.0;
    const double e1 = std::fabs(cubic_endpoint(0.1) - exact);
    const double e2 = std::fabs(cubic_endpoint(0.05) - exact);
    const double ratio = e1 / e2;
    CAPTURE(ratio);
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
  }

  TEST_CASE("elliptic trajectory stays on the curve") {
    auto sys = load("elliptic.dv");
    auto traj = integrate_flow(sys.system, 0.0, {0.0, 1.0}, 1.0, 1e-3);
    auto F = dvtest::poly(sys, "y1^2 - 4*y0^3 - 4*y0 - 1");
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) worst = std::max(worst, std::fabs(F.evaluate(traj.point(k))));
    CHECK(worst < 1e-6);
  }

  TEST_CASE("initial point off the variety") {
    auto sys = load("elliptic.dv");
    try {
      integrate_flow(sys.system, 0.0, {0.0, 1.1}, 1.0, 1e-3);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InitialConditionOffVariety);
    }
  }

  TEST_CASE("pole guard") {
    // y' = -1/y reaches y = 0 at t = 1/2 from y(0) = 1.
    auto sys = dvtest::compile_text("ode: y' = -1/y\n");
    try {
      integrate_flow(sys.system, 0.0, {1.0}, 1.0, 1e-3);
      FAIL("no error");
    } catch (const PoleEncountered& e) {
      CHECK(e.code() == ErrorCode::PoleEncountered);
      CHECK(e.last_good_t() <= 0.5);
      CHECK(e.last_good_t() > 0.45);
    }
    try {
      integrate_flow(sys.system, 0.0, {0.0}, 1.0, 1e-3);
      FAIL("no error");
    } catch (const PoleEncountered& e) {
      CHECK(e.last_good_t() == 0.0);
    }
  }

  TEST_CASE("invalid arguments") {
    auto sys = load("cubic.dv");
    CHECK_THROWS_AS(integrate_flow(sys.system, 0.0, {1.0}, 1.0, 0.0), Error);
    CHECK_THROWS_AS(integrate_flow(sys.system, 1.0, {1.0}, 0.0, 0.1), Error);
    CHECK_THROWS_AS(integrate_flow(sys.system, 0.0, {1.0, 2.0}, 1.0, 0.1), Error);
    auto par = dvtest::compile_text("params: k\node: y' = k*y\n");
    CHECK_THROWS_AS(integrate_flow(par.system, 0.0, {1.0}, 1.0, 0.1), Error);
  }

  TEST_CASE("csv export") {
    auto sys = load("linear.dv");
    auto traj = integrate_flow(sys.system, 0.0, {1.0, 1.0, 2.0}, 0.5, 0.25);
    std::ostringstream out;
    write_csv(out, traj);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,a,y,y'");
    std::getline(in, line);
    CHECK(line == "0,1,1,2");
    int rows = 1;
    while (std::getline(in, line)) {
      ++rows;
      CHECK(std::count(line.begin(), line.end(), ',') == 3);
    }
    CHECK(rows == 3);
    // 17 significant digits round-trip exactly
    std::istringstream again(out.str());
    std::getline(again, line);
    std::getline(again, line);
    std::getline(again, line);
    CHECK(std::stod(line.substr(line.rfind(',') + 1)) == traj.values[1][2]);
  }

  TEST_CASE("verified integrals are numerically constant on the linear system") {
    auto sys = load("linear.dv");
    // y(0) = 1, y'(0) = 3 so y = (1 + t)e^(2t) while a = e^(2t)
    auto traj = integrate_flow(sys.system, 0.0, {1.0, 1.0, 3.0}, 1.0, 1e-3);
    CHECK(check_constancy(rf(sys, "(y' - 2*y)/a"), traj, 1e-6).pass);
    CHECK(check_constancy(rf(sys, "((1 + 2*t)*y - t*y')/a"), traj, 1e-6).pass);
    CHECK_FALSE(check_constancy(rf(sys, "y/a"), traj, 1e-6).pass);
  }
}
