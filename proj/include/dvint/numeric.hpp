#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "dvint/dvariety.hpp"

namespace dvint {

/// Fixed-step RK4 samples of the flow dx/dt = s(t, x) over the state variables.
struct Trajectory {
  RegistryPtr registry;
  std::vector<std::size_t> state;  // registry indices of the integrated variables
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // values[k][j] is state[j] at times[k]
  double step = 0.0;
  const char* method = "rk4";

  std::size_t size() const noexcept { return times.size(); }
  /// Full registry point of sample k (parameters and constants at 0).
  std::vector<double> point(std::size_t k) const;
};

inline constexpr double kOnVarietyTolerance = 1e-10;
inline constexpr double kPoleThreshold = 1e-12;

/// `v0` lists the state variables in registry order. The last step is
/// shortened to land on t_end. Throws InitialConditionOffVariety,
/// PoleEncountered, InvalidArgument.
Trajectory integrate_flow(const Fibration& sys, double t0, const std::vector<double>& v0, double t_end, double step);

struct Constancy {
  double value = 0.0;
  double max_drift = 0.0;  // relative to max(1, |value|)
  bool pass = false;
};

/// Throws DenominatorNearZeroOnTrajectory.
Constancy check_constancy(const RationalFunction& h, const Trajectory& traj, double tol);

/// Header `t,<state names>`, 17 significant digits.
void write_csv(std::ostream& out, const Trajectory& traj);

}  // namespace dvint
