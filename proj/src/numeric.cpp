#include "dvint/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "dvint/errors.hpp"

namespace dvint {

std::vector<double> Trajectory::point(std::size_t k) const {
  std::vector<double> p(registry->size(), 0.0);
  if (auto t = registry->time()) p[*t] = times[k];
  for (std::size_t j = 0; j < state.size(); ++j) p[state[j]] = values[k][j];
  return p;
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Flow {
 public:
  Flow(const DVariety& v, std::vector<std::size_t> state)
      : v_(v), state_(std::move(state)), time_(*v.registry->time()) {
    for (auto i : state_) {
      const Polynomial& d = v.section[i].denominator();
      if (!d.is_constant()) dens_.push_back(d);
    }
  }

  // Records the denominator signs at the start of a step.
  bool anchor(double t, const std::vector<double>& x) {
    load(t, x);
    signs_.clear();
    for (const auto& d : dens_) {
      const double val = d.evaluate(point_);
      if (!(std::fabs(val) >= kPoleThreshold)) return false;
      signs_.push_back(std::signbit(val));
    }
    return true;
  }

  // Returns false at a pole: a denominator below the threshold, or one that
  // changed sign since the anchor and so crossed zero inside the step.
  bool eval(double t, const std::vector<double>& x, std::vector<double>& dx) {
    load(t, x);
    for (std::size_t i = 0; i < dens_.size(); ++i) {
      const double val = dens_[i].evaluate(point_);
      if (!(std::fabs(val) >= kPoleThreshold) || std::signbit(val) != signs_[i]) return false;
    }
    dx.resize(state_.size());
    for (std::size_t j = 0; j < state_.size(); ++j) dx[j] = v_.section[state_[j]].evaluate(point_);
    return true;
  }

 private:
  void load(double t, const std::vector<double>& x) {
    point_.assign(v_.registry->size(), 0.0);
    point_[time_] = t;
    for (std::size_t j = 0; j < state_.size(); ++j) point_[state_[j]] = x[j];
  }

  const DVariety& v_;
  std::vector<std::size_t> state_;
  std::size_t time_;
  std::vector<Polynomial> dens_;
  std::vector<double> point_;
  std::vector<bool> signs_;
};

}  // namespace

Trajectory integrate_flow(const Fibration& sys, double t0, const std::vector<double>& v0, double t_end, double step) {
  const DVariety& v = sys.variety;
  const auto& reg = *v.registry;
  if (!reg.of_kind(VarKind::Param).empty() || !reg.of_kind(VarKind::Constant).empty())
    throw Error(ErrorCode::InvalidArgument, "numeric integration needs a system without free parameters");
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  if (!(t_end >= t0)) throw Error(ErrorCode::InvalidArgument, "t_end must not precede t0");

  Trajectory traj;
  traj.registry = v.registry;
  traj.state = v.state_variables();
  traj.step = step;
  if (v0.size() != traj.state.size())
    throw Error(ErrorCode::InvalidArgument,
                "expected " + std::to_string(traj.state.size()) + " initial values, got " + std::to_string(v0.size()));
  traj.times.push_back(t0);
  traj.values.push_back(v0);
  {
    const auto p = traj.point(0);
    for (const auto& g : v.ideal.generators) {
      const double r = g.evaluate(p);
      if (!(std::fabs(r) <= kOnVarietyTolerance)) {
        std::ostringstream msg;
        msg << "initial point is off the variety: " << to_string(g) << " = " << fmt(r);
        throw Error(ErrorCode::InitialConditionOffVariety, msg.str());
      }
    }
  }

  Flow flow(v, traj.state);
  const std::size_t n = traj.state.size();
  std::vector<double> x = v0, k1, k2, k3, k4, tmp(n);
  double t = t0;
  auto pole = [&](double at) {
    throw PoleEncountered(t, "section denominator vanishes near t = " + fmt(at) + "; last good t = " + fmt(t));
  };
  const auto nsteps = static_cast<std::size_t>(std::ceil((t_end - t0) / step - 1e-9));
  for (std::size_t s = 0; s < nsteps; ++s) {
    const double tn = (s + 1 == nsteps) ? t_end : t0 + static_cast<double>(s + 1) * step;
    const double h = tn - t;
    if (!flow.anchor(t, x) || !flow.eval(t, x, k1)) pole(t);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * h * k1[j];
    if (!flow.eval(t + 0.5 * h, tmp, k2)) pole(t + 0.5 * h);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * h * k2[j];
    if (!flow.eval(t + 0.5 * h, tmp, k3)) pole(t + 0.5 * h);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + h * k3[j];
    if (!flow.eval(tn, tmp, k4)) pole(tn);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    if (!flow.eval(tn, tmp, k1)) pole(tn);
    x.swap(tmp);
    t = tn;
    traj.times.push_back(t);
    traj.values.push_back(x);
  }
  return traj;
}

Constancy check_constancy(const RationalFunction& h, const Trajectory& traj, double tol) {
  Constancy c;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto p = traj.point(k);
    if (!(std::fabs(h.denominator().evaluate(p)) >= kPoleThreshold))
      throw Error(ErrorCode::DenominatorNearZeroOnTrajectory,
                  "denominator of " + to_string(h) + " is near zero at t = " + fmt(traj.times[k]));
    const double val = h.evaluate(p);
    if (k == 0) {
      c.value = val;
      continue;
    }
    c.max_drift = std::max(c.max_drift, std::fabs(val - c.value) / std::max(1.0, std::fabs(c.value)));
  }
  c.pass = c.max_drift <= tol;
  return c;
}

void write_csv(std::ostream& out, const Trajectory& traj) {
  out << "t";
  for (auto i : traj.state) out << ',' << (*traj.registry)[i].name;
  out << '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out << fmt(traj.times[k]);
    for (double x : traj.values[k]) out << ',' << fmt(x);
    out << '\n';
  }
}

}  // namespace dvint
