#include "dvint/dvariety.hpp"

#include <algorithm>
#include <set>

#include "dvint/errors.hpp"

namespace dvint {

namespace {

constexpr std::size_t kUnmapped = static_cast<std::size_t>(-1);

Polynomial lcm_poly(const Polynomial& a, const Polynomial& b) {
  if (a.is_constant()) return b;
  if (b.is_constant()) return a;
  Polynomial g = gcd(a, b);
  return divide_exact(a, g).value() * b;
}

void add_excluded(std::vector<Polynomial>& locus, const Polynomial& p) {
  if (p.is_constant()) return;
  Polynomial q = p.primitive();
  if (q.leading_term(MonomialOrder::standard(*q.registry())).second < 0) q = -q;
  if (std::find(locus.begin(), locus.end(), q) == locus.end()) locus.push_back(std::move(q));
}

// Registry holding time, the given coordinates and the parameters of `reg`,
// plus the index map from `reg`.
std::pair<RegistryPtr, std::vector<std::size_t>> restrict_registry(const VariableRegistry& reg,
                                                                   const std::vector<std::size_t>& coords) {
  std::vector<Variable> vars;
  std::vector<std::size_t> map(reg.size(), kUnmapped);
  for (std::size_t i = 0; i < reg.size(); ++i) {
    const bool keep = reg[i].kind == VarKind::Time || reg[i].kind == VarKind::Param ||
                      std::find(coords.begin(), coords.end(), i) != coords.end();
    if (!keep) continue;
    map[i] = vars.size();
    vars.push_back(reg[i]);
  }
  return {make_registry(std::move(vars)), map};
}

}  // namespace

std::vector<std::size_t> DVariety::state_variables() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < registry->size(); ++i) {
    auto k = (*registry)[i].kind;
    if (k == VarKind::Fiber || k == VarKind::Aux) out.push_back(i);
  }
  return out;
}

DVariety make_dvariety(RegistryPtr reg, std::vector<Polynomial> generators, std::vector<RationalFunction> section,
                       std::vector<Polynomial> excluded_locus, bool irreducible) {
  if (section.size() != reg->size())
    throw Error(ErrorCode::InvalidArgument, "section must have one entry per variable");
  DVariety v;
  v.registry = reg;
  for (std::size_t i = 0; i < reg->size(); ++i) {
    switch ((*reg)[i].kind) {
      case VarKind::Time:
        section[i] = RationalFunction::constant(reg, 1);
        break;
      case VarKind::Param:
      case VarKind::Constant:
        section[i] = RationalFunction::constant(reg, 0);
        break;
      default:
        if (!section[i].registry()) section[i] = RationalFunction::constant(reg, 0);
        break;
    }
  }
  v.ideal = groebner_basis(make_ideal(*reg, std::move(generators)));
  Polynomial common = Polynomial::constant(reg, 1);
  for (const auto& s : section) {
    const Polynomial& d = s.denominator();
    if (d.is_constant()) continue;
    if (!v.ideal.generators.empty() && ideal_contains(v.ideal, d))
      throw Error(ErrorCode::DenominatorVanishesOnVariety,
                  "section denominator " + to_string(d) + " vanishes on the variety");
    common = lcm_poly(common, d);
  }
  v.section_denominator = common;
  for (const auto& s : section) {
    Polynomial scale = s.denominator().is_constant() ? common : divide_exact(common, s.denominator()).value();
    v.section_numerators.push_back(s.numerator() * scale);
  }
  for (const auto& p : excluded_locus) add_excluded(v.excluded_locus, p);
  v.section = std::move(section);
  v.irreducible = irreducible;
  return v;
}

Fibration make_fibration(DVariety v) {
  auto t = v.registry->time();
  if (!t) throw Error(ErrorCode::InvalidArgument, "a fibration needs a time variable");
  Fibration f;
  f.time = *t;
  f.variety = std::move(v);
  return f;
}

ProductSystem as_product(Fibration f) {
  ProductSystem p;
  const auto& reg = *f.registry();
  p.w_vars = reg.of_kind(VarKind::Aux);
  p.v_vars = reg.of_kind(VarKind::Fiber);
  p.system = std::move(f);
  return p;
}

Fibration compile_explicit_ode(const ProblemSpec& spec) {
  if (spec.mode != ProblemMode::ExplicitOde) throw Error(ErrorCode::InvalidArgument, "not an explicit ODE");
  const auto& reg = *spec.registry;
  const auto states = spec.state_vars();
  const RationalFunction& rhs = spec.rhs_or_F;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    if (!rhs.mentions(i)) continue;
    const bool state = std::find(states.begin(), states.end(), i) != states.end();
    if (reg[i].kind == VarKind::Fiber && !state)
      throw Error(ErrorCode::MalformedRHS,
                  "right-hand side mentions '" + reg[i].name + "', of order >= " + std::to_string(spec.ode_order));
    if (reg[i].kind == VarKind::Aux)
      throw Error(ErrorCode::MalformedRHS, "right-hand side mentions auxiliary variable '" + reg[i].name + "'");
  }
  auto [nreg, map] = restrict_registry(reg, states);
  std::vector<RationalFunction> section(nreg->size(), RationalFunction::constant(nreg, 0));
  for (std::size_t k = 0; k + 1 < states.size(); ++k)
    section[map[states[k]]] = RationalFunction(Polynomial::variable(nreg, map[states[k + 1]]));
  RationalFunction top = rhs.embed(nreg, map);
  section[map[states.back()]] = top;
  return make_fibration(make_dvariety(nreg, {}, std::move(section), {top.denominator()}, spec.irreducible));
}

Fibration compile_implicit_ode(const ProblemSpec& spec) {
  if (spec.mode != ProblemMode::ImplicitOde) throw Error(ErrorCode::InvalidArgument, "not an implicit ODE");
  const auto& reg = *spec.registry;
  const auto states = spec.state_vars();
  for (std::size_t i = 0; i < reg.size(); ++i)
    if (spec.rhs_or_F.mentions(i) && reg[i].kind == VarKind::Aux)
      throw Error(ErrorCode::MalformedRHS, "implicit equation mentions auxiliary variable '" + reg[i].name + "'");
  auto [nreg, map] = restrict_registry(reg, states);
  const Polynomial F = spec.rhs_or_F.embed(nreg, map).numerator();
  const std::size_t n = states.size();
  std::vector<std::size_t> y(n);
  for (std::size_t k = 0; k < n; ++k) y[k] = map[states[k]];

  const Polynomial f_top = F.derivative(y[n - 1]);
  if (f_top.is_zero())
    throw Error(ErrorCode::DegenerateLeadingDerivative, "equation does not depend on '" + (*nreg)[y[n - 1]].name + "'");
  IdealBasis ideal = groebner_basis(make_ideal(*nreg, {F}));
  if (ideal_contains(ideal, f_top))
    throw Error(ErrorCode::NotSolvable, "leading derivative coefficient " + to_string(f_top) +
                                            " vanishes on the variety; differentiate further by hand");

  // dF/dt = F_t + sum_{i<n-1} F_{y_i} y_{i+1} + F_{y_{n-1}} y_n = 0.
  Polynomial rest = coefficient_derivation(F);
  for (std::size_t k = 0; k + 1 < n; ++k) rest += F.derivative(y[k]) * Polynomial::variable(nreg, y[k + 1]);
  RationalFunction solved = normalize_ratfunc(-rest, f_top);

  std::vector<RationalFunction> section(nreg->size(), RationalFunction::constant(nreg, 0));
  for (std::size_t k = 0; k + 1 < n; ++k) section[y[k]] = RationalFunction(Polynomial::variable(nreg, y[k + 1]));
  section[y[n - 1]] = solved;
  return make_fibration(make_dvariety(nreg, {F}, std::move(section), {f_top, solved.denominator()}, spec.irreducible));
}

Fibration compile_aux(const ProblemSpec& spec) {
  const auto& reg = *spec.registry;
  const auto aux = reg.of_kind(VarKind::Aux);
  auto [nreg, map] = restrict_registry(reg, aux);
  std::vector<RationalFunction> section(nreg->size(), RationalFunction::constant(nreg, 0));
  std::vector<Polynomial> excluded;
  for (const auto& [name, rule] : spec.aux_w) {
    for (std::size_t i = 0; i < reg.size(); ++i)
      if (rule.mentions(i) && map[i] == kUnmapped)
        throw Error(ErrorCode::MalformedRHS, "auxiliary rule for '" + name + "' mentions '" + reg[i].name + "'");
    RationalFunction s = rule.embed(nreg, map);
    excluded.push_back(s.denominator());
    section[nreg->index_of(name)] = std::move(s);
  }
  return make_fibration(make_dvariety(nreg, {}, std::move(section), std::move(excluded)));
}

ProductSystem compile_problem(const ProblemSpec& spec) {
  switch (spec.mode) {
    case ProblemMode::ExplicitOde:
      return fibered_product(compile_aux(spec), compile_explicit_ode(spec));
    case ProblemMode::ImplicitOde:
      return fibered_product(compile_aux(spec), compile_implicit_ode(spec));
    case ProblemMode::DVariety:
      break;
  }
  const auto& reg = spec.registry;
  std::vector<RationalFunction> section(reg->size(), RationalFunction::constant(reg, 0));
  std::vector<Polynomial> excluded;
  for (const auto& [name, s] : spec.section) {
    section[reg->index_of(name)] = s;
    excluded.push_back(s.denominator());
  }
  return as_product(
      make_fibration(make_dvariety(reg, spec.ideal_gens, std::move(section), std::move(excluded), spec.irreducible)));
}

Fibration ambient(const Fibration& f) {
  const DVariety& v = f.variety;
  return make_fibration(make_dvariety(v.registry, {}, v.section, v.excluded_locus, v.irreducible));
}

Polynomial scaled_derivation(const Polynomial& p, const DVariety& v) {
  Polynomial out(v.registry);
  for (std::size_t i = 0; i < v.registry->size(); ++i) {
    if (v.section_numerators[i].is_zero() || !p.mentions(i)) continue;
    out += v.section_numerators[i] * p.derivative(i);
  }
  return out;
}

RationalFunction lie_derivative(const RationalFunction& h, const DVariety& v) {
  const Polynomial& n = h.numerator();
  const Polynomial& d = h.denominator();
  const bool has_ideal = !v.ideal.generators.empty();
  if (!d.is_constant() && has_ideal && ideal_contains(v.ideal, d))
    throw Error(ErrorCode::DenominatorVanishesOnVariety, "denominator " + to_string(d) + " vanishes on the variety");
  Polynomial num(v.registry), den(v.registry);
  if (d.is_constant()) {
    num = scaled_derivation(n, v);
    den = v.section_denominator * d;
  } else {
    num = d * scaled_derivation(n, v) - n * scaled_derivation(d, v);
    den = v.section_denominator * d * d;
  }
  if (has_ideal) num = reduce(num, v.ideal);
  return normalize_ratfunc(std::move(num), std::move(den));
}

RationalFunction shifted_tangent_residual(const Polynomial& p, const DVariety& v) {
  return lie_derivative(RationalFunction(p), v);
}

SectionReport verify_section(const DVariety& v) {
  SectionReport report;
  for (const auto& g : v.ideal.generators) {
    RationalFunction r = shifted_tangent_residual(g, v);
    if (!r.is_zero()) report.pass = false;
    report.residuals.push_back({g, std::move(r)});
  }
  return report;
}

ProductSystem fibered_product(const Fibration& w, const Fibration& v) {
  const auto& wr = *w.registry();
  const auto& vr = *v.registry();
  std::vector<Variable> vars;
  std::set<std::string> used;
  std::vector<std::size_t> wmap(wr.size(), kUnmapped), vmap(vr.size(), kUnmapped);

  vars.push_back(Variable{vr[v.time].name, VarKind::Time});
  used.insert(vr[v.time].name);
  wmap[w.time] = 0;
  vmap[v.time] = 0;

  auto fresh = [&](const std::string& base) {
    if (!used.count(base)) return base;
    for (int k = 2;; ++k) {
      std::string name = base + "_" + std::to_string(k);
      if (!used.count(name)) return name;
    }
  };
  auto add = [&](const std::string& name, VarKind kind) {
    std::string n = fresh(name);
    used.insert(n);
    vars.push_back(Variable{n, kind});
    return vars.size() - 1;
  };

  for (std::size_t i = 0; i < wr.size(); ++i)
    if (wr[i].kind == VarKind::Fiber || wr[i].kind == VarKind::Aux) wmap[i] = add(wr[i].name, VarKind::Aux);
  for (std::size_t i = 0; i < vr.size(); ++i)
    if (vr[i].kind == VarKind::Fiber || vr[i].kind == VarKind::Aux) vmap[i] = add(vr[i].name, vr[i].kind);
  auto add_shared = [&](const VariableRegistry& r, std::vector<std::size_t>& map) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i].kind != VarKind::Param && r[i].kind != VarKind::Constant) continue;
      auto it = std::find(vars.begin(), vars.end(), r[i]);
      map[i] = it != vars.end() ? static_cast<std::size_t>(it - vars.begin()) : add(r[i].name, r[i].kind);
    }
  };
  add_shared(wr, wmap);
  add_shared(vr, vmap);

  RegistryPtr reg = make_registry(std::move(vars));
  std::vector<Polynomial> gens;
  for (const auto& g : w.ideal().generators) gens.push_back(g.embed(reg, wmap));
  for (const auto& g : v.ideal().generators) gens.push_back(g.embed(reg, vmap));
  std::vector<RationalFunction> section(reg->size(), RationalFunction::constant(reg, 0));
  for (std::size_t i = 0; i < wr.size(); ++i)
    if (wmap[i] != kUnmapped && wmap[i] != 0) section[wmap[i]] = w.variety.section[i].embed(reg, wmap);
  for (std::size_t i = 0; i < vr.size(); ++i)
    if (vmap[i] != kUnmapped && vmap[i] != 0) section[vmap[i]] = v.variety.section[i].embed(reg, vmap);
  std::vector<Polynomial> excluded;
  for (const auto& p : w.variety.excluded_locus) excluded.push_back(p.embed(reg, wmap));
  for (const auto& p : v.variety.excluded_locus) excluded.push_back(p.embed(reg, vmap));
  return as_product(make_fibration(make_dvariety(reg, std::move(gens), std::move(section), std::move(excluded),
                                                 w.variety.irreducible && v.variety.irreducible)));
}

}  // namespace dvint
