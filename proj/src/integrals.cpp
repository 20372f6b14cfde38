#include "dvint/integrals.hpp"

#include <algorithm>
#include <map>

#include "ansatz.hpp"
#include "dvint/errors.hpp"

namespace dvint {

namespace detail {

std::vector<std::size_t> flow_variables(const VariableRegistry& reg) {
  std::vector<std::size_t> out;
  if (auto t = reg.time()) out.push_back(*t);
  for (std::size_t i = 0; i < reg.size(); ++i)
    if (reg[i].kind == VarKind::Fiber || reg[i].kind == VarKind::Aux) out.push_back(i);
  return out;
}

std::vector<Monomial> ansatz_monomials(const DVariety& v, int degree, bool with_one) {
  auto ms = monomials_up_to(v.registry->size(), flow_variables(*v.registry), degree);
  if (!v.ideal.generators.empty()) ms = standard_monomials(v.ideal, ms);
  if (!with_one) std::erase_if(ms, [](const Monomial& m) { return m.is_one(); });
  const MonomialOrder order = MonomialOrder::standard(*v.registry);
  std::sort(ms.begin(), ms.end(), [&](const Monomial& a, const Monomial& b) { return order.greater(a, b); });
  return ms;
}

std::vector<std::vector<BigRational>> linear_relations(const std::vector<Polynomial>& images) {
  std::map<Monomial, std::size_t> rows;
  for (const auto& p : images)
    for (const auto& [m, c] : p.terms()) rows.emplace(m, rows.size());
  QMatrix a(rows.size(), images.size());
  for (std::size_t j = 0; j < images.size(); ++j)
    for (const auto& [m, c] : images[j].terms()) a(rows.at(m), j) = c;
  return a.nullspace();
}

Polynomial combine(const RegistryPtr& reg, const std::vector<Monomial>& basis, const std::vector<BigRational>& coeffs) {
  Polynomial::Terms terms;
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (coeffs[j] != 0) terms.emplace(basis[j], coeffs[j]);
  return Polynomial(reg, std::move(terms));
}

Polynomial reduce_on(const DVariety& v, const Polynomial& p) {
  return v.ideal.generators.empty() ? p : reduce(p, v.ideal);
}

}  // namespace detail

using namespace detail;

const char* provenance_name(Provenance p) noexcept {
  switch (p) {
    case Provenance::User:
      return "user";
    case Provenance::PolynomialSearch:
      return "polynomial-search";
    case Provenance::RationalSearch:
      return "rational-search";
  }
  return "?";
}

namespace {

void require_defined(const Polynomial& den, const DVariety& v) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroDenominator, "zero denominator");
  if (!den.is_constant() && reduce_on(v, den).is_zero())
    throw Error(ErrorCode::DenominatorVanishesOnVariety, "denominator " + to_string(den) + " vanishes on the variety");
}

void add_unique(std::vector<Polynomial>& out, const Polynomial& p) {
  if (p.is_constant()) return;
  Polynomial q = p.primitive();
  if (q.leading_term(MonomialOrder::standard(*q.registry())).second < 0) q = -q;
  if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(std::move(q));
}

// Integrals returned by a search are re-verified before they leave the module.
std::vector<FirstIntegral> verified(const Fibration& sys, const std::vector<RationalFunction>& hs, Provenance prov) {
  std::vector<FirstIntegral> out;
  for (const auto& h : hs) {
    FirstIntegral fi = verify_first_integral(h, sys, prov);
    if (!fi.verified)
      throw Error(ErrorCode::InvalidArgument, "internal: search produced a non-integral " + to_string(h));
    out.push_back(std::move(fi));
  }
  return out;
}

// Fresh registry: the system's variables, then constants c1..ck and an
// optional saturation variable.
struct LevelSystem {
  RegistryPtr reg;
  std::vector<Polynomial> gens;
  std::vector<std::size_t> constants;
  std::optional<std::size_t> saturation;
};

LevelSystem level_system(const std::vector<RationalFunction>& hs, const ProductSystem& sys) {
  const auto& base = *sys.registry();
  std::vector<Variable> vars = base.variables();
  LevelSystem ls;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    ls.constants.push_back(vars.size());
    vars.push_back(Variable{"$c" + std::to_string(i + 1), VarKind::Constant});
  }
  Polynomial den_lcm = Polynomial::constant(sys.registry(), 1);
  for (const auto& h : hs) {
    const Polynomial& d = h.denominator();
    if (d.is_constant()) continue;
    den_lcm = divide_exact(den_lcm * d, gcd(den_lcm, d)).value();
  }
  if (!den_lcm.is_constant()) {
    ls.saturation = vars.size();
    vars.push_back(Variable{"$z", VarKind::Fiber});
  }
  ls.reg = make_registry(std::move(vars));
  std::vector<std::size_t> map(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) map[i] = i;
  for (const auto& g : sys.ideal().generators) ls.gens.push_back(g.embed(ls.reg, map));
  for (std::size_t i = 0; i < hs.size(); ++i)
    ls.gens.push_back(hs[i].numerator().embed(ls.reg, map) -
                      Polynomial::variable(ls.reg, ls.constants[i]) * hs[i].denominator().embed(ls.reg, map));
  if (ls.saturation)
    ls.gens.push_back(Polynomial::variable(ls.reg, *ls.saturation) * den_lcm.embed(ls.reg, map) -
                      Polynomial::constant(ls.reg, 1));
  return ls;
}

std::vector<std::vector<RationalFunction>> jacobian(const std::vector<RationalFunction>& rows,
                                                    const std::vector<std::size_t>& cols) {
  std::vector<std::vector<RationalFunction>> j;
  for (const auto& f : rows) {
    std::vector<RationalFunction> row;
    for (auto c : cols) row.push_back(f.derivative(c));
    j.push_back(std::move(row));
  }
  return j;
}

}  // namespace

FirstIntegral verify_first_integral(const RationalFunction& h, const Fibration& sys, Provenance provenance) {
  FirstIntegral fi;
  fi.h = h;
  fi.provenance = provenance;
  fi.residual = lie_derivative(h, sys);
  fi.verified = fi.residual.is_zero();
  fi.excluded_locus = sys.variety.excluded_locus;
  add_unique(fi.excluded_locus, h.denominator());
  return fi;
}

std::vector<FirstIntegral> search_polynomial_integrals(const Fibration& sys, int degree) {
  const DVariety& v = sys.variety;
  const auto basis = ansatz_monomials(v, degree, false);
  std::vector<Polynomial> images;
  for (const auto& m : basis) images.push_back(reduce_on(v, scaled_derivation(Polynomial::monomial(v.registry, m), v)));
  std::vector<RationalFunction> hs;
  for (const auto& row : linear_relations(images)) hs.emplace_back(combine(v.registry, basis, row));
  return verified(sys, hs, Provenance::PolynomialSearch);
}

std::vector<FirstIntegral> search_rational_integrals(const Fibration& sys, const Polynomial& denominator,
                                                     int num_degree) {
  const DVariety& v = sys.variety;
  require_defined(denominator, v);
  const Polynomial q = reduce_on(v, denominator);
  const Polynomial lq = scaled_derivation(q, v);
  const auto basis = ansatz_monomials(v, num_degree, true);
  std::vector<Polynomial> images;
  for (const auto& m : basis) {
    Polynomial mp = Polynomial::monomial(v.registry, m);
    images.push_back(reduce_on(v, q * scaled_derivation(mp, v) - mp * lq));
  }
  auto rows = linear_relations(images);

  // Numerators proportional to the denominator give constants; project them out.
  std::vector<BigRational> qvec(basis.size());
  bool representable = true;
  for (const auto& [m, c] : q.terms()) {
    auto it = std::find(basis.begin(), basis.end(), m);
    if (it == basis.end()) {
      representable = false;
      break;
    }
    qvec[it - basis.begin()] = c;
  }
  if (representable && !rows.empty()) {
    std::size_t p = 0;
    while (qvec[p] == 0) ++p;
    for (auto& r : rows) {
      BigRational f = r[p] / qvec[p];
      if (f == 0) continue;
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * qvec[j];
    }
    rows = echelon_rows(std::move(rows));
  }

  std::vector<RationalFunction> hs;
  for (const auto& row : rows) {
    RationalFunction h = normalize_ratfunc(combine(v.registry, basis, row), q);
    if (!h.is_constant()) hs.push_back(std::move(h));
  }
  return verified(sys, hs, Provenance::RationalSearch);
}

IndependenceReport independence_test(const std::vector<RationalFunction>& hs, const ProductSystem& sys) {
  const DVariety& v = sys.system.variety;
  for (const auto& h : hs) require_defined(h.denominator(), v);
  std::vector<RationalFunction> gens;
  for (const auto& g : v.ideal.generators) gens.emplace_back(g);
  std::vector<RationalFunction> all = gens;
  all.insert(all.end(), hs.begin(), hs.end());
  const auto cols = flow_variables(*v.registry);
  IndependenceReport r;
  r.count = hs.size();
  r.base_rank = matrix_rank_mod_ideal(jacobian(gens, cols), v.ideal);
  r.rank = matrix_rank_mod_ideal(jacobian(all, cols), v.ideal);
  r.independent = r.rank == r.base_rank + static_cast<int>(hs.size());
  if (sys.v_vars.empty()) {
    r.w_independent = hs.empty();
  } else {
    r.base_rank_v = matrix_rank_mod_ideal(jacobian(gens, sys.v_vars), v.ideal);
    r.rank_v = matrix_rank_mod_ideal(jacobian(all, sys.v_vars), v.ideal);
    r.w_independent = r.rank_v == r.base_rank_v + static_cast<int>(hs.size());
  }
  return r;
}

IndependenceReport w_independence_test(const std::vector<RationalFunction>& hs, const ProductSystem& sys) {
  return independence_test(hs, sys);
}

int level_set_dimension(const std::vector<RationalFunction>& hs, const ProductSystem& sys, bool restrict_to_v) {
  for (const auto& h : hs) require_defined(h.denominator(), sys.system.variety);
  const LevelSystem ls = level_system(hs, sys);
  std::vector<std::size_t> counted{sys.system.time};
  counted.insert(counted.end(), sys.v_vars.begin(), sys.v_vars.end());
  if (!restrict_to_v) counted.insert(counted.end(), sys.w_vars.begin(), sys.w_vars.end());
  if (ls.saturation) counted.push_back(*ls.saturation);
  const int d = ideal_dimension(make_ideal(*ls.reg, ls.gens), counted);
  if (d == kEmptyDimension) throw Error(ErrorCode::InconsistentIdeal, "the level-set system has no points");
  return d;
}

FiberDegree generic_fiber_degree(const std::vector<RationalFunction>& hs, const ProductSystem& sys) {
  const DVariety& v = sys.system.variety;
  for (const auto& h : hs) {
    require_defined(h.denominator(), v);
    if (normal_form(h, v.ideal).is_constant()) return {};
  }
  const LevelSystem ls = level_system(hs, sys);
  std::vector<std::size_t> counted = sys.v_vars;
  if (ls.saturation) counted.push_back(*ls.saturation);
  const QuotientDimension q = quotient_dimension(make_ideal(*ls.reg, ls.gens), counted);
  if (q.unit_ideal || !q.zero_dimensional) return {};
  return {true, q.dimension};
}

std::string IntegrabilityReport::verdict_label() const {
  switch (verdict) {
    case Verdict::Internal:
      return "internal";
    case Verdict::AlmostInternal:
      return "almost_internal";
    case Verdict::NotDetermined:
      break;
  }
  return "not_determined_at_degree_" + std::to_string(degree_bound);
}

namespace {

// Products of Darboux polynomials with total degree <= max_degree.
std::vector<Polynomial> darboux_products(const std::vector<DarbouxPolynomial>& ds, int max_degree) {
  std::vector<Polynomial> out;
  if (ds.empty()) return out;
  const RegistryPtr reg = ds.front().d.registry();
  auto rec = [&](auto&& self, std::size_t from, const Polynomial& acc, int deg) -> void {
    for (std::size_t i = from; i < ds.size(); ++i) {
      const int nd = deg + ds[i].d.degree();
      if (nd > max_degree) continue;
      Polynomial p = acc * ds[i].d;
      add_unique(out, p);
      self(self, i, p, nd);
    }
  };
  rec(rec, 0, Polynomial::constant(reg, 1), 0);
  return out;
}

}  // namespace

IntegrabilityReport integrability_report(const ProductSystem& sys, const ReportOptions& options) {
  const Fibration& fib = sys.system;
  const DVariety& v = fib.variety;
  IntegrabilityReport rep;
  rep.degree_bound = options.degree;
  rep.v_dimension = ideal_dimension(v.ideal, sys.v_vars);

  // Scalar multiples of a candidate add nothing.
  auto add_found = [&](FirstIntegral fi) {
    for (const auto& f : rep.found)
      if ((fi.h / f.h).is_constant()) return;
    rep.found.push_back(std::move(fi));
  };
  for (const auto& h : options.user_integrals) {
    FirstIntegral fi = verify_first_integral(h, fib, Provenance::User);
    rep.user.push_back(fi);
    if (fi.verified && !normal_form(h, v.ideal).is_constant()) add_found(std::move(fi));
  }
  for (auto& fi : search_polynomial_integrals(fib, options.degree)) add_found(std::move(fi));

  for (const auto& q : options.denominators) add_unique(rep.denominators_tried, q);
  if (options.darboux_degree > 0) {
    DarbouxResult dr = darboux_polynomials(fib, options.darboux_degree);
    rep.darboux = dr.polynomials;
    rep.darboux_complete = dr.complete;
    for (const auto& q : darboux_products(dr.polynomials, options.degree)) add_unique(rep.denominators_tried, q);
  }
  for (const auto& q : rep.denominators_tried) {
    if (reduce_on(v, q).is_zero()) continue;
    for (auto& fi : search_rational_integrals(fib, q, options.degree)) add_found(std::move(fi));
  }

  // Greedy maximal W-independent subset in candidate order.
  const std::size_t n = rep.v_dimension < 0 ? 0 : static_cast<std::size_t>(rep.v_dimension);
  std::vector<RationalFunction> chosen;
  for (std::size_t i = 0; i < rep.found.size() && chosen.size() < n; ++i) {
    chosen.push_back(rep.found[i].h);
    if (w_independence_test(chosen, sys).w_independent)
      rep.selected.push_back(i);
    else
      chosen.pop_back();
  }
  rep.independence = independence_test(chosen, sys);

  rep.excluded_locus = v.excluded_locus;
  for (const auto& h : chosen) add_unique(rep.excluded_locus, h.denominator());

  if (chosen.size() == n && rep.v_dimension >= 0) {
    rep.fiber_degree = generic_fiber_degree(chosen, sys);
    if (rep.fiber_degree->finite && rep.fiber_degree->degree == 1)
      rep.verdict = Verdict::Internal;
    else if (rep.fiber_degree->finite && rep.fiber_degree->degree > 1)
      rep.verdict = Verdict::AlmostInternal;
  }
  return rep;
}

}  // namespace dvint
