#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dvint/ideal.hpp"
#include "dvint/parser.hpp"
#include "dvint/ratfunc.hpp"

namespace dvint {

/// A variety with a rational section of its shifted tangent bundle.
///
/// `section[i]` is the derivative assigned to variable i: 1 for the time
/// variable, 0 for parameters and adjoined constants. The section is also
/// cached over a common denominator so that derivations of polynomials stay
/// polynomial: s_i = section_numerators[i] / section_denominator.
struct DVariety {
  RegistryPtr registry;
  IdealBasis ideal;  // reduced Gröbner basis, standard order
  std::vector<RationalFunction> section;
  std::vector<Polynomial> excluded_locus;
  bool irreducible = true;

  Polynomial section_denominator;
  std::vector<Polynomial> section_numerators;

  std::vector<std::size_t> state_variables() const;  // fiber and auxiliary
};

/// DVariety over a time base: section(t) = 1.
struct Fibration {
  DVariety variety;
  std::size_t time = 0;

  const RegistryPtr& registry() const noexcept { return variety.registry; }
  const IdealBasis& ideal() const noexcept { return variety.ideal; }
};

/// Fibered product W x_S V; w_vars are the auxiliary coordinates, v_vars the
/// coordinates of V.
struct ProductSystem {
  Fibration system;
  std::vector<std::size_t> w_vars;
  std::vector<std::size_t> v_vars;

  const RegistryPtr& registry() const noexcept { return system.registry(); }
  const IdealBasis& ideal() const noexcept { return system.ideal(); }
};

/// Builds the cached section data and Gröbner basis. The time entry is set
/// to 1 and every non-coordinate entry to 0. Throws
/// DenominatorVanishesOnVariety.
DVariety make_dvariety(RegistryPtr reg, std::vector<Polynomial> generators, std::vector<RationalFunction> section,
                       std::vector<Polynomial> excluded_locus, bool irreducible = true);

/// Requires a time variable in the registry.
Fibration make_fibration(DVariety v);

/// Splits auxiliary-kind variables into w, fiber-kind into v.
ProductSystem as_product(Fibration f);

/// Order reduction y_i' = y_{i+1}, y_{n-1}' = rhs. Throws MalformedRHS.
Fibration compile_explicit_ode(const ProblemSpec& spec);

/// One total differentiation of F, solved for the new top derivative.
/// Throws DegenerateLeadingDerivative, NotSolvable.
Fibration compile_implicit_ode(const ProblemSpec& spec);

/// The auxiliary system W declared by `aux:` rules (possibly without coordinates).
Fibration compile_aux(const ProblemSpec& spec);

/// Whole problem: W x V for ODE modes, the declared variety for dvariety mode.
ProductSystem compile_problem(const ProblemSpec& spec);

/// Same section over the ambient affine space (ideal dropped).
Fibration ambient(const Fibration& f);

/// normal_form(sum_i dP/dx_i * s_i + P^∂, ideal).
RationalFunction shifted_tangent_residual(const Polynomial& p, const DVariety& v);

struct SectionReport {
  struct Entry {
    Polynomial generator;
    RationalFunction residual;
  };
  bool pass = true;
  std::vector<Entry> residuals;
};

SectionReport verify_section(const DVariety& v);

/// Disjoint union of coordinates over the shared time base; V's colliding
/// names get a numeric suffix. Parameters with equal names are identified.
ProductSystem fibered_product(const Fibration& w, const Fibration& v);

/// normal_form(dh/dt + sum_i s_i dh/dx_i, ideal). Throws DenominatorVanishesOnVariety.
RationalFunction lie_derivative(const RationalFunction& h, const DVariety& v);
inline RationalFunction lie_derivative(const RationalFunction& h, const Fibration& f) {
  return lie_derivative(h, f.variety);
}
inline RationalFunction lie_derivative(const RationalFunction& h, const ProductSystem& p) {
  return lie_derivative(h, p.system.variety);
}

/// sum_i a_i dP/dx_i where s_i = a_i / S; the derivation of P times S.
Polynomial scaled_derivation(const Polynomial& p, const DVariety& v);

}  // namespace dvint
