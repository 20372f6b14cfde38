#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dvint/polynomial.hpp"
#include "dvint/ratfunc.hpp"

namespace dvint {

struct IdealBasis {
  std::vector<Polynomial> generators;
  MonomialOrder order;
  bool groebner = false;
};

/// Generators with the registry's standard order, not yet a Gröbner basis.
IdealBasis make_ideal(const VariableRegistry& reg, std::vector<Polynomial> gens);

/// Reduced Gröbner basis (monic, sorted by descending leading monomial).
IdealBasis groebner_basis(const IdealBasis& gens);
IdealBasis groebner_basis(const IdealBasis& gens, const MonomialOrder& order);

/// Remainder of multivariate division; requires a Gröbner basis.
Polynomial reduce(const Polynomial& p, const IdealBasis& basis);
bool ideal_contains(const IdealBasis& basis, const Polynomial& p);

/// Numerator reduced modulo the ideal; throws DenominatorVanishesOnVariety.
RationalFunction normal_form(const RationalFunction& f, const IdealBasis& basis);

inline constexpr int kEmptyDimension = -1;

/// Krull dimension counting only `counted` variables; the rest act as field
/// elements. Returns kEmptyDimension when 1 is in the ideal.
int ideal_dimension(const IdealBasis& basis, const std::vector<std::size_t>& counted);

struct QuotientDimension {
  bool unit_ideal = false;
  bool zero_dimensional = false;
  std::size_t dimension = 0;  // number of standard monomials when zero-dimensional
};

/// Vector-space dimension of K(others)[counted] / I.
QuotientDimension quotient_dimension(const IdealBasis& basis, const std::vector<std::size_t>& counted);

/// Rank over the fraction field of the coordinate ring (ideal assumed prime).
int matrix_rank_mod_ideal(const std::vector<std::vector<RationalFunction>>& m, const IdealBasis& basis);

/// Monomials of `candidates` not divisible by any leading monomial of the basis.
std::vector<Monomial> standard_monomials(const IdealBasis& basis, const std::vector<Monomial>& candidates);

}  // namespace dvint
