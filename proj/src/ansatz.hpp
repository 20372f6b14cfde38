#pragma once

// Helpers shared by the integral and Darboux searches.

#include <cstddef>
#include <vector>

#include "dvint/dvariety.hpp"
#include "dvint/linalg.hpp"

namespace dvint::detail {

/// t followed by the fiber and auxiliary variables, in registry order.
std::vector<std::size_t> flow_variables(const VariableRegistry& reg);

/// Standard monomials of degree <= degree in the flow variables, sorted
/// descending in the variety's order.
std::vector<Monomial> ansatz_monomials(const DVariety& v, int degree, bool with_one);

/// Coefficient vectors c with sum_j c_j images[j] = 0, reduced echelon.
std::vector<std::vector<BigRational>> linear_relations(const std::vector<Polynomial>& images);

Polynomial combine(const RegistryPtr& reg, const std::vector<Monomial>& basis, const std::vector<BigRational>& coeffs);

/// Reduction modulo the variety's ideal (identity for the empty ideal).
Polynomial reduce_on(const DVariety& v, const Polynomial& p);

}  // namespace dvint::detail
