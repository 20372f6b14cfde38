#pragma once

#include <span>
#include <string>

#include "dvint/polynomial.hpp"

namespace dvint {

/// Canonical quotient of polynomials: gcd removed, denominator primitive over
/// the integers with positive leading coefficient under the standard order.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(Polynomial p);
  static RationalFunction constant(RegistryPtr reg, const BigRational& c);

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }
  const RegistryPtr& registry() const noexcept { return num_.registry(); }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool mentions(std::size_t var) const { return num_.mentions(var) || den_.mentions(var); }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction pow(unsigned e) const;

  RationalFunction derivative(std::size_t var) const;
  RationalFunction embed(RegistryPtr target, const std::vector<std::size_t>& map) const;

  double evaluate(std::span<const double> point) const;

  bool operator==(const RationalFunction& other) const { return num_ == other.num_ && den_ == other.den_; }

 private:
  friend RationalFunction normalize_ratfunc(Polynomial num, Polynomial den);
  Polynomial num_;
  Polynomial den_;
};

/// Throws ZeroDenominator when den is zero.
RationalFunction normalize_ratfunc(Polynomial num, Polynomial den);

/// Partial derivative; throws UnknownVariable for an out-of-range index.
RationalFunction partial_derivative(const RationalFunction& f, std::size_t var);

/// P^∂: coefficients live in Q(t) with t explicit, so this is d/dt (0 without t).
Polynomial coefficient_derivation(const Polynomial& p);

std::string to_string(const RationalFunction& f);

}  // namespace dvint
