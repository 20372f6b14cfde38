#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dvint/dvariety.hpp"

namespace dvint {

enum class Provenance { User, PolynomialSearch, RationalSearch };

const char* provenance_name(Provenance p) noexcept;

struct FirstIntegral {
  RationalFunction h;
  bool verified = false;
  RationalFunction residual;  // lie derivative modulo the ideal
  std::vector<Polynomial> excluded_locus;
  Provenance provenance = Provenance::User;
};

/// Throws DenominatorVanishesOnVariety.
FirstIntegral verify_first_integral(const RationalFunction& h, const Fibration& sys,
                                    Provenance provenance = Provenance::User);
inline FirstIntegral verify_first_integral(const RationalFunction& h, const ProductSystem& sys,
                                           Provenance provenance = Provenance::User) {
  return verify_first_integral(h, sys.system, provenance);
}

/// Polynomial integrals in t and the state variables of total degree <= degree.
/// Constants are dropped; the basis is echelon-normalized with monomials in
/// descending standard order.
std::vector<FirstIntegral> search_polynomial_integrals(const Fibration& sys, int degree);

/// Integrals P / denominator with deg P <= num_degree, constants dropped.
/// Throws DenominatorVanishesOnVariety.
std::vector<FirstIntegral> search_rational_integrals(const Fibration& sys, const Polynomial& denominator,
                                                     int num_degree);

struct DarbouxPolynomial {
  Polynomial d;
  RationalFunction cofactor;  // lie_derivative(d) = cofactor * d modulo the ideal
};

struct DarbouxResult {
  std::vector<DarbouxPolynomial> polynomials;
  /// False when some cofactor family was not zero-dimensional or had
  /// irrational values, so the list may miss solutions.
  bool complete = true;
};

/// Nonconstant D of degree <= degree with L(D) = K D modulo the ideal.
DarbouxResult darboux_polynomials(const Fibration& sys, int degree);

struct IndependenceReport {
  std::size_t count = 0;
  int base_rank = 0;    // Jacobian of the ideal, all directions
  int rank = 0;         // with the integrals appended
  int base_rank_v = 0;  // v-directions only
  int rank_v = 0;
  bool independent = true;
  bool w_independent = true;
};

/// Fills both verdicts; columns are t and the state variables.
IndependenceReport independence_test(const std::vector<RationalFunction>& hs, const ProductSystem& sys);
/// Same report; the w verdict uses only the v columns.
IndependenceReport w_independence_test(const std::vector<RationalFunction>& hs, const ProductSystem& sys);

/// Dimension of the common level set of `hs` at generic constant values,
/// counting t, v and (unless restrict_to_v) w. Throws InconsistentIdeal.
int level_set_dimension(const std::vector<RationalFunction>& hs, const ProductSystem& sys, bool restrict_to_v);

struct FiberDegree {
  bool finite = false;
  std::size_t degree = 0;

  std::string label() const { return finite ? std::to_string(degree) : "infinite"; }
};

/// Number of v-points, with multiplicity, over generic values of `hs` with t
/// and w held generic.
FiberDegree generic_fiber_degree(const std::vector<RationalFunction>& hs, const ProductSystem& sys);

enum class Verdict { Internal, AlmostInternal, NotDetermined };

struct ReportOptions {
  int degree = 4;
  std::vector<Polynomial> denominators;  // user proposals, searched first
  std::vector<RationalFunction> user_integrals;
  int darboux_degree = 1;  // 0 disables Darboux proposals
};

struct IntegrabilityReport {
  int degree_bound = 0;
  int v_dimension = 0;
  std::vector<FirstIntegral> user;    // as supplied, verified or not
  std::vector<FirstIntegral> found;   // verified candidates, deduplicated
  std::vector<std::size_t> selected;  // indices into `found`
  std::vector<Polynomial> denominators_tried;
  std::vector<DarbouxPolynomial> darboux;
  bool darboux_complete = true;
  IndependenceReport independence;
  std::optional<FiberDegree> fiber_degree;  // unset when fewer than n integrals
  Verdict verdict = Verdict::NotDetermined;
  std::vector<Polynomial> excluded_locus;

  std::string verdict_label() const;
};

IntegrabilityReport integrability_report(const ProductSystem& sys, const ReportOptions& options);

}  // namespace dvint
