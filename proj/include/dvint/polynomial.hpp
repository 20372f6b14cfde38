#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dvint {

using BigInt = mpz_class;
using BigRational = mpq_class;

enum class VarKind {
  Time,      // the distinguished derivation variable t
  Fiber,     // coordinates of V
  Aux,       // coordinates of the auxiliary variety W
  Param,     // constant parameters (derivative 0)
  Constant,  // adjoined generic constants c_i
};

const char* var_kind_name(VarKind kind) noexcept;

struct Variable {
  std::string name;
  VarKind kind = VarKind::Fiber;

  bool operator==(const Variable&) const = default;
};

/// Ordered, immutable list of variable names with their roles.
class VariableRegistry {
 public:
  VariableRegistry() = default;
  explicit VariableRegistry(std::vector<Variable> vars);

  std::size_t size() const noexcept { return vars_.size(); }
  const Variable& operator[](std::size_t i) const { return vars_[i]; }
  const std::vector<Variable>& variables() const noexcept { return vars_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws UnknownVariable.
  std::size_t index_of(std::string_view name) const;
  std::optional<std::size_t> time() const;
  std::vector<std::size_t> of_kind(VarKind kind) const;

  bool operator==(const VariableRegistry& other) const { return vars_ == other.vars_; }

 private:
  std::vector<Variable> vars_;
};

using RegistryPtr = std::shared_ptr<const VariableRegistry>;

RegistryPtr make_registry(std::vector<Variable> vars);

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exp_(nvars, 0) {}
  explicit Monomial(std::vector<int> exps) : exp_(std::move(exps)) {}

  std::size_t size() const noexcept { return exp_.size(); }
  int operator[](std::size_t i) const { return exp_[i]; }
  int& operator[](std::size_t i) { return exp_[i]; }
  const std::vector<int>& exponents() const noexcept { return exp_; }

  int degree() const;
  bool is_one() const;
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other) by this; returns other / this.
  Monomial quotient_of(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<int> exp_;
};

/// Block order: smaller block index dominates; degree reverse lexicographic
/// inside each block, variables ranked by registry position.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  explicit MonomialOrder(std::vector<int> blocks);

  /// Coordinates (fiber, auxiliary) in block 0; everything else in block 1.
  static MonomialOrder standard(const VariableRegistry& reg);
  /// Variables in `leading` form block 0; every other variable block 1.
  static MonomialOrder eliminating(std::size_t nvars, const std::vector<std::size_t>& leading);

  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
  const std::vector<int>& blocks() const noexcept { return blocks_; }

  bool operator==(const MonomialOrder&) const = default;

 private:
  std::vector<int> blocks_;
  int nblocks_ = 0;
};

/// Sparse multivariate polynomial over the rationals.
class Polynomial {
 public:
  using Terms = std::map<Monomial, BigRational>;

  Polynomial() = default;
  explicit Polynomial(RegistryPtr reg) : reg_(std::move(reg)) {}
  Polynomial(RegistryPtr reg, Terms terms);

  static Polynomial constant(RegistryPtr reg, const BigRational& c);
  static Polynomial variable(RegistryPtr reg, std::size_t index);
  static Polynomial monomial(RegistryPtr reg, Monomial m, const BigRational& c = 1);

  const RegistryPtr& registry() const noexcept { return reg_; }
  std::size_t nvars() const noexcept { return reg_ ? reg_->size() : 0; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (0 if absent).
  BigRational constant_term() const;
  BigRational coefficient(const Monomial& m) const;

  int degree() const;
  int degree_in(std::size_t var) const;
  bool mentions(std::size_t var) const;
  std::vector<std::size_t> support() const;

  std::pair<Monomial, BigRational> leading_term(const MonomialOrder& order) const;
  /// Terms sorted descending under `order`.
  std::vector<std::pair<Monomial, BigRational>> sorted_terms(const MonomialOrder& order) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const BigRational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const BigRational& c) { return a *= c; }
  friend Polynomial operator*(const BigRational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial pow(unsigned e) const;
  Polynomial mul_monomial(const Monomial& m, const BigRational& c) const;

  Polynomial derivative(std::size_t var) const;
  /// Coefficient of var^k, as a polynomial in the remaining variables.
  Polynomial coefficient_in(std::size_t var, int k) const;
  Polynomial substitute(std::size_t var, const Polynomial& value) const;

  /// Rational content: gcd of numerators over lcm of denominators, positive.
  BigRational content() const;
  /// Integer coefficients with gcd 1 (sign kept).
  Polynomial primitive() const;

  /// Re-express over `target`; `map[i]` is the target index of variable i.
  Polynomial embed(RegistryPtr target, const std::vector<std::size_t>& map) const;

  double evaluate(std::span<const double> point) const;
  BigRational evaluate(std::span<const BigRational> point) const;

  bool operator==(const Polynomial& other) const;

 private:
  void check_compatible(const Polynomial& other) const;
  void add_term(const Monomial& m, const BigRational& c);

  RegistryPtr reg_;
  Terms terms_;
};

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

/// Greatest common divisor, primitive with integer coefficients; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// All monomials in `vars` of total degree <= degree, over `nvars` variables.
std::vector<Monomial> monomials_up_to(std::size_t nvars, const std::vector<std::size_t>& vars, int degree);

std::string to_string(const BigRational& q);
std::string to_string(const Polynomial& p);

}  // namespace dvint
