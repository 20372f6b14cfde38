#include "dvint/ratfunc.hpp"

#include "dvint/errors.hpp"

namespace dvint {

RationalFunction::RationalFunction(Polynomial p) : num_(std::move(p)), den_(Polynomial::constant(num_.registry(), 1)) {}

RationalFunction RationalFunction::constant(RegistryPtr reg, const BigRational& c) {
  return RationalFunction(Polynomial::constant(std::move(reg), c));
}

RationalFunction normalize_ratfunc(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroDenominator, "zero denominator");
  if (!num.registry()) num = Polynomial(den.registry());
  RationalFunction f;
  const auto reg = den.registry();
  if (num.is_zero()) {
    f.num_ = Polynomial(reg);
    f.den_ = Polynomial::constant(reg, 1);
    return f;
  }
  if (den.is_constant()) {
    f.num_ = num * (BigRational(1) / den.constant_term());
    f.den_ = Polynomial::constant(reg, 1);
    return f;
  }
  Polynomial g = gcd(num, den);
  if (!g.is_constant()) {
    num = divide_exact(num, g).value();
    den = divide_exact(den, g).value();
  }
  if (den.is_constant()) {
    f.num_ = num * (BigRational(1) / den.constant_term());
    f.den_ = Polynomial::constant(reg, 1);
    return f;
  }
  BigRational scale = den.content();
  if (den.leading_term(MonomialOrder::standard(*reg)).second < 0) scale = -scale;
  const BigRational inv = BigRational(1) / scale;
  f.num_ = num * inv;
  f.den_ = den * inv;
  return f;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r(*this);
  r.num_ = -r.num_;
  return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return normalize_ratfunc(a.num_ + b.num_, a.den_);
  return normalize_ratfunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return normalize_ratfunc(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by zero rational function");
  return normalize_ratfunc(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::pow(unsigned e) const { return normalize_ratfunc(num_.pow(e), den_.pow(e)); }

RationalFunction RationalFunction::derivative(std::size_t var) const {
  if (den_.is_constant()) return RationalFunction(num_.derivative(var) * (BigRational(1) / den_.constant_term()));
  return normalize_ratfunc(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RationalFunction RationalFunction::embed(RegistryPtr target, const std::vector<std::size_t>& map) const {
  return normalize_ratfunc(num_.embed(target, map), den_.embed(target, map));
}

double RationalFunction::evaluate(std::span<const double> point) const {
  return num_.evaluate(point) / den_.evaluate(point);
}

RationalFunction partial_derivative(const RationalFunction& f, std::size_t var) {
  if (!f.registry() || var >= f.registry()->size())
    throw Error(ErrorCode::UnknownVariable, "partial derivative in an unregistered variable");
  return f.derivative(var);
}

Polynomial coefficient_derivation(const Polynomial& p) {
  if (!p.registry()) return p;
  auto t = p.registry()->time();
  if (!t) return Polynomial(p.registry());
  return p.derivative(*t);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool needs_parens(const Polynomial& p) { return p.term_count() > 1; }

std::string factor_text(const Polynomial& den) {
  // Single monomial with coefficient 1 here (canonical denominators).
  std::string s = to_string(den);
  if (den.term_count() > 1 || s.find('*') != std::string::npos) return '(' + s + ')';
  return s;
}

}  // namespace

std::string to_string(const RationalFunction& f) {
  const Polynomial& num = f.numerator();
  const Polynomial& den = f.denominator();
  if (den.is_constant()) return to_string(num);
  const auto& reg = f.registry();

  if (den.term_count() == 1) {
    const Monomial& dm = den.terms().begin()->first;
    Polynomial whole(reg), rest(reg);
    for (const auto& [m, c] : num.terms()) {
      if (dm.divides(m))
        whole += Polynomial::monomial(reg, dm.quotient_of(m), c);
      else
        rest += Polynomial::monomial(reg, m, c);
    }
    std::string out = whole.is_zero() ? "" : to_string(whole);
    if (rest.is_zero()) return out;
    std::string frac;
    bool negative = false;
    if (rest.term_count() == 1) {
      const auto& [m, c] = *rest.terms().begin();
      negative = c < 0;
      std::string mag = to_string(Polynomial::monomial(reg, m, abs(c)));
      frac = mag + '/' + factor_text(den);
    } else {
      frac = '(' + to_string(rest) + ")/" + factor_text(den);
    }
    if (out.empty()) return (negative ? "-" : "") + frac;
    return out + (negative ? " - " : " + ") + frac;
  }

  std::string n = to_string(num);
  if (needs_parens(num)) n = '(' + n + ')';
  return n + "/(" + to_string(den) + ')';
}

}  // namespace dvint
