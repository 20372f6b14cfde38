#include "dvint/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "dvint/errors.hpp"

namespace dvint {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Syntax:
      return "SyntaxError";
    case ErrorCode::UnknownVariable:
      return "UnknownVariable";
    case ErrorCode::DuplicateVariable:
      return "DuplicateVariable";
    case ErrorCode::MissingSection:
      return "MissingSection";
    case ErrorCode::ZeroDenominator:
      return "ZeroDenominator";
    case ErrorCode::DenominatorVanishesOnVariety:
      return "DenominatorVanishesOnVariety";
    case ErrorCode::InconsistentIdeal:
      return "InconsistentIdeal";
    case ErrorCode::RegistryMismatch:
      return "RegistryMismatch";
    case ErrorCode::MalformedRHS:
      return "MalformedRHS";
    case ErrorCode::DegenerateLeadingDerivative:
      return "DegenerateLeadingDerivative";
    case ErrorCode::NotSolvable:
      return "NotSolvable";
    case ErrorCode::InitialConditionOffVariety:
      return "InitialConditionOffVariety";
    case ErrorCode::PoleEncountered:
      return "PoleEncountered";
    case ErrorCode::DenominatorNearZeroOnTrajectory:
      return "DenominatorNearZeroOnTrajectory";
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::Io:
      return "IoError";
  }
  return "Error";
}

const char* var_kind_name(VarKind kind) noexcept {
  switch (kind) {
    case VarKind::Time:
      return "time";
    case VarKind::Fiber:
      return "fiber";
    case VarKind::Aux:
      return "aux";
    case VarKind::Param:
      return "param";
    case VarKind::Constant:
      return "constant";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// VariableRegistry

VariableRegistry::VariableRegistry(std::vector<Variable> vars) : vars_(std::move(vars)) {
  std::set<std::string> seen;
  bool have_time = false;
  for (const auto& v : vars_) {
    if (v.name.empty()) throw Error(ErrorCode::InvalidArgument, "empty variable name");
    if (!seen.insert(v.name).second) throw Error(ErrorCode::DuplicateVariable, "duplicate variable '" + v.name + "'");
    if (v.kind == VarKind::Time) {
      if (have_time) throw Error(ErrorCode::InvalidArgument, "more than one time variable");
      have_time = true;
    }
  }
}

std::optional<std::size_t> VariableRegistry::find(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  return std::nullopt;
}

std::size_t VariableRegistry::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorCode::UnknownVariable, "unknown variable '" + std::string(name) + "'");
}

std::optional<std::size_t> VariableRegistry::time() const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].kind == VarKind::Time) return i;
  return std::nullopt;
}

std::vector<std::size_t> VariableRegistry::of_kind(VarKind kind) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].kind == kind) out.push_back(i);
  return out;
}

RegistryPtr make_registry(std::vector<Variable> vars) {
  return std::make_shared<const VariableRegistry>(std::move(vars));
}

// ---------------------------------------------------------------------------
// Monomial

int Monomial::degree() const { return std::accumulate(exp_.begin(), exp_.end(), 0); }

bool Monomial::is_one() const {
  return std::all_of(exp_.begin(), exp_.end(), [](int e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exp_.size(); ++i)
    if (exp_[i] > other.exp_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exp_.size(); ++i) r.exp_[i] += other.exp_[i];
  return r;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial r(other);
  for (std::size_t i = 0; i < exp_.size(); ++i) r.exp_[i] -= exp_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exp_.size(); ++i) r.exp_[i] = std::max(exp_[i], other.exp_[i]);
  return r;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exp_.size(); ++i)
    if (exp_[i] > 0 && other.exp_[i] > 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// MonomialOrder

MonomialOrder::MonomialOrder(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  for (int b : blocks_) nblocks_ = std::max(nblocks_, b + 1);
}

MonomialOrder MonomialOrder::standard(const VariableRegistry& reg) {
  std::vector<int> blocks(reg.size());
  for (std::size_t i = 0; i < reg.size(); ++i) {
    auto k = reg[i].kind;
    blocks[i] = (k == VarKind::Fiber || k == VarKind::Aux) ? 0 : 1;
  }
  return MonomialOrder(std::move(blocks));
}

MonomialOrder MonomialOrder::eliminating(std::size_t nvars, const std::vector<std::size_t>& leading) {
  std::vector<int> blocks(nvars, 1);
  for (auto i : leading) blocks.at(i) = 0;
  return MonomialOrder(std::move(blocks));
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = a.size();
  for (int blk = 0; blk < nblocks_; ++blk) {
    int da = 0, db = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (blocks_[i] != blk) continue;
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = n; i-- > 0;) {
      if (blocks_[i] != blk) continue;
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(RegistryPtr reg, Terms terms) : reg_(std::move(reg)) {
  for (auto& [m, c] : terms)
    if (c != 0) terms_.emplace(m, c);
}

Polynomial Polynomial::constant(RegistryPtr reg, const BigRational& c) {
  Polynomial p(std::move(reg));
  if (c != 0) p.terms_.emplace(Monomial(p.nvars()), c);
  return p;
}

Polynomial Polynomial::variable(RegistryPtr reg, std::size_t index) {
  Polynomial p(std::move(reg));
  if (index >= p.nvars()) throw Error(ErrorCode::UnknownVariable, "variable index out of range");
  Monomial m(p.nvars());
  m[index] = 1;
  p.terms_.emplace(std::move(m), BigRational(1));
  return p;
}

Polynomial Polynomial::monomial(RegistryPtr reg, Monomial m, const BigRational& c) {
  Polynomial p(std::move(reg));
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

BigRational Polynomial::constant_term() const {
  if (terms_.empty()) return 0;
  const auto& [m, c] = *terms_.begin();  // the all-zero exponent is lexicographically smallest
  return m.is_one() ? c : BigRational(0);
}

BigRational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigRational(0) : it->second;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int Polynomial::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

bool Polynomial::mentions(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[var] > 0; });
}

std::vector<std::size_t> Polynomial::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nvars(); ++i)
    if (mentions(i)) out.push_back(i);
  return out;
}

std::pair<Monomial, BigRational> Polynomial::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) return {Monomial(nvars()), BigRational(0)};
  auto best = terms_.begin();
  for (auto it = std::next(best); it != terms_.end(); ++it)
    if (order.greater(it->first, best->first)) best = it;
  return *best;
}

std::vector<std::pair<Monomial, BigRational>> Polynomial::sorted_terms(const MonomialOrder& order) const {
  std::vector<std::pair<Monomial, BigRational>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return order.greater(a.first, b.first); });
  return out;
}

void Polynomial::check_compatible(const Polynomial& other) const {
  if (reg_ == other.reg_) return;
  if (!reg_ || !other.reg_ || !(*reg_ == *other.reg_))
    throw Error(ErrorCode::RegistryMismatch, "polynomials over different variable registries");
}

void Polynomial::add_term(const Monomial& m, const BigRational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (!reg_) reg_ = other.reg_;
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (!reg_) reg_ = other.reg_;
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const BigRational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  Polynomial r(a.reg_ ? a.reg_ : b.reg_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(reg_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::mul_monomial(const Monomial& m, const BigRational& c) const {
  Polynomial r(reg_);
  if (c == 0) return r;
  for (const auto& [mm, cc] : terms_) r.terms_.emplace(mm * m, cc * c);
  return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars()) throw Error(ErrorCode::UnknownVariable, "variable index out of range");
  Polynomial r(reg_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d(m);
    d[var] -= 1;
    r.add_term(d, c * m[var]);
  }
  return r;
}

Polynomial Polynomial::coefficient_in(std::size_t var, int k) const {
  Polynomial r(reg_);
  for (const auto& [m, c] : terms_) {
    if (m[var] != k) continue;
    Monomial d(m);
    d[var] = 0;
    r.terms_.emplace(std::move(d), c);
  }
  return r;
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
  check_compatible(value);
  const int deg = degree_in(var);
  if (deg <= 0) return *this;
  // Horner in `var`.
  Polynomial r = coefficient_in(var, deg);
  for (int k = deg - 1; k >= 0; --k) r = r * value + coefficient_in(var, k);
  return r;
}

BigRational Polynomial::content() const {
  if (terms_.empty()) return 0;
  BigInt num = 0, den = 1;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return *this;
  BigRational c = content();
  Polynomial r(*this);
  for (auto& [m, v] : r.terms_) v /= c;
  return r;
}

Polynomial Polynomial::embed(RegistryPtr target, const std::vector<std::size_t>& map) const {
  Polynomial r(target);
  const std::size_t n = target->size();
  for (const auto& [m, c] : terms_) {
    Monomial mm(n);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      mm[map.at(i)] += m[i];
    }
    r.add_term(mm, c);
  }
  return r;
}

double Polynomial::evaluate(std::span<const double> point) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) term *= std::pow(point[i], m[i]);
    sum += term;
  }
  return sum;
}

BigRational Polynomial::evaluate(std::span<const BigRational> point) const {
  BigRational sum = 0;
  for (const auto& [m, c] : terms_) {
    BigRational term = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int k = 0; k < m[i]; ++k) term *= point[i];
    sum += term;
  }
  return sum;
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (terms_ != other.terms_) return false;
  if (reg_ == other.reg_ || terms_.empty()) return true;
  return reg_ && other.reg_ && *reg_ == *other.reg_;
}

// ---------------------------------------------------------------------------
// Division and gcd

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by the zero polynomial");
  Polynomial q(a.registry() ? a.registry() : b.registry());
  Polynomial r = a;
  // Lexicographic leading terms: the largest map key.
  const auto& [lb, cb] = *b.terms().rbegin();
  while (!r.is_zero()) {
    const auto [lr, cr] = *r.terms().rbegin();
    if (!lb.divides(lr)) return std::nullopt;
    Monomial t = lb.quotient_of(lr);
    BigRational c = cr / cb;
    q += Polynomial::monomial(q.registry(), t, c);
    r -= b.mul_monomial(t, c);
  }
  return q;
}

namespace {

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t x) {
  const int db = b.degree_in(x);
  const Polynomial lcb = b.coefficient_in(x, db);
  Polynomial r = a;
  int dr = r.degree_in(x);
  while (!r.is_zero() && dr >= db) {
    Polynomial lcr = r.coefficient_in(x, dr);
    Monomial shift(r.nvars());
    shift[x] = dr - db;
    r = lcb * r - lcr * b.mul_monomial(shift, 1);
    dr = r.degree_in(x);
  }
  return r;
}

Polynomial gcd_rec(const Polynomial& a_in, const Polynomial& b_in);

Polynomial content_in(const Polynomial& p, std::size_t x) {
  const int d = p.degree_in(x);
  Polynomial g(p.registry());
  for (int k = d; k >= 0; --k) {
    Polynomial c = p.coefficient_in(x, k);
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.primitive() : gcd_rec(g, c);
    if (g.is_constant()) return Polynomial::constant(p.registry(), 1);
  }
  return g;
}

Polynomial primitive_in(const Polynomial& p, std::size_t x) {
  Polynomial c = content_in(p, x);
  if (c.is_constant()) return p.primitive();
  return divide_exact(p, c).value().primitive();
}

Polynomial gcd_rec(const Polynomial& a_in, const Polynomial& b_in) {
  const auto& reg = a_in.registry();
  if (a_in.is_zero()) return b_in.primitive();
  if (b_in.is_zero()) return a_in.primitive();
  if (a_in.is_constant() || b_in.is_constant()) return Polynomial::constant(reg, 1);
  Polynomial a = a_in.primitive();
  Polynomial b = b_in.primitive();
  if (a == b || a == -b) return a;

  const std::size_t n = a.nvars();
  // A variable present in only one argument: the gcd divides its coefficients.
  for (std::size_t x = 0; x < n; ++x) {
    const bool in_a = a.mentions(x), in_b = b.mentions(x);
    if (in_a == in_b) continue;
    const Polynomial& with = in_a ? a : b;
    Polynomial g = in_a ? b : a;
    for (int k = with.degree_in(x); k >= 0; --k) {
      Polynomial c = with.coefficient_in(x, k);
      if (c.is_zero()) continue;
      g = gcd_rec(g, c);
      if (g.is_constant()) return g;
    }
    return g;
  }

  // Same support: pick the variable of smallest maximal degree as main variable.
  std::size_t x = n;
  int best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!a.mentions(i)) continue;
    int d = std::max(a.degree_in(i), b.degree_in(i));
    if (x == n || d < best) {
      x = i;
      best = d;
    }
  }

  Polynomial ca = content_in(a, x), cb = content_in(b, x);
  Polynomial c = gcd_rec(ca, cb);
  Polynomial pa = ca.is_constant() ? a : divide_exact(a, ca).value();
  Polynomial pb = cb.is_constant() ? b : divide_exact(b, cb).value();
  if (pa.degree_in(x) < pb.degree_in(x)) std::swap(pa, pb);
  while (true) {
    Polynomial r = pseudo_remainder(pa, pb, x);
    if (r.is_zero()) break;
    if (r.degree_in(x) <= 0) {
      pb = Polynomial::constant(reg, 1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, x);
  }
  Polynomial g = pb.is_constant() ? Polynomial::constant(reg, 1) : primitive_in(pb, x);
  return (g * c).primitive();
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.registry() && b.registry() && a.registry() != b.registry() && !(*a.registry() == *b.registry()))
    throw Error(ErrorCode::RegistryMismatch, "gcd over different registries");
  if (a.is_zero() && b.is_zero()) return a;
  Polynomial g = gcd_rec(a, b);
  if (g.is_zero()) return g;
  const auto order = MonomialOrder::standard(*g.registry());
  if (g.leading_term(order).second < 0) g = -g;
  return g;
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, const std::vector<std::size_t>& vars, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  Monomial cur(nvars);
  // Depth-first over the variables in `vars`.
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos == vars.size()) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[vars[pos]] = e;
      self(self, pos + 1, left - e);
    }
    cur[vars[pos]] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const BigRational& q) { return q.get_str(); }

namespace {

std::string monomial_text(const VariableRegistry& reg, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += reg[i].name;
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

}  // namespace

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  const auto& reg = *p.registry();
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.sorted_terms(MonomialOrder::standard(reg))) {
    const bool neg = c < 0;
    const BigRational mag = abs(c);
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += monomial_text(reg, m);
    } else {
      out += to_string(mag) + '*' + monomial_text(reg, m);
    }
  }
  return out;
}

}  // namespace dvint
