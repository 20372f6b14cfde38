#include <algorithm>
#include <map>

#include "ansatz.hpp"
#include "dvint/errors.hpp"
#include "dvint/integrals.hpp"

namespace dvint {

using namespace detail;

namespace {

// Divisors of |n| by trial division; nullopt when n is too large to bother.
std::optional<std::vector<BigInt>> divisors(const BigInt& n_in) {
  BigInt n = abs(n_in);
  if (n > BigInt("1000000000000")) return std::nullopt;
  std::vector<BigInt> small, large;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

struct Roots {
  std::vector<BigRational> values;
  bool complete = true;  // false when an irreducible factor of degree > 1 remains
};

// Rational roots of a univariate polynomial given by coefficients c[k] of x^k.
Roots rational_roots(std::vector<BigRational> c) {
  Roots out;
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.size() <= 1) return out;
  if (c.front() == 0) {
    out.values.push_back(0);
    std::size_t z = 0;
    while (c[z] == 0) ++z;
    c.erase(c.begin(), c.begin() + z);
  }
  // Clear denominators.
  BigInt l = 1;
  for (const auto& q : c) l = lcm(l, BigInt(q.get_den()));
  std::vector<BigInt> a;
  for (const auto& q : c) a.push_back(BigInt(q * l));
  auto eval = [&](const BigRational& x) {
    BigRational s = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) s = s * x + BigRational(*it);
    return s;
  };
  auto deflate = [&](const BigRational& r) {
    // Synthetic division by (x - r) in Q, then rescale to integers.
    std::vector<BigRational> q(a.size() - 1);
    BigRational carry = 0;
    for (std::size_t k = a.size() - 1; k >= 1; --k) {
      carry = carry * r + BigRational(a[k]);
      q[k - 1] = carry;
    }
    BigInt den = 1;
    for (auto& x : q) {
      x.canonicalize();
      den = lcm(den, BigInt(x.get_den()));
    }
    a.clear();
    for (const auto& x : q) a.push_back(BigInt(x * den));
  };
  bool progress = true;
  while (a.size() > 1 && progress) {
    progress = false;
    auto ps = divisors(a.front());
    auto qs = divisors(a.back());
    if (!ps || !qs) {
      out.complete = false;
      return out;
    }
    for (const auto& p : *ps) {
      for (const auto& q : *qs) {
        for (int sign : {1, -1}) {
          BigRational r(sign * p, q);
          r.canonicalize();
          if (eval(r) != 0) continue;
          if (std::find(out.values.begin(), out.values.end(), r) == out.values.end()) out.values.push_back(r);
          deflate(r);
          progress = true;
          break;
        }
        if (progress) break;
      }
      if (progress) break;
    }
  }
  if (a.size() > 1) out.complete = false;
  std::sort(out.values.begin(), out.values.end());
  return out;
}

struct PointSearch {
  std::vector<std::vector<BigRational>> points;
  bool complete = true;
};

// Rational points of a zero-dimensional ideal in the variables `vars`
// (triangular solve of a lexicographic basis, last variable first).
PointSearch rational_points(const RegistryPtr& reg, const std::vector<Polynomial>& gens,
                            const std::vector<std::size_t>& vars) {
  std::vector<int> blocks(reg->size(), static_cast<int>(vars.size()));
  for (std::size_t i = 0; i < vars.size(); ++i) blocks[vars[i]] = static_cast<int>(i);
  IdealBasis lex = groebner_basis(make_ideal(*reg, gens), MonomialOrder(blocks));
  PointSearch out;
  std::vector<BigRational> point(vars.size());
  auto rec = [&](auto&& self, std::vector<Polynomial> polys, int idx) -> void {
    if (idx < 0) {
      out.points.push_back(point);
      return;
    }
    const std::size_t x = vars[idx];
    Polynomial g(reg);
    for (const auto& p : polys) {
      if (p.is_zero()) continue;
      if (p.is_constant()) return;  // inconsistent branch
      auto sup = p.support();
      if (sup.size() == 1 && sup[0] == x) g = g.is_zero() ? p : gcd(g, p);
    }
    if (g.is_zero()) {
      out.complete = false;
      return;
    }
    std::vector<BigRational> coeffs(g.degree_in(x) + 1);
    for (const auto& [m, c] : g.terms()) coeffs[m[x]] = c;
    Roots roots = rational_roots(coeffs);
    if (!roots.complete) out.complete = false;
    for (const auto& r : roots.values) {
      point[idx] = r;
      std::vector<Polynomial> next;
      for (const auto& p : polys) next.push_back(p.substitute(x, Polynomial::constant(reg, r)));
      self(self, std::move(next), idx - 1);
    }
  };
  rec(rec, lex.generators, static_cast<int>(vars.size()) - 1);
  return out;
}

}  // namespace

DarbouxResult darboux_polynomials(const Fibration& sys, int degree) {
  const DVariety& v = sys.variety;
  const RegistryPtr& reg = v.registry;
  DarbouxResult result;
  if (degree < 1) return result;

  const auto dbasis = ansatz_monomials(v, degree, true);
  int kdeg = 0;
  for (const auto& a : v.section_numerators) kdeg = std::max(kdeg, a.degree() - 1);
  const auto kbasis = ansatz_monomials(v, kdeg, true);
  const std::size_t nd = dbasis.size(), nk = kbasis.size();

  std::vector<Polynomial> ld;                     // S L(m_i) mod I
  std::vector<std::vector<Polynomial>> prod(nk);  // n_l m_i mod I
  for (const auto& m : dbasis) ld.push_back(reduce_on(v, scaled_derivation(Polynomial::monomial(reg, m), v)));
  for (std::size_t l = 0; l < nk; ++l)
    for (const auto& m : dbasis) prod[l].push_back(reduce_on(v, Polynomial::monomial(reg, kbasis[l] * m)));

  // Unknown coefficients: d_0..d_{nd-1}, then k_0..k_{nk-1}.
  std::vector<Variable> uvars;
  for (std::size_t i = 0; i < nd; ++i) uvars.push_back({"d" + std::to_string(i), VarKind::Fiber});
  for (std::size_t l = 0; l < nk; ++l) uvars.push_back({"k" + std::to_string(l), VarKind::Aux});
  const RegistryPtr ureg = make_registry(std::move(uvars));
  std::vector<std::size_t> kvars;
  for (std::size_t l = 0; l < nk; ++l) kvars.push_back(nd + l);

  std::vector<std::vector<BigRational>> seen;
  for (std::size_t j = 0; j < nd; ++j) {
    if (dbasis[j].is_one()) continue;
    // D = m_j + sum_{i>j} d_i m_i; higher monomials have coefficient 0.
    std::map<Monomial, Polynomial> eqs;
    auto add = [&](const Polynomial& image, const Polynomial& coeff) {
      for (const auto& [mu, c] : image.terms()) {
        auto it = eqs.try_emplace(mu, ureg).first;
        it->second += coeff * c;
      }
    };
    for (std::size_t i = j; i < nd; ++i) {
      const Polynomial di = i == j ? Polynomial::constant(ureg, 1) : Polynomial::variable(ureg, i);
      add(ld[i], di);
      for (std::size_t l = 0; l < nk; ++l) add(prod[l][i], -(Polynomial::variable(ureg, nd + l) * di));
    }
    std::vector<Polynomial> gens;
    for (auto& [mu, p] : eqs)
      if (!p.is_zero()) gens.push_back(p);
    std::vector<std::size_t> dvars;
    for (std::size_t i = j + 1; i < nd; ++i) dvars.push_back(i);
    IdealBasis gb = groebner_basis(make_ideal(*ureg, gens), MonomialOrder::eliminating(ureg->size(), dvars));
    if (std::any_of(gb.generators.begin(), gb.generators.end(), [](const Polynomial& p) { return p.is_constant(); }))
      continue;
    std::vector<Polynomial> kgens;
    for (const auto& g : gb.generators) {
      auto sup = g.support();
      if (std::all_of(sup.begin(), sup.end(), [&](std::size_t x) { return x >= nd; })) kgens.push_back(g);
    }
    const QuotientDimension qd = quotient_dimension(make_ideal(*ureg, kgens), kvars);
    if (qd.unit_ideal) continue;
    if (!qd.zero_dimensional) {
      result.complete = false;
      continue;
    }
    PointSearch ps = rational_points(ureg, kgens, kvars);
    if (!ps.complete) result.complete = false;
    for (const auto& k : ps.points) {
      if (std::find(seen.begin(), seen.end(), k) != seen.end()) continue;
      seen.push_back(k);
      const Polynomial cof = combine(reg, kbasis, k);
      std::vector<Polynomial> images;
      for (std::size_t i = 0; i < nd; ++i) {
        Polynomial m = Polynomial::monomial(reg, dbasis[i]);
        images.push_back(reduce_on(v, ld[i] - cof * m));
      }
      for (const auto& row : linear_relations(images)) {
        Polynomial d = combine(reg, dbasis, row);
        if (d.is_constant()) continue;
        result.polynomials.push_back({std::move(d), normalize_ratfunc(cof, v.section_denominator)});
      }
    }
  }
  return result;
}

}  // namespace dvint
