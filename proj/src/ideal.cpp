#include "dvint/ideal.hpp"

#include <algorithm>
#include <set>

#include "dvint/errors.hpp"

namespace dvint {

namespace {

using Term = std::pair<Monomial, BigRational>;
using Terms = std::vector<Term>;  // sorted descending under the active order

struct GPoly {
  Terms terms;
  const Monomial& lm() const { return terms.front().first; }
  const BigRational& lc() const { return terms.front().second; }
  bool zero() const { return terms.empty(); }
};

class Engine {
 public:
  explicit Engine(const MonomialOrder& order) : order_(order) {}

  GPoly convert(const Polynomial& p) const { return GPoly{p.sorted_terms(order_)}; }

  Polynomial back(const GPoly& g, const RegistryPtr& reg) const {
    Polynomial::Terms t;
    for (const auto& [m, c] : g.terms) t.emplace(m, c);
    return Polynomial(reg, std::move(t));
  }

  void make_monic(GPoly& g) const {
    if (g.zero() || g.lc() == 1) return;
    const BigRational inv = BigRational(1) / g.lc();
    for (auto& [m, c] : g.terms) c *= inv;
  }

  // a - c * mono * b, all lists sorted descending.
  Terms sub_mul(const Terms& a, const Terms& b, const Monomial& mono, const BigRational& c) const {
    Terms out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    std::vector<Term> shifted;
    shifted.reserve(b.size());
    for (const auto& [m, v] : b) shifted.emplace_back(m * mono, v * c);
    while (i < a.size() || j < shifted.size()) {
      if (j == shifted.size()) {
        out.push_back(a[i++]);
        continue;
      }
      if (i == a.size()) {
        out.emplace_back(shifted[j].first, -shifted[j].second);
        ++j;
        continue;
      }
      const int cmp = order_.compare(a[i].first, shifted[j].first);
      if (cmp > 0) {
        out.push_back(a[i++]);
      } else if (cmp < 0) {
        out.emplace_back(shifted[j].first, -shifted[j].second);
        ++j;
      } else {
        BigRational v = a[i].second - shifted[j].second;
        if (v != 0) out.emplace_back(a[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  // Full reduction (leading and tail terms).
  GPoly reduce(GPoly p, const std::vector<GPoly>& basis, std::size_t skip = SIZE_MAX) const {
    Terms rem;
    while (!p.zero()) {
      const Monomial lt = p.terms.front().first;
      const BigRational lc = p.terms.front().second;
      bool reduced = false;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (k == skip || basis[k].zero()) continue;
        if (!basis[k].lm().divides(lt)) continue;
        p.terms = sub_mul(p.terms, basis[k].terms, basis[k].lm().quotient_of(lt), lc / basis[k].lc());
        reduced = true;
        break;
      }
      if (!reduced) {
        rem.emplace_back(lt, lc);
        p.terms.erase(p.terms.begin());
      }
    }
    return GPoly{std::move(rem)};
  }

  GPoly spoly(const GPoly& f, const GPoly& g) const {
    const Monomial l = f.lm().lcm(g.lm());
    Terms a;
    for (const auto& [m, c] : f.terms) a.emplace_back(m * f.lm().quotient_of(l), c / f.lc());
    return GPoly{sub_mul(a, g.terms, g.lm().quotient_of(l), BigRational(1) / g.lc())};
  }

  std::vector<GPoly> buchberger(std::vector<GPoly> input) const {
    std::vector<GPoly> g;
    for (auto& p : input) {
      if (p.zero()) continue;
      make_monic(p);
      if (p.lm().is_one()) return {p};
      g.push_back(std::move(p));
    }
    std::set<std::pair<std::size_t, std::size_t>> pending;
    for (std::size_t j = 0; j < g.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) pending.emplace(i, j);

    auto is_pending = [&](std::size_t a, std::size_t b) { return pending.count({std::min(a, b), std::max(a, b)}) > 0; };

    while (!pending.empty()) {
      // Normal strategy: smallest lcm first.
      auto best = pending.begin();
      Monomial best_lcm = g[best->first].lm().lcm(g[best->second].lm());
      for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
        Monomial l = g[it->first].lm().lcm(g[it->second].lm());
        if (order_.compare(l, best_lcm) < 0) {
          best = it;
          best_lcm = std::move(l);
        }
      }
      const auto [i, j] = *best;
      pending.erase(best);
      if (g[i].lm().coprime(g[j].lm())) continue;
      bool chain = false;
      for (std::size_t k = 0; k < g.size() && !chain; ++k) {
        if (k == i || k == j) continue;
        if (g[k].lm().divides(best_lcm) && !is_pending(i, k) && !is_pending(j, k)) chain = true;
      }
      if (chain) continue;
      GPoly r = reduce(spoly(g[i], g[j]), g);
      if (r.zero()) continue;
      make_monic(r);
      if (r.lm().is_one()) return {r};
      const std::size_t n = g.size();
      g.push_back(std::move(r));
      for (std::size_t k = 0; k < n; ++k) pending.emplace(k, n);
    }
    return interreduce(std::move(g));
  }

  std::vector<GPoly> interreduce(std::vector<GPoly> g) const {
    // Drop elements whose leading monomial is divisible by another's.
    std::sort(g.begin(), g.end(), [&](const GPoly& a, const GPoly& b) { return order_.greater(b.lm(), a.lm()); });
    std::vector<GPoly> minimal;
    for (auto& p : g) {
      bool redundant =
          std::any_of(minimal.begin(), minimal.end(), [&](const GPoly& q) { return q.lm().divides(p.lm()); });
      if (!redundant) minimal.push_back(std::move(p));
    }
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      GPoly head{Terms{minimal[k].terms.front()}};
      GPoly tail{Terms(minimal[k].terms.begin() + 1, minimal[k].terms.end())};
      GPoly rt = reduce(std::move(tail), minimal, k);
      head.terms.insert(head.terms.end(), rt.terms.begin(), rt.terms.end());
      minimal[k] = std::move(head);
      make_monic(minimal[k]);
    }
    std::sort(minimal.begin(), minimal.end(),
              [&](const GPoly& a, const GPoly& b) { return order_.greater(a.lm(), b.lm()); });
    return minimal;
  }

 private:
  const MonomialOrder& order_;
};

const RegistryPtr& common_registry(const std::vector<Polynomial>& gens) {
  static const RegistryPtr none;
  for (const auto& g : gens)
    if (g.registry()) return g.registry();
  return none;
}

IdealBasis ensure_groebner(const IdealBasis& b) { return b.groebner ? b : groebner_basis(b); }

std::vector<Monomial> leading_monomials(const IdealBasis& gb) {
  std::vector<Monomial> out;
  for (const auto& g : gb.generators) out.push_back(g.leading_term(gb.order).first);
  return out;
}

// Leading monomials of a Gröbner basis under the order eliminating `counted`,
// projected onto the counted variables.
std::vector<Monomial> projected_leads(const IdealBasis& basis, const std::vector<std::size_t>& counted,
                                      std::size_t nvars) {
  IdealBasis gb = groebner_basis(basis, MonomialOrder::eliminating(nvars, counted));
  std::vector<Monomial> out;
  for (const auto& m : leading_monomials(gb)) {
    Monomial p(nvars);
    for (auto v : counted) p[v] = m[v];
    out.push_back(std::move(p));
  }
  return out;
}

std::size_t registry_size(const IdealBasis& basis) {
  const auto& reg = common_registry(basis.generators);
  return reg ? reg->size() : basis.order.blocks().size();
}

}  // namespace

IdealBasis make_ideal(const VariableRegistry& reg, std::vector<Polynomial> gens) {
  IdealBasis b;
  for (auto& g : gens)
    if (!g.is_zero()) b.generators.push_back(std::move(g));
  b.order = MonomialOrder::standard(reg);
  return b;
}

IdealBasis groebner_basis(const IdealBasis& gens) { return groebner_basis(gens, gens.order); }

IdealBasis groebner_basis(const IdealBasis& gens, const MonomialOrder& order) {
  IdealBasis out;
  out.order = order;
  out.groebner = true;
  const RegistryPtr reg = common_registry(gens.generators);
  if (!reg) return out;
  for (const auto& g : gens.generators)
    if (g.registry() && g.registry() != reg && !(*g.registry() == *reg))
      throw Error(ErrorCode::RegistryMismatch, "ideal generators over different registries");
  Engine engine(out.order);
  std::vector<GPoly> in;
  for (const auto& g : gens.generators) in.push_back(engine.convert(g));
  for (const auto& g : engine.buchberger(std::move(in))) out.generators.push_back(engine.back(g, reg));
  return out;
}

Polynomial reduce(const Polynomial& p, const IdealBasis& basis_in) {
  if (basis_in.generators.empty() || p.is_zero()) return p;
  const IdealBasis basis = ensure_groebner(basis_in);
  Engine engine(basis.order);
  std::vector<GPoly> gs;
  for (const auto& g : basis.generators) gs.push_back(engine.convert(g));
  return engine.back(engine.reduce(engine.convert(p), gs), p.registry());
}

bool ideal_contains(const IdealBasis& basis, const Polynomial& p) { return reduce(p, basis).is_zero(); }

RationalFunction normal_form(const RationalFunction& f, const IdealBasis& basis) {
  if (basis.generators.empty()) return f;
  if (reduce(f.denominator(), basis).is_zero())
    throw Error(ErrorCode::DenominatorVanishesOnVariety,
                "denominator " + to_string(f.denominator()) + " vanishes on the variety");
  return normalize_ratfunc(reduce(f.numerator(), basis), f.denominator());
}

int ideal_dimension(const IdealBasis& basis, const std::vector<std::size_t>& counted) {
  const std::size_t n = registry_size(basis);
  const auto leads = projected_leads(basis, counted, n);
  for (const auto& m : leads)
    if (m.is_one()) return kEmptyDimension;
  // Largest subset of counted variables containing no leading-monomial support.
  int best = 0;
  const std::size_t k = counted.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<bool> in(n, false);
    int size = 0;
    for (std::size_t b = 0; b < k; ++b)
      if (mask & (std::size_t{1} << b)) {
        in[counted[b]] = true;
        ++size;
      }
    if (size <= best) continue;
    bool independent = std::none_of(leads.begin(), leads.end(), [&](const Monomial& m) {
      for (std::size_t v = 0; v < n; ++v)
        if (m[v] > 0 && !in[v]) return false;
      return true;
    });
    if (independent) best = size;
  }
  return best;
}

QuotientDimension quotient_dimension(const IdealBasis& basis, const std::vector<std::size_t>& counted) {
  QuotientDimension q;
  const std::size_t n = registry_size(basis);
  const auto leads = projected_leads(basis, counted, n);
  for (const auto& m : leads)
    if (m.is_one()) {
      q.unit_ideal = true;
      return q;
    }
  std::vector<int> bound(n, 0);
  for (auto v : counted) {
    int b = -1;
    for (const auto& m : leads) {
      bool pure = m[v] > 0;
      for (auto w : counted)
        if (w != v && m[w] > 0) pure = false;
      if (pure && (b < 0 || m[v] < b)) b = m[v];
    }
    if (b < 0) return q;  // positive-dimensional
    bound[v] = b;
  }
  q.zero_dimensional = true;
  Monomial cur(n);
  std::size_t count = 0;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == counted.size()) {
      if (std::none_of(leads.begin(), leads.end(), [&](const Monomial& m) { return m.divides(cur); })) ++count;
      return;
    }
    for (int e = 0; e < bound[counted[pos]]; ++e) {
      cur[counted[pos]] = e;
      self(self, pos + 1);
    }
    cur[counted[pos]] = 0;
  };
  rec(rec, 0);
  q.dimension = count;
  return q;
}

std::vector<Monomial> standard_monomials(const IdealBasis& basis_in, const std::vector<Monomial>& candidates) {
  if (basis_in.generators.empty()) return candidates;
  const IdealBasis basis = ensure_groebner(basis_in);
  const auto leads = leading_monomials(basis);
  std::vector<Monomial> out;
  for (const auto& m : candidates)
    if (std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); })) out.push_back(m);
  return out;
}

int matrix_rank_mod_ideal(const std::vector<std::vector<RationalFunction>>& m, const IdealBasis& basis_in) {
  if (m.empty()) return 0;
  const IdealBasis basis = ensure_groebner(basis_in);
  const std::size_t ncols = m.front().size();
  std::vector<std::vector<Polynomial>> rows;
  for (const auto& row : m) {
    if (row.size() != ncols) throw Error(ErrorCode::InvalidArgument, "ragged matrix");
    for (const auto& e : row)
      if (!e.denominator().is_constant() && reduce(e.denominator(), basis).is_zero())
        throw Error(ErrorCode::DenominatorVanishesOnVariety,
                    "matrix entry denominator " + to_string(e.denominator()) + " vanishes on the variety");
    // Clear denominators: scale the row by the product of its distinct denominators.
    std::vector<Polynomial> dens;
    for (const auto& e : row)
      if (!e.denominator().is_constant() && std::find(dens.begin(), dens.end(), e.denominator()) == dens.end())
        dens.push_back(e.denominator());
    std::vector<Polynomial> prow;
    for (const auto& e : row) {
      Polynomial p = e.numerator();
      bool skipped_own = false;
      for (const auto& d : dens) {
        if (!skipped_own && d == e.denominator()) {
          skipped_own = true;
          continue;
        }
        p = p * d;
      }
      prow.push_back(reduce(p, basis));
    }
    rows.push_back(std::move(prow));
  }

  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const Polynomial pv = rows[rank][col];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const Polynomial e = rows[r][col];
      if (e.is_zero()) continue;
      for (std::size_t c = 0; c < ncols; ++c) rows[r][c] = reduce(pv * rows[r][c] - e * rows[rank][c], basis);
      BigRational content = 0;
      for (const auto& p : rows[r])
        if (!p.is_zero())
          content = content == 0 ? p.content()
                                 : BigRational(gcd(content.get_num(), p.content().get_num()),
                                               lcm(content.get_den(), p.content().get_den()));
      if (content != 0 && content != 1)
        for (auto& p : rows[r]) p *= BigRational(1) / content;
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

}  // namespace dvint
