#include "dvint/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "dvint/errors.hpp"

namespace dvint {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string primes(int k) { return std::string(static_cast<std::size_t>(k), '\''); }

class ExprParser {
 public:
  ExprParser(std::string_view text, const RegistryPtr& reg, const NameResolver& resolve, std::string_view dependent)
      : text_(text), reg_(reg), resolve_(resolve), dependent_(dependent) {}

  RationalFunction parse_all() {
    RationalFunction r = expr();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(pos_, msg + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalFunction expr() {
    RationalFunction r = term();
    while (true) {
      if (accept('+'))
        r = r + term();
      else if (accept('-'))
        r = r - term();
      else
        return r;
    }
  }

  RationalFunction term() {
    RationalFunction r = unary();
    while (true) {
      if (accept('*')) {
        r = r * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        RationalFunction d = unary();
        if (d.is_zero()) throw SyntaxError(at, "division by zero at offset " + std::to_string(at));
        r = r / d;
      } else {
        return r;
      }
    }
  }

  RationalFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  unsigned exponent() {
    skip_ws();
    const bool paren = accept('(');
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '-') fail("negative exponents are not supported");
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected a nonnegative integer exponent");
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ - start > 4) fail("exponent too large");
    unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
    if (paren && !accept(')')) fail("expected ')'");
    return e;
  }

  RationalFunction power() {
    RationalFunction base = primary();
    while (accept('^')) base = base.pow(exponent());
    return base;
  }

  RationalFunction primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected an operand");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '.') fail("decimal literals are not supported; write p/q");
      BigInt v(std::string(text_.substr(start, pos_ - start)));
      return RationalFunction::constant(reg_, BigRational(v));
    }
    if (ident_start(c)) {
      NameRef ref;
      ref.offset = pos_;
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      ref.name = std::string(text_.substr(start, pos_ - start));
      while (pos_ < text_.size() && text_[pos_] == '\'') {
        ++ref.derivative;
        ++pos_;
      }
      // dependent^(k): derivative notation.
      if (!dependent_.empty() && ref.name == dependent_ && ref.derivative == 0 && text_.substr(pos_, 2) == "^(") {
        pos_ += 1;
        ref.derivative = static_cast<int>(exponent());
      }
      return RationalFunction(Polynomial::variable(reg_, resolve_(ref)));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  const RegistryPtr& reg_;
  const NameResolver& resolve_;
  std::string_view dependent_;
};

// Identifier occurrences without evaluating the expression.
std::vector<NameRef> scan_names(std::string_view text, std::string_view dependent) {
  std::vector<NameRef> refs;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      continue;
    }
    if (!ident_start(text[i])) {
      ++i;
      continue;
    }
    NameRef ref;
    ref.offset = i;
    std::size_t start = i;
    while (i < text.size() && ident_char(text[i])) ++i;
    ref.name = std::string(text.substr(start, i - start));
    while (i < text.size() && text[i] == '\'') {
      ++ref.derivative;
      ++i;
    }
    if (ref.derivative == 0 && ref.name == dependent && text.substr(i, 2) == "^(") {
      std::size_t close = text.find(')', i);
      std::string digits(text.substr(i + 2, close == std::string_view::npos ? 0 : close - i - 2));
      if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
        ref.derivative = std::stoi(digits);
        i = close + 1;
      }
    }
    refs.push_back(std::move(ref));
  }
  return refs;
}

NameResolver exact_resolver(const RegistryPtr& reg) {
  return [reg](const NameRef& ref) -> std::size_t {
    const std::string full = ref.name + primes(ref.derivative);
    if (auto i = reg->find(full)) return *i;
    throw Error(ErrorCode::UnknownVariable, "unknown variable '" + full + "' at offset " + std::to_string(ref.offset),
                ref.offset);
  };
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

struct Field {
  std::string text;
  std::size_t offset = 0;  // absolute offset of text[0]
};

struct Line {
  std::size_t number = 0;
  std::size_t offset = 0;
  std::string keyword;
  Field value;
};

Field sub_field(const Field& f, std::size_t from, std::size_t len = std::string::npos) {
  std::string_view v(f.text);
  std::string_view part = v.substr(from, len);
  std::size_t lead = 0;
  while (lead < part.size() && std::isspace(static_cast<unsigned char>(part[lead]))) ++lead;
  return Field{trim(part), f.offset + from + lead};
}

std::vector<Field> split_list(const Field& f, char sep) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (start <= f.text.size()) {
    std::size_t end = f.text.find(sep, start);
    if (end == std::string::npos) end = f.text.size();
    Field item = sub_field(f, start, end - start);
    if (!item.text.empty()) out.push_back(std::move(item));
    start = end + 1;
  }
  return out;
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t pos = 0, number = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (!trim(raw).empty()) {
      auto colon = raw.find(':');
      if (colon == std::string_view::npos)
        throw SyntaxError(pos, "line " + std::to_string(number) + ": expected 'keyword: value'");
      Line line;
      line.number = number;
      line.offset = pos;
      line.keyword = trim(raw.substr(0, colon));
      line.value = sub_field(Field{std::string(raw), pos}, colon + 1);
      lines.push_back(std::move(line));
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

// Parses "name", "name'", "name''", or "name^(k)"; returns (base, order).
std::pair<std::string, int> parse_derivative_lhs(const Field& f) {
  const std::string& s = f.text;
  std::size_t i = 0;
  if (s.empty() || !ident_start(s[0])) throw SyntaxError(f.offset, "expected a variable name");
  while (i < s.size() && ident_char(s[i])) ++i;
  std::string base = s.substr(0, i);
  int order = 0;
  while (i < s.size() && s[i] == '\'') {
    ++order;
    ++i;
  }
  if (order == 0 && s.compare(i, 2, "^(") == 0) {
    std::size_t close = s.find(')', i);
    if (close == std::string::npos) throw SyntaxError(f.offset + i, "expected ')'");
    std::string digits = trim(s.substr(i + 2, close - i - 2));
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw SyntaxError(f.offset + i, "expected a derivative order");
    order = std::stoi(digits);
    i = close + 1;
  }
  if (i != s.size()) throw SyntaxError(f.offset + i, "unexpected text after derivative");
  return {base, order};
}

std::pair<Field, Field> split_equation(const Field& f, const Line& line) {
  auto eq = f.text.find('=');
  if (eq == std::string::npos) throw SyntaxError(f.offset, "line " + std::to_string(line.number) + ": expected '='");
  return {sub_field(f, 0, eq), sub_field(f, eq + 1)};
}

RationalFunction parse_field(const Field& f, const RegistryPtr& reg, const NameResolver& resolve,
                             std::string_view dependent = {}) {
  try {
    return parse_expression(f.text, reg, resolve, dependent);
  } catch (const SyntaxError& e) {
    throw SyntaxError(f.offset + e.offset(), e.what());
  } catch (const Error& e) {
    if (!e.position()) throw;
    throw Error(e.code(), e.what(), f.offset + *e.position());
  }
}

}  // namespace

const char* problem_mode_name(ProblemMode mode) noexcept {
  switch (mode) {
    case ProblemMode::ExplicitOde:
      return "explicit-ode";
    case ProblemMode::ImplicitOde:
      return "implicit-ode";
    case ProblemMode::DVariety:
      return "dvariety";
  }
  return "?";
}

RationalFunction parse_expression(std::string_view text, const RegistryPtr& registry) {
  return parse_expression(text, registry, exact_resolver(registry));
}

RationalFunction parse_expression(std::string_view text, const RegistryPtr& registry, const NameResolver& resolve,
                                  std::string_view dependent) {
  ExprParser p(text, registry, resolve, dependent);
  return p.parse_all();
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::vector<std::size_t> ProblemSpec::state_vars() const {
  std::vector<std::size_t> out;
  if (mode == ProblemMode::DVariety) return registry->of_kind(VarKind::Fiber);
  for (auto i : registry->of_kind(VarKind::Fiber))
    if (out.size() < static_cast<std::size_t>(ode_order)) out.push_back(i);
  return out;
}

bool ProblemSpec::operator==(const ProblemSpec& o) const {
  return *registry == *o.registry && mode == o.mode && ode_order == o.ode_order && dependent == o.dependent &&
         rhs_or_F == o.rhs_or_F && ideal_gens == o.ideal_gens && section == o.section && aux_w == o.aux_w &&
         candidate_integrals == o.candidate_integrals && irreducible == o.irreducible;
}

ProblemSpec parse_problem_file(std::string_view text) {
  const auto lines = split_lines(text);
  ProblemSpec spec;

  const Line* ode_line = nullptr;
  const Line* implicit_line = nullptr;
  const Line* state_line = nullptr;
  bool dvariety_keywords = false;
  for (const auto& l : lines) {
    static const std::set<std::string> known = {"time",  "state",   "vars", "params",    "ode",        "implicit",
                                                "ideal", "section", "aux",  "integrals", "irreducible"};
    if (!known.count(l.keyword))
      throw SyntaxError(l.offset, "line " + std::to_string(l.number) + ": unknown keyword '" + l.keyword + "'");
    if (l.keyword == "ode") {
      if (ode_line || implicit_line)
        throw SyntaxError(l.offset, "line " + std::to_string(l.number) + ": more than one equation");
      ode_line = &l;
    } else if (l.keyword == "implicit") {
      if (ode_line || implicit_line)
        throw SyntaxError(l.offset, "line " + std::to_string(l.number) + ": more than one equation");
      implicit_line = &l;
    } else if (l.keyword == "state") {
      if (state_line) throw SyntaxError(l.offset, "line " + std::to_string(l.number) + ": duplicate 'state:'");
      state_line = &l;
    } else if (l.keyword == "vars" || l.keyword == "ideal" || l.keyword == "section") {
      dvariety_keywords = true;
    }
  }
  if ((ode_line || implicit_line) && dvariety_keywords) {
    const Line& l = ode_line ? *ode_line : *implicit_line;
    throw SyntaxError(l.offset, "line " + std::to_string(l.number) +
                                    ": 'vars:', 'ideal:' and 'section:' cannot be combined with an ODE");
  }
  if (state_line && !ode_line && !implicit_line)
    throw SyntaxError(state_line->offset, "line " + std::to_string(state_line->number) + ": 'state:' requires an ODE");
  if (implicit_line && !state_line)
    throw SyntaxError(implicit_line->offset, "line " + std::to_string(implicit_line->number) +
                                                 ": 'implicit:' requires a 'state:' declaration");
  if (!ode_line && !implicit_line && !dvariety_keywords) throw SyntaxError(0, "no equation");
  spec.mode = ode_line ? ProblemMode::ExplicitOde : implicit_line ? ProblemMode::ImplicitOde : ProblemMode::DVariety;

  std::vector<Variable> vars;
  std::vector<std::size_t> state_pos;  // positions in `vars`
  std::vector<std::pair<std::string, Field>> aux_rules;
  std::map<std::string, const Line*> declared_at;
  bool have_time = false;

  auto declare = [&](const std::string& name, VarKind kind, const Line& l) {
    if (name.empty() || !ident_start(name[0]))
      throw SyntaxError(l.value.offset, "line " + std::to_string(l.number) + ": invalid variable name '" + name + "'");
    for (char ch : name)
      if (!ident_char(ch) && ch != '\'')
        throw SyntaxError(l.value.offset,
                          "line " + std::to_string(l.number) + ": invalid variable name '" + name + "'");
    if (declared_at.count(name))
      throw Error(ErrorCode::DuplicateVariable,
                  "line " + std::to_string(l.number) + ": variable '" + name + "' declared twice");
    declared_at[name] = &l;
    vars.push_back(Variable{name, kind});
  };

  Field ode_lhs, ode_rhs;
  for (const auto& l : lines) {
    if (l.keyword == "time") {
      if (have_time) throw SyntaxError(l.offset, "line " + std::to_string(l.number) + ": duplicate 'time:'");
      have_time = true;
      declare(l.value.text, VarKind::Time, l);
    } else if (l.keyword == "state") {
      for (const auto& f : split_list(l.value, ',')) {
        state_pos.push_back(vars.size());
        declare(f.text, VarKind::Fiber, l);
      }
    } else if (l.keyword == "vars") {
      for (const auto& f : split_list(l.value, ',')) declare(f.text, VarKind::Fiber, l);
    } else if (l.keyword == "params") {
      for (const auto& f : split_list(l.value, ',')) declare(f.text, VarKind::Param, l);
    } else if (l.keyword == "aux") {
      auto [lhs, rhs] = split_equation(l.value, l);
      auto [name, order] = parse_derivative_lhs(lhs);
      if (order != 1)
        throw SyntaxError(lhs.offset, "line " + std::to_string(l.number) + ": expected name' = expression");
      declare(name, VarKind::Aux, l);
      aux_rules.emplace_back(name, rhs);
    } else if (l.keyword == "ode") {
      std::tie(ode_lhs, ode_rhs) = split_equation(l.value, l);
      auto [dep, order] = parse_derivative_lhs(ode_lhs);
      if (order < 1)
        throw SyntaxError(ode_lhs.offset, "line " + std::to_string(l.number) + ": expected a derivative on the left");
      spec.dependent = dep;
      spec.ode_order = order;
      if (!state_line) {
        for (int k = 0; k < order; ++k) {
          state_pos.push_back(vars.size());
          declare(dep + primes(k), VarKind::Fiber, l);
        }
      }
    }
  }
  if (!have_time) {
    vars.insert(vars.begin(), Variable{"t", VarKind::Time});
    for (auto& p : state_pos) ++p;
  }

  if (spec.mode == ProblemMode::ExplicitOde && state_line &&
      state_pos.size() != static_cast<std::size_t>(spec.ode_order))
    throw SyntaxError(state_line->offset, "line " + std::to_string(state_line->number) + ": expected " +
                                              std::to_string(spec.ode_order) + " state names");
  if (spec.mode == ProblemMode::ImplicitOde) {
    spec.ode_order = static_cast<int>(state_pos.size());
    spec.dependent = vars[state_pos.front()].name;
  }

  std::vector<std::string> state_names;
  for (auto p : state_pos) state_names.push_back(vars[p].name);

  // Derivative notation relative to the state list; orders past the state
  // list resolve to extra slots (explicit mode only).
  std::vector<std::string> slot_names;
  auto derivative_index = [&](const NameRef& ref) -> std::optional<int> {
    if (state_names.empty()) return std::nullopt;
    if (ref.name == spec.dependent) return ref.derivative;
    for (std::size_t i = 0; i < state_names.size(); ++i)
      if (state_names[i] == ref.name) return static_cast<int>(i) + ref.derivative;
    return std::nullopt;
  };

  if (spec.mode == ProblemMode::ExplicitOde) {
    int max_order = spec.ode_order - 1;
    for (const auto& ref : scan_names(ode_rhs.text, spec.dependent))
      if (auto k = derivative_index(ref)) max_order = std::max(max_order, *k);
    std::size_t insert_at = state_pos.empty() ? vars.size() : state_pos.back() + 1;
    for (int k = spec.ode_order; k <= max_order; ++k) {
      std::string name = spec.dependent + primes(k);
      if (declared_at.count(name))
        throw Error(ErrorCode::DuplicateVariable, "derivative slot '" + name + "' clashes with a declared variable");
      slot_names.push_back(name);
      vars.insert(vars.begin() + static_cast<std::ptrdiff_t>(insert_at++), Variable{name, VarKind::Fiber});
    }
  }

  spec.registry = make_registry(vars);
  const RegistryPtr& reg = spec.registry;

  NameResolver resolve = [&](const NameRef& ref) -> std::size_t {
    const std::string full = ref.name + primes(ref.derivative);
    if (!(ref.name == spec.dependent && ref.derivative > 0))
      if (auto i = reg->find(full)) return *i;
    if (auto k = derivative_index(ref)) {
      if (*k < static_cast<int>(state_names.size())) return reg->index_of(state_names[static_cast<std::size_t>(*k)]);
      std::size_t extra = static_cast<std::size_t>(*k) - state_names.size();
      if (extra < slot_names.size()) return reg->index_of(slot_names[extra]);
    }
    if (auto i = reg->find(full)) return *i;
    throw Error(ErrorCode::UnknownVariable, "unknown variable '" + full + "' at offset " + std::to_string(ref.offset),
                ref.offset);
  };

  auto with_line = [](const Line& l, auto&& fn) {
    try {
      return fn();
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(l.number) + ": " + e.what(),
                  e.position() ? e.position() : l.offset);
    }
  };

  // Auxiliary derivations: t, auxiliary variables and parameters only (ODE modes).
  NameResolver aux_resolve = [&](const NameRef& ref) -> std::size_t {
    std::size_t i = resolve(ref);
    const VarKind k = (*reg)[i].kind;
    if (spec.mode != ProblemMode::DVariety && k == VarKind::Fiber)
      throw Error(ErrorCode::UnknownVariable,
                  "auxiliary derivative may not involve state variable '" + (*reg)[i].name + "'", ref.offset);
    return i;
  };

  for (const auto& l : lines) {
    if (l.keyword == "aux") {
      auto [lhs, rhs] = split_equation(l.value, l);
      auto name = parse_derivative_lhs(lhs).first;
      spec.aux_w.emplace_back(name, with_line(l, [&] { return parse_field(rhs, reg, aux_resolve); }));
    } else if (l.keyword == "ode") {
      spec.rhs_or_F = with_line(l, [&] { return parse_field(ode_rhs, reg, resolve, spec.dependent); });
    } else if (l.keyword == "implicit") {
      Field f = l.value;
      RationalFunction F;
      if (auto eq = f.text.find('='); eq != std::string::npos) {
        Field lhs = sub_field(f, 0, eq), rhs = sub_field(f, eq + 1);
        F = with_line(l, [&] {
          return parse_field(lhs, reg, resolve, spec.dependent) - parse_field(rhs, reg, resolve, spec.dependent);
        });
      } else {
        F = with_line(l, [&] { return parse_field(f, reg, resolve, spec.dependent); });
      }
      if (!F.is_polynomial())
        throw SyntaxError(f.offset, "line " + std::to_string(l.number) + ": implicit equation must be polynomial");
      spec.rhs_or_F = F;
    } else if (l.keyword == "ideal") {
      RationalFunction g = with_line(l, [&] { return parse_field(l.value, reg, resolve); });
      if (!g.is_polynomial())
        throw SyntaxError(l.value.offset,
                          "line " + std::to_string(l.number) + ": ideal generators must be polynomials");
      spec.ideal_gens.push_back(g.numerator());
    } else if (l.keyword == "section") {
      auto [lhs, rhs] = split_equation(l.value, l);
      std::string name = lhs.text;
      auto idx = reg->find(name);
      if (!idx && !name.empty() && name.back() == '\'') {
        name.pop_back();
        idx = reg->find(name);
      }
      if (!idx || (*reg)[*idx].kind != VarKind::Fiber)
        throw Error(ErrorCode::UnknownVariable,
                    "line " + std::to_string(l.number) + ": section entry for undeclared variable '" + name + "'");
      for (const auto& [k, v] : spec.section)
        if (k == name)
          throw SyntaxError(l.offset,
                            "line " + std::to_string(l.number) + ": duplicate section entry for '" + name + "'");
      spec.section.emplace_back(name, with_line(l, [&] { return parse_field(rhs, reg, resolve); }));
    } else if (l.keyword == "integrals") {
      for (const auto& f : split_list(l.value, ';')) spec.candidate_integrals.push_back(f.text);
    } else if (l.keyword == "irreducible") {
      const std::string& v = l.value.text;
      if (v == "true" || v == "yes")
        spec.irreducible = true;
      else if (v == "false" || v == "no")
        spec.irreducible = false;
      else
        throw SyntaxError(l.value.offset, "line " + std::to_string(l.number) + ": expected true or false");
    }
  }

  if (spec.mode == ProblemMode::DVariety) {
    // Section keys: fiber variables (section: lines) then auxiliary ones, in registry order.
    std::vector<std::pair<std::string, RationalFunction>> ordered;
    for (std::size_t i = 0; i < reg->size(); ++i) {
      const auto& v = (*reg)[i];
      if (v.kind == VarKind::Fiber) {
        auto it =
            std::find_if(spec.section.begin(), spec.section.end(), [&](const auto& e) { return e.first == v.name; });
        if (it == spec.section.end())
          throw Error(ErrorCode::MissingSection, "no section entry for variable '" + v.name + "'");
        ordered.push_back(*it);
      } else if (v.kind == VarKind::Aux) {
        auto it = std::find_if(spec.aux_w.begin(), spec.aux_w.end(), [&](const auto& e) { return e.first == v.name; });
        ordered.push_back(*it);
      }
    }
    spec.section = std::move(ordered);
  }
  return spec;
}

std::string emit_problem(const ProblemSpec& spec) {
  const auto& reg = *spec.registry;
  std::string out;
  const bool ode = spec.mode != ProblemMode::DVariety;
  const auto states = spec.state_vars();
  auto is_state = [&](std::size_t i) { return std::find(states.begin(), states.end(), i) != states.end(); };

  for (std::size_t i = 0; i < reg.size();) {
    const auto& v = reg[i];
    if (v.kind == VarKind::Time) {
      out += "time: " + v.name + "\n";
      ++i;
    } else if (v.kind == VarKind::Aux) {
      auto it = std::find_if(spec.aux_w.begin(), spec.aux_w.end(), [&](const auto& e) { return e.first == v.name; });
      out += "aux: " + v.name + "' = " + to_string(it->second) + "\n";
      ++i;
    } else {
      const VarKind kind = v.kind;
      std::vector<std::string> run;
      while (i < reg.size() && reg[i].kind == kind) {
        if (!(ode && kind == VarKind::Fiber && !is_state(i))) run.push_back(reg[i].name);
        ++i;
      }
      if (run.empty()) continue;
      std::string joined;
      for (const auto& n : run) joined += (joined.empty() ? "" : ", ") + n;
      const char* kw = kind == VarKind::Param ? "params" : ode ? "state" : "vars";
      out += std::string(kw) + ": " + joined + "\n";
    }
  }

  if (spec.mode == ProblemMode::ExplicitOde) {
    std::string lhs = spec.ode_order <= 3 ? spec.dependent + primes(spec.ode_order)
                                          : spec.dependent + "^(" + std::to_string(spec.ode_order) + ")";
    out += "ode: " + lhs + " = " + to_string(spec.rhs_or_F) + "\n";
  } else if (spec.mode == ProblemMode::ImplicitOde) {
    out += "implicit: " + to_string(spec.rhs_or_F) + "\n";
  } else {
    for (const auto& g : spec.ideal_gens) out += "ideal: " + to_string(g) + "\n";
    for (const auto& [name, f] : spec.section)
      if (reg[reg.index_of(name)].kind == VarKind::Fiber) out += "section: " + name + " = " + to_string(f) + "\n";
  }
  if (!spec.candidate_integrals.empty()) {
    std::string joined;
    for (const auto& h : spec.candidate_integrals) joined += (joined.empty() ? "" : "; ") + h;
    out += "integrals: " + joined + "\n";
  }
  if (!spec.irreducible) out += "irreducible: false\n";
  return out;
}

}  // namespace dvint
