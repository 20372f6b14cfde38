#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dvint/ratfunc.hpp"

namespace dvint {

/// An identifier occurrence: `name` with `derivative` trailing primes, or
/// `name^(k)` when `name` is the dependent variable of an ODE.
struct NameRef {
  std::string name;
  int derivative = 0;
  std::size_t offset = 0;
};

/// Maps an identifier occurrence to a registry index; throws on failure.
using NameResolver = std::function<std::size_t(const NameRef&)>;

/// Operator-precedence parse of + - * / ^, parentheses, integer literals and
/// registered identifiers. Throws SyntaxError (with offset) or UnknownVariable.
RationalFunction parse_expression(std::string_view text, const RegistryPtr& registry);

/// As above with custom name resolution. `dependent` (may be empty) enables
/// the `dependent^(k)` derivative notation.
RationalFunction parse_expression(std::string_view text, const RegistryPtr& registry, const NameResolver& resolve,
                                  std::string_view dependent = {});

enum class ProblemMode { ExplicitOde, ImplicitOde, DVariety };

const char* problem_mode_name(ProblemMode mode) noexcept;

struct ProblemSpec {
  RegistryPtr registry;
  ProblemMode mode = ProblemMode::DVariety;
  int ode_order = 0;      // ode modes
  std::string dependent;  // ode modes: name used with derivative notation
  RationalFunction rhs_or_F;
  std::vector<Polynomial> ideal_gens;                             // dvariety mode
  std::vector<std::pair<std::string, RationalFunction>> section;  // dvariety mode, fiber and aux keys
  std::vector<std::pair<std::string, RationalFunction>> aux_w;    // auxiliary variable -> derivative
  std::vector<std::string> candidate_integrals;
  bool irreducible = true;

  /// State variables y_0..y_{n-1} (ode modes) in order.
  std::vector<std::size_t> state_vars() const;

  bool operator==(const ProblemSpec& other) const;
};

/// Throws SyntaxError (offset into `text`), DuplicateVariable, MissingSection,
/// UnknownVariable.
ProblemSpec parse_problem_file(std::string_view text);

/// Canonical problem-file text; parse_problem_file(emit_problem(s)) == s.
std::string emit_problem(const ProblemSpec& spec);

/// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset);

}  // namespace dvint
