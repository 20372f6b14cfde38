#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "dvint/dvariety.hpp"
#include "dvint/parser.hpp"

namespace dvtest {

inline std::string read_problem(const std::string& name) {
  std::ifstream in(std::string(DVINT_PROBLEMS_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline dvint::ProductSystem load(const std::string& name) {
  return dvint::compile_problem(dvint::parse_problem_file(read_problem(name)));
}

inline dvint::ProductSystem compile_text(const std::string& text) {
  return dvint::compile_problem(dvint::parse_problem_file(text));
}

inline dvint::RationalFunction rf(const dvint::ProductSystem& sys, const std::string& text) {
  return dvint::parse_expression(text, sys.registry());
}

inline dvint::Polynomial poly(const dvint::ProductSystem& sys, const std::string& text) {
  auto f = rf(sys, text);
  REQUIRE(f.is_polynomial());
  return f.numerator() * dvint::BigRational(1 / f.denominator().constant_term());
}

}  // namespace dvtest
