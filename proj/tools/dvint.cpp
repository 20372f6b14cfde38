// Command-line front end over the C API.

#include "dvint/dvint.h"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace {

constexpr int kUsage = 2;

// "5,1/2" -> {5, 0.5}; fractions are allowed in each component.
bool parse_init(const std::string& text, std::vector<double>& out) {
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t slash = item.find('/');
    char* end = nullptr;
    double num = std::strtod(item.c_str(), &end);
    if (end == item.c_str()) return false;
    if (slash != std::string::npos) {
      if (static_cast<std::size_t>(end - item.c_str()) != slash) return false;
      const char* den_text = item.c_str() + slash + 1;
      double den = std::strtod(den_text, &end);
      if (end == den_text || den == 0.0) return false;
      num /= den;
    }
    while (*end == ' ') ++end;
    if (*end != '\0') return false;
    out.push_back(num);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return !out.empty();
}

int check(dvint_status s) {
  if (s == DVINT_OK) return 0;
  std::fprintf(stderr, "dvint: error: %s\n", dvint_last_error());
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational first integrals and internality of algebraic ODEs"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(dvint_version()));

  std::string verb, input, format = "text", init_text, csv;
  int degree = 4, darboux_degree = 1;
  std::vector<std::string> denominators, integrals;
  double tol = 1e-6, t_end = 0.0, step = 1e-3;
  bool ambient = false;

  app.add_option("verb", verb,
                 "compile | verify-section | verify-integral | search | independence | "
                 "fiber-degree | report | simulate")
      ->required()
      ->check(CLI::IsMember({"compile", "verify-section", "verify-integral", "search", "independence", "fiber-degree",
                             "report", "simulate"}));
  app.add_option("input", input, "problem file")->required();
  app.add_option("--degree", degree, "search degree bound")->check(CLI::NonNegativeNumber);
  app.add_option("--denominator", denominators, "fixed denominator for the rational search (repeatable)");
  app.add_option("--h", integrals, "candidate first integral (repeatable)");
  app.add_option("--tol", tol, "constancy tolerance for simulate")->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--ambient", ambient, "search over the ambient space, ignoring the ideal");
  app.add_option("--darboux-degree", darboux_degree, "Darboux polynomial degree for report (0 disables)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--init", init_text, "initial point t0,v1,...,vk");
  auto* t_end_opt = app.add_option("--t-end", t_end, "end time for simulate");
  app.add_option("--step", step, "RK4 step")->check(CLI::PositiveNumber);
  app.add_option("--csv", csv, "write the trajectory as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  dvint_request* req = nullptr;
  if (int rc = check(dvint_request_create(verb.c_str(), input.c_str(), &req))) return rc;
  int rc = check(dvint_request_set_format(req, format.c_str()));
  if (!rc) rc = check(dvint_request_set_degree(req, degree));
  for (const auto& d : denominators)
    if (!rc) rc = check(dvint_request_add_denominator(req, d.c_str()));
  for (const auto& h : integrals)
    if (!rc) rc = check(dvint_request_add_integral(req, h.c_str()));
  if (!rc) rc = check(dvint_request_set_tolerance(req, tol));
  if (!rc) rc = check(dvint_request_set_ambient(req, ambient ? 1 : 0));
  if (!rc) rc = check(dvint_request_set_darboux_degree(req, darboux_degree));
  if (!rc && !init_text.empty()) {
    std::vector<double> init;
    if (!parse_init(init_text, init)) {
      std::fprintf(stderr, "--init: error: expected comma-separated numbers, got '%s'\n", init_text.c_str());
      rc = kUsage;
    } else {
      rc = check(dvint_request_set_init(req, init.data(), init.size()));
    }
  }
  if (!rc && *t_end_opt) rc = check(dvint_request_set_t_end(req, t_end));
  if (!rc) rc = check(dvint_request_set_step(req, step));
  if (!rc && !csv.empty()) rc = check(dvint_request_set_csv_path(req, csv.c_str()));

  dvint_result* res = nullptr;
  if (!rc) rc = check(dvint_execute(req, &res));
  if (!rc) {
    std::fputs(dvint_result_diagnostics(res), stderr);
    std::fputs(dvint_result_output(res), stdout);
    rc = dvint_result_exit_code(res);
    dvint_result_destroy(res);
  }
  dvint_request_destroy(req);
  return rc;
}
