#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "dvint/commands.hpp"
#include "dvint/dvint.h"
#include "dvint/errors.hpp"
#include "dvint/integrals.hpp"
#include "dvint/numeric.hpp"
#include "dvint/parser.hpp"

struct dvint_problem {
  dvint::ProblemSpec spec;
  dvint::ProductSystem system;
};

struct dvint_request {
  dvint::CommandRequest req;
};

struct dvint_result {
  dvint::CommandResult res;
  std::string json;
};

namespace {

thread_local std::string last_error;

dvint_status fail(dvint_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
dvint_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
  } catch (const dvint::Error& e) {
    return fail(static_cast<dvint_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DVINT_E_UNKNOWN, "out of memory");
  } catch (const std::exception& e) {
    return fail(DVINT_E_UNKNOWN, e.what());
  } catch (...) {
    return fail(DVINT_E_UNKNOWN, "unknown error");
  }
  return DVINT_OK;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dvint_problem* make_problem(const std::string& text) {
  auto p = new dvint_problem;
  try {
    p->spec = dvint::parse_problem_file(text);
    p->system = dvint::compile_problem(p->spec);
  } catch (...) {
    delete p;
    throw;
  }
  return p;
}

#define DVINT_CHECK_HANDLE(h) \
  if (!(h)) return fail(DVINT_E_INVALID_HANDLE, "null handle")

}  // namespace

extern "C" {

DVINT_EXPORT const char* dvint_last_error(void) { return last_error.c_str(); }

DVINT_EXPORT const char* dvint_status_name(dvint_status status) {
  switch (status) {
    case DVINT_OK:
      return "Ok";
    case DVINT_E_INVALID_HANDLE:
      return "InvalidHandle";
    case DVINT_E_UNKNOWN:
      return "Unknown";
    default:
      if (status >= DVINT_E_SYNTAX && status <= DVINT_E_IO)
        return dvint::error_code_name(static_cast<dvint::ErrorCode>(status));
      return "Unknown";
  }
}

DVINT_EXPORT const char* dvint_version(void) { return "0.1.0"; }

DVINT_EXPORT void dvint_string_free(char* s) { std::free(s); }

DVINT_EXPORT dvint_status dvint_request_create(const char* verb, const char* input_path, dvint_request** out) {
  if (!verb || !input_path || !out) return fail(DVINT_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto r = new dvint_request;
    r->req.verb = verb;
    r->req.input_path = input_path;
    *out = r;
  });
}

DVINT_EXPORT dvint_status dvint_request_destroy(dvint_request* req) {
  DVINT_CHECK_HANDLE(req);
  delete req;
  return DVINT_OK;
}

DVINT_EXPORT dvint_status dvint_request_set_input_text(dvint_request* req, const char* text) {
  DVINT_CHECK_HANDLE(req);
  if (!text) return fail(DVINT_E_INVALID_ARGUMENT, "null text");
  return guarded([&] { req->req.input_text = std::string(text); });
}

DVINT_EXPORT dvint_status dvint_request_set_format(dvint_request* req, const char* format) {
  DVINT_CHECK_HANDLE(req);
  if (!format || (std::strcmp(format, "text") != 0 && std::strcmp(format, "json") != 0))
    return fail(DVINT_E_INVALID_ARGUMENT, "format must be text or json");
  return guarded([&] { req->req.format = format; });
}

DVINT_EXPORT dvint_status dvint_request_set_degree(dvint_request* req, int degree) {
  DVINT_CHECK_HANDLE(req);
  if (degree < 0) return fail(DVINT_E_INVALID_ARGUMENT, "degree must be nonnegative");
  req->req.degree = degree;
  return DVINT_OK;
}

DVINT_EXPORT dvint_status dvint_request_add_denominator(dvint_request* req, const char* expr) {
  DVINT_CHECK_HANDLE(req);
  if (!expr) return fail(DVINT_E_INVALID_ARGUMENT, "null expression");
  return guarded([&] { req->req.denominators.emplace_back(expr); });
}

DVINT_EXPORT dvint_status dvint_request_add_integral(dvint_request* req, const char* expr) {
  DVINT_CHECK_HANDLE(req);
  if (!expr) return fail(DVINT_E_INVALID_ARGUMENT, "null expression");
  return guarded([&] { req->req.integrals.emplace_back(expr); });
}

DVINT_EXPORT dvint_status dvint_request_set_tolerance(dvint_request* req, double tol) {
  DVINT_CHECK_HANDLE(req);
  if (!(tol >= 0.0)) return fail(DVINT_E_INVALID_ARGUMENT, "tolerance must be nonnegative");
  req->req.tolerance = tol;
  return DVINT_OK;
}

DVINT_EXPORT dvint_status dvint_request_set_ambient(dvint_request* req, int ambient) {
  DVINT_CHECK_HANDLE(req);
  req->req.ambient = ambient != 0;
  return DVINT_OK;
}

DVINT_EXPORT dvint_status dvint_request_set_darboux_degree(dvint_request* req, int degree) {
  DVINT_CHECK_HANDLE(req);
  if (degree < 0) return fail(DVINT_E_INVALID_ARGUMENT, "degree must be nonnegative");
  req->req.darboux_degree = degree;
  return DVINT_OK;
}

DVINT_EXPORT dvint_status dvint_request_set_init(dvint_request* req, const double* values, size_t n) {
  DVINT_CHECK_HANDLE(req);
  if (!values && n > 0) return fail(DVINT_E_INVALID_ARGUMENT, "null values");
  return guarded([&] { req->req.init.assign(values, values + n); });
}

DVINT_EXPORT dvint_status dvint_request_set_t_end(dvint_request* req, double t_end) {
  DVINT_CHECK_HANDLE(req);
  req->req.t_end = t_end;
  return DVINT_OK;
}

DVINT_EXPORT dvint_status dvint_request_set_step(dvint_request* req, double step) {
  DVINT_CHECK_HANDLE(req);
  if (!(step > 0.0)) return fail(DVINT_E_INVALID_ARGUMENT, "step must be positive");
  req->req.step = step;
  return DVINT_OK;
}

DVINT_EXPORT dvint_status dvint_request_set_csv_path(dvint_request* req, const char* path) {
  DVINT_CHECK_HANDLE(req);
  if (!path) return fail(DVINT_E_INVALID_ARGUMENT, "null path");
  return guarded([&] { req->req.csv_path = path; });
}

DVINT_EXPORT dvint_status dvint_execute(const dvint_request* req, dvint_result** out) {
  DVINT_CHECK_HANDLE(req);
  if (!out) return fail(DVINT_E_INVALID_ARGUMENT, "null result pointer");
  return guarded([&] {
    auto r = new dvint_result;
    r->res = dvint::execute_command(req->req);
    r->json = r->res.document.dump(2) + "\n";
    *out = r;
  });
}

DVINT_EXPORT dvint_status dvint_result_destroy(dvint_result* res) {
  DVINT_CHECK_HANDLE(res);
  delete res;
  return DVINT_OK;
}

DVINT_EXPORT int dvint_result_exit_code(const dvint_result* res) { return res ? res->res.exit_code : 2; }

DVINT_EXPORT const char* dvint_result_output(const dvint_result* res) { return res ? res->res.output.c_str() : ""; }

DVINT_EXPORT const char* dvint_result_json(const dvint_result* res) { return res ? res->json.c_str() : ""; }

DVINT_EXPORT const char* dvint_result_diagnostics(const dvint_result* res) {
  return res ? res->res.diagnostics.c_str() : "";
}

DVINT_EXPORT dvint_status dvint_problem_parse(const char* text, dvint_problem** out) {
  if (!text || !out) return fail(DVINT_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = make_problem(text); });
}

DVINT_EXPORT dvint_status dvint_problem_load(const char* path, dvint_problem** out) {
  if (!path || !out) return fail(DVINT_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dvint::Error(dvint::ErrorCode::Io, std::string("cannot read '") + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    *out = make_problem(ss.str());
  });
}

DVINT_EXPORT dvint_status dvint_problem_destroy(dvint_problem* p) {
  DVINT_CHECK_HANDLE(p);
  delete p;
  return DVINT_OK;
}

DVINT_EXPORT size_t dvint_problem_state_count(const dvint_problem* p) {
  return p ? p->system.system.variety.state_variables().size() : 0;
}

DVINT_EXPORT dvint_status dvint_problem_lie_derivative(const dvint_problem* p, const char* h, char** out) {
  DVINT_CHECK_HANDLE(p);
  if (!h || !out) return fail(DVINT_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto f = dvint::parse_expression(h, p->system.registry());
    *out = dup(dvint::to_string(dvint::lie_derivative(f, p->system)));
  });
}

DVINT_EXPORT dvint_status dvint_problem_verify_integral(const dvint_problem* p, const char* h, int* verified,
                                                        char** residual) {
  DVINT_CHECK_HANDLE(p);
  if (!h || !verified) return fail(DVINT_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto fi = dvint::verify_first_integral(dvint::parse_expression(h, p->system.registry()), p->system);
    *verified = fi.verified ? 1 : 0;
    if (residual) *residual = dup(dvint::to_string(fi.residual));
  });
}

DVINT_EXPORT dvint_status dvint_problem_search(const dvint_problem* p, int degree, const char* denominator,
                                               char** json_out) {
  DVINT_CHECK_HANDLE(p);
  if (!json_out || degree < 0) return fail(DVINT_E_INVALID_ARGUMENT, "invalid argument");
  return guarded([&] {
    std::vector<dvint::FirstIntegral> found;
    if (denominator) {
      auto q = dvint::parse_expression(denominator, p->system.registry());
      if (!q.is_polynomial()) throw dvint::Error(dvint::ErrorCode::InvalidArgument, "denominator must be a polynomial");
      found = dvint::search_rational_integrals(p->system.system, q.numerator(), degree);
    } else {
      found = dvint::search_polynomial_integrals(p->system.system, degree);
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& fi : found) arr.push_back(dvint::to_string(fi.h));
    *json_out = dup(arr.dump());
  });
}

DVINT_EXPORT dvint_status dvint_problem_simulate(const dvint_problem* p, double t0, const double* init, double t_end,
                                                 double step, double* final_state, size_t* samples) {
  DVINT_CHECK_HANDLE(p);
  const std::size_t n = dvint_problem_state_count(p);
  if ((!init && n > 0) || (!final_state && n > 0)) return fail(DVINT_E_INVALID_ARGUMENT, "null buffer");
  return guarded([&] {
    auto traj = dvint::integrate_flow(p->system.system, t0, std::vector<double>(init, init + n), t_end, step);
    const auto& last = traj.values.back();
    std::copy(last.begin(), last.end(), final_state);
    if (samples) *samples = traj.size();
  });
}

}  // extern "C"
