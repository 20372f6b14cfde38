#ifndef DVINT_H
#define DVINT_H

#include <stddef.h>

#if defined(_WIN32)
#define DVINT_EXPORT __declspec(dllexport)
#else
#define DVINT_EXPORT __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values 1..16 mirror the library's error categories. */
typedef enum dvint_status {
  DVINT_OK = 0,
  DVINT_E_SYNTAX = 1,
  DVINT_E_UNKNOWN_VARIABLE = 2,
  DVINT_E_DUPLICATE_VARIABLE = 3,
  DVINT_E_MISSING_SECTION = 4,
  DVINT_E_ZERO_DENOMINATOR = 5,
  DVINT_E_DENOMINATOR_VANISHES = 6,
  DVINT_E_INCONSISTENT_IDEAL = 7,
  DVINT_E_REGISTRY_MISMATCH = 8,
  DVINT_E_MALFORMED_RHS = 9,
  DVINT_E_DEGENERATE_LEADING_DERIVATIVE = 10,
  DVINT_E_NOT_SOLVABLE = 11,
  DVINT_E_OFF_VARIETY = 12,
  DVINT_E_POLE = 13,
  DVINT_E_DENOMINATOR_NEAR_ZERO = 14,
  DVINT_E_INVALID_ARGUMENT = 15,
  DVINT_E_IO = 16,
  DVINT_E_INVALID_HANDLE = 100,
  DVINT_E_UNKNOWN = 101
} dvint_status;

typedef struct dvint_problem dvint_problem; /* compiled problem file */
typedef struct dvint_request dvint_request; /* one CLI-style command */
typedef struct dvint_result dvint_result;   /* report of an executed request */

/* Message of the last failing call on this thread ("" if none). */
DVINT_EXPORT const char* dvint_last_error(void);
DVINT_EXPORT const char* dvint_status_name(dvint_status status);
DVINT_EXPORT const char* dvint_version(void);
/* Frees strings returned through char** out-parameters. */
DVINT_EXPORT void dvint_string_free(char* s);

/* Commands. */
DVINT_EXPORT dvint_status dvint_request_create(const char* verb, const char* input_path, dvint_request** out);
DVINT_EXPORT dvint_status dvint_request_destroy(dvint_request* req);
/* Use `text` instead of reading input_path (still used in diagnostics). */
DVINT_EXPORT dvint_status dvint_request_set_input_text(dvint_request* req, const char* text);
DVINT_EXPORT dvint_status dvint_request_set_format(dvint_request* req, const char* format);
DVINT_EXPORT dvint_status dvint_request_set_degree(dvint_request* req, int degree);
DVINT_EXPORT dvint_status dvint_request_add_denominator(dvint_request* req, const char* expr);
DVINT_EXPORT dvint_status dvint_request_add_integral(dvint_request* req, const char* expr);
DVINT_EXPORT dvint_status dvint_request_set_tolerance(dvint_request* req, double tol);
DVINT_EXPORT dvint_status dvint_request_set_ambient(dvint_request* req, int ambient);
DVINT_EXPORT dvint_status dvint_request_set_darboux_degree(dvint_request* req, int degree);
DVINT_EXPORT dvint_status dvint_request_set_init(dvint_request* req, const double* values, size_t n);
DVINT_EXPORT dvint_status dvint_request_set_t_end(dvint_request* req, double t_end);
DVINT_EXPORT dvint_status dvint_request_set_step(dvint_request* req, double step);
DVINT_EXPORT dvint_status dvint_request_set_csv_path(dvint_request* req, const char* path);

/* Runs the command. Problem-level failures are reported in the result
   (exit code 1 or 2); only invalid handles or internal failures return
   an error status. */
DVINT_EXPORT dvint_status dvint_execute(const dvint_request* req, dvint_result** out);
DVINT_EXPORT dvint_status dvint_result_destroy(dvint_result* res);
DVINT_EXPORT int dvint_result_exit_code(const dvint_result* res);
DVINT_EXPORT const char* dvint_result_output(const dvint_result* res);      /* requested format */
DVINT_EXPORT const char* dvint_result_json(const dvint_result* res);        /* always JSON */
DVINT_EXPORT const char* dvint_result_diagnostics(const dvint_result* res); /* path:line:col lines */

/* Direct access. */
DVINT_EXPORT dvint_status dvint_problem_parse(const char* text, dvint_problem** out);
DVINT_EXPORT dvint_status dvint_problem_load(const char* path, dvint_problem** out);
DVINT_EXPORT dvint_status dvint_problem_destroy(dvint_problem* p);
DVINT_EXPORT size_t dvint_problem_state_count(const dvint_problem* p);
/* Lie derivative of h along the section, modulo the ideal. */
DVINT_EXPORT dvint_status dvint_problem_lie_derivative(const dvint_problem* p, const char* h, char** out);
DVINT_EXPORT dvint_status dvint_problem_verify_integral(const dvint_problem* p, const char* h, int* verified,
                                                        char** residual);
/* JSON array of integrals; denominator may be NULL for a polynomial search. */
DVINT_EXPORT dvint_status dvint_problem_search(const dvint_problem* p, int degree, const char* denominator,
                                               char** json_out);
/* RK4 from (t0, init); final_state receives dvint_problem_state_count values. */
DVINT_EXPORT dvint_status dvint_problem_simulate(const dvint_problem* p, double t0, const double* init, double t_end,
                                                 double step, double* final_state, size_t* samples);

#ifdef __cplusplus
}
#endif

#endif /* DVINT_H */
