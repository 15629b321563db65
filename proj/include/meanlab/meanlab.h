/* meanlab: generalized Bajraktarevic / Gini / Holder / quasi-arithmetic
 * integral means, their diagonal derivatives, equality deciders and
 * homogeneity classifiers, behind a C interface.
 *
 * Every object is an opaque handle created by an ml_*_create/parse call and
 * released with the matching ml_*_free. Functions report ml_status; on any
 * failure ml_last_error() holds a human-readable message for the calling
 * thread. All handles are immutable after creation and safe to share across
 * threads. Coordinate indices are 1-based.
 */
#ifndef MEANLAB_H
#define MEANLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ml_status {
  ML_OK = 0,
  ML_EINVAL = 1,      /* invalid argument / failed precondition */
  ML_EDOMAIN = 2,     /* input outside the working interval or function domain */
  ML_ECAPABILITY = 3, /* declared smoothness too low for the operation */
  ML_ESINGULAR = 4,   /* vanishing Wronskian or singular witness matrix */
  ML_ENUMERIC = 5,    /* bracketing/root-finding failure */
  ML_EPARSE = 6,      /* malformed JSON job or expression */
  ML_EUNKNOWN = 7
} ml_status;

const char* ml_status_name(ml_status s);
/* message of the most recent failure on this thread; empty string if none */
const char* ml_last_error(void);
const char* ml_version(void);

typedef struct ml_expr ml_expr;
typedef struct ml_pair ml_pair;
typedef struct ml_measure ml_measure;
typedef struct ml_family ml_family;
typedef struct ml_report ml_report;

/* ---- expressions (catalog functions with exact derivatives to order 3) -- */

ml_status ml_expr_parse(const char* json, ml_expr** out);
ml_status ml_expr_eval(const ml_expr* e, double x, int order, double* out); /* order 0..3 */
void ml_expr_free(ml_expr* e);

/* ---- generator pairs ---------------------------------------------------- */

ml_status ml_pair_create(const ml_expr* f, const ml_expr* g, double lo, double hi, int smoothness,
                         ml_pair** out);
/* {"f":...,"g":...,"interval":[lo,hi],"smoothness":3} or {"gini":{...},"interval":[...]} */
ml_status ml_pair_parse(const char* json, ml_pair** out);
/* conjugate == 0: roots (pq_0, pq_1); conjugate != 0: parameters a = pq_0, b = pq_1 */
ml_status ml_pair_gini(double pq_0, double pq_1, int conjugate, double lo, double hi, ml_pair** out);
void ml_pair_free(ml_pair* p);

ml_status ml_pair_det(const ml_pair* p, double x, double y, double* out);
ml_status ml_pair_det_partial(const ml_pair* p, int dx_order, int dy_order, double x, double y, double* out);
ml_status ml_pair_wronskian(const ml_pair* p, double x, double* out);
ml_status ml_pair_phi(const ml_pair* p, double x, double* out);
ml_status ml_pair_psi(const ml_pair* p, double x, double* out);
ml_status ml_pair_phi_prime(const ml_pair* p, double x, double* out);
ml_status ml_pair_third_ratio(const ml_pair* p, double x, double* out);

/* sign_out: +1 positive system, -1 negative system, 0 violation (then
 * *viol_x, *viol_y name an offending grid pair). grid may be NULL to use the
 * default 65-point working grid. */
ml_status ml_pair_chebyshev_check(const ml_pair* p, const double* grid, size_t n, int* sign_out,
                                  double* viol_x, double* viol_y);

ml_status ml_pair_transform(const ml_pair* p, double a, double b, double c, double d, ml_pair** out);
ml_status ml_pair_dilate(const ml_pair* p, double lambda, ml_pair** out);

/* witness w with pair_a = (w0*h + w1*k, w2*h + w3*k) over pair_b = (h, k);
 * *found is 0 when the candidate fails grid verification (not an error) */
ml_status ml_pair_recover_witness(const ml_pair* pair_a, const ml_pair* pair_b, double x1, double x2,
                                  const double* grid, size_t n, int* found, double w_out[4]);

/* ---- measures ----------------------------------------------------------- */

ml_status ml_measure_two_point(double s, ml_measure** out);
ml_status ml_measure_uniform(int nodes, ml_measure** out);
ml_status ml_measure_counting(int d, ml_measure** out);
ml_status ml_measure_dirac_mix(const double* nodes, const double* weights, size_t n, ml_measure** out);
/* {"dirac_mix":[[t,w],...]} | {"uniform":{"nodes":N}} | {"counting":{"d":k}}
 * | {"two_point":{"s":s}} | {"labels":{"weights":[...]}} */
ml_status ml_measure_parse(const char* json, ml_measure** out);
void ml_measure_free(ml_measure* m);

size_t ml_measure_size(const ml_measure* m);
ml_status ml_measure_node(const ml_measure* m, size_t k, double* t, double* w);
ml_status ml_measure_integrate(const ml_measure* m, double (*phi)(double t, void* ctx), void* ctx,
                               double* out);
ml_status ml_measure_first_moment(const ml_measure* m, double* out);
ml_status ml_measure_central_moment(const ml_measure* m, int n, double* out);

/* ---- mean families ------------------------------------------------------ */

ml_status ml_family_two_point(ml_family** out);
ml_status ml_family_projection(int d, ml_family** out);
/* {"two_point":{}} | {"projection":{"d":k}} | {"weighted_arithmetic":{"phis":[...]}} */
ml_status ml_family_parse(const char* json, ml_family** out);
void ml_family_free(ml_family* f);

int ml_family_dim(const ml_family* f);
ml_status ml_family_eval(const ml_family* f, const double* x, size_t d, double t, double* out);
ml_status ml_family_partial(const ml_family* f, int i, const double* x, size_t d, double t, double* out);
ml_status ml_family_centered_partial(const ml_family* f, const ml_measure* mu, int i, const double* x,
                                     size_t d, double t, double* out);
/* satisfied != 0 when both the vanishing-mass and triple-integral conditions hold */
ml_status ml_family_nondegeneracy(const ml_family* f, const ml_measure* mu, double x, double* mt1_mass,
                                  int triple_out[3], double* mt0_value, int* satisfied);

/* ---- mean evaluation ---------------------------------------------------- */

ml_status ml_eval_implicit(const ml_pair* p, const ml_family* f, const ml_measure* mu, const double* x,
                           size_t d, double* out);
ml_status ml_eval_explicit(const ml_pair* p, const ml_family* f, const ml_measure* mu, const double* x,
                           size_t d, double* out);
ml_status ml_eval_quasi_arithmetic(const ml_expr* fn, double lo, double hi, const ml_family* f,
                                   const ml_measure* mu, const double* x, size_t d, double* out);
ml_status ml_eval_weighted_qa(const ml_expr* fn, double lo, double hi, const double* x, const double* t,
                              size_t d, double* out);
ml_status ml_eval_gini(double pq_0, double pq_1, int conjugate, const ml_family* f, const ml_measure* mu,
                       const double* x, size_t d, double* out);
ml_status ml_eval_holder(double p, const ml_family* f, const ml_measure* mu, const double* x, size_t d,
                         double* out);
/* weights may be NULL for 1/d each */
ml_status ml_eval_gini_discrete(double pq_0, double pq_1, int conjugate, const double* x,
                                const double* weights, size_t d, double* out);

/* ---- diagonal derivatives ----------------------------------------------- */

ml_status ml_diag_d1(const ml_pair* p, const ml_family* f, const ml_measure* mu, double x, int i,
                     double* out);
ml_status ml_diag_d2(const ml_pair* p, const ml_family* f, const ml_measure* mu, double x, int i, int j,
                     double* out);
ml_status ml_diag_d3(const ml_pair* p, const ml_family* f, const ml_measure* mu, double x, int i, int j,
                     int l, double* out);
/* indices holds `order` 1-based coordinates; h <= 0 selects the default step */
ml_status ml_fd_diag(const ml_pair* p, const ml_family* f, const ml_measure* mu, double x, int order,
                     const int* indices, double h, double* out);

/* ---- deciders ------------------------------------------------------------ */

/* grid == NULL selects the default 33-point working grid */
ml_status ml_decide_equality(const ml_pair* pair_a, const ml_pair* pair_b, const ml_family* f,
                             const ml_measure* mu, const double* grid, size_t n, uint64_t seed,
                             ml_report** out);
ml_status ml_decide_equality_qa(const ml_expr* fn_f, const ml_expr* fn_g, double lo, double hi,
                                const ml_family* f, const ml_measure* mu, const double* grid, size_t n,
                                uint64_t seed, ml_report** out);
ml_status ml_classify_homogeneous(const ml_pair* p, const ml_family* f, const ml_measure* mu,
                                  const double* grid, size_t n, uint64_t seed, ml_report** out);
ml_status ml_classify_homogeneous_qa(const ml_expr* fn, double lo, double hi, const ml_family* f,
                                     const ml_measure* mu, const double* grid, size_t n, uint64_t seed,
                                     ml_report** out);
ml_status ml_homogeneity_scan(const ml_pair* p, const ml_family* f, const ml_measure* mu, int n_lambda,
                              int n_x, uint64_t seed, ml_report** out);

/* ---- interval helpers ---------------------------------------------------- */

ml_status ml_ratio_set(double lo, double hi, double* out_lo, double* out_hi);
ml_status ml_lambda_section(double lo, double hi, double lambda, double* out_lo, double* out_hi);

/* ---- reports -------------------------------------------------------------- */

/* "equal" | "not-equal" | "homogeneous" | "not-homogeneous" | "indeterminate"
 * ("scan" reports answer "report") */
const char* ml_report_verdict(const ml_report* r);
int ml_report_exit_status(const ml_report* r); /* 0 decided, 2 indeterminate */
/* serialized report; free with ml_string_free */
ml_status ml_report_json(const ml_report* r, char** out);
void ml_report_free(ml_report* r);
void ml_string_free(char* s);

/* ---- batch jobs ----------------------------------------------------------- */

/* Runs one job document (see README for schemas). overrides_json may be NULL
 * or a subset of {"command","seed","grid","tol"}. Outputs are optional; when
 * requested they must be released with ml_string_free. *exit_status receives
 * the CLI convention: 0 done, 2 indeterminate verdict (1 and 3 arrive as
 * ML_E* statuses instead). */
ml_status ml_run_job(const char* job_json, const char* overrides_json, char** report_json,
                     char** report_text, int* exit_status);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MEANLAB_H */
