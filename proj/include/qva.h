/* qva — exact engine for a quantum vertex algebra and its quantum-algebra
 * counterpart, behind a C interface.
 *
 * Conventions:
 *   - All structured input and output is JSON text (UTF-8, NUL-terminated).
 *   - Functions return QVA_OK (0) on success and a QVA_E_* code on failure.
 *     On failure *out is set to NULL and qva_last_error() describes the
 *     problem for the calling thread.
 *   - Output strings are heap-allocated; release them with qva_string_free().
 *   - Verification functions return QVA_OK whenever the computation itself
 *     completed; the verdict is the "pass" field of the returned report.
 *
 * A rational function g(z) is encoded as {"num": [...], "den": [...]} with
 * coefficient arrays listed from the constant term upward; entries are
 * integers or "p/q" strings. "den" defaults to [1].
 */
#ifndef QVA_H
#define QVA_H

#ifdef __cplusplus
extern "C" {
#endif

enum {
  QVA_OK = 0,
  QVA_E_INVALID_INPUT = 1,
  QVA_E_INVALID_CONFIG = 2,
  QVA_E_SYMMETRY_VIOLATED = 3,
  QVA_E_IRRATIONAL_ROOTS = 4,
  QVA_E_ZERO_LEADING_TERM = 5,
  QVA_E_TRUNCATION_EXCEEDED = 6,
  QVA_E_NEGATIVE_INDEX = 7,
  QVA_E_ZERO_ALPHA = 8,
  QVA_E_NOT_ANALYTIC = 9,
  QVA_E_FACTORIZATION_MISMATCH = 10,
  QVA_E_INCONSISTENT = 11,
  QVA_E_CHECK_FAILED = 12,
  QVA_E_INTERNAL = 13
};

/* Library version, e.g. "0.1.0". Static storage; do not free. */
const char* qva_version(void);

/* Message for the most recent failure on the calling thread. Static
 * thread-local storage; valid until the next qva_* call on this thread. */
const char* qva_last_error(void);

/* Stable snake_case name for a QVA_* return code ("ok", "invalid_input",
 * ...). Static storage; do not free. */
const char* qva_error_name(int code);

/* Release a string returned through an out-parameter. NULL is a no-op. */
void qva_string_free(char* s);

/* ---- stateless operations on a symmetric rational function ---- */

/* Expand g as a series: at = "0" (around z = 0), "inf" (around z = infinity,
 * reported in the variable 1/z), or "exp" (g(e^x) around x = 0). Output:
 * {"at": ..., "var": ..., "lo": ..., "trunc": ..., "coeffs": [...]}. */
int qva_expand(const char* g_json, const char* at, int trunc, char** out_json);

/* Multiplicative factorization of h(x) = g(e^x): h = eps * q(x) / q(-x)
 * with q(0) = 1. Output: {"epsilon": ..., "h": series, "q": series,
 * "canonical": {"sign": ..., "shift": ..., "poly": [...]}}. */
int qva_factor(const char* g_json, int trunc, char** out_json);

/* ---- the vacuum module engine (opaque handle) ---- */

typedef struct qva_engine qva_engine;

/* Create an engine from {"g": {...}, "degree_bound": D, "window": [lo, hi],
 * "trunc": T}. "window" and "trunc" are optional; generous defaults are
 * derived from D. The engine owns exact expansions of h and q and the
 * memoized coefficient operators. */
int qva_engine_create(const char* config_json, qva_engine** out);
void qva_engine_destroy(qva_engine* engine);

/* {"super": ..., "epsilon": ..., "alpha_defined": ...} plus window/bounds. */
int qva_engine_info(qva_engine* engine, char** out_json);

/* Spanning vectors of the vacuum module at one weight: array of vectors,
 * each an array of {"mono": {"e": [...], "f": [...], "psi": [...]},
 * "c": ...} terms with modes listed as negative integers. */
int qva_engine_basis(qva_engine* engine, int degree, char** out_json);

/* Apply a generator mode ("e" | "f" | "psi", integer mode) to a vector. */
int qva_engine_act(qva_engine* engine, const char* gen, int mode,
                   const char* vector_json, char** out_json);

/* Apply the i-th dressing operator (i >= 0) to a vector. */
int qva_engine_phi(qva_engine* engine, int i, const char* vector_json,
                   char** out_json);

/* Verify the six defining relations on all spanning vectors of weight
 * <= degree, with both outer modes ranging over [win_lo, win_hi]. */
int qva_engine_verify_relations(qva_engine* engine, int degree, int win_lo,
                                int win_hi, char** out_json);

/* Verify linear independence of the spanning families degree by degree
 * against the closed-form counts. */
int qva_engine_verify_independence(qva_engine* engine, int max_degree,
                                   char** out_json);

/* Verify the grading derivation: commutation with every generator mode in
 * [m_lo, m_hi] on weights <= degree, and with the dressing operators up to
 * index phi_imax. */
int qva_engine_verify_derivation(qva_engine* engine, int degree, int m_lo,
                                 int m_hi, int phi_imax, char** out_json);

/* ---- the quantum-algebra side ---- */

/* Zero-mode module constructed from a highest-weight scalar lambda
 * ("p/q" or integer text). Output: {"dim": 2, "e0": ..., "f0": ...,
 * "psi0": ...}. Satisfies the zero-mode relations exactly at alpha = -1. */
int qva_u_lambda(const char* lambda, char** out_json);

/* Verify the five zero-mode relations for a module at a given alpha. */
int qva_verify_aalpha(const char* alpha, const char* module_json,
                      char** out_json);

/* Decide irreducibility of a 2-dimensional zero-mode module (exact,
 * complete over the algebraic closure). */
int qva_irreducible(const char* module_json, char** out_json);

/* Classify the zero-mode algebra at alpha: generic (with a nilpotency
 * certificate), alpha = -1 (the lambda family), alpha = 1 (open), or an
 * error for alpha = 0. */
int qva_classify_aalpha(const char* alpha, char** out_json);

/* Build the truncated induced module over the mode algebra of g from a
 * zero-mode module, through total degree degree_bound with straightening
 * words capped at word_cap letters, then verify every graded relation on
 * it. Output: {"module": {...}, "relations": {...}}. */
int qva_verma(const char* g_json, const char* module_json, int degree_bound,
              int word_cap, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QVA_H */
