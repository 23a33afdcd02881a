#ifndef DISCRIMLAB_H
#define DISCRIMLAB_H

/* discrimlab - operational discriminability toolkit.
 *
 * C interface to the discrimlab shared library. All functions return a
 * dlab_status; outputs are written through pointer arguments. A detailed,
 * thread-local message for the most recent failure is available via
 * dlab_last_error_message(). Opaque handles (dlab_scenario, dlab_report)
 * are created and destroyed by the library.
 *
 * Complex 2x2 matrices cross this boundary as double[8] in row-major
 * (re,im) interleaved order: re00,im00,re01,im01,re10,im10,re11,im11.
 */

#include <stdint.h>
#include <stddef.h>

#if defined(_WIN32)
#  if defined(DLAB_BUILD)
#    define DLAB_API __declspec(dllexport)
#  else
#    define DLAB_API __declspec(dllimport)
#  endif
#else
#  define DLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dlab_status {
    DLAB_OK = 0,
    DLAB_ERROR_INVALID_ARGUMENT = 1,  /* bad input, failed precondition, bad config */
    DLAB_ERROR_DEGENERATE = 2,        /* conditional preparation with vanishing probability */
    DLAB_ERROR_INCONSISTENT = 3,      /* statistics violate a structural constraint */
    DLAB_ERROR_IO = 4,                /* file could not be written */
    DLAB_ERROR_INTERNAL = 5
} dlab_status;

DLAB_API const char* dlab_status_name(dlab_status status);
DLAB_API const char* dlab_last_error_message(void);
DLAB_API const char* dlab_version(void);

/* ---------------------------------------------------------------- qubit */

/* rho = (I + s.sigma)/2; rejects ||s|| > 1 + 1e-12. */
DLAB_API dlab_status dlab_bloch_to_density(const double bloch[3], double out_matrix[8]);
DLAB_API dlab_status dlab_purity(const double bloch[3], double* out);
DLAB_API dlab_status dlab_overlap(const double bloch_a[3], const double bloch_b[3], double* out);
/* Uhlmann fidelity of two qubit density matrices (validated raw 2x2 input). */
DLAB_API dlab_status dlab_fidelity(const double matrix_a[8], const double matrix_b[8], double* out);
/* Optimal minimum-error guessing probability for {pi+, rho+; pi-, rho-}. */
DLAB_API dlab_status dlab_helstrom_guess(double pi_plus, const double bloch_plus[3],
                                         double pi_minus, const double bloch_minus[3],
                                         double* out);

/* ---------------------------------------------------- discriminability game */

typedef struct dlab_game_stats {
    double p_mix_id;
    double p_mix_swap;
    double p_pur;
    int empirical;          /* 0 = exact, 1 = sampled */
    uint64_t n_samples;     /* sampled only */
    double ci_mix_id;       /* 3-sigma half-widths, sampled only */
    double ci_mix_swap;
    double ci_pur;
} dlab_game_stats;

DLAB_API dlab_status dlab_gram_state(double eta1, double gamma_re, double gamma_im,
                                     double out_matrix[8]);
DLAB_API dlab_status dlab_prior_state(double eta1, int swap_labeling, double out_matrix[8]);
DLAB_API dlab_status dlab_swap_pass_prob(const double matrix_a[8], const double matrix_b[8],
                                         double* out);
DLAB_API dlab_status dlab_game_stats_exact(double eta1, double gamma_re, double gamma_im,
                                           dlab_game_stats* out);
DLAB_API dlab_status dlab_game_stats_sampled(double eta1, double gamma_re, double gamma_im,
                                             uint64_t n, uint64_t seed, dlab_game_stats* out);
DLAB_API dlab_status dlab_d_op(const dlab_game_stats* stats, double eta1, double* out);
DLAB_API dlab_status dlab_d_closed_form(double eta1, double eta2, double overlap_sq, double* out);

/* ----------------------------------------------------------- ontic model */

DLAB_API dlab_status dlab_pnc_residual(double t, double t_tilde, double e, double e_tilde,
                                       double* out);
/* Pass probabilities of the two-point ontic game under response [[a,b],[b,c]]. */
DLAB_API dlab_status dlab_ontic_game_probs(double t, double e,
                                           double a, double b, double c,
                                           double* out_p_pur, double* out_p_mix);
DLAB_API dlab_status dlab_d_op_model(double t, double t_tilde, double e, double e_tilde,
                                     double q, double eta1, double eta2, double* out);
DLAB_API dlab_status dlab_direct_bound(double q, double c, double* out);
DLAB_API dlab_status dlab_quantum_saturation(double c, double* out_d_qm, double* out_bound,
                                             double* out_gap);
DLAB_API dlab_status dlab_q_star(double eta_min, double d, double* out);

typedef struct dlab_nc_search_result {
    double max_d_op;
    double t, t_tilde, e, e_tilde;  /* argmax model */
    int resolution;
    uint64_t evaluations;
} dlab_nc_search_result;

/* Grid-plus-refine maximum of the game score over preparation-noncontextual
 * two-point models. sharp != 0 pins the sharp-test structure; pass c through
 * c_opt (may be NULL, in which case the confusability is searched too). */
DLAB_API dlab_status dlab_search_nc_max(double q, double eta1, double eta2, int sharp,
                                        const double* c_opt, int resolution,
                                        dlab_nc_search_result* out);

#define DLAB_MAX_ONTIC_STATES 16

typedef struct dlab_nc_general_result {
    double best;        /* best found value: a lower bound on the NC maximum */
    int complete;       /* 0 if the evaluation budget ran out before convergence */
    int n;
    double mu_t[DLAB_MAX_ONTIC_STATES];
    double mu_t_tilde[DLAB_MAX_ONTIC_STATES];
    double mu_eta[DLAB_MAX_ONTIC_STATES];
    uint64_t evaluations;
} dlab_nc_general_result;

DLAB_API dlab_status dlab_search_nc_max_general(int n, double q, double eta1, double eta2,
                                                int t_support_size, const double* c_opt,
                                                uint64_t budget, uint64_t seed,
                                                dlab_nc_general_result* out);

/* ------------------------------------------------------------ Bell bound */

typedef struct dlab_scenario dlab_scenario;

/* amps: (re,im) pairs of the amplitudes on |00>,|01>,|10>,|11>; first factor
 * is Alice. Fails with DLAB_ERROR_DEGENERATE if an Alice outcome has
 * probability below 1e-12. */
DLAB_API dlab_status dlab_scenario_from_bipartite(const double amps[8],
                                                  const double alice0[3],
                                                  const double alice1[3],
                                                  dlab_scenario** out);
/* pi_plus[x] is the + outcome prior at setting x; bloch holds the four
 * conditional Bloch vectors in order s+|0, s-|0, s+|1, s-|1. */
DLAB_API dlab_status dlab_scenario_from_table(const double pi_plus[2], const double bloch[12],
                                              dlab_scenario** out);
DLAB_API void dlab_scenario_free(dlab_scenario* scenario);

DLAB_API dlab_status dlab_scenario_steering_vector(const dlab_scenario* scenario, int x,
                                                   double out[3]);
DLAB_API dlab_status dlab_scenario_swap_stats(const dlab_scenario* scenario, int x,
                                              double* out_p_pur_plus, double* out_p_pur_minus,
                                              double* out_p_ov);
DLAB_API dlab_status dlab_scenario_separation_weighted(const dlab_scenario* scenario, int x,
                                                       double* out);
DLAB_API dlab_status dlab_scenario_correlator(const dlab_scenario* scenario, int x,
                                              const double b[3], double* out);
DLAB_API dlab_status dlab_scenario_chsh(const dlab_scenario* scenario, const double b0[3],
                                        const double b1[3], double* out);
DLAB_API dlab_status dlab_scenario_chsh_bound(const dlab_scenario* scenario, double* out);
DLAB_API dlab_status dlab_scenario_maximize_chsh(const dlab_scenario* scenario, double tol,
                                                 uint64_t seed, int starts,
                                                 double* out_s_max,
                                                 double out_b0[3], double out_b1[3]);
/* Requires pure conditional states at setting x. holds reports
 * r_tilde <= 2 D_x - 1 (+1e-10). */
DLAB_API dlab_status dlab_scenario_lemma3(const dlab_scenario* scenario, int x,
                                          double* out_r_tilde, double* out_two_d_minus_one,
                                          int* out_holds);

/* Weighted separation directly from (possibly empirical) SWAP statistics. */
DLAB_API dlab_status dlab_separation_weighted(double pi_plus, double pi_minus,
                                              double p_pur_plus, double p_pur_minus,
                                              double p_ov, double* out);
DLAB_API dlab_status dlab_separation_symmetric(double p_pur_plus, double p_pur_minus,
                                               double p_ov, double* out);
DLAB_API dlab_status dlab_discriminability_bound(double d0, double d1, double* out);

/* -------------------------------------------------------------- reports */

typedef struct dlab_report dlab_report;

/* Runs one toolkit command over a flat key=value configuration (one
 * assignment per line, '#' comments, later assignments win). Commands:
 * discrim, ontic-bound, ontic-search, bell-verify, bell-sweep, sample. */
DLAB_API dlab_status dlab_run(const char* command, const char* config_text, dlab_report** out);

/* format is "csv" or "json". Rendered text is heap-allocated; release it
 * with dlab_string_free. */
DLAB_API dlab_status dlab_report_render(const dlab_report* report, const char* format,
                                        char** out_text);
DLAB_API dlab_status dlab_report_write(const dlab_report* report, const char* format,
                                       const char* path);
DLAB_API int dlab_report_row_count(const dlab_report* report);
/* 1 when every certification row passed its tolerance. */
DLAB_API int dlab_report_all_pass(const dlab_report* report);
DLAB_API void dlab_report_free(dlab_report* report);
DLAB_API void dlab_string_free(char* text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DISCRIMLAB_H */
