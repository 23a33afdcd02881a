#include "discrimlab/discrimlab.h"

#include "bell.hpp"
#include "config.hpp"
#include "error.hpp"
#include "game.hpp"
#include "ontic.hpp"
#include "qubit.hpp"
#include "report.hpp"
#include "runner.hpp"

#include <cstring>
#include <new>
#include <string>

using namespace discrimlab;

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// maps core exceptions onto status codes; every API entry point funnels
// through here
template <typename Fn>
dlab_status guarded(Fn&& fn) {
    try {
        fn();
        return DLAB_OK;
    } catch (const DegenerateConditioningError& e) {
        set_error(e.what());
        return DLAB_ERROR_DEGENERATE;
    } catch (const InconsistentStatisticsError& e) {
        set_error(e.what());
        return DLAB_ERROR_INCONSISTENT;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return DLAB_ERROR_INVALID_ARGUMENT;
    } catch (const std::runtime_error& e) {
        set_error(e.what());
        return DLAB_ERROR_IO;
    } catch (const std::exception& e) {
        set_error(e.what());
        return DLAB_ERROR_INTERNAL;
    }
}

dlab_status require(bool ok, const char* message) {
    if (ok) return DLAB_OK;
    set_error(message);
    return DLAB_ERROR_INVALID_ARGUMENT;
}

Matrix2c matrix_from_c(const double m[8]) {
    Matrix2c out;
    out(0, 0) = {m[0], m[1]};
    out(0, 1) = {m[2], m[3]};
    out(1, 0) = {m[4], m[5]};
    out(1, 1) = {m[6], m[7]};
    return out;
}

void matrix_to_c(const Matrix2c& m, double out[8]) {
    out[0] = m(0, 0).real();
    out[1] = m(0, 0).imag();
    out[2] = m(0, 1).real();
    out[3] = m(0, 1).imag();
    out[4] = m(1, 0).real();
    out[5] = m(1, 0).imag();
    out[6] = m(1, 1).real();
    out[7] = m(1, 1).imag();
}

Vector3 vec3_from_c(const double v[3]) { return Vector3(v[0], v[1], v[2]); }

void vec3_to_c(const Vector3& v, double out[3]) {
    out[0] = v.x();
    out[1] = v.y();
    out[2] = v.z();
}

void stats_to_c(const GameStats& s, dlab_game_stats* out) {
    out->p_mix_id = s.p_mix_id;
    out->p_mix_swap = s.p_mix_swap;
    out->p_pur = s.p_pur;
    out->empirical = s.empirical ? 1 : 0;
    out->n_samples = s.n_samples;
    out->ci_mix_id = s.ci_mix_id;
    out->ci_mix_swap = s.ci_mix_swap;
    out->ci_pur = s.ci_pur;
}

GameStats stats_from_c(const dlab_game_stats* s) {
    GameStats out;
    out.p_mix_id = s->p_mix_id;
    out.p_mix_swap = s->p_mix_swap;
    out.p_pur = s->p_pur;
    out.empirical = s->empirical != 0;
    out.n_samples = s->n_samples;
    out.ci_mix_id = s->ci_mix_id;
    out.ci_mix_swap = s->ci_mix_swap;
    out.ci_pur = s->ci_pur;
    return out;
}

}  // namespace

struct dlab_scenario {
    ConditionalScenario scenario;
};

struct dlab_report {
    Report report;
};

extern "C" {

const char* dlab_status_name(dlab_status status) {
    switch (status) {
        case DLAB_OK: return "ok";
        case DLAB_ERROR_INVALID_ARGUMENT: return "invalid argument";
        case DLAB_ERROR_DEGENERATE: return "degenerate conditioning";
        case DLAB_ERROR_INCONSISTENT: return "inconsistent statistics";
        case DLAB_ERROR_IO: return "i/o error";
        case DLAB_ERROR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* dlab_last_error_message(void) { return g_last_error.c_str(); }

const char* dlab_version(void) { return "0.1.0"; }

dlab_status dlab_bloch_to_density(const double bloch[3], double out_matrix[8]) {
    if (auto st = require(bloch && out_matrix, "null pointer argument")) return st;
    return guarded([&] {
        matrix_to_c(QubitState::from_bloch(vec3_from_c(bloch)).density(), out_matrix);
    });
}

dlab_status dlab_purity(const double bloch[3], double* out) {
    if (auto st = require(bloch && out, "null pointer argument")) return st;
    return guarded([&] { *out = purity(QubitState::from_bloch(vec3_from_c(bloch))); });
}

dlab_status dlab_overlap(const double bloch_a[3], const double bloch_b[3], double* out) {
    if (auto st = require(bloch_a && bloch_b && out, "null pointer argument")) return st;
    return guarded([&] {
        *out = overlap(QubitState::from_bloch(vec3_from_c(bloch_a)),
                       QubitState::from_bloch(vec3_from_c(bloch_b)));
    });
}

dlab_status dlab_fidelity(const double matrix_a[8], const double matrix_b[8], double* out) {
    if (auto st = require(matrix_a && matrix_b && out, "null pointer argument")) return st;
    return guarded([&] { *out = fidelity_qubit(matrix_from_c(matrix_a), matrix_from_c(matrix_b)); });
}

dlab_status dlab_helstrom_guess(double pi_plus, const double bloch_plus[3], double pi_minus,
                                const double bloch_minus[3], double* out) {
    if (auto st = require(bloch_plus && bloch_minus && out, "null pointer argument")) return st;
    return guarded([&] {
        *out = helstrom_guess(pi_plus, QubitState::from_bloch(vec3_from_c(bloch_plus)), pi_minus,
                              QubitState::from_bloch(vec3_from_c(bloch_minus)));
    });
}

dlab_status dlab_gram_state(double eta1, double gamma_re, double gamma_im, double out_matrix[8]) {
    if (auto st = require(out_matrix != nullptr, "null pointer argument")) return st;
    return guarded([&] {
        matrix_to_c(gram_state(TwoStateEnsemble::make(eta1, {gamma_re, gamma_im})), out_matrix);
    });
}

dlab_status dlab_prior_state(double eta1, int swap_labeling, double out_matrix[8]) {
    if (auto st = require(out_matrix != nullptr, "null pointer argument")) return st;
    return guarded([&] {
        matrix_to_c(prior_state(TwoStateEnsemble::make(eta1, 0.0),
                                swap_labeling ? Labeling::swap : Labeling::identity),
                    out_matrix);
    });
}

dlab_status dlab_swap_pass_prob(const double matrix_a[8], const double matrix_b[8], double* out) {
    if (auto st = require(matrix_a && matrix_b && out, "null pointer argument")) return st;
    return guarded([&] { *out = swap_pass_prob(matrix_from_c(matrix_a), matrix_from_c(matrix_b)); });
}

dlab_status dlab_game_stats_exact(double eta1, double gamma_re, double gamma_im,
                                  dlab_game_stats* out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    return guarded([&] {
        stats_to_c(game_stats_exact(TwoStateEnsemble::make(eta1, {gamma_re, gamma_im})), out);
    });
}

dlab_status dlab_game_stats_sampled(double eta1, double gamma_re, double gamma_im, uint64_t n,
                                    uint64_t seed, dlab_game_stats* out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    return guarded([&] {
        stats_to_c(game_stats_sampled(TwoStateEnsemble::make(eta1, {gamma_re, gamma_im}), n, seed),
                   out);
    });
}

dlab_status dlab_d_op(const dlab_game_stats* stats, double eta1, double* out) {
    if (auto st = require(stats && out, "null pointer argument")) return st;
    return guarded([&] {
        *out = d_op(stats_from_c(stats), TwoStateEnsemble::make(eta1, 0.0));
    });
}

dlab_status dlab_d_closed_form(double eta1, double eta2, double overlap_sq, double* out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    return guarded([&] { *out = d_closed_form(eta1, eta2, overlap_sq); });
}

dlab_status dlab_pnc_residual(double t, double t_tilde, double e, double e_tilde, double* out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    return guarded([&] { *out = pnc_residual(OnticModel2::make(t, t_tilde, e, e_tilde)); });
}

dlab_status dlab_ontic_game_probs(double t, double e, double a, double b, double c,
                                  double* out_p_pur, double* out_p_mix) {
    if (auto st = require(out_p_pur && out_p_mix, "null pointer argument")) return st;
    return guarded([&] {
        const auto probs = game_probs(OnticModel2::make(t, 0.0, e, 0.0),
                                      ResponseMatrix::make(a, b, c));
        *out_p_pur = probs.p_pur;
        *out_p_mix = probs.p_mix;
    });
}

dlab_status dlab_d_op_model(double t, double t_tilde, double e, double e_tilde, double q,
                            double eta1, double eta2, double* out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    return guarded([&] {
        *out = d_op_model(OnticModel2::make(t, t_tilde, e, e_tilde), q, eta1, eta2);
    });
}

dlab_status dlab_direct_bound(double q, double c, double* out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    return guarded([&] { *out = direct_bound(q, c); });
}

dlab_status dlab_quantum_saturation(double c, double* out_d_qm, double* out_bound,
                                    double* out_gap) {
    if (auto st = require(out_d_qm && out_bound && out_gap, "null pointer argument")) return st;
    return guarded([&] {
        const auto r = quantum_saturation(c);
        *out_d_qm = r.d_qm;
        *out_bound = r.bound;
        *out_gap = r.gap;
    });
}

dlab_status dlab_q_star(double eta_min, double d, double* out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    return guarded([&] { *out = q_star(eta_min, d); });
}

dlab_status dlab_search_nc_max(double q, double eta1, double eta2, int sharp, const double* c_opt,
                               int resolution, dlab_nc_search_result* out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    return guarded([&] {
        std::optional<double> c;
        if (c_opt != nullptr) c = *c_opt;
        const auto r = search_nc_max(q, eta1, eta2, sharp != 0, c, resolution);
        out->max_d_op = r.max_d_op;
        out->t = r.argmax.t;
        out->t_tilde = r.argmax.t_tilde;
        out->e = r.argmax.e;
        out->e_tilde = r.argmax.e_tilde;
        out->resolution = r.resolution;
        out->evaluations = r.evaluations;
    });
}

dlab_status dlab_search_nc_max_general(int n, double q, double eta1, double eta2,
                                       int t_support_size, const double* c_opt, uint64_t budget,
                                       uint64_t seed, dlab_nc_general_result* out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    if (auto st = require(n >= 2 && n <= DLAB_MAX_ONTIC_STATES,
                          "ontic space size must lie in [2, 16]"))
        return st;
    return guarded([&] {
        GeneralNcConfig cfg;
        cfg.n = n;
        cfg.q = q;
        cfg.eta1 = eta1;
        cfg.eta2 = eta2;
        cfg.t_support_size = t_support_size;
        if (c_opt != nullptr) cfg.c = *c_opt;
        cfg.budget = budget;
        cfg.seed = seed;
        const auto r = search_nc_max_general(cfg);
        out->best = r.best;
        out->complete = r.complete ? 1 : 0;
        out->n = n;
        std::memset(out->mu_t, 0, sizeof(out->mu_t));
        std::memset(out->mu_t_tilde, 0, sizeof(out->mu_t_tilde));
        std::memset(out->mu_eta, 0, sizeof(out->mu_eta));
        for (int i = 0; i < n; ++i) {
            out->mu_t[i] = r.mu_t[static_cast<std::size_t>(i)];
            out->mu_t_tilde[i] = r.mu_t_tilde[static_cast<std::size_t>(i)];
            out->mu_eta[i] = r.mu_eta[static_cast<std::size_t>(i)];
        }
        out->evaluations = r.evaluations;
    });
}

dlab_status dlab_scenario_from_bipartite(const double amps[8], const double alice0[3],
                                         const double alice1[3], dlab_scenario** out) {
    if (auto st = require(amps && alice0 && alice1 && out, "null pointer argument")) return st;
    return guarded([&] {
        Eigen::Vector4cd a;
        for (int i = 0; i < 4; ++i) a[i] = std::complex<double>(amps[2 * i], amps[2 * i + 1]);
        auto sc = conditional_from_bipartite(TwoQubitPure::make(a), vec3_from_c(alice0),
                                             vec3_from_c(alice1));
        *out = new dlab_scenario{std::move(sc)};
    });
}

dlab_status dlab_scenario_from_table(const double pi_plus[2], const double bloch[12],
                                     dlab_scenario** out) {
    if (auto st = require(pi_plus && bloch && out, "null pointer argument")) return st;
    return guarded([&] {
        std::array<ConditionalSetting, 2> settings;
        for (int x = 0; x < 2; ++x) {
            settings[x].pi_plus = pi_plus[x];
            settings[x].pi_minus = 1.0 - pi_plus[x];
            settings[x].s_plus = vec3_from_c(bloch + 6 * x);
            settings[x].s_minus = vec3_from_c(bloch + 6 * x + 3);
        }
        *out = new dlab_scenario{ConditionalScenario::from_table(settings)};
    });
}

void dlab_scenario_free(dlab_scenario* scenario) { delete scenario; }

dlab_status dlab_scenario_steering_vector(const dlab_scenario* scenario, int x, double out[3]) {
    if (auto st = require(scenario && out, "null pointer argument")) return st;
    return guarded([&] { vec3_to_c(steering_vector(scenario->scenario, x), out); });
}

dlab_status dlab_scenario_swap_stats(const dlab_scenario* scenario, int x, double* out_p_pur_plus,
                                     double* out_p_pur_minus, double* out_p_ov) {
    if (auto st = require(scenario && out_p_pur_plus && out_p_pur_minus && out_p_ov,
                          "null pointer argument"))
        return st;
    return guarded([&] {
        const auto s = swap_separation_stats(scenario->scenario, x);
        *out_p_pur_plus = s.p_pur_plus;
        *out_p_pur_minus = s.p_pur_minus;
        *out_p_ov = s.p_ov;
    });
}

dlab_status dlab_scenario_separation_weighted(const dlab_scenario* scenario, int x, double* out) {
    if (auto st = require(scenario && out, "null pointer argument")) return st;
    return guarded([&] { *out = separation_weighted(scenario->scenario, x); });
}

dlab_status dlab_scenario_correlator(const dlab_scenario* scenario, int x, const double b[3],
                                     double* out) {
    if (auto st = require(scenario && b && out, "null pointer argument")) return st;
    return guarded([&] { *out = correlator(scenario->scenario, x, vec3_from_c(b)); });
}

dlab_status dlab_scenario_chsh(const dlab_scenario* scenario, const double b0[3],
                               const double b1[3], double* out) {
    if (auto st = require(scenario && b0 && b1 && out, "null pointer argument")) return st;
    return guarded([&] {
        *out = chsh(scenario->scenario, BobSettings::make(vec3_from_c(b0), vec3_from_c(b1)));
    });
}

dlab_status dlab_scenario_chsh_bound(const dlab_scenario* scenario, double* out) {
    if (auto st = require(scenario && out, "null pointer argument")) return st;
    return guarded([&] { *out = chsh_bound(scenario->scenario); });
}

dlab_status dlab_scenario_maximize_chsh(const dlab_scenario* scenario, double tol, uint64_t seed,
                                        int starts, double* out_s_max, double out_b0[3],
                                        double out_b1[3]) {
    if (auto st = require(scenario && out_s_max && out_b0 && out_b1, "null pointer argument"))
        return st;
    return guarded([&] {
        const auto r = maximize_chsh(scenario->scenario, tol, seed, starts > 0 ? starts : 32);
        *out_s_max = r.s_max;
        vec3_to_c(r.argmax.b0, out_b0);
        vec3_to_c(r.argmax.b1, out_b1);
    });
}

dlab_status dlab_scenario_lemma3(const dlab_scenario* scenario, int x, double* out_r_tilde,
                                 double* out_two_d_minus_one, int* out_holds) {
    if (auto st = require(scenario && out_r_tilde && out_two_d_minus_one && out_holds,
                          "null pointer argument"))
        return st;
    return guarded([&] {
        const auto r = lemma3_check(scenario->scenario, x);
        *out_r_tilde = r.r_tilde;
        *out_two_d_minus_one = r.two_d_minus_one;
        *out_holds = r.holds ? 1 : 0;
    });
}

dlab_status dlab_separation_weighted(double pi_plus, double pi_minus, double p_pur_plus,
                                     double p_pur_minus, double p_ov, double* out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    return guarded([&] {
        *out = separation_weighted(pi_plus, pi_minus,
                                   SwapSeparationStats{p_pur_plus, p_pur_minus, p_ov});
    });
}

dlab_status dlab_separation_symmetric(double p_pur_plus, double p_pur_minus, double p_ov,
                                      double* out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    return guarded([&] {
        *out = separation_symmetric(SwapSeparationStats{p_pur_plus, p_pur_minus, p_ov});
    });
}

dlab_status dlab_discriminability_bound(double d0, double d1, double* out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    return guarded([&] { *out = discriminability_bound(d0, d1); });
}

dlab_status dlab_run(const char* command, const char* config_text, dlab_report** out) {
    if (auto st = require(command && out, "null pointer argument")) return st;
    return guarded([&] {
        const auto cfg = KeyValueConfig::parse(config_text ? config_text : "");
        *out = new dlab_report{run_command(command, cfg)};
    });
}

dlab_status dlab_report_render(const dlab_report* report, const char* format, char** out_text) {
    if (auto st = require(report && format && out_text, "null pointer argument")) return st;
    return guarded([&] {
        const std::string text = report->report.render(format);
        char* buf = new char[text.size() + 1];
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *out_text = buf;
    });
}

dlab_status dlab_report_write(const dlab_report* report, const char* format, const char* path) {
    if (auto st = require(report && format && path, "null pointer argument")) return st;
    return guarded([&] { report->report.write(format, path); });
}

int dlab_report_row_count(const dlab_report* report) {
    return report ? static_cast<int>(report->report.row_count()) : 0;
}

int dlab_report_all_pass(const dlab_report* report) {
    return (report != nullptr && report->report.all_pass()) ? 1 : 0;
}

void dlab_report_free(dlab_report* report) { delete report; }

void dlab_string_free(char* text) { delete[] text; }

}  // extern "C"
