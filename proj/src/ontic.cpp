#include "ontic.hpp"

#include "game.hpp"
#include "optimize.hpp"
#include "parallel.hpp"
#include "qubit.hpp"
#include "rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace discrimlab {

namespace {

void check_unit_interval(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

void check_q(double q) {
    if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in [0, 1)");
}

void check_priors(double eta1, double eta2) {
    if (eta1 < -1e-12 || eta2 < -1e-12 || std::abs(eta1 + eta2 - 1.0) > 1e-12)
        throw std::invalid_argument("priors must be nonnegative and sum to 1");
}

}  // namespace

OnticModel2 OnticModel2::make(double t, double t_tilde, double e, double e_tilde) {
    check_unit_interval(t, "t");
    check_unit_interval(t_tilde, "t_tilde");
    check_unit_interval(e, "e");
    check_unit_interval(e_tilde, "e_tilde");
    return OnticModel2{t, t_tilde, e, e_tilde};
}

double pnc_residual(const OnticModel2& m) {
    return std::abs(m.t + m.t_tilde - m.e - m.e_tilde);
}

bool pnc_valid(const OnticModel2& m, double tol) { return pnc_residual(m) <= tol; }

ResponseMatrix ResponseMatrix::make(double a, double b, double c) {
    check_unit_interval(a, "a");
    check_unit_interval(b, "b");
    check_unit_interval(c, "c");
    return ResponseMatrix{a, b, c};
}

ResponseMatrix ResponseMatrix::swap_like(double q) {
    check_q(q);
    return ResponseMatrix{1.0, q, 1.0};
}

OnticGameProbs game_probs(const OnticModel2& m, const ResponseMatrix& xi) {
    const double t = m.t;
    const double e = m.e;
    OnticGameProbs p;
    p.p_pur = xi.a * t * t + 2.0 * xi.b * t * (1.0 - t) + xi.c * (1.0 - t) * (1.0 - t);
    p.p_mix = xi.a * t * e + xi.b * (t * (1.0 - e) + (1.0 - t) * e) +
              xi.c * (1.0 - t) * (1.0 - e);
    return p;
}

namespace {

// score of one labeling: 1 - 2(1-q) delta + root, delta = t + e - 2te
double model_score(double t, double e, double q, double root_term) {
    const double delta = t + e - 2.0 * t * e;
    return 1.0 - 2.0 * (1.0 - q) * delta + root_term;
}

double model_root_term(double t, double q, double eta1, double eta2) {
    return 2.0 * std::sqrt(std::max(0.0, 2.0 * eta1 * eta2 * (1.0 - q) * t * (1.0 - t)));
}

// max over the two labelings of the prior preparation (e and 1-e)
double model_score_both(double t, double e, double q, double eta1, double eta2) {
    const double root = model_root_term(t, q, eta1, eta2);
    return std::max(model_score(t, e, q, root), model_score(t, 1.0 - e, q, root));
}

}  // namespace

double d_op_model(const OnticModel2& m, double q, double eta1, double eta2) {
    check_q(q);
    check_priors(eta1, eta2);
    if (!pnc_valid(m))
        throw std::invalid_argument("model violates the preparation-noncontextuality constraint");
    return model_score_both(m.t, m.e, q, eta1, eta2);
}

SharpModelConfig SharpModelConfig::make(double c, double q) {
    check_unit_interval(c, "c");
    check_q(q);
    return SharpModelConfig{c, q};
}

double SharpModelConfig::score(double eta1, double eta2) const {
    return d_op_model(model(), q, eta1, eta2);
}

double direct_bound(double q, double c) {
    check_q(q);
    check_unit_interval(c, "c");
    return 1.0 - 2.0 * (1.0 - q) * std::min(c, 1.0 - c);
}

SaturationResult quantum_saturation(double c) {
    if (!(c >= 0.0 && c <= 0.5 + 1e-12))
        throw std::invalid_argument("quantum_saturation expects c in [0, 1/2]");
    c = std::min(c, 0.5);
    // rho_T = |0><0|, prior diag(c, 1-c); the SWAP test realizes q = 1/2
    const Matrix2c rho_t = QubitState::from_bloch(Vector3(0, 0, 1)).density();
    const TwoStateEnsemble priors = TwoStateEnsemble::make(c, 0.0);
    GameStats stats;
    stats.p_mix_id = swap_pass_prob(rho_t, prior_state(priors, Labeling::identity));
    stats.p_mix_swap = swap_pass_prob(rho_t, prior_state(priors, Labeling::swap));
    stats.p_pur = swap_pass_prob(rho_t, rho_t);
    SaturationResult r;
    r.d_qm = d_op(stats, priors);
    r.bound = direct_bound(0.5, c);
    r.gap = r.bound - r.d_qm;
    return r;
}

double q_star(double eta_min, double d) {
    if (!(eta_min > 0.0 && eta_min <= 0.5 + 1e-12))
        throw std::invalid_argument("eta_min must lie in (0, 1/2]");
    if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("D must lie in [0, 1]");
    return 1.0 - (1.0 - d) / (2.0 * eta_min);
}

namespace {

// completes (t, e) to a PNC-valid model; the complements never enter the score
OnticModel2 complete_model(double t, double e) {
    return OnticModel2{t, std::max(0.0, e - t), e, std::max(0.0, t - e)};
}

OnticModel2 sharp_model(double c) { return OnticModel2{1.0, 0.0, c, 1.0 - c}; }

bool model_less(const OnticModel2& a, const OnticModel2& b) {
    return std::tie(a.t, a.t_tilde, a.e, a.e_tilde) < std::tie(b.t, b.t_tilde, b.e, b.e_tilde);
}

struct GridBest {
    double score = -std::numeric_limits<double>::infinity();
    OnticModel2 model;
};

void take_better(GridBest& best, double score, const OnticModel2& model) {
    if (score > best.score || (score == best.score && model_less(model, best.model))) {
        best.score = score;
        best.model = model;
    }
}

}  // namespace

NcSearchResult search_nc_max(double q, double eta1, double eta2, bool sharp,
                             std::optional<double> c, int resolution) {
    check_q(q);
    check_priors(eta1, eta2);
    if (resolution < 10)
        throw std::invalid_argument("resolution must be at least 10 grid points per free parameter");
    if (c) check_unit_interval(*c, "c");
    if (!sharp && c)
        throw std::invalid_argument("a confusability is only defined for the sharp-test search");

    NcSearchResult result;
    result.q = q;
    result.eta1 = eta1;
    result.eta2 = eta2;
    result.sharp = sharp;
    result.c = c;
    result.resolution = resolution;

    const double step = 1.0 / (resolution - 1);

    if (sharp && c) {
        // sharpness plus a pinned confusability leaves no free parameter
        result.argmax = sharp_model(*c);
        result.max_d_op = model_score_both(1.0, *c, q, eta1, eta2);
        result.evaluations = 1;
        return result;
    }

    if (sharp) {
        // one free parameter: the confusability e = c
        GridBest best;
        for (int i = 0; i < resolution; ++i) {
            const double e = i * step;
            take_better(best, model_score_both(1.0, e, q, eta1, eta2), sharp_model(e));
        }
        result.evaluations = static_cast<std::uint64_t>(resolution);
        double e_best = best.model.e;
        double f_best = best.score;
        for (int round = 0; round < 60; ++round) {
            auto [e1, f1] = golden_section_max(
                [&](double e) { return model_score_both(1.0, e, q, eta1, eta2); },
                std::max(0.0, e_best - step), std::min(1.0, e_best + step), 1e-13);
            result.evaluations += 64;
            if (f1 <= f_best + 1e-15) break;
            e_best = e1;
            f_best = f1;
        }
        if (f_best > best.score) {
            best.score = f_best;
            best.model = sharp_model(e_best);
        }
        result.max_d_op = best.score;
        result.argmax = best.model;
        return result;
    }

    // two free parameters (t, e); rows are scanned concurrently and reduced
    // in index order, so the outcome is schedule-independent
    auto row_best = parallel_map(static_cast<std::size_t>(resolution), [&](std::size_t i) {
        const double t = static_cast<double>(i) * step;
        GridBest best;
        for (int j = 0; j < resolution; ++j) {
            const double e = j * step;
            take_better(best, model_score_both(t, e, q, eta1, eta2), complete_model(t, e));
        }
        return best;
    });
    GridBest best;
    for (const auto& rb : row_best) take_better(best, rb.score, rb.model);
    result.evaluations = static_cast<std::uint64_t>(resolution) * resolution;

    double t_best = best.model.t;
    double e_best = best.model.e;
    double f_best = best.score;
    for (int round = 0; round < 60; ++round) {
        const double before = f_best;
        auto [t1, f1] = golden_section_max(
            [&](double t) { return model_score_both(t, e_best, q, eta1, eta2); },
            std::max(0.0, t_best - step), std::min(1.0, t_best + step), 1e-13);
        if (f1 > f_best) { t_best = t1; f_best = f1; }
        auto [e1, f2] = golden_section_max(
            [&](double e) { return model_score_both(t_best, e, q, eta1, eta2); },
            std::max(0.0, e_best - step), std::min(1.0, e_best + step), 1e-13);
        if (f2 > f_best) { e_best = e1; f_best = f2; }
        result.evaluations += 128;
        if (f_best - before < 1e-14) break;
    }
    if (f_best > best.score) {
        best.score = f_best;
        best.model = complete_model(t_best, e_best);
    }
    result.max_d_op = best.score;
    result.argmax = best.model;
    return result;
}

namespace {

struct GeneralPoint {
    std::vector<double> mu_t;        // supported on {0..k-1}
    std::vector<double> mu_t_tilde;  // supported on {k..n-1}
    std::vector<double> mu_eta;      // box 0 <= mu_eta <= mu_t + mu_t_tilde
};

double general_score(const GeneralPoint& p, double q, double eta1, double eta2) {
    double norm_t = 0.0, mix_id = 0.0, mix_swap = 0.0;
    const std::size_t n = p.mu_t.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double mt = p.mu_t[i];
        const double eta_tilde = p.mu_t[i] + p.mu_t_tilde[i] - p.mu_eta[i];
        norm_t += mt * mt;
        mix_id += mt * p.mu_eta[i];
        mix_swap += mt * eta_tilde;
    }
    const double p_pur = q + (1.0 - q) * norm_t;
    const double p_mix = q + (1.0 - q) * std::max(mix_id, mix_swap);
    const double radicand = std::max(0.0, eta1 * eta2 * (1.0 - p_pur));
    return (2.0 * p_mix - 1.0) + 2.0 * std::sqrt(radicand);
}

std::vector<double> random_simplex(std::size_t dim, CounterRng& rng) {
    std::vector<double> v(dim);
    double sum = 0.0;
    for (auto& x : v) {
        x = -std::log(std::max(rng.uniform(), 1e-300));
        sum += x;
    }
    for (auto& x : v) x /= sum;
    return v;
}

// scales weights to the target mass, then pushes the excess of capped entries
// onto the remaining headroom; feasible whenever mass <= sum(caps)
void fit_to_caps(std::vector<double>& y, const std::vector<double>& caps, double mass) {
    const std::size_t n = y.size();
    double sum = std::accumulate(y.begin(), y.end(), 0.0);
    if (sum <= 0.0) {
        y = caps;
        sum = std::accumulate(y.begin(), y.end(), 0.0);
    }
    for (auto& v : y) v *= mass / std::max(sum, 1e-300);
    for (int pass = 0; pass < 32; ++pass) {
        double deficit = mass;
        double headroom = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = std::min(y[i], caps[i]);
            deficit -= y[i];
            headroom += caps[i] - y[i];
        }
        if (deficit <= 1e-15 || headroom <= 0.0) break;
        for (std::size_t i = 0; i < n; ++i) y[i] += deficit * (caps[i] - y[i]) / headroom;
    }
}

}  // namespace

GeneralNcResult search_nc_max_general(const GeneralNcConfig& cfg) {
    const int n = cfg.n;
    const int k = cfg.t_support_size;
    if (n < 2 || n > 16) throw std::invalid_argument("ontic space size must lie in [2, 16]");
    if (k < 1 || k >= n) throw std::invalid_argument("t_support_size must lie in [1, n-1]");
    check_q(cfg.q);
    check_priors(cfg.eta1, cfg.eta2);
    if (cfg.c) check_unit_interval(*cfg.c, "c");
    if (cfg.budget < 100) throw std::invalid_argument("budget must be at least 100 evaluations");

    CounterRng rng(cfg.seed);
    std::uint64_t evals = 0;

    auto expand = [&](const std::vector<double>& head, int offset) {
        std::vector<double> full(n, 0.0);
        for (std::size_t i = 0; i < head.size(); ++i) full[offset + i] = head[i];
        return full;
    };

    auto eta_from_halves = [&](const GeneralPoint& p, std::vector<double> top,
                               std::vector<double> bottom, double c_eff) {
        std::vector<double> caps_top(p.mu_t.begin(), p.mu_t.begin() + k);
        std::vector<double> caps_bottom(p.mu_t_tilde.begin() + k, p.mu_t_tilde.end());
        fit_to_caps(top, caps_top, c_eff);
        fit_to_caps(bottom, caps_bottom, 1.0 - c_eff);
        std::vector<double> eta(n, 0.0);
        for (int i = 0; i < k; ++i) eta[i] = top[i];
        for (int i = k; i < n; ++i) eta[i] = bottom[i - k];
        return eta;
    };

    auto make_point = [&](std::vector<double> mu_t_head, std::vector<double> mu_tt_tail,
                          std::vector<double> eta_top, std::vector<double> eta_bottom,
                          double c_eff) {
        GeneralPoint p;
        p.mu_t = expand(mu_t_head, 0);
        p.mu_t_tilde = expand(mu_tt_tail, k);
        p.mu_eta = eta_from_halves(p, std::move(eta_top), std::move(eta_bottom), c_eff);
        return p;
    };

    GeneralPoint best_point;
    double best = -std::numeric_limits<double>::infinity();
    auto consider = [&](const GeneralPoint& p) {
        const double s = general_score(p, cfg.q, cfg.eta1, cfg.eta2);
        ++evals;
        if (s > best) {
            best = s;
            best_point = p;
        }
    };

    // deterministic anchors: point-mass and uniform mu_T, eta split along the
    // supports (these reproduce the two-point sharp configuration exactly)
    {
        std::vector<double> point(k, 0.0);
        point[0] = 1.0;
        std::vector<double> unif_t(k, 1.0 / k);
        std::vector<double> unif_tt(n - k, 1.0 / (n - k));
        for (double c_eff : cfg.c ? std::vector<double>{*cfg.c} : std::vector<double>{0.0, 0.25, 0.5, 1.0}) {
            consider(make_point(point, unif_tt, point, unif_tt, c_eff));
            consider(make_point(unif_t, unif_tt, unif_t, unif_tt, c_eff));
        }
    }

    // random multistart within roughly a third of the budget
    const std::uint64_t start_budget = cfg.budget / 3;
    while (evals < start_budget) {
        const double c_eff = cfg.c ? *cfg.c : rng.uniform();
        auto p = make_point(random_simplex(k, rng), random_simplex(n - k, rng),
                            random_simplex(k, rng), random_simplex(n - k, rng), c_eff);
        consider(p);
    }

    // pattern refinement: pairwise mass transfers with a shrinking step
    bool complete = false;
    double step = 0.25;
    while (evals < cfg.budget) {
        bool improved = false;
        auto try_point = [&](const GeneralPoint& p) {
            const double s = general_score(p, cfg.q, cfg.eta1, cfg.eta2);
            ++evals;
            if (s > best + 1e-15) {
                best = s;
                best_point = p;
                return true;
            }
            return false;
        };
        auto transfer_block = [&](int lo, int hi, bool is_eta, bool tweak_t) {
            for (int i = lo; i < hi && evals < cfg.budget; ++i) {
                for (int j = lo; j < hi && evals < cfg.budget; ++j) {
                    if (i == j) continue;
                    GeneralPoint p = best_point;
                    std::vector<double>& v = is_eta ? p.mu_eta : (tweak_t ? p.mu_t : p.mu_t_tilde);
                    const double delta = std::min(step, v[i]);
                    if (delta <= 0.0) continue;
                    v[i] -= delta;
                    v[j] += delta;
                    if (is_eta) {
                        // stay inside the box mu_eta <= mu_t + mu_t~
                        const double cap = p.mu_t[j] + p.mu_t_tilde[j];
                        if (v[j] > cap) continue;
                    } else {
                        // moving support weight can strand mu_eta above its cap
                        for (int m = lo; m < hi; ++m) {
                            const double cap = p.mu_t[m] + p.mu_t_tilde[m];
                            if (p.mu_eta[m] > cap) p.mu_eta[m] = cap;
                        }
                        // restore the block mass of mu_eta after clamping
                        double mass = 0.0, want = 0.0;
                        for (int m = lo; m < hi; ++m) {
                            mass += p.mu_eta[m];
                            want += best_point.mu_eta[m];
                        }
                        double headroom = 0.0;
                        for (int m = lo; m < hi; ++m)
                            headroom += p.mu_t[m] + p.mu_t_tilde[m] - p.mu_eta[m];
                        double deficit = want - mass;
                        if (deficit > 0.0 && headroom > 0.0) {
                            for (int m = lo; m < hi; ++m) {
                                const double h = p.mu_t[m] + p.mu_t_tilde[m] - p.mu_eta[m];
                                p.mu_eta[m] += deficit * h / headroom;
                            }
                        }
                    }
                    if (try_point(p)) improved = true;
                }
            }
        };
        transfer_block(0, k, false, true);
        transfer_block(k, n, false, false);
        if (cfg.c) {
            // transfers stay inside each support so the confusability is fixed
            transfer_block(0, k, true, false);
            transfer_block(k, n, true, false);
        } else {
            transfer_block(0, n, true, false);
        }
        if (!improved) {
            step *= 0.5;
            if (step < 1e-9) {
                complete = true;
                break;
            }
        }
    }

    GeneralNcResult result;
    result.best = best;
    result.complete = complete;
    result.mu_t = best_point.mu_t;
    result.mu_t_tilde = best_point.mu_t_tilde;
    result.mu_eta = best_point.mu_eta;
    result.evaluations = evals;
    return result;
}

}  // namespace discrimlab
