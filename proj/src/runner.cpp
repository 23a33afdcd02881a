#include "runner.hpp"

#include "bell.hpp"
#include "error.hpp"
#include "game.hpp"
#include "ontic.hpp"
#include "parallel.hpp"
#include "qubit.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace discrimlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEquivTol = 1e-10;
constexpr double kSaturationTol = 1e-12;
constexpr double kBoundTol = 1e-9;
constexpr double kChshTol = 1e-6;
constexpr double kViolationThreshold = 0.85355339059327373;  // (1 + 1/sqrt(2))/2

std::complex<double> ensemble_gamma(const KeyValueConfig& cfg, double overlap_sq) {
    if (cfg.has("gamma_re") || cfg.has("gamma_im")) {
        const std::complex<double> g(cfg.get_double("gamma_re", 0.0),
                                     cfg.get_double("gamma_im", 0.0));
        return g;
    }
    return {std::sqrt(std::max(0.0, overlap_sq)), 0.0};
}

// monotone interval envelope: the score rises with each mixed frequency and
// falls with the purity frequency, so the CI corners bracket it exactly
double d_op_ci_halfwidth(const GameStats& stats, const TwoStateEnsemble& ens) {
    auto shifted = [&](double sign) {
        GameStats s = stats;
        s.p_mix_id = std::clamp(stats.p_mix_id + sign * stats.ci_mix_id, 0.0, 1.0);
        s.p_mix_swap = std::clamp(stats.p_mix_swap + sign * stats.ci_mix_swap, 0.0, 1.0);
        s.p_pur = std::clamp(stats.p_pur - sign * stats.ci_pur, 0.0, 1.0);
        return d_op(s, ens);
    };
    return 0.5 * (shifted(+1.0) - shifted(-1.0));
}

Report run_discrim(const KeyValueConfig& cfg) {
    const double eta1 = cfg.get_double("eta1", 0.5);
    const std::uint64_t samples = cfg.get_u64("samples", 1000000);
    const std::uint64_t seed = cfg.get_u64("seed", 0);

    std::vector<double> grid;
    if (cfg.has("gamma2")) {
        grid.push_back(cfg.get_double("gamma2"));
    } else {
        const auto steps = static_cast<int>(cfg.get_int("steps", 11));
        if (steps < 2) throw std::invalid_argument("config key 'steps': need at least 2");
        for (int i = 0; i < steps; ++i) grid.push_back(static_cast<double>(i) / (steps - 1));
    }

    Report report("discrim",
                  {"eta1", "eta2", "gamma_sq", "d_closed", "d_op_exact", "fidelity_route",
                   "equiv_gap", "tol", "d_op_sampled", "ci_halfwidth", "n_samples", "in_ci",
                   "pass"});
    auto rows = parallel_map(grid.size(), [&](std::size_t i) {
        const double g = grid[i];
        const TwoStateEnsemble ens = TwoStateEnsemble::make(eta1, ensemble_gamma(cfg, g));
        const TwoStateEnsemble canon = ens.canonical();
        const GameStats exact = game_stats_exact(ens);
        const double d_exact = d_op(exact, ens);
        const double d_closed = d_closed_form(ens.eta1, ens.eta2, g);
        const Matrix2c rho_t = gram_state(canon);
        const double fid = std::max(fidelity_qubit(rho_t, prior_state(canon, Labeling::identity)),
                                    fidelity_qubit(rho_t, prior_state(canon, Labeling::swap)));
        const double gap = std::max(std::abs(d_exact - d_closed), std::abs(d_closed - fid));
        const GameStats sampled = game_stats_sampled(ens, samples, substream_seed(seed, i));
        const double d_sampled = d_op(sampled, ens);
        const double ci = d_op_ci_halfwidth(sampled, ens);
        const bool in_ci = std::abs(d_sampled - d_exact) <= ci;
        return std::vector<Cell>{eta1, 1.0 - eta1, g, d_closed, d_exact, fid, gap, kEquivTol,
                                 d_sampled, ci, samples, in_ci, in_ci && gap <= kEquivTol};
    });
    for (auto& row : rows) report.add_row(std::move(row));
    return report;
}

Report run_ontic_bound(const KeyValueConfig& cfg) {
    const double q = cfg.get_double("q", 0.5);

    if (cfg.has("eta1") || cfg.has("gamma2")) {
        // threshold mode: where the sharp-test ceiling at c = eta_min meets
        // the closed-form discriminability
        const double eta1 = cfg.get_double("eta1", 0.5);
        const double g = cfg.get_double("gamma2");
        const double d = d_closed_form(eta1, 1.0 - eta1, g);
        const double eta_min = std::min(eta1, 1.0 - eta1);
        Report report("ontic-bound", {"eta1", "gamma_sq", "eta_min", "d_closed", "q_star",
                                      "bound_at_q_star", "gap", "tol", "pass"});
        const double qs = q_star(eta_min, d);
        const double bound = direct_bound(std::max(0.0, qs), eta_min);
        const double gap = bound - d;
        report.add_row({eta1, g, eta_min, d, qs, bound, gap, kSaturationTol,
                        std::abs(gap) <= kSaturationTol});
        return report;
    }

    std::vector<double> grid;
    if (cfg.has("c")) {
        grid.push_back(cfg.get_double("c"));
    } else {
        const auto steps = static_cast<int>(cfg.get_int("steps", 51));
        if (steps < 2) throw std::invalid_argument("config key 'steps': need at least 2");
        for (int i = 0; i < steps; ++i) grid.push_back(0.5 * i / (steps - 1));
    }

    const auto resolution = static_cast<int>(cfg.get_int("resolution", 100));
    Report report("ontic-bound", {"q", "c", "bound", "search_max", "search_gap", "qm_value",
                                  "qm_gap", "tol", "pass"});
    for (double c : grid) {
        const double bound = direct_bound(q, c);
        const auto search = search_nc_max(q, 0.5, 0.5, true, c, resolution);
        const double search_gap = bound - search.max_d_op;
        const SaturationResult sat = quantum_saturation(std::min(c, 1.0 - c));
        const bool pass = search.max_d_op <= bound + kBoundTol &&
                          std::abs(sat.gap) <= kSaturationTol;
        report.add_row({q, c, bound, search.max_d_op, search_gap, sat.d_qm, sat.gap,
                        kSaturationTol, pass});
    }
    return report;
}

Report run_ontic_search(const KeyValueConfig& cfg) {
    const double q = cfg.get_double("q", 0.5);
    const double eta1 = cfg.get_double("eta1", 0.5);
    const auto n = static_cast<int>(cfg.get_int("n", 2));

    if (n == 2) {
        const bool sharp = cfg.get_bool("sharp", true);
        const std::optional<double> c = cfg.maybe_double("c");
        const auto resolution = static_cast<int>(cfg.get_int("resolution", 200));
        const auto res = search_nc_max(q, eta1, 1.0 - eta1, sharp, c, resolution);
        Report report("ontic-search",
                      {"n", "sharp", "q", "c", "eta1", "resolution", "search_max", "arg_t",
                       "arg_t_tilde", "arg_e", "arg_e_tilde", "reference", "check", "tol",
                       "pass"});
        double reference;
        std::string check;
        bool pass;
        if (sharp) {
            reference = direct_bound(q, c ? *c : res.argmax.e);
            check = "max<=bound";
            pass = res.max_d_op <= reference + kBoundTol;
        } else {
            // certifies that the trivial ceiling 1 is reached; the raw score
            // can exceed it (see README), so this is a one-sided check
            reference = 1.0;
            check = "max>=trivial";
            pass = res.max_d_op >= reference - kBoundTol;
        }
        report.add_row({n, sharp, q, c ? Cell(*c) : Cell::null(), eta1, resolution,
                        res.max_d_op, res.argmax.t, res.argmax.t_tilde, res.argmax.e,
                        res.argmax.e_tilde, reference, check, kBoundTol, pass});
        return report;
    }

    GeneralNcConfig gcfg;
    gcfg.n = n;
    gcfg.q = q;
    gcfg.eta1 = eta1;
    gcfg.eta2 = 1.0 - eta1;
    gcfg.t_support_size = static_cast<int>(cfg.get_int("split", 1));
    gcfg.c = cfg.maybe_double("c");
    gcfg.budget = cfg.get_u64("budget", 200000);
    gcfg.seed = cfg.get_u64("seed", 0);
    const auto res = search_nc_max_general(gcfg);
    auto join = [](const std::vector<double>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ';';
            out += format_double(v[i]);
        }
        return out;
    };
    Report report("ontic-search",
                  {"n", "q", "c", "eta1", "split", "budget", "seed", "best_lower_bound",
                   "complete", "mu_t", "mu_t_tilde", "mu_eta", "note"});
    report.add_row({n, q, gcfg.c ? Cell(*gcfg.c) : Cell::null(), eta1, gcfg.t_support_size,
                    gcfg.budget, gcfg.seed, res.best, res.complete, join(res.mu_t),
                    join(res.mu_t_tilde), join(res.mu_eta),
                    "stochastic lower bound on the noncontextual maximum"});
    return report;
}

ConditionalScenario scenario_from_config(const KeyValueConfig& cfg, double* theta_out) {
    if (theta_out != nullptr) *theta_out = std::nan("");
    if (cfg.has("pi_plus_0")) {
        std::array<ConditionalSetting, 2> settings;
        for (int x = 0; x < 2; ++x) {
            const std::string sx = std::to_string(x);
            ConditionalSetting s;
            s.pi_plus = cfg.get_double("pi_plus_" + sx);
            s.pi_minus = 1.0 - s.pi_plus;
            const auto sp = cfg.get_doubles("s_plus_" + sx, 3);
            const auto sm = cfg.get_doubles("s_minus_" + sx, 3);
            s.s_plus = Vector3(sp[0], sp[1], sp[2]);
            s.s_minus = Vector3(sm[0], sm[1], sm[2]);
            settings[static_cast<std::size_t>(x)] = s;
        }
        return ConditionalScenario::from_table(settings);
    }

    Eigen::Vector4cd amps;
    if (cfg.has("amps")) {
        const auto a = cfg.get_doubles("amps", 8);
        for (int i = 0; i < 4; ++i) amps[i] = std::complex<double>(a[2 * i], a[2 * i + 1]);
    } else {
        const double theta = cfg.get_double("theta", kPi / 4.0);
        if (theta_out != nullptr) *theta_out = theta;
        amps << std::cos(theta), 0.0, 0.0, std::sin(theta);
    }
    auto unit_dir = [&](const std::string& key, const Vector3& fallback) {
        if (!cfg.has(key)) return fallback;
        const auto v = cfg.get_doubles(key, 3);
        Vector3 d(v[0], v[1], v[2]);
        if (d.norm() <= 0.0) throw std::invalid_argument("config key '" + key + "': zero vector");
        return Vector3(d.normalized());
    };
    const Vector3 a0 = unit_dir("alice0", Vector3::UnitZ());
    const Vector3 a1 = unit_dir("alice1", Vector3::UnitX());
    return conditional_from_bipartite(TwoQubitPure::normalized(amps), a0, a1);
}

std::vector<Cell> bell_row_cells(const ConditionalScenario& sc, double theta, double tol,
                                 std::uint64_t seed, std::uint64_t samples,
                                 bool include_settings) {
    const double r0 = separation_weighted(sc, 0);
    const double r1 = separation_weighted(sc, 1);
    const double bound = chsh_bound(sc);
    const auto best = maximize_chsh(sc, 1e-8, seed);
    const double gap = bound - best.s_max;
    std::vector<Cell> cells{std::isnan(theta) ? Cell::null() : Cell(theta),
                            r0,
                            r1,
                            bound,
                            best.s_max,
                            gap,
                            tol,
                            best.s_max <= bound + tol};
    if (include_settings) {
        for (const Vector3& b : {best.argmax.b0, best.argmax.b1})
            for (int k = 0; k < 3; ++k) cells.emplace_back(b[k]);
    }
    for (int x = 0; x < 2; ++x) {
        const auto& s = sc.at(x);
        const bool pure = QubitState{s.s_plus}.pure() && QubitState{s.s_minus}.pure();
        cells.emplace_back(pure);
        if (pure) {
            const auto lemma = lemma3_check(sc, x);
            cells.emplace_back(0.5 * (lemma.two_d_minus_one + 1.0));  // D_x
            cells.emplace_back(lemma.holds);
        } else {
            cells.emplace_back(Cell::null());
            cells.emplace_back(Cell::null());
        }
    }
    if (samples > 0) {
        for (int x = 0; x < 2; ++x) {
            const auto& s = sc.at(x);
            const auto sampled =
                swap_separation_stats_sampled(sc, x, samples, substream_seed(seed, 100 + x));
            cells.emplace_back(separation_weighted(s.pi_plus, s.pi_minus, sampled.stats));
        }
    }
    return cells;
}

std::vector<std::string> bell_row_columns(bool sampled, bool include_settings) {
    std::vector<std::string> cols{"theta", "r0", "r1", "bound", "s_max", "gap", "tol", "pass"};
    if (include_settings)
        cols.insert(cols.end(), {"b0_x", "b0_y", "b0_z", "b1_x", "b1_y", "b1_z"});
    cols.insert(cols.end(),
                {"pure_0", "d_0", "lemma3_0", "pure_1", "d_1", "lemma3_1"});
    if (sampled) {
        cols.push_back("r0_sampled");
        cols.push_back("r1_sampled");
    }
    return cols;
}

Report run_bell_verify(const KeyValueConfig& cfg) {
    const double tol = cfg.get_double("tol", kChshTol);
    const std::uint64_t seed = cfg.get_u64("seed", 0);
    const std::uint64_t samples = cfg.get_u64("samples", 0);

    double theta = std::nan("");
    const ConditionalScenario sc = scenario_from_config(cfg, &theta);

    auto cols = bell_row_columns(samples > 0, true);
    auto cells = bell_row_cells(sc, theta, tol, seed, samples, true);
    if (cfg.has("bob0") || cfg.has("bob1")) {
        const auto b0 = cfg.get_doubles("bob0", 3);
        const auto b1 = cfg.get_doubles("bob1", 3);
        const BobSettings bob = BobSettings::make(Vector3(b0[0], b0[1], b0[2]).normalized(),
                                                  Vector3(b1[0], b1[1], b1[2]).normalized());
        cols.push_back("s_at_given_settings");
        cells.emplace_back(chsh(sc, bob));
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                cols.push_back("e_" + std::to_string(x) + std::to_string(y));
                cells.emplace_back(correlator(sc, x, y == 0 ? bob.b0 : bob.b1));
            }
    }
    Report report("bell-verify", cols);
    report.add_row(std::move(cells));
    return report;
}

Report run_bell_sweep(const KeyValueConfig& cfg) {
    const std::string kind = cfg.get_string("sweep", "theta");
    const double tol = cfg.get_double("tol", kChshTol);
    const std::uint64_t seed = cfg.get_u64("seed", 0);

    if (kind == "theta") {
        const auto steps = static_cast<int>(cfg.get_int("steps", 64));
        if (steps < 1) throw std::invalid_argument("config key 'steps': need at least 1");
        auto cols = bell_row_columns(false, false);
        cols.push_back("note");
        Report report("bell-sweep", cols);
        auto rows = parallel_map(static_cast<std::size_t>(steps), [&](std::size_t i) {
            // theta in (0, pi/4]: theta = 0 is a product state with
            // deterministic Alice outcomes, which cannot be conditioned on
            const double theta = (kPi / 4.0) * static_cast<double>(i + 1) / steps;
            std::vector<Cell> cells;
            try {
                const Eigen::Vector4cd amps(std::cos(theta), 0.0, 0.0, std::sin(theta));
                const auto sc = conditional_from_bipartite(TwoQubitPure::normalized(amps),
                                                           Vector3::UnitZ(), Vector3::UnitX());
                cells = bell_row_cells(sc, theta, tol, substream_seed(seed, i), 0, false);
                cells.emplace_back("");
            } catch (const DegenerateConditioningError& err) {
                cells.assign(bell_row_columns(false, false).size(), Cell::null());
                cells[0] = theta;
                cells[7] = false;
                cells.emplace_back(std::string(err.what()));
            }
            return cells;
        });
        for (auto& row : rows) report.add_row(std::move(row));
        return report;
    }

    if (kind == "dsym") {
        const auto steps = static_cast<int>(cfg.get_int("steps", 500));
        if (steps < 2) throw std::invalid_argument("config key 'steps': need at least 2");
        Report report("bell-sweep",
                      {"d_target", "r_expected", "r0", "r1", "bound", "s_max", "violates",
                       "threshold", "expected_violation", "tol", "pass"});
        auto rows = parallel_map(static_cast<std::size_t>(steps), [&](std::size_t i) {
            // symmetric pure scenario with orthogonal steering vectors whose
            // separation saturates 2D - 1
            const double d = 0.5 + 0.5 * static_cast<double>(i + 1) / (steps + 1);
            const double sin_a = 2.0 * d - 1.0;
            const double cos_a = std::sqrt(std::max(0.0, 1.0 - sin_a * sin_a));
            std::array<ConditionalSetting, 2> settings;
            settings[0] = {0.5, 0.5, Vector3(cos_a, 0, sin_a), Vector3(cos_a, 0, -sin_a)};
            settings[1] = {0.5, 0.5, Vector3(sin_a, 0, cos_a), Vector3(-sin_a, 0, cos_a)};
            const auto sc = ConditionalScenario::from_table(settings);
            const double r0 = separation_weighted(sc, 0);
            const double r1 = separation_weighted(sc, 1);
            const double bound = chsh_bound(sc);
            const auto best = maximize_chsh(sc, 1e-8, substream_seed(seed, i));
            const bool violates = best.s_max > 2.0 + tol;
            const bool expected = d > kViolationThreshold;
            return std::vector<Cell>{d,     sin_a,    r0,       r1,  bound, best.s_max,
                                     violates, kViolationThreshold, expected, tol,
                                     violates == expected};
        });
        for (auto& row : rows) report.add_row(std::move(row));
        return report;
    }

    throw std::invalid_argument("config key 'sweep': expected 'theta' or 'dsym'");
}

Report run_sample(const KeyValueConfig& cfg) {
    const double eta1 = cfg.get_double("eta1", 0.5);
    const double g = cfg.get_double("gamma2", 0.5);
    const std::uint64_t samples = cfg.get_u64("samples", 1000000);
    const auto runs = static_cast<int>(cfg.get_int("runs", 1));
    const std::uint64_t seed = cfg.get_u64("seed", 0);
    if (runs < 1) throw std::invalid_argument("config key 'runs': need at least 1");
    if (samples < 1) throw std::invalid_argument("config key 'samples': need at least 1");

    const TwoStateEnsemble ens = TwoStateEnsemble::make(eta1, ensemble_gamma(cfg, g));
    const GameStats exact = game_stats_exact(ens);

    Report report("sample",
                  {"run", "seed", "eta1", "gamma_sq", "n", "p_mix_id", "p_mix_id_exact",
                   "ci_mix_id", "in_ci_mix_id", "p_mix_swap", "p_mix_swap_exact", "ci_mix_swap",
                   "in_ci_mix_swap", "p_pur", "p_pur_exact", "ci_pur", "in_ci_pur", "pass"});
    auto rows = parallel_map(static_cast<std::size_t>(runs), [&](std::size_t i) {
        const GameStats s = game_stats_sampled(ens, samples, substream_seed(seed, i));
        const bool ok_id = std::abs(s.p_mix_id - exact.p_mix_id) <= s.ci_mix_id;
        const bool ok_swap = std::abs(s.p_mix_swap - exact.p_mix_swap) <= s.ci_mix_swap;
        const bool ok_pur = std::abs(s.p_pur - exact.p_pur) <= s.ci_pur;
        return std::vector<Cell>{static_cast<std::int64_t>(i),
                                 static_cast<std::int64_t>(seed),
                                 eta1,
                                 g,
                                 samples,
                                 s.p_mix_id,
                                 exact.p_mix_id,
                                 s.ci_mix_id,
                                 ok_id,
                                 s.p_mix_swap,
                                 exact.p_mix_swap,
                                 s.ci_mix_swap,
                                 ok_swap,
                                 s.p_pur,
                                 exact.p_pur,
                                 s.ci_pur,
                                 ok_pur,
                                 ok_id && ok_swap && ok_pur};
    });
    for (auto& row : rows) report.add_row(std::move(row));
    return report;
}

}  // namespace

Report run_command(const std::string& command, const KeyValueConfig& cfg) {
    if (command == "discrim") return run_discrim(cfg);
    if (command == "ontic-bound") return run_ontic_bound(cfg);
    if (command == "ontic-search") return run_ontic_search(cfg);
    if (command == "bell-verify") return run_bell_verify(cfg);
    if (command == "bell-sweep") return run_bell_sweep(cfg);
    if (command == "sample") return run_sample(cfg);
    throw std::invalid_argument("unknown command '" + command +
                                "' (expected discrim, ontic-bound, ontic-search, bell-verify, "
                                "bell-sweep or sample)");
}

}  // namespace discrimlab
