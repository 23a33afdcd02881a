#include "game.hpp"

#include "error.hpp"

#include <cmath>
#include <stdexcept>

namespace discrimlab {

TwoStateEnsemble TwoStateEnsemble::make(double eta1, std::complex<double> gamma12) {
    if (!(eta1 >= -kStateTol && eta1 <= 1.0 + kStateTol))
        throw std::invalid_argument("ensemble prior eta1 must lie in [0, 1]");
    if (std::abs(gamma12) > 1.0 + kStateTol)
        throw std::invalid_argument("ensemble overlap |gamma12| must not exceed 1");
    TwoStateEnsemble ens;
    ens.eta1 = std::min(1.0, std::max(0.0, eta1));
    ens.eta2 = 1.0 - ens.eta1;
    ens.gamma12 = gamma12;
    return ens;
}

TwoStateEnsemble TwoStateEnsemble::canonical() const {
    if (eta1 >= eta2) return *this;
    TwoStateEnsemble ens = *this;
    ens.eta1 = eta2;
    ens.eta2 = eta1;
    ens.gamma12 = std::conj(gamma12);
    return ens;
}

Matrix2c gram_state(const TwoStateEnsemble& ens) {
    const double g = ens.overlap_sq();
    const double root = std::sqrt(std::max(0.0, 1.0 - g));
    Matrix2c rho;
    rho(0, 0) = ens.eta1 + ens.eta2 * g;
    rho(0, 1) = ens.eta2 * ens.gamma12 * root;
    rho(1, 0) = ens.eta2 * std::conj(ens.gamma12) * root;
    rho(1, 1) = ens.eta2 * (1.0 - g);
    return rho;
}

Matrix2c prior_state(const TwoStateEnsemble& ens, Labeling p) {
    Matrix2c eta = Matrix2c::Zero();
    if (p == Labeling::identity) {
        eta(0, 0) = ens.eta1;
        eta(1, 1) = ens.eta2;
    } else {
        eta(0, 0) = ens.eta2;
        eta(1, 1) = ens.eta1;
    }
    return eta;
}

double swap_pass_prob(const Matrix2c& rho, const Matrix2c& sigma) {
    return 0.5 * (1.0 + (rho * sigma).trace().real());
}

double swap_pass_prob(const QubitState& rho, const QubitState& sigma) {
    return 0.5 * (1.0 + overlap(rho, sigma));
}

GameStats game_stats_exact(const TwoStateEnsemble& ens) {
    const TwoStateEnsemble c = ens.canonical();
    const Matrix2c rho_t = gram_state(c);
    GameStats stats;
    stats.p_mix_id = swap_pass_prob(rho_t, prior_state(c, Labeling::identity));
    stats.p_mix_swap = swap_pass_prob(rho_t, prior_state(c, Labeling::swap));
    stats.p_pur = swap_pass_prob(rho_t, rho_t);
    return stats;
}

SampledFrequency sampled_frequency(double p_exact, std::uint64_t n, CounterRng rng) {
    if (n == 0) throw std::invalid_argument("sample count must be at least 1");
    std::uint64_t passes = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (rng.bernoulli(p_exact)) ++passes;
    SampledFrequency f;
    f.p_hat = static_cast<double>(passes) / static_cast<double>(n);
    f.ci_halfwidth = 3.0 * std::sqrt(f.p_hat * (1.0 - f.p_hat) / static_cast<double>(n));
    return f;
}

GameStats game_stats_sampled(const TwoStateEnsemble& ens, std::uint64_t n, std::uint64_t seed) {
    const GameStats exact = game_stats_exact(ens);
    CounterRng root(seed);
    const SampledFrequency mix_id = sampled_frequency(exact.p_mix_id, n, root.split(0));
    const SampledFrequency mix_swap = sampled_frequency(exact.p_mix_swap, n, root.split(1));
    const SampledFrequency pur = sampled_frequency(exact.p_pur, n, root.split(2));
    GameStats stats;
    stats.p_mix_id = mix_id.p_hat;
    stats.p_mix_swap = mix_swap.p_hat;
    stats.p_pur = pur.p_hat;
    stats.empirical = true;
    stats.n_samples = n;
    stats.ci_mix_id = mix_id.ci_halfwidth;
    stats.ci_mix_swap = mix_swap.ci_halfwidth;
    stats.ci_pur = pur.ci_halfwidth;
    return stats;
}

DopResult d_op_detailed(const GameStats& stats, const TwoStateEnsemble& ens) {
    const double radicand = ens.eta1 * ens.eta2 * (1.0 - stats.p_pur);
    if (radicand < -1e-12)
        throw InconsistentStatisticsError("purity pass probability exceeds 1 beyond tolerance");
    const double root_term = 2.0 * std::sqrt(std::max(0.0, radicand));
    const double score_id = (2.0 * stats.p_mix_id - 1.0) + root_term;
    const double score_swap = (2.0 * stats.p_mix_swap - 1.0) + root_term;
    DopResult r;
    if (score_swap > score_id) {
        r.value = score_swap;
        r.argmax = Labeling::swap;
    } else {
        r.value = score_id;
        r.argmax = Labeling::identity;
    }
    return r;
}

double d_op(const GameStats& stats, const TwoStateEnsemble& ens) {
    return d_op_detailed(stats, ens).value;
}

double d_closed_form(double eta1, double eta2, double overlap_sq) {
    if (std::abs(eta1 + eta2 - 1.0) > kStateTol || eta1 < -kStateTol || eta2 < -kStateTol)
        throw std::invalid_argument("priors must be nonnegative and sum to 1");
    if (overlap_sq < -kStateTol || overlap_sq > 1.0 + kStateTol)
        throw std::invalid_argument("|gamma12|^2 must lie in [0, 1]");
    const double g = std::min(1.0, std::max(0.0, overlap_sq));
    const double eta_min = std::min(eta1, eta2);
    return eta1 * eta1 + eta2 * eta2 + 2.0 * eta1 * eta2 * std::sqrt(1.0 - g) +
           g * (eta1 * eta2 - eta_min * eta_min);
}

}  // namespace discrimlab
