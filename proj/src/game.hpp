#pragma once

#include "qubit.hpp"
#include "rng.hpp"

#include <complex>
#include <cstdint>

namespace discrimlab {

enum class Labeling { identity, swap };

// Ensemble of two pure states with priors; gamma12 = <psi|phi> carries the
// full complex phase (only |gamma12|^2 enters the scores).
struct TwoStateEnsemble {
    double eta1 = 0.5;
    double eta2 = 0.5;
    std::complex<double> gamma12{0.0, 0.0};

    static TwoStateEnsemble make(double eta1, std::complex<double> gamma12);

    double eta_min() const { return eta1 < eta2 ? eta1 : eta2; }
    double overlap_sq() const { return std::norm(gamma12); }

    // Every score is invariant under exchanging the roles of the two states,
    // and the Gram construction is anchored at the higher-prior state: for
    // eta1 < eta2 the literal first-state anchoring yields a strictly smaller
    // fidelity than the closed form. canonical() returns the anchored
    // ordering (exchange conjugates the overlap).
    TwoStateEnsemble canonical() const;
};

struct GameStats {
    double p_mix_id = 0.0;
    double p_mix_swap = 0.0;
    double p_pur = 0.0;
    bool empirical = false;
    std::uint64_t n_samples = 0;
    double ci_mix_id = 0.0;  // 3-sigma half-widths (empirical only)
    double ci_mix_swap = 0.0;
    double ci_pur = 0.0;
};

// Gram-type state of the ensemble in the basis anchored at the first state.
Matrix2c gram_state(const TwoStateEnsemble& ens);
// diag(eta1, eta2) under the identity labeling, diag(eta2, eta1) under swap.
Matrix2c prior_state(const TwoStateEnsemble& ens, Labeling p);
// SWAP-test pass probability (1 + Tr(rho sigma))/2.
double swap_pass_prob(const Matrix2c& rho, const Matrix2c& sigma);
double swap_pass_prob(const QubitState& rho, const QubitState& sigma);

GameStats game_stats_exact(const TwoStateEnsemble& ens);
// Each frequency is the mean of n Bernoulli draws at the exact pass
// probability; deterministic in seed.
GameStats game_stats_sampled(const TwoStateEnsemble& ens, std::uint64_t n, std::uint64_t seed);

struct DopResult {
    double value = 0.0;
    Labeling argmax = Labeling::identity;  // ties resolve to identity
};

// Game score max_p [(2 p_mix^(p) - 1) + 2 sqrt(eta1 eta2 (1 - p_pur))].
// Empirical stats may push the value slightly above 1; it is reported
// unclamped.
DopResult d_op_detailed(const GameStats& stats, const TwoStateEnsemble& ens);
double d_op(const GameStats& stats, const TwoStateEnsemble& ens);

// Closed-form discriminability
//   eta1^2 + eta2^2 + 2 eta1 eta2 sqrt(1-g) + g (eta1 eta2 - eta_min^2),
// g = |gamma12|^2.
double d_closed_form(double eta1, double eta2, double overlap_sq);

// Shared Bernoulli-frequency sampler; every Monte Carlo path in the toolkit
// uses this one code path and CI convention (3-sigma normal half-width).
struct SampledFrequency {
    double p_hat = 0.0;
    double ci_halfwidth = 0.0;
};
SampledFrequency sampled_frequency(double p_exact, std::uint64_t n, CounterRng rng);

}  // namespace discrimlab
