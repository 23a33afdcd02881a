#pragma once

#include "game.hpp"
#include "qubit.hpp"

#include <array>
#include <cstdint>

namespace discrimlab {

// Pure two-qubit state; basis order |00>,|01>,|10>,|11> with Alice first.
struct TwoQubitPure {
    Eigen::Vector4cd amps;

    static TwoQubitPure make(const Eigen::Vector4cd& amps);        // requires unit norm
    static TwoQubitPure normalized(const Eigen::Vector4cd& amps);  // rescales
};

// One Alice setting: outcome priors and Bob's conditional Bloch vectors.
struct ConditionalSetting {
    double pi_plus = 0.5;
    double pi_minus = 0.5;
    Vector3 s_plus = Vector3::Zero();
    Vector3 s_minus = Vector3::Zero();
};

struct ConditionalScenario {
    std::array<ConditionalSetting, 2> settings;

    static ConditionalScenario from_table(const std::array<ConditionalSetting, 2>& settings);
    const ConditionalSetting& at(int x) const;
};

struct BobSettings {
    Vector3 b0 = Vector3::UnitZ();
    Vector3 b1 = Vector3::UnitX();

    static BobSettings make(const Vector3& b0, const Vector3& b1);  // unit within 1e-12
};

// Postselects Bob's subensemble on Alice's projective outcome along the given
// directions. Throws DegenerateConditioningError when an outcome probability
// falls below 1e-12.
ConditionalScenario conditional_from_bipartite(const TwoQubitPure& psi, const Vector3& alice0,
                                               const Vector3& alice1);

// r_x = pi+ s+ - pi- s-
Vector3 steering_vector(const ConditionalScenario& sc, int x);

struct SwapSeparationStats {
    double p_pur_plus = 0.0;
    double p_pur_minus = 0.0;
    double p_ov = 0.0;
};

SwapSeparationStats swap_separation_stats(const ConditionalScenario& sc, int x);

struct SampledSeparationStats {
    SwapSeparationStats stats;
    double ci_pur_plus = 0.0;
    double ci_pur_minus = 0.0;
    double ci_ov = 0.0;
};
SampledSeparationStats swap_separation_stats_sampled(const ConditionalScenario& sc, int x,
                                                     std::uint64_t n, std::uint64_t seed);

// Weighted separation
//   R~^2 = 2[pi+^2(2p++ - 1) + pi-^2(2p-- - 1) - 2 pi+ pi-(2p_ov - 1)]
//          - (pi+ - pi-)^2,
// clamped at zero; radicands below -1e-10 raise InconsistentStatisticsError.
double separation_weighted(double pi_plus, double pi_minus, const SwapSeparationStats& stats);
double separation_weighted(const ConditionalScenario& sc, int x);
// Equal-prior form R^2 = p++ + p-- - 2 p_ov.
double separation_symmetric(const SwapSeparationStats& stats);

// E_xy = r_x . b_y
double correlator(const ConditionalScenario& sc, int x, const Vector3& b_y);
// S = E00 + E01 + E10 - E11
double chsh(const ConditionalScenario& sc, const BobSettings& settings);
// 2 sqrt(R~0^2 + R~1^2)
double chsh_bound(const ConditionalScenario& sc);

struct ChshMaxResult {
    double s_max = 0.0;
    BobSettings argmax;
};

// Maximizes the CHSH value over unit Bob settings: an analytic candidate
// aligned with r0 +- r1 plus seeded multistart coordinate descent with
// golden-section line searches. Deterministic in seed; ties resolve to the
// smallest (theta, phi) tuple.
ChshMaxResult maximize_chsh(const ConditionalScenario& sc, double tol = 1e-8,
                            std::uint64_t seed = 0, int starts = 32);

// Corollary form 2 sqrt((2 D0 - 1)^2 + (2 D1 - 1)^2); rejects D < 1/2.
double discriminability_bound(double d0, double d1);

struct Lemma3Result {
    double r_tilde = 0.0;
    double two_d_minus_one = 0.0;
    bool holds = false;
};

// Checks R~x <= 2 Dx - 1 for pure conditional states, with the overlap taken
// from the Bloch angle: |gamma|^2 = (1 + s+.s-)/2. Mixed conditionals are a
// precondition error.
Lemma3Result lemma3_check(const ConditionalScenario& sc, int x);

}  // namespace discrimlab
