#pragma once

// Test-only oracles: independent implementations used to freeze expected
// values. Each one deliberately takes a different route than the library
// (eigendecompositions instead of closed forms, explicit outcome sums
// instead of Bloch identities, amplitude-level conditioning instead of 4x4
// density matrices).

#include "bell.hpp"
#include "error.hpp"
#include "game.hpp"
#include "qubit.hpp"
#include "rng.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>

namespace oracles {

using discrimlab::ConditionalScenario;
using discrimlab::CounterRng;
using discrimlab::Matrix2c;
using discrimlab::TwoQubitPure;
using discrimlab::Vector3;

inline Matrix2c matrix_sqrt_psd(const Matrix2c& m) {
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(m);
    const Eigen::Vector2d ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

// general Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 via
// eigendecompositions
inline double uhlmann_fidelity(const Matrix2c& rho, const Matrix2c& sigma) {
    const Matrix2c root = matrix_sqrt_psd(rho);
    const Matrix2c mid = matrix_sqrt_psd(root * sigma * root);
    const double tr = mid.trace().real();
    return tr * tr;
}

// trace norm through Eigen's solver (the library uses the analytic 2x2 form)
inline double trace_norm(const Matrix2c& m) {
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(m);
    return es.eigenvalues().cwiseAbs().sum();
}

// pass probability of the two-point ontic game as an explicit joint sum
inline double ontic_pass_sum(const std::array<double, 2>& mu_a, const std::array<double, 2>& mu_b,
                             const std::array<std::array<double, 2>, 2>& xi) {
    double p = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) p += xi[i][j] * mu_a[i] * mu_b[j];
    return p;
}

// correlator via the full outcome sum E = sum_ab a b p(a,b|x,y), with
// p(a,b|x,y) = pi_a Tr(rho_a Pi_b)
inline double correlator_outcome_sum(const ConditionalScenario& sc, int x, const Vector3& b) {
    using discrimlab::pauli_x;
    using discrimlab::pauli_y;
    using discrimlab::pauli_z;
    const auto& s = sc.at(x);
    const Matrix2c b_op = b.x() * pauli_x() + b.y() * pauli_y() + b.z() * pauli_z();
    double e = 0.0;
    for (int a = 0; a < 2; ++a) {
        const double pi = (a == 0) ? s.pi_plus : s.pi_minus;
        const Matrix2c rho = discrimlab::QubitState{a == 0 ? s.s_plus : s.s_minus}.density();
        for (int outcome = 0; outcome < 2; ++outcome) {
            const double sign_a = (a == 0) ? 1.0 : -1.0;
            const double sign_b = (outcome == 0) ? 1.0 : -1.0;
            const Matrix2c proj = 0.5 * (Matrix2c::Identity() + sign_b * b_op);
            e += sign_a * sign_b * pi * (rho * proj).trace().real();
        }
    }
    return e;
}

// amplitude-level conditioning: project Alice's index, read off Bob's matrix
struct ConditionedBob {
    double prob;
    Matrix2c rho;
};

inline ConditionedBob condition_on_alice(const TwoQubitPure& psi, const Vector3& dir, int a) {
    using discrimlab::pauli_x;
    using discrimlab::pauli_y;
    using discrimlab::pauli_z;
    const double sign = (a == 0) ? 1.0 : -1.0;
    const Matrix2c proj = 0.5 * (Matrix2c::Identity() +
                                 sign * (dir.x() * pauli_x() + dir.y() * pauli_y() +
                                         dir.z() * pauli_z()));
    // m[alice][bob] = sum_a' proj[alice][a'] psi[a' bob]
    Eigen::Matrix2cd amp;
    amp << psi.amps[0], psi.amps[1], psi.amps[2], psi.amps[3];
    const Eigen::Matrix2cd m = proj * amp;
    Matrix2c rho = Matrix2c::Zero();
    for (int i = 0; i < 2; ++i)
        for (int b = 0; b < 2; ++b)
            for (int bp = 0; bp < 2; ++bp) rho(b, bp) += m(i, b) * std::conj(m(i, bp));
    ConditionedBob out;
    out.prob = rho.trace().real();
    if (out.prob > 0.0) rho /= out.prob;
    out.rho = rho;
    return out;
}

inline Vector3 random_unit_vector(CounterRng& rng) {
    for (;;) {
        Vector3 v(rng.gaussian(), rng.gaussian(), rng.gaussian());
        const double n = v.norm();
        if (n > 1e-6) return v / n;
    }
}

inline Vector3 random_bloch_in_ball(CounterRng& rng) {
    return random_unit_vector(rng) * std::cbrt(rng.uniform());
}

inline TwoQubitPure haar_two_qubit(CounterRng& rng) {
    Eigen::Vector4cd a;
    for (int i = 0; i < 4; ++i) a[i] = std::complex<double>(rng.gaussian(), rng.gaussian());
    return TwoQubitPure::normalized(a);
}

// Haar state plus random Alice directions, resampled until both outcomes of
// both settings have nonvanishing probability
inline ConditionalScenario random_bipartite_scenario(CounterRng& rng) {
    for (;;) {
        try {
            const TwoQubitPure psi = haar_two_qubit(rng);
            const Vector3 a0 = random_unit_vector(rng);
            const Vector3 a1 = random_unit_vector(rng);
            return discrimlab::conditional_from_bipartite(psi, a0, a1);
        } catch (const discrimlab::DegenerateConditioningError&) {
        }
    }
}

inline discrimlab::TwoStateEnsemble random_ensemble(CounterRng& rng, double eta_lo = 0.01,
                                                    double eta_hi = 0.99) {
    const double eta1 = eta_lo + (eta_hi - eta_lo) * rng.uniform();
    const double g = rng.uniform();
    const double phase = 2.0 * 3.14159265358979323846 * rng.uniform();
    const std::complex<double> gamma =
        std::sqrt(g) * std::complex<double>(std::cos(phase), std::sin(phase));
    return discrimlab::TwoStateEnsemble::make(eta1, gamma);
}

}  // namespace oracles
