#include "bell.hpp"

#include "error.hpp"
#include "optimize.hpp"
#include "parallel.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace discrimlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_setting_index(int x) {
    if (x != 0 && x != 1) throw std::invalid_argument("setting index must be 0 or 1");
}

Vector3 require_unit(const Vector3& v, const char* name) {
    if (std::abs(v.norm() - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(name) + " must be a unit vector");
    return v;
}

}  // namespace

TwoQubitPure TwoQubitPure::make(const Eigen::Vector4cd& amps) {
    if (std::abs(amps.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("two-qubit amplitudes must have unit norm");
    return TwoQubitPure{amps};
}

TwoQubitPure TwoQubitPure::normalized(const Eigen::Vector4cd& amps) {
    const double n = amps.norm();
    if (n <= 0.0) throw std::invalid_argument("two-qubit amplitudes must be nonzero");
    return TwoQubitPure{amps / n};
}

ConditionalScenario ConditionalScenario::from_table(
    const std::array<ConditionalSetting, 2>& settings) {
    for (const auto& s : settings) {
        if (s.pi_plus < 0.0 || s.pi_minus < 0.0 ||
            std::abs(s.pi_plus + s.pi_minus - 1.0) > 1e-12)
            throw std::invalid_argument("outcome priors must be nonnegative and sum to 1");
        QubitState::from_bloch(s.s_plus);
        QubitState::from_bloch(s.s_minus);
    }
    return ConditionalScenario{settings};
}

const ConditionalSetting& ConditionalScenario::at(int x) const {
    check_setting_index(x);
    return settings[static_cast<std::size_t>(x)];
}

BobSettings BobSettings::make(const Vector3& b0, const Vector3& b1) {
    return BobSettings{require_unit(b0, "b0"), require_unit(b1, "b1")};
}

ConditionalScenario conditional_from_bipartite(const TwoQubitPure& psi, const Vector3& alice0,
                                               const Vector3& alice1) {
    const std::array<Vector3, 2> dirs = {require_unit(alice0, "alice0"),
                                         require_unit(alice1, "alice1")};
    const Eigen::Matrix4cd rho = psi.amps * psi.amps.adjoint();
    std::array<ConditionalSetting, 2> settings;
    for (int x = 0; x < 2; ++x) {
        const Vector3& n = dirs[static_cast<std::size_t>(x)];
        const Matrix2c proj_plus =
            0.5 * (Matrix2c::Identity() + n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z());
        ConditionalSetting setting;
        for (int a = 0; a < 2; ++a) {
            const Matrix2c proj = (a == 0) ? proj_plus
                                           : Matrix2c(Matrix2c::Identity() - proj_plus);
            Eigen::Matrix4cd big = Eigen::Matrix4cd::Zero();
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    big.block<2, 2>(2 * i, 2 * j) = proj(i, j) * Matrix2c::Identity();
            const Eigen::Matrix4cd conditioned = big * rho * big.adjoint();
            // trace out Alice (the first factor)
            Matrix2c bob = Matrix2c::Zero();
            for (int i = 0; i < 2; ++i) bob += conditioned.block<2, 2>(2 * i, 2 * i);
            const double prob = bob.trace().real();
            if (prob < 1e-12)
                throw DegenerateConditioningError(
                    "Alice outcome has vanishing probability: conditional state undefined");
            const QubitState state = QubitState::from_density(Matrix2c(bob / prob));
            if (a == 0) {
                setting.pi_plus = prob;
                setting.s_plus = state.bloch;
            } else {
                setting.pi_minus = prob;
                setting.s_minus = state.bloch;
            }
        }
        settings[static_cast<std::size_t>(x)] = setting;
    }
    return ConditionalScenario::from_table(settings);
}

Vector3 steering_vector(const ConditionalScenario& sc, int x) {
    const auto& s = sc.at(x);
    return s.pi_plus * s.s_plus - s.pi_minus * s.s_minus;
}

SwapSeparationStats swap_separation_stats(const ConditionalScenario& sc, int x) {
    const auto& s = sc.at(x);
    const QubitState plus{s.s_plus};
    const QubitState minus{s.s_minus};
    SwapSeparationStats stats;
    stats.p_pur_plus = swap_pass_prob(plus, plus);
    stats.p_pur_minus = swap_pass_prob(minus, minus);
    stats.p_ov = swap_pass_prob(plus, minus);
    return stats;
}

SampledSeparationStats swap_separation_stats_sampled(const ConditionalScenario& sc, int x,
                                                     std::uint64_t n, std::uint64_t seed) {
    const SwapSeparationStats exact = swap_separation_stats(sc, x);
    CounterRng root(seed);
    const SampledFrequency pp = sampled_frequency(exact.p_pur_plus, n, root.split(0));
    const SampledFrequency pm = sampled_frequency(exact.p_pur_minus, n, root.split(1));
    const SampledFrequency ov = sampled_frequency(exact.p_ov, n, root.split(2));
    SampledSeparationStats out;
    out.stats = SwapSeparationStats{pp.p_hat, pm.p_hat, ov.p_hat};
    out.ci_pur_plus = pp.ci_halfwidth;
    out.ci_pur_minus = pm.ci_halfwidth;
    out.ci_ov = ov.ci_halfwidth;
    return out;
}

namespace {

double separation_from_sq(double r_sq) {
    if (r_sq < -1e-10)
        throw InconsistentStatisticsError("separation radicand is negative beyond sampling noise");
    return std::sqrt(std::max(0.0, r_sq));
}

}  // namespace

double separation_weighted(double pi_plus, double pi_minus, const SwapSeparationStats& stats) {
    const double bias = pi_plus - pi_minus;
    const double r_sq =
        2.0 * (pi_plus * pi_plus * (2.0 * stats.p_pur_plus - 1.0) +
               pi_minus * pi_minus * (2.0 * stats.p_pur_minus - 1.0) -
               2.0 * pi_plus * pi_minus * (2.0 * stats.p_ov - 1.0)) -
        bias * bias;
    return separation_from_sq(r_sq);
}

double separation_weighted(const ConditionalScenario& sc, int x) {
    const auto& s = sc.at(x);
    return separation_weighted(s.pi_plus, s.pi_minus, swap_separation_stats(sc, x));
}

double separation_symmetric(const SwapSeparationStats& stats) {
    return separation_from_sq(stats.p_pur_plus + stats.p_pur_minus - 2.0 * stats.p_ov);
}

double correlator(const ConditionalScenario& sc, int x, const Vector3& b_y) {
    return steering_vector(sc, x).dot(b_y);
}

double chsh(const ConditionalScenario& sc, const BobSettings& settings) {
    return correlator(sc, 0, settings.b0) + correlator(sc, 0, settings.b1) +
           correlator(sc, 1, settings.b0) - correlator(sc, 1, settings.b1);
}

double chsh_bound(const ConditionalScenario& sc) {
    const double r0 = separation_weighted(sc, 0);
    const double r1 = separation_weighted(sc, 1);
    return 2.0 * std::sqrt(r0 * r0 + r1 * r1);
}

namespace {

Vector3 direction_from_angles(double theta, double phi) {
    return Vector3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                   std::cos(theta));
}

std::pair<double, double> angles_from_direction(const Vector3& v) {
    const double theta = std::acos(std::clamp(v.z(), -1.0, 1.0));
    double phi = std::atan2(v.y(), v.x());
    if (phi < 0.0) phi += 2.0 * kPi;
    if (std::abs(std::sin(theta)) < 1e-15) phi = 0.0;
    return {theta, phi};
}

struct ChshCandidate {
    double value = -std::numeric_limits<double>::infinity();
    std::array<double, 4> angles{};  // theta0, phi0, theta1, phi1
};

bool candidate_better(const ChshCandidate& a, const ChshCandidate& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.angles < b.angles;
}

}  // namespace

ChshMaxResult maximize_chsh(const ConditionalScenario& sc, double tol, std::uint64_t seed,
                            int starts) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (starts < 1) throw std::invalid_argument("need at least one start");

    const Vector3 r0 = steering_vector(sc, 0);
    const Vector3 r1 = steering_vector(sc, 1);
    // S = b0.(r0 + r1) + b1.(r0 - r1)
    const Vector3 u = r0 + r1;
    const Vector3 v = r0 - r1;

    auto objective = [&](const std::array<double, 4>& ang) {
        const Vector3 b0 = direction_from_angles(ang[0], ang[1]);
        const Vector3 b1 = direction_from_angles(ang[2], ang[3]);
        return b0.dot(u) + b1.dot(v);
    };

    auto polish = [&](std::array<double, 4> ang) {
        double value = objective(ang);
        for (int round = 0; round < 200; ++round) {
            const double before = value;
            for (int coord = 0; coord < 4; ++coord) {
                const bool is_theta = (coord % 2 == 0);
                const double lo = is_theta ? 0.0 : ang[coord] - kPi;
                const double hi = is_theta ? kPi : ang[coord] + kPi;
                auto [x, fx] = golden_section_max(
                    [&](double t) {
                        auto probe = ang;
                        probe[coord] = t;
                        return objective(probe);
                    },
                    lo, hi, tol * 1e-2);
                if (fx > value) {
                    ang[coord] = x;
                    value = fx;
                }
            }
            if (value - before < tol * 1e-2) break;
        }
        // normalize phi into [0, 2 pi) for the tie-break order
        for (int c : {1, 3}) {
            ang[c] = std::fmod(ang[c], 2.0 * kPi);
            if (ang[c] < 0.0) ang[c] += 2.0 * kPi;
        }
        return ChshCandidate{value, ang};
    };

    std::vector<ChshCandidate> candidates;

    // analytic alignment: b0 along r0 + r1 and b1 along r0 - r1; when
    // r0 . r1 = 0 this saturates the Cauchy-Schwarz step exactly
    {
        const Vector3 b0 = u.norm() > 1e-15 ? Vector3(u.normalized()) : Vector3::UnitZ();
        const Vector3 b1 = v.norm() > 1e-15 ? Vector3(v.normalized()) : Vector3::UnitZ();
        auto [t0, p0] = angles_from_direction(b0);
        auto [t1, p1] = angles_from_direction(b1);
        candidates.push_back(ChshCandidate{objective({t0, p0, t1, p1}), {t0, p0, t1, p1}});
    }

    CounterRng root(seed);
    auto start_results = parallel_map(static_cast<std::size_t>(starts), [&](std::size_t k) {
        CounterRng rng = root.split(k);
        std::array<double, 4> ang{};
        for (int c = 0; c < 4; ++c) {
            if (c % 2 == 0)
                ang[c] = std::acos(1.0 - 2.0 * rng.uniform());
            else
                ang[c] = 2.0 * kPi * rng.uniform();
        }
        return polish(ang);
    });
    candidates.insert(candidates.end(), start_results.begin(), start_results.end());

    ChshCandidate best = candidates.front();
    for (const auto& c : candidates)
        if (candidate_better(c, best)) best = c;

    ChshMaxResult result;
    result.s_max = best.value;
    result.argmax = BobSettings{direction_from_angles(best.angles[0], best.angles[1]),
                                direction_from_angles(best.angles[2], best.angles[3])};
    return result;
}

double discriminability_bound(double d0, double d1) {
    if (d0 < 0.5 || d1 < 0.5 || d0 > 1.0 + 1e-12 || d1 > 1.0 + 1e-12)
        throw std::invalid_argument("discriminabilities must lie in [1/2, 1]");
    const double a = 2.0 * d0 - 1.0;
    const double b = 2.0 * d1 - 1.0;
    return 2.0 * std::sqrt(a * a + b * b);
}

Lemma3Result lemma3_check(const ConditionalScenario& sc, int x) {
    const auto& s = sc.at(x);
    const QubitState plus{s.s_plus};
    const QubitState minus{s.s_minus};
    if (!plus.pure() || !minus.pure())
        throw std::invalid_argument("lemma3_check requires pure conditional states");
    const double g = 0.5 * (1.0 + s.s_plus.dot(s.s_minus));
    Lemma3Result r;
    r.r_tilde = separation_weighted(sc, x);
    r.two_d_minus_one = 2.0 * d_closed_form(s.pi_plus, s.pi_minus, std::clamp(g, 0.0, 1.0)) - 1.0;
    r.holds = r.r_tilde <= r.two_d_minus_one + 1e-10;
    return r;
}

}  // namespace discrimlab
