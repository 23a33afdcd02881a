#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "error.hpp"
#include "game.hpp"
#include "oracles.hpp"
#include "rng.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

using namespace discrimlab;

namespace {

// assembles eta1 |e1><e1| + eta2 |phi><phi| from the amplitude decomposition
Matrix2c gram_oracle(const TwoStateEnsemble& ens) {
    const double g = ens.overlap_sq();
    Eigen::Vector2cd phi;
    phi << ens.gamma12, std::sqrt(std::max(0.0, 1.0 - g));
    Eigen::Vector2cd e1;
    e1 << 1.0, 0.0;
    return ens.eta1 * (e1 * e1.adjoint()) + ens.eta2 * (phi * phi.adjoint());
}

double max_fidelity_oracle(const TwoStateEnsemble& ens) {
    const TwoStateEnsemble c = ens.canonical();
    const Matrix2c rho_t = gram_state(c);
    return std::max(oracles::uhlmann_fidelity(rho_t, prior_state(c, Labeling::identity)),
                    oracles::uhlmann_fidelity(rho_t, prior_state(c, Labeling::swap)));
}

}  // namespace

TEST_CASE("gram_state reference points") {
    const Matrix2c orth = gram_state(TwoStateEnsemble::make(0.5, 0.0));
    CHECK(orth(0, 0).real() == doctest::Approx(0.5));
    CHECK(orth(1, 1).real() == doctest::Approx(0.5));
    CHECK(std::abs(orth(0, 1)) == doctest::Approx(0.0));

    const Matrix2c same = gram_state(TwoStateEnsemble::make(0.5, 1.0));
    CHECK(same(0, 0).real() == doctest::Approx(1.0));
    CHECK(same(1, 1).real() == doctest::Approx(0.0));

    const Matrix2c mixed = gram_state(TwoStateEnsemble::make(0.7, 0.5));
    CHECK(mixed(0, 0).real() == doctest::Approx(0.775).epsilon(1e-14));
    CHECK(mixed(0, 1).real() == doctest::Approx(0.1299038105676658).epsilon(1e-12));
    CHECK(mixed(1, 1).real() == doctest::Approx(0.225).epsilon(1e-14));
    CHECK(is_valid_state(mixed, 1e-12));
}

TEST_CASE("gram_state equals the amplitude assembly, complex overlaps included") {
    CounterRng rng(31);
    for (int i = 0; i < 2000; ++i) {
        const auto ens = oracles::random_ensemble(rng);
        const Matrix2c diff = gram_state(ens) - gram_oracle(ens);
        CHECK(diff.cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("prior_state orderings") {
    const auto ens = TwoStateEnsemble::make(0.7, 0.0);
    CHECK(prior_state(ens, Labeling::identity)(0, 0).real() == doctest::Approx(0.7));
    CHECK(prior_state(ens, Labeling::identity)(1, 1).real() == doctest::Approx(0.3));
    CHECK(prior_state(ens, Labeling::swap)(0, 0).real() == doctest::Approx(0.3));
    CHECK(prior_state(ens, Labeling::swap)(1, 1).real() == doctest::Approx(0.7));
}

TEST_CASE("swap_pass_prob reference values") {
    const Matrix2c zero = QubitState::from_bloch({0, 0, 1}).density();
    const Matrix2c one = QubitState::from_bloch({0, 0, -1}).density();
    const Matrix2c mixed = QubitState::from_bloch({0, 0, 0}).density();
    CHECK(swap_pass_prob(zero, one) == doctest::Approx(0.5));
    CHECK(swap_pass_prob(zero, zero) == doctest::Approx(1.0));
    CHECK(swap_pass_prob(mixed, mixed) == doctest::Approx(0.75));
    CHECK(swap_pass_prob(zero, mixed) == swap_pass_prob(mixed, zero));
}

TEST_CASE("game_stats_exact reference ensembles") {
    const GameStats equal = game_stats_exact(TwoStateEnsemble::make(0.5, 0.0));
    CHECK(equal.p_mix_id == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(equal.p_mix_swap == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(equal.p_pur == doctest::Approx(0.75).epsilon(1e-14));
    CHECK_FALSE(equal.empirical);

    CHECK(game_stats_exact(TwoStateEnsemble::make(0.5, 1.0)).p_pur == doctest::Approx(1.0));

    const GameStats biased = game_stats_exact(TwoStateEnsemble::make(0.7, 0.0));
    CHECK(biased.p_mix_id == doctest::Approx(0.79).epsilon(1e-14));
    CHECK(biased.p_mix_swap == doctest::Approx(0.71).epsilon(1e-14));
}

TEST_CASE("game_stats_sampled behaves like a seeded Bernoulli mean") {
    const auto ens = TwoStateEnsemble::make(0.6, std::complex<double>(0.3, 0.4));
    const GameStats exact = game_stats_exact(ens);
    const GameStats sampled = game_stats_sampled(ens, 1000000, 1);
    CHECK(sampled.empirical);
    CHECK(sampled.n_samples == 1000000);
    CHECK(sampled.ci_mix_id ==
          doctest::Approx(3.0 * std::sqrt(sampled.p_mix_id * (1.0 - sampled.p_mix_id) / 1e6)));
    CHECK(std::abs(sampled.p_mix_id - exact.p_mix_id) <= sampled.ci_mix_id);
    CHECK(std::abs(sampled.p_mix_swap - exact.p_mix_swap) <= sampled.ci_mix_swap);
    CHECK(std::abs(sampled.p_pur - exact.p_pur) <= sampled.ci_pur);

    // deterministic pass when the success probability is 1
    const GameStats pure = game_stats_sampled(TwoStateEnsemble::make(0.5, 1.0), 1000, 3);
    CHECK(pure.p_pur == 1.0);

    const GameStats again = game_stats_sampled(ens, 1000000, 1);
    CHECK(again.p_mix_id == sampled.p_mix_id);
    CHECK(again.p_mix_swap == sampled.p_mix_swap);
    CHECK(again.p_pur == sampled.p_pur);

    CHECK_THROWS_AS(game_stats_sampled(ens, 0, 1), std::invalid_argument);
}

TEST_CASE("d_op reference scores") {
    auto exact_score = [](double eta1, std::complex<double> gamma) {
        const auto ens = TwoStateEnsemble::make(eta1, gamma);
        return d_op(game_stats_exact(ens), ens);
    };
    CHECK(exact_score(0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(exact_score(0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(exact_score(0.5, std::sqrt(0.5)) ==
          doctest::Approx(0.8535533905932737).epsilon(1e-13));

    // identity labeling wins ties
    const auto ens = TwoStateEnsemble::make(0.5, 0.25);
    CHECK(d_op_detailed(game_stats_exact(ens), ens).argmax == Labeling::identity);

    GameStats bad;
    bad.p_pur = 1.0 + 1e-6;
    CHECK_THROWS_AS(d_op(bad, ens), InconsistentStatisticsError);
}

TEST_CASE("d_closed_form reference values") {
    CHECK(d_closed_form(0.5, 0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d_closed_form(0.5, 0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d_closed_form(0.7, 0.3, 0.25) == doctest::Approx(0.9737306695894642).epsilon(1e-13));
    CHECK(std::abs(d_closed_form(0.7, 0.3, 0.25) -
                   max_fidelity_oracle(TwoStateEnsemble::make(0.7, 0.5))) < 1e-10);
    CHECK_THROWS_AS(d_closed_form(0.7, 0.4, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(d_closed_form(0.5, 0.5, 1.5), std::invalid_argument);
}

TEST_CASE("score equivalence: game, closed form and fidelity agree") {
    CounterRng rng(41);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const auto ens = oracles::random_ensemble(rng);
        const double game = d_op(game_stats_exact(ens), ens);
        const double closed = d_closed_form(ens.eta1, ens.eta2, ens.overlap_sq());
        const double fid = max_fidelity_oracle(ens);
        worst = std::max({worst, std::abs(game - closed), std::abs(closed - fid)});
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("scores do not depend on the input order of the two states") {
    CounterRng rng(43);
    for (int i = 0; i < 500; ++i) {
        const auto ens = oracles::random_ensemble(rng);
        const auto flipped = TwoStateEnsemble::make(ens.eta2, std::conj(ens.gamma12));
        CHECK(std::abs(d_op(game_stats_exact(ens), ens) -
                       d_op(game_stats_exact(flipped), flipped)) < 1e-12);
    }
}

TEST_CASE("equal priors reproduce the optimal guessing probability") {
    CounterRng rng(47);
    for (int i = 0; i < 1000; ++i) {
        const double g = rng.uniform();
        const double expected = 0.5 * (1.0 + std::sqrt(1.0 - g));
        CHECK(std::abs(d_closed_form(0.5, 0.5, g) - expected) < 1e-12);
    }
}

TEST_CASE("closed form is non-increasing in the squared overlap") {
    for (double eta1 : {0.5, 0.65, 0.9}) {
        double prev = d_closed_form(eta1, 1.0 - eta1, 0.0);
        for (int i = 1; i < 1000; ++i) {
            const double g = static_cast<double>(i) / 999.0;
            const double cur = d_closed_form(eta1, 1.0 - eta1, g);
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("purity term equals the determinant term of the fidelity") {
    CounterRng rng(53);
    for (int i = 0; i < 2000; ++i) {
        const auto ens = oracles::random_ensemble(rng).canonical();
        const GameStats stats = game_stats_exact(ens);
        const Matrix2c rho_t = gram_state(ens);
        const double det_rho = rho_t(0, 0).real() * rho_t(1, 1).real() - std::norm(rho_t(0, 1));
        const double det_eta = ens.eta1 * ens.eta2;
        const double purity_term =
            2.0 * std::sqrt(std::max(0.0, ens.eta1 * ens.eta2 * (1.0 - stats.p_pur)));
        const double det_term = 2.0 * std::sqrt(std::max(0.0, det_eta * det_rho));
        CHECK(std::abs(purity_term - det_term) < 1e-12);
    }
}

TEST_CASE("sampled score converges to the exact score") {
    CounterRng rng(59);
    int within = 0;
    const int runs = 100;
    for (int i = 0; i < runs; ++i) {
        const auto ens = oracles::random_ensemble(rng);
        const GameStats sampled = game_stats_sampled(ens, 1000000, substream_seed(59, i));
        const double gap = std::abs(d_op(sampled, ens) - d_op(game_stats_exact(ens), ens));
        if (gap < 5e-3) ++within;
    }
    CHECK(within >= 99);
}
