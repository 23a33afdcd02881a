#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace discrimlab {

// Two-point ontic space: each preparation is a Bernoulli epistemic state,
// stored as its weight on ontic state 0. The mixture constraint
// t + t~ = e + e~ is the preparation-noncontextuality condition.
struct OnticModel2 {
    double t = 0.0;
    double t_tilde = 0.0;
    double e = 0.0;
    double e_tilde = 0.0;

    static OnticModel2 make(double t, double t_tilde, double e, double e_tilde);
};

double pnc_residual(const OnticModel2& m);
bool pnc_valid(const OnticModel2& m, double tol = 1e-12);

// Exchange-symmetric two-copy pass response [[a,b],[b,c]].
struct ResponseMatrix {
    double a = 1.0;
    double b = 0.0;
    double c = 1.0;

    static ResponseMatrix make(double a, double b, double c);
    static ResponseMatrix swap_like(double q);  // [[1,q],[q,1]]
};

struct OnticGameProbs {
    double p_pur = 0.0;
    double p_mix = 0.0;
};
OnticGameProbs game_probs(const OnticModel2& m, const ResponseMatrix& xi);

// Game score of a PNC-valid model under the swap-like response, maximized
// over the two labelings of the prior preparation (e and its relabel 1-e):
//   1 - 2(1-q) delta + 2 sqrt(2 eta1 eta2 (1-q) t(1-t)),  delta = t+e-2te.
double d_op_model(const OnticModel2& m, double q, double eta1, double eta2);

// Sharp single-copy test structure: mu_T = (1,0), mu_T~ = (0,1), and the
// mixture constraint then forces mu_eta = (c,1-c), mu_eta~ = (1-c,c) with
// c the confusability of the prior preparation.
struct SharpModelConfig {
    double c_confusability = 0.0;
    double q = 0.5;

    static SharpModelConfig make(double c, double q);
    OnticModel2 model() const { return OnticModel2{1.0, 0.0, c_confusability, 1.0 - c_confusability}; }
    double score(double eta1 = 0.5, double eta2 = 0.5) const;
};

// Noncontextual ceiling under a sharp single-copy test: 1 - 2(1-q) min{c, 1-c}.
double direct_bound(double q, double c);

struct SaturationResult {
    double d_qm = 0.0;
    double bound = 0.0;
    double gap = 0.0;
};
// Quantum realization rho_T = |0><0|, prior diag(c, 1-c), SWAP test (q = 1/2);
// the game value equals the bound exactly. Requires c in [0, 1/2].
SaturationResult quantum_saturation(double c);

// Threshold q above which the sharp-test ceiling at c = eta_min clears the
// closed-form discriminability: q* = 1 - (1 - D) / (2 eta_min).
double q_star(double eta_min, double d);

struct NcSearchResult {
    double max_d_op = 0.0;
    OnticModel2 argmax;
    double q = 0.0;
    double eta1 = 0.5;
    double eta2 = 0.5;
    bool sharp = false;
    std::optional<double> c;
    int resolution = 0;
    std::uint64_t evaluations = 0;
};

// Grid search plus coordinate-wise golden-section refinement over PNC-valid
// models. sharp = true pins mu_T = (1,0), mu_T~ = (0,1) and mu_eta = (c,1-c);
// with c supplied the model is fully determined. sharp = false searches
// (t, e) in [0,1]^2 (the complementary preparations only pad the mixture
// constraint and never enter the score). Grid ties resolve to the smallest
// (t, t~, e, e~) tuple.
NcSearchResult search_nc_max(double q, double eta1, double eta2, bool sharp,
                             std::optional<double> c, int resolution);

// n-state exploration: sharp supports S_T = {0..k-1} versus the rest, PNC
// mixture constraint, response with unit diagonal and off-diagonal q. The
// result is a stochastic lower bound on the noncontextual maximum, never a
// proven inequality.
struct GeneralNcConfig {
    int n = 3;
    double q = 0.5;
    double eta1 = 0.5;
    double eta2 = 0.5;
    int t_support_size = 1;
    std::optional<double> c;
    std::uint64_t budget = 200000;
    std::uint64_t seed = 0;
};

struct GeneralNcResult {
    double best = 0.0;
    bool complete = true;  // false when the budget ran out mid-refinement
    std::vector<double> mu_t;
    std::vector<double> mu_t_tilde;
    std::vector<double> mu_eta;
    std::uint64_t evaluations = 0;
};

GeneralNcResult search_nc_max_general(const GeneralNcConfig& cfg);

}  // namespace discrimlab
