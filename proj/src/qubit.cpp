#include "qubit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace discrimlab {

namespace {

using namespace std::complex_literals;

Matrix2c make_pauli(int k) {
    Matrix2c m;
    switch (k) {
        case 0: m << 0, 1, 1, 0; break;
        case 1: m << 0, -1i, 1i, 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

const Matrix2c& pauli_x() { static const Matrix2c m = make_pauli(0); return m; }
const Matrix2c& pauli_y() { static const Matrix2c m = make_pauli(1); return m; }
const Matrix2c& pauli_z() { static const Matrix2c m = make_pauli(2); return m; }

bool is_hermitian(const Matrix2c& m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unit_trace(const Matrix2c& m, double tol) {
    return std::abs(m.trace() - std::complex<double>(1.0)) <= tol;
}

bool is_psd(const Matrix2c& m, double tol) {
    if (!is_hermitian(m, tol)) return false;
    const auto ev = hermitian_eigenvalues(m);
    return ev[0] >= -tol;
}

bool is_valid_state(const Matrix2c& m, double tol) {
    return is_hermitian(m, tol) && is_unit_trace(m, tol) && is_psd(m, tol);
}

std::array<double, 2> hermitian_eigenvalues(const Matrix2c& m) {
    const double tr = m(0, 0).real() + m(1, 1).real();
    const double det = m(0, 0).real() * m(1, 1).real() - std::norm(m(0, 1));
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

QubitState QubitState::from_bloch(const Vector3& s) {
    if (s.norm() > 1.0 + kStateTol) {
        std::ostringstream msg;
        msg << "unphysical Bloch vector: ||s|| = " << s.norm() << " exceeds 1";
        fail(msg.str());
    }
    return QubitState{s};
}

QubitState QubitState::from_density(const Matrix2c& rho) {
    if (!is_hermitian(rho, 1e-9)) fail("density matrix is not Hermitian");
    if (!is_unit_trace(rho, 1e-9)) fail("density matrix does not have unit trace");
    if (hermitian_eigenvalues(rho)[0] < -kStateTol) fail("density matrix is not positive semidefinite");
    Vector3 s;
    s << (rho * pauli_x()).trace().real(), (rho * pauli_y()).trace().real(),
        (rho * pauli_z()).trace().real();
    return QubitState{s};
}

Matrix2c QubitState::density() const {
    Matrix2c m = 0.5 * (Matrix2c::Identity() + bloch.x() * pauli_x() +
                        bloch.y() * pauli_y() + bloch.z() * pauli_z());
    return m;
}

bool QubitState::pure(double tol) const { return std::abs(bloch.norm() - 1.0) <= tol; }

double purity(const QubitState& rho) { return 0.5 * (1.0 + rho.bloch.squaredNorm()); }

double overlap(const QubitState& rho, const QubitState& sigma) {
    return 0.5 * (1.0 + rho.bloch.dot(sigma.bloch));
}

namespace {

double det_hermitian(const Matrix2c& m) {
    return m(0, 0).real() * m(1, 1).real() - std::norm(m(0, 1));
}

double fidelity_from_parts(double tr_product, double det_a, double det_b) {
    if (det_a < -1e-12 || det_b < -1e-12) fail("fidelity input has negative determinant: not a state");
    const double da = std::max(0.0, det_a);
    const double db = std::max(0.0, det_b);
    return tr_product + 2.0 * std::sqrt(da * db);
}

}  // namespace

double fidelity_qubit(const Matrix2c& rho, const Matrix2c& sigma) {
    if (!is_valid_state(rho, 1e-9) || !is_valid_state(sigma, 1e-9))
        fail("fidelity input is not a valid qubit state");
    return fidelity_from_parts((rho * sigma).trace().real(), det_hermitian(rho),
                               det_hermitian(sigma));
}

double fidelity_qubit(const QubitState& rho, const QubitState& sigma) {
    // det rho = (1 - ||s||^2)/4 for qubits
    const double det_a = 0.25 * (1.0 - rho.bloch.squaredNorm());
    const double det_b = 0.25 * (1.0 - sigma.bloch.squaredNorm());
    return fidelity_from_parts(overlap(rho, sigma), det_a, det_b);
}

double helstrom_guess(double pi_plus, const QubitState& rho_plus,
                      double pi_minus, const QubitState& rho_minus) {
    if (pi_plus < 0.0 || pi_minus < 0.0 || std::abs(pi_plus + pi_minus - 1.0) > kStateTol)
        fail("helstrom_guess priors must be nonnegative and sum to 1");
    const Matrix2c diff = pi_plus * rho_plus.density() - pi_minus * rho_minus.density();
    const auto ev = hermitian_eigenvalues(diff);
    return 0.5 * (1.0 + std::abs(ev[0]) + std::abs(ev[1]));
}

}  // namespace discrimlab
