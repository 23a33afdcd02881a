#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace discrimlab {

using Matrix2c = Eigen::Matrix2cd;
using Vector3 = Eigen::Vector3d;

inline constexpr double kStateTol = 1e-12;

const Matrix2c& pauli_x();
const Matrix2c& pauli_y();
const Matrix2c& pauli_z();

bool is_hermitian(const Matrix2c& m, double tol = kStateTol);
bool is_unit_trace(const Matrix2c& m, double tol = kStateTol);
bool is_psd(const Matrix2c& m, double tol = kStateTol);
bool is_valid_state(const Matrix2c& m, double tol = kStateTol);

// Eigenvalues of a Hermitian 2x2 matrix, ascending.
std::array<double, 2> hermitian_eigenvalues(const Matrix2c& m);

// Single-qubit state. The Bloch vector is the canonical storage; the density
// matrix view is computed on demand.
struct QubitState {
    Vector3 bloch = Vector3::Zero();

    // rejects ||s|| > 1 + 1e-12
    static QubitState from_bloch(const Vector3& s);
    // validates Hermiticity, unit trace and positivity, then extracts s
    static QubitState from_density(const Matrix2c& rho);

    Matrix2c density() const;  // (I + s.sigma)/2
    bool pure(double tol = 1e-9) const;
};

double purity(const QubitState& rho);                            // (1 + ||s||^2)/2
double overlap(const QubitState& rho, const QubitState& sigma);  // (1 + s.s')/2

// Uhlmann fidelity, qubit closed form: Tr(rho sigma) + 2 sqrt(det rho det sigma).
// The raw-matrix overload validates its inputs and rejects determinants below
// -1e-12; smaller negatives are clamped to zero before the square root.
double fidelity_qubit(const Matrix2c& rho, const Matrix2c& sigma);
double fidelity_qubit(const QubitState& rho, const QubitState& sigma);

// Optimal minimum-error guessing probability (1 + ||pi+ rho+ - pi- rho-||_1)/2,
// evaluated through the eigenvalues of the Hermitian difference.
double helstrom_guess(double pi_plus, const QubitState& rho_plus,
                      double pi_minus, const QubitState& rho_minus);

}  // namespace discrimlab
