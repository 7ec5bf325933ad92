#pragma once

#include <vector>

#include "qudit_phase/types.hpp"

namespace qudit_phase {

/// Reduce an integer index to the canonical range [0, d).
int periodic_index(long long i, int d);

/// Clock/shift algebra of a d-dimensional system.
///
/// Q is diagonal with the d-th roots of unity, P is the cyclic shift
/// P|a> = |a+1 mod d>, F is the discrete Fourier matrix with entries
/// omega^{ab}/sqrt(d), and T|a> = |-a mod d> is the reflection.  They
/// satisfy QP = omega PQ, F^2 = T, T^2 = 1, FQF^+ = P^+, FPF^+ = Q.
///
/// Immutable after construction; safe to share across threads.
struct QuditContext {
    int d = 0;
    std::vector<Complex> omega_powers; // omega^k for k in [0, d)
    Matrix Q, P, F, T;

    /// omega^(k mod d) for any integer k (reduced before lookup).
    Complex omega(long long k) const { return omega_powers[periodic_index(k, d)]; }
};

/// Builds the context for dimension d >= 1.  Each omega^k is evaluated
/// from the reduced angle 2*pi*(k mod d)/d so large exponents do not
/// accumulate phase error.
QuditContext build_context(int d);

/// Pure state as an amplitude vector tagged with the basis it is
/// expressed in.
struct StateVector {
    Vector amplitudes;
    Basis basis = Basis::position;
};

/// Throws std::invalid_argument unless the squared norm is 1 within tol.
void validate_state(const StateVector& state, double tol = 1e-10);

/// Coefficients of the same amplitude tuple in the conjugate basis:
/// y_b = (1/sqrt d) sum_a omega^{-ba} x_a, with the basis tag flipped.
/// Applying it twice reproduces the reflection T.
StateVector dft(const StateVector& state, const QuditContext& ctx);

struct DensityMatrix {
    Matrix rho;
};

DensityMatrix pure_density(const Vector& amplitudes);

/// Hermitian within hermitian_tol, trace 1 within trace_tol, eigenvalues
/// >= -psd_tol.  Throws std::invalid_argument on violation.
void validate_density(const DensityMatrix& rho, double hermitian_tol = 1e-12,
                      double trace_tol = 1e-12, double psd_tol = 1e-10);

Complex expectation(const Matrix& op, const Vector& psi);
Complex expectation(const Matrix& op, const DensityMatrix& rho);

/// P^a Q^b |psi> for integer phase-space labels (a, b).
Vector translate_state(int a, int b, const Vector& psi, const QuditContext& ctx);

/// P^a Q^b M Q^{-b} P^{-a}; entries (P^aQ^b M Q^{-b}P^{-a})_{x,y} =
/// omega^{b(x-y)} M_{x-a, y-a}.
Matrix phase_space_translate(const Matrix& m, int a, int b, const QuditContext& ctx);

} // namespace qudit_phase
