#pragma once

#include <cstddef>

#include "qudit_phase/context.hpp"
#include "qudit_phase/types.hpp"

namespace qudit_phase {

/// Top eigenpair of a Harper-type operator.
///
/// gamma is real, strictly positive (Perron-Frobenius) and unit norm;
/// h is the greatest eigenvalue; gap = h minus the second eigenvalue
/// (+infinity when d = 1, where there is no second eigenvalue).
struct GroundPair {
    double h = 0.0;
    RealVector gamma;
    double gap = 0.0;
    double theta = kPi / 4;
};

/// The Harper operator in the position basis.
///
/// For theta == pi/4 (within 1e-12) returns H = (P + P^+ + Q + Q^+)/4.
/// Otherwise returns the theta-weighted form
/// H_theta = cos(theta) (P + P^+)/2 + sin(theta) (Q + Q^+)/2,
/// which at pi/4 would equal sqrt(2) H.  Rejects theta outside (0, pi/2):
/// at the endpoints the top eigenvalue is degenerate and the positivity
/// claims fail.
RealMatrix build_harper(const QuditContext& ctx, double theta = kPi / 4);

/// Full diagonalization by cyclic Jacobi rotations, returning the top
/// eigenpair.  The eigenvector sign is fixed so the largest-magnitude
/// component is positive; the far tail is then re-converged with
/// positivity-preserving iterations of H + I, because plain rotation
/// based solvers lose the sign of components below ~1e-16.
///
/// Throws if the spectral gap is below 1e-12 (degenerate input) or if
/// positivity fails after the sign fix: any component <= 1e-10 for
/// d <= 32, any component <= 0 for larger d (the exact minimum component
/// decays like exp(-0.586 d) and crosses 1e-10 near d = 40).
GroundPair ground_pair_dense(const RealMatrix& h, double theta = kPi / 4);

struct PowerSolveResult {
    GroundPair pair;
    std::size_t iterations = 0;
};

/// Shifted power iteration on H + kappa*I starting from the all-ones
/// vector; kappa >= 1 keeps every entry of the iteration matrix
/// non-negative so the iterates stay strictly positive.  The gap is
/// estimated from a second, deflated iteration.  Serves as the
/// independent cross-check of ground_pair_dense.
PowerSolveResult ground_pair_power(const RealMatrix& h, double kappa = 1.0,
                                   double tol = 1e-13, double theta = kPi / 4);

/// Residuals of the Fourier/reflection invariances of gamma and of the
/// four expectation values that all equal h.
struct SymmetryReport {
    double fourier_residual = 0.0;     // ||F gamma - gamma||_2
    double reflection_residual = 0.0;  // ||T gamma - gamma||_2
    double expectation_residual = 0.0; // max |<Q>,<Q^+>,<P>,<P^+> - h|
    double max_residual() const;
};

SymmetryReport verify_gamma_symmetries(const GroundPair& pair, const QuditContext& ctx);

/// Ground pair of the certainty-pairing operator
/// M_theta = cos(theta) (Q + Q^+)/2 + sin(theta) (P + P^+)/2.
/// Its top eigenvalue equals that of H_theta (the two are conjugate by
/// F), and its Perron vector is the state saturating
/// cos(theta)|<Q>| + sin(theta)|<P>| <= h_theta.
GroundPair theta_ground_pair(const QuditContext& ctx, double theta);

/// Top eigenvalue of H_theta in the theta-weighted normalization
/// (continuous in theta; equals sqrt(2) h at theta = pi/4).
double theta_top_eigenvalue(const QuditContext& ctx, double theta);

} // namespace qudit_phase
