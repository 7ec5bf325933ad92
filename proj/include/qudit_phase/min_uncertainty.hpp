#pragma once

#include <cstdint>

#include "qudit_phase/context.hpp"
#include "qudit_phase/harper.hpp"
#include "qudit_phase/types.hpp"

namespace qudit_phase {

/// Certainty C = |<Q><P>| of a normalized pure state; in [0, h^2].
double certainty(const StateVector& state, const QuditContext& ctx);

/// Mixed-state certainty |tr(rho Q) tr(rho P)|; the same bound holds.
double certainty(const DensityMatrix& rho, const QuditContext& ctx);

/// |alpha, beta> = P^alpha Q^beta |Gamma>.  Its position distribution is
/// Gamma^2 shifted by alpha, its momentum distribution Gamma^2 shifted
/// by beta, and it saturates C = h^2.
struct MinUncertaintyState {
    int alpha = 0;
    int beta = 0;
    Vector amplitudes;
};

MinUncertaintyState min_uncertainty_state(int alpha, int beta, const GroundPair& pair,
                                          const QuditContext& ctx);

/// Max-abs entry of (1/d) sum_{alpha,beta} |a,b><a,b| minus the identity.
double resolution_of_identity_residual(const GroundPair& pair, const QuditContext& ctx);

/// Replaces the coefficients in the chosen basis by their moduli
/// (converting first when the state is tagged with the other basis).
/// Keeps the chosen-basis expectation of the diagonal operator fixed and
/// can only increase the conjugate one; norm is preserved.
StateVector modulus_lift(const StateVector& state, Basis lift_basis, const QuditContext& ctx);

struct CertaintyMaximum {
    double value = 0.0;
    Vector state;
    int matched_alpha = 0;   // minimum-uncertainty state closest to the maximizer
    int matched_beta = 0;
    double fidelity = 0.0;   // |<matched|state>|^2
    std::uint64_t best_seed = 0;
    std::size_t iterations = 0;
};

/// Multi-start projected gradient ascent of log C on the unit sphere
/// (step 0.1, backtracking halving, regrowth on success), followed by a
/// snap refinement: the expectation phases are rounded to the nearest
/// lattice point and the corresponding P^a Q^b Gamma is adopted only if
/// it measures a higher certainty.  The snap cures the crawl along the
/// nearly flat maximizer manifold, whose corrugation is exponentially
/// small in d.  Result is the deterministic best over seed-indexed runs.
CertaintyMaximum maximize_certainty(const QuditContext& ctx, const GroundPair& pair,
                                    int seeds, int iterations = 500,
                                    std::uint64_t seed = 42);

/// Convenience overload that solves the ground pair internally.
CertaintyMaximum maximize_certainty(const QuditContext& ctx, int seeds,
                                    int iterations = 500, std::uint64_t seed = 42);

struct ThetaInequalityResult {
    double lhs = 0.0;     // cos(theta)|<Q>| + sin(theta)|<P>|
    double h_theta = 0.0; // top eigenvalue in the theta-weighted normalization
};

/// Checks the theta-parameterized certainty inequality for a state.
/// Equality holds exactly on the translates of the theta ground state
/// (see theta_ground_pair).
ThetaInequalityResult theta_inequality_check(const StateVector& state, double theta,
                                       const QuditContext& ctx);

} // namespace qudit_phase
