#pragma once

#include <vector>

#include "qudit_phase/context.hpp"
#include "qudit_phase/harper.hpp"
#include "qudit_phase/types.hpp"

namespace qudit_phase {

enum class PhasePointKind { husimi, wigner };

/// Grid of phase point operators.
///
/// husimi: Delta(a,b) = (1/d)|a,b><a,b| — rank one, positive
/// semidefinite, trace 1/d.  wigner (odd d only): Delta_W(a,b) =
/// (1/d) P^a Q^b T Q^{-b} P^{-a} — Hermitian, trace 1/d, sharp
/// marginals.  Both grids sum to the identity and are covariant under
/// phase-space translations and, as a grid, under F.
struct PhasePointSet {
    PhasePointKind kind = PhasePointKind::husimi;
    int d = 0;
    std::vector<Matrix> operators; // row-major, index alpha*d + beta

    const Matrix& at(int alpha, int beta) const { return operators[alpha * d + beta]; }
};

PhasePointSet phase_points(PhasePointKind kind, const GroundPair& pair, const QuditContext& ctx);

/// D(alpha,beta) = tr[rho Delta(alpha,beta)].  Husimi values are
/// non-negative; both kinds sum to 1.
struct QuasiDistribution {
    PhasePointKind kind = PhasePointKind::husimi;
    int d = 0;
    RealMatrix values; // (alpha, beta)
};

QuasiDistribution quasi_distribution(const DensityMatrix& rho, const PhasePointSet& pps);

enum class MarginalAxis { position, momentum };

/// Sum over beta (position axis) or alpha (momentum axis).
RealVector marginal(const QuasiDistribution& dist, MarginalAxis axis);

/// w(alpha,beta) = <Gamma|Delta_W(alpha,beta)|Gamma>; the husimi grid is
/// the cyclic convolution of w with the wigner grid.  Odd d only.
RealMatrix convolution_weights(const GroundPair& pair, const QuditContext& ctx);

struct Sharpness {
    double sigma = 0.0;
    double tau = 0.0;
};

/// Marginal sharpness of a translation-covariant grid: sigma from the
/// Q-weighted row sums, tau from the P-weighted column sums.  Throws if
/// the per-row/column values spread by more than 1e-8 (non-covariant
/// input).
Sharpness sharpness(const PhasePointSet& pps, const QuditContext& ctx);

/// Sharpness of the covariant family generated by a kernel K (a state):
/// sigma = |tr K Q|, tau = |tr K P|.
Sharpness sharpness(const DensityMatrix& kernel, const QuditContext& ctx);

/// h^2 - sigma*tau for a kernel; non-negative, zero exactly on the
/// minimum-uncertainty projectors.
double optimality_gap(const DensityMatrix& kernel, const GroundPair& pair,
                      const QuditContext& ctx);

/// Max-abs residual of
/// sum_{a,b} omega^{a n - b m} P^a Q^b M Q^{-b} P^{-a}
///   = d tr[Q^{-n} P^{-m} M] P^m Q^n
/// for the given (m, n) — the twirl identity behind completeness.
double verify_weyl_identity(const Matrix& omega_op, int m, int n, const QuditContext& ctx);

/// Inverts a husimi distribution on odd d: divides the 2-D Fourier
/// transform of D by the ground-state coefficients <Gamma|P^mQ^n|Gamma>*
/// and resums against the P^m Q^n basis; the output is Hermitized and
/// trace-normalized.  Throws for even d (the phase point operators are
/// incomplete), for wigner input, and when any |f_mn| < 1e-12.
DensityMatrix reconstruct_state(const QuasiDistribution& dist, const GroundPair& pair,
                                const QuditContext& ctx);

} // namespace qudit_phase
