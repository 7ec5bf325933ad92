#pragma once

#include <vector>

#include "qudit_phase/context.hpp"
#include "qudit_phase/harper.hpp"
#include "qudit_phase/types.hpp"

namespace qudit_phase {

/// Large-d expression for the greatest eigenvalue: 1 - pi/(2d).
double asymptotic_h(int d);

/// L2-normalized Gaussian exp(-pi a^2 / d) on the centered index range
/// floor(-(d-1)/2) .. floor((d-1)/2); the large-d form of Gamma.
RealVector asymptotic_gamma(int d);

/// View of a [0, d)-indexed vector on the centered range (entry i holds
/// index lo + i, with lo = floor(-(d-1)/2)).
RealVector centered_view(const RealVector& values);

/// Lattice embedding of the continuum limit: lattice constant
/// eps = sigma sqrt(2 pi / d), system size L = eps d, position x = a eps
/// and momentum p = (2 pi / L) b on centered ranges.
struct ContinuumScheme {
    int d = 0;
    double sigma = 1.0;
    double epsilon = 0.0;
    int a_lo = 0, a_hi = 0;
};

ContinuumScheme make_scheme(int d, double sigma);

/// Gaussian wave packet of width `width` (in units of sigma the packet
/// is exp(-x^2 / (2 width^2))); on the lattice the amplitudes are
/// exp(-pi a^2 sigma^2 / (d width^2)).
StateVector gaussian_packet(const ContinuumScheme& scheme, double width);

/// Recurrence form of the eigenvalue equation:
/// max_a |(c_{a+1} + c_{a-1} + 2 cos(2 pi a / d) c_a)/4 - h c_a| with
/// c = Gamma.
double mathieu_residual(const GroundPair& pair, const QuditContext& ctx);

/// Leading-order continuum checks for a position-basis state.
struct ContinuumReport {
    double dx = 0.0, dp = 0.0;
    double q_deviation = 0.0;   // |(1 - |<Q>|) - pi dx^2/(sigma^2 d)|
    double p_deviation = 0.0;   // |(1 - |<P>|) - pi sigma^2 dp^2 / d|
    double sum_lhs = 0.0;       // dx^2/sigma^2 + sigma^2 dp^2
    double expansion_envelope = 0.0;  // 5 d^{-3/2}
    double inequality_envelope = 0.0; // 10 d^{-1/2}

    bool expansions_ok() const;
    bool inequality_ok() const; // sum_lhs >= 1 - envelope
    bool product_ok() const;    // dx dp >= 1/2 - envelope
};

/// Throws std::domain_error when more than 1e-6 of the probability mass
/// sits outside the central half of the lattice (the wrap-around regime
/// where the variance formulas lose meaning).
ContinuumReport continuum_expansion_check(const StateVector& state,
                                          const ContinuumScheme& scheme,
                                          const QuditContext& ctx);

struct HTableRow {
    int d = 0;
    double h_exact = 0.0;
    double h_asym = 0.0;
};

/// Exact (dense solve) vs asymptotic h for d in [d_min, d_max].
std::vector<HTableRow> h_comparison_table(int d_min, int d_max);

struct GammaTableRow {
    int a = 0;
    double exact = 0.0;
    double asym = 0.0;
};

/// Exact vs Gaussian ground-state components on centered indices.
std::vector<GammaTableRow> gamma_comparison_table(int d);

} // namespace qudit_phase
