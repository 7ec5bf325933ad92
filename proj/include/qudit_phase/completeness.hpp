#pragma once

#include <utility>
#include <vector>

#include "qudit_phase/context.hpp"
#include "qudit_phase/harper.hpp"
#include "qudit_phase/types.hpp"

namespace qudit_phase {

/// Ground-state Fourier coefficients.
///
/// f(m,n) = <Gamma|P^m Q^n|Gamma> on indices in [0, d); the phase point
/// operators are complete exactly when all f(m,n) are nonzero, which
/// holds iff d is odd.  g is the dephased real table
/// g_mn = exp(i pi m n / d) f_mn on centered representatives; for odd d
/// all g_mn are strictly positive.
struct FourierCoeffTable {
    int d = 0;
    Matrix f;     // [0, d) x [0, d)
    RealMatrix g; // centered indices, storage (m - lo, n - lo)

    /// Smallest centered index: -(d/2) for even d, -(d-1)/2 for odd.
    int centered_lo() const;
    Complex f_at(long long m, long long n) const; // periodic lookup
    double g_at(int m, int n) const;              // centered lookup
};

FourierCoeffTable coeff_table(const GroundPair& pair, const QuditContext& ctx);

/// Indices (m, n) in [0, d) with |f| below tol, row-major order.
/// At the default tolerance this reproduces the even-d vanishing pattern
/// up to d = 24 and is empty for odd d up to 21; beyond that, genuinely
/// nonzero corner coefficients fall below any fixed detector (the exact
/// values decay like exp(-c d)).
std::vector<std::pair<int, int>> zero_set(const FourierCoeffTable& table, double tol = 1e-10);

/// The analytic even-d vanishing pattern:
/// {(d/2, d/2)} u {(m, d/2): m odd} u {(d/2, n): n odd}.
std::vector<std::pair<int, int>> even_zero_pattern(int d);

/// Residuals of the tensor-space block structure on C^d (x) C^d:
/// spectrum(H_L) is the d-fold replicated spectrum of H, and the
/// f-vector is a simultaneous top eigenvector of H_L and H_R.
struct BlockSpectrumReport {
    double spectrum_residual = 0.0; // sorted spectra, max-abs difference
    double left_residual = 0.0;     // ||H_L f - h f||_inf,  f normalized
    double right_residual = 0.0;
    double sum_residual = 0.0;      // ||(H_L + H_R) f - 2h f||_inf
};

/// Dense d^2 x d^2 construction; capped at d <= 16.
BlockSpectrumReport block_spectrum_check(const QuditContext& ctx, const GroundPair& pair);

/// Residuals of the reflection-symmetric reduction for odd d: the
/// dephased operator K restricted to the symmetric sector has g as a
/// Perron eigenvector with eigenvalue 2h, and (K_S + 1)^(d-1) is
/// elementwise strictly positive, which forces g > 0.
struct SymmetricReductionReport {
    double eigen_residual = 0.0;       // ||K_S g_S - 2h g_S||_inf, g_S normalized
    double min_power_entry = 0.0;      // min entry of (K_S + 1)^(d-1)
    double perron_min_component = 0.0; // min component of the Perron vector of K_S + 1
    double min_g = 0.0;
    double min_abs_f = 0.0;
};

SymmetricReductionReport symmetric_reduction_check(const GroundPair& pair,
                                                   const QuditContext& ctx);

} // namespace qudit_phase
