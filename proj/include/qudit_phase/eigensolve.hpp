#pragma once

#include <cstddef>

#include "qudit_phase/types.hpp"

namespace qudit_phase {

/// Full spectrum of a real symmetric matrix, eigenvalues ascending,
/// eigenvectors in the matching columns.
struct EigenDecomposition {
    RealVector eigenvalues;
    RealMatrix eigenvectors;
};

/// Cyclic Jacobi rotations.  Sweeps until the off-diagonal Frobenius
/// norm drops below tol_factor times the matrix Frobenius norm.
EigenDecomposition jacobi_eigensolve(const RealMatrix& a, double tol_factor = 1e-14);

struct PowerIterationResult {
    double eigenvalue = 0.0; // of the shifted matrix, shift already removed
    RealVector eigenvector;
    std::size_t iterations = 0;
};

/// Power iteration on a + shift*I from start, until the residual
/// ||(a+shift)v - mu v||_inf < tol.  If deflate is non-null the iterate is
/// re-orthogonalized against it each step (used for the second eigenvalue).
/// Throws std::runtime_error when max_iterations is exhausted.
PowerIterationResult power_iterate_top(const RealMatrix& a, double shift,
                                       const RealVector& start, double tol,
                                       std::size_t max_iterations = 1000000,
                                       const RealVector* deflate = nullptr);

} // namespace qudit_phase
