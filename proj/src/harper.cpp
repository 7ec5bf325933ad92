#include "qudit_phase/harper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qudit_phase/eigensolve.hpp"

namespace qudit_phase {

namespace {

void check_theta(double theta) {
    if (!(theta > 0.0) || !(theta < kPi / 2))
        throw std::invalid_argument("theta must lie strictly between 0 and pi/2");
}

bool is_quarter_pi(double theta) { return std::abs(theta - kPi / 4) <= 1e-12; }

/// Re-converges the tail of a top eigenvector with iterations of
/// H + I.  Every update is a sum of non-negative products, so the
/// result is strictly positive down to the underflow threshold and the
/// exponentially small components come out with full relative accuracy.
RealVector positivity_polish(const RealMatrix& h, const RealVector& v0) {
    const Eigen::Index n = h.rows();
    RealVector v = v0.cwiseMax(0.0);
    if (v.maxCoeff() <= 0.0) v = RealVector::Ones(n);
    v /= v.norm();
    RealMatrix shifted = h;
    shifted.diagonal().array() += 1.0;
    const int iterations = std::max<int>(2 * static_cast<int>(n), 128);
    for (int k = 0; k < iterations; ++k) {
        v = shifted * v;
        v /= v.norm();
    }
    return v;
}

void check_positivity(const RealVector& gamma) {
    const Eigen::Index d = gamma.size();
    const double floor = d <= 32 ? 1e-10 : 0.0;
    const double mn = gamma.minCoeff();
    if (!(mn > floor))
        throw std::runtime_error(
            "top eigenvector violates Perron positivity (min component " +
            std::to_string(mn) + "); numerics bug or dimension beyond double range");
}

GroundPair make_pair(const RealMatrix& h_mat, double h, RealVector gamma, double gap,
                     double theta) {
    gamma = positivity_polish(h_mat, gamma);
    check_positivity(gamma);
    const double residual = (h_mat * gamma - h * gamma).cwiseAbs().maxCoeff();
    if (residual > 1e-10)
        throw std::runtime_error("ground pair residual too large: " + std::to_string(residual));
    GroundPair pair;
    pair.h = h;
    pair.gamma = std::move(gamma);
    pair.gap = gap;
    pair.theta = theta;
    return pair;
}

} // namespace

RealMatrix build_harper(const QuditContext& ctx, double theta) {
    check_theta(theta);
    const int d = ctx.d;
    RealMatrix h = RealMatrix::Zero(d, d);
    const double shift_weight = is_quarter_pi(theta) ? 0.25 : 0.5 * std::cos(theta);
    const double clock_weight = is_quarter_pi(theta) ? 0.25 : 0.5 * std::sin(theta);
    for (int a = 0; a < d; ++a) {
        h(a, a) += 2.0 * clock_weight * std::cos(2.0 * kPi * a / d);
        const int up = periodic_index(a + 1, d);
        h(up, a) += shift_weight;
        h(a, up) += shift_weight;
    }
    return h;
}

GroundPair ground_pair_dense(const RealMatrix& h, double theta) {
    const Eigen::Index d = h.rows();
    EigenDecomposition eig = jacobi_eigensolve(h);
    const double top = eig.eigenvalues(d - 1);
    double gap = std::numeric_limits<double>::infinity();
    if (d > 1) {
        gap = top - eig.eigenvalues(d - 2);
        if (gap <= 1e-12)
            throw std::domain_error("greatest eigenvalue is degenerate (gap <= 1e-12)");
    }
    RealVector gamma = eig.eigenvectors.col(d - 1);
    Eigen::Index imax = 0;
    gamma.cwiseAbs().maxCoeff(&imax);
    if (gamma(imax) < 0.0) gamma = -gamma;
    return make_pair(h, top, std::move(gamma), gap, theta);
}

PowerSolveResult ground_pair_power(const RealMatrix& h, double kappa, double tol,
                                   double theta) {
    if (kappa < 1.0)
        throw std::invalid_argument("ground_pair_power: kappa must be >= 1");
    const Eigen::Index d = h.rows();
    const RealVector ones = RealVector::Ones(d);
    PowerIterationResult top = power_iterate_top(h, kappa, ones, tol);

    double gap = std::numeric_limits<double>::infinity();
    if (d > 1) {
        // Second eigenvalue from a deflated run; looser tolerance is fine
        // since it only feeds the gap estimate.  The ramp start is not
        // reflection-symmetric, so it overlaps the antisymmetric sector
        // where the second eigenvector lives.
        RealVector start(d);
        for (Eigen::Index a = 0; a < d; ++a)
            start(a) = 1.0 + static_cast<double>(a) / static_cast<double>(d + 1);
        PowerIterationResult second =
            power_iterate_top(h, kappa, start, std::max(tol, 1e-11), 1000000, &top.eigenvector);
        gap = top.eigenvalue - second.eigenvalue;
        if (gap <= 1e-12)
            throw std::domain_error("greatest eigenvalue is degenerate (gap <= 1e-12)");
    }

    RealVector gamma = top.eigenvector;
    if (gamma.sum() < 0.0) gamma = -gamma;
    PowerSolveResult out;
    out.pair = make_pair(h, top.eigenvalue, std::move(gamma), gap, theta);
    out.iterations = top.iterations;
    return out;
}

double SymmetryReport::max_residual() const {
    return std::max({fourier_residual, reflection_residual, expectation_residual});
}

SymmetryReport verify_gamma_symmetries(const GroundPair& pair, const QuditContext& ctx) {
    if (pair.gamma.size() != ctx.d)
        throw std::invalid_argument("verify_gamma_symmetries: dimension mismatch");
    const Vector gamma = pair.gamma.cast<Complex>();
    SymmetryReport report;
    report.fourier_residual = (ctx.F * gamma - gamma).norm();
    report.reflection_residual = (ctx.T * gamma - gamma).norm();
    double dev = 0.0;
    for (const Matrix& op : {ctx.Q, Matrix(ctx.Q.adjoint()), ctx.P, Matrix(ctx.P.adjoint())})
        dev = std::max(dev, std::abs(expectation(op, gamma) - Complex(pair.h)));
    report.expectation_residual = dev;
    return report;
}

GroundPair theta_ground_pair(const QuditContext& ctx, double theta) {
    check_theta(theta);
    const int d = ctx.d;
    RealMatrix m = RealMatrix::Zero(d, d);
    const double clock_weight = 0.5 * std::cos(theta);
    const double shift_weight = 0.5 * std::sin(theta);
    for (int a = 0; a < d; ++a) {
        m(a, a) += 2.0 * clock_weight * std::cos(2.0 * kPi * a / d);
        const int up = periodic_index(a + 1, d);
        m(up, a) += shift_weight;
        m(a, up) += shift_weight;
    }
    return ground_pair_dense(m, theta);
}

double theta_top_eigenvalue(const QuditContext& ctx, double theta) {
    return theta_ground_pair(ctx, theta).h;
}

} // namespace qudit_phase
