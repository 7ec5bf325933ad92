#include "qudit_phase/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qudit_phase {

namespace {

double off_diagonal_norm(const RealMatrix& a) {
    const Eigen::Index n = a.rows();
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

} // namespace

EigenDecomposition jacobi_eigensolve(const RealMatrix& a_in, double tol_factor) {
    const Eigen::Index n = a_in.rows();
    if (a_in.cols() != n) throw std::invalid_argument("jacobi_eigensolve: matrix not square");
    if ((a_in - a_in.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a_in.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("jacobi_eigensolve: matrix not symmetric");

    RealMatrix a = a_in;
    RealMatrix v = RealMatrix::Identity(n, n);
    const double threshold = tol_factor * std::max(a.norm(), 1e-300);

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    while (off_diagonal_norm(a) > threshold) {
        if (++sweep > kMaxSweeps)
            throw std::runtime_error("jacobi_eigensolve: no convergence after max sweeps");
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(),
              [&a](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = a(order[k], order[k]);
        out.eigenvectors.col(k) = v.col(order[k]);
    }
    return out;
}

PowerIterationResult power_iterate_top(const RealMatrix& a, double shift,
                                       const RealVector& start, double tol,
                                       std::size_t max_iterations,
                                       const RealVector* deflate) {
    const Eigen::Index n = a.rows();
    if (start.size() != n) throw std::invalid_argument("power_iterate_top: bad start vector");

    RealVector v = start;
    if (deflate) v -= (*deflate) * deflate->dot(v);
    const double nv = v.norm();
    if (nv == 0.0) throw std::invalid_argument("power_iterate_top: zero start vector");
    v /= nv;

    RealMatrix shifted = a;
    shifted.diagonal().array() += shift;

    for (std::size_t it = 1; it <= max_iterations; ++it) {
        RealVector w = shifted * v;
        if (deflate) w -= (*deflate) * deflate->dot(w);
        const double mu = v.dot(w);
        const double residual = (w - mu * v).cwiseAbs().maxCoeff();
        const double wn = w.norm();
        if (wn == 0.0) throw std::runtime_error("power_iterate_top: iterate vanished");
        v = w / wn;
        if (residual < tol) {
            PowerIterationResult out;
            out.eigenvalue = mu - shift;
            out.eigenvector = v;
            out.iterations = it;
            return out;
        }
    }
    throw std::runtime_error("power_iterate_top: no convergence within iteration limit");
}

} // namespace qudit_phase
