#include "qudit_phase/completeness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "qudit_phase/eigensolve.hpp"

namespace qudit_phase {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    Matrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

RealMatrix kron_real(const RealMatrix& a, const RealMatrix& b) {
    const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    RealMatrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

} // namespace

int FourierCoeffTable::centered_lo() const { return d % 2 == 0 ? -d / 2 : -(d - 1) / 2; }

Complex FourierCoeffTable::f_at(long long m, long long n) const {
    return f(periodic_index(m, d), periodic_index(n, d));
}

double FourierCoeffTable::g_at(int m, int n) const {
    const int lo = centered_lo();
    if (m < lo || m > lo + d - 1 || n < lo || n > lo + d - 1)
        throw std::out_of_range("g_at: centered index out of range");
    return g(m - lo, n - lo);
}

FourierCoeffTable coeff_table(const GroundPair& pair, const QuditContext& ctx) {
    const int d = ctx.d;
    if (pair.gamma.size() != d)
        throw std::invalid_argument("coeff_table: ground pair does not match the context");
    FourierCoeffTable table;
    table.d = d;
    table.f.resize(d, d);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
            // f_mn = sum_a Gamma_a omega^{n(a-m)} Gamma_{a-m}
            Complex s = 0.0;
            for (int a = 0; a < d; ++a) {
                const int shifted = periodic_index(a - m, d);
                s += pair.gamma(a) * ctx.omega(static_cast<long long>(n) * shifted) *
                     pair.gamma(shifted);
            }
            table.f(m, n) = s;
        }

    const int lo = table.centered_lo();
    table.g.resize(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const long long m = lo + i, n = lo + j;
            const double angle = kPi * static_cast<double>(m * n) / d;
            const Complex value = Complex(std::cos(angle), std::sin(angle)) * table.f_at(m, n);
            if (std::abs(value.imag()) > 1e-10)
                throw std::runtime_error("g table entry has imaginary part " +
                                         std::to_string(value.imag()));
            table.g(i, j) = value.real();
        }
    return table;
}

std::vector<std::pair<int, int>> zero_set(const FourierCoeffTable& table, double tol) {
    std::vector<std::pair<int, int>> zeros;
    for (int m = 0; m < table.d; ++m)
        for (int n = 0; n < table.d; ++n)
            if (std::abs(table.f(m, n)) < tol) zeros.emplace_back(m, n);
    return zeros;
}

std::vector<std::pair<int, int>> even_zero_pattern(int d) {
    if (d % 2 != 0) return {};
    std::vector<std::pair<int, int>> pattern;
    const int half = d / 2;
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
            const bool zero = (m == half && n == half) || (n == half && m % 2 == 1) ||
                              (m == half && n % 2 == 1);
            if (zero) pattern.emplace_back(m, n);
        }
    return pattern;
}

BlockSpectrumReport block_spectrum_check(const QuditContext& ctx, const GroundPair& pair) {
    const int d = ctx.d;
    if (d > 16)
        throw std::domain_error("block_spectrum_check: d capped at 16 (dense d^2 x d^2)");

    const Matrix identity = Matrix::Identity(d, d);
    const Matrix p_inv = ctx.P.adjoint();
    const Matrix q_inv = ctx.Q.adjoint();

    const Matrix hl = (kron(p_inv, identity) + kron(ctx.P, identity) + kron(ctx.Q, p_inv) +
                       kron(q_inv, ctx.P)) /
                      4.0;
    const Matrix hr = (kron(p_inv, ctx.Q) + kron(ctx.P, q_inv) + kron(identity, p_inv) +
                       kron(identity, ctx.P)) /
                      4.0;

    BlockSpectrumReport report;

    // (i) spectrum of H_L = d-fold replicated spectrum of H
    Eigen::SelfAdjointEigenSolver<Matrix> es(hl, Eigen::EigenvaluesOnly);
    const RealVector block_spectrum = es.eigenvalues();
    const RealMatrix h = build_harper(ctx);
    const EigenDecomposition base = jacobi_eigensolve(h);
    std::vector<double> replicated;
    replicated.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int copy = 0; copy < d; ++copy) replicated.push_back(base.eigenvalues(i));
    std::sort(replicated.begin(), replicated.end());
    double dev = 0.0;
    for (int i = 0; i < d * d; ++i)
        dev = std::max(dev, std::abs(block_spectrum(i) - replicated[static_cast<std::size_t>(i)]));
    report.spectrum_residual = dev;

    // (ii) the f vector is a simultaneous top eigenvector
    const FourierCoeffTable table = coeff_table(pair, ctx);
    Vector f_vec(d * d);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) f_vec(m * d + n) = table.f(m, n);
    f_vec /= f_vec.norm();
    report.left_residual = (hl * f_vec - pair.h * f_vec).cwiseAbs().maxCoeff();
    report.right_residual = (hr * f_vec - pair.h * f_vec).cwiseAbs().maxCoeff();
    report.sum_residual =
        ((hl + hr) * f_vec - 2.0 * pair.h * f_vec).cwiseAbs().maxCoeff();
    return report;
}

namespace {

/// D(sigma) on centered indices: nearest-neighbor couplings plus the
/// sigma-weighted wraparound corners.  The literal double sum keeps the
/// degenerate d = 1 case right, where both corner terms coincide.
RealMatrix wraparound_coupling(int d, double sigma) {
    const int c = (d - 1) / 2;
    RealMatrix out = RealMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const int m = i - c, n = j - c;
            double v = std::abs(m - n) == 1 ? 1.0 : 0.0;
            if (m == c && n == -c) v += sigma;
            if (m == -c && n == c) v += sigma;
            out(i, j) = v;
        }
    return out;
}

} // namespace

SymmetricReductionReport symmetric_reduction_check(const GroundPair& pair,
                                                   const QuditContext& ctx) {
    const int d = ctx.d;
    if (d % 2 == 0)
        throw std::domain_error("symmetric_reduction_check requires odd dimension");
    const int c = (d - 1) / 2;
    const int q = (d + 1) / 2;

    const RealMatrix coupling_even = wraparound_coupling(d, 1.0);
    const RealMatrix coupling_odd = wraparound_coupling(d, -1.0);

    // K on centered storage, index (m + c) * d + (n + c)
    RealMatrix k = RealMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const int m = i - c, n = j - c;
            const RealMatrix& dn = (n % 2 == 0) ? coupling_even : coupling_odd;
            const RealMatrix& dm = (m % 2 == 0) ? coupling_even : coupling_odd;
            for (int ii = 0; ii < d; ++ii) {
                // first term couples m <-> m' at fixed n
                k(i * d + j, ii * d + j) += 0.5 * dn(i, ii) * std::cos(kPi * n / d);
                // second term couples n <-> n' at fixed m
                k(i * d + j, i * d + ii) += 0.5 * std::cos(kPi * m / d) * dm(j, ii);
            }
        }

    // symmetric-sector isometry, |e_a> = (|a> + |-a>)/sqrt(2(1+delta_a0))
    RealMatrix e1 = RealMatrix::Zero(d, q);
    for (int a = 0; a < q; ++a) {
        RealVector col = RealVector::Zero(d);
        col(a + c) += 1.0;
        col(-a + c) += 1.0;
        col /= std::sqrt(2.0 * (1.0 + (a == 0 ? 1.0 : 0.0)));
        e1.col(a) = col;
    }
    const RealMatrix isometry = kron_real(e1, e1);
    const RealMatrix k_s = isometry.transpose() * k * isometry;

    const FourierCoeffTable table = coeff_table(pair, ctx);
    RealVector g_vec(d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g_vec(i * d + j) = table.g(i, j);
    RealVector g_s = isometry.transpose() * g_vec;
    g_s /= g_s.norm();

    SymmetricReductionReport report;
    report.eigen_residual = (k_s * g_s - 2.0 * pair.h * g_s).cwiseAbs().maxCoeff();

    RealMatrix shifted = k_s;
    shifted.diagonal().array() += 1.0;
    RealMatrix power = RealMatrix::Identity(q * q, q * q);
    for (int e = 0; e < d - 1; ++e) power = power * shifted;
    report.min_power_entry = power.minCoeff();

    if (q * q == 1) {
        report.perron_min_component = 1.0;
    } else {
        const PowerIterationResult perron =
            power_iterate_top(k_s, 1.0, RealVector::Ones(q * q), 1e-12);
        RealVector vec = perron.eigenvector;
        if (vec.sum() < 0) vec = -vec;
        report.perron_min_component = vec.minCoeff();
    }

    report.min_g = table.g.minCoeff();
    report.min_abs_f = table.f.cwiseAbs().minCoeff();
    return report;
}

} // namespace qudit_phase
