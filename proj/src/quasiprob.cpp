#include "qudit_phase/quasiprob.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qudit_phase/completeness.hpp"
#include "qudit_phase/parallel.hpp"

namespace qudit_phase {

PhasePointSet phase_points(PhasePointKind kind, const GroundPair& pair,
                           const QuditContext& ctx) {
    const int d = ctx.d;
    if (pair.gamma.size() != d)
        throw std::invalid_argument("phase_points: ground pair does not match the context");
    if (kind == PhasePointKind::wigner && d % 2 == 0)
        throw std::domain_error("wigner phase point operators require odd dimension");

    Matrix origin;
    if (kind == PhasePointKind::husimi) {
        const Vector gamma = pair.gamma.cast<Complex>();
        origin = (gamma * gamma.adjoint()) / static_cast<double>(d);
    } else {
        origin = ctx.T / static_cast<double>(d);
    }

    PhasePointSet pps;
    pps.kind = kind;
    pps.d = d;
    pps.operators.resize(static_cast<std::size_t>(d) * d);
    parallel_for(d * d, [&](int cell) {
        const int alpha = cell / d;
        const int beta = cell % d;
        pps.operators[cell] = phase_space_translate(origin, alpha, beta, ctx);
    });
    return pps;
}

QuasiDistribution quasi_distribution(const DensityMatrix& rho, const PhasePointSet& pps) {
    validate_density(rho);
    const int d = pps.d;
    if (rho.rho.rows() != d)
        throw std::invalid_argument("quasi_distribution: dimension mismatch");

    QuasiDistribution dist;
    dist.kind = pps.kind;
    dist.d = d;
    dist.values.resize(d, d);
    parallel_for(d * d, [&](int cell) {
        const int alpha = cell / d;
        const int beta = cell % d;
        const Complex v = (rho.rho * pps.at(alpha, beta)).trace();
        if (std::abs(v.imag()) > 1e-12)
            throw std::runtime_error("quasi distribution value has imaginary part " +
                                     std::to_string(v.imag()));
        dist.values(alpha, beta) = v.real();
    });

    if (pps.kind == PhasePointKind::husimi && dist.values.minCoeff() < -1e-12)
        throw std::runtime_error("husimi distribution came out negative");
    if (std::abs(dist.values.sum() - 1.0) > 1e-10)
        throw std::runtime_error("quasi distribution does not sum to 1");
    return dist;
}

RealVector marginal(const QuasiDistribution& dist, MarginalAxis axis) {
    if (axis == MarginalAxis::position) return dist.values.rowwise().sum();
    return dist.values.colwise().sum().transpose();
}

RealMatrix convolution_weights(const GroundPair& pair, const QuditContext& ctx) {
    const int d = ctx.d;
    if (d % 2 == 0)
        throw std::domain_error("convolution weights require odd dimension");
    const PhasePointSet wigner = phase_points(PhasePointKind::wigner, pair, ctx);
    const Vector gamma = pair.gamma.cast<Complex>();
    RealMatrix w(d, d);
    for (int alpha = 0; alpha < d; ++alpha)
        for (int beta = 0; beta < d; ++beta) {
            const Complex v = gamma.dot(wigner.at(alpha, beta) * gamma);
            if (std::abs(v.imag()) > 1e-12)
                throw std::runtime_error("convolution weight has imaginary part");
            w(alpha, beta) = v.real();
        }
    return w;
}

namespace {

Sharpness sharpness_of_kernel(const Matrix& kernel, const QuditContext& ctx) {
    Sharpness s;
    s.sigma = std::abs((kernel * ctx.Q).trace());
    s.tau = std::abs((kernel * ctx.P).trace());
    return s;
}

} // namespace

Sharpness sharpness(const PhasePointSet& pps, const QuditContext& ctx) {
    const int d = pps.d;
    if (d != ctx.d) throw std::invalid_argument("sharpness: grid does not match the context");
    double sigma_min = 1e300, sigma_max = -1e300;
    double tau_min = 1e300, tau_max = -1e300;
    double sigma0 = 0.0, tau0 = 0.0;
    for (int alpha = 0; alpha < d; ++alpha) {
        Matrix row_sum = Matrix::Zero(d, d);
        for (int beta = 0; beta < d; ++beta) row_sum += pps.at(alpha, beta);
        const double s = std::abs((row_sum * ctx.Q).trace());
        if (alpha == 0) sigma0 = s;
        sigma_min = std::min(sigma_min, s);
        sigma_max = std::max(sigma_max, s);
    }
    for (int beta = 0; beta < d; ++beta) {
        Matrix col_sum = Matrix::Zero(d, d);
        for (int alpha = 0; alpha < d; ++alpha) col_sum += pps.at(alpha, beta);
        const double t = std::abs((col_sum * ctx.P).trace());
        if (beta == 0) tau0 = t;
        tau_min = std::min(tau_min, t);
        tau_max = std::max(tau_max, t);
    }
    if (sigma_max - sigma_min > 1e-8 || tau_max - tau_min > 1e-8)
        throw std::invalid_argument("sharpness: grid is not translation covariant");
    return Sharpness{sigma0, tau0};
}

Sharpness sharpness(const DensityMatrix& kernel, const QuditContext& ctx) {
    validate_density(kernel);
    return sharpness_of_kernel(kernel.rho, ctx);
}

double optimality_gap(const DensityMatrix& kernel, const GroundPair& pair,
                      const QuditContext& ctx) {
    const Sharpness s = sharpness(kernel, ctx);
    return pair.h * pair.h - s.sigma * s.tau;
}

double verify_weyl_identity(const Matrix& omega_op, int m, int n, const QuditContext& ctx) {
    const int d = ctx.d;
    Matrix lhs = Matrix::Zero(d, d);
    for (int alpha = 0; alpha < d; ++alpha)
        for (int beta = 0; beta < d; ++beta)
            lhs += ctx.omega(static_cast<long long>(alpha) * n -
                             static_cast<long long>(beta) * m) *
                   phase_space_translate(omega_op, alpha, beta, ctx);

    // P^m Q^n entrywise: (P^m Q^n)_{x,y} = omega^{n y} [x = y + m]
    Matrix pq = Matrix::Zero(d, d);
    for (int y = 0; y < d; ++y)
        pq(periodic_index(y + m, d), y) = ctx.omega(static_cast<long long>(n) * y);
    // tr[Q^{-n} P^{-m} M] = sum_y omega^{-n (y - m)} M_{y, (y - m) mod d}
    Complex tr = 0.0;
    for (int y = 0; y < d; ++y)
        tr += ctx.omega(-static_cast<long long>(n) * periodic_index(y - m, d)) *
              omega_op(y, periodic_index(y - m, d));
    const Matrix rhs = static_cast<double>(d) * tr * pq;
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

DensityMatrix reconstruct_state(const QuasiDistribution& dist, const GroundPair& pair,
                                const QuditContext& ctx) {
    const int d = ctx.d;
    if (d % 2 == 0)
        throw std::domain_error(
            "reconstruction requires odd dimension: the phase point operators are not "
            "complete for even d");
    if (dist.kind != PhasePointKind::husimi)
        throw std::invalid_argument("reconstruct_state expects a husimi distribution");
    if (dist.d != d) throw std::invalid_argument("reconstruct_state: dimension mismatch");

    const FourierCoeffTable table = coeff_table(pair, ctx);
    const double min_f = table.f.cwiseAbs().minCoeff();
    if (min_f < 1e-12)
        throw std::runtime_error("reconstruction is singular: min |f_mn| = " +
                                 std::to_string(min_f));

    // Dt(m,n) = (1/d) sum_{a,b} omega^{a n - b m} D(a,b) = (1/d) f*_mn tr[rho P^m Q^n]
    Matrix moments(d, d);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
            Complex s = 0.0;
            for (int alpha = 0; alpha < d; ++alpha)
                for (int beta = 0; beta < d; ++beta)
                    s += ctx.omega(static_cast<long long>(alpha) * n -
                                   static_cast<long long>(beta) * m) *
                         dist.values(alpha, beta);
            moments(m, n) = s / std::conj(table.f(m, n));
        }

    // rho = sum_{m,n} (omega^{mn}/d) tr[rho P^{-m} Q^{-n}] P^m Q^n
    Matrix rho = Matrix::Zero(d, d);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
            const Complex coeff = ctx.omega(static_cast<long long>(m) * n) *
                                  moments(periodic_index(-m, d), periodic_index(-n, d)) /
                                  static_cast<double>(d);
            for (int y = 0; y < d; ++y)
                rho(periodic_index(y + m, d), y) +=
                    coeff * ctx.omega(static_cast<long long>(n) * y);
        }

    DensityMatrix out;
    out.rho = (rho + rho.adjoint()) / 2.0;
    out.rho /= out.rho.trace().real();
    return out;
}

} // namespace qudit_phase
