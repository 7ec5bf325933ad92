#include "qudit_phase/context.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qudit_phase {

int periodic_index(long long i, int d) {
    long long r = i % d;
    if (r < 0) r += d;
    return static_cast<int>(r);
}

QuditContext build_context(int d) {
    if (d < 1) throw std::invalid_argument("build_context: dimension must be >= 1");

    QuditContext ctx;
    ctx.d = d;
    ctx.omega_powers.resize(d);
    for (int k = 0; k < d; ++k) {
        const double angle = 2.0 * kPi * k / d;
        ctx.omega_powers[k] = Complex(std::cos(angle), std::sin(angle));
    }

    ctx.Q = Matrix::Zero(d, d);
    ctx.P = Matrix::Zero(d, d);
    ctx.F = Matrix::Zero(d, d);
    ctx.T = Matrix::Zero(d, d);
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    for (int a = 0; a < d; ++a) {
        ctx.Q(a, a) = ctx.omega_powers[a];
        ctx.P(periodic_index(a + 1, d), a) = 1.0;
        ctx.T(periodic_index(-a, d), a) = 1.0;
        for (int b = 0; b < d; ++b)
            ctx.F(a, b) = ctx.omega_powers[periodic_index(static_cast<long long>(a) * b, d)] * inv_sqrt_d;
    }
    return ctx;
}

void validate_state(const StateVector& state, double tol) {
    const double n2 = state.amplitudes.squaredNorm();
    if (std::abs(n2 - 1.0) > tol)
        throw std::invalid_argument("state not normalized: |norm^2 - 1| = " +
                                    std::to_string(std::abs(n2 - 1.0)));
}

StateVector dft(const StateVector& state, const QuditContext& ctx) {
    if (state.amplitudes.size() != ctx.d)
        throw std::invalid_argument("dft: state length does not match context dimension");
    StateVector out;
    out.amplitudes = ctx.F.adjoint() * state.amplitudes;
    out.basis = state.basis == Basis::position ? Basis::momentum : Basis::position;
    return out;
}

DensityMatrix pure_density(const Vector& amplitudes) {
    DensityMatrix rho;
    rho.rho = amplitudes * amplitudes.adjoint();
    return rho;
}

void validate_density(const DensityMatrix& rho, double hermitian_tol, double trace_tol,
                      double psd_tol) {
    const Matrix& r = rho.rho;
    if (r.rows() != r.cols()) throw std::invalid_argument("density matrix not square");
    const double herm = (r - r.adjoint()).cwiseAbs().maxCoeff();
    if (herm > hermitian_tol)
        throw std::invalid_argument("density matrix not Hermitian: residual " + std::to_string(herm));
    const Complex tr = r.trace();
    if (std::abs(tr - 1.0) > trace_tol)
        throw std::invalid_argument("density matrix trace != 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(r, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw std::invalid_argument("density matrix has eigenvalue below -tolerance");
}

Complex expectation(const Matrix& op, const Vector& psi) {
    return psi.dot(op * psi); // Eigen's dot conjugates the left argument
}

Complex expectation(const Matrix& op, const DensityMatrix& rho) {
    return (rho.rho * op).trace();
}

Vector translate_state(int a, int b, const Vector& psi, const QuditContext& ctx) {
    const int d = ctx.d;
    Vector out(d);
    for (int x = 0; x < d; ++x) {
        const int src = periodic_index(x - a, d);
        out(x) = ctx.omega(static_cast<long long>(b) * src) * psi(src);
    }
    return out;
}

Matrix phase_space_translate(const Matrix& m, int a, int b, const QuditContext& ctx) {
    const int d = ctx.d;
    Matrix out(d, d);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            out(x, y) = ctx.omega(static_cast<long long>(b) * (x - y)) *
                        m(periodic_index(x - a, d), periodic_index(y - a, d));
    return out;
}

} // namespace qudit_phase
