#include "qudit_phase/min_uncertainty.hpp"

#include <cmath>
#include <stdexcept>

#include "qudit_phase/random.hpp"

namespace qudit_phase {

namespace {

constexpr double kZeroFactor = 1e-14;

double pure_certainty(const Vector& psi, const QuditContext& ctx) {
    return std::abs(expectation(ctx.Q, psi) * expectation(ctx.P, psi));
}

} // namespace

double certainty(const StateVector& state, const QuditContext& ctx) {
    validate_state(state);
    if (state.amplitudes.size() != ctx.d)
        throw std::invalid_argument("certainty: dimension mismatch");
    // position coefficients of the same physical state: c = F c~
    const Vector pos = state.basis == Basis::momentum ? Vector(ctx.F * state.amplitudes)
                                                      : state.amplitudes;
    return pure_certainty(pos, ctx);
}

double certainty(const DensityMatrix& rho, const QuditContext& ctx) {
    validate_density(rho);
    if (rho.rho.rows() != ctx.d)
        throw std::invalid_argument("certainty: dimension mismatch");
    return std::abs(expectation(ctx.Q, rho) * expectation(ctx.P, rho));
}

MinUncertaintyState min_uncertainty_state(int alpha, int beta, const GroundPair& pair,
                                          const QuditContext& ctx) {
    if (alpha < 0 || alpha >= ctx.d || beta < 0 || beta >= ctx.d)
        throw std::invalid_argument("min_uncertainty_state: labels must lie in [0, d)");
    if (pair.gamma.size() != ctx.d)
        throw std::invalid_argument("min_uncertainty_state: ground pair does not match the context");
    MinUncertaintyState out;
    out.alpha = alpha;
    out.beta = beta;
    out.amplitudes = translate_state(alpha, beta, pair.gamma.cast<Complex>(), ctx);
    return out;
}

double resolution_of_identity_residual(const GroundPair& pair, const QuditContext& ctx) {
    const int d = ctx.d;
    if (pair.gamma.size() != d)
        throw std::invalid_argument("resolution_of_identity_residual: dimension mismatch");
    Matrix sum = Matrix::Zero(d, d);
    for (int alpha = 0; alpha < d; ++alpha)
        for (int beta = 0; beta < d; ++beta) {
            const Vector v = translate_state(alpha, beta, pair.gamma.cast<Complex>(), ctx);
            sum += v * v.adjoint();
        }
    sum /= static_cast<double>(d);
    sum -= Matrix::Identity(d, d);
    return sum.cwiseAbs().maxCoeff();
}

StateVector modulus_lift(const StateVector& state, Basis lift_basis, const QuditContext& ctx) {
    StateVector working = state.basis == lift_basis ? state : dft(state, ctx);
    StateVector out;
    out.basis = lift_basis;
    out.amplitudes = working.amplitudes.cwiseAbs().cast<Complex>();
    return out;
}

namespace {

struct AscentResult {
    Vector state;
    double log_c = -1e300;
};

AscentResult gradient_ascent(Vector phi, int iterations, const QuditContext& ctx) {
    const Matrix& q_op = ctx.Q;
    const Matrix& p_op = ctx.P;
    const Matrix q_dag = ctx.Q.adjoint();
    const Matrix p_dag = ctx.P.adjoint();

    double step = 0.1;
    for (int it = 0; it < iterations; ++it) {
        const Complex q = expectation(q_op, phi);
        const Complex p = expectation(p_op, phi);
        const double aq = std::abs(q), ap = std::abs(p);
        if (aq < kZeroFactor || ap < kZeroFactor) break;

        Vector grad = (std::conj(q) * (q_op * phi) + q * (q_dag * phi)) / (aq * aq) +
                      (std::conj(p) * (p_op * phi) + p * (p_dag * phi)) / (ap * ap);
        grad -= phi * phi.dot(grad);
        if (grad.norm() < 1e-13) break;

        const double f0 = std::log(aq) + std::log(ap);
        bool improved = false;
        while (step > 1e-18) {
            Vector cand = phi + step * grad;
            cand /= cand.norm();
            const double aq2 = std::abs(expectation(q_op, cand));
            const double ap2 = std::abs(expectation(p_op, cand));
            if (aq2 > 0.0 && ap2 > 0.0 && std::log(aq2) + std::log(ap2) > f0) {
                phi = std::move(cand);
                step *= 1.5;
                improved = true;
                break;
            }
            step /= 2.0;
        }
        if (!improved) break;
    }

    AscentResult out;
    const double aq = std::abs(expectation(q_op, phi));
    const double ap = std::abs(expectation(p_op, phi));
    out.log_c = (aq > 0 && ap > 0) ? std::log(aq) + std::log(ap) : -1e300;
    out.state = std::move(phi);
    return out;
}

} // namespace

CertaintyMaximum maximize_certainty(const QuditContext& ctx, const GroundPair& pair,
                                    int seeds, int iterations, std::uint64_t seed) {
    if (seeds < 1) throw std::invalid_argument("maximize_certainty: seeds must be >= 1");
    const int d = ctx.d;

    CertaintyMaximum best;
    best.value = -1.0;

    for (int s = 0; s < seeds; ++s) {
        const std::uint64_t run_seed = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(s + 1);
        Rng rng(run_seed);
        AscentResult result = gradient_ascent(rng.haar_state(d), iterations, ctx);
        Vector phi = result.state;
        double value = pure_certainty(phi, ctx);

        const Complex q = expectation(ctx.Q, phi);
        const Complex p = expectation(ctx.P, phi);
        if (std::abs(q) > kZeroFactor && std::abs(p) > kZeroFactor) {
            const double lattice = 2.0 * kPi / d;
            const int alpha = periodic_index(std::llround(std::arg(q) / lattice), d);
            const int beta = periodic_index(std::llround(-std::arg(p) / lattice), d);
            const Vector cand = translate_state(alpha, beta, pair.gamma.cast<Complex>(), ctx);
            const double cand_value = pure_certainty(cand, ctx);
            if (cand_value > value) {
                phi = cand;
                value = cand_value;
            }
        }

        if (value > best.value) {
            best.value = value;
            best.state = phi;
            best.best_seed = run_seed;
            best.iterations = static_cast<std::size_t>(iterations);
        }
    }

    // closest minimum-uncertainty state; ties broken lexicographically by (alpha, beta)
    best.fidelity = -1.0;
    for (int alpha = 0; alpha < d; ++alpha)
        for (int beta = 0; beta < d; ++beta) {
            const Vector v = translate_state(alpha, beta, pair.gamma.cast<Complex>(), ctx);
            const double fid = std::norm(v.dot(best.state));
            if (fid > best.fidelity) {
                best.fidelity = fid;
                best.matched_alpha = alpha;
                best.matched_beta = beta;
            }
        }
    return best;
}

CertaintyMaximum maximize_certainty(const QuditContext& ctx, int seeds, int iterations,
                                    std::uint64_t seed) {
    const GroundPair pair = ground_pair_dense(build_harper(ctx));
    return maximize_certainty(ctx, pair, seeds, iterations, seed);
}

ThetaInequalityResult theta_inequality_check(const StateVector& state, double theta,
                                       const QuditContext& ctx) {
    validate_state(state);
    const Vector pos = state.basis == Basis::momentum ? Vector(ctx.F * state.amplitudes)
                                                      : state.amplitudes;
    ThetaInequalityResult out;
    const double aq = std::abs(expectation(ctx.Q, pos));
    const double ap = std::abs(expectation(ctx.P, pos));
    out.lhs = std::cos(theta) * aq + std::sin(theta) * ap;
    out.h_theta = theta_top_eigenvalue(ctx, theta);
    return out;
}

} // namespace qudit_phase
