#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qudit_phase/min_uncertainty.hpp"
#include "qudit_phase/quasiprob.hpp"
#include "qudit_phase/random.hpp"
#include "test_helpers.hpp"

using namespace qudit_phase;
using test_helpers::max_abs;

namespace {

struct Fixture {
    QuditContext ctx;
    GroundPair pair;
    explicit Fixture(int d) : ctx(build_context(d)), pair(ground_pair_dense(build_harper(ctx))) {}
};

} // namespace

TEST_SUITE("quasiprob") {

TEST_CASE("husimi operators: origin, trace, rank, grid sum") {
    Fixture f(5);
    const PhasePointSet pps = phase_points(PhasePointKind::husimi, f.pair, f.ctx);

    const Vector gamma = f.pair.gamma.cast<Complex>();
    CHECK(max_abs(Matrix(pps.at(0, 0) - gamma * gamma.adjoint() / 5.0)) < 1e-14);

    Matrix sum = Matrix::Zero(5, 5);
    for (const Matrix& op : pps.operators) {
        sum += op;
        CHECK(std::abs(op.trace() - Complex(0.2)) < 1e-12);
        Eigen::SelfAdjointEigenSolver<Matrix> es(op, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() > -1e-12);          // positive semidefinite
        CHECK(std::abs(es.eigenvalues().maxCoeff() - 0.2) < 1e-12); // rank one
    }
    CHECK(max_abs(Matrix(sum - Matrix::Identity(5, 5))) < 1e-10);
}

TEST_CASE("husimi origin for the qubit") {
    Fixture f(2);
    const PhasePointSet pps = phase_points(PhasePointKind::husimi, f.pair, f.ctx);
    const Vector gamma = f.pair.gamma.cast<Complex>();
    CHECK(max_abs(Matrix(pps.at(0, 0) - gamma * gamma.adjoint() / 2.0)) < 1e-14);
}

TEST_CASE("wigner operators: hermiticity, trace, sharp row sums") {
    Fixture f(3);
    const PhasePointSet pps = phase_points(PhasePointKind::wigner, f.pair, f.ctx);
    for (const Matrix& op : pps.operators) {
        CHECK(max_abs(Matrix(op - op.adjoint())) < 1e-13);
        CHECK(std::abs(op.trace() - Complex(1.0 / 3)) < 1e-13);
    }
    for (int alpha = 0; alpha < 3; ++alpha) {
        Matrix row = Matrix::Zero(3, 3);
        for (int beta = 0; beta < 3; ++beta) row += pps.at(alpha, beta);
        Matrix projector = Matrix::Zero(3, 3);
        projector(alpha, alpha) = 1.0;
        CHECK(max_abs(Matrix(row - projector)) < 1e-12);
    }
}

TEST_CASE("wigner requires odd dimension") {
    Fixture f(4);
    CHECK_THROWS_AS(phase_points(PhasePointKind::wigner, f.pair, f.ctx), std::domain_error);
    CHECK_THROWS_AS(convolution_weights(f.pair, f.ctx), std::domain_error);
}

TEST_CASE("grid covariance under translations and fourier") {
    Fixture f(5);
    for (const PhasePointKind kind : {PhasePointKind::husimi, PhasePointKind::wigner}) {
        const PhasePointSet pps = phase_points(kind, f.pair, f.ctx);
        for (int a : {1, 3})
            for (int b : {0, 2})
                for (int alpha = 0; alpha < 5; ++alpha)
                    for (int beta = 0; beta < 5; ++beta) {
                        const Matrix moved =
                            phase_space_translate(pps.at(alpha, beta), a, b, f.ctx);
                        CHECK(max_abs(Matrix(moved - pps.at(periodic_index(alpha + a, 5),
                                                            periodic_index(beta + b, 5)))) <
                              1e-10);
                    }
        for (int alpha = 0; alpha < 5; ++alpha)
            for (int beta = 0; beta < 5; ++beta) {
                const Matrix rotated = f.ctx.F * pps.at(alpha, beta) * f.ctx.F.adjoint();
                CHECK(max_abs(Matrix(rotated - pps.at(periodic_index(-beta, 5), alpha))) <
                      1e-10);
            }
    }
}

TEST_CASE("distribution of reference states") {
    Fixture f(5);
    const PhasePointSet pps = phase_points(PhasePointKind::husimi, f.pair, f.ctx);

    DensityMatrix mixed;
    mixed.rho = Matrix::Identity(5, 5) / 5.0;
    const QuasiDistribution flat = quasi_distribution(mixed, pps);
    CHECK((flat.values.array() - 0.04).abs().maxCoeff() < 1e-12);

    const auto own = min_uncertainty_state(2, 4, f.pair, f.ctx);
    const QuasiDistribution peaked = quasi_distribution(pure_density(own.amplitudes), pps);
    CHECK(std::abs(peaked.values(2, 4) - 0.2) < 1e-10);

    DensityMatrix invalid;
    invalid.rho = Matrix::Identity(5, 5);
    CHECK_THROWS_AS(quasi_distribution(invalid, pps), std::invalid_argument);
}

TEST_CASE("wigner distribution of a stabilizer basis state is non-negative") {
    Fixture f(3);
    const PhasePointSet pps = phase_points(PhasePointKind::wigner, f.pair, f.ctx);
    Vector basis0 = Vector::Zero(3);
    basis0(0) = 1.0;
    const QuasiDistribution dist = quasi_distribution(pure_density(basis0), pps);
    CHECK(dist.values.minCoeff() > -1e-12);
    CHECK(std::abs(dist.values.sum() - 1.0) < 1e-10);
}

TEST_CASE("husimi non-negativity, normalization, linearity on random states") {
    Fixture f(7);
    const PhasePointSet pps = phase_points(PhasePointKind::husimi, f.pair, f.ctx);
    Rng rng(71);
    for (int k = 0; k < 100; ++k) {
        const DensityMatrix rho = rng.random_density(7);
        const QuasiDistribution dist = quasi_distribution(rho, pps);
        CHECK(dist.values.minCoeff() > -1e-12);
        CHECK(std::abs(dist.values.sum() - 1.0) < 1e-10);
    }

    const DensityMatrix rho1 = rng.random_density(7);
    const DensityMatrix rho2 = rng.random_density(7);
    DensityMatrix blend;
    blend.rho = 0.3 * rho1.rho + 0.7 * rho2.rho;
    const RealMatrix lhs = quasi_distribution(blend, pps).values;
    const RealMatrix rhs = 0.3 * quasi_distribution(rho1, pps).values +
                           0.7 * quasi_distribution(rho2, pps).values;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("husimi non-negativity holds for a thousand states per dimension") {
    Rng rng(101);
    for (int d = 2; d <= 16; ++d) {
        CAPTURE(d);
        Fixture f(d);
        const PhasePointSet pps = phase_points(PhasePointKind::husimi, f.pair, f.ctx);
        double min_value = 1e300;
        for (int k = 0; k < 1000; ++k) {
            const QuasiDistribution dist = quasi_distribution(rng.random_density(d), pps);
            min_value = std::min(min_value, dist.values.minCoeff());
        }
        CHECK(min_value > -1e-12);
    }
}

TEST_CASE("distribution covariance under state translation") {
    Fixture f(5);
    const PhasePointSet pps = phase_points(PhasePointKind::husimi, f.pair, f.ctx);
    Rng rng(73);
    const DensityMatrix rho = rng.random_density(5);
    const QuasiDistribution base = quasi_distribution(rho, pps);
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            DensityMatrix moved;
            moved.rho = phase_space_translate(rho.rho, a, b, f.ctx);
            const QuasiDistribution shifted = quasi_distribution(moved, pps);
            for (int alpha = 0; alpha < 5; ++alpha)
                for (int beta = 0; beta < 5; ++beta)
                    CHECK(std::abs(shifted.values(alpha, beta) -
                                   base.values(periodic_index(alpha - a, 5),
                                               periodic_index(beta - b, 5))) < 1e-10);
        }
}

TEST_CASE("marginals") {
    Fixture f5(5);
    const PhasePointSet husimi5 = phase_points(PhasePointKind::husimi, f5.pair, f5.ctx);
    Vector basis0 = Vector::Zero(5);
    basis0(0) = 1.0;
    const QuasiDistribution d0 = quasi_distribution(pure_density(basis0), husimi5);
    const RealVector m0 = marginal(d0, MarginalAxis::position);
    for (int alpha = 0; alpha < 5; ++alpha) {
        const double g = f5.pair.gamma(periodic_index(-alpha, 5));
        CHECK(std::abs(m0(alpha) - g * g) < 1e-10);
    }

    Fixture f7(7);
    const PhasePointSet wigner7 = phase_points(PhasePointKind::wigner, f7.pair, f7.ctx);
    Rng rng(79);
    const DensityMatrix rho = rng.random_density(7);
    const QuasiDistribution dw = quasi_distribution(rho, wigner7);
    const RealVector pos = marginal(dw, MarginalAxis::position);
    const RealVector mom = marginal(dw, MarginalAxis::momentum);
    const Matrix rho_momentum = f7.ctx.F.adjoint() * rho.rho * f7.ctx.F;
    for (int i = 0; i < 7; ++i) {
        CHECK(std::abs(pos(i) - rho.rho(i, i).real()) < 1e-10);
        CHECK(std::abs(mom(i) - rho_momentum(i, i).real()) < 1e-10);
    }

    // husimi marginal is the Gamma^2 convolution of the diagonal
    const PhasePointSet husimi7 = phase_points(PhasePointKind::husimi, f7.pair, f7.ctx);
    const QuasiDistribution dh = quasi_distribution(rho, husimi7);
    const RealVector hm = marginal(dh, MarginalAxis::position);
    for (int alpha = 0; alpha < 7; ++alpha) {
        double conv = 0.0;
        for (int a = 0; a < 7; ++a) {
            const double g = f7.pair.gamma(periodic_index(a - alpha, 7));
            conv += g * g * rho.rho(a, a).real();
        }
        CHECK(std::abs(hm(alpha) - conv) < 1e-10);
    }

    // uniform state gives uniform marginals for both kinds
    DensityMatrix mixed;
    mixed.rho = Matrix::Identity(7, 7) / 7.0;
    for (const PhasePointSet* pps : {&husimi7, &wigner7}) {
        const RealVector m = marginal(quasi_distribution(mixed, *pps), MarginalAxis::momentum);
        for (int i = 0; i < 7; ++i) CHECK(std::abs(m(i) - 1.0 / 7) < 1e-12);
    }
}

TEST_CASE("convolution weights reconstruct the husimi grid") {
    for (int d : {3, 5}) {
        CAPTURE(d);
        Fixture f(d);
        const PhasePointSet husimi = phase_points(PhasePointKind::husimi, f.pair, f.ctx);
        const PhasePointSet wigner = phase_points(PhasePointKind::wigner, f.pair, f.ctx);
        const RealMatrix w = convolution_weights(f.pair, f.ctx);
        CHECK(std::abs(w.sum() - 1.0) < 1e-10);
        for (int alpha = 0; alpha < d; ++alpha)
            for (int beta = 0; beta < d; ++beta) {
                Matrix sum = Matrix::Zero(d, d);
                for (int ap = 0; ap < d; ++ap)
                    for (int bp = 0; bp < d; ++bp)
                        sum += w(periodic_index(alpha - ap, d), periodic_index(beta - bp, d)) *
                               wigner.at(ap, bp);
                CHECK(max_abs(Matrix(sum - husimi.at(alpha, beta))) < 1e-10);
            }
    }
}

TEST_CASE("wigner operators are mutually orthogonal") {
    for (int d : {3, 5}) {
        CAPTURE(d);
        Fixture f(d);
        const PhasePointSet wigner = phase_points(PhasePointKind::wigner, f.pair, f.ctx);
        for (int i = 0; i < d * d; ++i)
            for (int j = 0; j < d * d; ++j) {
                const Complex t = (wigner.operators[i] * wigner.operators[j]).trace();
                const double expected = i == j ? 1.0 / d : 0.0;
                CHECK(std::abs(t - expected) < 1e-10);
            }
    }
}

TEST_CASE("sharpness of the two grids and of kernels") {
    Fixture f(5);
    const PhasePointSet husimi = phase_points(PhasePointKind::husimi, f.pair, f.ctx);
    const PhasePointSet wigner = phase_points(PhasePointKind::wigner, f.pair, f.ctx);

    const Sharpness sh = sharpness(husimi, f.ctx);
    CHECK(std::abs(sh.sigma - f.pair.h) < 1e-10);
    CHECK(std::abs(sh.tau - f.pair.h) < 1e-10);

    const Sharpness sw = sharpness(wigner, f.ctx);
    CHECK(std::abs(sw.sigma - 1.0) < 1e-10);
    CHECK(std::abs(sw.tau - 1.0) < 1e-10);

    DensityMatrix mixed;
    mixed.rho = Matrix::Identity(5, 5) / 5.0;
    const Sharpness sm = sharpness(mixed, f.ctx);
    CHECK(sm.sigma < 1e-12);
    CHECK(sm.tau < 1e-12);

    // corruption with a nonzero Q-weighted trace breaks one row only
    PhasePointSet corrupted = husimi;
    corrupted.operators[3](0, 0) += 1e-4;
    CHECK_THROWS_AS(sharpness(corrupted, f.ctx), std::invalid_argument);
}

TEST_CASE("optimality gap") {
    Rng rng(83);
    for (int d = 2; d <= 9; ++d) {
        CAPTURE(d);
        Fixture f(d);
        const double h2 = f.pair.h * f.pair.h;

        CHECK(std::abs(optimality_gap(pure_density(f.pair.gamma.cast<Complex>()), f.pair,
                                      f.ctx)) < 1e-10);

        Vector basis0 = Vector::Zero(d);
        basis0(0) = 1.0;
        CHECK(std::abs(optimality_gap(pure_density(basis0), f.pair, f.ctx) - h2) < 1e-12);

        for (int k = 0; k < 200; ++k)
            CHECK(optimality_gap(rng.random_density(d), f.pair, f.ctx) > 0.0);
    }
}

TEST_CASE("weyl identity") {
    Fixture f(4);
    CHECK(verify_weyl_identity(Matrix::Identity(4, 4), 0, 0, f.ctx) < 1e-12);

    const Vector gamma = f.pair.gamma.cast<Complex>();
    CHECK(verify_weyl_identity(Matrix(gamma * gamma.adjoint()), 0, 0, f.ctx) < 1e-10);

    Rng rng(89);
    Matrix omega_op(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) omega_op(i, j) = rng.complex_gaussian();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            CHECK(verify_weyl_identity(omega_op, a, b, f.ctx) < 1e-10);
}

TEST_CASE("tomography round trip on odd dimensions") {
    Rng rng(97);
    for (int d : {3, 5, 7}) {
        CAPTURE(d);
        Fixture f(d);
        const PhasePointSet pps = phase_points(PhasePointKind::husimi, f.pair, f.ctx);
        for (int k = 0; k < 10; ++k) {
            const DensityMatrix rho = rng.random_density(d);
            const QuasiDistribution dist = quasi_distribution(rho, pps);
            const DensityMatrix back = reconstruct_state(dist, f.pair, f.ctx);
            CHECK(max_abs(Matrix(back.rho - rho.rho)) < 1e-8);
            CHECK(std::abs(back.rho.trace() - Complex(1.0)) < 1e-12);
        }
        const QuasiDistribution gamma_dist =
            quasi_distribution(pure_density(f.pair.gamma.cast<Complex>()), pps);
        const DensityMatrix gamma_back = reconstruct_state(gamma_dist, f.pair, f.ctx);
        CHECK(max_abs(Matrix(gamma_back.rho -
                             (f.pair.gamma.cast<Complex>() *
                              f.pair.gamma.cast<Complex>().adjoint()))) < 1e-8);
    }
}

TEST_CASE("tomography refuses a singular inversion") {
    // at d = 27 the smallest |f_mn| is ~8.4e-13, under the 1e-12 guard
    Fixture f(27);
    const PhasePointSet pps = phase_points(PhasePointKind::husimi, f.pair, f.ctx);
    DensityMatrix mixed;
    mixed.rho = Matrix::Identity(27, 27) / 27.0;
    const QuasiDistribution dist = quasi_distribution(mixed, pps);
    CHECK_THROWS_AS(reconstruct_state(dist, f.pair, f.ctx), std::runtime_error);
}

TEST_CASE("grid construction is identical across worker counts") {
    Fixture f(6);
    const PhasePointSet serial = phase_points(PhasePointKind::husimi, f.pair, f.ctx);
    setenv("QUDIT_PHASE_THREADS", "3", 1);
    const PhasePointSet threaded = phase_points(PhasePointKind::husimi, f.pair, f.ctx);
    unsetenv("QUDIT_PHASE_THREADS");
    for (int i = 0; i < 36; ++i)
        CHECK(max_abs(Matrix(serial.operators[i] - threaded.operators[i])) == 0.0);
}

TEST_CASE("tomography refuses even dimensions and wigner input") {
    Fixture f4(4);
    const PhasePointSet pps4 = phase_points(PhasePointKind::husimi, f4.pair, f4.ctx);
    DensityMatrix mixed4;
    mixed4.rho = Matrix::Identity(4, 4) / 4.0;
    const QuasiDistribution dist4 = quasi_distribution(mixed4, pps4);
    CHECK_THROWS_AS(reconstruct_state(dist4, f4.pair, f4.ctx), std::domain_error);

    Fixture f3(3);
    const PhasePointSet wig3 = phase_points(PhasePointKind::wigner, f3.pair, f3.ctx);
    DensityMatrix mixed3;
    mixed3.rho = Matrix::Identity(3, 3) / 3.0;
    const QuasiDistribution dw = quasi_distribution(mixed3, wig3);
    CHECK_THROWS_AS(reconstruct_state(dw, f3.pair, f3.ctx), std::invalid_argument);
}

} // TEST_SUITE
