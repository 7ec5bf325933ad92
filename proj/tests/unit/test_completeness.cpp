#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qudit_phase/completeness.hpp"
#include "qudit_phase/quasiprob.hpp"
#include "test_helpers.hpp"

using namespace qudit_phase;
using test_helpers::max_abs;

namespace {

struct Fixture {
    QuditContext ctx;
    GroundPair pair;
    FourierCoeffTable table;
    explicit Fixture(int d)
        : ctx(build_context(d)),
          pair(ground_pair_dense(build_harper(ctx))),
          table(coeff_table(pair, ctx)) {}
};

} // namespace

TEST_SUITE("completeness") {

TEST_CASE("anchor values of the f table") {
    for (int d : {1, 2, 5, 8}) {
        CAPTURE(d);
        Fixture f(d);
        CHECK(std::abs(f.table.f(0, 0) - Complex(1.0)) < 1e-12);
        CHECK(std::abs(f.table.f(1 % d, 0) - Complex(f.pair.h)) < 1e-12);
    }
    Fixture f4(4);
    CHECK(std::abs(f4.table.f(2, 2)) < 1e-12);
}

TEST_CASE("f symmetries and realness of g") {
    for (int d : {4, 5, 8, 9}) {
        CAPTURE(d);
        Fixture f(d);
        for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n) {
                const Complex fmn = f.table.f(m, n);
                CHECK(std::abs(fmn - f.table.f_at(-m, -n)) < 1e-10);
                CHECK(std::abs(fmn - f.table.f(n, m)) < 1e-10);
                const Complex phase = f.ctx.omega(-static_cast<long long>(m) * n);
                CHECK(std::abs(fmn - phase * f.table.f_at(m, -n)) < 1e-10);
                CHECK(std::abs(fmn - phase * std::conj(fmn)) < 1e-10);
            }
    }
}

TEST_CASE("g symmetries on centered indices") {
    Fixture f(9);
    const int hi = 4;
    for (int m = -hi; m <= hi; ++m)
        for (int n = -hi; n <= hi; ++n) {
            CHECK(std::abs(f.table.g_at(m, n) - f.table.g_at(n, m)) < 1e-10);
            CHECK(std::abs(f.table.g_at(m, n) - f.table.g_at(-m, n)) < 1e-10);
            CHECK(std::abs(f.table.g_at(m, n) - f.table.g_at(m, -n)) < 1e-10);
        }
    CHECK_THROWS_AS(f.table.g_at(5, 0), std::out_of_range);
}

TEST_CASE("g quasi-periodicity under index shifts by d") {
    Fixture f(5);
    // recompute the dephased value at m + d from the periodic f table
    for (int m = -2; m <= 2; ++m)
        for (int n = -2; n <= 2; ++n) {
            const double angle = kPi * static_cast<double>((m + 5) * n) / 5.0;
            const Complex shifted =
                Complex(std::cos(angle), std::sin(angle)) * f.table.f_at(m + 5, n);
            CHECK(std::abs(shifted.imag()) < 1e-10);
            const double sign = n % 2 == 0 ? 1.0 : -1.0;
            CHECK(std::abs(shifted.real() - sign * f.table.g_at(m, n)) < 1e-10);
        }
}

TEST_CASE("zero sets of small dimensions") {
    Fixture f4(4);
    const std::vector<std::pair<int, int>> expected4 = {{1, 2}, {2, 1}, {2, 2}, {2, 3}, {3, 2}};
    CHECK(zero_set(f4.table) == expected4);
    CHECK(even_zero_pattern(4) == expected4);

    Fixture f5(5);
    CHECK(zero_set(f5.table).empty());

    Fixture f2(2);
    CHECK(zero_set(f2.table) == std::vector<std::pair<int, int>>{{1, 1}});
}

TEST_CASE("even-d zero set matches the pattern at the default tolerance up to d = 24") {
    for (int d = 2; d <= 24; d += 2) {
        CAPTURE(d);
        Fixture f(d);
        CHECK(zero_set(f.table) == even_zero_pattern(d));
    }
}

TEST_CASE("even-d zero set matches the pattern at the numerical-zero floor up to d = 32") {
    // beyond d = 24 the smallest genuinely nonzero |f| drops under 1e-10
    // (5.3e-12 at d = 26 down to 5.4e-14 at d = 30), so the classification
    // needs a floor just above roundoff
    for (int d = 26; d <= 32; d += 2) {
        CAPTURE(d);
        Fixture f(d);
        CHECK(zero_set(f.table, 1e-14) == even_zero_pattern(d));
        CHECK(zero_set(f.table) != even_zero_pattern(d));
    }
}

TEST_CASE("odd-d tables are strictly positive after dephasing") {
    for (int d = 1; d <= 31; d += 2) {
        CAPTURE(d);
        Fixture f(d);
        CHECK(f.table.g.minCoeff() > 0.0);
        CHECK(f.table.f.cwiseAbs().minCoeff() > 0.0);
        if (d <= 21) CHECK(zero_set(f.table).empty());
    }
}

TEST_CASE("block structure on the tensor space") {
    Fixture f3(3);
    const BlockSpectrumReport r3 = block_spectrum_check(f3.ctx, f3.pair);
    CHECK(r3.spectrum_residual < 1e-10);
    CHECK(r3.left_residual < 1e-10);
    CHECK(r3.right_residual < 1e-10);
    CHECK(r3.sum_residual < 1e-10);

    // qubit: H spectrum is +-1/sqrt(2), each doubled in H_L
    Fixture f2(2);
    const BlockSpectrumReport r2 = block_spectrum_check(f2.ctx, f2.pair);
    CHECK(r2.spectrum_residual < 1e-10);
    CHECK(std::abs(f2.pair.h - std::sqrt(0.5)) < 1e-12);
    CHECK(std::abs(f2.pair.gap - std::sqrt(2.0)) < 1e-12);

    Fixture f5(5);
    const BlockSpectrumReport r5 = block_spectrum_check(f5.ctx, f5.pair);
    CHECK(r5.sum_residual < 1e-9);

    Fixture f17(17);
    CHECK_THROWS_AS(block_spectrum_check(f17.ctx, f17.pair), std::domain_error);
}

TEST_CASE("fourier transform of the phase point grid matches the f table") {
    for (int d : {4, 5}) {
        CAPTURE(d);
        Fixture f(d);
        const PhasePointSet pps = phase_points(PhasePointKind::husimi, f.pair, f.ctx);
        for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n) {
                Matrix tilde = Matrix::Zero(d, d);
                for (int alpha = 0; alpha < d; ++alpha)
                    for (int beta = 0; beta < d; ++beta)
                        tilde += f.ctx.omega(static_cast<long long>(alpha) * n -
                                             static_cast<long long>(beta) * m) *
                                 pps.at(alpha, beta);
                tilde /= static_cast<double>(d);
                Matrix pq = Matrix::Zero(d, d);
                for (int y = 0; y < d; ++y)
                    pq(periodic_index(y + m, d), y) =
                        f.ctx.omega(static_cast<long long>(n) * y);
                const Matrix expected =
                    std::conj(f.table.f(m, n)) / static_cast<double>(d) * pq;
                CHECK(max_abs(Matrix(tilde - expected)) < 1e-10);
            }
    }
}

TEST_CASE("symmetric reduction") {
    Fixture f3(3);
    const SymmetricReductionReport r3 = symmetric_reduction_check(f3.pair, f3.ctx);
    CHECK(r3.eigen_residual < 1e-10);
    CHECK(r3.min_g > 0.0);
    CHECK(r3.min_power_entry > 0.0);
    CHECK(r3.perron_min_component > 0.0);

    Fixture f5(5);
    const SymmetricReductionReport r5 = symmetric_reduction_check(f5.pair, f5.ctx);
    CHECK(r5.eigen_residual < 1e-9);
    CHECK(r5.min_power_entry > 0.0);

    Fixture f9(9);
    const SymmetricReductionReport r9 = symmetric_reduction_check(f9.pair, f9.ctx);
    CHECK(r9.eigen_residual < 1e-9);
    CHECK(r9.min_g > 0.0);

    Fixture f1(1);
    const SymmetricReductionReport r1 = symmetric_reduction_check(f1.pair, f1.ctx);
    CHECK(r1.eigen_residual < 1e-12);
    CHECK(r1.min_g == doctest::Approx(1.0));

    Fixture f4(4);
    CHECK_THROWS_AS(symmetric_reduction_check(f4.pair, f4.ctx), std::domain_error);
}

TEST_CASE("cos factors on the symmetric range are positive") {
    for (int d : {3, 5, 9}) {
        const int hi = (d - 1) / 2;
        for (int m = -hi; m <= hi; ++m) CHECK(std::cos(kPi * m / d) > 0.0);
    }
}

} // TEST_SUITE
