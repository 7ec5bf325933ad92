#include "qudit_phase/selftest.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "qudit_phase/asymptotics.hpp"
#include "qudit_phase/completeness.hpp"
#include "qudit_phase/context.hpp"
#include "qudit_phase/harper.hpp"
#include "qudit_phase/min_uncertainty.hpp"
#include "qudit_phase/quasiprob.hpp"
#include "qudit_phase/random.hpp"

namespace qudit_phase {

namespace {

class Checker {
  public:
    explicit Checker(std::ostream& out) : out_(out) {}

    void check(const std::string& name, bool ok, double residual) {
        out_ << (ok ? "[ok]   " : "[FAIL] ") << name << " (" << residual << ")\n";
        if (!ok) ++failures_;
    }

    void run(const std::string& name, const std::function<double()>& residual_fn, double tol) {
        try {
            const double r = residual_fn();
            check(name, r < tol, r);
        } catch (const std::exception& e) {
            out_ << "[FAIL] " << name << " threw: " << e.what() << "\n";
            ++failures_;
        }
    }

    int failures() const { return failures_; }

  private:
    std::ostream& out_;
    int failures_ = 0;
};

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

void context_checks(Checker& c, const QuditContext& ctx, Rng& rng) {
    const int d = ctx.d;
    const std::string tag = "d=" + std::to_string(d) + " ";
    const Matrix identity = Matrix::Identity(d, d);

    c.run(tag + "context: unitarity/commutation/fourier", [&] {
        double r = 0.0;
        r = std::max(r, max_abs(ctx.Q.adjoint() * ctx.Q - identity));
        r = std::max(r, max_abs(ctx.P.adjoint() * ctx.P - identity));
        r = std::max(r, max_abs(ctx.F.adjoint() * ctx.F - identity));
        r = std::max(r, max_abs(ctx.Q * ctx.P - ctx.omega(1) * ctx.P * ctx.Q));
        r = std::max(r, max_abs(ctx.F * ctx.F - ctx.T));
        r = std::max(r, max_abs(ctx.T * ctx.T - identity));
        r = std::max(r, max_abs(ctx.F * ctx.Q * ctx.F.adjoint() - ctx.P.adjoint()));
        r = std::max(r, max_abs(ctx.F * ctx.P * ctx.F.adjoint() - ctx.Q));
        return r;
    }, 1e-12);

    c.run(tag + "context: expectation consistency", [&] {
        const Vector psi = rng.haar_state(d);
        const StateVector state{psi, Basis::position};
        const Vector tilde = dft(state, ctx).amplitudes;
        Complex from_position = 0.0, from_momentum = 0.0;
        for (int a = 0; a < d; ++a) from_position += std::norm(psi(a)) * ctx.omega(a);
        for (int b = 0; b < d; ++b)
            from_momentum += std::conj(tilde(periodic_index(b + 1, d))) * tilde(b);
        return std::abs(from_position - from_momentum);
    }, 1e-10);
}

void harper_checks(Checker& c, const QuditContext& ctx, const GroundPair& pair) {
    const int d = ctx.d;
    const std::string tag = "d=" + std::to_string(d) + " ";
    const RealMatrix h = build_harper(ctx);

    if (d > 1)
        c.run(tag + "harper: trace zero", [&] { return std::abs(h.trace()); }, 1e-12);
    c.run(tag + "harper: dense/power agreement", [&] {
        const PowerSolveResult power = ground_pair_power(h);
        const double dh = std::abs(power.pair.h - pair.h);
        const double dg = (power.pair.gamma - pair.gamma).cwiseAbs().maxCoeff();
        return std::max(dh, dg);
    }, 1e-9);
    c.run(tag + "harper: gamma symmetries", [&] {
        return verify_gamma_symmetries(pair, ctx).max_residual();
    }, 1e-10);
    c.run(tag + "harper: positivity and gap", [&] {
        return (pair.gamma.minCoeff() > 0.0 && pair.gap > 0.0) ? 0.0 : 1.0;
    }, 0.5);
    c.run(tag + "harper: mathieu recurrence", [&] { return mathieu_residual(pair, ctx); },
          1e-10);
    c.run(tag + "harper: peak at centered zero", [&] {
        Eigen::Index imax = 0;
        pair.gamma.maxCoeff(&imax);
        return imax == 0 ? 0.0 : 1.0;
    }, 0.5);
}

void min_uncertainty_checks(Checker& c, const QuditContext& ctx, const GroundPair& pair,
                            Rng& rng) {
    const int d = ctx.d;
    const std::string tag = "d=" + std::to_string(d) + " ";
    const double h2 = pair.h * pair.h;

    c.run(tag + "states: certainty bound (random pure/mixed)", [&] {
        double worst = -1.0;
        for (int k = 0; k < 200; ++k) {
            const StateVector s{rng.haar_state(d), Basis::position};
            worst = std::max(worst, certainty(s, ctx) - h2);
        }
        for (int k = 0; k < 50; ++k)
            worst = std::max(worst, certainty(rng.random_density(d), ctx) - h2);
        return worst;
    }, 1e-10);

    c.run(tag + "states: am-gm chain", [&] {
        double worst = -1.0;
        for (int k = 0; k < 200; ++k) {
            const Vector psi = rng.haar_state(d);
            const double aq = std::abs(expectation(ctx.Q, psi));
            const double ap = std::abs(expectation(ctx.P, psi));
            const double c_val = aq * ap;
            worst = std::max(worst, std::sqrt(c_val) - 0.5 * (aq + ap));
            worst = std::max(worst, 0.5 * (aq + ap) - pair.h);
        }
        return worst;
    }, 1e-12);

    c.run(tag + "states: saturation at min-uncertainty states", [&] {
        double worst = 0.0;
        for (int alpha = 0; alpha < d; ++alpha)
            for (int beta = 0; beta < d; ++beta) {
                const auto s = min_uncertainty_state(alpha, beta, pair, ctx);
                worst = std::max(worst,
                                 std::abs(certainty({s.amplitudes, Basis::position}, ctx) - h2));
            }
        return worst;
    }, 1e-10);

    c.run(tag + "states: resolution of identity", [&] {
        return resolution_of_identity_residual(pair, ctx);
    }, 1e-10);

    c.run(tag + "states: modulus lift relations", [&] {
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const StateVector s{rng.haar_state(d), Basis::position};
            const StateVector lifted = modulus_lift(s, Basis::position, ctx);
            const Complex q0 = expectation(ctx.Q, s.amplitudes);
            const Complex q1 = expectation(ctx.Q, lifted.amplitudes);
            worst = std::max(worst, std::abs(q1 - q0));
            const double p1 = expectation(ctx.P, lifted.amplitudes).real();
            worst = std::max(worst, std::abs(expectation(ctx.P, s.amplitudes)) - p1);
        }
        return worst;
    }, 1e-10);
}

void quasiprob_checks(Checker& c, const QuditContext& ctx, const GroundPair& pair, Rng& rng) {
    const int d = ctx.d;
    const std::string tag = "d=" + std::to_string(d) + " ";
    const Matrix identity = Matrix::Identity(d, d);
    const PhasePointSet husimi = phase_points(PhasePointKind::husimi, pair, ctx);

    c.run(tag + "quasiprob: husimi grid sums to identity", [&] {
        Matrix sum = Matrix::Zero(d, d);
        for (const Matrix& op : husimi.operators) sum += op;
        return max_abs(sum - identity);
    }, 1e-10);

    c.run(tag + "quasiprob: covariance of the grid", [&] {
        double r = 0.0;
        const int a = 1 % d, b = (d > 2 ? 2 : 1) % d;
        for (int alpha = 0; alpha < d; ++alpha)
            for (int beta = 0; beta < d; ++beta)
                r = std::max(r, max_abs(phase_space_translate(husimi.at(alpha, beta), a, b, ctx) -
                                        husimi.at(periodic_index(alpha + a, d),
                                                  periodic_index(beta + b, d))));
        const Matrix rotated = ctx.F * husimi.at(1 % d, 0) * ctx.F.adjoint();
        r = std::max(r, max_abs(rotated - husimi.at(0, 1 % d)));
        return r;
    }, 1e-10);

    c.run(tag + "quasiprob: random-state distributions", [&] {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const DensityMatrix rho = rng.random_density(d);
            const QuasiDistribution dist = quasi_distribution(rho, husimi);
            worst = std::max(worst, -dist.values.minCoeff());
            worst = std::max(worst, std::abs(dist.values.sum() - 1.0));
            // marginal = circular convolution of Gamma^2 with diag(rho)
            const RealVector m = marginal(dist, MarginalAxis::position);
            for (int alpha = 0; alpha < d; ++alpha) {
                double conv = 0.0;
                for (int a = 0; a < d; ++a) {
                    const double g = pair.gamma(periodic_index(a - alpha, d));
                    conv += g * g * rho.rho(a, a).real();
                }
                worst = std::max(worst, std::abs(m(alpha) - conv));
            }
        }
        return worst;
    }, 1e-10);

    c.run(tag + "quasiprob: weyl identity", [&] {
        Matrix omega_op(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) omega_op(i, j) = rng.complex_gaussian();
        double r = 0.0;
        for (int m = 0; m < std::min(d, 3); ++m)
            for (int n = 0; n < std::min(d, 3); ++n)
                r = std::max(r, verify_weyl_identity(omega_op, m, n, ctx));
        return r;
    }, 1e-10);

    c.run(tag + "quasiprob: husimi sharpness (h,h) and kernel bound", [&] {
        const Sharpness s = sharpness(husimi, ctx);
        double r = std::max(std::abs(s.sigma - pair.h), std::abs(s.tau - pair.h));
        for (int k = 0; k < 50; ++k) {
            const double gap = optimality_gap(rng.random_density(d), pair, ctx);
            if (gap < -1e-10) r = std::max(r, -gap);
        }
        const double gamma_gap =
            optimality_gap(pure_density(pair.gamma.cast<Complex>()), pair, ctx);
        r = std::max(r, std::abs(gamma_gap));
        return r;
    }, 1e-10);

    if (d % 2 == 1) {
        const PhasePointSet wigner = phase_points(PhasePointKind::wigner, pair, ctx);
        c.run(tag + "quasiprob: wigner marginals/orthogonality/convolution", [&] {
            double r = 0.0;
            for (int alpha = 0; alpha < d; ++alpha) {
                Matrix row = Matrix::Zero(d, d);
                for (int beta = 0; beta < d; ++beta) row += wigner.at(alpha, beta);
                Matrix projector = Matrix::Zero(d, d);
                projector(alpha, alpha) = 1.0;
                r = std::max(r, max_abs(row - projector));
            }
            const Sharpness s = sharpness(wigner, ctx);
            r = std::max(r, std::abs(s.sigma - 1.0));
            r = std::max(r, std::abs(s.tau - 1.0));
            for (int i = 0; i < d * d; ++i)
                for (int j = 0; j < d * d; ++j) {
                    const Complex t = (wigner.operators[i] * wigner.operators[j]).trace();
                    const double expected = i == j ? 1.0 / d : 0.0;
                    r = std::max(r, std::abs(t - expected));
                }
            const RealMatrix w = convolution_weights(pair, ctx);
            for (int alpha = 0; alpha < d; ++alpha)
                for (int beta = 0; beta < d; ++beta) {
                    Matrix sum = Matrix::Zero(d, d);
                    for (int ap = 0; ap < d; ++ap)
                        for (int bp = 0; bp < d; ++bp)
                            sum += w(periodic_index(alpha - ap, d), periodic_index(beta - bp, d)) *
                                   wigner.at(ap, bp);
                    r = std::max(r, max_abs(sum - husimi.at(alpha, beta)));
                }
            return r;
        }, 1e-10);

        c.run(tag + "quasiprob: tomography round trip", [&] {
            double worst = 0.0;
            for (int k = 0; k < 5; ++k) {
                const DensityMatrix rho = rng.random_density(d);
                const QuasiDistribution dist = quasi_distribution(rho, husimi);
                const DensityMatrix back = reconstruct_state(dist, pair, ctx);
                worst = std::max(worst, max_abs(back.rho - rho.rho));
            }
            return worst;
        }, 1e-8);
    }
}

void completeness_checks(Checker& c, const QuditContext& ctx, const GroundPair& pair) {
    const int d = ctx.d;
    const std::string tag = "d=" + std::to_string(d) + " ";
    const FourierCoeffTable table = coeff_table(pair, ctx);

    c.run(tag + "complete: f symmetries", [&] {
        double r = std::abs(table.f(0, 0) - 1.0);
        r = std::max(r, std::abs(table.f(1 % d, 0) - pair.h));
        for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n) {
                const Complex f = table.f(m, n);
                r = std::max(r, std::abs(f - table.f_at(-m, -n)));
                r = std::max(r, std::abs(f - table.f(n, m)));
                r = std::max(r, std::abs(f - ctx.omega(-static_cast<long long>(m) * n) *
                                                 table.f_at(m, -n)));
                r = std::max(r, std::abs(f - ctx.omega(-static_cast<long long>(m) * n) *
                                                 std::conj(f)));
            }
        return r;
    }, 1e-10);

    if (d % 2 == 0) {
        c.run(tag + "complete: even-d zero pattern", [&] {
            return zero_set(table) == even_zero_pattern(d) ? 0.0 : 1.0;
        }, 0.5);
    } else {
        c.run(tag + "complete: odd-d positivity", [&] {
            return (table.g.minCoeff() > 0.0 && zero_set(table).empty()) ? 0.0 : 1.0;
        }, 0.5);
        c.run(tag + "complete: symmetric reduction", [&] {
            const SymmetricReductionReport r = symmetric_reduction_check(pair, ctx);
            double worst = r.eigen_residual;
            if (!(r.min_power_entry > 0.0)) worst = std::max(worst, 1.0);
            if (!(r.perron_min_component > 0.0)) worst = std::max(worst, 1.0);
            if (!(r.min_g > 0.0)) worst = std::max(worst, 1.0);
            return worst;
        }, 1e-9);
    }

    if (d <= 16) {
        c.run(tag + "complete: block spectrum", [&] {
            const BlockSpectrumReport r = block_spectrum_check(ctx, pair);
            return std::max({r.spectrum_residual, r.left_residual, r.right_residual,
                             r.sum_residual});
        }, 1e-9);
    }
}

} // namespace

int run_selftest(int max_d, std::uint64_t seed, std::ostream& out) {
    Checker checker(out);
    for (int d = 1; d <= max_d; ++d) {
        Rng rng(seed + static_cast<std::uint64_t>(d));
        const QuditContext ctx = build_context(d);
        const GroundPair pair = ground_pair_dense(build_harper(ctx));
        context_checks(checker, ctx, rng);
        harper_checks(checker, ctx, pair);
        min_uncertainty_checks(checker, ctx, pair, rng);
        if (d >= 2) quasiprob_checks(checker, ctx, pair, rng);
        completeness_checks(checker, ctx, pair);
    }

    // one large-d continuum check; small d violates the boundary guard
    checker.run("d=101 asympt: continuum expansion for Gamma", [&] {
        const QuditContext ctx = build_context(101);
        const GroundPair pair = ground_pair_power(build_harper(ctx)).pair;
        const ContinuumScheme scheme = make_scheme(101, 1.0);
        const StateVector state{pair.gamma.cast<Complex>(), Basis::position};
        const ContinuumReport r = continuum_expansion_check(state, scheme, ctx);
        double worst = 0.0;
        if (!r.expansions_ok()) worst = 1.0;
        if (!r.inequality_ok()) worst = 1.0;
        if (!r.product_ok()) worst = 1.0;
        return worst;
    }, 0.5);

    checker.run("asymptotic h deviation shrinks", [&] {
        double prev = 1e300;
        for (int d : {8, 16, 32}) {
            const QuditContext ctx = build_context(d);
            const GroundPair pair = ground_pair_dense(build_harper(ctx));
            const double dev = std::abs(pair.h - asymptotic_h(d));
            if (dev >= prev) return 1.0;
            prev = dev;
        }
        return 0.0;
    }, 0.5);

    out << (checker.failures() == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return checker.failures();
}

} // namespace qudit_phase
