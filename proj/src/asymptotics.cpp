#include "qudit_phase/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace qudit_phase {

namespace {

int centered_lo(int d) { return d % 2 == 0 ? -d / 2 : -(d - 1) / 2; }

} // namespace

double asymptotic_h(int d) {
    if (d < 1) throw std::invalid_argument("asymptotic_h: d must be >= 1");
    return 1.0 - kPi / (2.0 * d);
}

RealVector asymptotic_gamma(int d) {
    if (d < 1) throw std::invalid_argument("asymptotic_gamma: d must be >= 1");
    const int lo = centered_lo(d);
    RealVector g(d);
    for (int i = 0; i < d; ++i) {
        const double a = lo + i;
        g(i) = std::exp(-kPi * a * a / d);
    }
    g /= g.norm();
    return g;
}

RealVector centered_view(const RealVector& values) {
    const int d = static_cast<int>(values.size());
    const int lo = centered_lo(d);
    RealVector out(d);
    for (int i = 0; i < d; ++i) out(i) = values(periodic_index(lo + i, d));
    return out;
}

ContinuumScheme make_scheme(int d, double sigma) {
    if (d < 1) throw std::invalid_argument("make_scheme: d must be >= 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("make_scheme: sigma must be positive");
    ContinuumScheme s;
    s.d = d;
    s.sigma = sigma;
    s.epsilon = sigma * std::sqrt(2.0 * kPi / d);
    s.a_lo = centered_lo(d);
    s.a_hi = s.a_lo + d - 1;
    return s;
}

StateVector gaussian_packet(const ContinuumScheme& scheme, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian_packet: width must be positive");
    const int d = scheme.d;
    const double ratio = scheme.sigma / width;
    StateVector state;
    state.basis = Basis::position;
    state.amplitudes.resize(d);
    // storage index a in [0, d); amplitude depends on the centered representative
    for (int a = 0; a < d; ++a) {
        const double cent = a <= scheme.a_hi ? a : a - d;
        state.amplitudes(a) = std::exp(-kPi * cent * cent * ratio * ratio / d);
    }
    state.amplitudes /= state.amplitudes.norm();
    return state;
}

double mathieu_residual(const GroundPair& pair, const QuditContext& ctx) {
    const int d = ctx.d;
    if (pair.gamma.size() != d)
        throw std::invalid_argument("mathieu_residual: dimension mismatch");
    double worst = 0.0;
    for (int a = 0; a < d; ++a) {
        const double lhs = 0.25 * (pair.gamma(periodic_index(a + 1, d)) +
                                   pair.gamma(periodic_index(a - 1, d)) +
                                   2.0 * std::cos(2.0 * kPi * a / d) * pair.gamma(a));
        worst = std::max(worst, std::abs(lhs - pair.h * pair.gamma(a)));
    }
    return worst;
}

bool ContinuumReport::expansions_ok() const {
    return q_deviation < expansion_envelope && p_deviation < expansion_envelope;
}

bool ContinuumReport::inequality_ok() const { return sum_lhs >= 1.0 - inequality_envelope; }

bool ContinuumReport::product_ok() const { return dx * dp >= 0.5 - inequality_envelope; }

ContinuumReport continuum_expansion_check(const StateVector& state,
                                          const ContinuumScheme& scheme,
                                          const QuditContext& ctx) {
    validate_state(state);
    if (state.basis != Basis::position)
        throw std::invalid_argument("continuum_expansion_check expects a position-basis state");
    const int d = ctx.d;
    if (scheme.d != d || state.amplitudes.size() != d)
        throw std::invalid_argument("continuum_expansion_check: dimension mismatch");

    // boundary concentration guard: mass outside the central half
    double tail = 0.0;
    for (int a = 0; a < d; ++a) {
        const double cent = a <= scheme.a_hi ? a : a - d;
        if (std::abs(cent) > d / 4.0) tail += std::norm(state.amplitudes(a));
    }
    if (tail >= 1e-6)
        throw std::domain_error("state too close to the wrap-around boundary (tail mass " +
                                std::to_string(tail) + ")");

    const double length = scheme.epsilon * d;

    double mean_x = 0.0, mean_x2 = 0.0;
    for (int a = 0; a < d; ++a) {
        const double cent = a <= scheme.a_hi ? a : a - d;
        const double x = cent * scheme.epsilon;
        const double prob = std::norm(state.amplitudes(a));
        mean_x += prob * x;
        mean_x2 += prob * x * x;
    }
    const double dx = std::sqrt(std::max(mean_x2 - mean_x * mean_x, 0.0));

    const Vector momentum = ctx.F.adjoint() * state.amplitudes;
    double mean_p = 0.0, mean_p2 = 0.0;
    for (int b = 0; b < d; ++b) {
        const double cent = b <= scheme.a_hi ? b : b - d;
        const double p = cent * 2.0 * kPi / length;
        const double prob = std::norm(momentum(b));
        mean_p += prob * p;
        mean_p2 += prob * p * p;
    }
    const double dp = std::sqrt(std::max(mean_p2 - mean_p * mean_p, 0.0));

    const double abs_q = std::abs(expectation(ctx.Q, state.amplitudes));
    const double abs_p = std::abs(expectation(ctx.P, state.amplitudes));

    ContinuumReport report;
    report.dx = dx;
    report.dp = dp;
    report.q_deviation =
        std::abs((1.0 - abs_q) - kPi * dx * dx / (scheme.sigma * scheme.sigma * d));
    report.p_deviation =
        std::abs((1.0 - abs_p) - kPi * scheme.sigma * scheme.sigma * dp * dp / d);
    report.sum_lhs = dx * dx / (scheme.sigma * scheme.sigma) +
                     scheme.sigma * scheme.sigma * dp * dp;
    report.expansion_envelope = 5.0 * std::pow(d, -1.5);
    report.inequality_envelope = 10.0 / std::sqrt(static_cast<double>(d));
    return report;
}

std::vector<HTableRow> h_comparison_table(int d_min, int d_max) {
    if (d_min < 1 || d_max < d_min)
        throw std::invalid_argument("h_comparison_table: bad range");
    std::vector<HTableRow> rows;
    rows.reserve(d_max - d_min + 1);
    for (int d = d_min; d <= d_max; ++d) {
        const QuditContext ctx = build_context(d);
        const GroundPair pair = ground_pair_dense(build_harper(ctx));
        rows.push_back({d, pair.h, asymptotic_h(d)});
    }
    return rows;
}

std::vector<GammaTableRow> gamma_comparison_table(int d) {
    const QuditContext ctx = build_context(d);
    const GroundPair pair = ground_pair_dense(build_harper(ctx));
    const RealVector exact = centered_view(pair.gamma);
    const RealVector asym = asymptotic_gamma(d);
    const int lo = centered_lo(d);
    std::vector<GammaTableRow> rows;
    rows.reserve(d);
    for (int i = 0; i < d; ++i) rows.push_back({lo + i, exact(i), asym(i)});
    return rows;
}

} // namespace qudit_phase
