#include "qudit_phase/random.hpp"

#include <cmath>

namespace qudit_phase {

double Rng::uniform() {
    // 53 random bits into [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    cached_ = r * std::sin(angle);
    has_cached_ = true;
    return r * std::cos(angle);
}

Complex Rng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im);
}

Vector Rng::haar_state(int d) {
    Vector v(d);
    for (int a = 0; a < d; ++a) v(a) = complex_gaussian();
    v /= v.norm();
    return v;
}

Matrix Rng::ginibre(int d) {
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = complex_gaussian();
    return g;
}

DensityMatrix Rng::random_density(int d) {
    const Matrix g = ginibre(d);
    DensityMatrix rho;
    rho.rho = g * g.adjoint();
    rho.rho /= rho.rho.trace().real();
    return rho;
}

} // namespace qudit_phase
