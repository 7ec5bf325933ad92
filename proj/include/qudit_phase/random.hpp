#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "qudit_phase/context.hpp"
#include "qudit_phase/types.hpp"

namespace qudit_phase {

/// Recorded in output metadata so files can be tied to the sampling
/// scheme that produced them.
inline constexpr std::string_view kGeneratorVersion = "mt19937_64-boxmuller-1";

/// Seeded 64-bit generator with an explicit Box-Muller normal sampler,
/// so the sampled streams do not depend on the standard library's
/// distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(); // [0, 1)
    double gaussian();
    Complex complex_gaussian();

    /// Haar-random pure state: normalized vector of complex Gaussians.
    Vector haar_state(int d);

    /// Ginibre matrix of independent complex Gaussians.
    Matrix ginibre(int d);

    /// rho = G G^+ / tr(G G^+) for a Ginibre G.
    DensityMatrix random_density(int d);

  private:
    std::mt19937_64 engine_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

} // namespace qudit_phase
