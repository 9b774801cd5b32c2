#pragma once

#include <cstdint>
#include <random>

namespace svadf {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/**
 * @brief Seed for stream `stream` of an experiment keyed by `master`.
 *
 * Replication r of any Monte Carlo loop draws from Rng(derive_seed(master, r)),
 * so results do not depend on how replications are scheduled across threads.
 */
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

/**
 * @brief Random source used by every simulator.
 *
 * Uniforms come from std::mt19937_64, whose output sequence is fixed by the
 * C++ standard. Normals are produced by inverting the Gaussian CDF (Wichura's
 * AS241) on a 53-bit open-interval uniform, one uniform per normal. Unlike
 * std::normal_distribution this is identical on every standard library.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Uniform on the open interval (0, 1).
    double uniform();
    double uniform(double lo, double hi);
    double normal();

private:
    std::mt19937_64 engine_;
};

}  // namespace svadf
