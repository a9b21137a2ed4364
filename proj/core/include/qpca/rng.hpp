#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace qpca {

/// Deterministic pseudorandom stream.
///
/// Built on std::mt19937_64, whose raw output is fixed by the standard. The
/// uniform and Gaussian transforms are implemented here rather than taken from
/// <random> distributions, because those are implementation-defined and would
/// break bit-for-bit reproducibility across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Independent stream derived from this stream's seed, a name and an index.
    /// Does not advance this stream.
    [[nodiscard]] Rng substream(std::string_view name, std::uint64_t index = 0) const;

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal (Box-Muller).
    double normal();
    /// Uniform on {0, ..., n-1}; n must be positive.
    std::size_t uniform_index(std::size_t n);

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

} // namespace qpca
