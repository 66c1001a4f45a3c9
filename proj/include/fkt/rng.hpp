#pragma once

// Counter-based normal and uniform streams. A draw is a pure function of
// (seed, stream, path, index), so any partition of paths over threads
// reproduces the same numbers.

#include <array>
#include <cstdint>

namespace fkt {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Disjoint sub-streams drawn for the same path.
enum class Stream : std::uint32_t {
    kIncrements = 0,
    kInitialState = 1,
};

class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path, Stream stream = Stream::kIncrements) noexcept;

    /// Two uniforms in (0,1] from block `index`.
    std::array<double, 2> uniform_pair(std::uint64_t index) const noexcept;

    /// Two independent standard normals from block `index` (Box-Muller).
    std::array<double, 2> normal_pair(std::uint64_t index) const noexcept;

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t path_lo_;
    std::uint32_t path_hi_;
    std::uint32_t stream_;
};

}  // namespace fkt
