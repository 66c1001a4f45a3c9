#include "fkt/rng.hpp"

#include <cmath>
#include <numbers>

namespace fkt {

namespace {

constexpr std::uint32_t kMulA = 0xD2511F53u;
constexpr std::uint32_t kMulB = 0xCD9E8D57u;
constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(p);
    hi = static_cast<std::uint32_t>(p >> 32);
}

// 53 random bits mapped to (0, 1].
inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t lo0, hi0, lo1, hi1;
        mulhilo(kMulA, ctr[0], lo0, hi0);
        mulhilo(kMulB, ctr[2], lo1, hi1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeylA;
        key[1] += kWeylB;
    }
    return ctr;
}

PathRng::PathRng(std::uint64_t seed, std::uint64_t path, Stream stream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      path_lo_(static_cast<std::uint32_t>(path)),
      path_hi_(static_cast<std::uint32_t>(path >> 32)),
      stream_(static_cast<std::uint32_t>(stream)) {}

std::array<double, 2> PathRng::uniform_pair(std::uint64_t index) const noexcept {
    // Block index takes the low 56 bits; the stream tag the top byte.
    const auto lo = static_cast<std::uint32_t>(index);
    const auto hi = static_cast<std::uint32_t>((index >> 32) & 0x00FFFFFFu) | (stream_ << 24);
    const auto r = philox4x32({lo, hi, path_lo_, path_hi_}, key_);
    return {to_unit(r[0], r[1]), to_unit(r[2], r[3])};
}

std::array<double, 2> PathRng::normal_pair(std::uint64_t index) const noexcept {
    const auto [u1, u2] = uniform_pair(index);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace fkt
