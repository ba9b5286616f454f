#pragma once

#include <cstdint>
#include <random>

namespace ofa {

/// Simulation engine. The standard fully specifies the mt19937_64 output
/// sequence, so seeded streams reproduce across platforms and toolchains.
using Rng = std::mt19937_64;

/// Uniform draw on the open interval (0, 1) with 53 random bits. Built from
/// raw engine output rather than std::uniform_real_distribution, whose
/// algorithm is implementation-defined.
inline double unit_uniform(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Engine for an independent sub-stream, keyed by (seed, stream).
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

}  // namespace ofa
