#ifndef PERC_RNG_HPP
#define PERC_RNG_HPP

#include <cstdint>

#include "perc/lattice.hpp"

namespace perc {

// Counter-based randomness: every draw is a pure function of (key, counter),
// so results do not depend on evaluation order or on the number of workers.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream seed number `stream` under `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// 64 random bits attached to a lattice site. Keyed on the coordinate rather
/// than a region-local id, so nested regions sampled with one seed agree on
/// the sites they share.
constexpr std::uint64_t site_bits(std::uint64_t seed, SiteCoord s) {
  const std::uint64_t packed = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.q)) << 32) |
                               static_cast<std::uint32_t>(s.r);
  return splitmix64(splitmix64(seed) ^ splitmix64(packed ^ 0xd1b54a32d192ed03ULL));
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double site_uniform(std::uint64_t seed, SiteCoord s) {
  return static_cast<double>(site_bits(seed, s) >> 11) * 0x1.0p-53;
}

constexpr double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace perc

#endif  // PERC_RNG_HPP
