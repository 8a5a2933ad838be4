#pragma once

#include <cstdint>
#include <random>

namespace bmc {

// All randomness in the project flows through mt19937_64 engines whose seeds
// are derived from a user seed plus integer tags via splitmix64 mixing, so
// that distinct streams never alias and every run is reproducible.
std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag1, std::uint64_t tag2);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag1, std::uint64_t tag2,
                          std::uint64_t tag3);

inline std::mt19937_64 make_engine(std::uint64_t derived_seed) {
  return std::mt19937_64{derived_seed};
}

}  // namespace bmc
