#include "bmc/rng.hpp"

namespace bmc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed ^ splitmix64(tag));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag1, std::uint64_t tag2) {
  return derive_seed(derive_seed(seed, tag1), tag2);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag1, std::uint64_t tag2,
                          std::uint64_t tag3) {
  return derive_seed(derive_seed(seed, tag1, tag2), tag3);
}

}  // namespace bmc
