#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "ree_lab/hermitian.hpp"

namespace ree_lab {

// Seedable generator with a fixed, platform-independent output stream.
// The engine (mt19937_64) is fully specified by the standard; uniform and
// normal variates are derived here rather than through <random>
// distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64+polar/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Integer uniform on [lo, hi].
  int uniform_int(int lo, int hi);
  double normal();
  // Standard complex normal: real and imaginary parts iid N(0, 1/2).
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Stream seed for trial `index` of `suite` under `master` seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view suite,
                          std::uint64_t index);

// dim x cols matrix of iid standard complex normals.
CMatrix ginibre(int rows, int cols, Rng& rng);

// Haar-random unitary (QR of a Ginibre matrix with phase fix).
CMatrix haar_unitary(int dim, Rng& rng);

}  // namespace ree_lab
