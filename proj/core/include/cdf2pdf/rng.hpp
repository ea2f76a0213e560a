#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cdf2pdf {

// Deterministic random stream. All distributions are implemented here rather
// than taken from <random> so that sequences are identical across standard
// libraries for a given seed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive integer range
  long uniform_int(long lo, long hi);

  // standard normal, Box-Muller
  double normal();

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  // exact Poisson sample; inversion below mean 30, transformed rejection above
  long poisson(double mean);

  // exact Binomial sample; CDF inversion when n*min(p,1-p) is small, Bernoulli
  // count otherwise
  long binomial(long n, double p);

 private:
  std::mt19937_64 eng_;
};

// Child seed for an independent stream, derived from a master seed, a purpose
// label and an index. Derivation: FNV-1a(label) XORed into the master, index
// folded in via the golden-ratio increment, then two splitmix64 rounds.
std::uint64_t child_seed(std::uint64_t master, std::string_view label,
                         std::uint64_t index);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace cdf2pdf
