#include "cdf2pdf/rng.hpp"

#include <cmath>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

long RngStream::uniform_int(long lo, long hi) {
  if (hi < lo) throw DomainError("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // rejection to avoid modulo bias
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do {
    v = eng_();
  } while (v >= limit);
  return lo + static_cast<long>(v % span);
}

double RngStream::normal() {
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

long RngStream::poisson(double mean) {
  if (!(mean >= 0.0)) throw DomainError("poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    // inversion by sequential search
    double p = std::exp(-mean);
    double cum = p;
    const double u = uniform();
    long k = 0;
    while (u > cum) {
      ++k;
      p *= mean / static_cast<double>(k);
      cum += p;
      if (k > 10000) break;  // u in the far tail beyond double resolution
    }
    return k;
  }
  // Hoermann's PTRS transformed rejection
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        k * log_mean - mean - std::lgamma(k + 1.0)) {
      return static_cast<long>(k);
    }
  }
}

long RngStream::binomial(long n, double p) {
  if (n < 0) throw DomainError("binomial: n must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial: p must be in [0,1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - binomial(n, 1.0 - p);

  const double np = static_cast<double>(n) * p;
  const double log_q = std::log1p(-p);
  if (np <= 25.0 && static_cast<double>(n) * log_q > -700.0) {
    // CDF inversion
    const double odds = p / (1.0 - p);
    double f = std::exp(static_cast<double>(n) * log_q);
    double cum = f;
    const double u = uniform();
    long k = 0;
    while (u > cum && k < n) {
      ++k;
      f *= odds * static_cast<double>(n - k + 1) / static_cast<double>(k);
      cum += f;
    }
    return k;
  }
  // exact fallback: count of successes
  long k = 0;
  for (long i = 0; i < n; ++i) {
    if (uniform() < p) ++k;
  }
  return k;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t child_seed(std::uint64_t master, std::string_view label,
                         std::uint64_t index) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  std::uint64_t x = master ^ h;
  x = splitmix64(x + 0x9e3779b97f4a7c15ull * (index + 1));
  return splitmix64(x);
}

}  // namespace cdf2pdf
