#pragma once
// Deterministic randomness helpers. All sampling is built directly on
// std::mt19937_64 output words instead of std:: distributions, whose results
// are implementation-defined; runs must reproduce bit-for-bit across binaries.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oraclust {

// splitmix64 finalizer; good avalanche, used both as a mixer and as a PRF core.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b));
}

// Uniform double in [0,1) from one engine word (53 mantissa bits).
inline double u01_from_word(std::uint64_t w) {
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t word() { return eng_(); }

  double u01() { return u01_from_word(eng_()); }

  // Unbiased integer in [0, n) via rejection on the top multiple of n.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t w;
    do {
      w = eng_();
    } while (w > limit);
    return w % n;
  }

  double normal() {
    // Box-Muller; one spare value cached like the textbook implementation.
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * u01() - 1.0;
      v = 2.0 * u01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  // Fisher-Yates shuffle of indices 0..n-1.
  std::vector<std::uint32_t> permutation(std::uint32_t n) {
    std::vector<std::uint32_t> p(n);
    for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
    for (std::uint32_t i = n; i > 1; --i) {
      const auto j = static_cast<std::uint32_t>(below(i));
      std::swap(p[i - 1], p[j]);
    }
    return p;
  }

  // Sample m distinct indices from [0, n) (order = draw order).
  std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t m);

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

inline std::vector<std::uint32_t> Rng::sample_without_replacement(std::uint32_t n, std::uint32_t m) {
  // Partial Fisher-Yates over an index map; O(m) memory when m << n would need
  // a hash map, but n is desk-scale here so a full vector is fine.
  std::vector<std::uint32_t> idx(n);
  for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
  std::vector<std::uint32_t> out;
  out.reserve(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    const auto j = i + static_cast<std::uint32_t>(below(n - i));
    std::swap(idx[i], idx[j]);
    out.push_back(idx[i]);
  }
  return out;
}

// Index draw from an explicit probability vector via CDF inversion with a
// single u01 variate. probs need not be perfectly normalized.
inline std::size_t sample_index(const std::vector<double>& probs, Rng& rng) {
  double total = 0.0;
  for (double p : probs) total += p;
  const double u = rng.u01() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return probs.size() - 1;  // u == total under rounding
}

}  // namespace oraclust
