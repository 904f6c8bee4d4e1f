#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace csf {

// Deterministic RNG wrapper. std::mt19937_64 output is fully specified by the
// standard, but the standard distributions are not, so the draws used by the
// floorplanner are implemented here by hand. Results are therefore
// reproducible across compilers and standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // splitmix64-style seed mixing for derived streams.
  static std::uint64_t mix(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Derives an independent stream (e.g. one per individual or per run).
  static Rng derive(std::uint64_t master, std::uint64_t stream) {
    return Rng(mix(master, stream));
  }

  std::uint64_t bits() { return eng_(); }

  // Uniform double in [0, 1), 53-bit resolution.
  double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  // Uniform integer in [0, n). Rejection-free modulo bias is irrelevant at
  // the n used here (tie sets, action sets), but keep it exact anyway.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % n;
  }

  bool bernoulli(double p) { return u01() < p; }

  // Index drawn from non-negative weights (sum must be positive).
  std::size_t discrete(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double r = u01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (r < acc) return i;
    }
    return weights.empty() ? 0 : weights.size() - 1;
  }

  bool operator==(const Rng& other) const { return eng_ == other.eng_; }

private:
  std::mt19937_64 eng_;
};

} // namespace csf
