#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace bms {

// Deterministic seed derivation so that parallel workers and optimizer
// phases own independent streams regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // uniform in [0, 1)
  double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  double normal();

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n);

  bool bernoulli(double p) { return u01() < p; }

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// k distinct indices from [0, n), uniform, returned sorted ascending.
std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n,
                                                      std::uint32_t k, Rng& rng);

// Fenwick tree over nonnegative weights; used for the S-IRLS subsample
// refresh where selection probabilities are proportional to w_i + eps.
class WeightedSampler {
 public:
  explicit WeightedSampler(std::span<const double> weights);

  void update(std::uint32_t i, double w);
  double total() const;

  // k distinct indices, probability proportional to weight without
  // replacement, sorted ascending. Restores the tree afterwards.
  std::vector<std::uint32_t> sample_without_replacement(std::uint32_t k,
                                                        Rng& rng);

 private:
  std::uint32_t sample_one(Rng& rng) const;
  double weight_of(std::uint32_t i) const;

  std::uint32_t n_;
  std::vector<double> tree_;  // 1-based Fenwick array
};

}  // namespace bms
