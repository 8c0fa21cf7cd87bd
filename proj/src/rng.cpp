#include "bms/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace bms {

namespace {
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ull * (stream + 1));
  splitmix64(s);
  return splitmix64(s);
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double r = std::sqrt(-2.0 * std::log(1.0 - u01()));
  const double theta = 2.0 * std::numbers::pi * u01();
  cached_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
  const std::uint64_t limit = ~0ull - ~0ull % n;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % n;
}

std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n,
                                                      std::uint32_t k,
                                                      Rng& rng) {
  if (k > n)
    throw std::invalid_argument("sample_without_replacement: k > n");
  std::vector<std::uint32_t> out;
  out.reserve(k);
  if (k == n) {
    for (std::uint32_t i = 0; i < n; ++i) out.push_back(i);
    return out;
  }
  // Floyd's algorithm
  std::unordered_set<std::uint32_t> seen;
  seen.reserve(k * 2);
  for (std::uint32_t j = n - k; j < n; ++j) {
    const auto t = static_cast<std::uint32_t>(rng.below(j + 1));
    if (!seen.insert(t).second) seen.insert(j), out.push_back(j);
    else out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

WeightedSampler::WeightedSampler(std::span<const double> weights)
    : n_(static_cast<std::uint32_t>(weights.size())), tree_(n_ + 1, 0.0) {
  for (std::uint32_t i = 0; i < n_; ++i) tree_[i + 1] = weights[i];
  for (std::uint32_t i = 1; i <= n_; ++i) {
    const std::uint32_t parent = i + (i & (~i + 1));
    if (parent <= n_) tree_[parent] += tree_[i];
  }
}

double WeightedSampler::weight_of(std::uint32_t i) const {
  double w = tree_[i + 1];
  const std::uint32_t lo = (i + 1) - ((i + 1) & (~(i + 1) + 1));
  for (std::uint32_t j = i; j > lo; j -= j & (~j + 1)) w -= tree_[j];
  return w;
}

void WeightedSampler::update(std::uint32_t i, double w) {
  const double delta = w - weight_of(i);
  for (std::uint32_t j = i + 1; j <= n_; j += j & (~j + 1)) tree_[j] += delta;
}

double WeightedSampler::total() const {
  double t = 0.0;
  for (std::uint32_t j = n_; j > 0; j -= j & (~j + 1)) t += tree_[j];
  return t;
}

std::uint32_t WeightedSampler::sample_one(Rng& rng) const {
  double target = rng.u01() * total();
  std::uint32_t pos = 0;
  std::uint32_t step = 1;
  while (step * 2 <= n_) step *= 2;
  for (; step > 0; step /= 2) {
    const std::uint32_t next = pos + step;
    if (next <= n_ && tree_[next] < target) {
      target -= tree_[next];
      pos = next;
    }
  }
  return pos < n_ ? pos : n_ - 1;
}

std::vector<std::uint32_t> WeightedSampler::sample_without_replacement(
    std::uint32_t k, Rng& rng) {
  if (k > n_)
    throw std::invalid_argument("WeightedSampler: k > n");
  std::vector<std::uint32_t> out;
  out.reserve(k);
  if (k == n_) {
    for (std::uint32_t i = 0; i < n_; ++i) out.push_back(i);
    return out;
  }
  std::vector<std::pair<std::uint32_t, double>> removed;
  removed.reserve(k);
  for (std::uint32_t d = 0; d < k; ++d) {
    std::uint32_t idx = sample_one(rng);
    if (weight_of(idx) <= 0.0) {
      // cumulative rounding can land on an already-removed index
      std::uint32_t probe = idx;
      do {
        probe = probe + 1 < n_ ? probe + 1 : 0;
      } while (weight_of(probe) <= 0.0 && probe != idx);
      idx = probe;
    }
    removed.emplace_back(idx, weight_of(idx));
    update(idx, 0.0);
    out.push_back(idx);
  }
  for (const auto& [idx, w] : removed) update(idx, w);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bms
