#pragma once

#include <cstdint>
#include <vector>

#include "pbis/rng.hpp"

namespace pbis {

// Inverse-CDF Poisson sampler with a guide table. The table runs until the
// CDF reaches 1 - 2^-53, the resolution of uniform01, so draws are exact
// up to that granularity.
class PoissonSampler {
 public:
  explicit PoissonSampler(double mean);

  double mean() const { return mean_; }
  // Largest value the sampler can return.
  std::uint32_t max_value() const { return static_cast<std::uint32_t>(cdf_.size() - 1); }
  std::uint32_t operator()(Engine& rng) const;
  // Probability of k (0 beyond the table).
  double pmf(std::uint32_t k) const;

 private:
  double mean_;
  std::vector<double> cdf_;
  std::vector<std::uint32_t> guide_;
};

// Binomial(n, q) for a fixed q and any n <= max_n, by inverse CDF over
// per-n tables built up front (same 2^-53 resolution as PoissonSampler).
class BinomialSampler {
 public:
  BinomialSampler(std::uint32_t max_n, long double q);

  std::uint32_t operator()(std::uint32_t n, Engine& rng) const;

 private:
  bool flip_ = false;  // tables hold the complement count
  bool trivial_ = false;
  std::vector<std::size_t> offset_;  // start of the table for n
  std::vector<double> cdf_;
};

// Binomial(n, q). Small success probabilities use geometric skipping so
// that q close to 0 or 1 costs O(1 + n min(q, 1-q)).
std::uint32_t sample_binomial(std::uint32_t n, long double q, Engine& rng);

}  // namespace pbis
