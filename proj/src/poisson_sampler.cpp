#include "pbis/poisson_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pbis/errors.hpp"

namespace pbis {

PoissonSampler::PoissonSampler(double mean) : mean_(mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw InvalidArgument("PoissonSampler: mean must be finite and nonnegative");
  }
  constexpr long double kTop = 1.0L - 0x1.0p-53L;
  const long double mu = mean;
  const std::size_t limit =
      static_cast<std::size_t>(mean + 60.0 * std::sqrt(mean) + 60.0);
  long double cdf = 0.0L;
  for (std::size_t k = 0; k <= limit; ++k) {
    long double pmf;
    if (mu == 0.0L) {
      pmf = k == 0 ? 1.0L : 0.0L;
    } else {
      pmf = std::exp(static_cast<long double>(k) * std::log(mu) - mu -
                     std::lgamma(static_cast<long double>(k) + 1.0L));
    }
    cdf += pmf;
    cdf_.push_back(static_cast<double>(cdf));
    if (cdf >= kTop) break;
  }
  cdf_.back() = 1.0;

  const std::size_t buckets = cdf_.size();
  guide_.resize(buckets);
  std::uint32_t k = 0;
  for (std::size_t j = 0; j < buckets; ++j) {
    const double u = static_cast<double>(j) / static_cast<double>(buckets);
    while (cdf_[k] <= u) ++k;
    guide_[j] = k;
  }
}

std::uint32_t PoissonSampler::operator()(Engine& rng) const {
  const double u = uniform01(rng);
  std::uint32_t k = guide_[static_cast<std::size_t>(u * static_cast<double>(guide_.size()))];
  while (cdf_[k] <= u) ++k;
  return k;
}

double PoissonSampler::pmf(std::uint32_t k) const {
  if (k >= cdf_.size()) return 0.0;
  return k == 0 ? cdf_[0] : cdf_[k] - cdf_[k - 1];
}

BinomialSampler::BinomialSampler(std::uint32_t max_n, long double q) {
  if (!(q >= 0.0L) || !(q <= 1.0L)) throw InvalidArgument("BinomialSampler: q outside [0, 1]");
  flip_ = q > 0.5L;
  if (flip_) q = 1.0L - q;
  trivial_ = q == 0.0L;
  if (trivial_) return;
  constexpr long double kTop = 1.0L - 0x1.0p-53L;
  const long double ratio = q / (1.0L - q);
  offset_.reserve(static_cast<std::size_t>(max_n) + 2);
  for (std::uint32_t n = 0; n <= max_n; ++n) {
    offset_.push_back(cdf_.size());
    long double pmf = std::pow(1.0L - q, static_cast<long double>(n));
    long double cdf = pmf;
    cdf_.push_back(static_cast<double>(cdf));
    for (std::uint32_t k = 0; k < n && cdf < kTop; ++k) {
      pmf *= ratio * static_cast<long double>(n - k) / static_cast<long double>(k + 1);
      cdf += pmf;
      cdf_.push_back(static_cast<double>(cdf));
    }
    cdf_.back() = 1.0;
  }
  offset_.push_back(cdf_.size());
}

std::uint32_t BinomialSampler::operator()(std::uint32_t n, Engine& rng) const {
  if (trivial_) return flip_ ? n : 0;
  if (n + 1 >= offset_.size()) throw InvalidArgument("BinomialSampler: n above table size");
  const double* first = cdf_.data() + offset_[n];
  const double* last = cdf_.data() + offset_[n + 1];
  const auto k = static_cast<std::uint32_t>(std::upper_bound(first, last, uniform01(rng)) - first);
  return flip_ ? n - k : k;
}

std::uint32_t sample_binomial(std::uint32_t n, long double q, Engine& rng) {
  if (n == 0 || q <= 0.0L) return 0;
  if (q >= 1.0L) return n;
  if (q > 0.5L) return n - sample_binomial(n, 1.0L - q, rng);
  if (static_cast<long double>(n) * q < 8.0L) {
    // Gaps between successes are geometric.
    const long double log_fail = std::log1p(-q);
    std::uint32_t count = 0;
    long double pos = -1.0L;
    while (true) {
      const long double u = 1.0L - static_cast<long double>(uniform01(rng));  // (0, 1]
      pos += std::floor(std::log(u) / log_fail) + 1.0L;
      if (pos >= static_cast<long double>(n)) break;
      ++count;
    }
    return count;
  }
  std::binomial_distribution<std::uint32_t> dist(n, static_cast<double>(q));
  return dist(rng);
}

}  // namespace pbis
