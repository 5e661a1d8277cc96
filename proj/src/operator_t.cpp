#include "pbis/operator_t.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "pbis/poisson_sampler.hpp"
#include "pbis/rng.hpp"
#include "pbis/wp_engine.hpp"

namespace pbis {
namespace {

constexpr std::size_t kMaxTruncation = std::size_t{1} << 22;

void check_degrees(double d_plus, double d_minus) {
  if (!(d_plus >= 0.0) || !(d_minus >= 0.0) || !std::isfinite(d_plus) ||
      !std::isfinite(d_minus)) {
    throw InvalidArgument("degrees must be finite and nonnegative");
  }
}

void check_tail_tol(double tail_tol) {
  if (!(tail_tol > 0.0) || tail_tol > 1e-6) {
    throw InvalidArgument("tail_tol must lie in (0, 1e-6]");
  }
}

// pmf[k] = P[X = k] and tail[k] = P[X >= k] for k < size. The tail is
// accumulated from the top so that small tails keep relative accuracy.
struct PoissonTable {
  std::vector<long double> pmf;
  std::vector<long double> tail;

  PoissonTable(long double mu, std::size_t size) : pmf(size, 0.0L), tail(size, 0.0L) {
    if (mu == 0.0L) {
      pmf[0] = 1.0L;
      tail[0] = 1.0L;
      return;
    }
    const long double log_mu = std::log(mu);
    for (std::size_t k = 0; k < size; ++k) {
      const auto kk = static_cast<long double>(k);
      pmf[k] = std::exp(kk * log_mu - mu - std::lgamma(kk + 1.0L));
    }
    tail[size - 1] = boost::math::gamma_p(static_cast<long double>(size - 1), mu);
    for (std::size_t k = size - 1; k-- > 0;) tail[k] = tail[k + 1] + pmf[k];
  }
};

bool dropped_ok(long double bound, long double mass, double tol) {
  return bound == 0.0L || bound <= static_cast<long double>(tol) * mass;
}

}  // namespace

SkellamMasses skellam_masses(const SkellamSpec& spec) {
  if (!(spec.mu_plus >= 0.0L) || !(spec.mu_minus >= 0.0L) || !std::isfinite(spec.mu_plus) ||
      !std::isfinite(spec.mu_minus)) {
    throw InvalidArgument("skellam: means must be finite and nonnegative");
  }
  check_tail_tol(spec.tail_tol);

  const long double mu_max = std::max(spec.mu_plus, spec.mu_minus);
  std::size_t terms =
      static_cast<std::size_t>(std::ceil(mu_max + 12.0L * std::sqrt(mu_max) + 30.0L));
  while (true) {
    if (terms > kMaxTruncation) {
      throw ToleranceNotMet("skellam: truncation budget exhausted at mu = (" +
                            std::to_string(static_cast<double>(spec.mu_plus)) + ", " +
                            std::to_string(static_cast<double>(spec.mu_minus)) + ")");
    }
    const std::size_t size = terms + 3;
    const PoissonTable x(spec.mu_plus, size);
    const PoissonTable y(spec.mu_minus, size);

    SkellamMasses m;
    for (std::size_t k = 0; k < terms; ++k) {
      m.le_minus2 += x.pmf[k] * y.tail[k + 2];
      m.eq_minus1 += x.pmf[k] * y.pmf[k + 1];
      m.eq_zero += x.pmf[k] * y.pmf[k];
      m.ge_plus1 += y.pmf[k] * x.tail[k + 1];
    }
    // Mass of the terms k >= terms, bounded by products of tails.
    const std::size_t K = terms;
    const bool ok = dropped_ok(x.tail[K] * y.tail[K + 2], m.le_minus2, spec.tail_tol) &&
                    dropped_ok(x.tail[K] * y.tail[K + 1], m.eq_minus1, spec.tail_tol) &&
                    dropped_ok(x.tail[K] * y.tail[K], m.eq_zero, spec.tail_tol) &&
                    dropped_ok(y.tail[K] * x.tail[K + 1], m.ge_plus1, spec.tail_tol);
    if (!ok) {
      terms *= 2;
      continue;
    }
    std::array<long double*, 4> parts{&m.le_minus2, &m.eq_minus1, &m.eq_zero, &m.ge_plus1};
    std::size_t big = 0;
    for (std::size_t i = 1; i < 4; ++i) {
      if (*parts[i] > *parts[big]) big = i;
    }
    long double others = 0.0L;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i != big) others += *parts[i];
    }
    *parts[big] = std::max(0.0L, 1.0L - others);
    m.truncation = terms;
    return m;
  }
}

SkellamSpec thinned_spec(const Dist3& p, double d_plus, double d_minus, double tail_tol) {
  check_degrees(d_plus, d_minus);
  const auto m = p.precise();
  SkellamSpec s;
  s.mu_plus = d_plus * m[2] + d_minus * m[0];
  s.mu_minus = d_plus * m[0] + d_minus * m[2];
  s.tail_tol = tail_tol;
  return s;
}

Dist3 apply_T_exact(const Dist3& p, double d_plus, double d_minus, double tail_tol) {
  const auto m = skellam_masses(thinned_spec(p, d_plus, d_minus, tail_tol));
  return Dist3(static_cast<double>(m.le_minus2 + m.eq_minus1), static_cast<double>(m.eq_zero),
               static_cast<double>(m.ge_plus1));
}

Dist3 iterate_T(const Dist3& p, double d_plus, double d_minus, std::size_t steps,
                double tail_tol) {
  Dist3 q = p;
  for (std::size_t s = 0; s < steps; ++s) q = apply_T_exact(q, d_plus, d_minus, tail_tol);
  return q;
}

namespace {

struct MarkCounts {
  std::uint32_t minus = 0;
  std::uint32_t zero = 0;
  std::uint32_t plus = 0;
};

// Splits n i.i.d. marks by value: the two smaller masses are drawn as
// binomials, the dominant value takes the rest.
class MarkSplitter {
 public:
  MarkSplitter(const Dist3& p, std::uint32_t max_n) {
    const auto m = p.precise();
    dom_ = static_cast<std::size_t>(p.dominant());
    std::size_t j = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      if (i != dom_) idx_[j++] = i;
    }
    const long double first = m[idx_[0]];
    const long double rest = 1.0L - first;
    const long double second = rest > 0.0L ? std::min(1.0L, m[idx_[1]] / rest) : 0.0L;
    first_.emplace(max_n, first);
    second_.emplace(max_n, second);
  }

  MarkCounts operator()(std::uint32_t n, Engine& rng) const {
    std::array<std::uint32_t, 3> c{};
    c[idx_[0]] = (*first_)(n, rng);
    c[idx_[1]] = (*second_)(n - c[idx_[0]], rng);
    c[dom_] = n - c[idx_[0]] - c[idx_[1]];
    return {c[0], c[1], c[2]};
  }

 private:
  std::size_t dom_ = 2;
  std::array<std::size_t, 2> idx_{};
  std::optional<BinomialSampler> first_;
  std::optional<BinomialSampler> second_;
};

}  // namespace

Dist3 apply_T_mc(const Dist3& p, double d_plus, double d_minus, std::uint64_t samples,
                 std::uint64_t seed) {
  check_degrees(d_plus, d_minus);
  if (samples < 1) throw InvalidArgument("apply_T_mc: need at least one sample");
  Engine rng = make_engine(seed, "operator_t.mc");
  const PoissonSampler same(d_plus);
  const PoissonSampler cross(d_minus);
  const MarkSplitter split(p, std::max(same.max_value(), cross.max_value()));
  std::array<std::uint64_t, 3> hits{};
  for (std::uint64_t s = 0; s < samples; ++s) {
    const MarkCounts a = split(same(rng), rng);
    const MarkCounts b = split(cross(rng), rng);
    const long long z = (static_cast<long long>(a.plus) - a.minus) -
                        (static_cast<long long>(b.plus) - b.minus);
    ++hits[static_cast<std::size_t>(psi(z) + 1)];
  }
  const auto n = static_cast<double>(samples);
  return Dist3(static_cast<double>(hits[0]) / n, static_cast<double>(hits[1]) / n,
               static_cast<double>(hits[2]) / n);
}

long double phi_exact_extended(const Dist3& p, double d_plus, double d_minus, double tail_tol) {
  const auto z = skellam_masses(thinned_spec(p, d_plus, d_minus, tail_tol));
  const auto m = p.precise();
  const long double le_m2 = z.le_minus2;
  const long double ge_p1 = z.ge_plus1;
  return 0.5L * (static_cast<long double>(d_plus) * (m[2] * le_m2 + m[0] * ge_p1) +
                 static_cast<long double>(d_minus) * (m[2] * ge_p1 + m[0] * le_m2));
}

double phi_exact(const Dist3& p, double d_plus, double d_minus, double tail_tol) {
  return static_cast<double>(phi_exact_extended(p, d_plus, d_minus, tail_tol));
}

McEstimate phi_mc(const Dist3& p, double d_plus, double d_minus, std::uint64_t samples,
                  std::uint64_t seed) {
  check_degrees(d_plus, d_minus);
  if (samples < 1) throw InvalidArgument("phi_mc: need at least one sample");
  Engine rng = make_engine(seed, "operator_t.phi_mc");
  const PoissonSampler same(d_plus);
  const PoissonSampler cross(d_minus);
  const MarkSplitter split(p, std::max(same.max_value(), cross.max_value()));
  // Values are half-integers; accumulate doubled values exactly.
  std::uint64_t sum = 0;
  long double sum_sq = 0.0L;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const MarkCounts a = split(same(rng), rng);
    const MarkCounts b = split(cross(rng), rng);
    const long long z = (static_cast<long long>(a.plus) - a.minus) -
                        (static_cast<long long>(b.plus) - b.minus);
    const bool up = psi_tilde(z) == 1;
    // Same-class marks conflict when opposite to the decision, cross-class
    // marks when equal to it.
    const std::uint64_t twice = (up ? a.minus : a.plus) + (up ? b.plus : b.minus);
    sum += twice;
    sum_sq += static_cast<long double>(twice) * twice;
  }
  const auto n = static_cast<long double>(samples);
  const long double mean2 = static_cast<long double>(sum) / n;
  McEstimate est;
  est.mean = static_cast<double>(0.5L * mean2);
  if (samples > 1) {
    const long double var2 = std::max(0.0L, (sum_sq - n * mean2 * mean2) / (n - 1.0L));
    est.std_error = static_cast<double>(0.5L * std::sqrt(var2 / n));
  }
  return est;
}

double contraction_ratio(const Dist3& p, const Dist3& q, double d_plus, double d_minus,
                         double tail_tol) {
  const double base = wasserstein1(p, q);
  if (base == 0.0) throw InvalidArgument("contraction_ratio: p and q must differ");
  const Dist3 tp = apply_T_exact(p, d_plus, d_minus, tail_tol);
  const Dist3 tq = apply_T_exact(q, d_plus, d_minus, tail_tol);
  return wasserstein1(tp, tq) / base;
}

}  // namespace pbis
