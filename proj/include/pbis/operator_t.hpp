#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pbis/dist3.hpp"

namespace pbis {

inline constexpr double kDefaultTailTol = 1e-10;

// Z = X - Y with X ~ Po(mu_plus), Y ~ Po(mu_minus) independent.
struct SkellamSpec {
  long double mu_plus = 0.0L;
  long double mu_minus = 0.0L;
  double tail_tol = kDefaultTailTol;
};

// Law of Z split into the four events that matter downstream. Every field
// is accumulated from positive terms, and the largest is then replaced by
// one minus the rest, so small masses keep full relative accuracy. Terms
// are summed until the mass that was left out is at most tail_tol times
// each reported mass (or exactly zero).
struct SkellamMasses {
  long double le_minus2 = 0.0L;  // P[Z <= -2]
  long double eq_minus1 = 0.0L;  // P[Z = -1]
  long double eq_zero = 0.0L;    // P[Z = 0]
  long double ge_plus1 = 0.0L;   // P[Z >= 1]
  std::size_t truncation = 0;    // number of terms per sum
};

SkellamMasses skellam_masses(const SkellamSpec& spec);

// Means of the +1-jump and -1-jump Poisson counts obtained by splitting the
// Po(d_plus) and Po(d_minus) marks by value.
SkellamSpec thinned_spec(const Dist3& p, double d_plus, double d_minus,
                         double tail_tol = kDefaultTailTol);

// Law of psi(Z_p): (P[Z <= -1], P[Z = 0], P[Z >= 1]).
Dist3 apply_T_exact(const Dist3& p, double d_plus, double d_minus,
                    double tail_tol = kDefaultTailTol);

// T applied `steps` times starting from p.
Dist3 iterate_T(const Dist3& p, double d_plus, double d_minus, std::size_t steps,
                double tail_tol = kDefaultTailTol);

// Empirical law of psi(Z_p) from direct simulation: Poisson numbers of
// marks, split into values by multinomial draws.
Dist3 apply_T_mc(const Dist3& p, double d_plus, double d_minus, std::uint64_t samples,
                 std::uint64_t seed);

// Expected half-count of conflicting marks, evaluated through the
// size-biased form
//   1/2 [ d_plus  (p(1) P[Z <= -2] + p(-1) P[Z >= 1])
//       + d_minus (p(1) P[Z >= 1]  + p(-1) P[Z <= -2]) ].
double phi_exact(const Dist3& p, double d_plus, double d_minus,
                 double tail_tol = kDefaultTailTol);
long double phi_exact_extended(const Dist3& p, double d_plus, double d_minus,
                               double tail_tol = kDefaultTailTol);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Monte Carlo of the defining expectation; sample mean and its standard error.
McEstimate phi_mc(const Dist3& p, double d_plus, double d_minus, std::uint64_t samples,
                  std::uint64_t seed);

// l1(T p, T q) / l1(p, q); p and q must differ.
double contraction_ratio(const Dist3& p, const Dist3& q, double d_plus, double d_minus,
                         double tail_tol = kDefaultTailTol);

struct FixedPointResult {
  Dist3 p;
  std::size_t iterations = 0;
  bool converged = false;
  bool skewed = false;
  double residual = 0.0;            // l1(T p, p) for the returned p
  // l1(p_{k+1}, p_k) for every pair computed, including the final
  // residual, and whether p_k was skewed.
  std::vector<double> step_sizes;
  std::vector<std::uint8_t> step_skewed;
};

// Iterates T from the point mass at +1 until the last step and the
// residual are below eps and 10 eps respectively, or max_iter steps.
FixedPointResult find_fixed_point(double d_plus, double d_minus, double eps = 1e-12,
                                  std::size_t max_iter = 10000,
                                  double tail_tol = kDefaultTailTol);

}  // namespace pbis
