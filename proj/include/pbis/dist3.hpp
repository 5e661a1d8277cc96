#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pbis/errors.hpp"

namespace pbis {

// Probability distribution on {-1, 0, +1}.
//
// The three masses are stored as doubles. Near a point mass the dominant
// coordinate rounds to 1 while the others stay representable (e.g. 1e-76),
// so anything that needs the dominant mass exactly uses precise(), which
// rebuilds it as one minus the other two in extended precision.
struct Dist3 {
  double minus = 0.0;
  double zero = 1.0;
  double plus = 0.0;

  Dist3() = default;
  // Validates nonnegativity and |sum - 1| <= 1e-12, then renormalizes.
  Dist3(double m, double z, double p);

  static Dist3 point(int value);

  double operator[](int value) const;
  // Index (0, 1, 2 for -1, 0, +1) of the largest mass; ties to the higher value.
  int dominant() const;
  // Masses with the dominant one recomputed as 1 - (others).
  std::array<long double, 3> precise() const;

  std::vector<double> to_vector() const { return {minus, zero, plus}; }
  std::string to_string() const;

  friend bool operator==(const Dist3&, const Dist3&) = default;
};

// Swap the masses of -1 and +1.
Dist3 bar_swap(const Dist3& p);

// Optimal-transport distance with |x - y| cost on {-1, 0, 1}:
// |p(-1) - q(-1)| + |p(1) - q(1)|.
double wasserstein1(const Dist3& p, const Dist3& q);

// Half the l1 distance between the mass vectors.
double total_variation(const Dist3& p, const Dist3& q);

// p(1) >= 1 - d_plus^-10, i.e. p(-1) + p(0) <= d_plus^-10, evaluated in
// extended precision. For d_plus <= 1 the bound is vacuous and only the
// point mass at +1 counts as skewed.
bool is_skewed(const Dist3& p, double d_plus);

// d_plus^-10 in extended precision (0 for d_plus <= 1).
long double skew_allowance(double d_plus);

}  // namespace pbis
