#include "pbis/dist3.hpp"

#include <cfloat>
#include <cmath>
#include <sstream>

namespace pbis {

Dist3::Dist3(double m, double z, double p) {
  if (!(m >= 0.0) || !(z >= 0.0) || !(p >= 0.0)) {
    throw InvalidArgument("Dist3: masses must be nonnegative and finite");
  }
  const long double sum = static_cast<long double>(m) + z + p;
  if (!(std::fabs(static_cast<double>(sum - 1.0L)) <= 1e-12)) {
    throw InvalidArgument("Dist3: masses must sum to 1");
  }
  minus = static_cast<double>(m / sum);
  zero = static_cast<double>(z / sum);
  plus = static_cast<double>(p / sum);
}

Dist3 Dist3::point(int value) {
  switch (value) {
    case -1: return {1.0, 0.0, 0.0};
    case 0: return {0.0, 1.0, 0.0};
    case 1: return {0.0, 0.0, 1.0};
    default: throw InvalidArgument("Dist3::point: value must be -1, 0 or 1");
  }
}

double Dist3::operator[](int value) const {
  switch (value) {
    case -1: return minus;
    case 0: return zero;
    case 1: return plus;
    default: throw InvalidArgument("Dist3: value must be -1, 0 or 1");
  }
}

int Dist3::dominant() const {
  int best = 2;
  if (zero > plus) best = 1;
  if (minus > (best == 2 ? plus : zero)) best = 0;
  return best;
}

std::array<long double, 3> Dist3::precise() const {
  std::array<long double, 3> m{minus, zero, plus};
  const int d = dominant();
  long double others = 0.0L;
  for (int i = 0; i < 3; ++i) {
    if (i != d) others += m[static_cast<std::size_t>(i)];
  }
  m[static_cast<std::size_t>(d)] = 1.0L - others;
  return m;
}

std::string Dist3::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << "(" << minus << ", " << zero << ", " << plus << ")";
  return os.str();
}

Dist3 bar_swap(const Dist3& p) {
  Dist3 out;
  out.minus = p.plus;
  out.zero = p.zero;
  out.plus = p.minus;
  return out;
}

namespace {

// Coordinate differences p - q; the one with the largest combined mass is
// rebuilt from the other two, since all three must sum to zero.
std::array<long double, 3> mass_deltas(const Dist3& p, const Dist3& q) {
  const std::array<double, 3> a{p.minus, p.zero, p.plus};
  const std::array<double, 3> b{q.minus, q.zero, q.plus};
  std::size_t big = 2;
  for (std::size_t i : {std::size_t{1}, std::size_t{0}}) {
    if (a[i] + b[i] > a[big] + b[big]) big = i;
  }
  std::array<long double, 3> delta{};
  long double others = 0.0L;
  for (std::size_t i = 0; i < 3; ++i) {
    if (i == big) continue;
    delta[i] = static_cast<long double>(a[i]) - b[i];
    others += delta[i];
  }
  delta[big] = -others;
  return delta;
}

}  // namespace

double wasserstein1(const Dist3& p, const Dist3& q) {
  const auto d = mass_deltas(p, q);
  return static_cast<double>(std::fabs(d[0]) + std::fabs(d[2]));
}

double total_variation(const Dist3& p, const Dist3& q) {
  const auto d = mass_deltas(p, q);
  return static_cast<double>(0.5L * (std::fabs(d[0]) + std::fabs(d[1]) + std::fabs(d[2])));
}

long double skew_allowance(double d_plus) {
  if (!(d_plus > 1.0)) return 0.0L;
  return std::exp(-10.0L * std::log(static_cast<long double>(d_plus)));
}

bool is_skewed(const Dist3& p, double d_plus) {
  const long double deficit = static_cast<long double>(p.minus) + p.zero;
  // A few ulps of slack so that a boundary value written as a double
  // (e.g. 1e-10 for d_plus = 10) is accepted.
  return deficit <= skew_allowance(d_plus) * (1.0L + 8.0L * DBL_EPSILON);
}

}  // namespace pbis
