#include <cmath>

#include "pbis/operator_t.hpp"

namespace pbis {

FixedPointResult find_fixed_point(double d_plus, double d_minus, double eps,
                                  std::size_t max_iter, double tail_tol) {
  if (!(eps > 0.0)) throw InvalidArgument("find_fixed_point: eps must be positive");
  FixedPointResult r;
  Dist3 p = Dist3::point(1);
  Dist3 tp = apply_T_exact(p, d_plus, d_minus, tail_tol);
  r.residual = wasserstein1(tp, p);
  while (r.iterations < max_iter) {
    const double step = wasserstein1(tp, p);
    r.step_sizes.push_back(step);
    r.step_skewed.push_back(is_skewed(p, d_plus) ? 1 : 0);
    p = tp;
    ++r.iterations;
    tp = apply_T_exact(p, d_plus, d_minus, tail_tol);
    r.residual = wasserstein1(tp, p);
    if (step < eps && r.residual < 10.0 * eps) {
      r.step_sizes.push_back(r.residual);
      r.step_skewed.push_back(is_skewed(p, d_plus) ? 1 : 0);
      r.converged = true;
      break;
    }
  }
  r.p = p;
  r.skewed = is_skewed(p, d_plus);
  return r;
}

}  // namespace pbis
