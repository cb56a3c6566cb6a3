#pragma once

#include <complex>
#include <functional>

#include "yulecrack/quadrature.hpp"

namespace yulecrack {

using Transform = std::function<std::complex<double>(std::complex<double>)>;

/// F(theta) = int_0^inf e^{-theta x} f(x) dx by exp-sinh quadrature. f may have
/// an integrable singularity at 0.
double laplace_transform_num(const quad::Integrand& f, double theta, quad::Options opt = {.rel_tol = 1e-11});

struct InversionResult {
  double value;    ///< estimate with the base node count
  double doubled;  ///< estimate with twice the nodes
  bool flagged;    ///< |value - doubled| > 1e-6
};

/// Inverse Laplace transform at x > 0 on the optimized Talbot contour
/// s(u) = (n/x)(-0.6122 + 0.5017 u cot(0.6407 u) + 0.2645 i u), trapezoid
/// rule with `nodes` points (even), checked against 2 * nodes.
/// F must be analytic to the right of the contour and real on the real axis.
InversionResult laplace_invert(const Transform& F, double x, int nodes = 32);

}  // namespace yulecrack
