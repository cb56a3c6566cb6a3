#include "yulecrack/laplace.hpp"

#include <cmath>
#include <numbers>

#include "yulecrack/error.hpp"

namespace yulecrack {
namespace {

constexpr double kFlagTol = 1e-6;

double talbot(const Transform& F, double x, int n) {
  using C = std::complex<double>;
  const double scale = n / x;
  double acc = 0.0;
  // Conjugate symmetry: only the upper half of the contour is summed.
  for (int k = 0; k < n / 2; ++k) {
    const double u = (2 * k + 1) * std::numbers::pi / n;
    const double cot = 1.0 / std::tan(0.6407 * u);
    const double sn = std::sin(0.6407 * u);
    const C s = scale * C(-0.6122 + 0.5017 * u * cot, 0.2645 * u);
    const C ds = scale * C(0.5017 * (cot - 0.6407 * u / (sn * sn)), 0.2645);
    acc += std::imag(std::exp(s * x) * F(s) * ds);
  }
  return 2.0 * acc / n;
}

}  // namespace

double laplace_transform_num(const quad::Integrand& f, double theta, quad::Options opt) {
  detail::require(theta > 0.0, "laplace_transform_num: theta must be > 0");
  return quad::integrate_to_infinity([&](double x) { return x <= 0.0 ? 0.0 : std::exp(-theta * x) * f(x); }, 0.0,
                                     opt);
}

InversionResult laplace_invert(const Transform& F, double x, int nodes) {
  detail::require(x > 0.0, "laplace_invert: x must be > 0");
  detail::require(nodes >= 4 && nodes % 2 == 0, "laplace_invert: nodes must be even and >= 4");
  const double v = talbot(F, x, nodes);
  const double w = talbot(F, x, 2 * nodes);
  if (!std::isfinite(v) || !std::isfinite(w)) throw ConvergenceError("laplace_invert: non-finite contour sum");
  return {v, w, std::abs(v - w) > kFlagTol};
}

}  // namespace yulecrack
