#pragma once

#include <functional>
#include <span>

namespace yulecrack::quad {

using Integrand = std::function<double(double)>;

struct Options {
  double rel_tol = 1e-10;
  unsigned max_depth = 18;
};

/// Adaptive Gauss-Kronrod (61 points) on a finite interval with smooth integrand.
double integrate(const Integrand& f, double a, double b, Options opt = {});

/// Double-exponential (tanh-sinh) rule on a finite interval; tolerates
/// integrable singularities at either endpoint.
double integrate_singular(const Integrand& f, double a, double b, Options opt = {});

/// f(x, x - a, b - x) with both distances exact near the endpoints.
using EndpointIntegrand = std::function<double(double, double, double)>;

/// tanh-sinh for integrands singular at both ends of [a, b], where the
/// singular factors should be evaluated from the endpoint distances rather
/// than from x itself.
double integrate_endpoints(const EndpointIntegrand& f, double a, double b, Options opt = {});

/// Integral over [a, +inf) by the exp-sinh rule; tolerates an integrable
/// singularity at a.
double integrate_to_infinity(const Integrand& f, double a, Options opt = {});

/// Sum of adaptive integrals over consecutive breakpoints. When `to_infinity`
/// is set the last piece runs from the final breakpoint to +inf.
double integrate_pieces(const Integrand& f, std::span<const double> breakpoints, bool to_infinity,
                        Options opt = {});

}  // namespace yulecrack::quad
