#include "yulecrack/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "yulecrack/error.hpp"

namespace yulecrack::quad {
namespace {

double checked(double v, const char* rule) {
  if (!std::isfinite(v)) throw ConvergenceError(std::string(rule) + ": non-finite integral");
  return v;
}

}  // namespace

double integrate(const Integrand& f, double a, double b, Options opt) {
  if (a == b) return 0.0;
  double err = 0.0;
  try {
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, a, b, opt.max_depth, opt.rel_tol, &err);
    return checked(v, "gauss-kronrod");
  } catch (const ConvergenceError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConvergenceError(std::string("gauss-kronrod: ") + e.what());
  }
}

double integrate_singular(const Integrand& f, double a, double b, Options opt) {
  if (a == b) return 0.0;
  try {
    static thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
    return checked(rule.integrate(f, a, b, opt.rel_tol), "tanh-sinh");
  } catch (const ConvergenceError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConvergenceError(std::string("tanh-sinh: ") + e.what());
  }
}

double integrate_endpoints(const EndpointIntegrand& f, double a, double b, Options opt) {
  if (a == b) return 0.0;
  const double len = b - a;
  // tanh-sinh hands over the exact distance to the nearer endpoint; recover
  // both distances without cancellation.
  auto g = [&](double x, double xc) {
    return xc <= 0.0 ? f(x, -xc, len + xc) : f(x, len - xc, xc);
  };
  try {
    static thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
    return checked(rule.integrate(g, a, b, opt.rel_tol), "tanh-sinh");
  } catch (const ConvergenceError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConvergenceError(std::string("tanh-sinh: ") + e.what());
  }
}

double integrate_to_infinity(const Integrand& f, double a, Options opt) {
  try {
    static thread_local boost::math::quadrature::exp_sinh<double> rule(12);
    return checked(rule.integrate(f, a, std::numeric_limits<double>::infinity(), opt.rel_tol),
                   "exp-sinh");
  } catch (const ConvergenceError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConvergenceError(std::string("exp-sinh: ") + e.what());
  }
}

double integrate_pieces(const Integrand& f, std::span<const double> breakpoints, bool to_infinity,
                        Options opt) {
  double total = 0.0;
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    total += integrate(f, breakpoints[i - 1], breakpoints[i], opt);
  if (to_infinity && !breakpoints.empty()) total += integrate_to_infinity(f, breakpoints.back(), opt);
  return total;
}

}  // namespace yulecrack::quad
