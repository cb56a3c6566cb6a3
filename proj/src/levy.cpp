#include "yulecrack/levy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "yulecrack/error.hpp"
#include "yulecrack/specfun.hpp"

namespace yulecrack {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr long kMaxRejections = 1'000'000;

}  // namespace

BernsteinFamily BernsteinFamily::linear() { return BernsteinFamily(family::Linear{}); }

BernsteinFamily BernsteinFamily::stable(double alpha) {
  detail::require(alpha > 0.0 && alpha <= 1.0, "stable: alpha must lie in (0, 1]");
  if (alpha == 1.0) return linear();
  return BernsteinFamily(family::Stable{alpha});
}

BernsteinFamily BernsteinFamily::tempered_stable(double alpha, double mu) {
  detail::require(alpha > 0.0 && alpha <= 1.0, "tempered: alpha must lie in (0, 1]");
  detail::require(mu > 0.0 && std::isfinite(mu), "tempered: mu must be > 0");
  if (alpha == 1.0) return linear();
  return BernsteinFamily(family::TemperedStable{alpha, mu});
}

BernsteinFamily BernsteinFamily::gamma(double b) {
  detail::require(b > 0.0 && std::isfinite(b), "gamma: b must be > 0");
  return BernsteinFamily(family::GammaSub{b});
}

BernsteinFamily BernsteinFamily::poisson(double kappa) {
  detail::require(kappa > 0.0 && std::isfinite(kappa), "poisson: kappa must be > 0");
  return BernsteinFamily(family::PoissonSub{kappa});
}

std::string BernsteinFamily::tag() const {
  return std::visit(overloaded{[](const family::Linear&) { return "exp"; },
                               [](const family::Stable&) { return "stable"; },
                               [](const family::TemperedStable&) { return "tempered"; },
                               [](const family::GammaSub&) { return "gamma"; },
                               [](const family::PoissonSub&) { return "poisson"; }},
                    v_);
}

std::string BernsteinFamily::describe() const {
  std::ostringstream os;
  std::visit(overloaded{[&](const family::Linear&) { os << "exp"; },
                        [&](const family::Stable& s) { os << "stable(alpha=" << s.alpha << ")"; },
                        [&](const family::TemperedStable& s) {
                          os << "tempered(alpha=" << s.alpha << ", mu=" << s.mu << ")";
                        },
                        [&](const family::GammaSub& s) { os << "gamma(b=" << s.b << ")"; },
                        [&](const family::PoissonSub& s) { os << "poisson(kappa=" << s.kappa << ")"; }},
             v_);
  return os.str();
}

double laplace_exponent(const BernsteinFamily& f, double theta) {
  detail::require(theta >= 0.0, "laplace_exponent: theta must be >= 0");
  return std::visit(
      overloaded{[&](const family::Linear&) { return theta; },
                 [&](const family::Stable& s) { return std::pow(theta, s.alpha); },
                 [&](const family::TemperedStable& s) {
                   return std::pow(s.mu + theta, s.alpha) - std::pow(s.mu, s.alpha);
                 },
                 [&](const family::GammaSub& s) { return std::log1p(theta / s.b); },
                 [&](const family::PoissonSub& s) { return -s.kappa * std::expm1(-theta); }},
      f.variant());
}

std::complex<double> laplace_exponent(const BernsteinFamily& f, std::complex<double> theta) {
  using C = std::complex<double>;
  return std::visit(
      overloaded{[&](const family::Linear&) { return theta; },
                 [&](const family::Stable& s) { return std::pow(theta, s.alpha); },
                 [&](const family::TemperedStable& s) {
                   return std::pow(s.mu + theta, s.alpha) - C(std::pow(s.mu, s.alpha));
                 },
                 [&](const family::GammaSub& s) { return std::log(1.0 + theta / s.b); },
                 [&](const family::PoissonSub& s) { return s.kappa * (1.0 - std::exp(-theta)); }},
      f.variant());
}

double levy_tail(const BernsteinFamily& f, double s) {
  detail::require(s > 0.0, "levy_tail: s must be > 0");
  return std::visit(
      overloaded{
          [&](const family::Linear&) { return 0.0; },
          [&](const family::Stable& p) { return std::pow(s, -p.alpha) * rgamma(1.0 - p.alpha); },
          [&](const family::TemperedStable& p) {
            // alpha mu^alpha Gamma(-alpha; mu s) / Gamma(1-alpha), expanded through
            // Gamma(a; x) = (Gamma(a+1; x) - x^a e^{-x}) / a.
            const double a = 1.0 - p.alpha;
            const double x = p.mu * s;
            return std::pow(s, -p.alpha) * std::exp(-x) * rgamma(a) -
                   std::pow(p.mu, p.alpha) * gamma_upper_reg(a, x);
          },
          [&](const family::GammaSub& p) { return exp_integral_e1(p.b * s); },
          [&](const family::PoissonSub& p) { return s <= 1.0 ? p.kappa : 0.0; }},
      f.variant());
}

double levy_tail_integral(const BernsteinFamily& f, double s) {
  detail::require(s >= 0.0, "levy_tail_integral: s must be >= 0");
  if (s == 0.0) return 0.0;
  return std::visit(
      overloaded{[&](const family::Linear&) { return 0.0; },
                 [&](const family::Stable& p) {
                   return std::pow(s, 1.0 - p.alpha) * rgamma(2.0 - p.alpha);
                 },
                 [&](const family::TemperedStable& p) {
                   const double a = 1.0 - p.alpha;
                   const double x = p.mu * s;
                   return std::pow(p.mu, -a) *
                          (gamma_lower_reg(a, x) - x * gamma_upper_reg(a, x) - a * gamma_lower_reg(a + 1.0, x));
                 },
                 [&](const family::GammaSub& p) {
                   return s * exp_integral_e1(p.b * s) - std::expm1(-p.b * s) / p.b;
                 },
                 [&](const family::PoissonSub& p) { return p.kappa * std::min(s, 1.0); }},
      f.variant());
}

double sample_positive_stable(double alpha, RngStream& rng) {
  if (alpha == 1.0) return 1.0;
  // Kanter's representation of the one-sided stable law.
  const double u = std::numbers::pi * rng.uniform();
  const double e = rng.exponential(1.0);
  const double log_s = std::log(std::sin(alpha * u)) - std::log(std::sin(u)) / alpha +
                       (1.0 - alpha) / alpha * (std::log(std::sin((1.0 - alpha) * u)) - std::log(e));
  return std::exp(log_s);
}

double sample_subordinator(const BernsteinFamily& f, double t, RngStream& rng) {
  detail::require(t >= 0.0, "sample_subordinator: t must be >= 0");
  if (t == 0.0) return 0.0;
  return std::visit(
      overloaded{
          [&](const family::Linear&) { return t; },
          [&](const family::Stable& p) {
            return std::pow(t, 1.0 / p.alpha) * sample_positive_stable(p.alpha, rng);
          },
          [&](const family::TemperedStable& p) {
            // Exponential tilting of stable increments: a stable draw x over time
            // tau is kept with probability e^{-mu x}, which succeeds with
            // probability e^{-mu^alpha tau}. Splitting t into pieces of length
            // tau <= 1/mu^alpha keeps the expected attempts per piece below e.
            const double rate = std::pow(p.mu, p.alpha);
            const long pieces = std::max(1L, static_cast<long>(std::ceil(rate * t)));
            const double tau = t / static_cast<double>(pieces);
            const double scale = std::pow(tau, 1.0 / p.alpha);
            long attempts = 0;
            double total = 0.0;
            for (long k = 0; k < pieces; ++k) {
              for (;;) {
                if (++attempts > kMaxRejections)
                  throw ConvergenceError("tempered sampler: rejection cap of 1e6 attempts exceeded");
                const double x = scale * sample_positive_stable(p.alpha, rng);
                if (rng.uniform() <= std::exp(-p.mu * x)) {
                  total += x;
                  break;
                }
              }
            }
            return total;
          },
          [&](const family::GammaSub& p) { return rng.gamma(t, p.b); },
          [&](const family::PoissonSub& p) { return static_cast<double>(rng.poisson(p.kappa * t)); }},
      f.variant());
}

double sample_inverse_subordinator(const BernsteinFamily& f, double x, RngStream& rng,
                                   std::optional<double> step) {
  detail::require(x >= 0.0, "sample_inverse_subordinator: x must be >= 0");
  if (f.is<family::Linear>()) return x;
  if (f.is<family::Stable>()) {
    const double alpha = f.as<family::Stable>().alpha;
    if (x == 0.0) return 0.0;
    return std::pow(x / sample_positive_stable(alpha, rng), alpha);
  }
  if (f.is<family::PoissonSub>()) {
    // First time the count exceeds x: arrival number floor(x) + 1.
    return rng.gamma(std::floor(x) + 1.0, f.as<family::PoissonSub>().kappa);
  }
  if (x == 0.0) return 0.0;
  const double h = step.value_or(1e-3 * x);
  detail::require(h > 0.0, "sample_inverse_subordinator: step must be > 0");
  double s = 0.0;
  double level = 0.0;
  while (level <= x) {
    level += sample_subordinator(f, h, rng);
    s += h;
  }
  return s;
}

}  // namespace yulecrack
