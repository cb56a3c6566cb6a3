#include "yulecrack/addends.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>

#include "yulecrack/conv_derivative.hpp"
#include "yulecrack/error.hpp"
#include "yulecrack/quadrature.hpp"
#include "yulecrack/specfun.hpp"

namespace yulecrack {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kTemperedMaxTerms = 10000;

// log P(s, x), accurate where P underflows.
double log_gamma_p(double s, double x) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  if (x < s + 1.0) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 10000; ++k) {
      term *= x / (s + k);
      sum += term;
      if (term < kEps * sum) break;
    }
    return s * std::log(x) - x - boost::math::lgamma(s + 1.0) + std::log(sum);
  }
  return std::log(boost::math::gamma_p(s, x));
}

double stable_density(double alpha, double xi, double x) {
  return xi * std::pow(x, alpha - 1.0) * mittag_leffler(alpha, alpha, -xi * std::pow(x, alpha));
}

double tempered_density(double alpha, double mu, double xi, double x) {
  const double shift = xi - std::pow(mu, alpha);
  const double xa = std::pow(x, alpha);
  if (shift >= 0.0)
    return xi * std::exp(-mu * x) * std::pow(x, alpha - 1.0) * mittag_leffler(alpha, alpha, -shift * xa);
  // Positive Mittag-Leffler argument: the series grows like exp(|shift|^{1/alpha} x)
  // and is balanced by e^{-mu x}; combine in log space.
  return std::exp(std::log(xi) - mu * x + (alpha - 1.0) * std::log(x) +
                  log_mittag_leffler(alpha, alpha, -shift * xa));
}

}  // namespace

AddendLaw::AddendLaw(BernsteinFamily f, double rate) : family(f), xi(rate) {
  detail::require(rate > 0.0 && std::isfinite(rate), "AddendLaw: xi must be > 0");
}

namespace detail {

TemperedSeries tempered_survival_series(double alpha, double mu, double xi, double x) {
  const double mu_a = std::pow(mu, alpha);
  const double ratio = -(xi - mu_a) / mu_a;
  const double pref = xi / mu_a;
  const double big_x = mu * x;
  if (x <= 0.0) return {1.0, 0.0, 0.0, 0};
  const double log_abs_ratio = ratio == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(ratio));
  double sum = 0.0;
  double max_term = 0.0;
  int settled = 0;
  for (int j = 0; j < kTemperedMaxTerms; ++j) {
    const double s = alpha * (j + 1);
    const double log_p = log_gamma_p(s, big_x);
    double term = j == 0 ? std::exp(log_p) : std::exp(j * log_abs_ratio + log_p);
    if (ratio < 0.0 && (j & 1)) term = -term;
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    // Past s > mu x the P factor decays faster than any geometric ratio.
    if (s > big_x && pref * std::abs(term) < 1e-17) {
      if (++settled >= 2) return {1.0 - pref * sum, pref * sum, pref * max_term, j + 1};
    } else {
      settled = 0;
    }
  }
  throw ConvergenceError("tempered survival series not converged within 1e4 terms");
}

double gamma_survival_integral(double b, double xi, double x) {
  if (x <= 0.0) return 1.0;
  const double bx = b * x;
  auto integrand = [&](double t) { return t <= 0.0 ? 0.0 : std::exp(-xi * t) * gamma_upper_reg(t, bx); };
  const double spread = 6.0 * std::sqrt(bx) + 6.0;
  const double end = std::max(45.0 / xi, bx + spread);
  std::vector<double> breaks{0.0};
  for (double c : {bx - spread, bx, bx + spread})
    if (c > breaks.back() && c < end) breaks.push_back(c);
  breaks.push_back(end);
  return xi * quad::integrate_pieces(integrand, breaks, false, {.rel_tol = 1e-12});
}

double gamma_density_integral(double b, double xi, double x) {
  const double log_bx = std::log(b * x);
  const double log_x = std::log(x);
  auto log_integrand = [&](double t) { return t * log_bx - log_x - b * x - xi * t - boost::math::lgamma(t); };
  auto integrand = [&](double t) { return t <= 0.0 ? 0.0 : xi * std::exp(log_integrand(t)); };
  // The log-integrand is concave in t (lgamma is convex): locate the mode by
  // golden section, then walk right until it has dropped by e^{-45}.
  double lo = 1e-8, hi = 1.0;
  while (log_integrand(hi * 2.0) > log_integrand(hi)) hi *= 2.0;
  hi *= 2.0;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200 && hi - lo > 1e-10 * (1.0 + hi); ++it) {
    const double a = hi - phi * (hi - lo), c = lo + phi * (hi - lo);
    if (log_integrand(a) < log_integrand(c))
      lo = a;
    else
      hi = c;
  }
  const double mode = 0.5 * (lo + hi);
  const double peak = log_integrand(mode);
  double end = mode + 1.0;
  while (log_integrand(end) > peak - 45.0) end = mode + 2.0 * (end - mode);
  const std::vector<double> breaks{0.0, mode, end};
  return quad::integrate_pieces(integrand, breaks, false, {.rel_tol = 1e-11});
}

}  // namespace detail

double addend_density(const AddendLaw& law, double x) {
  detail::require(x > 0.0, "addend_density: x must be > 0");
  const auto& f = law.family;
  if (f.is<family::PoissonSub>()) throw DomainError("addend_density: discrete law, use addend_pmf");
  if (f.is<family::Linear>()) return law.xi * std::exp(-law.xi * x);
  if (f.is<family::Stable>()) return stable_density(f.as<family::Stable>().alpha, law.xi, x);
  if (f.is<family::TemperedStable>()) {
    const auto& p = f.as<family::TemperedStable>();
    return tempered_density(p.alpha, p.mu, law.xi, x);
  }
  return detail::gamma_density_integral(f.as<family::GammaSub>().b, law.xi, x);
}

double addend_pmf(const AddendLaw& law, std::int64_t x) {
  if (!law.family.is<family::PoissonSub>()) throw DomainError("addend_pmf: only defined for the Poisson family");
  detail::require(x >= 0, "addend_pmf: x must be >= 0");
  const double kappa = law.family.as<family::PoissonSub>().kappa;
  const double total = kappa + law.xi;
  return law.xi / total * std::pow(kappa / total, static_cast<double>(x));
}

double addend_survival(const AddendLaw& law, double x) {
  detail::require(x >= 0.0, "addend_survival: x must be >= 0");
  if (x == 0.0) return 1.0;
  const auto& f = law.family;
  if (f.is<family::Linear>()) return std::exp(-law.xi * x);
  if (f.is<family::Stable>()) {
    const double alpha = f.as<family::Stable>().alpha;
    return mittag_leffler(alpha, 1.0, -law.xi * std::pow(x, alpha));
  }
  if (f.is<family::TemperedStable>()) {
    const auto& p = f.as<family::TemperedStable>();
    const auto s = detail::tempered_survival_series(p.alpha, p.mu, law.xi, x);
    if (4.0 * kEps * s.max_term <= 1e-12 && s.survival > 1e-8) return s.survival;
    // Alternating cancellation, or a far tail where the series only has
    // absolute accuracy: integrate the density tail instead.
    return quad::integrate_to_infinity([&](double y) { return tempered_density(p.alpha, p.mu, law.xi, y); }, x,
                                       {.rel_tol = 1e-11});
  }
  if (f.is<family::GammaSub>()) return detail::gamma_survival_integral(f.as<family::GammaSub>().b, law.xi, x);
  const double kappa = f.as<family::PoissonSub>().kappa;
  return std::pow(kappa / (kappa + law.xi), std::ceil(x));
}

double addend_cdf(const AddendLaw& law, double x) {
  detail::require(x >= 0.0, "addend_cdf: x must be >= 0");
  if (x == 0.0) return 0.0;
  const auto& f = law.family;
  if (f.is<family::Linear>()) return -std::expm1(-law.xi * x);
  if (f.is<family::Stable>()) {
    // 1 - E_{a,1}(-z) = z E_{a,a+1}(-z)
    const double alpha = f.as<family::Stable>().alpha;
    const double z = law.xi * std::pow(x, alpha);
    return z * mittag_leffler(alpha, alpha + 1.0, -z);
  }
  if (f.is<family::TemperedStable>()) {
    const auto& p = f.as<family::TemperedStable>();
    const auto s = detail::tempered_survival_series(p.alpha, p.mu, law.xi, x);
    if (4.0 * kEps * s.max_term <= 1e-12 && s.cdf > 1e-8) return s.cdf;
    const double tail = addend_survival(law, x);
    if (tail < 0.5) return 1.0 - tail;
    return quad::integrate_singular(
        [&](double y) { return y <= 0.0 ? 0.0 : tempered_density(p.alpha, p.mu, law.xi, y); }, 0.0, x,
        {.rel_tol = 1e-11});
  }
  if (f.is<family::GammaSub>()) {
    // xi int e^{-xi t} P(t, b x) dt
    const double bx = f.as<family::GammaSub>().b * x;
    const double xi = law.xi;
    auto integrand = [&](double t) { return t <= 0.0 ? 0.0 : std::exp(-xi * t) * gamma_lower_reg(t, bx); };
    const double spread = 6.0 * std::sqrt(bx) + 6.0;
    std::vector<double> breaks{0.0};
    for (double c : {std::min(1.0, bx), bx, bx + spread})
      if (c > breaks.back()) breaks.push_back(c);
    breaks.push_back(bx + 4.0 * spread);
    return xi * quad::integrate_pieces(integrand, breaks, false, {.rel_tol = 1e-12});
  }
  const double kappa = f.as<family::PoissonSub>().kappa;
  return -std::expm1(std::ceil(x) * std::log1p(-law.xi / (kappa + law.xi)));
}

double addend_laplace_exponent(const AddendLaw& law, double theta) {
  return std::log1p(laplace_exponent(law.family, theta) / law.xi);
}

double sample_addend(const AddendLaw& law, RngStream& rng) {
  return sample_subordinator(law.family, rng.exponential(law.xi), rng);
}

namespace {

template <class Fn>
double score_residual(const AddendLaw& law, const Fn& u, const Fn& d) {
  const std::size_t n = u.size();
  const auto& f = law.family;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = u.node(i);
    bool scored;
    if (f.is<family::Linear>())
      scored = i >= 1 && i + 1 < n;
    else if (f.is<family::PoissonSub>())
      scored = x >= 1.0 && x == std::floor(x);
    else
      scored = i > 3;
    if (scored) worst = std::max(worst, std::abs(d[i] + law.xi * u[i]));
  }
  return worst;
}

}  // namespace

double relaxation_residual(const AddendLaw& law, const MeshFunction& u) {
  return score_residual(law, u, conv_derivative(u, law.family));
}

double relaxation_residual(const AddendLaw& law, const GridFunction& u) {
  return score_residual(law, u, conv_derivative(u, law.family));
}

}  // namespace yulecrack
