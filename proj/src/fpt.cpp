#include "yulecrack/fpt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "yulecrack/error.hpp"
#include "yulecrack/quadrature.hpp"
#include "yulecrack/specfun.hpp"

namespace yulecrack {
namespace {

constexpr double kMaxExpectedEvents = 1e7;

double poisson_level(const CompoundBirthModel& m, double beta) {
  if (m.law.family.is_discrete() && beta != std::floor(beta))
    throw DomainError("fpt: PoissonSub needs an integer level beta");
  return beta;
}

// P{X > beta} for the given addend law.
double strict_survival(const AddendLaw& law, double beta) {
  if (law.family.is_discrete()) {
    const double kappa = law.family.as<family::PoissonSub>().kappa;
    return std::pow(kappa / (kappa + law.xi), beta + 1.0);
  }
  return addend_survival(law, beta);
}

// P{X <= beta}.
double strict_cdf(const AddendLaw& law, double beta) {
  if (law.family.is_discrete()) {
    const double kappa = law.family.as<family::PoissonSub>().kappa;
    return -std::expm1((beta + 1.0) * std::log1p(-law.xi / (kappa + law.xi)));
  }
  return addend_cdf(law, beta);
}

std::optional<double> stable_alpha(const BernsteinFamily& f) {
  if (f.is<family::Linear>()) return 1.0;
  if (f.is<family::Stable>()) return f.as<family::Stable>().alpha;
  return std::nullopt;
}

}  // namespace

double fpt_cdf(const CompoundBirthModel& m, double beta, double t) {
  detail::require(beta > 0.0, "fpt_cdf: beta must be > 0");
  poisson_level(m, beta);
  if (t <= 0.0) return 0.0;
  return strict_survival(m.marginal_law(t), beta);
}

double fpt_atom(const CompoundBirthModel& m, double beta) {
  detail::require(beta > 0.0, "fpt_atom: beta must be > 0");
  poisson_level(m, beta);
  return strict_survival(m.law, beta);
}

double fpt_pdf(const CompoundBirthModel& m, double beta, double t) {
  detail::require(beta > 0.0 && t > 0.0, "fpt_pdf: beta and t must be > 0");
  const auto alpha = stable_alpha(m.law.family);
  if (!alpha) throw DomainError("fpt_pdf: only the Stable family has a closed-form density");
  const double a = m.law.xi * std::exp(-m.lambda * t);
  const double z = a * std::pow(beta, *alpha);
  return m.lambda * z / *alpha * mittag_leffler(*alpha, *alpha, -z);
}

std::string to_string(FptMean::Path p) {
  switch (p) {
    case FptMean::Path::FoxWright:
      return "fox-wright";
    case FptMean::Path::Quadrature:
      return "quadrature";
    case FptMean::Path::ShapeIntegral:
      return "shape-integral";
  }
  return "unknown";
}

double fpt_mean_quadrature(const CompoundBirthModel& m, double beta) {
  detail::require(beta > 0.0, "fpt_mean_quadrature: beta must be > 0");
  poisson_level(m, beta);
  // int_0^inf P{Y(t) <= beta} dt in u = lambda t. The integrand stays near 1
  // until a = xi e^{-u} drops to the scale g(1/beta), then decays like a.
  auto integrand = [&](double u) {
    const double a = m.law.xi * std::exp(-u);
    return a > 0.0 ? strict_cdf(AddendLaw(m.law.family, a), beta) : 0.0;
  };
  const double uc = std::max(0.0, std::log(m.law.xi / laplace_exponent(m.law.family, 1.0 / beta)));
  std::vector<double> breaks{0.0};
  for (double c : {uc - 5.0, uc, uc + 5.0})
    if (c > breaks.back()) breaks.push_back(c);
  return quad::integrate_pieces(integrand, breaks, true, {.rel_tol = 1e-12}) / m.lambda;
}

FptMean fpt_mean(const CompoundBirthModel& m, double beta) {
  detail::require(beta > 0.0, "fpt_mean: beta must be > 0");
  const auto& f = m.law.family;
  if (f.is<family::GammaSub>()) {
    // (1/lambda) int_0^inf P(z, b beta) (1 - e^{-xi z}) / z dz
    const double bb = f.as<family::GammaSub>().b * beta;
    const double xi = m.law.xi;
    auto integrand = [&](double z) {
      if (z <= 0.0) return 0.0;
      return gamma_lower_reg(z, bb) * (-std::expm1(-xi * z)) / z;
    };
    const double spread = 10.0 * std::sqrt(bb) + 20.0;
    std::vector<double> breaks{0.0};
    for (double c : {std::min(1.0, bb), bb, bb + spread})
      if (c > breaks.back()) breaks.push_back(c);
    breaks.push_back(bb + 3.0 * spread);
    const double v = quad::integrate_pieces(integrand, breaks, false, {.rel_tol = 1e-12}) / m.lambda;
    return {v, FptMean::Path::ShapeIntegral, std::nullopt, true};
  }
  const double quadrature = fpt_mean_quadrature(m, beta);
  const auto alpha = stable_alpha(f);
  if (!alpha) return {quadrature, FptMean::Path::Quadrature, std::nullopt, false};
  const double x = m.law.xi * std::pow(beta, *alpha);
  try {
    const FoxWrightParams params({{1.0, 1.0}, {1.0, 1.0}}, {{*alpha + 1.0, *alpha}, {2.0, 1.0}});
    const double series = x / m.lambda * fox_wright(params, -x, {.abs_tol = 1e-11});
    return {series, FptMean::Path::FoxWright, std::abs(series - quadrature) / std::abs(quadrature), false};
  } catch (const ConvergenceError&) {
    return {quadrature, FptMean::Path::Quadrature, std::nullopt, false};
  }
}

FptResult first_passage(const CompoundBirthModel& m, double beta) {
  FptResult r;
  r.atom0 = fpt_atom(m, beta);
  r.cdf = [m, beta](double t) { return fpt_cdf(m, beta, t); };
  if (stable_alpha(m.law.family)) r.pdf = [m, beta](double t) { return fpt_pdf(m, beta, t); };
  r.mean = fpt_mean(m, beta).value;
  return r;
}

double fractional_gumbel_pdf(double alpha, double beta, double x) {
  detail::require(alpha > 0.0 && alpha <= 1.0, "fractional_gumbel_pdf: alpha must lie in (0, 1]");
  detail::require(beta > 0.0, "fractional_gumbel_pdf: beta must be > 0");
  detail::require(x > 0.0, "fractional_gumbel_pdf: x must be > 0");
  const double ba = std::pow(beta, alpha);
  const double norm = alpha * mittag_leffler(alpha, alpha + 1.0, -ba);
  return std::exp(-x) * mittag_leffler(alpha, alpha, -std::exp(-x) * ba) / norm;
}

double laplace_fpt_cdf(const CompoundBirthModel& m, double theta, double t) {
  if (!(theta > 0.0)) throw DomainError("laplace_fpt_cdf: theta must be > 0");
  const double a = m.law.xi * std::exp(-m.lambda * t);
  const double g = laplace_exponent(m.law.family, theta);
  return g / (theta * (a + g));
}

double tempered_fpt_cdf_ml_series(const CompoundBirthModel& m, double beta, double t) {
  if (!m.law.family.is<family::TemperedStable>()) throw DomainError("tempered_fpt_cdf_ml_series: tempered family only");
  detail::require(beta > 0.0, "tempered_fpt_cdf_ml_series: beta must be > 0");
  if (t <= 0.0) return 0.0;
  const auto& p = m.law.family.as<family::TemperedStable>();
  const double a = m.law.xi * std::exp(-m.lambda * t);
  const double ba = std::pow(beta, p.alpha);
  const double r = -(a - std::pow(p.mu, p.alpha)) * ba;
  double sum = 0.0, power = 1.0;
  int settled = 0;
  for (int j = 0; j < 10000; ++j) {
    const double term = power * mittag_leffler(1.0, p.alpha * j + p.alpha + 1.0, p.mu * beta);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) {
      if (++settled >= 3) return 1.0 - a * ba * std::exp(-p.mu * beta) * sum;
    } else {
      settled = 0;
    }
    power *= r;
  }
  throw ConvergenceError("tempered_fpt_cdf_ml_series: not converged within 1e4 terms");
}

double EmpiricalCdf::operator()(double t) const {
  if (times.empty()) return 0.0;
  const auto k = std::upper_bound(times.begin(), times.end(), t) - times.begin();
  return static_cast<double>(k) / static_cast<double>(times.size());
}

std::size_t EmpiricalCdf::censored() const {
  return static_cast<std::size_t>(
      std::count_if(times.begin(), times.end(), [](double v) { return std::isinf(v); }));
}

EmpiricalCdf mc_ruin_time(const CompoundBirthModel& m, double premium_c, double capital_u, double horizon,
                          std::size_t n_paths, std::uint64_t seed, unsigned workers) {
  detail::require(premium_c >= 0.0 && capital_u >= 0.0, "mc_ruin_time: c and u must be >= 0");
  detail::require(horizon >= 0.0, "mc_ruin_time: horizon must be >= 0");
  if (m.lambda * horizon > std::log(kMaxExpectedEvents))
    throw DomainError("mc_ruin_time: horizon too large (expected event count above 1e7)");
  constexpr double inf = std::numeric_limits<double>::infinity();
  // The barrier c t + u only rises between jumps, so ruin can only happen at
  // t = 0 or at a birth epoch.
  auto one_path = [&](RngStream& rng) {
    double y = sample_addend(m.law, rng);
    if (y > capital_u) return 0.0;
    double t = 0.0;
    for (std::int64_t alive = 1;; ++alive) {
      t += rng.exponential(m.lambda * static_cast<double>(alive));
      if (t > horizon) return inf;
      y += sample_addend(m.law, rng);
      if (y > premium_c * t + capital_u) return t;
    }
  };
  EmpiricalCdf out{parallel_draws(n_paths, seed, workers, one_path), horizon};
  std::sort(out.times.begin(), out.times.end());
  return out;
}

}  // namespace yulecrack
