#include "yulecrack/compound.hpp"

#include <algorithm>
#include <cmath>

#include "yulecrack/error.hpp"

namespace yulecrack {
namespace {

constexpr double kMaxExpectedEvents = 1e7;

bool is_integer(double y) { return y == std::floor(y); }

}  // namespace

CompoundBirthModel::CompoundBirthModel(double rate, AddendLaw addend) : lambda(rate), law(std::move(addend)) {
  detail::require(rate > 0.0 && std::isfinite(rate), "CompoundBirthModel: lambda must be > 0");
}

AddendLaw CompoundBirthModel::marginal_law(double t) const {
  detail::require(t >= 0.0, "marginal_law: t must be >= 0");
  return AddendLaw(law.family, law.xi * std::exp(-lambda * t));
}

double PathSample::value_at(double t) const {
  double v = initial;
  for (std::size_t i = 0; i < event_times.size() && event_times[i] <= t; ++i) v += jump_sizes[i];
  return v;
}

std::size_t PathSample::count_at(double t) const {
  return 1 + static_cast<std::size_t>(std::upper_bound(event_times.begin(), event_times.end(), t) -
                                      event_times.begin());
}

double yule_pmf(const CompoundBirthModel& m, std::int64_t n, double t) {
  detail::require(n >= 1, "yule_pmf: n must be >= 1");
  detail::require(t >= 0.0, "yule_pmf: t must be >= 0");
  const double p = std::exp(-m.lambda * t);
  if (n == 1) return p;
  return p * std::pow(-std::expm1(-m.lambda * t), static_cast<double>(n - 1));
}

std::int64_t sample_birth_count(const CompoundBirthModel& m, double t, RngStream& rng) {
  detail::require(t >= 0.0, "sample_birth_count: t must be >= 0");
  return 1 + rng.geometric(std::exp(-m.lambda * t));
}

double sample_value(const CompoundBirthModel& m, double t, RngStream& rng) {
  const auto n = sample_birth_count(m, t, rng);
  double total = 0.0;
  for (std::int64_t j = 0; j < n; ++j) total += sample_addend(m.law, rng);
  return total;
}

double sample_value_time_changed(const CompoundBirthModel& m, double t, RngStream& rng) {
  const auto n = sample_birth_count(m, t, rng);
  // Sum of n exponential(xi) jumps.
  const double y = rng.gamma(static_cast<double>(n), m.law.xi);
  return sample_subordinator(m.law.family, y, rng);
}

PathSample sample_path(const CompoundBirthModel& m, double horizon, RngStream& rng) {
  detail::require(horizon >= 0.0, "sample_path: horizon must be >= 0");
  if (m.lambda * horizon > std::log(kMaxExpectedEvents))
    throw DomainError("sample_path: horizon too large (expected event count above 1e7)");
  PathSample path;
  path.horizon = horizon;
  path.initial = sample_addend(m.law, rng);
  double t = 0.0;
  for (std::int64_t alive = 1;; ++alive) {
    t += rng.exponential(m.lambda * static_cast<double>(alive));
    if (t > horizon) break;
    path.event_times.push_back(t);
    path.jump_sizes.push_back(sample_addend(m.law, rng));
  }
  return path;
}

std::vector<double> sample_values(const CompoundBirthModel& m, double t, std::size_t n, std::uint64_t seed,
                                  unsigned workers) {
  return parallel_draws(n, seed, workers, [&](RngStream& rng) { return sample_value(m, t, rng); });
}

double pdf_value(const CompoundBirthModel& m, double y, double t) {
  const auto law = m.marginal_law(t);
  if (m.law.family.is_discrete()) {
    if (y < 0.0 || !is_integer(y)) throw DomainError("pdf_value: PoissonSub needs an integer y >= 0");
    return addend_pmf(law, static_cast<std::int64_t>(y));
  }
  detail::require(y > 0.0, "pdf_value: y must be > 0");
  if (m.law.family.is<family::GammaSub>()) return pdf_inversion(m, y, t).value;
  return addend_density(law, y);
}

InversionResult pdf_inversion(const CompoundBirthModel& m, double y, double t) {
  if (m.law.family.is_discrete()) throw DomainError("pdf_inversion: continuous families only");
  return laplace_invert([&](std::complex<double> s) { return laplace_pdf(m, s, t); }, y);
}

InversionResult cdf_inversion(const CompoundBirthModel& m, double y, double t) {
  if (m.law.family.is_discrete()) throw DomainError("cdf_inversion: continuous families only");
  return laplace_invert([&](std::complex<double> s) { return laplace_pdf(m, s, t) / s; }, y);
}

double laplace_pdf(const CompoundBirthModel& m, double theta, double t) {
  detail::require(t >= 0.0, "laplace_pdf: t must be >= 0");
  if (theta == 0.0) return 1.0;
  const double a = m.law.xi * std::exp(-m.lambda * t);
  return a / (a + laplace_exponent(m.law.family, theta));
}

std::complex<double> laplace_pdf(const CompoundBirthModel& m, std::complex<double> theta, double t) {
  const double a = m.law.xi * std::exp(-m.lambda * t);
  return a / (a + laplace_exponent(m.law.family, theta));
}

stats::TestResult time_change_check(const CompoundBirthModel& m, double t, std::size_t n, std::uint64_t seed,
                                    unsigned workers, double level) {
  // Independent stream families for the two samplers.
  const auto direct = parallel_draws(n, seed, workers, [&](RngStream& rng) { return sample_value(m, t, rng); });
  const auto changed = parallel_draws(n, seed ^ 0x5bd1e995ULL, workers,
                                      [&](RngStream& rng) { return sample_value_time_changed(m, t, rng); });
  if (m.law.family.is_discrete()) {
    std::vector<std::int64_t> a(direct.size()), b(changed.size());
    std::transform(direct.begin(), direct.end(), a.begin(), [](double v) { return std::llround(v); });
    std::transform(changed.begin(), changed.end(), b.begin(), [](double v) { return std::llround(v); });
    return stats::chi_square_two_sample(a, b, level);
  }
  return stats::ks_two_sample(direct, changed, level);
}

}  // namespace yulecrack
