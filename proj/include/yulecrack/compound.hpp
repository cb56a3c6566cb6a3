#pragma once

#include <cstdint>
#include <vector>

#include "yulecrack/addends.hpp"
#include "yulecrack/laplace.hpp"
#include "yulecrack/rng.hpp"
#include "yulecrack/stats.hpp"

namespace yulecrack {

/// Y_g(t) = sum_{j=1}^{B(t)} X_j for a Yule process B with one progenitor
/// and birth rate lambda, and i.i.d. addends X_j.
struct CompoundBirthModel {
  CompoundBirthModel(double lambda, AddendLaw law);

  double lambda;
  AddendLaw law;

  /// The law of Y_g(t): the addend law with xi replaced by xi e^{-lambda t}.
  AddendLaw marginal_law(double t) const;
};

/// One trajectory: the progenitor's addend at t = 0, then one addend per birth.
struct PathSample {
  double initial = 0.0;
  std::vector<double> event_times;
  std::vector<double> jump_sizes;
  double horizon = 0.0;

  double value_at(double t) const;
  std::size_t count_at(double t) const;
};

/// e^{-lambda t} (1 - e^{-lambda t})^{n-1}.
double yule_pmf(const CompoundBirthModel& m, std::int64_t n, double t);

std::int64_t sample_birth_count(const CompoundBirthModel& m, double t, RngStream& rng);
double sample_value(const CompoundBirthModel& m, double t, RngStream& rng);
/// A_g(Y(t)) with Y(t) the compound process with exponential(xi) jumps.
double sample_value_time_changed(const CompoundBirthModel& m, double t, RngStream& rng);

/// Event-driven simulation: with k individuals alive the next birth comes
/// after Exp(k lambda). Refuses horizons with e^{lambda horizon} > 1e7.
PathSample sample_path(const CompoundBirthModel& m, double horizon, RngStream& rng);

/// Marginal draws split deterministically over `workers` threads.
std::vector<double> sample_values(const CompoundBirthModel& m, double t, std::size_t n, std::uint64_t seed,
                                  unsigned workers = 1);

/// Density of Y_g(t) at y > 0, or the pmf at integer y >= 0 for PoissonSub.
/// GammaSub is inverted numerically from the transform.
double pdf_value(const CompoundBirthModel& m, double y, double t);

/// Talbot inversion of the transform for any family (continuous families only).
InversionResult pdf_inversion(const CompoundBirthModel& m, double y, double t);
/// P{Y_g(t) <= y} by inversion of F(s)/s.
InversionResult cdf_inversion(const CompoundBirthModel& m, double y, double t);

/// E e^{-theta Y_g(t)} = a / (a + g(theta)), a = xi e^{-lambda t}.
double laplace_pdf(const CompoundBirthModel& m, double theta, double t);
std::complex<double> laplace_pdf(const CompoundBirthModel& m, std::complex<double> theta, double t);

/// Compares direct draws of Y_g(t) with draws of A_g(Y(t)): two-sample KS,
/// or two-sample chi-square for PoissonSub.
stats::TestResult time_change_check(const CompoundBirthModel& m, double t, std::size_t n, std::uint64_t seed,
                                    unsigned workers = 1, double level = 0.01);

}  // namespace yulecrack
