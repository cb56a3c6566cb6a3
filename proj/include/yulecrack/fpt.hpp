#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "yulecrack/compound.hpp"

namespace yulecrack {

/// Law of T_beta = inf{t : Y_g(t) > beta}.
struct FptResult {
  double atom0;
  std::function<double(double)> cdf;
  std::function<double(double)> pdf;  ///< empty unless a closed form exists
  std::optional<double> mean;
};

FptResult first_passage(const CompoundBirthModel& m, double beta);

/// P{T_beta < t} = P{Y_g(t) > beta}: zero for t <= 0, equal to the atom as
/// t -> 0+. PoissonSub requires an integer beta.
double fpt_cdf(const CompoundBirthModel& m, double beta, double t);

/// P{T_beta = 0} = P{X > beta}.
double fpt_atom(const CompoundBirthModel& m, double beta);

/// Density of the absolutely continuous part, Stable (and Linear) only:
/// (lambda a beta^alpha / alpha) E_{alpha,alpha}(-a beta^alpha), a = xi e^{-lambda t}.
double fpt_pdf(const CompoundBirthModel& m, double beta, double t);

struct FptMean {
  enum class Path { FoxWright, Quadrature, ShapeIntegral };
  double value;
  Path path;
  /// Relative difference between the series and the quadrature when both ran.
  std::optional<double> discrepancy;
  /// GammaSub: the mean is finite for each beta but grows without bound.
  bool divergent_in_limit = false;
};

std::string to_string(FptMean::Path p);

/// Mean first-passage time. Linear and Stable use the Fox-Wright series
/// (x/lambda) 2Psi2[-x; (1,1),(1,1); (alpha+1,alpha),(2,1)], x = xi beta^alpha,
/// falling back to quadrature when the series fails. GammaSub integrates over
/// the subordinator time; other families use quadrature.
FptMean fpt_mean(const CompoundBirthModel& m, double beta);

/// int_0^inf (1 - F_T(t)) dt = (1/lambda) int_0^xi P{X_a <= beta} da / a.
double fpt_mean_quadrature(const CompoundBirthModel& m, double beta);

/// e^{-x} E_{alpha,alpha}(-e^{-x} beta^alpha) / (alpha E_{alpha,alpha+1}(-beta^alpha)), x > 0.
double fractional_gumbel_pdf(double alpha, double beta, double x);

/// g(theta) / (theta (a + g(theta))): transform of fpt_cdf over the level beta.
double laplace_fpt_cdf(const CompoundBirthModel& m, double theta, double t);

/// Tempered fpt_cdf through the Mittag-Leffler form of P{Y_g(t) <= beta}:
/// 1 - a beta^alpha e^{-mu beta} sum_j (-(a - mu^alpha) beta^alpha)^j E_{1, alpha j + alpha + 1}(mu beta).
double tempered_fpt_cdf_ml_series(const CompoundBirthModel& m, double beta, double t);

/// Empirical distribution of a ruin time, censored at the horizon.
struct EmpiricalCdf {
  std::vector<double> times;  ///< sorted ruin times; +inf when not ruined by the horizon
  double horizon;

  double operator()(double t) const;  ///< fraction ruined at or before t
  std::size_t censored() const;
};

/// tau = inf{t : Y_g(t) > c t + u} by path simulation.
EmpiricalCdf mc_ruin_time(const CompoundBirthModel& m, double premium_c, double capital_u, double horizon,
                          std::size_t n_paths, std::uint64_t seed, unsigned workers = 1);

}  // namespace yulecrack
