#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace yulecrack::stats {

struct TestResult {
  std::string method;
  double statistic;
  double p_value;
  double level;
  bool passed;  ///< p_value >= level
  std::size_t dof = 0;  ///< chi-square degrees of freedom
};

/// Kolmogorov survival function Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} e^{-2 j^2 lambda^2}.
double kolmogorov_q(double lambda);

struct KsOptions {
  double level = 0.01;
  /// Left limit F(x-) for laws with atoms; defaults to the cdf itself.
  std::function<double(double)> left_cdf;
  /// Only x < cutoff enters the supremum. Censored observations are passed
  /// as +inf and the cutoff set to the censoring time.
  double cutoff = std::numeric_limits<double>::infinity();
};

/// One-sample Kolmogorov-Smirnov test with Stephens' finite-n correction
/// (sqrt(n) + 0.12 + 0.11/sqrt(n)) D. Throws DomainError for n < 100.
TestResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf, const KsOptions& opt = {});

/// Two-sample KS with effective size n m / (n + m).
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b, double level = 0.01);

/// Pearson chi-square of integer samples against a pmf supported on
/// {support_min, support_min + 1, ...}. The tail beyond the largest
/// populated cell is pooled; cells with expected count < 5 are merged into
/// their right neighbour (the last into its left).
TestResult chi_square_test(const std::vector<std::int64_t>& samples, const std::function<double(std::int64_t)>& pmf,
                           std::int64_t support_min, double level = 0.01);

/// Chi-square homogeneity test of two integer samples; cells with a pooled
/// expected count < 5 in either sample are merged.
TestResult chi_square_two_sample(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                 double level = 0.01);

struct MeanEstimate {
  double mean;
  double std_error;
};
MeanEstimate mean_estimate(const std::vector<double>& x);

}  // namespace yulecrack::stats
