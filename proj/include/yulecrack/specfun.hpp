#pragma once

#include <utility>
#include <vector>

namespace yulecrack {

/// Tolerances shared by the series evaluators.
struct SeriesControl {
  double abs_tol = 1e-14;
  int max_terms = 10000;
  /// |z| beyond which the negative-axis asymptotic expansion replaces the
  /// Taylor series for the Mittag-Leffler function.
  double asymptotic_switch = 50.0;

  void validate() const;
};

/// Two-parameter Mittag-Leffler function E_{alpha,gamma}(z) = sum_j z^j / Gamma(alpha j + gamma)
/// for real z.
///
/// Evaluation regimes:
///  - z >= 0: Taylor series summed with overflow-safe scaling.
///  - z < 0, |z| < asymptotic_switch: Taylor series while the running maximum
///    term leaves the result accurate to abs_tol; otherwise (alpha < 1) the
///    real-line integral representation, or (alpha == 1) exp and its
///    recurrences.
///  - z <= -asymptotic_switch, alpha < 2: the algebraic asymptotic expansion.
///
/// Throws DomainError for alpha <= 0, gamma <= 0 or non-finite z and
/// ConvergenceError if no regime reaches abs_tol.
double mittag_leffler(double alpha, double gamma, double z, const SeriesControl& ctrl = {});

/// log E_{alpha,gamma}(z) for z >= 0, usable where the value itself overflows.
double log_mittag_leffler(double alpha, double gamma, double z, const SeriesControl& ctrl = {});

/// The individual regimes, exposed so that the crossover band can be tested
/// from both sides.
namespace ml {

struct SeriesSum {
  double value;
  double max_term;  ///< largest |term| seen; max_term * eps bounds the cancellation error
  int terms;
};

SeriesSum taylor(double alpha, double gamma, double z, const SeriesControl& ctrl = {});
double asymptotic(double alpha, double gamma, double z, const SeriesControl& ctrl = {});
/// Real-line integral representation; requires 0 < alpha < 1 and z < 0.
double integral(double alpha, double gamma, double z);

}  // namespace ml

/// Parameters of the Fox-Wright function pPsi_q with real arguments.
class FoxWrightParams {
 public:
  using Pair = std::pair<double, double>;  ///< (a, alpha) or (b, beta)

  /// Throws DomainError unless sum(beta_j) - sum(alpha_l) > -1, the condition
  /// under which the series is entire.
  FoxWrightParams(std::vector<Pair> upper, std::vector<Pair> lower);

  const std::vector<Pair>& upper() const { return upper_; }
  const std::vector<Pair>& lower() const { return lower_; }

 private:
  std::vector<Pair> upper_;
  std::vector<Pair> lower_;
};

/// pPsi_q[x] = sum_l x^l prod Gamma(a + alpha l) / (l! prod Gamma(b + beta l)).
/// Terms are formed in log space with sign tracking. Throws ConvergenceError
/// when the series does not settle within max_terms, or when alternating
/// cancellation would leave an error above abs_tol.
double fox_wright(const FoxWrightParams& params, double x, const SeriesControl& ctrl = {});

/// Regularized lower incomplete gamma P(a, x) = gamma(a; x) / Gamma(a).
double gamma_lower_reg(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = Gamma(a; x) / Gamma(a).
double gamma_upper_reg(double a, double x);

/// Exponential integral E1(x) = int_x^inf e^{-t}/t dt, x > 0.
double exp_integral_e1(double x);

/// 1 / Gamma(x), exactly zero at the poles of Gamma.
double rgamma(double x);

/// log|Gamma(x)| together with the sign of Gamma(x).
std::pair<double, int> lgamma_signed(double x);

}  // namespace yulecrack
