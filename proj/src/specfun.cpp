#include "yulecrack/specfun.hpp"

#include <algorithm>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "yulecrack/error.hpp"
#include "yulecrack/quadrature.hpp"

namespace yulecrack {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

void check_ml_args(double alpha, double gamma, double z) {
  detail::require(alpha > 0.0 && std::isfinite(alpha), "mittag_leffler: alpha must be > 0");
  detail::require(gamma > 0.0 && std::isfinite(gamma), "mittag_leffler: gamma must be > 0");
  detail::require(std::isfinite(z), "mittag_leffler: z must be finite");
}

// E_{1,gamma}(z) for z < -1 without the Taylor series.
double ml_alpha_one_negative(double gamma, double z) {
  if (gamma == 1.0) return std::exp(z);
  if (gamma == std::floor(gamma)) {
    // E_{1,m+1}(z) = (E_{1,m}(z) - 1/Gamma(m)) / z; each step shrinks the error by |z|.
    double e = std::exp(z);
    for (double m = 1.0; m < gamma; m += 1.0) e = (e - rgamma(m)) / z;
    return e;
  }
  if (gamma < 1.0) return rgamma(gamma) + z * ml_alpha_one_negative(gamma + 1.0, z);
  // Euler integral: E_{1,g}(z) = 1/Gamma(g-1) int_0^1 e^{zs} (1-s)^{g-2} ds, g > 1.
  const double integral = quad::integrate_singular(
      [&](double s) { return std::exp(z * s) * std::pow(1.0 - s, gamma - 2.0); }, 0.0, 1.0,
      {.rel_tol = 1e-13});
  return integral * rgamma(gamma - 1.0);
}

}  // namespace

void SeriesControl::validate() const {
  detail::require(abs_tol > 0.0, "SeriesControl: abs_tol must be > 0");
  detail::require(max_terms >= 1, "SeriesControl: max_terms must be >= 1");
  detail::require(asymptotic_switch > 0.0, "SeriesControl: asymptotic_switch must be > 0");
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 170.0) return std::exp(-boost::math::lgamma(x));
  return 1.0 / boost::math::tgamma(x);
}

std::pair<double, int> lgamma_signed(double x) {
  if (is_nonpositive_integer(x)) throw DomainError("lgamma: pole at " + std::to_string(x));
  int sign = 1;
  const double lg = boost::math::lgamma(x, &sign);
  return {lg, sign};
}

double gamma_lower_reg(double a, double x) {
  detail::require(a > 0.0, "gamma_lower_reg: a must be > 0");
  detail::require(x >= 0.0, "gamma_lower_reg: x must be >= 0");
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(a, x);
}

double gamma_upper_reg(double a, double x) {
  detail::require(a > 0.0, "gamma_upper_reg: a must be > 0");
  detail::require(x >= 0.0, "gamma_upper_reg: x must be >= 0");
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(a, x);
}

double exp_integral_e1(double x) {
  detail::require(x > 0.0, "exp_integral_e1: x must be > 0");
  if (x > 700.0) return 0.0;
  return boost::math::expint(1, x);
}

namespace ml {

SeriesSum taylor(double alpha, double gamma, double z, const SeriesControl& ctrl) {
  check_ml_args(alpha, gamma, z);
  ctrl.validate();
  if (z == 0.0) return {rgamma(gamma), std::abs(rgamma(gamma)), 1};
  const double log_abs_z = std::log(std::abs(z));
  const bool alternating = z < 0.0;
  double sum = 0.0;
  double max_term = 0.0;
  double prev_log = std::numeric_limits<double>::infinity();
  int settled = 0;
  for (int j = 0; j < ctrl.max_terms; ++j) {
    const double log_term = j * log_abs_z - boost::math::lgamma(alpha * j + gamma);
    double term = std::exp(log_term);
    if (alternating && (j & 1)) term = -term;
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    const bool past_peak = log_term < prev_log;
    prev_log = log_term;
    if (j > 0 && past_peak &&
        std::abs(term) <= std::max(0.01 * ctrl.abs_tol, kEps * std::abs(sum))) {
      if (++settled >= 2) return {sum, max_term, j + 1};
    } else {
      settled = 0;
    }
  }
  throw ConvergenceError("mittag_leffler: series did not converge within max_terms");
}

double asymptotic(double alpha, double gamma, double z, const SeriesControl& ctrl) {
  check_ml_args(alpha, gamma, z);
  ctrl.validate();
  detail::require(alpha < 2.0, "mittag_leffler asymptotic: requires alpha < 2");
  detail::require(z < 0.0, "mittag_leffler asymptotic: requires z < 0");
  const double log_x = std::log(-z);
  double sum = 0.0;
  double prev_envelope = std::numeric_limits<double>::infinity();
  int settled = 0;
  for (int k = 1; k <= ctrl.max_terms; ++k) {
    const double arg = gamma - alpha * k;
    // |1/Gamma(y)| <= Gamma(1-y)/pi for y < 0: a pole-free bound on the term size.
    const double log_rg_bound =
        arg > 0.0 ? -boost::math::lgamma(arg) : boost::math::lgamma(1.0 - arg) - std::log(kPi);
    const double envelope = std::exp(log_rg_bound - k * log_x);
    const double sign_zk = (k & 1) ? -1.0 : 1.0;  // sign of z^{-k}
    sum -= sign_zk * std::exp(-k * log_x) * rgamma(arg);
    if (envelope <= 0.01 * ctrl.abs_tol) {
      if (++settled >= 2) return sum;
    } else {
      settled = 0;
      if (envelope > prev_envelope && k > 2)
        throw ConvergenceError("mittag_leffler: asymptotic expansion diverges before reaching tolerance");
    }
    prev_envelope = envelope;
  }
  throw ConvergenceError("mittag_leffler: asymptotic expansion did not converge");
}

double integral(double alpha, double gamma, double z) {
  check_ml_args(alpha, gamma, z);
  detail::require(alpha < 1.0, "mittag_leffler integral: requires alpha < 1");
  detail::require(z < 0.0, "mittag_leffler integral: requires z < 0");
  if (gamma >= 1.0 + alpha) {
    // E_{a,b}(z) = 1/Gamma(b) + z E_{a,a+b}(z) shifted down until the representation applies.
    return (integral(alpha, gamma - alpha, z) - rgamma(gamma - alpha)) / z;
  }
  const double x = -z;
  const double s1 = std::sin(kPi * (1.0 - gamma));
  const double s2 = std::sin(kPi * (1.0 - gamma + alpha));
  const double c = std::cos(kPi * alpha);
  const double power = (1.0 - gamma) / alpha;
  auto kernel = [&](double chi) {
    if (chi <= 0.0) return 0.0;
    const double num = chi * s1 + x * s2;
    const double den = chi * chi + 2.0 * chi * x * c + x * x;
    return std::pow(chi, power) * std::exp(-std::pow(chi, 1.0 / alpha)) * num / den;
  };
  // Beyond chi = 50^alpha the exponential factor is below e^{-50}.
  const double cutoff = std::pow(50.0, alpha);
  std::vector<double> breaks{0.0};
  if (c < 0.0) {
    const double peak = -c * x;
    const double width = x * std::sin(kPi * alpha);
    for (double b : {peak - width, peak, peak + width})
      if (b > 0.0 && b < cutoff) breaks.push_back(b);
  }
  breaks.push_back(cutoff);
  const quad::Options opt{.rel_tol = 1e-13};
  double total = quad::integrate_singular(kernel, breaks[0], breaks[1], opt);
  for (std::size_t i = 2; i < breaks.size(); ++i)
    total += quad::integrate(kernel, breaks[i - 1], breaks[i], opt);
  return total / (alpha * kPi);
}

}  // namespace ml

double log_mittag_leffler(double alpha, double gamma, double z, const SeriesControl& ctrl) {
  check_ml_args(alpha, gamma, z);
  detail::require(z >= 0.0, "log_mittag_leffler: requires z >= 0");
  ctrl.validate();
  if (z == 0.0) return -boost::math::lgamma(gamma);
  const double log_z = std::log(z);
  const double expo = std::exp(log_z / alpha);
  if (alpha < 2.0 && expo >= 40.0) {
    // Only the exponential term survives on the positive axis; the algebraic
    // corrections are smaller by e^{-40}.
    return -std::log(alpha) + (1.0 - gamma) / alpha * log_z + expo;
  }
  // Positive terms: log-sum-exp over the series.
  std::vector<double> logs;
  double peak = -std::numeric_limits<double>::infinity();
  double prev = peak;
  for (int j = 0; j < ctrl.max_terms; ++j) {
    const double lt = j * log_z - boost::math::lgamma(alpha * j + gamma);
    logs.push_back(lt);
    peak = std::max(peak, lt);
    if (j > 0 && lt < prev && lt < peak + std::log(kEps) - 5.0) {
      double s = 0.0;
      for (double l : logs) s += std::exp(l - peak);
      return peak + std::log(s);
    }
    prev = lt;
  }
  throw ConvergenceError("log_mittag_leffler: series did not converge within max_terms");
}

double mittag_leffler(double alpha, double gamma, double z, const SeriesControl& ctrl) {
  check_ml_args(alpha, gamma, z);
  ctrl.validate();
  if (z == 0.0) return rgamma(gamma);
  if (z > 0.0) return std::exp(log_mittag_leffler(alpha, gamma, z, ctrl));

  const double x = -z;
  if (alpha < 2.0 && x >= ctrl.asymptotic_switch) {
    try {
      return ml::asymptotic(alpha, gamma, z, ctrl);
    } catch (const ConvergenceError&) {
      if (alpha >= 1.0) throw;
    }
    return ml::integral(alpha, gamma, z);
  }
  if (alpha == 1.0 && x > 1.0) return ml_alpha_one_negative(gamma, z);

  // The largest Taylor term is roughly exp(x^{1/alpha}); skip hopeless sums.
  if (std::pow(x, 1.0 / alpha) < 30.0) {
    const auto s = ml::taylor(alpha, gamma, z, ctrl);
    if (4.0 * kEps * s.max_term <= ctrl.abs_tol) return s.value;
  }
  if (alpha < 1.0) return ml::integral(alpha, gamma, z);
  throw ConvergenceError("mittag_leffler: cancellation in the series exceeds abs_tol for alpha = " +
                         std::to_string(alpha) + ", z = " + std::to_string(z));
}

FoxWrightParams::FoxWrightParams(std::vector<Pair> upper, std::vector<Pair> lower)
    : upper_(std::move(upper)), lower_(std::move(lower)) {
  double delta = 0.0;
  for (const auto& [b, beta] : lower_) {
    detail::require(std::isfinite(b) && std::isfinite(beta), "FoxWrightParams: non-finite lower pair");
    delta += beta;
  }
  for (const auto& [a, al] : upper_) {
    detail::require(std::isfinite(a) && std::isfinite(al), "FoxWrightParams: non-finite upper pair");
    delta -= al;
  }
  detail::require(delta > -1.0,
                  "FoxWrightParams: convergence condition sum(beta) - sum(alpha) > -1 violated");
}

double fox_wright(const FoxWrightParams& params, double x, const SeriesControl& ctrl) {
  ctrl.validate();
  detail::require(std::isfinite(x), "fox_wright: x must be finite");
  const double log_abs_x = x == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(x));
  double sum = 0.0;
  double max_term = 0.0;
  double prev_log = std::numeric_limits<double>::infinity();
  int settled = 0;
  for (int l = 0; l < ctrl.max_terms; ++l) {
    double log_term = (l == 0 ? 0.0 : l * log_abs_x) - boost::math::lgamma(l + 1.0);
    int sign = (x < 0.0 && (l & 1)) ? -1 : 1;
    bool zero = false;
    for (const auto& [a, al] : params.upper()) {
      const auto [lg, s] = lgamma_signed(a + al * l);
      log_term += lg;
      sign *= s;
    }
    for (const auto& [b, beta] : params.lower()) {
      const double arg = b + beta * l;
      if (is_nonpositive_integer(arg)) {
        zero = true;
        break;
      }
      const auto [lg, s] = lgamma_signed(arg);
      log_term -= lg;
      sign *= s;
    }
    const double term = zero ? 0.0 : sign * std::exp(log_term);
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    if (x == 0.0) return sum;
    const bool past_peak = zero || log_term < prev_log;
    if (!zero) prev_log = log_term;
    if (l > 0 && past_peak && std::abs(term) <= std::max(0.01 * ctrl.abs_tol, kEps * std::abs(sum))) {
      if (++settled >= 2) {
        if (4.0 * kEps * max_term > ctrl.abs_tol)
          throw ConvergenceError("fox_wright: cancellation exceeds abs_tol (largest term " +
                                 std::to_string(max_term) + ")");
        return sum;
      }
    } else {
      settled = 0;
    }
  }
  throw ConvergenceError("fox_wright: series did not converge within max_terms");
}

}  // namespace yulecrack
