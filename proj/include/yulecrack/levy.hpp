#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include "yulecrack/rng.hpp"

namespace yulecrack {

namespace family {
/// g(theta) = theta (pure drift).
struct Linear {};
/// g(theta) = theta^alpha, alpha in (0,1).
struct Stable {
  double alpha;
};
/// g(theta) = (mu + theta)^alpha - mu^alpha, alpha in (0,1).
struct TemperedStable {
  double alpha;
  double mu;
};
/// g(theta) = log(1 + theta / b).
struct GammaSub {
  double b;
};
/// g(theta) = kappa (1 - e^{-theta}).
struct PoissonSub {
  double kappa;
};
}  // namespace family

/// One of the five supported subordinator families with validated parameters.
/// Stable(1) and TemperedStable(1, mu) both have g(theta) = theta and are
/// stored as Linear.
class BernsteinFamily {
 public:
  using Variant = std::variant<family::Linear, family::Stable, family::TemperedStable,
                               family::GammaSub, family::PoissonSub>;

  static BernsteinFamily linear();
  static BernsteinFamily stable(double alpha);
  static BernsteinFamily tempered_stable(double alpha, double mu);
  static BernsteinFamily gamma(double b);
  static BernsteinFamily poisson(double kappa);

  const Variant& variant() const { return v_; }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(v_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(v_);
  }

  bool is_discrete() const { return is<family::PoissonSub>(); }
  /// Short tag: "exp", "stable", "tempered", "gamma" or "poisson".
  std::string tag() const;
  /// Tag plus parameters, e.g. "tempered(alpha=0.5, mu=5)".
  std::string describe() const;

 private:
  explicit BernsteinFamily(Variant v) : v_(v) {}
  Variant v_;
};

/// Laplace exponent g(theta) of the subordinator: E exp(-theta A(t)) = exp(-g(theta) t).
double laplace_exponent(const BernsteinFamily& f, double theta);
/// Continuation to complex theta off the negative branch cut (principal branches).
std::complex<double> laplace_exponent(const BernsteinFamily& f, std::complex<double> theta);

/// Tail of the Levy measure, nu(s) = nu_bar((s, inf)); identically zero for Linear.
double levy_tail(const BernsteinFamily& f, double s);

/// Primitive N(s) = int_0^s nu(r) dr of the tail, used for exact per-cell kernel
/// weights in the convolution-type derivative.
double levy_tail_integral(const BernsteinFamily& f, double s);

/// One exact draw of the subordinator at time t.
double sample_subordinator(const BernsteinFamily& f, double t, RngStream& rng);

/// Standard positive alpha-stable variate with E exp(-theta S) = exp(-theta^alpha).
double sample_positive_stable(double alpha, RngStream& rng);

/// One draw of the inverse subordinator L(x) = inf{s : A(s) > x}.
/// Linear, Stable and Poisson are exact; Tempered and Gamma use a simulated
/// path on a time step `step` (default 1e-3 x), which biases the result
/// upward by at most one step.
double sample_inverse_subordinator(const BernsteinFamily& f, double x, RngStream& rng,
                                   std::optional<double> step = std::nullopt);

}  // namespace yulecrack
