#include <doctest.h>

#include <cmath>
#include <numbers>

#include "yulecrack/error.hpp"
#include "yulecrack/levy.hpp"
#include "yulecrack/specfun.hpp"
#include "yulecrack/stats.hpp"

using namespace yulecrack;

TEST_SUITE("levy") {
  TEST_CASE("laplace exponents") {
    CHECK(laplace_exponent(BernsteinFamily::linear(), 3.5) == 3.5);
    for (double a : {0.2, 0.5, 0.9}) CHECK(laplace_exponent(BernsteinFamily::stable(a), 1.0) == doctest::Approx(1.0));
    CHECK(laplace_exponent(BernsteinFamily::tempered_stable(0.5, 2.0), 2.0) ==
          doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-15));
    CHECK(laplace_exponent(BernsteinFamily::gamma(2.0), 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(laplace_exponent(BernsteinFamily::poisson(3.0), 1.0) ==
          doctest::Approx(3.0 * (1.0 - std::exp(-1.0))).epsilon(1e-15));
    for (const auto& f : {BernsteinFamily::linear(), BernsteinFamily::stable(0.4), BernsteinFamily::gamma(1.0)})
      CHECK(laplace_exponent(f, 0.0) == 0.0);
  }

  TEST_CASE("complex laplace exponent continues the real one") {
    for (const auto& f : {BernsteinFamily::stable(0.6), BernsteinFamily::tempered_stable(0.5, 2.0),
                          BernsteinFamily::gamma(1.5), BernsteinFamily::poisson(2.0)}) {
      const auto z = laplace_exponent(f, std::complex<double>(1.7, 0.0));
      CHECK(z.real() == doctest::Approx(laplace_exponent(f, 1.7)).epsilon(1e-14));
      CHECK(std::abs(z.imag()) < 1e-15);
    }
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(BernsteinFamily::stable(0.0), DomainError);
    CHECK_THROWS_AS(BernsteinFamily::stable(1.2), DomainError);
    CHECK_THROWS_AS(BernsteinFamily::tempered_stable(0.5, 0.0), DomainError);
    CHECK_THROWS_AS(BernsteinFamily::gamma(-1.0), DomainError);
    CHECK_THROWS_AS(BernsteinFamily::poisson(0.0), DomainError);
    CHECK_THROWS_AS(laplace_exponent(BernsteinFamily::linear(), -1.0), DomainError);
  }

  TEST_CASE("levy tails") {
    CHECK(levy_tail(BernsteinFamily::stable(0.5), 1.0) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)));
    for (double s : {0.01, 0.5, 3.0})
      CHECK(levy_tail(BernsteinFamily::gamma(2.0), s) == doctest::Approx(exp_integral_e1(2.0 * s)).epsilon(1e-14));
    CHECK(levy_tail(BernsteinFamily::poisson(2.5), 0.5) == 2.5);
    CHECK(levy_tail(BernsteinFamily::poisson(2.5), 2.0) == 0.0);
    CHECK(levy_tail(BernsteinFamily::linear(), 1.0) == 0.0);
    // N(s) for the stable tail is s^{1-a} / Gamma(2-a)
    CHECK(levy_tail_integral(BernsteinFamily::stable(0.3), 2.0) ==
          doctest::Approx(std::pow(2.0, 0.7) / std::tgamma(1.7)).epsilon(1e-14));
    CHECK(levy_tail_integral(BernsteinFamily::poisson(2.0), 1.5) == doctest::Approx(2.0));
  }

  TEST_CASE("subordinator draws") {
    RngStream rng(7);
    CHECK(sample_subordinator(BernsteinFamily::linear(), 2.0, rng) == 2.0);
    constexpr std::size_t n = 100000;
    SUBCASE("stable(0.5): E exp(-A(t)) = exp(-t)") {
      for (double t : {0.5, 1.0}) {
        std::vector<double> v(n);
        for (auto& x : v) x = std::exp(-sample_subordinator(BernsteinFamily::stable(0.5), t, rng));
        const auto m = stats::mean_estimate(v);
        CHECK(std::abs(m.mean - std::exp(-t)) < 3.0 * m.std_error);
      }
    }
    SUBCASE("poisson(1) at t=1 has mean 1") {
      std::vector<double> v(n);
      for (auto& x : v) x = sample_subordinator(BernsteinFamily::poisson(1.0), 1.0, rng);
      const auto m = stats::mean_estimate(v);
      CHECK(std::abs(m.mean - 1.0) < 3.0 * m.std_error);
    }
    SUBCASE("every family matches its laplace transform") {
      for (const auto& f : {BernsteinFamily::linear(), BernsteinFamily::stable(0.5),
                            BernsteinFamily::tempered_stable(0.5, 2.0), BernsteinFamily::gamma(1.0),
                            BernsteinFamily::poisson(2.0)}) {
        for (double t : {0.5, 2.0}) {
          std::vector<double> draws(n);
          for (auto& x : draws) x = sample_subordinator(f, t, rng);
          for (double theta : {0.1, 1.0, 10.0}) {
            std::vector<double> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(-theta * draws[i]);
            const auto m = stats::mean_estimate(v);
            CAPTURE(f.describe());
            CAPTURE(t);
            CAPTURE(theta);
            const double exact = std::exp(-laplace_exponent(f, theta) * t);
            // the slack covers summation rounding when the draws are deterministic
            CHECK(std::abs(m.mean - exact) <= 4.0 * m.std_error + 1e-11 * exact);
          }
        }
      }
    }
  }

  TEST_CASE("inverse subordinator") {
    RngStream rng(11);
    CHECK(sample_inverse_subordinator(BernsteinFamily::linear(), 1.7, rng) == 1.7);
    CHECK(sample_inverse_subordinator(BernsteinFamily::gamma(1.0), 0.0, rng) == 0.0);
    // P{L(1) <= E}, E ~ Exp(xi), equals the relaxation solution E_{1/2,1}(-xi)
    constexpr std::size_t n = 100000;
    constexpr double xi = 1.0;
    std::vector<double> hits(n);
    for (auto& h : hits) h = sample_inverse_subordinator(BernsteinFamily::stable(0.5), 1.0, rng) <= rng.exponential(xi);
    const auto m = stats::mean_estimate(hits);
    CHECK(std::abs(m.mean - mittag_leffler(0.5, 1.0, -xi)) < 3.0 * m.std_error);
  }
}
