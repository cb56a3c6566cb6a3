#include <doctest.h>

#include <cmath>

#include "yulecrack/compound.hpp"
#include "yulecrack/conv_derivative.hpp"
#include "yulecrack/error.hpp"
#include "yulecrack/laplace.hpp"
#include "yulecrack/quadrature.hpp"
#include "yulecrack/residuals.hpp"

using namespace yulecrack;

namespace {

CompoundBirthModel model(const BernsteinFamily& f, double lambda = 1.0, double xi = 1.0) {
  return CompoundBirthModel(lambda, AddendLaw(f, xi));
}

}  // namespace

TEST_SUITE("numeric") {
  TEST_CASE("endpoint-aware quadrature") {
    // int_0^1 x^{-1/2} (1-x)^{-1/2} dx = pi
    const double v = quad::integrate_endpoints(
        [](double, double l, double r) { return l <= 0.0 || r <= 0.0 ? 0.0 : 1.0 / std::sqrt(l * r); }, 0.0, 1.0,
        {.rel_tol = 1e-13});
    CHECK(v == doctest::Approx(M_PI).epsilon(1e-12));
  }

  TEST_CASE("laplace transform and inversion") {
    CHECK(laplace_transform_num([](double x) { return std::exp(-x); }, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    for (double x : {0.1, 1.0, 4.0}) {
      const auto r = laplace_invert([](std::complex<double> s) { return 2.0 / (s + 2.0); }, x);
      CHECK(r.value == doctest::Approx(2.0 * std::exp(-2.0 * x)).epsilon(1e-8));
      CHECK_FALSE(r.flagged);
    }
  }

  TEST_CASE("gamma addend density: inversion against quadrature over the subordinator time") {
    const AddendLaw law(BernsteinFamily::gamma(1.0), 1.0);
    for (double x : {0.5, 1.0, 2.0}) {
      const auto r = laplace_invert([&](std::complex<double> s) {
        return law.xi / (law.xi + laplace_exponent(law.family, s));
      }, x);
      CHECK(r.value == doctest::Approx(addend_density(law, x)).epsilon(1e-5));
    }
  }

  TEST_CASE("convolution-type derivative") {
    SUBCASE("constant has zero derivative") {
      const auto u = GridFunction::tabulate(0.0, 0.01, 200, [](double) { return 3.0; });
      for (const auto& f : {BernsteinFamily::stable(0.4), BernsteinFamily::gamma(1.0), BernsteinFamily::poisson(2.0),
                            BernsteinFamily::linear()}) {
        CAPTURE(f.describe());
        const auto d = conv_derivative(u, f);
        // difference stencils round at the scale |u| / h
        for (std::size_t i = 0; i < d.size(); ++i) CHECK(std::abs(d[i]) < 1e-12 * 3.0 / 0.01);
      }
    }
    SUBCASE("caputo derivative of the identity") {
      const double alpha = 0.6;
      auto err = [&](double h) {
        const auto u = GridFunction::tabulate(0.0, h, static_cast<std::size_t>(2.0 / h) + 1, [](double x) { return x; });
        const auto d = conv_derivative(u, BernsteinFamily::stable(alpha));
        double worst = 0.0;
        for (std::size_t i = 1; i < d.size(); ++i)
          worst = std::max(worst, std::abs(d[i] - std::pow(u.node(i), 1.0 - alpha) / std::tgamma(2.0 - alpha)));
        return worst;
      };
      CHECK(err(0.02) < 1e-10);
      CHECK(err(0.01) < 1e-10);
    }
    SUBCASE("grid validation") {
      CHECK_THROWS_AS(conv_derivative(GridFunction::tabulate(0.0, 0.1, 5, [](double x) { return x; }),
                                      BernsteinFamily::stable(0.5)),
                      GridError);
      CHECK_THROWS_AS(conv_derivative(GridFunction::tabulate(1.0, 0.1, 50, [](double x) { return x; }),
                                      BernsteinFamily::stable(0.5)),
                      GridError);
    }
  }

  TEST_CASE("exponential equation") {
    const auto lin = model(BernsteinFamily::linear());
    const auto r = pde_residual_exponential(lin, {0.1, 3.0, 60, 0.1, 3.0, 60});
    CHECK(r.max_abs < 2e-3);
    CHECK(*r.convergence_order > 1.8);
    CHECK(*r.identity_max_abs < 1e-8);
    SUBCASE("negative controls") {
      // xi enters only the convolution form; lambda enters both
      const auto xi2 = pde_residual_exponential(lin, {0.1, 3.0, 60, 0.1, 3.0, 60}, model(BernsteinFamily::linear(), 1.0, 2.0));
      CHECK(*xi2.alternate_max_abs > 100.0 * *r.alternate_max_abs);
      const auto lam = pde_residual_exponential(lin, {0.1, 3.0, 60, 0.1, 3.0, 60}, model(BernsteinFamily::linear(), 1.3));
      CHECK(lam.max_abs > 20.0 * r.max_abs);
    }
    SUBCASE("the general form agrees") {
      const auto g = pde_residual_general(lin, {3.0, 60, 0.5, 1.5, 3});
      CHECK(g.max_abs < 1e-2);
      CHECK(*g.convergence_order > 1.5);
    }
  }

  TEST_CASE("general equation") {
    SUBCASE("stable(0.75) converges under refinement") {
      const auto r = pde_residual_general(model(BernsteinFamily::stable(0.75)), {4.0, 80, 0.5, 1.0, 2});
      CHECK(r.max_abs < 5e-3);
      CHECK(*r.convergence_order > 1.0);
    }
    SUBCASE("stable(0.5): the self-convolution does not vanish at the origin") {
      const auto r = pde_residual_general(model(BernsteinFamily::stable(0.5)), {4.0, 80, 0.5, 1.0, 2});
      CHECK(r.max_abs > 1.0);
      CHECK(*r.convergence_order < 0.0);
      CHECK(*r.alternate_max_abs < 1e-3);
    }
    SUBCASE("undefined cases are rejected") {
      CHECK_THROWS_AS(pde_residual_general(model(BernsteinFamily::stable(0.3)), {4.0, 40, 0.5, 1.0, 2}), DomainError);
      CHECK_THROWS_AS(pde_residual_general(model(BernsteinFamily::gamma(1.0)), {4.0, 40, 0.5, 1.0, 2}), DomainError);
    }
    SUBCASE("poisson routes to the discrete equation") {
      const auto r = pde_residual_general(model(BernsteinFamily::poisson(1.0)), {20.0, 0, 0.5, 2.0, 4});
      CHECK(r.max_abs < 1e-12);
    }
  }

  TEST_CASE("discrete equation") {
    const std::vector<double> ts{0.5, 1.0, 2.0};
    const auto r = discrete_equation_residual(model(BernsteinFamily::poisson(1.0)), 20, ts);
    CHECK(r.max_abs < 1e-12);
    CHECK(*r.identity_max_abs < 1e-12);
    CHECK(*r.alternate_max_abs > 1e-2);
    const auto other = discrete_equation_residual(model(BernsteinFamily::poisson(3.0), 1.0, 2.0), 15, ts);
    CHECK(other.max_abs < 1e-12);
    const auto wrong =
        discrete_equation_residual(model(BernsteinFamily::poisson(1.0)), 20, ts, model(BernsteinFamily::poisson(1.0), 1.0, 2.0));
    CHECK(wrong.max_abs > 1e-2);
  }

  TEST_CASE("transform-domain equation") {
    const std::vector<double> zero{0.0};
    CHECK(laplace_ode_check(model(BernsteinFamily::stable(0.5)), zero, {0.0, 1.0, 11}).max_abs == 0.0);
    const std::vector<double> thetas{1.0};
    const auto r = laplace_ode_check(model(BernsteinFamily::gamma(1.0)), thetas, {0.0, 2.0, 41});
    CHECK(*r.convergence_order == doctest::Approx(2.0).epsilon(0.05));
    const auto m = model(BernsteinFamily::tempered_stable(0.5, 2.0), 1.0, 1.5);
    const double g = laplace_exponent(m.law.family, 0.7);
    CHECK(laplace_pdf(m, 0.7, 0.0) == doctest::Approx(1.5 / (1.5 + g)).epsilon(1e-15));
  }
}
