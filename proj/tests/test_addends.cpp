#include <doctest.h>

#include <cmath>

#include "yulecrack/addends.hpp"
#include "yulecrack/error.hpp"
#include "yulecrack/quadrature.hpp"
#include "yulecrack/specfun.hpp"
#include "yulecrack/stats.hpp"

using namespace yulecrack;

TEST_SUITE("addends") {
  TEST_CASE("densities") {
    CHECK(addend_density(AddendLaw(BernsteinFamily::linear(), 1.0), 1.0) == doctest::Approx(std::exp(-1.0)));
    const AddendLaw one(BernsteinFamily::stable(1.0), 2.0);
    for (double x : {0.1, 1.0, 4.0}) CHECK(addend_density(one, x) == doctest::Approx(2.0 * std::exp(-2.0 * x)).epsilon(1e-13));
    CHECK_THROWS_AS(addend_density(AddendLaw(BernsteinFamily::poisson(1.0), 1.0), 1.0), DomainError);
    CHECK_THROWS_AS(addend_density(one, 0.0), DomainError);
  }

  TEST_CASE("gamma addend density is normalised") {
    // the cdf decays only like 1 / |log x| at the origin: integrate in s = -log x
    // down to e^{-50} and close with the cdf there
    const AddendLaw law(BernsteinFamily::gamma(1.0), 1.0);
    auto g = [&](double s) {
      const double x = std::exp(-s);
      return addend_density(law, x) * x;
    };
    const std::vector<double> breaks{-std::log(60.0), 0.0, 5.0, 20.0, 50.0};
    const double mass = quad::integrate_pieces(g, breaks, false, {.rel_tol = 1e-10});
    CHECK(mass + addend_cdf(law, std::exp(-50.0)) == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("tempered density integrates to the survival drop") {
    const AddendLaw law(BernsteinFamily::tempered_stable(0.6, 3.0), 1.0);
    const double mass = quad::integrate_singular([&](double x) { return x <= 0.0 ? 0.0 : addend_density(law, x); },
                                                 0.0, 2.0, {.rel_tol = 1e-10});
    CHECK(mass == doctest::Approx(1.0 - addend_survival(law, 2.0)).epsilon(1e-8));
    CHECK(addend_cdf(law, 2.0) == doctest::Approx(mass).epsilon(1e-8));
  }

  TEST_CASE("geometric pmf") {
    const AddendLaw law(BernsteinFamily::poisson(1.0), 1.0);
    CHECK(addend_pmf(law, 0) == doctest::Approx(0.5));
    CHECK(addend_pmf(law, 2) == doctest::Approx(0.125));
    double total = 0.0;
    for (int x = 0; x < 200; ++x) total += addend_pmf(law, x);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(addend_pmf(AddendLaw(BernsteinFamily::linear(), 1.0), 1), DomainError);
  }

  TEST_CASE("survival functions") {
    for (const auto& f : {BernsteinFamily::linear(), BernsteinFamily::stable(0.5), BernsteinFamily::gamma(1.0),
                          BernsteinFamily::tempered_stable(0.5, 2.0), BernsteinFamily::poisson(1.0)})
      CHECK(addend_survival(AddendLaw(f, 1.0), 0.0) == 1.0);
    CHECK(addend_survival(AddendLaw(BernsteinFamily::stable(0.5), 1.0), 1.0) ==
          doctest::Approx(0.42758357615580700441).epsilon(1e-13));
    CHECK(addend_survival(AddendLaw(BernsteinFamily::poisson(1.0), 1.0), 3.0) == doctest::Approx(0.125));
    // survival + cdf = 1 across the families
    for (const auto& f : {BernsteinFamily::stable(0.7), BernsteinFamily::tempered_stable(0.5, 2.0),
                          BernsteinFamily::gamma(2.0)})
      for (double x : {0.05, 1.0, 6.0}) {
        const AddendLaw law(f, 1.3);
        CHECK(addend_survival(law, x) + addend_cdf(law, x) == doctest::Approx(1.0).epsilon(1e-9));
      }
  }

  TEST_CASE("tempered survival with a negative mittag-leffler shift") {
    // xi < mu^alpha: the density carries E_{a,a} of a positive argument
    const AddendLaw law(BernsteinFamily::tempered_stable(0.8, 10.0), 1.0);
    const double tail =
        quad::integrate_to_infinity([&](double x) { return addend_density(law, x); }, 1.5, {.rel_tol = 1e-11});
    CHECK(addend_survival(law, 1.5) == doctest::Approx(tail).epsilon(1e-8));
  }

  TEST_CASE("laplace exponent of the addend law") {
    CHECK(addend_laplace_exponent(AddendLaw(BernsteinFamily::linear(), 2.0), 3.0) ==
          doctest::Approx(std::log1p(1.5)));
    CHECK(addend_laplace_exponent(AddendLaw(BernsteinFamily::stable(0.4), 1.0), 0.0) == 0.0);
    CHECK(addend_laplace_exponent(AddendLaw(BernsteinFamily::gamma(2.0), 1.0), 2.0) ==
          doctest::Approx(std::log1p(std::log(2.0))).epsilon(1e-15));
  }

  TEST_CASE("samplers") {
    constexpr std::size_t n = 100000;
    RngStream rng(2024);
    SUBCASE("linear draws are exponential") {
      const AddendLaw law(BernsteinFamily::linear(), 1.5);
      std::vector<double> v(n);
      for (auto& x : v) x = sample_addend(law, rng);
      CHECK(stats::ks_test(v, [](double x) { return -std::expm1(-1.5 * x); }).passed);
    }
    SUBCASE("stable survival at 1") {
      const AddendLaw law(BernsteinFamily::stable(0.5), 1.0);
      std::vector<double> v(n);
      for (auto& x : v) x = sample_addend(law, rng) >= 1.0;
      const auto m = stats::mean_estimate(v);
      CHECK(std::abs(m.mean - mittag_leffler(0.5, 1.0, -1.0)) < 4.0 * m.std_error);
    }
    SUBCASE("poisson draws are geometric") {
      const AddendLaw law(BernsteinFamily::poisson(2.0), 1.0);
      std::vector<std::int64_t> v(n);
      for (auto& x : v) x = static_cast<std::int64_t>(sample_addend(law, rng));
      CHECK(stats::chi_square_test(v, [&](std::int64_t x) { return addend_pmf(law, x); }, 0).passed);
    }
  }

  TEST_CASE("relaxation equation") {
    SUBCASE("linear: central differences converge at second order") {
      const AddendLaw law(BernsteinFamily::linear(), 1.0);
      auto res = [&](double h) {
        return relaxation_residual(law, GridFunction::tabulate(0.0, h, static_cast<std::size_t>(5.0 / h) + 1,
                                                               [&](double x) { return addend_survival(law, x); }));
      };
      const double r1 = res(0.01), r2 = res(0.005);
      CHECK(r1 < 2e-5);
      CHECK(std::log2(r1 / r2) == doctest::Approx(2.0).epsilon(0.05));
    }
    SUBCASE("stable: residual falls under refinement") {
      const AddendLaw law(BernsteinFamily::stable(0.5), 1.0);
      auto res = [&](std::size_t n) {
        return relaxation_residual(law, MeshFunction::tabulate(graded_mesh(10.0, n, grading_for(0.5)), [&](double x) {
                                     return addend_survival(law, x);
                                   }));
      };
      const double coarse = res(250), fine = res(500);
      CHECK(fine < coarse);
      CHECK(fine < 5e-3);
    }
    SUBCASE("poisson: exact discrete identity") {
      const AddendLaw law(BernsteinFamily::poisson(1.0), 1.0);
      const auto u = GridFunction::tabulate(0.0, 1.0, 30, [&](double x) { return addend_survival(law, x); });
      CHECK(relaxation_residual(law, u) < 1e-15);
      // (kappa + xi) u(x) = kappa u(x - 1)
      for (int x = 1; x < 30; ++x) CHECK(2.0 * u[x] == doctest::Approx(u[x - 1]).epsilon(1e-15));
    }
  }
}
