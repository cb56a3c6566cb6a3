#pragma once

#include <cstdint>

#include "yulecrack/grid.hpp"
#include "yulecrack/levy.hpp"
#include "yulecrack/rng.hpp"

namespace yulecrack {

/// Jump law X = A_g(E) with E ~ Exp(xi) independent of the subordinator A_g.
/// Its Laplace transform is xi / (xi + g(theta)).
struct AddendLaw {
  AddendLaw(BernsteinFamily family, double xi);

  BernsteinFamily family;
  double xi;
};

/// Density of a continuous addend law.
///   Linear:   xi e^{-xi x}
///   Stable:   xi x^{alpha-1} E_{alpha,alpha}(-xi x^alpha)
///   Tempered: xi e^{-mu x} x^{alpha-1} E_{alpha,alpha}(-(xi - mu^alpha) x^alpha)
///   Gamma:    int_0^inf xi b^t x^{t-1} e^{-bx - xi t} / Gamma(t) dt (adaptive quadrature)
/// Throws DomainError for x <= 0 or a PoissonSub law (use addend_pmf).
double addend_density(const AddendLaw& law, double x);

/// Geometric pmf xi/(kappa+xi) (kappa/(kappa+xi))^x of a PoissonSub law.
double addend_pmf(const AddendLaw& law, std::int64_t x);

/// u(x) = P{X >= x}; solves D^g u = -xi u with u(0) = 1.
double addend_survival(const AddendLaw& law, double x);

/// P{X < x} = 1 - addend_survival, computed without cancellation when small.
double addend_cdf(const AddendLaw& law, double x);

/// -log E e^{-theta X} = log(1 + g(theta) / xi).
double addend_laplace_exponent(const AddendLaw& law, double theta);

double sample_addend(const AddendLaw& law, RngStream& rng);

/// max |D^g u + xi u| over interior nodes, for u tabulated from the survival
/// function. The first three cells are excluded for weakly singular kernels
/// (the survival function has an x^alpha cusp at the origin). For PoissonSub
/// only integer nodes x >= 1 are scored.
double relaxation_residual(const AddendLaw& law, const GridFunction& u);
double relaxation_residual(const AddendLaw& law, const MeshFunction& u);

namespace detail {

struct TemperedSeries {
  double survival;
  double cdf;
  double max_term;
  int terms;
};

/// Survival of the tempered addend law with rate `xi` through
/// 1 - (xi/mu^a) sum_j (-(xi - mu^a)/mu^a)^j P(a j + a, mu x).
TemperedSeries tempered_survival_series(double alpha, double mu, double xi, double x);

/// Survival of the gamma addend law: xi int_0^inf e^{-xi t} Q(t, b x) dt.
double gamma_survival_integral(double b, double xi, double x);

/// Density of the gamma addend law by quadrature over the subordinator time.
double gamma_density_integral(double b, double xi, double x);

}  // namespace detail
}  // namespace yulecrack
