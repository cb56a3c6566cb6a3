#include "yulecrack/conv_derivative.hpp"

#include <algorithm>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <cmath>
#include <optional>

#include "yulecrack/error.hpp"
#include "yulecrack/quadrature.hpp"

namespace yulecrack {
namespace {

constexpr std::size_t kMinPoints = 8;

void check_mesh(const std::vector<double>& x) {
  if (x.size() < kMinPoints) throw GridError("conv_derivative: grid needs at least 8 points");
  if (x.front() != 0.0) throw GridError("conv_derivative: grid must start at 0");
}

// Second-order first derivative on a nonuniform mesh.
std::vector<double> first_derivative(const std::vector<double>& x, const std::vector<double>& u) {
  const std::size_t n = x.size();
  std::vector<double> d(n);
  auto three_point = [&](std::size_t i0, std::size_t at) {
    // derivative at x[at] of the parabola through nodes i0, i0+1, i0+2
    const double a = x[i0], b = x[i0 + 1], c = x[i0 + 2], t = x[at];
    return u[i0] * (2 * t - b - c) / ((a - b) * (a - c)) + u[i0 + 1] * (2 * t - a - c) / ((b - a) * (b - c)) +
           u[i0 + 2] * (2 * t - a - b) / ((c - a) * (c - b));
  };
  d[0] = three_point(0, 0);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = three_point(i - 1, i);
  d[n - 1] = three_point(n - 3, n - 1);
  return d;
}

double interpolate(const std::vector<double>& x, const std::vector<double>& u, double at) {
  if (at <= x.front()) return u.front();
  if (at >= x.back()) return u.back();
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const std::size_t k = static_cast<std::size_t>(it - x.begin());
  const double w = (at - x[k - 1]) / (x[k] - x[k - 1]);
  return (1.0 - w) * u[k - 1] + w * u[k];
}

std::vector<double> poisson_window(const std::vector<double>& x, const std::vector<double>& u, double kappa) {
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    d[i] = kappa * (u[i] - interpolate(x, u, std::max(x[i] - 1.0, 0.0)));
  return d;
}

using Columns = std::vector<std::vector<double>>;

// Product integration against the piecewise-linear interpolant of u:
// D(x_i) = sum_k slope_k [N(x_i - x_{k-1}) - N(x_i - x_k)].
// Several functions share one pass over the kernel weights.
Columns product_integration(const std::vector<double>& x, const Columns& us, const BernsteinFamily& f) {
  const std::size_t n = x.size();
  Columns slopes(us.size(), std::vector<double>(n, 0.0));
  for (std::size_t c = 0; c < us.size(); ++c)
    for (std::size_t k = 1; k < n; ++k) slopes[c][k] = (us[c][k] - us[c][k - 1]) / (x[k] - x[k - 1]);
  Columns d(us.size(), std::vector<double>(n, 0.0));
  for (std::size_t i = 1; i < n; ++i) {
    double upper = levy_tail_integral(f, x[i] - x[0]);
    for (std::size_t k = 1; k <= i; ++k) {
      const double lower = levy_tail_integral(f, x[i] - x[k]);
      const double w = upper - lower;
      for (std::size_t c = 0; c < us.size(); ++c) d[c][i] += slopes[c][k] * w;
      upper = lower;
    }
  }
  return d;
}

// Uniform spacing: cell weights depend only on i - k.
Columns product_integration_uniform(double h, const Columns& us, const BernsteinFamily& f) {
  const std::size_t n = us.front().size();
  std::vector<double> prim(n);
  for (std::size_t m = 0; m < n; ++m) prim[m] = levy_tail_integral(f, static_cast<double>(m) * h);
  std::vector<double> w(n, 0.0);
  for (std::size_t m = 0; m + 1 < n; ++m) w[m] = prim[m + 1] - prim[m];
  Columns d(us.size(), std::vector<double>(n, 0.0));
  for (std::size_t c = 0; c < us.size(); ++c) {
    const auto& u = us[c];
    for (std::size_t i = 1; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t k = 1; k <= i; ++k) acc += (u[k] - u[k - 1]) * w[i - k];
      d[c][i] = acc / h;
    }
  }
  return d;
}

// Exponents x^sigma that the starting weights make exact: multiples of alpha
// below 1, at most three, plus 1 so a linear part of u is not misattributed
// (the base scheme is already exact for it). Higher powers are already small
// at the first nodes and their coefficients cannot be recovered from u - u_0.
std::vector<double> correction_exponents(double alpha) {
  std::vector<double> out;
  for (int l = 1; out.size() < 3 && l * alpha < 1.0 - 1e-9; ++l) out.push_back(l * alpha);
  out.push_back(1.0);
  return out;
}

// Exact D^g x^sigma at x. For the tempered kernel the transform
// ((mu+theta)^alpha - mu^alpha) Gamma(1+sigma) theta^{-1-sigma} inverts to a
// Kummer function; other kernels are integrated numerically.
double exact_power_derivative(const BernsteinFamily& f, double sigma, double x) {
  double a, mu = 0.0;
  if (f.is<family::Stable>()) {
    a = f.as<family::Stable>().alpha;
  } else if (f.is<family::TemperedStable>()) {
    a = f.as<family::TemperedStable>().alpha;
    mu = f.as<family::TemperedStable>().mu;
  } else {
    auto integrand = [&](double, double l, double r) {
      return l <= 0.0 || r <= 0.0 ? 0.0 : sigma * std::pow(l, sigma - 1.0) * levy_tail(f, r);
    };
    return quad::integrate_endpoints(integrand, 0.0, x, {.rel_tol = 1e-12});
  }
  const double head = std::exp(std::lgamma(1.0 + sigma) - std::lgamma(1.0 + sigma - a)) * std::pow(x, sigma - a);
  if (mu == 0.0) return head;
  return head * boost::math::hypergeometric_1F1(-a, 1.0 + sigma - a, -mu * x) - std::pow(mu, a) * std::pow(x, sigma);
}

// Starting-weight correction: near the origin the survival functions behave
// like 1 + sum_l c_l x^{l alpha}, which the piecewise-linear interpolant resolves
// poorly at any fixed node index. Add sum_j w_ij (u_j - u_0), j = 1..m, with
// weights chosen so the scheme is exact for x^sigma_l.
std::vector<double> product_with_starting_weights(const std::vector<double>& x, const std::vector<double>& u,
                                                 const BernsteinFamily& f, std::optional<double> uniform_step,
                                                 std::optional<std::vector<double>> exponents) {
  auto scheme = [&](const Columns& us) {
    return uniform_step ? product_integration_uniform(*uniform_step, us, f) : product_integration(x, us, f);
  };
  if (!exponents) {
    if (f.is<family::Stable>()) exponents = correction_exponents(f.as<family::Stable>().alpha);
    if (f.is<family::TemperedStable>()) exponents = correction_exponents(f.as<family::TemperedStable>().alpha);
  }
  if (!exponents || exponents->empty()) return scheme({u}).front();
  if (x.size() <= exponents->size() + 1) throw GridError("conv_derivative: grid too coarse for the starting weights");

  const auto& sig = *exponents;
  const std::size_t m = sig.size();
  const std::size_t n = x.size();
  // Test functions (x / x_m)^sigma keep the m x m system well scaled.
  const double scale = x[m];
  Columns cols{u};
  for (std::size_t l = 0; l < m; ++l) {
    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i) phi[i] = std::pow(x[i] / scale, sig[l]);
    cols.push_back(std::move(phi));
  }
  const auto all = scheme(cols);
  auto d = all.front();
  // defect[l][i] = exact - discrete for phi_l
  Columns defect(m, std::vector<double>(n, 0.0));
  for (std::size_t l = 0; l < m; ++l) {
    const double norm = std::pow(scale, sig[l]);
    for (std::size_t i = 1; i < n; ++i) defect[l][i] = exact_power_derivative(f, sig[l], x[i]) / norm - all[l + 1][i];
  }
  // V[l][j] = (x_{j+1} / x_m)^sigma_l.
  Columns v(m, std::vector<double>(m));
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t j = 0; j < m; ++j) v[l][j] = std::pow(x[j + 1] / scale, sig[l]);
  std::vector<double> du(m);
  for (std::size_t j = 0; j < m; ++j) du[j] = u[j + 1] - u[0];
  // The correction sum_j w_ij du_j equals defect_i . c with V^T c = du;
  // Gaussian elimination with partial pivoting.
  Columns a(m, std::vector<double>(m + 1));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) a[r][c] = v[c][r];
    a[r][m] = du[r];
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    for (std::size_t r = col + 1; r < m; ++r) {
      const double fac = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= fac * a[col][c];
    }
  }
  std::vector<double> coef(m);
  for (std::size_t r = m; r-- > 0;) {
    double acc = a[r][m];
    for (std::size_t c = r + 1; c < m; ++c) acc -= a[r][c] * coef[c];
    coef[r] = acc / a[r][r];
  }
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t l = 0; l < m; ++l) d[i] += coef[l] * defect[l][i];
  return d;
}

std::vector<double> dispatch(const std::vector<double>& x, const std::vector<double>& u, const BernsteinFamily& f,
                             std::optional<double> uniform_step, std::optional<std::vector<double>> exponents) {
  check_mesh(x);
  if (f.is<family::Linear>()) return first_derivative(x, u);
  if (f.is<family::PoissonSub>()) return poisson_window(x, u, f.as<family::PoissonSub>().kappa);
  return product_with_starting_weights(x, u, f, uniform_step, std::move(exponents));
}

}  // namespace

GridFunction conv_derivative(const GridFunction& u, const BernsteinFamily& f,
                             std::optional<std::vector<double>> exponents) {
  if (u.origin() != 0.0) throw GridError("conv_derivative: grid must start at 0");
  const auto mesh = MeshFunction::from_grid(u);
  return GridFunction(0.0, u.step(), dispatch(mesh.nodes(), mesh.values(), f, u.step(), std::move(exponents)));
}

MeshFunction conv_derivative(const MeshFunction& u, const BernsteinFamily& f,
                             std::optional<std::vector<double>> exponents) {
  return MeshFunction(u.nodes(), dispatch(u.nodes(), u.values(), f, std::nullopt, std::move(exponents)));
}

}  // namespace yulecrack
