#include "yulecrack/residuals.hpp"

#include <cmath>

#include "yulecrack/conv_derivative.hpp"
#include "yulecrack/error.hpp"
#include "yulecrack/quadrature.hpp"

namespace yulecrack {
namespace {

constexpr std::size_t kBoundaryCells = 3;
// t-derivative step of the general residual; refinement acts on the y-mesh.
constexpr double kTimeStep = 1e-4;

struct Accumulator {
  double max_abs = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double r) {
    max_abs = std::max(max_abs, std::abs(r));
    sum_sq += r * r;
    ++count;
  }
  double rms() const { return count ? std::sqrt(sum_sq / static_cast<double>(count)) : 0.0; }
};

double step_of(double a, double b, std::size_t n) {
  detail::require(n >= 3 && b > a, "residual grid: need at least 3 nodes on a non-empty range");
  return (b - a) / static_cast<double>(n - 1);
}

void set_order(ResidualReport& coarse, const ResidualReport& fine) {
  if (coarse.max_abs > 0.0 && fine.max_abs > 0.0) coarse.convergence_order = std::log2(coarse.max_abs / fine.max_abs);
}

std::optional<double> alpha_of(const BernsteinFamily& f) {
  if (f.is<family::Linear>()) return 1.0;
  if (f.is<family::Stable>()) return f.as<family::Stable>().alpha;
  if (f.is<family::TemperedStable>()) return f.as<family::TemperedStable>().alpha;
  return std::nullopt;
}

// (f*f)(y) for a continuous density, both endpoint factors taken from the
// exact distances.
double self_convolution(const CompoundBirthModel& m, double y, double t) {
  auto integrand = [&](double, double l, double r) {
    return l <= 0.0 || r <= 0.0 ? 0.0 : pdf_value(m, l, t) * pdf_value(m, r, t);
  };
  return quad::integrate_endpoints(integrand, 0.0, y, {.rel_tol = 1e-12});
}

ResidualReport exponential_once(const CompoundBirthModel& m, const PlaneGrid& g, const CompoundBirthModel& f_model) {
  const double hy = step_of(g.y0, g.y1, g.ny);
  const double ht = step_of(g.t0, g.t1, g.nt);
  const double lambda = m.lambda;
  const double xi = m.law.xi;
  auto f = [&](double y, double t) { return pdf_value(f_model, y, t); };
  Accumulator pde, alt;
  for (std::size_t k = 1; k + 1 < g.nt; ++k) {
    const double t = g.t0 + static_cast<double>(k) * ht;
    const double a = f_model.law.xi * std::exp(-f_model.lambda * t);
    for (std::size_t i = 1; i + 1 < g.ny; ++i) {
      const double y = g.y0 + static_cast<double>(i) * hy;
      const double dt = (f(y, t + ht) - f(y, t - ht)) / (2.0 * ht);
      const double dyf = ((y + hy) * f(y + hy, t) - (y - hy) * f(y - hy, t)) / (2.0 * hy);
      pde.add(dt + lambda * dyf);
      // Leibniz: d/dy (f*f) = f(y) f(0) + int_0^y f(z) f'(y - z) dz, f' = -a f.
      const double conv = quad::integrate([&](double z) { return f(z, t) * (-a) * f(y - z, t); }, 0.0, y,
                                          {.rel_tol = 1e-12});
      const double dconv = f(y, t) * a + conv;
      alt.add(dt + lambda * std::exp(lambda * t) / xi * dconv);
    }
  }
  ResidualReport r;
  r.max_abs = pde.max_abs;
  r.l2 = pde.rms();
  r.alternate_max_abs = alt.max_abs;
  r.grid = {{"y", g.y0, hy, g.ny}, {"t", g.t0, ht, g.nt}};
  return r;
}

std::vector<double> f_conv_exponents(double alpha) {
  // f*f ~ sum_j c_j y^{(j+2) alpha - 1} near 0; keep the non-integer powers in (0, 1).
  std::vector<double> out;
  for (int j = 0; j < 8 && out.size() < 3; ++j) {
    const double s = (j + 2) * alpha - 1.0;
    if (s >= 1.0) break;
    if (s > 1e-12 && std::abs(s - std::round(s)) > 1e-9) out.push_back(s);
  }
  return out;
}

ResidualReport general_once(const CompoundBirthModel& m, const MeshPlan& p, const CompoundBirthModel& f_model) {
  const auto alpha = alpha_of(m.law.family);
  const double ht = p.nt > 1 ? (p.t1 - p.t0) / static_cast<double>(p.nt - 1) : 0.0;
  detail::require(p.t0 > kTimeStep && p.nt >= 1, "pde_residual_general: need t0 > 0 and at least one t level");
  detail::require(p.y_intervals >= 8, "pde_residual_general: need at least 8 y-intervals");
  const auto nodes = *alpha < 1.0 ? graded_mesh(p.y_max, p.y_intervals, grading_for(*alpha))
                                  : graded_mesh(p.y_max, p.y_intervals, 1.0);
  const auto exps = f_conv_exponents(*alpha);
  Accumulator acc, boundary;
  for (std::size_t k = 0; k < p.nt; ++k) {
    const double t = p.t0 + static_cast<double>(k) * ht;
    const double a = f_model.law.xi * std::exp(-f_model.lambda * t);
    std::vector<double> u(nodes.size());
    // (f*f)(0+) = lim theta a^2 / (a + g)^2: a^2 at alpha = 1/2, else 0.
    u[0] = std::abs(*alpha - 0.5) < 1e-15 ? a * a : 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) u[i] = self_convolution(f_model, nodes[i], t);
    const auto d = conv_derivative(MeshFunction(nodes, u), m.law.family, exps);
    for (std::size_t i = kBoundaryCells + 1; i < nodes.size(); ++i) {
      const double y = nodes[i];
      const double dt =
          (pdf_value(f_model, y, t + kTimeStep) - pdf_value(f_model, y, t - kTimeStep)) / (2.0 * kTimeStep);
      const double op = m.lambda * std::exp(m.lambda * t) / m.law.xi;
      acc.add(dt + op * d[i]);
      boundary.add(dt + op * (d[i] + u[0] * levy_tail(m.law.family, y)));
    }
  }
  double widest = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) widest = std::max(widest, nodes[i] - nodes[i - 1]);
  ResidualReport r;
  r.max_abs = acc.max_abs;
  r.l2 = acc.rms();
  r.alternate_max_abs = boundary.max_abs;
  r.grid = {{"y", 0.0, widest, nodes.size()}, {"t", p.t0, ht, p.nt}};
  return r;
}

ResidualReport laplace_once(const CompoundBirthModel& m, std::span<const double> thetas, const TimeGrid& tg,
                            const CompoundBirthModel& f_model) {
  const double ht = step_of(tg.t0, tg.t1, tg.n);
  Accumulator acc;
  for (double theta : thetas) {
    const double g = laplace_exponent(m.law.family, theta);
    for (std::size_t k = 1; k + 1 < tg.n; ++k) {
      const double t = tg.t0 + static_cast<double>(k) * ht;
      const double dt = (laplace_pdf(f_model, theta, t + ht) - laplace_pdf(f_model, theta, t - ht)) / (2.0 * ht);
      const double F = laplace_pdf(f_model, theta, t);
      acc.add(dt + m.lambda * std::exp(m.lambda * t) / m.law.xi * g * F * F);
    }
  }
  ResidualReport r;
  r.max_abs = acc.max_abs;
  r.l2 = acc.rms();
  r.grid = {{"t", tg.t0, ht, tg.n}};
  return r;
}

}  // namespace

PlaneGrid PlaneGrid::halved() const { return {y0, y1, 2 * ny - 1, t0, t1, 2 * nt - 1}; }

ResidualReport pde_residual_exponential(const CompoundBirthModel& m, const PlaneGrid& grid,
                                        const std::optional<CompoundBirthModel>& candidate, bool refine) {
  if (!m.law.family.is<family::Linear>()) throw DomainError("pde_residual_exponential: Linear family only");
  const auto& f_model = candidate ? *candidate : m;
  if (!f_model.law.family.is<family::Linear>()) throw DomainError("pde_residual_exponential: Linear candidate only");
  detail::require(grid.y0 > 0.0, "pde_residual_exponential: y0 must be > 0");
  auto r = exponential_once(m, grid, f_model);
  r.identity_max_abs = self_convolution_identity(f_model, grid);
  if (refine) set_order(r, exponential_once(m, grid.halved(), f_model));
  return r;
}

double self_convolution_identity(const CompoundBirthModel& m, const PlaneGrid& g) {
  if (!m.law.family.is<family::Linear>()) throw DomainError("self_convolution_identity: Linear family only");
  const double hy = step_of(g.y0, g.y1, g.ny);
  const double ht = step_of(g.t0, g.t1, g.nt);
  double worst = 0.0;
  for (std::size_t k = 0; k < g.nt; ++k) {
    const double t = g.t0 + static_cast<double>(k) * ht;
    const double a = m.law.xi * std::exp(-m.lambda * t);
    auto f = [&](double y) { return pdf_value(m, y, t); };
    for (std::size_t i = 0; i < g.ny; ++i) {
      const double y = g.y0 + static_cast<double>(i) * hy;
      const double inner =
          quad::integrate([&](double z) { return f(z) * (-a) * f(y - z); }, 0.0, y, {.rel_tol = 1e-13});
      const double lhs = std::exp(m.lambda * t) / m.law.xi * (f(y) * a + inner);
      const double rhs = f(y) * (1.0 - a * y);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

ResidualReport pde_residual_general(const CompoundBirthModel& m, const MeshPlan& plan,
                                    const std::optional<CompoundBirthModel>& candidate, bool refine) {
  const auto& f_model = candidate ? *candidate : m;
  if (m.law.family.is_discrete()) {
    std::vector<double> ts;
    const double ht = step_of(plan.t0, plan.t1, plan.nt);
    for (std::size_t k = 0; k < plan.nt; ++k) ts.push_back(plan.t0 + static_cast<double>(k) * ht);
    return discrete_equation_residual(m, static_cast<int>(std::floor(plan.y_max)), ts, candidate);
  }
  const auto alpha = alpha_of(m.law.family);
  if (!alpha || !alpha_of(f_model.law.family))
    throw DomainError("pde_residual_general: the self-convolution of the gamma-case density is unbounded at 0");
  if (*alpha < 0.5 || *alpha_of(f_model.law.family) < 0.5)
    throw DomainError("pde_residual_general: f*f is unbounded at 0 for alpha < 1/2");
  auto r = general_once(m, plan, f_model);
  if (refine) {
    MeshPlan fine = plan;
    fine.y_intervals *= 2;
    set_order(r, general_once(m, fine, f_model));
  }
  return r;
}

ResidualReport discrete_equation_residual(const CompoundBirthModel& m, int y_max, std::span<const double> t_values,
                                          const std::optional<CompoundBirthModel>& candidate) {
  if (!m.law.family.is_discrete()) throw DomainError("discrete_equation_residual: PoissonSub family only");
  const auto& f_model = candidate ? *candidate : m;
  if (!f_model.law.family.is_discrete()) throw DomainError("discrete_equation_residual: PoissonSub candidate only");
  detail::require(y_max >= 0, "discrete_equation_residual: y_max must be >= 0");
  const double kappa = m.law.family.as<family::PoissonSub>().kappa;
  const double ck = f_model.law.family.as<family::PoissonSub>().kappa;
  Accumulator acc, stated;
  double identity = 0.0;
  for (double t : t_values) {
    detail::require(t >= 0.0, "discrete_equation_residual: t must be >= 0");
    const double a = f_model.law.xi * std::exp(-f_model.lambda * t);
    auto q = [&](int y) { return a * std::pow(ck, y) / std::pow(a + ck, y + 1); };
    auto conv = [&](int y, double factor) {
      return y < 0 ? 0.0 : factor * a * a * std::pow(ck, y) / std::pow(a + ck, y + 2);
    };
    const double op = m.lambda * kappa * std::exp(m.lambda * t) / m.law.xi;
    for (int y = 0; y <= y_max; ++y) {
      // d/dt q_y = -lambda a d/da q_y
      const double dq = -f_model.lambda * a * std::pow(ck, y) * (ck - y * a) / std::pow(a + ck, y + 2);
      acc.add(dq + op * (conv(y, y + 1.0) - conv(y - 1, y)));
      stated.add(dq + op * (conv(y, y) - conv(y - 1, y - 1.0)));
      double direct = 0.0;
      for (int k = 0; k <= y; ++k) direct += q(k) * q(y - k);
      identity = std::max(identity, std::abs(direct - conv(y, y + 1.0)));
    }
  }
  ResidualReport r;
  r.max_abs = acc.max_abs;
  r.l2 = acc.rms();
  r.identity_max_abs = identity;
  r.alternate_max_abs = stated.max_abs;
  r.grid = {{"y", 0.0, 1.0, static_cast<std::size_t>(y_max) + 1}, {"t", t_values.empty() ? 0.0 : t_values[0], 0.0,
                                                                     t_values.size()}};
  return r;
}

ResidualReport laplace_ode_check(const CompoundBirthModel& m, std::span<const double> thetas, const TimeGrid& tg,
                                 const std::optional<CompoundBirthModel>& candidate, bool refine) {
  const auto& f_model = candidate ? *candidate : m;
  auto r = laplace_once(m, thetas, tg, f_model);
  if (refine) set_order(r, laplace_once(m, thetas, {tg.t0, tg.t1, 2 * tg.n - 1}, f_model));
  return r;
}

}  // namespace yulecrack
