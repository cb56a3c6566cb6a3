#pragma once

#include <optional>
#include <span>
#include <vector>

#include "yulecrack/compound.hpp"
#include "yulecrack/grid.hpp"

namespace yulecrack {

/// Uniform (y, t) grid with `ny` x `nt` nodes.
struct PlaneGrid {
  double y0, y1;
  std::size_t ny;
  double t0, t1;
  std::size_t nt;

  PlaneGrid halved() const;
};

/// y-mesh on [0, y_max] (graded for alpha < 1 kernels) and uniform t levels.
struct MeshPlan {
  double y_max;
  std::size_t y_intervals;
  double t0, t1;
  std::size_t nt;
};

struct TimeGrid {
  double t0, t1;
  std::size_t n;
};

/// Residual of d/dt f + lambda d/dy (y f) = 0 for the Linear-family density,
/// by central differences on interior nodes. `candidate` supplies the density
/// in place of the model's own (negative controls); the operator always uses
/// the model. Also fills
///   identity_max_abs:  |(e^{lambda t}/xi) d/dy (f*f) - d/dy (y f)| on the grid
///   alternate_max_abs: residual of d/dt f + lambda (e^{lambda t}/xi) d/dy (f*f)
/// with f*f by quadrature. `refine` repeats on the halved grid for the order.
ResidualReport pde_residual_exponential(const CompoundBirthModel& m, const PlaneGrid& grid,
                                        const std::optional<CompoundBirthModel>& candidate = std::nullopt,
                                        bool refine = true);

/// Max |(e^{lambda t}/xi) d/dy (f*f) - d/dy (y f)| with d/dy (f*f) from the
/// Leibniz rule f(y) f(0) + int_0^y f(z) f'(y - z) dz. Linear family.
double self_convolution_identity(const CompoundBirthModel& m, const PlaneGrid& grid);

/// Residual of d/dt f + lambda (e^{lambda t}/xi) D^g_y [f*f] at the mesh nodes
/// and the `nt` time levels, f*f by tanh-sinh quadrature, D^g by product
/// integration, d/dt by central differences with step 1e-4. The first three
/// y-cells are excluded; refinement halves the y-mesh. alternate_max_abs is the
/// residual with the boundary term (f*f)(0+) nu(y) added to D^g, which is
/// nonzero only at alpha = 1/2. PoissonSub is routed to
/// discrete_equation_residual on y = 0..floor(y_max).
///
/// Throws DomainError for GammaSub and for alpha < 1/2, where f*f is
/// unbounded at the origin and the Caputo-type derivative does not exist.
ResidualReport pde_residual_general(const CompoundBirthModel& m, const MeshPlan& plan,
                                    const std::optional<CompoundBirthModel>& candidate = std::nullopt,
                                    bool refine = true);

/// PoissonSub: residual of
///   d/dt q_y = -lambda kappa (e^{lambda t}/xi) [(q*q)_y - (q*q)_{y-1}]
/// with q_y(t) the geometric pmf, its exact t-derivative and
/// (q*q)_y = (y+1) a^2 kappa^y / (a+kappa)^{y+2}. Also fills
///   identity_max_abs:  |closed form - direct sum_{k<=y} q_k q_{y-k}|
///   alternate_max_abs: the residual when (q*q)_y carries a factor y instead of y+1.
ResidualReport discrete_equation_residual(const CompoundBirthModel& m, int y_max, std::span<const double> t_values,
                                          const std::optional<CompoundBirthModel>& candidate = std::nullopt);

/// Residual of d/dt F = -lambda (e^{lambda t}/xi) g(theta) F^2 along t for
/// F(theta, t) = a/(a + g(theta)), central differences in t.
ResidualReport laplace_ode_check(const CompoundBirthModel& m, std::span<const double> thetas, const TimeGrid& tg,
                                 const std::optional<CompoundBirthModel>& candidate = std::nullopt,
                                 bool refine = true);

}  // namespace yulecrack
