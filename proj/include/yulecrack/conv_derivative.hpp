#pragma once

#include <optional>
#include <vector>

#include "yulecrack/grid.hpp"
#include "yulecrack/levy.hpp"

namespace yulecrack {

/// Convolution-type derivative D^g u(x) = int_0^x u'(x - s) nu(s) ds on a grid
/// starting at x = 0.
///
/// The tail kernel nu is integrated exactly over every cell (product
/// integration) against the piecewise-linear interpolant of u, so weakly
/// singular kernels keep first-order accuracy. Linear falls back to the
/// ordinary first derivative (second-order differences) and PoissonSub to
/// the exact window kappa [u(x) - u((x-1) v 0)].
///
/// Near the origin u is assumed to behave like u(0) + sum_l c_l x^{sigma_l};
/// starting weights make the scheme exact on those powers. The default
/// exponents are the multiples of alpha below 1 and 1 itself (Stable and Tempered);
/// pass `exponents` to override, or an empty list to disable.
///
/// Throws GridError for fewer than 8 points or a grid not starting at 0.
GridFunction conv_derivative(const GridFunction& u, const BernsteinFamily& f,
                             std::optional<std::vector<double>> exponents = std::nullopt);
MeshFunction conv_derivative(const MeshFunction& u, const BernsteinFamily& f,
                             std::optional<std::vector<double>> exponents = std::nullopt);

}  // namespace yulecrack
