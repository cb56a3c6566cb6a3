#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace yulecrack {

/// Samples of a function on the uniform grid origin + i * step.
class GridFunction {
 public:
  GridFunction(double origin, double step, std::vector<double> values);

  template <class F>
  static GridFunction tabulate(double origin, double step, std::size_t count, F&& f) {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = f(origin + static_cast<double>(i) * step);
    return GridFunction(origin, step, std::move(v));
  }

  double origin() const { return origin_; }
  double step() const { return step_; }
  std::size_t size() const { return values_.size(); }
  double node(std::size_t i) const { return origin_ + static_cast<double>(i) * step_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  double origin_;
  double step_;
  std::vector<double> values_;
};

/// Samples of a function on an arbitrary strictly increasing mesh.
class MeshFunction {
 public:
  MeshFunction(std::vector<double> nodes, std::vector<double> values);

  template <class F>
  static MeshFunction tabulate(std::vector<double> nodes, F&& f) {
    std::vector<double> v(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = f(nodes[i]);
    return MeshFunction(std::move(nodes), std::move(v));
  }
  static MeshFunction from_grid(const GridFunction& g);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
};

/// Mesh 0 = y_0 < ... < y_n = length with y_i = length * (i/n)^grading,
/// clustering nodes near the origin for grading > 1.
std::vector<double> graded_mesh(double length, std::size_t intervals, double grading);

/// Grading exponent used for densities with a y^{alpha-1} singularity: 2/alpha capped at 4.
double grading_for(double alpha);

struct GridMeta {
  std::string axis;
  double origin;
  double step;  ///< uniform step, or the largest spacing on a graded mesh
  std::size_t count;
};

/// Outcome of a residual verification.
struct ResidualReport {
  double max_abs = 0.0;
  double l2 = 0.0;
  std::vector<GridMeta> grid;
  /// log2(max_abs(h) / max_abs(h/2)) when a refinement was run.
  std::optional<double> convergence_order;
  /// Largest deviation in an auxiliary closed-form identity checked alongside.
  std::optional<double> identity_max_abs;
  /// Residual of the equation in its alternate (convolution) form.
  std::optional<double> alternate_max_abs;
};

}  // namespace yulecrack
