#include "yulecrack/grid.hpp"

#include <algorithm>
#include <cmath>

#include "yulecrack/error.hpp"

namespace yulecrack {

GridFunction::GridFunction(double origin, double step, std::vector<double> values)
    : origin_(origin), step_(step), values_(std::move(values)) {
  if (!(step > 0.0) || !std::isfinite(step)) throw GridError("GridFunction: step must be > 0");
  if (values_.empty()) throw GridError("GridFunction: values must be non-empty");
}

MeshFunction::MeshFunction(std::vector<double> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (nodes_.empty()) throw GridError("MeshFunction: nodes must be non-empty");
  if (nodes_.size() != values_.size()) throw GridError("MeshFunction: nodes and values differ in length");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i] > nodes_[i - 1])) throw GridError("MeshFunction: nodes must be strictly increasing");
}

MeshFunction MeshFunction::from_grid(const GridFunction& g) {
  std::vector<double> nodes(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) nodes[i] = g.node(i);
  return MeshFunction(std::move(nodes), g.values());
}

std::vector<double> graded_mesh(double length, std::size_t intervals, double grading) {
  if (!(length > 0.0)) throw GridError("graded_mesh: length must be > 0");
  if (intervals < 1) throw GridError("graded_mesh: need at least one interval");
  if (!(grading >= 1.0)) throw GridError("graded_mesh: grading must be >= 1");
  std::vector<double> y(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i)
    y[i] = length * std::pow(static_cast<double>(i) / static_cast<double>(intervals), grading);
  y.back() = length;
  return y;
}

double grading_for(double alpha) { return std::clamp(2.0 / alpha, 1.0, 4.0); }

}  // namespace yulecrack
