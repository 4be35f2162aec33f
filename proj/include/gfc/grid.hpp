#ifndef GFC_GRID_HPP
#define GFC_GRID_HPP

#include <cstddef>
#include <vector>

namespace gfc {

/// Uniform 1-D grid with trapezoid node weights (dx at interior
/// nodes, dx/2 at the two ends), so that sum(w) == x_max - x_min.
struct Grid {
  double x_min = 0.0;
  double x_max = 1.0;
  int n = 0;
  double dx = 0.0;
  std::vector<double> x;  // node positions, strictly increasing
  std::vector<double> w;  // quadrature weights

  Grid() = default;
  Grid(double x_min, double x_max, int n);

  int edges() const { return n - 1; }
  double edge_x(int e) const { return x[e] + 0.5 * dx; }
};

/// 0-form: one value per node.
struct Field0 {
  std::vector<double> v;

  Field0() = default;
  explicit Field0(std::size_t n, double fill = 0.0) : v(n, fill) {}
  explicit Field0(std::vector<double> values) : v(std::move(values)) {}

  std::size_t size() const { return v.size(); }
  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
};

/// 1-form: one value per edge midpoint (size n-1 on an n-node grid).
struct Field1 {
  std::vector<double> v;

  Field1() = default;
  explicit Field1(std::size_t m, double fill = 0.0) : v(m, fill) {}
  explicit Field1(std::vector<double> values) : v(std::move(values)) {}

  std::size_t size() const { return v.size(); }
  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
};

}  // namespace gfc

#endif
