#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace rdschwarz {

using Point2 = std::array<double, 2>;

/// Gauss-Legendre rule on the unit interval [0, 1].
struct GaussRule1D {
  std::vector<double> points;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [0, 1], exact up to degree 2n-1.
GaussRule1D gauss_legendre(int n);

/// Tensor-product rule on the unit square; weights sum to 1.
struct QuadratureRule {
  std::vector<Point2> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

/// n x n Gauss-Legendre tensor rule on [0,1]^2. Points are ordered with the
/// x index running fastest.
QuadratureRule make_quadrature(int n);

/// Lagrange polynomials of degree p on equispaced nodes of [0,1]
/// (the single node 1/2 for p = 0).
class LagrangeBasis1D {
public:
  explicit LagrangeBasis1D(int degree);

  int degree() const { return degree_; }
  const std::vector<double>& nodes() const { return nodes_; }
  double value(int k, double x) const;
  double derivative(int k, double x) const;

private:
  int degree_;
  std::vector<double> nodes_;
};

struct BasisValues {
  std::vector<double> values;     // (p+1)^2 entries
  std::vector<Point2> gradients;  // reference-cell gradients
};

/// Nodal tensor-product Q_p basis on the reference cell. Local node k = kx + (p+1)*ky.
/// Throws std::invalid_argument if the point lies outside [0,1]^2.
BasisValues eval_basis(int degree, Point2 point);

/// Degree-of-freedom layout of the vector-valued discontinuous space on one mesh level:
/// cell-major, then group, then tensor node.
class DgSpace {
public:
  DgSpace(int level, int degree, int groups);

  int level() const { return level_; }
  int degree() const { return degree_; }
  int groups() const { return groups_; }
  std::size_t n_cells() const { return n_cells_; }
  int nodes_per_cell() const { return (degree_ + 1) * (degree_ + 1); }
  int dofs_per_cell() const { return groups_ * nodes_per_cell(); }
  std::size_t n_dofs() const { return n_cells_ * static_cast<std::size_t>(dofs_per_cell()); }

  std::size_t dof(std::size_t cell, int group, int node) const {
    return (cell * static_cast<std::size_t>(groups_) + static_cast<std::size_t>(group)) *
               static_cast<std::size_t>(nodes_per_cell()) +
           static_cast<std::size_t>(node);
  }

private:
  int level_;
  int degree_;
  int groups_;
  std::size_t n_cells_;
};

}  // namespace rdschwarz
