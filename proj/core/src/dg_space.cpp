#include "rdschwarz/dg_space.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rdschwarz {

GaussRule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  // P_n(x) and P_n'(x) on [-1,1] by the three-term recurrence
  auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int m = 2; m <= n; ++m) {
      const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
      p0 = p1;
      p1 = p2;
    }
    return std::array<double, 2>{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };

  GaussRule1D rule;
  rule.points.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x)[1];
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(k);
    const auto hi = static_cast<std::size_t>(n - 1 - k);
    rule.points[lo] = 0.5 * (1.0 - x);
    rule.points[hi] = 0.5 * (1.0 + x);
    rule.weights[lo] = 0.5 * w;
    rule.weights[hi] = 0.5 * w;
  }
  if (n % 2 == 1) rule.points[static_cast<std::size_t>(n / 2)] = 0.5;
  return rule;
}

QuadratureRule make_quadrature(int n) {
  const GaussRule1D g = gauss_legendre(n);
  QuadratureRule q;
  q.points.reserve(g.points.size() * g.points.size());
  q.weights.reserve(q.points.capacity());
  for (std::size_t b = 0; b < g.points.size(); ++b)
    for (std::size_t a = 0; a < g.points.size(); ++a) {
      q.points.push_back({g.points[a], g.points[b]});
      q.weights.push_back(g.weights[a] * g.weights[b]);
    }
  return q;
}

LagrangeBasis1D::LagrangeBasis1D(int degree) : degree_(degree) {
  if (degree < 0) throw std::invalid_argument("LagrangeBasis1D: negative degree");
  if (degree == 0) {
    nodes_ = {0.5};
    return;
  }
  for (int k = 0; k <= degree; ++k) nodes_.push_back(static_cast<double>(k) / degree);
}

double LagrangeBasis1D::value(int k, double x) const {
  double v = 1.0;
  const double xk = nodes_[static_cast<std::size_t>(k)];
  for (int m = 0; m <= degree_; ++m) {
    if (m == k) continue;
    const double xm = nodes_[static_cast<std::size_t>(m)];
    v *= (x - xm) / (xk - xm);
  }
  return v;
}

double LagrangeBasis1D::derivative(int k, double x) const {
  const double xk = nodes_[static_cast<std::size_t>(k)];
  double sum = 0.0;
  for (int l = 0; l <= degree_; ++l) {
    if (l == k) continue;
    double term = 1.0 / (xk - nodes_[static_cast<std::size_t>(l)]);
    for (int m = 0; m <= degree_; ++m) {
      if (m == k || m == l) continue;
      const double xm = nodes_[static_cast<std::size_t>(m)];
      term *= (x - xm) / (xk - xm);
    }
    sum += term;
  }
  return sum;
}

BasisValues eval_basis(int degree, Point2 point) {
  for (double c : point)
    if (!(c >= 0.0 && c <= 1.0))
      throw std::invalid_argument("eval_basis: point outside the reference cell");
  const LagrangeBasis1D b(degree);
  const int n1 = degree + 1;
  BasisValues out;
  out.values.resize(static_cast<std::size_t>(n1 * n1));
  out.gradients.resize(out.values.size());
  for (int ky = 0; ky < n1; ++ky)
    for (int kx = 0; kx < n1; ++kx) {
      const auto k = static_cast<std::size_t>(kx + n1 * ky);
      const double vx = b.value(kx, point[0]);
      const double vy = b.value(ky, point[1]);
      out.values[k] = vx * vy;
      out.gradients[k] = {b.derivative(kx, point[0]) * vy, vx * b.derivative(ky, point[1])};
    }
  return out;
}

DgSpace::DgSpace(int level, int degree, int groups)
    : level_(level), degree_(degree), groups_(groups) {
  if (level < 0) throw std::invalid_argument("DgSpace: negative level");
  if (degree < 0) throw std::invalid_argument("DgSpace: negative degree");
  if (groups < 1) throw std::invalid_argument("DgSpace: need at least one group");
  n_cells_ = std::size_t{1} << (2 * level);
}

}  // namespace rdschwarz
