#include "rdschwarz/oracles/dense_oracles.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace rdschwarz::oracles {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

int cells_per_side(int level) { return 1 << level; }

std::size_t n_cells(int level) {
  const auto n = static_cast<std::size_t>(cells_per_side(level));
  return n * n;
}

struct Vec2 {
  double x, y;
};
double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// One side of a face as seen by the jump/average definitions.
struct Side {
  std::size_t cell;
  Vec2 normal;   // outward normal of this cell
  double scale;  // 1/sqrt(2) inside, 1 on the boundary
};

void add_face(MatrixXd& a, int level, const ProblemParams& params, const std::vector<Side>& sides, Vec2 start,
              Vec2 tangent, double length, const LineRule& rule) {
  const int G = params.groups();
  const double h = 1.0 / cells_per_side(level);
  const double fs = params.face_scale;
  const double pen = 4.0 * params.penalty / h;
  for (std::size_t q = 0; q < rule.x.size(); ++q) {
    const double px = start.x + rule.x[q] * length * tangent.x;
    const double py = start.y + rule.x[q] * length * tangent.y;
    const double w = rule.w[q] * length;
    std::vector<ShapeAt> shapes;
    for (const Side& s : sides) shapes.push_back(q1_shape(level, s.cell, px, py));

    for (std::size_t su = 0; su < sides.size(); ++su)
      for (std::size_t sv = 0; sv < sides.size(); ++sv)
        for (int iu = 0; iu < 4; ++iu)
          for (int iv = 0; iv < 4; ++iv) {
            const Side& u = sides[su];
            const Side& v = sides[sv];
            const ShapeAt& fu = shapes[su];
            const ShapeAt& fv = shapes[sv];
            const Vec2 ju{u.scale * fu.value[iu] * u.normal.x, u.scale * fu.value[iu] * u.normal.y};
            const Vec2 jv{v.scale * fv.value[iv] * v.normal.x, v.scale * fv.value[iv] * v.normal.y};
            const Vec2 gu{u.scale * fu.grad[iu][0], u.scale * fu.grad[iu][1]};
            const Vec2 gv{v.scale * fv.grad[iv][0], v.scale * fv.grad[iv][1]};
            const double val = fs * w * (pen * dot(ju, jv) - 2.0 * (dot(ju, gv) + dot(gu, jv)));
            for (int g = 0; g < G; ++g)
              a(static_cast<Eigen::Index>(q1_dof(v.cell, g, iv, G)), static_cast<Eigen::Index>(q1_dof(u.cell, g, iu, G))) +=
                  params.diffusion[static_cast<std::size_t>(g)] * val;
          }
  }
}

}  // namespace

LineRule golub_welsch(int n) {
  if (n < 1) throw std::invalid_argument("golub_welsch: n must be positive");
  MatrixXd jacobi = MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(jacobi);
  LineRule rule;
  for (int k = 0; k < n; ++k) {
    const double v0 = eig.eigenvectors()(0, k);
    rule.x.push_back(0.5 * (eig.eigenvalues()(k) + 1.0));
    rule.w.push_back(v0 * v0);  // 2 v0^2 on [-1,1], halved on [0,1]
  }
  return rule;
}

std::size_t q1_dof(std::size_t cell, int group, int node, int groups) {
  return (cell * static_cast<std::size_t>(groups) + static_cast<std::size_t>(group)) * 4 + static_cast<std::size_t>(node);
}

ShapeAt q1_shape(int mesh_level, std::size_t cell, double x, double y) {
  const int n = cells_per_side(mesh_level);
  const double h = 1.0 / n;
  const double x0 = static_cast<double>(cell % static_cast<std::size_t>(n)) * h;
  const double y0 = static_cast<double>(cell / static_cast<std::size_t>(n)) * h;
  const double s = (x - x0) / h, t = (y - y0) / h;
  const double lx[2] = {1.0 - s, s}, ly[2] = {1.0 - t, t};
  const double dx[2] = {-1.0 / h, 1.0 / h};
  ShapeAt out{};
  for (int ky = 0; ky < 2; ++ky)
    for (int kx = 0; kx < 2; ++kx) {
      const int k = kx + 2 * ky;
      out.value[k] = lx[kx] * ly[ky];
      out.grad[k][0] = dx[kx] * ly[ky];
      out.grad[k][1] = lx[kx] * dx[ky];
    }
  return out;
}

MatrixXd assemble_dense(int level, const ProblemParams& params) {
  if (params.degree != 1) throw std::invalid_argument("assemble_dense: bilinear elements only");
  const int G = params.groups();
  const int n = cells_per_side(level);
  const double h = 1.0 / n;
  const auto N = static_cast<Eigen::Index>(n_cells(level) * static_cast<std::size_t>(G) * 4);
  MatrixXd a = MatrixXd::Zero(N, N);
  auto at = [&](std::size_t c, int g, int i) { return static_cast<Eigen::Index>(q1_dof(c, g, i, G)); };

  const LineRule vol = golub_welsch(params.quadrature_order());
  const LineRule rvol = golub_welsch(params.reaction_quadrature_order());
  const LineRule line = golub_welsch(params.quadrature_order());

  for (std::size_t c = 0; c < n_cells(level); ++c) {
    const double x0 = static_cast<double>(c % static_cast<std::size_t>(n)) * h;
    const double y0 = static_cast<double>(c / static_cast<std::size_t>(n)) * h;
    for (std::size_t qy = 0; qy < vol.x.size(); ++qy)
      for (std::size_t qx = 0; qx < vol.x.size(); ++qx) {
        const ShapeAt f = q1_shape(level, c, x0 + h * vol.x[qx], y0 + h * vol.x[qy]);
        const double w = h * h * vol.w[qx] * vol.w[qy];
        for (int g = 0; g < G; ++g)
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
              a(at(c, g, i), at(c, g, j)) += w * params.diffusion[static_cast<std::size_t>(g)] *
                                             (f.grad[i][0] * f.grad[j][0] + f.grad[i][1] * f.grad[j][1]);
      }
    for (std::size_t qy = 0; qy < rvol.x.size(); ++qy)
      for (std::size_t qx = 0; qx < rvol.x.size(); ++qx) {
        const double x = x0 + h * rvol.x[qx], y = y0 + h * rvol.x[qy];
        const ShapeAt f = q1_shape(level, c, x, y);
        const MatrixXd sigma = params.reaction.at(x, y);
        const double w = h * h * rvol.w[qx] * rvol.w[qy];
        for (int g = 0; g < G; ++g)
          for (int k = 0; k < G; ++k)
            for (int i = 0; i < 4; ++i)
              for (int j = 0; j < 4; ++j) a(at(c, g, i), at(c, k, j)) += w * sigma(g, k) * f.value[i] * f.value[j];
      }
  }

  const double r2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(j * n + i);
      const double x0 = i * h, y0 = j * h;
      // vertical face on the east side, horizontal face on the north side
      if (i + 1 < n)
        add_face(a, level, params, {{c, {1, 0}, r2}, {c + 1, {-1, 0}, r2}}, {x0 + h, y0}, {0, 1}, h, line);
      if (j + 1 < n)
        add_face(a, level, params, {{c, {0, 1}, r2}, {c + static_cast<std::size_t>(n), {0, -1}, r2}}, {x0, y0 + h},
                 {1, 0}, h, line);
      if (i == 0) add_face(a, level, params, {{c, {-1, 0}, 1.0}}, {x0, y0}, {0, 1}, h, line);
      if (i == n - 1) add_face(a, level, params, {{c, {1, 0}, 1.0}}, {x0 + h, y0}, {0, 1}, h, line);
      if (j == 0) add_face(a, level, params, {{c, {0, -1}, 1.0}}, {x0, y0}, {1, 0}, h, line);
      if (j == n - 1) add_face(a, level, params, {{c, {0, 1}, 1.0}}, {x0, y0 + h}, {1, 0}, h, line);
    }
  return a;
}

MatrixXd mass_matrix(int level, int groups) {
  const int n = cells_per_side(level);
  const double h = 1.0 / n;
  const auto N = static_cast<Eigen::Index>(n_cells(level) * static_cast<std::size_t>(groups) * 4);
  MatrixXd m = MatrixXd::Zero(N, N);
  const LineRule rule = golub_welsch(3);
  for (std::size_t c = 0; c < n_cells(level); ++c) {
    const double x0 = static_cast<double>(c % static_cast<std::size_t>(n)) * h;
    const double y0 = static_cast<double>(c / static_cast<std::size_t>(n)) * h;
    for (std::size_t qy = 0; qy < rule.x.size(); ++qy)
      for (std::size_t qx = 0; qx < rule.x.size(); ++qx) {
        const ShapeAt f = q1_shape(level, c, x0 + h * rule.x[qx], y0 + h * rule.x[qy]);
        const double w = h * h * rule.w[qx] * rule.w[qy];
        for (int g = 0; g < groups; ++g)
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
              m(static_cast<Eigen::Index>(q1_dof(c, g, i, groups)), static_cast<Eigen::Index>(q1_dof(c, g, j, groups))) +=
                  w * f.value[i] * f.value[j];
      }
  }
  return m;
}

MatrixXd prolongation(int fine_level, int groups) {
  if (fine_level < 1) throw std::invalid_argument("prolongation: fine level must be at least 1");
  const int nf = cells_per_side(fine_level);
  const int nc = nf / 2;
  const double h = 1.0 / nf;
  MatrixXd e = MatrixXd::Zero(static_cast<Eigen::Index>(n_cells(fine_level) * static_cast<std::size_t>(groups) * 4),
                              static_cast<Eigen::Index>(n_cells(fine_level - 1) * static_cast<std::size_t>(groups) * 4));
  for (int j = 0; j < nf; ++j)
    for (int i = 0; i < nf; ++i) {
      const auto fine = static_cast<std::size_t>(j * nf + i);
      const auto parent = static_cast<std::size_t>((j / 2) * nc + i / 2);
      for (int ky = 0; ky < 2; ++ky)
        for (int kx = 0; kx < 2; ++kx) {
          const ShapeAt f = q1_shape(fine_level - 1, parent, (i + kx) * h, (j + ky) * h);
          for (int g = 0; g < groups; ++g)
            for (int kc = 0; kc < 4; ++kc)
              e(static_cast<Eigen::Index>(q1_dof(fine, g, kx + 2 * ky, groups)),
                static_cast<Eigen::Index>(q1_dof(parent, g, kc, groups))) = f.value[kc];
        }
    }
  return e;
}

VectorXd l2_projected_residual(int fine_level, int groups, const VectorXd& r_fine) {
  const VectorXd u = mass_matrix(fine_level, groups).ldlt().solve(r_fine);
  const int nf = cells_per_side(fine_level);
  const int nc = nf / 2;
  const double h = 1.0 / nf;
  VectorXd b = VectorXd::Zero(static_cast<Eigen::Index>(n_cells(fine_level - 1) * static_cast<std::size_t>(groups) * 4));
  const LineRule rule = golub_welsch(3);
  for (int j = 0; j < nf; ++j)
    for (int i = 0; i < nf; ++i) {
      const auto fine = static_cast<std::size_t>(j * nf + i);
      const auto parent = static_cast<std::size_t>((j / 2) * nc + i / 2);
      for (std::size_t qy = 0; qy < rule.x.size(); ++qy)
        for (std::size_t qx = 0; qx < rule.x.size(); ++qx) {
          const double x = (i + rule.x[qx]) * h, y = (j + rule.x[qy]) * h;
          const ShapeAt ff = q1_shape(fine_level, fine, x, y);
          const ShapeAt fc = q1_shape(fine_level - 1, parent, x, y);
          const double w = h * h * rule.w[qx] * rule.w[qy];
          for (int g = 0; g < groups; ++g) {
            double ug = 0.0;
            for (int k = 0; k < 4; ++k) ug += u(static_cast<Eigen::Index>(q1_dof(fine, g, k, groups))) * ff.value[k];
            for (int k = 0; k < 4; ++k) b(static_cast<Eigen::Index>(q1_dof(parent, g, k, groups))) += w * ug * fc.value[k];
          }
        }
    }
  return b;
}

MatrixXd block_jacobi(const MatrixXd& a, int bs, double damping) {
  MatrixXd b = MatrixXd::Zero(a.rows(), a.cols());
  for (Eigen::Index s = 0; s < a.rows(); s += bs) b.block(s, s, bs, bs) = damping * a.block(s, s, bs, bs).inverse();
  return b;
}

MatrixXd block_gauss_seidel(const MatrixXd& a, int bs, const std::vector<std::size_t>& order) {
  const Eigen::Index n = a.rows();
  MatrixXd e = MatrixXd::Identity(n, n);
  for (std::size_t c : order) {
    const auto s = static_cast<Eigen::Index>(c) * bs;
    const MatrixXd local_inv = a.block(s, s, bs, bs).inverse();
    e.middleRows(s, bs) -= local_inv * (a.middleRows(s, bs) * e);
  }
  return (MatrixXd::Identity(n, n) - e) * a.inverse();
}

MatrixXd two_level(TwoLevelKind kind, CoarsePlacement placement, const MatrixXd& a, const MatrixXd& a0,
                   const MatrixXd& e, const MatrixXd& b) {
  const Eigen::Index n = a.rows();
  const MatrixXd id = MatrixXd::Identity(n, n);
  const MatrixXd coarse = e * a0.inverse() * e.transpose();
  if (kind == TwoLevelKind::additive) return coarse + b;
  const MatrixXd s = id - b * a;
  const MatrixXd c = id - coarse * a;
  MatrixXd err;
  if (kind == TwoLevelKind::hybrid || placement == CoarsePlacement::symmetric) err = s * c * s;
  else if (placement == CoarsePlacement::coarse_first) err = s * c;
  else err = c * s;
  return (id - err) * a.inverse();
}

MatrixXd vcycle(const std::vector<MatrixXd>& a, const std::vector<MatrixXd>& e, const std::vector<MatrixXd>& b, int m) {
  MatrixXd mg = a[0].inverse();
  for (std::size_t l = 1; l < a.size(); ++l) {
    const Eigen::Index n = a[l].rows();
    const MatrixXd id = MatrixXd::Identity(n, n);
    MatrixXd sm = id;
    const MatrixXd s = id - b[l] * a[l];
    for (int i = 0; i < m; ++i) sm = s * sm;
    const MatrixXd err = sm * (id - e[l] * mg * e[l].transpose() * a[l]) * sm;
    mg = (id - err) * a[l].inverse();
  }
  return mg;
}

}  // namespace rdschwarz::oracles
