#include "rdschwarz/assembly.hpp"

#include <stdexcept>

#include "rdschwarz/dg_space.hpp"

namespace rdschwarz {

namespace {

/// Basis values and reference derivatives tabulated at one set of points.
struct Tabulation {
  int n_points = 0;
  int n_basis = 0;
  std::vector<double> value;  // [q * n_basis + i]
  std::vector<double> dx;
  std::vector<double> dy;

  double v(int q, int i) const { return value[static_cast<std::size_t>(q * n_basis + i)]; }
  double d(int axis, int q, int i) const {
    return (axis == 0 ? dx : dy)[static_cast<std::size_t>(q * n_basis + i)];
  }
};

Tabulation tabulate(int degree, const std::vector<Point2>& points) {
  Tabulation t;
  t.n_points = static_cast<int>(points.size());
  t.n_basis = (degree + 1) * (degree + 1);
  for (const Point2& p : points) {
    const BasisValues b = eval_basis(degree, p);
    for (int i = 0; i < t.n_basis; ++i) {
      t.value.push_back(b.values[static_cast<std::size_t>(i)]);
      t.dx.push_back(b.gradients[static_cast<std::size_t>(i)][0]);
      t.dy.push_back(b.gradients[static_cast<std::size_t>(i)][1]);
    }
  }
  return t;
}

/// Points on the reference face {xi_axis = position}, parameterised by the
/// tangential coordinate.
std::vector<Point2> face_points(const GaussRule1D& rule, Axis axis, double position) {
  std::vector<Point2> pts;
  for (double t : rule.points)
    pts.push_back(axis == Axis::x ? Point2{position, t} : Point2{t, position});
  return pts;
}

}  // namespace

void ProblemParams::validate() const {
  if (static_cast<int>(diffusion.size()) != groups())
    throw std::invalid_argument("ProblemParams: diffusion coefficients do not match the group count");
  for (double eta : diffusion)
    if (!(eta > 0.0)) throw std::invalid_argument("ProblemParams: diffusion coefficients must be positive");
  if (!(penalty > 0.0)) throw std::invalid_argument("ProblemParams: penalty must be positive");
  if (degree < 0) throw std::invalid_argument("ProblemParams: negative degree");
  if (!(face_scale > 0.0)) throw std::invalid_argument("ProblemParams: face_scale must be positive");
  if (quadrature_points < 0 || reaction_quadrature_points < 0)
    throw std::invalid_argument("ProblemParams: negative quadrature size");
}

int ProblemParams::reaction_quadrature_order() const {
  if (reaction_quadrature_points > 0) return reaction_quadrature_points;
  return quadrature_order() + (reaction.is_constant() ? 0 : 3);
}

ProblemParams ProblemParams::poisson(int groups) {
  ProblemParams p;
  p.reaction = ReactionModel::zero(groups);
  p.diffusion.assign(static_cast<std::size_t>(groups), 1.0);
  return p;
}

BlockOperator assemble_operator(const Mesh& mesh, const ProblemParams& params) {
  params.validate();
  const DgSpace space(mesh.level(), params.degree, params.groups());
  BlockOperator op(mesh, space, params.diffusion);

  const int G = params.groups();
  const int nloc = space.nodes_per_cell();
  const double h = mesh.cell_size();
  const double delta = params.penalty;

  const QuadratureRule vol = make_quadrature(params.quadrature_order());
  const GaussRule1D line = gauss_legendre(params.quadrature_order());
  const Tabulation tv = tabulate(params.degree, vol.points);
  // traces on the four reference faces: [axis][position 0/1]
  const Tabulation tf[2][2] = {
      {tabulate(params.degree, face_points(line, Axis::x, 0.0)),
       tabulate(params.degree, face_points(line, Axis::x, 1.0))},
      {tabulate(params.degree, face_points(line, Axis::y, 0.0)),
       tabulate(params.degree, face_points(line, Axis::y, 1.0))},
  };

  // Reference stiffness: grad phi = grad_ref phi / h and dx = h^2 dxi cancel in 2D.
  Eigen::MatrixXd stiffness = Eigen::MatrixXd::Zero(nloc, nloc);
  for (int q = 0; q < tv.n_points; ++q) {
    const double w = vol.weights[static_cast<std::size_t>(q)];
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j)
        stiffness(i, j) += w * (tv.d(0, q, i) * tv.d(0, q, j) + tv.d(1, q, i) * tv.d(1, q, j));
  }

  // Interior face: minus side trace at xi_axis = 1, plus side at xi_axis = 0,
  // n = +e_axis, d/dn = (1/h) d/dxi_axis. With J(u) = u- - u+ and
  // S(w) = d_n w- + d_n w+ the face form is  P J(u) J(v) - c [J(u) S(v) + S(u) J(v)].
  const double pen_int = params.face_scale * 2.0 * delta / h;
  const double cons_int = params.face_scale * 1.0;
  // Boundary face: P u v - c [u d_n v + d_n u v].
  const double pen_bdry = params.face_scale * 4.0 * delta / h;
  const double cons_bdry = params.face_scale * 2.0;

  Eigen::MatrixXd face_mm[2], face_pp[2], face_mp[2];
  for (int a = 0; a < 2; ++a) {
    const Tabulation& tm = tf[a][1];
    const Tabulation& tp = tf[a][0];
    face_mm[a].setZero(nloc, nloc);
    face_pp[a].setZero(nloc, nloc);
    face_mp[a].setZero(nloc, nloc);
    for (int q = 0; q < tm.n_points; ++q) {
      const double ds = h * line.weights[static_cast<std::size_t>(q)];
      for (int i = 0; i < nloc; ++i)
        for (int j = 0; j < nloc; ++j) {
          const double vm_i = tm.v(q, i), vm_j = tm.v(q, j);
          const double vp_i = tp.v(q, i), vp_j = tp.v(q, j);
          const double dm_i = tm.d(a, q, i) / h, dm_j = tm.d(a, q, j) / h;
          const double dp_i = tp.d(a, q, i) / h, dp_j = tp.d(a, q, j) / h;
          // row = test function i, column = trial function j
          face_mm[a](i, j) += ds * (pen_int * vm_j * vm_i - cons_int * (vm_j * dm_i + dm_j * vm_i));
          face_pp[a](i, j) += ds * (pen_int * vp_j * vp_i + cons_int * (vp_j * dp_i + dp_j * vp_i));
          face_mp[a](i, j) += ds * (-pen_int * vp_j * vm_i + cons_int * (vp_j * dm_i - dp_j * vm_i));
        }
    }
  }

  // Boundary faces by [axis][position]; outward normal is -e_axis at 0, +e_axis at 1.
  Eigen::MatrixXd face_bd[2][2];
  for (int a = 0; a < 2; ++a)
    for (int s = 0; s < 2; ++s) {
      const Tabulation& t = tf[a][s];
      const double sign = s == 0 ? -1.0 : 1.0;
      face_bd[a][s].setZero(nloc, nloc);
      for (int q = 0; q < t.n_points; ++q) {
        const double ds = h * line.weights[static_cast<std::size_t>(q)];
        for (int i = 0; i < nloc; ++i)
          for (int j = 0; j < nloc; ++j) {
            const double dn_i = sign * t.d(a, q, i) / h;
            const double dn_j = sign * t.d(a, q, j) / h;
            face_bd[a][s](i, j) +=
                ds * (pen_bdry * t.v(q, j) * t.v(q, i) - cons_bdry * (t.v(q, j) * dn_i + dn_j * t.v(q, i)));
          }
      }
    }

  const QuadratureRule rvol = make_quadrature(params.reaction_quadrature_order());
  const Tabulation tr = tabulate(params.degree, rvol.points);
  Eigen::MatrixXd sigma(G, G);
  for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
    const Cell& cell = mesh.cell(c);
    auto block = op.diagonal_block(c);
    block.setZero();
    for (int g = 0; g < G; ++g)
      block.block(g * nloc, g * nloc, nloc, nloc) += params.diffusion[static_cast<std::size_t>(g)] * stiffness;

    if (params.reaction.kind() != ReactionKind::zero) {
      for (int q = 0; q < tr.n_points; ++q) {
        const Point2& xi = rvol.points[static_cast<std::size_t>(q)];
        params.reaction.evaluate(cell.x0 + h * xi[0], cell.y0 + h * xi[1], sigma);
        const double w = h * h * rvol.weights[static_cast<std::size_t>(q)];
        for (int g = 0; g < G; ++g)
          for (int k = 0; k < G; ++k) {
            const double s = w * sigma(g, k);
            if (s == 0.0) continue;
            for (int j = 0; j < nloc; ++j) {
              const double sj = s * tr.v(q, j);
              for (int i = 0; i < nloc; ++i) block(g * nloc + i, k * nloc + j) += sj * tr.v(q, i);
            }
          }
      }
    }
  }

  const auto& faces = mesh.interior_faces();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const InteriorFace& face = faces[f];
    const int a = static_cast<int>(face.normal);
    auto bm = op.diagonal_block(static_cast<std::size_t>(face.minus));
    auto bp = op.diagonal_block(static_cast<std::size_t>(face.plus));
    for (int g = 0; g < G; ++g) {
      const double eta = params.diffusion[static_cast<std::size_t>(g)];
      bm.block(g * nloc, g * nloc, nloc, nloc) += eta * face_mm[a];
      bp.block(g * nloc, g * nloc, nloc, nloc) += eta * face_pp[a];
    }
    op.face_block(f) = face_mp[a];
  }

  for (const BoundaryFace& face : mesh.boundary_faces()) {
    const int a = static_cast<int>(face.normal);
    const int s = face.sign > 0 ? 1 : 0;
    auto b = op.diagonal_block(static_cast<std::size_t>(face.cell));
    for (int g = 0; g < G; ++g)
      b.block(g * nloc, g * nloc, nloc, nloc) += params.diffusion[static_cast<std::size_t>(g)] * face_bd[a][s];
  }
  return op;
}

DualVector assemble_rhs(const Mesh& mesh, const ProblemParams& params, const std::vector<double>& source) {
  if (static_cast<int>(source.size()) != params.groups())
    throw std::invalid_argument("assemble_rhs: source needs one value per group");
  const DgSpace space(mesh.level(), params.degree, params.groups());
  const QuadratureRule vol = make_quadrature(params.quadrature_order());
  const Tabulation tv = tabulate(params.degree, vol.points);
  const int nloc = space.nodes_per_cell();
  const double h = mesh.cell_size();

  std::vector<double> local(static_cast<std::size_t>(nloc), 0.0);
  for (int q = 0; q < tv.n_points; ++q)
    for (int i = 0; i < nloc; ++i)
      local[static_cast<std::size_t>(i)] += h * h * vol.weights[static_cast<std::size_t>(q)] * tv.v(q, i);

  DualVector f(space.n_dofs());
  for (std::size_t c = 0; c < mesh.n_cells(); ++c)
    for (int g = 0; g < params.groups(); ++g)
      for (int i = 0; i < nloc; ++i)
        f[space.dof(c, g, i)] = source[static_cast<std::size_t>(g)] * local[static_cast<std::size_t>(i)];
  return f;
}

}  // namespace rdschwarz
