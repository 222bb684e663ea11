#include "rdschwarz/oracles/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "rdschwarz/assembly.hpp"
#include "rdschwarz/dg_space.hpp"
#include "rdschwarz/direct_solver.hpp"
#include "rdschwarz/gmres.hpp"
#include "rdschwarz/mesh.hpp"
#include "rdschwarz/oracles/dense_oracles.hpp"
#include "rdschwarz/precond.hpp"
#include "rdschwarz/reaction.hpp"
#include "rdschwarz/schwarz.hpp"
#include "rdschwarz/transfer.hpp"

namespace rdschwarz::oracles {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

class Recorder {
public:
  Recorder(std::vector<PropertyResult>& out, std::string suite) : out_(out), suite_(std::move(suite)) {}

  void check(std::string name, bool ok, std::string detail = {}) {
    out_.push_back({suite_, std::move(name), ok, std::move(detail)});
  }
  /// Passes when value <= bound; the detail shows the measured value.
  void bound(std::string name, double value, double bound) {
    check(std::move(name), value <= bound, fmt(value) + " <= " + fmt(bound));
  }

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }

private:
  std::vector<PropertyResult>& out_;
  std::string suite_;
};

std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

VectorXd random_vector(Eigen::Index n) {
  VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform();
  return v;
}

template <class V>
VectorXd to_eigen(const V& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

template <class V>
V from_eigen(const VectorXd& v) {
  return V(std::vector<double>(v.data(), v.data() + v.size()));
}

double rel_diff(const VectorXd& a, const VectorXd& b) { return (a - b).norm() / std::max(b.norm(), 1e-300); }

/// Dense matrix of a linear map given by its action on unit vectors.
template <class In, class Out>
MatrixXd columns_of(std::size_t n, const std::function<Out(const In&)>& f) {
  MatrixXd m;
  for (std::size_t j = 0; j < n; ++j) {
    In e(n);
    e[j] = 1.0;
    const VectorXd col = to_eigen(f(e));
    if (j == 0) m.resize(col.size(), static_cast<Eigen::Index>(n));
    m.col(static_cast<Eigen::Index>(j)) = col;
  }
  return m;
}

ProblemParams params_for(ReactionKind kind, int groups, double eps) {
  ProblemParams p = ProblemParams::poisson(groups);
  p.reaction = ReactionModel::make(kind, groups, eps);
  return p;
}

struct NamedModel {
  std::string name;
  ProblemParams params;
};

std::vector<NamedModel> operator_models() {
  return {{"poisson G=1", ProblemParams::poisson(1)},
          {"two_group eps=1", params_for(ReactionKind::two_group, 2, 1.0)},
          {"contrast G=5 eps=1", params_for(ReactionKind::contrast, 5, 1.0)},
          {"spatial_contrast G=5 eps=1", params_for(ReactionKind::spatial_contrast, 5, 1.0)}};
}

// ---------------------------------------------------------------------------

void reaction_suite(Recorder& r) {
  struct Case {
    std::string name;
    ReactionModel model;
  };
  std::vector<Case> cases;
  for (double eps : {1.0, 0.1, 0.01}) {
    const std::string e = Recorder::fmt(eps);
    cases.push_back({"two_group eps=" + e, ReactionModel::two_group(eps)});
    for (int g : {2, 5}) {
      cases.push_back({"contrast G=" + std::to_string(g) + " eps=" + e, ReactionModel::contrast(g, eps)});
      cases.push_back({"spatial G=" + std::to_string(g) + " eps=" + e, ReactionModel::spatial_contrast(g, eps)});
    }
  }
  for (const auto& c : cases) {
    double asym = 0.0, colsum = 0.0, mineig = 0.0, kernel = 0.0, sign = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const MatrixXd s = c.model.at(uniform(0, 1), uniform(0, 1));
      const double scale = std::max(s.cwiseAbs().maxCoeff(), 1e-300);
      asym = std::max(asym, (s - s.transpose()).cwiseAbs().maxCoeff());
      colsum = std::max(colsum, s.colwise().sum().cwiseAbs().maxCoeff() / scale);
      Eigen::SelfAdjointEigenSolver<MatrixXd> eig(s, Eigen::EigenvaluesOnly);
      mineig = std::min(mineig, eig.eigenvalues().minCoeff() / scale);
      const double cst = uniform(-3, 3);
      kernel = std::max(kernel, (s * VectorXd::Constant(s.rows(), cst)).cwiseAbs().maxCoeff() / scale);
      for (Eigen::Index i = 0; i < s.rows(); ++i)
        for (Eigen::Index j = 0; j < s.cols(); ++j) {
          if (i != j) sign = std::max(sign, s(i, j));
          else sign = std::max(sign, -s(i, j));
        }
    }
    r.bound(c.name + ": symmetric", asym, 0.0);
    r.bound(c.name + ": zero column sums", colsum, 1e-12);
    r.check(c.name + ": positive semidefinite", mineig >= -1e-10, "min eig / max entry " + Recorder::fmt(mineig));
    r.bound(c.name + ": constants in kernel", kernel, 1e-12);
    r.bound(c.name + ": M-matrix sign pattern", sign, 0.0);
  }

  const MatrixXd s2 = ReactionModel::two_group(1.0).at(0.3, 0.3);
  r.check("two_group eps=1 is [[1,-1],[-1,1]]",
          s2(0, 0) == 1.0 && s2(0, 1) == -1.0 && s2(1, 0) == -1.0 && s2(1, 1) == 1.0);
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(ReactionModel::two_group(0.01).at(0.5, 0.5));
  r.bound("two_group eps=0.01 eigenvalues {0, 200}",
          std::max(std::abs(eig.eigenvalues()(0)), std::abs(eig.eigenvalues()(1) - 200.0)), 1e-12);
  const MatrixXd c1 = ReactionModel::contrast(5, 1.0).at(0.1, 0.9);
  bool ones = true;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) ones = ones && c1(i, j) == (i == j ? 4.0 : -1.0);
  r.check("contrast G=5 eps=1: off-diagonals -1, diagonal 4", ones);
  r.bound("contrast G=5 eps=0.1: Sigma_11 = 1111",
          std::abs(ReactionModel::contrast(5, 0.1).at(0.2, 0.2)(0, 0) - 1111.0), 1e-9);

  const MatrixXd sq = ReactionModel::spatial_contrast(5, 0.1).at(0.25, 0.25);
  bool pattern = true;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == j) continue;
      const bool involves_second = i == 1 || j == 1;
      pattern = pattern && (involves_second ? std::abs(sq(i, j) + 1.0) < 1e-14 : sq(i, j) == 0.0);
    }
  r.check("spatial at (0.25,0.25): only couplings to group 2 remain", pattern);
  r.bound("spatial at (0.5,0.37) vanishes", ReactionModel::spatial_contrast(5, 0.1).at(0.5, 0.37).cwiseAbs().maxCoeff(),
          1e-20);
}

void mesh_suite(Recorder& r) {
  const MeshHierarchy h(6);
  bool counts = true, area = true, normals = true, nesting = true;
  for (int l = 0; l <= 6; ++l) {
    const Mesh& m = h.level(l);
    const std::size_t n = static_cast<std::size_t>(1) << l;
    counts = counts && m.n_cells() == n * n && m.interior_faces().size() == 2 * n * (n - 1) &&
             m.boundary_faces().size() == 4 * n;
    double total = 0.0;
    for (const Cell& c : m.cells()) total += c.h * c.h;
    area = area && std::abs(total - 1.0) < 1e-13;
    for (const InteriorFace& f : m.interior_faces()) {
      const Cell& a = m.cell(static_cast<std::size_t>(f.minus));
      const Cell& b = m.cell(static_cast<std::size_t>(f.plus));
      const bool ok = f.minus != f.plus &&
                      (f.normal == Axis::x ? (b.i == a.i + 1 && b.j == a.j) : (b.j == a.j + 1 && b.i == a.i));
      normals = normals && ok;
    }
    if (l == 0) continue;
    const Mesh& coarse = h.level(l - 1);
    std::vector<int> child_count(coarse.n_cells(), 0);
    for (std::size_t c = 0; c < m.n_cells(); ++c) {
      const Cell& child = m.cell(c);
      const Cell& parent = coarse.cell(static_cast<std::size_t>(child.parent));
      ++child_count[static_cast<std::size_t>(child.parent)];
      nesting = nesting && child.x0 >= parent.x0 && child.y0 >= parent.y0 &&
                child.x0 + child.h <= parent.x0 + parent.h + 1e-15 && child.y0 + child.h <= parent.y0 + parent.h + 1e-15;
    }
    for (std::size_t p = 0; p < coarse.n_cells(); ++p) {
      nesting = nesting && child_count[p] == 4;
      double child_area = 0.0;
      for (int ch : coarse.cell(p).children) child_area += m.cell(static_cast<std::size_t>(ch)).h * m.cell(static_cast<std::size_t>(ch)).h;
      nesting = nesting && std::abs(child_area - coarse.cell(p).h * coarse.cell(p).h) < 1e-15;
    }
  }
  r.check("cell and face counts for levels 0..6", counts);
  r.check("cell areas sum to 1", area);
  r.check("interior normals point from minus to plus along +x/+y", normals);
  r.check("four children per parent, contained in it", nesting);
  r.check("level 3: 64 cells, 112 interior faces, 32 boundary faces",
          h.level(3).n_cells() == 64 && h.level(3).interior_faces().size() == 112 &&
              h.level(3).boundary_faces().size() == 32);
  r.bound("level 5 cell side 0.03125", std::abs(h.level(5).cell_size() - 0.03125), 0.0);
}

void dg_space_suite(Recorder& r) {
  for (int n = 1; n <= 6; ++n) {
    const QuadratureRule q = make_quadrature(n);
    double sum = 0.0, mono = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
      sum += q.weights[k];
      // x^(2n-1) y^(2n-1) is the hardest monomial the rule must integrate
      mono += q.weights[k] * std::pow(q.points[k][0], 2 * n - 1) * std::pow(q.points[k][1], 2 * n - 1);
    }
    r.bound("quadrature n=" + std::to_string(n) + ": weights sum to 1", std::abs(sum - 1.0), 1e-14);
    r.bound("quadrature n=" + std::to_string(n) + ": exact for degree 2n-1",
            std::abs(mono - 1.0 / (4.0 * n * n)), 1e-14);
  }
  const LineRule gw = golub_welsch(5);
  const GaussRule1D gl = gauss_legendre(5);
  double node_diff = 0.0;
  for (int k = 0; k < 5; ++k)
    node_diff = std::max({node_diff, std::abs(gw.x[static_cast<std::size_t>(k)] - gl.points[static_cast<std::size_t>(k)]),
                          std::abs(gw.w[static_cast<std::size_t>(k)] - gl.weights[static_cast<std::size_t>(k)])});
  r.bound("Gauss rule agrees with Golub-Welsch, n=5", node_diff, 1e-14);

  for (int p : {1, 2}) {
    double pou = 0.0, fd = 0.0;
    for (int k = 0; k < 50; ++k) {
      const Point2 x{uniform(0.01, 0.99), uniform(0.01, 0.99)};
      const BasisValues b = eval_basis(p, x);
      double s = 0.0;
      for (double v : b.values) s += v;
      pou = std::max(pou, std::abs(s - 1.0));
      const double step = 1e-6;
      const BasisValues xp = eval_basis(p, {x[0] + step, x[1]}), xm = eval_basis(p, {x[0] - step, x[1]});
      const BasisValues yp = eval_basis(p, {x[0], x[1] + step}), ym = eval_basis(p, {x[0], x[1] - step});
      for (std::size_t i = 0; i < b.values.size(); ++i) {
        fd = std::max(fd, std::abs((xp.values[i] - xm.values[i]) / (2 * step) - b.gradients[i][0]));
        fd = std::max(fd, std::abs((yp.values[i] - ym.values[i]) / (2 * step) - b.gradients[i][1]));
      }
    }
    r.bound("p=" + std::to_string(p) + ": partition of unity", pou, 1e-14);
    r.bound("p=" + std::to_string(p) + ": gradients match central differences", fd, 1e-8);
  }
  const BasisValues corner = eval_basis(1, {0.0, 0.0});
  r.check("p=1 at (0,0): values (1,0,0,0)",
          corner.values == std::vector<double>{1.0, 0.0, 0.0, 0.0});

  // element mass matrix on the reference cell
  const QuadratureRule q = make_quadrature(3);
  MatrixXd mass = MatrixXd::Zero(4, 4);
  for (std::size_t k = 0; k < q.size(); ++k) {
    const BasisValues b = eval_basis(1, q.points[k]);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) mass(i, j) += q.weights[k] * b.values[static_cast<std::size_t>(i)] * b.values[static_cast<std::size_t>(j)];
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(mass);
  r.check("p=1 element mass matrix SPD", (mass - mass.transpose()).norm() < 1e-15 && eig.eigenvalues().minCoeff() > 0.0,
          "min eig " + Recorder::fmt(eig.eigenvalues().minCoeff()));

  // traces: a face point seen as a volume point of the reference cell
  double trace = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double t = uniform(0, 1);
    const BasisValues face = eval_basis(1, {1.0, t});
    const ShapeAt vol = q1_shape(0, 0, 1.0, t);
    for (int i = 0; i < 4; ++i) trace = std::max(trace, std::abs(face.values[static_cast<std::size_t>(i)] - vol.value[i]));
  }
  r.bound("face traces agree with volume evaluation", trace, 0.0);
}

void assembly_suite(Recorder& r) {
  for (const auto& m : operator_models()) {
    for (int level : {0, 1}) {
      const MatrixXd ref = assemble_dense(level, m.params);
      const MatrixXd got = assemble_operator(Mesh(level), m.params).to_dense();
      r.bound(m.name + " level " + std::to_string(level) + ": matches dense quadrature oracle",
              (ref - got).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
  {
    const ProblemParams p = params_for(ReactionKind::contrast, 5, 0.01);
    const MatrixXd ref = assemble_dense(1, p);
    const MatrixXd got = assemble_operator(Mesh(1), p).to_dense();
    r.bound("contrast G=5 eps=0.01 level 1: oracle match relative to max entry",
            (ref - got).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff(), 1e-12);
  }
  {
    ProblemParams p = ProblemParams::poisson(1);
    p.face_scale = 1.0;
    r.bound("literal face weights level 1: matches oracle",
            (assemble_dense(1, p) - assemble_operator(Mesh(1), p).to_dense()).cwiseAbs().maxCoeff(), 1e-12);
  }

  std::vector<NamedModel> models = operator_models();
  models.push_back({"contrast G=5 eps=0.01", params_for(ReactionKind::contrast, 5, 0.01)});
  for (const auto& m : models) {
    for (int level = 0; level <= 4; ++level) {
      const BlockOperator op = assemble_operator(Mesh(level), m.params);
      const auto n = static_cast<Eigen::Index>(op.n_dofs());
      double asym = 0.0, min_energy = 1e300;
      for (int k = 0; k < 100; ++k) {
        const VectorXd u = random_vector(n), v = random_vector(n);
        const VectorXd au = to_eigen(op.apply(from_eigen<PrimalVector>(u)));
        const VectorXd av = to_eigen(op.apply(from_eigen<PrimalVector>(v)));
        asym = std::max(asym, std::abs(au.dot(v) - u.dot(av)) / (au.norm() * v.norm()));
        min_energy = std::min(min_energy, av.dot(v));
      }
      const std::string tag = m.name + " level " + std::to_string(level);
      r.bound(tag + ": symmetric", asym, 1e-12);
      r.check(tag + ": <Av,v> > 0 for random v", min_energy > 0.0, "min " + Recorder::fmt(min_energy));
      if (level <= 3 && n <= 1280) {
        const MatrixXd dense = op.to_dense();
        Eigen::LLT<MatrixXd> llt(dense);
        r.check(tag + ": dense Cholesky succeeds", llt.info() == Eigen::Success);
      }
    }
  }

  {
    const ProblemParams p2 = params_for(ReactionKind::two_group, 2, 0.01);
    const BlockOperator a = assemble_operator(Mesh(2), p2);
    const BlockOperator a0 = assemble_operator(Mesh(2), ProblemParams::poisson(2));
    const DgSpace space(2, 1, 2);
    PrimalVector u(space.n_dofs());
    for (std::size_t c = 0; c < space.n_cells(); ++c)
      for (int i = 0; i < 4; ++i) {
        const double v = uniform();
        u[space.dof(c, 0, i)] = v;
        u[space.dof(c, 1, i)] = v;
      }
    const VectorXd d = to_eigen(a.apply(u)) - to_eigen(a0.apply(u));
    r.bound("group-constant functions see the diffusion operator only",
            d.norm() / to_eigen(a0.apply(u)).norm(), 1e-12);
  }
  {
    ProblemParams p = ProblemParams::poisson(1);
    const BlockOperator a1 = assemble_operator(Mesh(3), p);
    p.penalty *= 2.0;
    const BlockOperator a2 = assemble_operator(Mesh(3), p);
    bool ok = true;
    for (int k = 0; k < 20; ++k) {
      const PrimalVector v = from_eigen<PrimalVector>(random_vector(static_cast<Eigen::Index>(a1.n_dofs())));
      ok = ok && pairing(a2.apply(v), v) >= pairing(a1.apply(v), v);
    }
    r.check("doubling the penalty never decreases <Av,v>", ok);
  }
  {
    const DualVector f = assemble_rhs(Mesh(0), ProblemParams::poisson(1), {1.0});
    double dev = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) dev = std::max(dev, std::abs(f[i] - 0.25));
    r.bound("level 0 unit source: entries 1/4", dev, 1e-15);
    const DualVector z = assemble_rhs(Mesh(2), ProblemParams::poisson(1), {0.0});
    r.bound("zero source gives zero vector", norm2(z.span()), 0.0);
    const DgSpace s5(2, 1, 5);
    const DualVector f5 = assemble_rhs(Mesh(2), params_for(ReactionKind::contrast, 5, 1.0), {1, 0, 1, 0, 1});
    bool zeros = true;
    for (std::size_t c = 0; c < s5.n_cells(); ++c)
      for (int i = 0; i < 4; ++i) zeros = zeros && f5[s5.dof(c, 1, i)] == 0.0 && f5[s5.dof(c, 3, i)] == 0.0;
    r.check("source (1,0,1,0,1): groups 2 and 4 vanish", zeros);
  }
}

void scaling_suite(Recorder& r) {
  for (int groups : {1, 2}) {
    for (int fine = 1; fine <= 4; ++fine) {
      const ProblemParams p = ProblemParams::poisson(groups);
      const MeshHierarchy meshes(fine);
      const BlockOperator ah = assemble_operator(meshes.level(fine), p);
      const BlockOperator aH = assemble_operator(meshes.level(fine - 1), p);
      const TransferPair t(meshes, fine, 1, groups);
      const DgSpace coarse(fine - 1, 1, groups);
      double worst = 0.0;
      for (int k = 0; k < 20; ++k) {
        PrimalVector v0(coarse.n_dofs());
        for (std::size_t c = 0; c < coarse.n_cells(); ++c)
          for (int g = 0; g < groups; ++g) {
            const double v = uniform();
            for (int i = 0; i < 4; ++i) v0[coarse.dof(c, g, i)] = v;
          }
        const PrimalVector ev = t.prolongate(v0);
        const double fine_energy = pairing(ah.apply(ev), ev);
        const double coarse_energy = pairing(aH.apply(v0), v0);
        worst = std::max(worst, std::abs(coarse_energy - 0.5 * fine_energy) / std::abs(coarse_energy));
      }
      r.bound("a_H(v0,v0) = (h/H) a_h(Ev0,Ev0), G=" + std::to_string(groups) + ", levels (" +
                  std::to_string(fine - 1) + "," + std::to_string(fine) + ")",
              worst, 1e-12);
    }
  }
}

void transfer_suite(Recorder& r) {
  for (int groups : {1, 2}) {
    const std::string g = " G=" + std::to_string(groups);
    for (int fine = 1; fine <= 3; ++fine) {
      const MeshHierarchy meshes(fine);
      const TransferPair t(meshes, fine, 1, groups);
      const DgSpace cs(fine - 1, 1, groups), fs(fine, 1, groups);
      const std::string tag = g + " pair (" + std::to_string(fine - 1) + "," + std::to_string(fine) + ")";

      const MatrixXd e = prolongation(fine, groups);
      double diff = 0.0;
      for (int k = 0; k < 5; ++k) {
        const VectorXd v = random_vector(static_cast<Eigen::Index>(cs.n_dofs()));
        diff = std::max(diff, rel_diff(to_eigen(t.prolongate(from_eigen<PrimalVector>(v))), e * v));
      }
      r.bound("embedding matches dense oracle" + tag, diff, 1e-14);

      double adj = 0.0;
      for (int k = 0; k < 100; ++k) {
        const PrimalVector v = from_eigen<PrimalVector>(random_vector(static_cast<Eigen::Index>(cs.n_dofs())));
        const DualVector res = from_eigen<DualVector>(random_vector(static_cast<Eigen::Index>(fs.n_dofs())));
        const PrimalVector ev = t.prolongate(v);
        adj = std::max(adj, std::abs(pairing(t.restrict_residual(res), v) - pairing(res, ev)) / (norm2(res.span()) * norm2(ev.span())));
      }
      r.bound("restriction is the adjoint of embedding" + tag, adj, 1e-13);

      const PrimalVector ones(cs.n_dofs(), 1.0);
      const PrimalVector fine_ones = t.prolongate(ones);
      double cst = 0.0;
      for (std::size_t i = 0; i < fine_ones.size(); ++i) cst = std::max(cst, std::abs(fine_ones[i] - 1.0));
      r.bound("constants are preserved" + tag, cst, 1e-15);

      r.bound("zero residual restricts to zero" + tag, norm2(t.restrict_residual(DualVector(fs.n_dofs())).span()), 0.0);

      const VectorXd res = random_vector(static_cast<Eigen::Index>(fs.n_dofs()));
      r.bound("E^T r equals the L2-projected residual" + tag,
              rel_diff(to_eigen(t.restrict_residual(from_eigen<DualVector>(res))), l2_projected_residual(fine, groups, res)),
              1e-12);
    }
  }

  // x*y on the coarse mesh is reproduced exactly on the fine mesh
  {
    const MeshHierarchy meshes(2);
    const TransferPair t(meshes, 2, 1, 1);
    const Mesh& coarse = meshes.level(1);
    const Mesh& fine = meshes.level(2);
    PrimalVector v(coarse.n_cells() * 4);
    for (std::size_t c = 0; c < coarse.n_cells(); ++c)
      for (int k = 0; k < 4; ++k) {
        const Cell& cell = coarse.cell(c);
        const double x = cell.x0 + (k % 2) * cell.h, y = cell.y0 + (k / 2) * cell.h;
        v[c * 4 + static_cast<std::size_t>(k)] = x * y;
      }
    const PrimalVector ev = t.prolongate(v);
    double err = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double x = uniform(0, 1), y = uniform(0, 1);
      const int n = fine.cells_per_side();
      const std::size_t c = static_cast<std::size_t>(fine.index(std::min(n - 1, static_cast<int>(x * n)),
                                                               std::min(n - 1, static_cast<int>(y * n))));
      const ShapeAt f = q1_shape(2, c, x, y);
      double val = 0.0;
      for (int i = 0; i < 4; ++i) val += ev[c * 4 + static_cast<std::size_t>(i)] * f.value[i];
      err = std::max(err, std::abs(val - x * y));
    }
    r.bound("bilinear x*y reproduced at 20 random points", err, 1e-13);
  }

  {
    const MeshHierarchy meshes(2);
    const TransferPair t(meshes, 2, 1, 1);
    const MatrixXd e = columns_of<PrimalVector, PrimalVector>(
        DgSpace(1, 1, 1).n_dofs(), [&](const PrimalVector& v) { return t.prolongate(v); });
    Eigen::LLT<MatrixXd> llt(e.transpose() * e);
    r.check("E^T E is SPD on pair (1,2)", llt.info() == Eigen::Success);
    const double s_got = Eigen::JacobiSVD<MatrixXd>(e).singularValues()(0);
    const double s_ref = Eigen::JacobiSVD<MatrixXd>(prolongation(2, 1)).singularValues()(0);
    r.bound("||E||_2 equals dense oracle on pair (1,2)", std::abs(s_got - s_ref) / s_ref, 1e-13);
    // residual of a problem whose solution is representable on the coarse mesh
    const ProblemParams p = ProblemParams::poisson(1);
    const BlockOperator a = assemble_operator(meshes.level(2), p);
    const PrimalVector vc = from_eigen<PrimalVector>(random_vector(static_cast<Eigen::Index>(DgSpace(1, 1, 1).n_dofs())));
    const DualVector res = a.apply(t.prolongate(vc)) - assemble_rhs(meshes.level(2), p, {1.0});
    r.bound("E^T (A E v_c - f) equals its L2 projection",
            rel_diff(to_eigen(t.restrict_residual(res)), l2_projected_residual(2, 1, to_eigen(res))), 1e-12);
  }
}

std::vector<std::size_t> lexicographic(std::size_t n) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  return order;
}

void schwarz_suite(Recorder& r) {
  for (const auto& m : operator_models()) {
    const BlockOperator op = assemble_operator(Mesh(2), m.params);
    const BlockOperator diag = op.block_diagonal();
    const CellBlockSolver cells(diag);
    const DualVector rhs = from_eigen<DualVector>(random_vector(static_cast<Eigen::Index>(op.n_dofs())));
    const PrimalVector z = cells.apply_additive(rhs);
    r.bound(m.name + ": block Jacobi inverts the block diagonal",
            rel_diff(to_eigen(diag.apply(z)), to_eigen(rhs)), 1e-12);
    r.bound(m.name + ": Gauss-Seidel equals Jacobi on the block diagonal",
            rel_diff(to_eigen(cells.apply_multiplicative(rhs)), to_eigen(z)), 1e-14);

    const CellBlockSolver full(op);
    double refactor = 0.0;
    for (std::size_t c = 0; c < op.n_cells(); ++c) {
      const auto bs = static_cast<std::size_t>(op.block_size());
      std::vector<double> x(bs);
      const VectorXd y = random_vector(static_cast<Eigen::Index>(bs));
      const VectorXd b = op.diagonal_block(c) * y;
      std::copy(b.data(), b.data() + b.size(), x.begin());
      full.solve_block(c, x);
      refactor = std::max(refactor, rel_diff(Eigen::Map<VectorXd>(x.data(), y.size()), y));
    }
    r.bound(m.name + ": cell factorisations reproduce their blocks", refactor, 1e-12);
  }

  {
    const ProblemParams p = params_for(ReactionKind::contrast, 5, 0.1);
    const BlockOperator op = assemble_operator(Mesh(0), p);
    const DualVector rhs = from_eigen<DualVector>(random_vector(static_cast<Eigen::Index>(op.n_dofs())));
    r.bound("single cell: additive Schwarz is the direct solve",
            rel_diff(to_eigen(CellBlockSolver(op).apply_additive(rhs)), to_eigen(DirectSolver(op).solve(rhs))), 1e-12);
  }

  for (int groups : {1, 2}) {
    const ProblemParams p = groups == 1 ? ProblemParams::poisson(1) : params_for(ReactionKind::two_group, 2, 0.1);
    const std::string g = " G=" + std::to_string(groups);
    for (int level : {1, 2}) {
      const BlockOperator op = assemble_operator(Mesh(level), p);
      const MatrixXd a = op.to_dense();
      const CellBlockSolver cells(op);
      const int bs = op.block_size();
      const MatrixXd bad = block_jacobi(a, bs);
      const MatrixXd bmu = block_gauss_seidel(a, bs, lexicographic(op.n_cells()));
      double dad = 0.0, dmu = 0.0, sym = 0.0;
      for (int k = 0; k < 10; ++k) {
        const VectorXd r1 = random_vector(a.rows()), r2 = random_vector(a.rows());
        const VectorXd b1 = to_eigen(cells.apply_additive(from_eigen<DualVector>(r1)));
        const VectorXd b2 = to_eigen(cells.apply_additive(from_eigen<DualVector>(r2)));
        dad = std::max(dad, rel_diff(b1, bad * r1));
        dmu = std::max(dmu, rel_diff(to_eigen(cells.apply_multiplicative(from_eigen<DualVector>(r1))), bmu * r1));
        sym = std::max(sym, std::abs(b1.dot(r2) - r1.dot(b2)) / (b1.norm() * r2.norm()));
      }
      const std::string tag = g + " level " + std::to_string(level);
      r.bound("block Jacobi matches dense oracle" + tag, dad, 1e-12);
      r.bound("block Jacobi is symmetric" + tag, sym, 1e-12);
      r.bound("Gauss-Seidel sweep matches I - prod(I - P_i) oracle" + tag, dmu, 1e-12);
    }
  }

  for (int level = 1; level <= 3; ++level) {
    const BlockOperator op = assemble_operator(Mesh(level), ProblemParams::poisson(1));
    const MatrixXd a = op.to_dense();
    const int bs = op.block_size();
    const MatrixXd id = MatrixXd::Identity(a.rows(), a.cols());
    const MatrixXd ead = id - block_jacobi(a, bs, 0.5) * a;
    const double rho_ad = Eigen::EigenSolver<MatrixXd>(ead, false).eigenvalues().cwiseAbs().maxCoeff();
    r.bound("damped (0.5) block Jacobi Richardson: spectral radius < 1, level " + std::to_string(level), rho_ad,
            1.0 - 1e-12);
    const CellBlockSolver cells(op);
    const MatrixXd bmu = columns_of<DualVector, PrimalVector>(
        op.n_dofs(), [&](const DualVector& v) { return cells.apply_multiplicative(v); });
    const MatrixXd emu = id - bmu * a;
    const MatrixXd l = Eigen::LLT<MatrixXd>(a).matrixU();  // A = U^T U
    const MatrixXd energy = l * emu * l.inverse();
    const double norm_a = Eigen::JacobiSVD<MatrixXd>(energy).singularValues()(0);
    r.bound("Gauss-Seidel Richardson: ||I - B A||_A < 1, level " + std::to_string(level), norm_a, 1.0 - 1e-12);
  }

  {
    const BlockOperator op = assemble_operator(Mesh(2), ProblemParams::poisson(1));
    const DualVector rhs = from_eigen<DualVector>(random_vector(static_cast<Eigen::Index>(op.n_dofs())));
    const CellBlockSolver fwd(op), bwd(op, 1.0, CellOrder::reverse);
    r.check("reversing the sweep changes the result",
            rel_diff(to_eigen(fwd.apply_multiplicative(rhs)), to_eigen(bwd.apply_multiplicative(rhs))) > 1e-6);
    const CellBlockSolver rb(op, 1.0, CellOrder::red_black);
    const MatrixXd a = op.to_dense();
    r.bound("red-black sweep matches the oracle in its order",
            rel_diff(to_eigen(rb.apply_multiplicative(rhs)), block_gauss_seidel(a, op.block_size(), rb.traversal()) * to_eigen(rhs)),
            1e-12);
  }
}

struct DenseHierarchy {
  std::vector<MatrixXd> a, e;
};

DenseHierarchy dense_hierarchy(int finest, const ProblemParams& p) {
  DenseHierarchy h;
  for (int l = 0; l <= finest; ++l) {
    h.a.push_back(assemble_dense(l, p));
    h.e.push_back(l == 0 ? MatrixXd() : prolongation(l, p.groups()));
  }
  return h;
}

double compare_preconditioner(const Preconditioner& pc, const MatrixXd& ref) {
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const VectorXd v = random_vector(ref.cols());
    worst = std::max(worst, rel_diff(to_eigen(pc.apply(from_eigen<DualVector>(v))), ref * v));
  }
  return worst;
}

void twolevel_suite(Recorder& r) {
  for (const auto& m : operator_models()) {
    if (m.params.groups() == 5 && !m.params.reaction.is_constant()) continue;
    for (int fine : {1, 2}) {
      MultilevelSetup setup(fine, m.params);
      const DenseHierarchy h = dense_hierarchy(fine, m.params);
      const MatrixXd& a = h.a[static_cast<std::size_t>(fine)];
      const MatrixXd& a0 = h.a[static_cast<std::size_t>(fine) - 1];
      const MatrixXd& e = h.e[static_cast<std::size_t>(fine)];
      const int bs = setup.op(fine).block_size();
      const MatrixXd bad = block_jacobi(a, bs);
      const MatrixXd bmu = block_gauss_seidel(a, bs, lexicographic(setup.op(fine).n_cells()));
      const std::string tag = m.name + " pair (" + std::to_string(fine) + "," + std::to_string(fine - 1) + ")";

      r.bound("2AS matches dense oracle, " + tag,
              compare_preconditioner(*setup.make(Method::two_level_additive),
                                     two_level(TwoLevelKind::additive, CoarsePlacement::symmetric, a, a0, e, bad)),
              1e-10);
      r.bound("2HS matches dense oracle, " + tag,
              compare_preconditioner(*setup.make(Method::two_level_hybrid),
                                     two_level(TwoLevelKind::hybrid, CoarsePlacement::symmetric, a, a0, e, bad)),
              1e-10);
      for (CoarsePlacement pl : {CoarsePlacement::symmetric, CoarsePlacement::coarse_first, CoarsePlacement::coarse_last}) {
        PreconditionerOptions o;
        o.placement = pl;
        r.bound("2MS (" + std::string(to_string(pl)) + ") matches dense oracle, " + tag,
                compare_preconditioner(*setup.make(Method::two_level_multiplicative, o),
                                       two_level(TwoLevelKind::multiplicative, pl, a, a0, e, bmu)),
                1e-10);
      }
    }
  }

  // exact fine solve in place of the smoother: the preconditioned operator is the identity
  {
    const ProblemParams p = ProblemParams::poisson(1);
    MultilevelSetup setup(3, p);
    const BlockOperator& a = setup.op(3);
    auto exact = std::make_shared<DirectPreconditioner>(setup.direct_solver(3));
    auto coarse = std::make_shared<DirectPreconditioner>(setup.direct_solver(2));
    const TwoLevel hybrid(TwoLevelKind::hybrid, a, setup.transfer(3), exact, coarse);
    const DualVector b = assemble_rhs(setup.meshes().finest(), p, {1.0});
    const auto res = gmres([&](const PrimalVector& x) { return a.apply(x); },
                           [&](const DualVector& v) { return hybrid.apply(v); }, b);
    r.check("hybrid with an exact smoother converges in one iteration", res.report.iterations == 1,
            std::to_string(res.report.iterations) + " iterations");
  }
}

void vcycle_suite(Recorder& r) {
  for (const auto& m : operator_models()) {
    if (!m.params.reaction.is_constant()) continue;
    for (int fine : {1, 2}) {
      MultilevelSetup setup(fine, m.params);
      const DenseHierarchy h = dense_hierarchy(fine, m.params);
      for (bool mult : {false, true})
        for (int steps : {1, 2}) {
          std::vector<MatrixXd> b(h.a.size());
          for (std::size_t l = 1; l < h.a.size(); ++l) {
            const int bs = setup.op(static_cast<int>(l)).block_size();
            b[l] = mult ? block_gauss_seidel(h.a[l], bs, lexicographic(setup.op(static_cast<int>(l)).n_cells()))
                        : block_jacobi(h.a[l], bs);
          }
          PreconditionerOptions o;
          o.smoothing_steps = steps;
          const auto pc = setup.make(mult ? Method::mg_multiplicative : Method::mg_additive, o);
          r.bound(std::string(mult ? "MGMS" : "MGAS") + " m=" + std::to_string(steps) + " matches dense oracle, " +
                      m.name + " L=" + std::to_string(fine),
                  compare_preconditioner(*pc, vcycle(h.a, h.e, b, steps)), 1e-10);
        }
    }
  }

  {
    const ProblemParams p = params_for(ReactionKind::two_group, 2, 0.1);
    MultilevelSetup setup(1, p);
    const auto mg = setup.make(Method::mg_additive);
    const auto hy = setup.make(Method::two_level_hybrid);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const DualVector v = from_eigen<DualVector>(random_vector(static_cast<Eigen::Index>(setup.op(1).n_dofs())));
      worst = std::max(worst, rel_diff(to_eigen(mg->apply(v)), to_eigen(hy->apply(v))));
    }
    r.bound("two-level V-cycle with additive smoother equals 2HS", worst, 1e-12);
  }

  {
    MultilevelSetup setup(4, ProblemParams::poisson(1));
    const auto mg = setup.make(Method::mg_multiplicative);
    const auto n = static_cast<Eigen::Index>(setup.op(4).n_dofs());
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      const VectorXd x = random_vector(n), y = random_vector(n);
      const double al = uniform(), be = uniform();
      const VectorXd lhs = to_eigen(mg->apply(from_eigen<DualVector>(al * x + be * y)));
      const VectorXd rhs = al * to_eigen(mg->apply(from_eigen<DualVector>(x))) + be * to_eigen(mg->apply(from_eigen<DualVector>(y)));
      worst = std::max(worst, rel_diff(lhs, rhs));
    }
    r.bound("V-cycle is linear", worst, 1e-12);
  }

  {
    MultilevelSetup setup(0, params_for(ReactionKind::contrast, 5, 0.1));
    const auto mg = setup.make(Method::mg_additive);
    const DualVector g = from_eigen<DualVector>(random_vector(20));
    r.bound("level 0: V-cycle is the direct solve",
            rel_diff(to_eigen(mg->apply(g)), to_eigen(DirectSolver(setup.op(0)).solve(g))), 1e-12);
  }

  {
    MultilevelSetup setup(3, ProblemParams::poisson(1));
    const auto mg = setup.make(Method::mg_multiplicative);
    const MatrixXd a = setup.op(3).to_dense();
    const MatrixXd m = columns_of<DualVector, PrimalVector>(setup.op(3).n_dofs(),
                                                            [&](const DualVector& v) { return mg->apply(v); });
    const MatrixXd err = MatrixXd::Identity(a.rows(), a.cols()) - m * a;
    const double rho = Eigen::EigenSolver<MatrixXd>(err, false).eigenvalues().cwiseAbs().maxCoeff();
    r.bound("MGMS m=1 level 3: spectral radius of I - M A < 1", rho, 1.0 - 1e-12);
  }
}

void krylov_suite(Recorder& r) {
  {
    const DualVector b = from_eigen<DualVector>(random_vector(30));
    const auto res = gmres([](const PrimalVector& x) { return DualVector(x.values()); },
                           [](const DualVector& v) { return PrimalVector(v.values()); }, b);
    r.check("identity system: one iteration", res.report.iterations == 1 && res.report.converged,
            std::to_string(res.report.iterations) + " iterations");
  }
  {
    const MatrixXd g = MatrixXd::NullaryExpr(50, 50, [] { return uniform(); });
    const MatrixXd a = g * g.transpose() + 50.0 * MatrixXd::Identity(50, 50);
    const MatrixXd inv = a.inverse();
    const DualVector b = from_eigen<DualVector>(random_vector(50));
    for (PreconditionSide side : {PreconditionSide::right, PreconditionSide::left}) {
      SolveConfig cfg;
      cfg.side = side;
      const auto res = gmres([&](const PrimalVector& x) { return from_eigen<DualVector>(a * to_eigen(x)); },
                             [&](const DualVector& v) { return from_eigen<PrimalVector>(inv * to_eigen(v)); }, b, cfg);
      r.check(std::string("SPD 50x50 with exact inverse (") + (side == PreconditionSide::right ? "right" : "left") +
                  "): one iteration",
              res.report.iterations == 1, std::to_string(res.report.iterations) + " iterations");
    }
  }
  {
    const ProblemParams p = ProblemParams::poisson(1);
    MultilevelSetup setup(4, p);
    const BlockOperator& a = setup.op(4);
    const DualVector b = assemble_rhs(setup.meshes().finest(), p, {1.0});
    for (Method m : {Method::none, Method::two_level_multiplicative, Method::mg_additive}) {
      const auto pc = setup.make(m);
      const auto res = gmres([&](const PrimalVector& x) { return a.apply(x); },
                             [&](const DualVector& v) { return pc->apply(v); }, b);
      const auto& hist = res.report.residual_history;
      r.check(std::string(to_string(m)) + " on 16x16: residual history nonincreasing",
              std::is_sorted(hist.rbegin(), hist.rend()));
      r.bound(std::string(to_string(m)) + " on 16x16: true residual within 10x target", res.report.true_residual, 1e-7);
    }
  }
}

using SuiteFn = void (*)(Recorder&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all{
      {"reaction", reaction_suite},       {"mesh", mesh_suite},
      {"dg_space", dg_space_suite},       {"assembly", assembly_suite},
      {"scaling", scaling_suite},         {"transfer", transfer_suite},
      {"schwarz", schwarz_suite},         {"twolevel_oracle", twolevel_suite},
      {"vcycle_oracle", vcycle_suite},    {"krylov", krylov_suite},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& s : suites()) n.push_back(s.first);
    return n;
  }();
  return names;
}

std::vector<PropertyResult> run_suite(std::string_view name) {
  std::vector<PropertyResult> out;
  bool found = false;
  for (const auto& [suite, fn] : suites()) {
    if (name != "all" && name != suite) continue;
    found = true;
    Recorder rec(out, suite);
    try {
      fn(rec);
    } catch (const std::exception& e) {
      rec.check("suite ran to completion", false, e.what());
    }
  }
  if (!found) throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
  return out;
}

}  // namespace rdschwarz::oracles
