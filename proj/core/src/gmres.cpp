#include "rdschwarz/gmres.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace rdschwarz {

namespace {

using Vec = std::vector<double>;
using KrylovOperator = std::function<void(const Vec&, Vec&)>;

void axpy(double a, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

struct KrylovResult {
  Vec u;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;
};

/// Unpreconditioned GMRES on K u = c with u0 = 0; the residual is measured
/// relative to ||c||.
KrylovResult solve_krylov(const KrylovOperator& k_apply, const Vec& c, const SolveConfig& config) {
  const std::size_t n = c.size();
  KrylovResult out;
  out.u.assign(n, 0.0);
  const double c_norm = norm2(c);
  out.history.push_back(1.0);
  if (c_norm == 0.0) {
    out.converged = true;
    return out;
  }
  const double target = config.tolerance * c_norm;
  const int cycle_len = config.restart > 0 ? config.restart : config.max_iterations;

  Vec r = c;
  double beta = c_norm;
  std::vector<Vec> basis;
  Vec w(n);
  while (true) {
    basis.assign(1, r);
    for (double& v : basis[0]) v /= beta;
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(cycle_len + 1, cycle_len);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(cycle_len + 1);
    std::vector<double> cs(static_cast<std::size_t>(cycle_len)), sn(static_cast<std::size_t>(cycle_len));
    g(0) = beta;

    int j = 0;
    bool stop = false;
    bool breakdown = false;
    for (; j < cycle_len && !stop; ++j) {
      k_apply(basis[static_cast<std::size_t>(j)], w);
      const double w_norm0 = norm2(w);
      for (int i = 0; i <= j; ++i) {
        const double hij = dot(w, basis[static_cast<std::size_t>(i)]);
        hess(i, j) = hij;
        axpy(-hij, basis[static_cast<std::size_t>(i)], w);
      }
      double w_norm = norm2(w);
      if (w_norm < 0.7 * w_norm0) {
        for (int i = 0; i <= j; ++i) {
          const double hij = dot(w, basis[static_cast<std::size_t>(i)]);
          hess(i, j) += hij;
          axpy(-hij, basis[static_cast<std::size_t>(i)], w);
        }
        w_norm = norm2(w);
      }
      hess(j + 1, j) = w_norm;

      for (int i = 0; i < j; ++i) {
        const double a = hess(i, j), b = hess(i + 1, j);
        hess(i, j) = cs[static_cast<std::size_t>(i)] * a + sn[static_cast<std::size_t>(i)] * b;
        hess(i + 1, j) = -sn[static_cast<std::size_t>(i)] * a + cs[static_cast<std::size_t>(i)] * b;
      }
      const double a = hess(j, j), b = hess(j + 1, j);
      const double rho = std::hypot(a, b);
      cs[static_cast<std::size_t>(j)] = rho == 0.0 ? 1.0 : a / rho;
      sn[static_cast<std::size_t>(j)] = rho == 0.0 ? 0.0 : b / rho;
      hess(j, j) = rho;
      hess(j + 1, j) = 0.0;
      g(j + 1) = -sn[static_cast<std::size_t>(j)] * g(j);
      g(j) = cs[static_cast<std::size_t>(j)] * g(j);

      ++out.iterations;
      const double res = std::abs(g(j + 1));
      out.history.push_back(res / c_norm);
      breakdown = w_norm <= 1e-14 * w_norm0;
      if (res <= target) {
        out.converged = true;
        stop = true;
      } else if (breakdown || out.iterations >= config.max_iterations) {
        stop = true;
      } else {
        Vec next = w;
        for (double& v : next) v /= w_norm;
        basis.push_back(std::move(next));
      }
    }

    // y = H^{-1} g on the leading j x j triangle
    Eigen::VectorXd y = hess.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
    for (int i = 0; i < j; ++i) axpy(y(i), basis[static_cast<std::size_t>(i)], out.u);

    if (breakdown && !out.converged)
      throw std::runtime_error("GMRES: breakdown before reaching the residual target");
    if (out.converged || out.iterations >= config.max_iterations) return out;

    // restart from the recomputed residual
    k_apply(out.u, w);
    for (std::size_t i = 0; i < n; ++i) r[i] = c[i] - w[i];
    beta = norm2(r);
    if (beta <= target) {
      out.converged = true;
      return out;
    }
  }
}

}  // namespace

void SolveConfig::validate() const {
  if (!(tolerance > 0.0 && tolerance < 1.0)) throw std::invalid_argument("SolveConfig: tolerance must lie in (0,1)");
  if (max_iterations < 1) throw std::invalid_argument("SolveConfig: max_iterations must be positive");
  if (restart < 0) throw std::invalid_argument("SolveConfig: negative restart length");
}

GmresResult gmres(const ApplyOperator& apply_a, const ApplyPreconditioner& apply_m, const DualVector& b,
                  const SolveConfig& config) {
  config.validate();
  GmresResult result;
  KrylovResult kr;
  if (config.side == PreconditionSide::right) {
    // A M u = b, x = M u
    KrylovOperator k = [&](const Vec& v, Vec& out) {
      out = apply_a(apply_m(DualVector(v))).values();
    };
    kr = solve_krylov(k, b.values(), config);
    result.x = apply_m(DualVector(kr.u));
  } else {
    // M A x = M b
    KrylovOperator k = [&](const Vec& v, Vec& out) {
      out = apply_m(apply_a(PrimalVector(v))).values();
    };
    kr = solve_krylov(k, apply_m(b).values(), config);
    result.x = PrimalVector(std::move(kr.u));
  }
  result.report.iterations = kr.iterations;
  result.report.converged = kr.converged;
  result.report.residual_history = std::move(kr.history);

  const double b_norm = norm2(b.span());
  if (b_norm > 0.0) {
    const DualVector r = b - apply_a(result.x);
    result.report.true_residual = norm2(r.span()) / b_norm;
  }
  return result;
}

}  // namespace rdschwarz
