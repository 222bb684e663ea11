#include "rdschwarz/reaction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rdschwarz {

namespace {

// Couplings not involving group 1 (0-based) follow the sequence 0, 2, 3, 4;
// the exponent is the distance within that sequence.
constexpr int kExponents[5][5] = {
    {0, 0, 1, 2, 3},
    {0, 0, 0, 0, 0},
    {1, 0, 0, 1, 2},
    {2, 0, 1, 0, 1},
    {3, 0, 2, 1, 0},
};

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("ReactionModel: epsilon must be positive");
}

}  // namespace

std::string_view to_string(ReactionKind kind) {
  switch (kind) {
    case ReactionKind::zero: return "zero";
    case ReactionKind::two_group: return "two_group";
    case ReactionKind::contrast: return "contrast";
    case ReactionKind::spatial_contrast: return "spatial_contrast";
  }
  return "unknown";
}

ReactionKind parse_reaction_kind(std::string_view name) {
  if (name == "zero") return ReactionKind::zero;
  if (name == "two_group") return ReactionKind::two_group;
  if (name == "contrast") return ReactionKind::contrast;
  if (name == "spatial_contrast") return ReactionKind::spatial_contrast;
  throw std::invalid_argument("unknown reaction model '" + std::string(name) + "'");
}

int contrast_exponent(int g, int h) { return kExponents[g][h]; }

int quadrant(double x, double y) { return (x < 0.5 ? 0 : 1) + (y < 0.5 ? 0 : 2); }

double quadrant_bump(int k, double x, double y) {
  if (quadrant(x, y) != k) return 0.0;
  const double sx = std::sin(2.0 * std::numbers::pi * x);
  const double sy = std::sin(2.0 * std::numbers::pi * y);
  return sx * sx * sy * sy;
}

ReactionModel::ReactionModel(ReactionKind kind, int groups, double epsilon)
    : kind_(kind), groups_(groups), epsilon_(epsilon) {}

ReactionModel ReactionModel::zero(int groups) {
  if (groups < 1) throw std::invalid_argument("ReactionModel: need at least one group");
  return ReactionModel(ReactionKind::zero, groups, 1.0);
}

ReactionModel ReactionModel::two_group(double epsilon) {
  check_epsilon(epsilon);
  return ReactionModel(ReactionKind::two_group, 2, epsilon);
}

ReactionModel ReactionModel::contrast(int groups, double epsilon) {
  check_epsilon(epsilon);
  if (groups < 2 || groups > 5)
    throw std::invalid_argument("ReactionModel: contrast matrix needs 2 to 5 groups");
  return ReactionModel(ReactionKind::contrast, groups, epsilon);
}

ReactionModel ReactionModel::spatial_contrast(int groups, double epsilon) {
  check_epsilon(epsilon);
  if (groups < 2 || groups > 5)
    throw std::invalid_argument("ReactionModel: spatial contrast matrix needs 2 to 5 groups");
  return ReactionModel(ReactionKind::spatial_contrast, groups, epsilon);
}

ReactionModel ReactionModel::make(ReactionKind kind, int groups, double epsilon) {
  switch (kind) {
    case ReactionKind::zero: return zero(groups);
    case ReactionKind::two_group:
      if (groups != 2) throw std::invalid_argument("ReactionModel: two_group needs G = 2");
      return two_group(epsilon);
    case ReactionKind::contrast: return contrast(groups, epsilon);
    case ReactionKind::spatial_contrast: return spatial_contrast(groups, epsilon);
  }
  throw std::invalid_argument("ReactionModel: unknown kind");
}

void ReactionModel::evaluate(double x, double y, Eigen::Ref<Eigen::MatrixXd> out) const {
  const int G = groups_;
  out.setZero();
  switch (kind_) {
    case ReactionKind::zero: return;
    case ReactionKind::two_group: {
      const double s = 1.0 / epsilon_;
      out << s, -s, -s, s;
      return;
    }
    case ReactionKind::contrast:
    case ReactionKind::spatial_contrast: {
      double bump[4] = {1.0, 1.0, 1.0, 1.0};
      if (kind_ == ReactionKind::spatial_contrast)
        for (int k = 0; k < 4; ++k) bump[k] = quadrant_bump(k, x, y);
      for (int g = 0; g < G; ++g)
        for (int h = g + 1; h < G; ++h) {
          const int k = contrast_exponent(g, h);
          const double c = -std::pow(epsilon_, -k) * bump[k];
          out(g, h) = c;
          out(h, g) = c;
        }
      for (int g = 0; g < G; ++g) {
        double s = 0.0;
        for (int h = 0; h < G; ++h)
          if (h != g) s -= out(g, h);
        out(g, g) = s;
      }
      return;
    }
  }
}

Eigen::MatrixXd ReactionModel::at(double x, double y) const {
  Eigen::MatrixXd m(groups_, groups_);
  evaluate(x, y, m);
  return m;
}

}  // namespace rdschwarz
