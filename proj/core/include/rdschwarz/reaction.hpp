#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace rdschwarz {

enum class ReactionKind { zero, two_group, contrast, spatial_contrast };

std::string_view to_string(ReactionKind kind);
/// Accepts "zero", "two_group", "contrast", "spatial_contrast"; throws on anything else.
ReactionKind parse_reaction_kind(std::string_view name);

/// Group-coupling matrix Sigma(x, y), already carrying its epsilon scaling.
///
/// Every model is symmetric with nonpositive off-diagonal entries and zero row and
/// column sums, so Sigma is positive semidefinite with the group-constant vectors
/// in its kernel.
class ReactionModel {
public:
  /// Sigma = 0 for any number of groups.
  static ReactionModel zero(int groups);
  /// (1/eps) [[1, -1], [-1, 1]].
  static ReactionModel two_group(double epsilon);
  /// Constant contrast matrix: couplings -eps^{-k} from a fixed exponent table,
  /// unit couplings to the second group. Supports 2 <= groups <= 5.
  static ReactionModel contrast(int groups, double epsilon);
  /// Contrast matrix whose coupling with exponent k is scaled by f_k(x, y), where
  /// f_k = sin^2(2 pi x) sin^2(2 pi y) on quadrant k of the unit square and 0 elsewhere.
  static ReactionModel spatial_contrast(int groups, double epsilon);

  static ReactionModel make(ReactionKind kind, int groups, double epsilon);

  ReactionKind kind() const { return kind_; }
  int groups() const { return groups_; }
  double epsilon() const { return epsilon_; }
  bool is_constant() const { return kind_ != ReactionKind::spatial_contrast; }

  void evaluate(double x, double y, Eigen::Ref<Eigen::MatrixXd> out) const;
  Eigen::MatrixXd at(double x, double y) const;

private:
  ReactionModel(ReactionKind kind, int groups, double epsilon);

  ReactionKind kind_;
  int groups_;
  double epsilon_;
};

/// Exponent k of the coupling -eps^{-k} between groups g and h (0-based, g != h)
/// in the contrast matrices.
int contrast_exponent(int g, int h);

/// Quadrant index of a point: 0 = [0,.5)x[0,.5), 1 = [.5,1]x[0,.5),
/// 2 = [0,.5)x[.5,1], 3 = [.5,1]x[.5,1].
int quadrant(double x, double y);

/// sin^2(2 pi x) sin^2(2 pi y) restricted to quadrant k.
double quadrant_bump(int k, double x, double y);

}  // namespace rdschwarz
