#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace rdschwarz {

/// Coordinate axis of a face normal.
enum class Axis { x = 0, y = 1 };

struct Cell {
  int i = 0;  // column index in the 2^l x 2^l grid
  int j = 0;  // row index
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 1.0;
  int parent = -1;                           // index on level l-1, -1 on level 0
  std::array<int, 4> children{-1, -1, -1, -1};  // (0,0),(1,0),(0,1),(1,1) on level l+1
};

/// Face shared by two cells. The unit normal points along +axis, from `minus`
/// (lower-left neighbour) into `plus`.
struct InteriorFace {
  int minus = -1;
  int plus = -1;
  Axis normal = Axis::x;
  double x0 = 0.0;  // start point of the face segment
  double y0 = 0.0;
  double length = 0.0;
};

struct BoundaryFace {
  int cell = -1;
  Axis normal = Axis::x;
  int sign = 1;  // outward normal = sign * e_axis
  double x0 = 0.0;
  double y0 = 0.0;
  double length = 0.0;
};

/// Neighbour slots of a cell, in the order west, east, south, north.
enum class Side { west = 0, east = 1, south = 2, north = 3 };

/// Uniform Cartesian quadrilateral mesh of the unit square at one refinement level.
class Mesh {
public:
  explicit Mesh(int level);

  int level() const { return level_; }
  int cells_per_side() const { return n_; }
  double cell_size() const { return h_; }
  std::size_t n_cells() const { return cells_.size(); }

  const Cell& cell(std::size_t c) const { return cells_[c]; }
  const std::vector<Cell>& cells() const { return cells_; }
  const std::vector<InteriorFace>& interior_faces() const { return interior_; }
  const std::vector<BoundaryFace>& boundary_faces() const { return boundary_; }

  /// Row-major lexicographic index of grid position (i, j).
  int index(int i, int j) const { return j * n_ + i; }

  /// Neighbour across the given side, or -1 at the domain boundary.
  int neighbor(std::size_t c, Side s) const;

private:
  friend class MeshHierarchy;

  int level_;
  int n_;
  double h_;
  std::vector<Cell> cells_;
  std::vector<InteriorFace> interior_;
  std::vector<BoundaryFace> boundary_;
};

/// Nested meshes 0..L obtained by splitting every cell into four children.
class MeshHierarchy {
public:
  static constexpr int max_supported_level = 14;

  /// Throws std::invalid_argument for L < 0 or L > max_supported_level.
  explicit MeshHierarchy(int finest_level);

  int finest_level() const { return static_cast<int>(levels_.size()) - 1; }
  const Mesh& level(int l) const { return levels_.at(static_cast<std::size_t>(l)); }
  const Mesh& finest() const { return levels_.back(); }

private:
  std::vector<Mesh> levels_;
};

}  // namespace rdschwarz
