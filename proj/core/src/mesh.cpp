#include "rdschwarz/mesh.hpp"

#include <stdexcept>
#include <string>

namespace rdschwarz {

Mesh::Mesh(int level) : level_(level) {
  if (level < 0 || level > MeshHierarchy::max_supported_level)
    throw std::invalid_argument("Mesh: level " + std::to_string(level) + " out of range");
  n_ = 1 << level;
  h_ = 1.0 / n_;

  cells_.resize(static_cast<std::size_t>(n_) * n_);
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i) {
      Cell& c = cells_[index(i, j)];
      c.i = i;
      c.j = j;
      c.x0 = i * h_;
      c.y0 = j * h_;
      c.h = h_;
    }

  interior_.reserve(2 * static_cast<std::size_t>(n_) * (n_ - 1));
  // x-normal faces first, then y-normal faces, each in row-major order
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i + 1 < n_; ++i)
      interior_.push_back({index(i, j), index(i + 1, j), Axis::x, (i + 1) * h_, j * h_, h_});
  for (int j = 0; j + 1 < n_; ++j)
    for (int i = 0; i < n_; ++i)
      interior_.push_back({index(i, j), index(i, j + 1), Axis::y, i * h_, (j + 1) * h_, h_});

  boundary_.reserve(4 * static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) {
    boundary_.push_back({index(0, j), Axis::x, -1, 0.0, j * h_, h_});
    boundary_.push_back({index(n_ - 1, j), Axis::x, 1, 1.0, j * h_, h_});
  }
  for (int i = 0; i < n_; ++i) {
    boundary_.push_back({index(i, 0), Axis::y, -1, i * h_, 0.0, h_});
    boundary_.push_back({index(i, n_ - 1), Axis::y, 1, i * h_, 1.0, h_});
  }
}

int Mesh::neighbor(std::size_t c, Side s) const {
  const Cell& cell = cells_[c];
  switch (s) {
    case Side::west: return cell.i > 0 ? index(cell.i - 1, cell.j) : -1;
    case Side::east: return cell.i + 1 < n_ ? index(cell.i + 1, cell.j) : -1;
    case Side::south: return cell.j > 0 ? index(cell.i, cell.j - 1) : -1;
    case Side::north: return cell.j + 1 < n_ ? index(cell.i, cell.j + 1) : -1;
  }
  return -1;
}

MeshHierarchy::MeshHierarchy(int finest_level) {
  if (finest_level < 0 || finest_level > max_supported_level)
    throw std::invalid_argument("MeshHierarchy: finest level " + std::to_string(finest_level) +
                                " outside [0, " + std::to_string(max_supported_level) + "]");
  levels_.reserve(static_cast<std::size_t>(finest_level) + 1);
  for (int l = 0; l <= finest_level; ++l) {
    levels_.emplace_back(l);
    if (l == 0) continue;
    Mesh& coarse = levels_[static_cast<std::size_t>(l) - 1];
    Mesh& fine = levels_.back();
    for (std::size_t pc = 0; pc < coarse.cells_.size(); ++pc) {
      Cell& parent = coarse.cells_[pc];
      for (int cy = 0; cy < 2; ++cy)
        for (int cx = 0; cx < 2; ++cx) {
          const int child = fine.index(2 * parent.i + cx, 2 * parent.j + cy);
          parent.children[static_cast<std::size_t>(cy * 2 + cx)] = child;
          fine.cells_[static_cast<std::size_t>(child)].parent = static_cast<int>(pc);
        }
    }
  }
}

}  // namespace rdschwarz
