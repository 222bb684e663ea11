#pragma once

#include <string>

#include "rdschwarz/vectors.hpp"

namespace rdschwarz {

/// Linear map from residual functionals to corrections.
class Preconditioner {
public:
  virtual ~Preconditioner() = default;
  virtual PrimalVector apply(const DualVector& r) const = 0;
  virtual std::string name() const = 0;
};

}  // namespace rdschwarz
