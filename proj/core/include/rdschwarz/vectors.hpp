#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace rdschwarz {

/// Flat coefficient array in the DgSpace layout. The tag separates function
/// coefficients (primal) from assembled functionals (dual).
template <class Tag>
class CoefficientVector {
public:
  CoefficientVector() = default;
  explicit CoefficientVector(std::size_t n, double value = 0.0) : data_(n, value) {}
  explicit CoefficientVector(std::vector<double> values) : data_(std::move(values)) {}

  std::size_t size() const { return data_.size(); }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> span() { return data_; }
  std::span<const double> span() const { return data_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  const std::vector<double>& values() const { return data_; }

  void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

  CoefficientVector& operator+=(const CoefficientVector& o) {
    check_size(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  CoefficientVector& operator-=(const CoefficientVector& o) {
    check_size(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  CoefficientVector& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  /// this += a * x
  void axpy(double a, const CoefficientVector& x) {
    check_size(x);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * x.data_[i];
  }

  friend CoefficientVector operator+(CoefficientVector a, const CoefficientVector& b) { return a += b; }
  friend CoefficientVector operator-(CoefficientVector a, const CoefficientVector& b) { return a -= b; }
  friend CoefficientVector operator*(double s, CoefficientVector a) { return a *= s; }

private:
  void check_size(const CoefficientVector& o) const {
    if (o.size() != size()) throw std::invalid_argument("CoefficientVector: size mismatch");
  }

  std::vector<double> data_;
};

struct PrimalTag {};
struct DualTag {};

using PrimalVector = CoefficientVector<PrimalTag>;
using DualVector = CoefficientVector<DualTag>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// Dual pairing <r, v> of a functional with a coefficient vector.
inline double pairing(const DualVector& r, const PrimalVector& v) { return dot(r.span(), v.span()); }

}  // namespace rdschwarz
