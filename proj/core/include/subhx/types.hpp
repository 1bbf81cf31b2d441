#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace subhx {

using Index = std::int64_t;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Point3 = std::array<double, 3>;

/// Matrix-free linear map y = A(x).
using LinearOperator = std::function<Vector(const Vector&)>;

struct Grid3 {
  int x = 1;
  int y = 1;
  int z = 1;

  [[nodiscard]] Index count() const { return Index{x} * y * z; }
  [[nodiscard]] int operator[](int axis) const { return axis == 0 ? x : axis == 1 ? y : z; }
  friend bool operator==(const Grid3&, const Grid3&) = default;
};

std::string to_string(const Grid3& g);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class AssemblyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by PCG when a curvature or preconditioner inner product is
/// non-positive, or when a NaN appears in the iteration.
class SolverBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_dim(Index got, Index expected, const char* what) {
  if (got != expected) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(expected) +
                         ", got " + std::to_string(got));
  }
}

}  // namespace subhx
