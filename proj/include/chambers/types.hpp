#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace chambers {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorX<double>;
using Matrix = MatrixX<double>;

// Numerical tolerances of the geometry layer.
struct Tolerances {
  double lin = 1e-9;     // linear-algebra identities
  double dedup = 1e-6;   // quantization grid for root/orbit deduplication
  double sign = 1e-9;    // sign tests (r, x) >= 0 on unit-scaled data
  double rank = 1e-8;    // subspace membership in the intersection lattice
  double generic = 1e-6; // minimum normalized distance to every mirror
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Coxeter matrix does not describe a finite group.
class InfiniteGroupError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point sits (numerically) on a boundary where the answer is not unique.
class NonGenericError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Results that valid input can never produce: broken invariants, oracle
// disagreement, failed convergence.
class InternalError : public std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace chambers
