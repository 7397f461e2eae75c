#pragma once

#include "chambers/polynomial.hpp"
#include "chambers/projection.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace chambers {

using BigRational = boost::multiprecision::cpp_rational;

struct VolumeEstimate {
  std::vector<double> nu_hat;     // k = 0..n
  std::vector<double> std_error;  // sqrt(nu_hat (1 - nu_hat) / N)
  std::vector<std::uint64_t> counts;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t rejected = 0;  // non-generic draws that were replaced
};

// Fraction of N standard Gaussian vectors whose projection onto c is
// k-dimensional. Draws come in fixed batches with one random stream per
// batch, so the result does not depend on the thread count. If transform is
// given, each draw is multiplied by it before classification.
VolumeEstimate estimate_volumes(const Chamber<double>& c, std::uint64_t samples, std::uint64_t seed,
                                int threads = 1, const std::optional<Matrix>& transform = std::nullopt);

struct ExactRank2Volumes {
  std::array<BigRational, 3> fractions;  // ((m - 1) / 2m, 1/2, 1/2m)
  std::array<double, 3> from_angles;     // same values from the chamber geometry
};

// Projection volumes of the dihedral chamber of angle pi/m; m = 2 is the
// quadrant. Throws PreconditionError for m < 2.
ExactRank2Volumes exact_volumes_rank2(int m);

struct VolumeComparison {
  std::vector<double> target;  // |a_k| / |W|
  std::vector<double> z;
  std::vector<bool> flagged;   // |z| > threshold
  double threshold = 4.0;

  bool any_flagged() const;
};

// z_k = (nu_hat_k - |a_k|/|W|) / se_k with se_k the estimate's standard error,
// or the binomial error at the target when the estimate has none.
VolumeComparison compare_volumes(const VolumeEstimate& est, const IntegerPolynomial& chi,
                                 const BigInt& order, double threshold = 4.0);

}  // namespace chambers
