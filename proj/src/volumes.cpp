#include "chambers/volumes.hpp"

#include "chambers/coxeter.hpp"
#include "chambers/parallel.hpp"
#include "chambers/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace chambers {

namespace {

constexpr std::uint64_t kBatch = 4096;

double angle_between(const Vector& a, const Vector& b) {
  return std::acos(std::clamp(a.normalized().dot(b.normalized()), -1.0, 1.0));
}

}  // namespace

VolumeEstimate estimate_volumes(const Chamber<double>& c, std::uint64_t samples, std::uint64_t seed,
                                int threads, const std::optional<Matrix>& transform) {
  if (samples < 1) throw PreconditionError("need at least one sample");
  const int n = c.ambient_dim();
  if (transform && (transform->rows() != n || transform->cols() != n)) {
    throw PreconditionError("transform has the wrong shape");
  }
  const std::uint64_t batches = (samples + kBatch - 1) / kBatch;
  std::vector<std::vector<std::uint64_t>> counts(batches, std::vector<std::uint64_t>(n + 1, 0));
  std::vector<std::uint64_t> rejected(batches, 0);

  parallel_for(batches, threads, [&](std::size_t b) {
    CounterRng rng(seed, {b});
    const std::uint64_t size = std::min(kBatch, samples - b * kBatch);
    Vector x(n);
    for (std::uint64_t s = 0; s < size;) {
      for (int i = 0; i < n; ++i) x(i) = rng.normal();
      try {
        const int dim = transform ? projection_dimension_fast(Vector(*transform * x), c).dim
                                  : projection_dimension_fast(x, c).dim;
        ++counts[b][dim];
        ++s;
      } catch (const NonGenericError&) {
        ++rejected[b];
      }
    }
  });

  VolumeEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.counts.assign(n + 1, 0);
  for (std::uint64_t b = 0; b < batches; ++b) {
    for (int k = 0; k <= n; ++k) est.counts[k] += counts[b][k];
    est.rejected += rejected[b];
  }
  const double total = static_cast<double>(samples);
  for (int k = 0; k <= n; ++k) {
    const double p = est.counts[k] / total;
    est.nu_hat.push_back(p);
    est.std_error.push_back(std::sqrt(p * (1 - p) / total));
  }
  return est;
}

ExactRank2Volumes exact_volumes_rank2(int m) {
  if (m < 2) throw PreconditionError("dihedral order must be at least 2");
  const std::string label = m == 2 ? "A1xA1" : "I2:" + std::to_string(m);
  const RootSystem rs = build_root_system(parse_group_spec(label));

  ExactRank2Volumes out;
  out.fractions = {BigRational(m - 1, 2 * m), BigRational(1, 2), BigRational(1, 2 * m)};

  // The chamber is spanned by s_1, s_2; the polar cone by -r_1, -r_2. Every
  // other point projects onto one of the two rays, half of the circle.
  const double two_pi = 2 * std::numbers::pi;
  const double chamber = angle_between(rs.dual_roots.row(0), rs.dual_roots.row(1));
  const double polar = angle_between(-rs.simple_roots.row(0).transpose(), -rs.simple_roots.row(1).transpose());
  out.from_angles = {polar / two_pi, 1 - (polar + chamber) / two_pi, chamber / two_pi};
  return out;
}

bool VolumeComparison::any_flagged() const {
  for (bool f : flagged)
    if (f) return true;
  return false;
}

VolumeComparison compare_volumes(const VolumeEstimate& est, const IntegerPolynomial& chi,
                                 const BigInt& order, double threshold) {
  const std::size_t len = est.nu_hat.size();
  if (chi.degree() + 1 > static_cast<int>(len)) {
    throw PreconditionError("polynomial degree exceeds the estimate's dimension");
  }
  if (order <= 0) throw PreconditionError("group order must be positive");
  VolumeComparison cmp;
  cmp.threshold = threshold;
  const double total = static_cast<double>(est.samples);
  for (std::size_t k = 0; k < len; ++k) {
    const double target = BigRational(abs(chi.coeff(static_cast<int>(k))), order).convert_to<double>();
    double se = est.std_error[k];
    if (!(se > 0)) se = std::sqrt(target * (1 - target) / total);
    const double diff = est.nu_hat[k] - target;
    double z = 0;
    if (se > 0) {
      z = diff / se;
    } else if (diff != 0) {
      z = std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    cmp.target.push_back(target);
    cmp.z.push_back(z);
    cmp.flagged.push_back(std::abs(z) > threshold);
  }
  return cmp;
}

}  // namespace chambers
