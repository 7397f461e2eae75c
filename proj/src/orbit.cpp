#include "chambers/orbit.hpp"

#include "chambers/arrangement.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace chambers {

namespace {

using Key = std::vector<long long>;

struct KeyHash {
  std::size_t operator()(const Key& k) const { return boost::hash_range(k.begin(), k.end()); }
};

Key quantize(const Vector& y, double grid) {
  Key k(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) k[i] = std::llround(y(i) / grid);
  return k;
}

struct CollisionError {};

std::uint64_t bfs_once(const RootSystem& rs, const Vector& x,
                       const std::function<void(const Vector&)>& visit, double grid) {
  const double scale = x.norm();
  std::unordered_map<Key, std::size_t, KeyHash> seen;
  std::vector<Vector> points{x};
  seen.emplace(quantize(x / scale, grid), 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const Vector y = points[queue.front()];
    queue.pop_front();
    visit(y);
    for (int i = 0; i < rs.rank(); ++i) {
      Vector z = reflect(y, rs.simple_roots.row(i).transpose());
      auto [it, inserted] = seen.emplace(quantize(z / scale, grid), points.size());
      if (!inserted) {
        if ((points[it->second] - z).norm() > 1e-9 * scale) throw CollisionError{};
        continue;
      }
      queue.push_back(points.size());
      points.push_back(std::move(z));
    }
  }
  return points.size();
}

class CountAccumulator {
 public:
  CountAccumulator(const Chamber<double>* chamber, int n) : chamber_(chamber), counts_(n + 1, 0) {}
  void add(const Vector& y) { ++counts_[projection_dimension_fast(y, *chamber_).dim]; }
  void merge(const CountAccumulator& other) {
    for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
  }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

 private:
  const Chamber<double>* chamber_;
  std::vector<std::uint64_t> counts_;
};

bool weighted_allowed(const RootSystem& rs, const Vector& w, std::vector<std::string>& warnings) {
  auto kind = signed_permutation_kind(rs.diagram);
  if (!kind) return false;
  if (*kind != SignedPermutationKind::even_signs) return true;
  // D_n: the wall reduction needs (r_1, r_2)_phi = 1/w_2 - 1/w_1 <= 0.
  if (w(0) > w(1)) return false;
  warnings.push_back("weighted counts for type D are outside the proven cases");
  return true;
}

}  // namespace

double genericity_margin(const RootSystem& rs, const Vector& x) {
  const double xn = x.norm();
  if (!(xn > 0)) return 0;
  const Vector ip = rs.positive_roots * x;
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < ip.size(); ++k) {
    margin = std::min(margin, std::abs(ip(k)) / (rs.positive_roots.row(k).norm() * xn));
  }
  return margin;
}

ChamberPoint sample_chamber_point(const RootSystem& rs, CounterRng& rng, const Tolerances& tol) {
  constexpr int kCap = 1000;
  for (int attempt = 0; attempt < kCap; ++attempt) {
    Vector c(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) c(i) = rng.exponential();
    c /= c.sum();
    Vector x = rs.dual_roots.transpose() * c;
    const double margin = genericity_margin(rs, x);
    if (margin > tol.generic) return {std::move(x), margin};
  }
  throw InternalError("no generic chamber point after " + std::to_string(kCap) + " samples");
}

std::uint64_t orbit_traverse(const RootSystem& rs, const Vector& x,
                             const std::function<void(const Vector&)>& visit, const Tolerances& tol) {
  std::uint64_t visits = 0;
  detail::DescentTree(rs, x, tol).walk(x, [&](const Vector& y) {
    ++visits;
    visit(y);
  });
  return visits;
}

std::uint64_t orbit_traverse_bfs(const RootSystem& rs, const Vector& x,
                                 const std::function<void(const Vector&)>& visit,
                                 const Tolerances& tol) {
  if (!(x.norm() > 0)) throw NonGenericError("orbit of the zero vector");
  try {
    return bfs_once(rs, x, visit, tol.dedup);
  } catch (const CollisionError&) {
  }
  try {
    return bfs_once(rs, x, visit, tol.dedup / 100);
  } catch (const CollisionError&) {
    throw NonGenericError("distinct orbit points collide on the deduplication grid");
  }
}

std::optional<SignedPermutationKind> signed_permutation_kind(const CoxeterDiagram& diagram) {
  if (!diagram.irreducible()) return std::nullopt;
  const auto& f = diagram.factors.front();
  switch (f.family) {
    case Family::A:
      return f.rank == 1 ? SignedPermutationKind::all_signs : SignedPermutationKind::permutations;
    case Family::B: return SignedPermutationKind::all_signs;
    case Family::D: return SignedPermutationKind::even_signs;
    default: return std::nullopt;
  }
}

void for_each_signed_permutation(int n, SignedPermutationKind kind,
                                 const std::function<void(const SignedPermutation&)>& visit) {
  SignedPermutation g{std::vector<int>(n), std::vector<int>(n, 1)};
  std::iota(g.perm.begin(), g.perm.end(), 0);
  const std::uint32_t sign_masks =
      kind == SignedPermutationKind::permutations ? 1u : (std::uint32_t{1} << n);
  do {
    for (std::uint32_t mask = 0; mask < sign_masks; ++mask) {
      if (kind == SignedPermutationKind::even_signs && std::popcount(mask) % 2 != 0) continue;
      for (int i = 0; i < n; ++i) g.sign[i] = ((mask >> i) & 1u) ? -1 : 1;
      visit(g);
    }
  } while (std::next_permutation(g.perm.begin(), g.perm.end()));
}

OrbitReport count_projection_dims(const RootSystem& rs, const Vector& x,
                                  const std::optional<Vector>& weights, int threads,
                                  const Tolerances& tol) {
  const auto start = std::chrono::steady_clock::now();
  const int n = rs.ambient_dim;
  if (x.size() != n) throw PreconditionError("base point has the wrong dimension");
  if (genericity_margin(rs, x) <= tol.generic) throw NonGenericError("base point is not generic");

  const Chamber<double> chamber(rs, tol.sign);
  OrbitReport report;
  report.group = rs.diagram.label;
  report.base_point = x;
  report.weights = weights;
  report.counts.assign(n + 1, 0);

  const auto kind = signed_permutation_kind(rs.diagram);
  if (weights) {
    if (weights->size() != n) throw PreconditionError("weight vector has the wrong dimension");
    const WeightVector<double> base(*weights);  // validates positivity
    if (!weighted_allowed(rs, *weights, report.warnings)) {
      throw PreconditionError("weighted counting needs type A or B, or D with w_1 <= w_2");
    }
    for_each_signed_permutation(n, *kind, [&](const SignedPermutation& g) {
      const Vector y = g.apply(x);
      const WeightVector<double> gw(g.apply_unsigned(*weights));
      ++report.counts[classify_weighted(y, chamber, gw).dim];
      ++report.orbit_size;
    });
  } else if (kind) {
    for_each_signed_permutation(n, *kind, [&](const SignedPermutation& g) {
      ++report.counts[projection_dimension_fast(g.apply(x), chamber).dim];
      ++report.orbit_size;
    });
  } else {
    const auto acc = orbit_reduce(rs, x, threads, tol, [&] { return CountAccumulator(&chamber, n); });
    report.counts = acc.counts();
    report.orbit_size = std::accumulate(report.counts.begin(), report.counts.end(), std::uint64_t{0});
  }

  const IntegerPolynomial chi = char_poly_exponents(rs.diagram);
  report.chi_abs.assign(n + 1, 0);
  for (int k = 0; k <= n; ++k) report.chi_abs[k] = abs(chi.coeff(k));
  report.verified = true;
  for (int k = 0; k <= n; ++k) report.verified &= BigInt(report.counts[k]) == report.chi_abs[k];
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Vector random_weights(const RootSystem& rs, CounterRng& rng) {
  Vector w(rs.ambient_dim);
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = std::exp(std::log(0.5) + rng.uniform() * std::log(4.0));
  const auto kind = signed_permutation_kind(rs.diagram);
  if (kind == SignedPermutationKind::even_signs && w(0) > w(1)) std::swap(w(0), w(1));
  return w;
}

std::vector<OrbitReport> verify_conjecture(const RootSystem& rs, const VerifyOptions& options) {
  if (options.num_points < 1) throw PreconditionError("need at least one point");
  const auto points = static_cast<std::size_t>(options.num_points);
  const int threads = std::max(1, options.threads);
  const bool outer = points >= static_cast<std::size_t>(threads);
  std::vector<OrbitReport> reports(points);

  auto run_point = [&](std::size_t p) {
    for (int attempt = 0; attempt <= options.max_resamples; ++attempt) {
      CounterRng rng(options.seed, {p, static_cast<std::uint64_t>(attempt)});
      const ChamberPoint point = sample_chamber_point(rs, rng, options.tol);
      std::optional<Vector> w;
      if (options.weights == WeightPolicy::random) {
        CounterRng wrng(options.seed, {p, static_cast<std::uint64_t>(attempt), 0x77});
        w = random_weights(rs, wrng);
      }
      try {
        reports[p] = count_projection_dims(rs, point.coords, w, outer ? 1 : threads, options.tol);
        reports[p].resamples = attempt;
        return;
      } catch (const NonGenericError&) {
      }
    }
    throw InternalError("no generic orbit after " + std::to_string(options.max_resamples) +
                        " resamples");
  };

  if (outer) {
    parallel_for(points, threads, run_point);
  } else {
    for (std::size_t p = 0; p < points; ++p) run_point(p);
  }
  return reports;
}

bool counts_constant(const std::vector<OrbitReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [&](const OrbitReport& r) { return r.counts == reports.front().counts; });
}

}  // namespace chambers
