#pragma once

#include "chambers/coxeter.hpp"
#include "chambers/parallel.hpp"
#include "chambers/polynomial.hpp"
#include "chambers/projection.hpp"
#include "chambers/random.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace chambers {

struct ChamberPoint {
  Vector coords;
  double genericity_margin = 0;
};

// min over positive roots r of |(r, x)| / (|r| |x|).
double genericity_margin(const RootSystem& rs, const Vector& x);

// Uniform point of the simplex conv{s_1, ..., s_d} (normalized exponential
// weights), resampled until it is at least tol.generic away from every mirror.
ChamberPoint sample_chamber_point(const RootSystem& rs, CounterRng& rng, const Tolerances& tol = {});

// Visits g x for every g in W exactly once by walking the tree in which the
// parent of y is s_i y for the smallest i with (r_i, y) < 0. Needs no visited
// set. Returns the number of visits.
std::uint64_t orbit_traverse(const RootSystem& rs, const Vector& x,
                             const std::function<void(const Vector&)>& visit,
                             const Tolerances& tol = {});

// Breadth-first closure under simple reflections with deduplication on a
// quantized grid. Independent of orbit_traverse; used to cross-check it.
std::uint64_t orbit_traverse_bfs(const RootSystem& rs, const Vector& x,
                                 const std::function<void(const Vector&)>& visit,
                                 const Tolerances& tol = {});

enum class SignedPermutationKind { permutations, all_signs, even_signs };

std::optional<SignedPermutationKind> signed_permutation_kind(const CoxeterDiagram& diagram);

// Every element of S_n, the hyperoctahedral group, or its even-sign subgroup,
// in a fixed order.
void for_each_signed_permutation(int n, SignedPermutationKind kind,
                                 const std::function<void(const SignedPermutation&)>& visit);

// Parallel reduction over the descent tree. make() returns a fresh
// accumulator with add(const Vector&) and merge(const Acc&); the frontier
// split is fixed, so the merge order does not depend on the worker count.
template <typename Make>
auto orbit_reduce(const RootSystem& rs, const Vector& x, int threads, const Tolerances& tol,
                  Make&& make) -> decltype(make());

struct OrbitReport {
  std::string group;
  Vector base_point;
  std::optional<Vector> weights;
  std::vector<std::uint64_t> counts;  // b_0 .. b_n
  std::vector<BigInt> chi_abs;        // |a_0| .. |a_n|
  std::uint64_t orbit_size = 0;
  bool verified = false;
  int resamples = 0;
  double elapsed_seconds = 0;
  std::vector<std::string> warnings;
};

// Projection-dimension counts b_k over the orbit of x. With weights, the
// projection of g x is taken in the metric of g omega (types A and B, or D
// when the base weights keep (r_1, r_2)_phi <= 0).
OrbitReport count_projection_dims(const RootSystem& rs, const Vector& x,
                                  const std::optional<Vector>& weights = std::nullopt,
                                  int threads = 1, const Tolerances& tol = {});

enum class WeightPolicy { unit, random };

struct VerifyOptions {
  int num_points = 1;
  WeightPolicy weights = WeightPolicy::unit;
  std::uint64_t seed = 0;
  int threads = 1;
  int max_resamples = 100;
  Tolerances tol;
};

// Weight vector with log-uniform coordinates on [0.5, 2]; for D-type groups
// the first two coordinates are ordered so (r_1, r_2)_phi <= 0.
Vector random_weights(const RootSystem& rs, CounterRng& rng);

std::vector<OrbitReport> verify_conjecture(const RootSystem& rs, const VerifyOptions& options);

bool counts_constant(const std::vector<OrbitReport>& reports);

}  // namespace chambers

#include "chambers/orbit_impl.hpp"
