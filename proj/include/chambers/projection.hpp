#pragma once

#include "chambers/coxeter.hpp"
#include "chambers/types.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace chambers {

// Subset K of the simple-root indices, stored as a bit mask.
struct FaceIndex {
  std::uint32_t mask = 0;
  int dim = 0;  // ambient dimension minus |K|

  bool contains(int i) const { return (mask >> i) & 1u; }
  int size() const { return std::popcount(mask); }
  std::vector<int> indices() const {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }
  bool operator==(const FaceIndex&) const = default;
};

inline FaceIndex make_face(std::uint32_t mask, int ambient_dim) {
  return {mask, ambient_dim - std::popcount(mask)};
}

template <typename Scalar>
class WeightVector {
 public:
  explicit WeightVector(VectorX<Scalar> omega) : omega_(std::move(omega)) {
    if (omega_.size() == 0 || !(omega_.array() > Scalar(0)).all() || !omega_.allFinite()) {
      throw PreconditionError("weights must be finite and strictly positive");
    }
    inverted_ = omega_.cwiseInverse();
  }
  static WeightVector unit(Eigen::Index n) { return WeightVector(VectorX<Scalar>::Ones(n)); }

  const VectorX<Scalar>& omega() const { return omega_; }
  // phi_i = 1 / omega_i
  const VectorX<Scalar>& inverted() const { return inverted_; }
  Eigen::Index size() const { return omega_.size(); }

  template <typename A, typename B>
  Scalar inner(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) const {
    return (a.array() * omega_.array() * b.array()).sum();
  }
  template <typename A, typename B>
  Scalar inner_inverted(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) const {
    return (a.array() * inverted_.array() * b.array()).sum();
  }
  template <typename A>
  Scalar norm(const Eigen::MatrixBase<A>& a) const {
    return std::sqrt(inner(a, a));
  }

 private:
  VectorX<Scalar> omega_;
  VectorX<Scalar> inverted_;
};

template <typename Scalar>
struct ProjectionResult {
  VectorX<Scalar> point;
  FaceIndex face;
  int dim = 0;
  Scalar residual_norm = 0;
  // Multipliers of the active constraints (r_i, x) >= 0 for unit-length
  // roots; zero for i outside K.
  VectorX<Scalar> multipliers;
  bool used_fallback = false;
};

// Fundamental chamber C = {x : (r_i, x) >= 0} of a set of simple roots,
// together with the precomputed projection chambers of all its faces.
template <typename Scalar>
class Chamber {
 public:
  explicit Chamber(const MatrixX<Scalar>& simple_roots, Scalar sign_tol = Scalar(1e-9))
      : roots_(simple_roots), sign_tol_(sign_tol) {
    const Eigen::Index d = roots_.rows();
    const Eigen::Index n = roots_.cols();
    if (d == 0 || d > 16 || n < d) throw PreconditionError("chamber needs 1..16 independent roots");
    unit_roots_ = roots_.rowwise().normalized();
    const MatrixX<Scalar> gram = roots_ * roots_.transpose();
    Eigen::LDLT<MatrixX<Scalar>> ldlt(gram);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        Eigen::FullPivLU<MatrixX<Scalar>>(roots_).rank() != d) {
      throw PreconditionError("simple roots are not linearly independent");
    }
    duals_ = ldlt.solve(roots_);
    Eigen::FullPivLU<MatrixX<Scalar>> lu(roots_);
    lineality_ = lu.kernel();
    if (lineality_.cols() == 1 && lineality_.isZero()) lineality_.resize(n, 0);
    for (Eigen::Index c = 0; c < lineality_.cols(); ++c) {
      // Gram-Schmidt so the basis is orthonormal
      for (Eigen::Index p = 0; p < c; ++p)
        lineality_.col(c) -= lineality_.col(p).dot(lineality_.col(c)) * lineality_.col(p);
      lineality_.col(c).normalize();
    }
    build_projection_chambers();
  }

  explicit Chamber(const RootSystem& rs, Scalar sign_tol = Scalar(1e-9))
      : Chamber(rs.simple_roots.template cast<Scalar>(), sign_tol) {}

  int rank() const { return static_cast<int>(roots_.rows()); }
  int ambient_dim() const { return static_cast<int>(roots_.cols()); }
  const MatrixX<Scalar>& roots() const { return roots_; }
  const MatrixX<Scalar>& unit_roots() const { return unit_roots_; }
  const MatrixX<Scalar>& duals() const { return duals_; }
  // Orthonormal basis (columns) of {x : (r_i, x) = 0 for all i}.
  const MatrixX<Scalar>& lineality() const { return lineality_; }
  Scalar sign_tol() const { return sign_tol_; }

  // Generators of the projection chamber of face K: -r_i (i in K) and s_j
  // (j not in K), as unit columns.
  MatrixX<Scalar> face_generators(std::uint32_t mask) const {
    MatrixX<Scalar> g(ambient_dim(), rank());
    for (int i = 0; i < rank(); ++i) {
      if ((mask >> i) & 1u) {
        g.col(i) = -unit_roots_.row(i).transpose();
      } else {
        g.col(i) = duals_.row(i).transpose().normalized();
      }
    }
    return g;
  }

  // Coefficients of the V-component of x in the face generators (d x n).
  const MatrixX<Scalar>& coefficient_map(std::uint32_t mask) const { return coefficient_maps_[mask]; }

  // Masks ordered by Hamming weight, the search order for face classification.
  const std::vector<std::uint32_t>& hamming_order() const { return hamming_order_; }

 private:
  void build_projection_chambers() {
    const std::uint32_t count = std::uint32_t{1} << rank();
    coefficient_maps_.resize(count);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
      const MatrixX<Scalar> g = face_generators(mask);
      // columns span V, so the normal equations are nonsingular and the
      // lineality component of x drops out
      const MatrixX<Scalar> gtg = g.transpose() * g;
      coefficient_maps_[mask] = gtg.ldlt().solve(g.transpose());
      hamming_order_.push_back(mask);
    }
    std::stable_sort(hamming_order_.begin(), hamming_order_.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  }

  MatrixX<Scalar> roots_;
  MatrixX<Scalar> unit_roots_;
  MatrixX<Scalar> duals_;
  MatrixX<Scalar> lineality_;
  Scalar sign_tol_;
  std::vector<MatrixX<Scalar>> coefficient_maps_;
  std::vector<std::uint32_t> hamming_order_;
};

namespace detail {

template <typename Scalar>
struct EqualityProjection {
  VectorX<Scalar> point;
  VectorX<Scalar> multipliers;  // indexed by root, zero outside the mask
};

// Minimizes the weighted distance to y over {(r_i, x) = 0, i in mask}.
template <typename Scalar>
EqualityProjection<Scalar> project_on_face_span(const VectorX<Scalar>& y, const Chamber<Scalar>& c,
                                                const WeightVector<Scalar>& w, std::uint32_t mask) {
  const int d = c.rank();
  std::vector<int> active;
  for (int i = 0; i < d; ++i)
    if ((mask >> i) & 1u) active.push_back(i);
  EqualityProjection<Scalar> out{y, VectorX<Scalar>::Zero(d)};
  if (active.empty()) return out;

  const auto k = static_cast<Eigen::Index>(active.size());
  MatrixX<Scalar> rk(k, c.ambient_dim());
  for (Eigen::Index a = 0; a < k; ++a) rk.row(a) = c.unit_roots().row(active[a]);
  const MatrixX<Scalar> scaled = rk * w.inverted().asDiagonal();  // R_K Phi
  const MatrixX<Scalar> gram = scaled * rk.transpose();
  const VectorX<Scalar> mu = gram.ldlt().solve(-(rk * y));
  out.point = y + scaled.transpose() * mu;
  for (Eigen::Index a = 0; a < k; ++a) out.multipliers(active[a]) = mu(a);
  return out;
}

template <typename Scalar>
Scalar unit_scale(const VectorX<Scalar>& y) {
  return std::max(Scalar(1), y.norm());
}

template <typename Scalar>
bool satisfies_kkt(const VectorX<Scalar>& y, const Chamber<Scalar>& c,
                   const EqualityProjection<Scalar>& e, std::uint32_t mask, Scalar tol) {
  const Scalar scaled = tol * unit_scale(y);
  for (int i = 0; i < c.rank(); ++i) {
    if ((mask >> i) & 1u) {
      if (e.multipliers(i) < -scaled) return false;
    } else if (c.unit_roots().row(i).dot(e.point) < -scaled) {
      return false;
    }
  }
  return true;
}

template <typename Scalar>
ProjectionResult<Scalar> finish(const VectorX<Scalar>& y, const Chamber<Scalar>& c,
                                const WeightVector<Scalar>& w, EqualityProjection<Scalar> e,
                                std::uint32_t mask, bool fallback) {
  ProjectionResult<Scalar> r;
  r.face = make_face(mask, c.ambient_dim());
  r.dim = r.face.dim;
  r.residual_norm = w.norm(y - e.point);
  r.point = std::move(e.point);
  r.multipliers = std::move(e.multipliers);
  r.used_fallback = fallback;
  return r;
}

}  // namespace detail

// Projection by exhaustive search over all 2^d faces: the face whose span
// projection satisfies the KKT conditions, closest one if several pass.
template <typename Scalar>
ProjectionResult<Scalar> project_weighted_exhaustive(const VectorX<Scalar>& y, const Chamber<Scalar>& c,
                                                     const WeightVector<Scalar>& w) {
  const std::uint32_t count = std::uint32_t{1} << c.rank();
  bool found = false;
  std::uint32_t best_mask = 0;
  detail::EqualityProjection<Scalar> best;
  Scalar best_dist = std::numeric_limits<Scalar>::infinity();
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    auto e = detail::project_on_face_span(y, c, w, mask);
    if (!detail::satisfies_kkt(y, c, e, mask, c.sign_tol())) continue;
    const Scalar dist = w.norm(y - e.point);
    if (!found || dist < best_dist) {
      found = true;
      best_dist = dist;
      best_mask = mask;
      best = std::move(e);
    }
  }
  if (!found) throw InternalError("no face satisfies the optimality conditions");
  return detail::finish(y, c, w, std::move(best), best_mask, true);
}

// Weighted projection argmin_{x in C} sum_i omega_i (x_i - y_i)^2 by a primal
// active-set method warm-started from the sign pattern of ((r_i, y))_i.
template <typename Scalar>
ProjectionResult<Scalar> project_weighted(const VectorX<Scalar>& y, const Chamber<Scalar>& c,
                                          const WeightVector<Scalar>& w) {
  if (y.size() != c.ambient_dim() || w.size() != c.ambient_dim()) {
    throw PreconditionError("point, weights and chamber dimensions differ");
  }
  if (!y.allFinite()) throw PreconditionError("point has non-finite coordinates");

  const int d = c.rank();
  const Scalar tol = c.sign_tol() * detail::unit_scale(y);
  const VectorX<Scalar> ry = c.unit_roots() * y;

  std::uint32_t working = 0;
  for (int i = 0; i < d; ++i)
    if (ry(i) < 0) working |= std::uint32_t{1} << i;
  auto start = detail::project_on_face_span(y, c, w, working);
  if (((c.unit_roots() * start.point).array() < -tol).any()) {
    working = (std::uint32_t{1} << d) - 1;
    start = detail::project_on_face_span(y, c, w, working);
  }
  VectorX<Scalar> x = start.point;

  const int max_iterations = 8 * (1 << d) + 16;
  for (int iter = 0; iter < max_iterations; ++iter) {
    auto e = detail::project_on_face_span(y, c, w, working);
    const VectorX<Scalar> step = e.point - x;
    if (step.norm() <= tol) {
      int worst = -1;
      Scalar worst_mu = -tol;
      for (int i = 0; i < d; ++i) {
        if (((working >> i) & 1u) && e.multipliers(i) < worst_mu) {
          worst_mu = e.multipliers(i);
          worst = i;
        }
      }
      if (worst < 0) return detail::finish(y, c, w, std::move(e), working, false);
      working &= ~(std::uint32_t{1} << worst);
      continue;
    }
    Scalar alpha = 1;
    int blocking = -1;
    for (int i = 0; i < d; ++i) {
      if ((working >> i) & 1u) continue;
      const Scalar slope = c.unit_roots().row(i).dot(step);
      if (slope >= -std::numeric_limits<Scalar>::epsilon() * step.norm()) continue;
      const Scalar limit = -c.unit_roots().row(i).dot(x) / slope;
      if (limit < alpha) {
        alpha = std::max(Scalar(0), limit);
        blocking = i;
      }
    }
    x += alpha * step;
    if (blocking >= 0) working |= std::uint32_t{1} << blocking;
  }
  return project_weighted_exhaustive(y, c, w);
}

template <typename Scalar>
ProjectionResult<Scalar> project_unweighted(const VectorX<Scalar>& y, const Chamber<Scalar>& c) {
  return project_weighted(y, c, WeightVector<Scalar>::unit(c.ambient_dim()));
}

// Largest violation of (y - z, g - z)_omega <= 0 over the generators of C:
// the dual roots s_i and both directions of the lineality space. Zero up to
// rounding when z is the projection of y.
template <typename Scalar>
Scalar variational_gap(const VectorX<Scalar>& y, const VectorX<Scalar>& z, const Chamber<Scalar>& c,
                       const WeightVector<Scalar>& w) {
  const VectorX<Scalar> residual = y - z;
  Scalar gap = std::abs(w.inner(residual, z));
  for (int i = 0; i < c.rank(); ++i) {
    const VectorX<Scalar> s = c.duals().row(i).transpose().normalized();
    gap = std::max(gap, w.inner(residual, s));
  }
  for (Eigen::Index l = 0; l < c.lineality().cols(); ++l) {
    gap = std::max(gap, std::abs(w.inner(residual, c.lineality().col(l))));
  }
  return gap;
}

// omega-orthogonal projection onto the hyperplane {(root, x) = 0}.
template <typename Scalar>
VectorX<Scalar> project_wall(const VectorX<Scalar>& y, const VectorX<Scalar>& root,
                             const WeightVector<Scalar>& w) {
  const Scalar along = root.dot(y) / w.inner_inverted(root, root);
  return y - along * (w.inverted().array() * root.array()).matrix();
}

template <typename Scalar>
VectorX<Scalar> project_wall(const VectorX<Scalar>& y, const Chamber<Scalar>& c, int wall,
                             const WeightVector<Scalar>& w) {
  return project_wall<Scalar>(y, c.roots().row(wall).transpose(), w);
}

// Projects onto wall i first, then onto C. Requires (r_i, r_j)_phi <= 0 for
// all j != i and (r_i, y) <= 0; under those conditions the result equals
// project_weighted(y, c, w).
template <typename Scalar>
ProjectionResult<Scalar> wall_reduction(const VectorX<Scalar>& y, const Chamber<Scalar>& c,
                                        const WeightVector<Scalar>& w, int wall) {
  if (wall < 0 || wall >= c.rank()) throw PreconditionError("wall index out of range");
  const VectorX<Scalar> ri = c.unit_roots().row(wall).transpose();
  for (int j = 0; j < c.rank(); ++j) {
    if (j == wall) continue;
    const Scalar cross = w.inner_inverted(ri, c.unit_roots().row(j).transpose());
    if (cross > c.sign_tol()) {
      throw PreconditionError("weighted inner product (r_" + std::to_string(wall + 1) + ", r_" +
                              std::to_string(j + 1) + ")_phi is positive");
    }
  }
  if (ri.dot(y) > c.sign_tol() * detail::unit_scale(y)) {
    throw PreconditionError("point is not on the far side of wall " + std::to_string(wall + 1));
  }
  return project_weighted(project_wall(y, c, wall, w), c, w);
}

// Coefficients of x in the generators of the projection chamber of face K
// (unit-length generators; the lineality component of x is ignored).
template <typename Scalar, typename Derived>
VectorX<Scalar> face_coefficients(const Eigen::MatrixBase<Derived>& x, const Chamber<Scalar>& c,
                                  std::uint32_t mask) {
  return c.coefficient_map(mask) * x;
}

template <typename Scalar, typename Derived>
bool face_membership(const Eigen::MatrixBase<Derived>& x, const Chamber<Scalar>& c, std::uint32_t mask) {
  const Scalar scale = std::max(x.norm(), std::numeric_limits<Scalar>::min());
  return (face_coefficients(x, c, mask).array() >= -c.sign_tol() * scale).all();
}

// Face K whose projection chamber contains x, searched by Hamming distance
// from the sign pattern of ((r_i, x))_i. Throws NonGenericError when x lies
// within the sign tolerance of a projection-chamber boundary.
template <typename Scalar, typename Derived>
FaceIndex projection_dimension_fast(const Eigen::MatrixBase<Derived>& x, const Chamber<Scalar>& c) {
  const Scalar norm = x.norm();
  if (!(norm > 0)) throw NonGenericError("zero point has no generic projection");
  const Scalar eps = c.sign_tol() * norm;
  const VectorX<Scalar> ry = c.unit_roots() * x;
  std::uint32_t pattern = 0;
  for (int i = 0; i < c.rank(); ++i)
    if (ry(i) < 0) pattern |= std::uint32_t{1} << i;

  for (std::uint32_t flip : c.hamming_order()) {
    const std::uint32_t mask = pattern ^ flip;
    const VectorX<Scalar> coeffs = c.coefficient_map(mask) * x;
    const Scalar lowest = coeffs.minCoeff();
    if (lowest > eps) return make_face(mask, c.ambient_dim());
    if (lowest >= -eps) throw NonGenericError("point lies on a projection-chamber boundary");
  }
  throw InternalError("projection chambers do not cover the point");
}

// Weighted classification through the active-set solver, refusing points
// without strict complementarity.
template <typename Scalar>
FaceIndex classify_weighted(const VectorX<Scalar>& y, const Chamber<Scalar>& c,
                            const WeightVector<Scalar>& w) {
  const auto p = project_weighted(y, c, w);
  const Scalar eps = c.sign_tol() * std::max(y.norm(), std::numeric_limits<Scalar>::min());
  for (int i = 0; i < c.rank(); ++i) {
    const Scalar margin = p.face.contains(i) ? p.multipliers(i) : c.unit_roots().row(i).dot(p.point);
    if (margin <= eps) throw NonGenericError("weighted projection is degenerate");
  }
  return p.face;
}

}  // namespace chambers
