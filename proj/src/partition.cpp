#include "chambers/partition.hpp"

#include "chambers/arrangement.hpp"
#include "chambers/orbit.hpp"
#include "chambers/projection.hpp"

#include <map>
#include <sstream>

namespace chambers {

namespace {

enum class Reduction { drop_last, drop_first, zero_first, merge };

struct Placement {
  PartitionLabel label;
  Reduction reduction = Reduction::drop_last;
  int wall = 0;  // merge: coordinates wall and wall + 1 of gx
};

Family canonical_family(const CoxeterDiagram& diagram) {
  if (!diagram.irreducible()) throw PreconditionError("partition needs an irreducible group");
  const auto& f = diagram.factors.front();
  if ((f.family == Family::A && f.rank >= 2) || f.family == Family::B || f.family == Family::D) {
    return f.family;
  }
  throw PreconditionError("partition is defined for A (rank >= 2), B and D only");
}

Placement locate(Family family, const SignedPermutation& g) {
  const int n = g.size();
  std::vector<int> inv(n);
  for (int k = 0; k < n; ++k) inv[g.perm[k]] = k;
  const int p = g.perm[n - 1];
  const int s = g.sign[n - 1];

  Placement out;
  out.label.family = family;
  if (s > 0 && p == n - 1) {
    out.label.index = n;
    return out;
  }
  if (s < 0 && p == 0) {
    if (family == Family::B) {
      out.label.index = 0;
      out.reduction = Reduction::zero_first;
    } else if (family == Family::D) {
      out.label.index = n;
      out.reduction = Reduction::drop_first;
    } else {
      throw InternalError("negative sign in a type A element");
    }
    return out;
  }
  // x_n at position p followed by +-x_j, or -x_n at position p preceded by -+x_j
  out.reduction = Reduction::merge;
  out.wall = s > 0 ? p : p - 1;
  const int k = s > 0 ? inv[p + 1] : inv[p - 1];
  const int j = k + 1;
  const bool same_sign = g.sign[k] == s;
  out.label.index = (family == Family::B && !same_sign) ? -j : j;
  return out;
}

// A_{n-2} in R^{n-1}, or B_{n-1}.
Matrix sub_roots(Family family, int n) {
  const int m = n - 1;
  if (family == Family::A) {
    Matrix r = Matrix::Zero(m - 1, m);
    for (int i = 0; i + 1 < m; ++i) {
      r(i, i) = -1;
      r(i, i + 1) = 1;
    }
    return r;
  }
  Matrix r = Matrix::Zero(m, m);
  r(0, 0) = 1;
  for (int i = 1; i < m; ++i) {
    r(i, i - 1) = -1;
    r(i, i) = 1;
  }
  return r;
}

IntegerPolynomial sub_polynomial(Family family, int n) {
  std::vector<int> roots;
  if (family == Family::A) {
    for (int e = 0; e <= n - 2; ++e) roots.push_back(e);
  } else {
    for (int i = 1; i <= n - 1; ++i) roots.push_back(2 * i - 1);
  }
  return IntegerPolynomial::from_roots(roots);
}

std::string sub_label(Family family, int n) {
  return (family == Family::A ? "A" : "B") + std::to_string(family == Family::A ? n - 2 : n - 1);
}

Vector drop(const Vector& v, int i) {
  Vector out(v.size() - 1);
  out << v.head(i), v.tail(v.size() - i - 1);
  return out;
}

struct Reduced {
  Vector point;
  Vector weights;
};

Reduced reduce(const Placement& place, const Vector& y, const Vector& w) {
  switch (place.reduction) {
    case Reduction::drop_last: return {drop(y, y.size() - 1), drop(w, w.size() - 1)};
    case Reduction::drop_first:
    case Reduction::zero_first: return {drop(y, 0), drop(w, 0)};
    case Reduction::merge: break;
  }
  const int i = place.wall;
  Reduced r{drop(y, i + 1), drop(w, i + 1)};
  r.weights(i) = w(i) + w(i + 1);
  r.point(i) = (w(i) * y(i) + w(i + 1) * y(i + 1)) / r.weights(i);
  return r;
}

int face_dim(const Vector& y, const Chamber<double>& c, const Vector& w, bool weighted) {
  return weighted ? classify_weighted(y, c, WeightVector<double>(w)).dim
                  : projection_dimension_fast(y, c).dim;
}

std::vector<BigInt> padded_abs(const IntegerPolynomial& p, int n) {
  std::vector<BigInt> out(n + 1, 0);
  for (int k = 0; k <= n; ++k) out[k] = abs(p.coeff(k));
  return out;
}

}  // namespace

std::string PartitionLabel::to_string() const {
  const char* f = family == Family::A ? "A" : family == Family::B ? "B" : "D";
  return std::string(f) + "[" + std::to_string(index) + "]";
}

PartitionLabel partition_classify(const CoxeterDiagram& diagram, const SignedPermutation& g,
                                  const Vector& x) {
  const Family family = canonical_family(diagram);
  const int n = g.size();
  if (x.size() != n) throw PreconditionError("point and group element dimensions differ");
  if (family == Family::A && g.negative_count() != 0) {
    throw PreconditionError("type A elements are unsigned permutations");
  }
  if (family == Family::D && g.negative_count() % 2 != 0) {
    throw PreconditionError("type D elements have an even number of sign changes");
  }
  const Placement place = locate(family, g);
  // The defining relations are statements about gx; confirm them numerically.
  const Vector gx = g.apply(x);
  const double xn = x(n - 1);
  const double tol = 1e-12 * std::max(1.0, x.norm());
  const bool at_end = std::abs(gx(n - 1) - xn) <= tol;
  const bool at_front = std::abs(gx(0) + xn) <= tol;
  const bool merge_ok = place.reduction == Reduction::merge && gx(place.wall) > gx(place.wall + 1);
  if (!(at_end || at_front || merge_ok)) throw InternalError("group element matches no class");
  return place.label;
}

std::string PartitionCheck::diff() const {
  std::ostringstream out;
  if (!identity_holds) {
    out << "t*chi_sub - " << multiplicity << "*chi_sub = " << (IntegerPolynomial::monomial(1) * chi_sub -
                                                               BigInt(multiplicity) * chi_sub).to_string()
        << " but chi_group = " << chi_group.to_string() << "\n";
  }
  for (const auto& c : classes) {
    bool counts_ok = true;
    for (std::size_t k = 0; k < c.counts.size(); ++k) counts_ok &= BigInt(c.counts[k]) == c.expected[k];
    if (counts_ok && c.reduction_mismatches == 0) continue;
    out << c.label.to_string() << (c.subgroup ? " (subgroup)" : "") << ": counts";
    for (auto v : c.counts) out << ' ' << v;
    out << " expected";
    for (const auto& v : c.expected) out << ' ' << v;
    out << "; reduction mismatches " << c.reduction_mismatches << " of " << c.size << "\n";
  }
  return out.str();
}

PartitionCheck partition_count_check(const RootSystem& rs, const Vector& x,
                                     const std::optional<Vector>& weights, const Tolerances& tol) {
  const Family family = canonical_family(rs.diagram);
  const int n = rs.ambient_dim;
  if (x.size() != n) throw PreconditionError("base point has the wrong dimension");
  if (weights && family == Family::D) throw PreconditionError("type D partition check is unweighted");
  if (genericity_margin(rs, x) <= tol.generic) throw NonGenericError("base point is not generic");
  const Vector w = weights ? *weights : Vector::Ones(n);
  if (weights) WeightVector<double> check(w);
  const bool weighted = weights.has_value();

  const Chamber<double> chamber(rs, tol.sign);
  const Chamber<double> sub(sub_roots(family, n), tol.sign);

  PartitionCheck result;
  result.group = rs.diagram.label;
  result.subgroup = sub_label(family, n);
  result.chi_sub = sub_polynomial(family, n);
  result.chi_group = char_poly_exponents(rs.diagram);
  result.multiplicity = family == Family::B ? 2 * n - 1 : n - 1;
  result.identity_holds = IntegerPolynomial::monomial(1) * result.chi_sub -
                              BigInt(result.multiplicity) * result.chi_sub ==
                          result.chi_group;

  std::map<int, PartitionClassReport> classes;
  for_each_signed_permutation(n, *signed_permutation_kind(rs.diagram), [&](const SignedPermutation& g) {
    const Placement place = locate(family, g);
    const Vector y = g.apply(x);
    const Vector gw = g.apply_unsigned(w);
    const int direct = face_dim(y, chamber, gw, weighted);

    const Reduced r = reduce(place, y, gw);
    const bool subgroup = place.label.index == n;
    const int predicted = face_dim(r.point, sub, r.weights, true) + (subgroup ? 1 : 0);

    auto [it, fresh] = classes.try_emplace(place.label.index);
    PartitionClassReport& c = it->second;
    if (fresh) {
      c.label = place.label;
      c.subgroup = subgroup;
      c.counts.assign(n + 1, 0);
      c.expected = padded_abs(subgroup ? IntegerPolynomial::monomial(1) * result.chi_sub : result.chi_sub, n);
    }
    ++c.size;
    ++c.counts[direct];
    if (predicted != direct) ++c.reduction_mismatches;
  });

  result.counts_match = true;
  result.reductions_match = true;
  for (auto& [index, c] : classes) {
    for (int k = 0; k <= n; ++k) result.counts_match &= BigInt(c.counts[k]) == c.expected[k];
    result.reductions_match &= c.reduction_mismatches == 0;
    result.classes.push_back(std::move(c));
  }
  // every class must be present: n for A and D, 2n for B
  const std::size_t expected_classes = family == Family::B ? 2 * n : n;
  result.counts_match &= result.classes.size() == expected_classes;
  return result;
}

}  // namespace chambers
