#include "chambers/arrangement.hpp"

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <stdexcept>
#include <unordered_map>

namespace chambers {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Residuals between the two thresholds cannot be classified safely.
constexpr double kClearlyOutside = 1e-4;

struct SetHash {
  std::size_t operator()(const HyperplaneSet& s) const {
    return boost::hash_range(s.words().begin(), s.words().end());
  }
};

// Relative distance of v from the column span of an orthonormal basis.
double span_residual(const Matrix& basis, const Vector& v) {
  if (basis.cols() == 0) return 1.0;
  const Vector rest = v - basis * (basis.transpose() * v);
  return rest.norm() / v.norm();
}

bool in_span(const Matrix& basis, const Vector& v, const Tolerances& tol) {
  const double res = span_residual(basis, v);
  if (res <= tol.rank) return true;
  if (res >= kClearlyOutside) return false;
  throw InternalError("rank test ambiguity: residual " + std::to_string(res) +
                      " lies between the membership thresholds");
}

Matrix extend_basis(const Matrix& basis, const Vector& v) {
  Vector rest = v;
  if (basis.cols() > 0) rest -= basis * (basis.transpose() * v);
  // second pass keeps the columns orthonormal to working precision
  if (basis.cols() > 0) rest -= basis * (basis.transpose() * rest);
  Matrix out(v.size(), basis.cols() + 1);
  out.leftCols(basis.cols()) = basis;
  out.col(basis.cols()) = rest.normalized();
  return out;
}

Eigen::MatrixXi rows_to_matrix(const std::vector<std::vector<int>>& rows, int n) {
  Eigen::MatrixXi m(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), j) = rows[i][j];
  }
  return m;
}

std::optional<IntegralArrangement> integral_factor(const IrreducibleType& t) {
  std::vector<std::vector<int>> rows;
  auto unit = [](int n, int i) {
    std::vector<int> v(n, 0);
    v[i] = 1;
    return v;
  };
  auto pair = [](int n, int i, int j, int sj) {
    std::vector<int> v(n, 0);
    v[i] = 1;
    v[j] = sj;
    return v;
  };
  int n = 0;
  auto type_a = [&](int k) {  // A_k in R^{k+1}
    n = k + 1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) rows.push_back(pair(n, i, j, -1));
  };
  auto type_bd = [&](int k, bool with_units) {
    n = k;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        rows.push_back(pair(n, i, j, -1));
        rows.push_back(pair(n, i, j, 1));
      }
    if (with_units)
      for (int i = 0; i < n; ++i) rows.push_back(unit(n, i));
  };

  switch (t.family) {
    case Family::A:
      if (t.rank == 1) {
        n = 1;
        rows.push_back({1});
      } else {
        type_a(t.rank);
      }
      break;
    case Family::B: type_bd(t.rank, true); break;
    case Family::D: type_bd(t.rank, false); break;
    case Family::I2:
      if (t.m == 3) {
        type_a(2);
      } else if (t.m == 4) {
        type_bd(2, true);
      } else if (t.m == 6) {
        type_a(2);  // short roots e_i - e_j
        rows.push_back({2, -1, -1});
        rows.push_back({-1, 2, -1});
        rows.push_back({-1, -1, 2});
      } else {
        return std::nullopt;
      }
      break;
    case Family::F:
      type_bd(4, true);
      for (int s1 : {1, -1})
        for (int s2 : {1, -1})
          for (int s3 : {1, -1}) rows.push_back({1, s1, s2, s3});
      break;
    default:
      return std::nullopt;
  }
  return IntegralArrangement{rows_to_matrix(rows, n), n};
}

long long mod(long long a, int q) {
  const long long r = a % q;
  return r < 0 ? r + q : r;
}

}  // namespace

int HyperplaneSet::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

int IntersectionLattice::rank() const {
  return nodes.empty() ? 0 : ambient_dim - nodes.back().dim;
}

IntersectionLattice intersection_lattice(const Matrix& normals, int ambient_dim,
                                         const Tolerances& tol) {
  if (normals.cols() != ambient_dim) {
    throw std::invalid_argument("normal vectors do not match the ambient dimension");
  }
  const int m = static_cast<int>(normals.rows());
  IntersectionLattice lat;
  lat.ambient_dim = ambient_dim;

  LatticeNode top;
  top.normal_basis = Matrix(ambient_dim, 0);
  top.dim = ambient_dim;
  top.mu = 1;
  top.hyperplanes = HyperplaneSet(m);
  lat.nodes.push_back(std::move(top));

  std::unordered_map<HyperplaneSet, int, SetHash> index;
  index.emplace(lat.nodes[0].hyperplanes, 0);

  std::size_t level_begin = 0;
  std::size_t level_end = 1;
  while (level_begin < level_end) {
    for (std::size_t x = level_begin; x < level_end; ++x) {
      for (int h = 0; h < m; ++h) {
        if (lat.nodes[x].hyperplanes.contains(h)) continue;
        const Matrix basis = extend_basis(lat.nodes[x].normal_basis, normals.row(h).transpose());
        HyperplaneSet closure(m);
        for (int g = 0; g < m; ++g) {
          if (in_span(basis, normals.row(g).transpose(), tol)) closure.insert(g);
        }
        auto [it, inserted] = index.emplace(closure, static_cast<int>(lat.nodes.size()));
        if (inserted) {
          LatticeNode node;
          node.normal_basis = basis;
          node.dim = ambient_dim - static_cast<int>(basis.cols());
          node.hyperplanes = std::move(closure);
          lat.nodes.push_back(std::move(node));
        }
        auto& parents = lat.nodes[it->second].parents;
        if (std::find(parents.begin(), parents.end(), static_cast<int>(x)) == parents.end()) {
          parents.push_back(static_cast<int>(x));
        }
      }
    }
    level_begin = level_end;
    level_end = lat.nodes.size();
  }

  for (std::size_t y = 1; y < lat.nodes.size(); ++y) {
    long long sum = 0;
    for (std::size_t z = 0; z < y; ++z) {
      if (lat.nodes[z].dim > lat.nodes[y].dim && lat.leq(static_cast<int>(z), static_cast<int>(y))) {
        sum += lat.nodes[z].mu;
      }
    }
    lat.nodes[y].mu = -sum;
  }
  return lat;
}

IntegerPolynomial char_poly_moebius(const IntersectionLattice& lattice) {
  std::vector<BigInt> c(static_cast<std::size_t>(lattice.ambient_dim) + 1);
  for (const auto& node : lattice.nodes) c[node.dim] += node.mu;
  return IntegerPolynomial(std::move(c));
}

IntegerPolynomial char_poly_exponents(const CoxeterDiagram& diagram) {
  return IntegerPolynomial::from_roots(exponents(diagram))
      .shift_up(ambient_dimension(diagram) - diagram.rank());
}

std::optional<IntegralArrangement> integral_arrangement(const CoxeterDiagram& diagram) {
  std::vector<IntegralArrangement> parts;
  int n = 0;
  int rows = 0;
  for (const auto& f : diagram.factors) {
    auto part = integral_factor(f);
    if (!part) return std::nullopt;
    n += part->ambient_dim;
    rows += static_cast<int>(part->normals.rows());
    parts.push_back(std::move(*part));
  }
  IntegralArrangement out{Eigen::MatrixXi::Zero(rows, n), n};
  int r = 0;
  int c = 0;
  for (const auto& p : parts) {
    out.normals.block(r, c, p.normals.rows(), p.normals.cols()) = p.normals;
    r += static_cast<int>(p.normals.rows());
    c += p.ambient_dim;
  }
  return out;
}

std::uint64_t count_points_off_arrangement(const Eigen::MatrixXi& normals, int ambient_dim,
                                           int q) {
  const int n = ambient_dim;
  const Eigen::Index m = normals.rows();

  // The all-ones direction is in every hyperplane when each normal sums to
  // zero; the count is then q times the count on the slice x_n = 0.
  const bool translation_invariant = n > 1 && (normals.rowwise().sum().array() == 0).all();
  const int free_coords = translation_invariant ? n - 1 : n;
  if (n < 1 || free_coords > 4) {
    throw PreconditionError("finite-field counting is limited to four enumerated coordinates");
  }

  std::vector<std::vector<long long>> reduced(m, std::vector<long long>(n));
  for (Eigen::Index h = 0; h < m; ++h)
    for (int j = 0; j < n; ++j) reduced[h][j] = mod(normals(h, j), q);

  std::uint64_t total = 1;
  for (int j = 0; j < free_coords; ++j) total *= static_cast<std::uint64_t>(q);

  std::vector<long long> x(n, 0);
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (int j = 0; j < free_coords; ++j) {
      x[j] = static_cast<long long>(rest % q);
      rest /= q;
    }
    bool off_all = true;
    for (Eigen::Index h = 0; h < m && off_all; ++h) {
      long long s = 0;
      for (int j = 0; j < n; ++j) s += reduced[h][j] * x[j];
      off_all = (s % q) != 0;
    }
    if (off_all) ++count;
  }
  return translation_invariant ? count * static_cast<std::uint64_t>(q) : count;
}

IntegerPolynomial char_poly_finite_field(const Eigen::MatrixXi& normals, int ambient_dim,
                                         const std::vector<int>& primes) {
  const int n = ambient_dim;
  if (static_cast<int>(primes.size()) < n + 1) {
    throw PreconditionError("finite-field interpolation needs at least n + 1 primes");
  }
  std::vector<int> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw PreconditionError("primes must be distinct");
  }

  std::vector<std::future<std::uint64_t>> jobs;
  for (int q : primes) {
    jobs.push_back(std::async(std::launch::async, [&normals, n, q] {
      return count_points_off_arrangement(normals, n, q);
    }));
  }
  std::vector<std::uint64_t> counts;
  for (auto& j : jobs) counts.push_back(j.get());

  // Lagrange interpolation of the degree-n polynomial through n + 1 points.
  std::vector<Rational> coeffs(n + 1, Rational(0));
  for (int i = 0; i <= n; ++i) {
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (int j = 0; j <= n; ++j) {
      if (j == i) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * primes[j];
      }
      basis = std::move(next);
      denom *= Rational(primes[i] - primes[j]);
    }
    const Rational scale = Rational(BigInt(counts[i])) / denom;
    for (int k = 0; k <= n; ++k) coeffs[k] += basis[k] * scale;
  }

  std::vector<BigInt> ints;
  for (const auto& c : coeffs) {
    if (denominator(c) != 1) {
      throw InternalError("finite-field interpolation produced a non-integer coefficient");
    }
    ints.push_back(numerator(c));
  }
  IntegerPolynomial chi(std::move(ints));
  for (std::size_t i = n + 1; i < primes.size(); ++i) {
    if (chi.evaluate(primes[i]) != BigInt(counts[i])) {
      throw InternalError("finite-field oracle mismatch at q = " + std::to_string(primes[i]));
    }
  }
  return chi;
}

std::vector<int> default_primes(int ambient_dim) {
  // Larger than the Coxeter number of every supported crystallographic type
  // with at most four enumerated coordinates.
  static const std::vector<int> pool{13, 17, 19, 23, 29, 31, 37};
  return {pool.begin(), pool.begin() + std::min<std::size_t>(pool.size(), ambient_dim + 2)};
}

std::optional<IntegerPolynomial> char_poly_finite_field(const CoxeterDiagram& diagram) {
  auto arr = integral_arrangement(diagram);
  if (!arr) return std::nullopt;
  const bool translation_invariant = (arr->normals.rowwise().sum().array() == 0).all();
  if (arr->ambient_dim - (translation_invariant ? 1 : 0) > 4) return std::nullopt;
  const IntegerPolynomial chi =
      char_poly_finite_field(arr->normals, arr->ambient_dim, default_primes(arr->ambient_dim));
  const int target = ambient_dimension(diagram);
  if (arr->ambient_dim >= target) return chi.shift_down(arr->ambient_dim - target);
  return chi.shift_up(target - arr->ambient_dim);
}

IntegerPolynomial char_poly_product(const IntegerPolynomial& p1, const IntegerPolynomial& p2) {
  return p1 * p2;
}

IntegerPolynomial poincare_polynomial(const IntegerPolynomial& chi, int rank) {
  if (chi.is_zero() || chi.degree() < rank) {
    throw PreconditionError("characteristic polynomial degree is below the rank");
  }
  const IntegerPolynomial essential = chi.shift_down(chi.degree() - rank);
  std::vector<BigInt> pi(static_cast<std::size_t>(rank) + 1);
  for (int k = 0; k <= rank; ++k) {
    pi[k] = essential.coeff(rank - k);
    if (k % 2 == 1) pi[k] = -pi[k];
    if (pi[k] < 0) {
      throw PreconditionError("negative Poincare coefficient; not an arrangement polynomial");
    }
  }
  return IntegerPolynomial(std::move(pi));
}

}  // namespace chambers
