#pragma once

#include "chambers/coxeter.hpp"
#include "chambers/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace chambers {

// Set of hyperplanes (by index into the arrangement) containing a flat.
class HyperplaneSet {
 public:
  HyperplaneSet() = default;
  explicit HyperplaneSet(int size) : words_((size + 63) / 64, 0) {}

  void insert(int i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool contains(int i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  bool subset_of(const HyperplaneSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & ~other.words_[w]) return false;
    }
    return true;
  }
  int count() const;
  bool operator==(const HyperplaneSet&) const = default;
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::vector<std::uint64_t> words_;
};

struct LatticeNode {
  Matrix normal_basis;  // n x codim, orthonormal columns spanning the normal space
  int dim = 0;
  long long mu = 0;
  std::vector<int> parents;  // covered flats one codimension lower
  HyperplaneSet hyperplanes;
};

// Flats of a central arrangement ordered by reverse inclusion. Node 0 is the
// ambient space; nodes are sorted by codimension.
struct IntersectionLattice {
  int ambient_dim = 0;
  std::vector<LatticeNode> nodes;

  int rank() const;  // largest codimension
  // z <= y in the lattice (y is contained in z).
  bool leq(int z, int y) const {
    return nodes[z].hyperplanes.subset_of(nodes[y].hyperplanes);
  }
};

// Breadth-first closure under intersection; Moebius values filled in.
IntersectionLattice intersection_lattice(const Matrix& normals, int ambient_dim,
                                         const Tolerances& tol = {});

IntegerPolynomial char_poly_moebius(const IntersectionLattice& lattice);

// prod (t - e_i), times t^(n - d) for the non-essential part of the ambient
// space the root system lives in.
IntegerPolynomial char_poly_exponents(const CoxeterDiagram& diagram);

// Integer normals of a crystallographic arrangement, possibly in a different
// ambient space than build_root_system uses (I2:6 as G2 inside the sum-zero
// plane of R^3, F4 in its standard coordinates).
struct IntegralArrangement {
  Eigen::MatrixXi normals;  // one hyperplane per row
  int ambient_dim = 0;
};

std::optional<IntegralArrangement> integral_arrangement(const CoxeterDiagram& diagram);

// Number of points of F_q^n off every hyperplane; at most four coordinates
// are enumerated (one fewer than n when all normals sum to zero).
std::uint64_t count_points_off_arrangement(const Eigen::MatrixXi& normals, int ambient_dim,
                                           int q);

// Interpolates q -> #(F_q^n minus the arrangement) through the first n + 1
// primes and checks the remaining ones against the result.
IntegerPolynomial char_poly_finite_field(const Eigen::MatrixXi& normals, int ambient_dim,
                                         const std::vector<int>& primes);

// Finite-field oracle re-expressed in the ambient dimension of
// build_root_system(diagram). nullopt for non-crystallographic groups or
// arrangements with more than four coordinates.
std::optional<IntegerPolynomial> char_poly_finite_field(const CoxeterDiagram& diagram);

std::vector<int> default_primes(int ambient_dim);

IntegerPolynomial char_poly_product(const IntegerPolynomial& p1, const IntegerPolynomial& p2);

// pi(A, t) from chi(t) = t^rank * pi(A, -1/t); powers of t beyond the rank
// (non-essential directions) are stripped first.
IntegerPolynomial poincare_polynomial(const IntegerPolynomial& chi, int rank);

}  // namespace chambers
