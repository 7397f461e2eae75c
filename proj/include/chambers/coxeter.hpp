#pragma once

#include "chambers/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chambers {

enum class Family { A, B, D, I2, H, F, E };

// One irreducible factor of a group label, e.g. B3 or I2:7.
struct IrreducibleType {
  Family family;
  int rank;
  int m = 0;  // dihedral order parameter, I2 only

  std::string label() const;
  bool operator==(const IrreducibleType&) const = default;
};

struct CoxeterDiagram {
  std::string label;
  std::vector<IrreducibleType> factors;
  Eigen::MatrixXi coxeter_matrix;

  int rank() const { return static_cast<int>(coxeter_matrix.rows()); }
  bool irreducible() const { return factors.size() == 1; }
};

// Grammar: FACTOR ("x" FACTOR)*, FACTOR in {A k>=1, B k>=2, D k>=3, I2:m m>=3,
// H3, H4, F4, E6, E7, E8}.
CoxeterDiagram parse_group_spec(std::string_view label);

// Ambient dimension of the embedding build_root_system chooses: A_k (k >= 2)
// lives in R^{k+1}, every other factor is essential.
int ambient_dimension(const CoxeterDiagram& diagram);

// Cosine Gram matrix B_ij = -cos(pi / m_ij).
Matrix gram_matrix(const Eigen::MatrixXi& coxeter_matrix);

enum class Embedding { canonical, gram_cholesky };

struct RootSystem {
  CoxeterDiagram diagram;
  int ambient_dim = 0;
  Embedding embedding = Embedding::canonical;
  Matrix simple_roots;  // d x n, one root per row
  Matrix dual_roots;    // d x n, rows in span of simple roots, (s_i, r_j) = delta_ij
  Matrix positive_roots;  // m x n, one line representative per mirror

  int rank() const { return static_cast<int>(simple_roots.rows()); }
  int num_reflections() const { return static_cast<int>(positive_roots.rows()); }
};

// Canonical coordinates for A/B/D/I2 factors, unit Gram-Cholesky rows for
// H/F/E. Products are block diagonal.
RootSystem build_root_system(const CoxeterDiagram& diagram, const Tolerances& tol = {});

// Same diagram, every simple root multiplied by the given positive factor.
// Chambers and faces are unchanged; used to test normalization invariance.
RootSystem rescale_simple_roots(const RootSystem& rs, const Vector& factors,
                                const Tolerances& tol = {});

// Dual basis of the simple roots inside their span.
Matrix dual_basis(const Matrix& simple_roots);

// Closure of the simple roots under simple reflections, one representative
// per line (first nonzero coordinate positive).
Matrix positive_roots(const Matrix& simple_roots, const Tolerances& tol = {},
                      std::size_t safety_bound = 1'000'000);

std::vector<int> exponents(const CoxeterDiagram& diagram);
std::vector<int> exponents(const IrreducibleType& type);

// Product of (e_i + 1); throws std::overflow_error beyond 64 bits.
std::uint64_t group_order(const CoxeterDiagram& diagram);

inline Vector reflect(const Vector& x, const Eigen::Ref<const Vector>& root) {
  return x - (2.0 * root.dot(x) / root.squaredNorm()) * root;
}

Matrix reflection_matrix(const Eigen::Ref<const Vector>& root);

// x -> sign_i * x at position perm_i, i.e. (g x)_{perm[i]} = sign[i] * x_i.
struct SignedPermutation {
  std::vector<int> perm;
  std::vector<int> sign;

  int size() const { return static_cast<int>(perm.size()); }
  int negative_count() const;
  template <typename Derived>
  VectorX<typename Derived::Scalar> apply(const Eigen::MatrixBase<Derived>& x) const {
    VectorX<typename Derived::Scalar> y(x.size());
    for (int i = 0; i < size(); ++i) y(perm[i]) = sign[i] * x(i);
    return y;
  }
  // Weights move with coordinates but never change sign.
  template <typename Derived>
  VectorX<typename Derived::Scalar> apply_unsigned(const Eigen::MatrixBase<Derived>& w) const {
    VectorX<typename Derived::Scalar> y(w.size());
    for (int i = 0; i < size(); ++i) y(perm[i]) = w(i);
    return y;
  }
  Matrix matrix() const;
};

struct GroupElement {
  std::vector<int> word;  // simple reflection indices, applied right to left
  Matrix matrix;
  std::optional<SignedPermutation> fast_form;
};

GroupElement element_from_word(const RootSystem& rs, std::vector<int> word);

// Recover the signed permutation of an A/B/D canonical matrix, if it is one.
std::optional<SignedPermutation> as_signed_permutation(const Matrix& m, double tol = 1e-9);

bool is_signed_permutation_family(const CoxeterDiagram& diagram);

}  // namespace chambers
