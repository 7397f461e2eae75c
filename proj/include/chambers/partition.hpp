#pragma once

#include "chambers/coxeter.hpp"
#include "chambers/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chambers {

// Class of a group element in the inductive decomposition of A_{n-1}, B_n or
// D_n by the position of +-x_n in gx. index is j in 1..n for A and D; for B it
// is 0, n, or +-j with 1 <= j <= n-1.
struct PartitionLabel {
  Family family = Family::A;
  int index = 0;

  std::string to_string() const;
  bool operator==(const PartitionLabel&) const = default;
};

// Canonical A (rank >= 2), B or D groups only. x must be a generic chamber
// point; throws InternalError if gx matches no class.
PartitionLabel partition_classify(const CoxeterDiagram& diagram, const SignedPermutation& g,
                                  const Vector& x);

struct PartitionClassReport {
  PartitionLabel label;
  bool subgroup = false;                // the class that fixes x_n
  std::uint64_t size = 0;
  std::vector<std::uint64_t> counts;    // k-dimensional elements, k = 0..n
  std::vector<BigInt> expected;         // |coefficients| of t chi_sub or chi_sub
  std::uint64_t reduction_mismatches = 0;  // elements whose reduced problem disagrees
};

struct PartitionCheck {
  std::string group;
  std::string subgroup;  // label of the rank-(d-1) group the classes reduce to
  std::vector<PartitionClassReport> classes;
  IntegerPolynomial chi_sub;
  IntegerPolynomial chi_group;
  int multiplicity = 0;  // c in t chi_sub - c chi_sub = chi_group
  bool identity_holds = false;
  bool counts_match = false;
  bool reductions_match = false;

  bool ok() const { return identity_holds && counts_match && reductions_match; }
  // One line per class that disagrees; empty when ok().
  std::string diff() const;
};

// Splits the orbit of x into the classes above and compares, per class, the
// projection-dimension counts with the coefficients of t chi_sub (subgroup
// class) or chi_sub (all others). Each element is also re-classified through
// its reduced rank-(d-1) problem: dropping a coordinate, or averaging the two
// coordinates of the wrong-side wall and adding their weights. Weights are
// allowed for A and B only.
PartitionCheck partition_count_check(const RootSystem& rs, const Vector& x,
                                     const std::optional<Vector>& weights = std::nullopt,
                                     const Tolerances& tol = {});

}  // namespace chambers
