#include "chambers/coxeter.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace chambers {

namespace {

constexpr double kPi = std::numbers::pi;

std::string family_letter(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::D: return "D";
    case Family::I2: return "I2";
    case Family::H: return "H";
    case Family::F: return "F";
    case Family::E: return "E";
  }
  return "?";
}

// Coxeter matrix of one irreducible factor, in the root order used by
// build_root_system.
Eigen::MatrixXi factor_coxeter_matrix(const IrreducibleType& t) {
  const int d = t.rank;
  Eigen::MatrixXi m = Eigen::MatrixXi::Constant(d, d, 2);
  m.diagonal().setOnes();
  auto link = [&](int i, int j, int value) {
    m(i, j) = value;
    m(j, i) = value;
  };
  switch (t.family) {
    case Family::A:
      for (int i = 0; i + 1 < d; ++i) link(i, i + 1, 3);
      break;
    case Family::B:
      link(0, 1, 4);
      for (int i = 1; i + 1 < d; ++i) link(i, i + 1, 3);
      break;
    case Family::D:
      link(0, 2, 3);
      link(1, 2, 3);
      for (int i = 2; i + 1 < d; ++i) link(i, i + 1, 3);
      break;
    case Family::I2:
      link(0, 1, t.m);
      break;
    case Family::H:
      link(0, 1, 5);
      for (int i = 1; i + 1 < d; ++i) link(i, i + 1, 3);
      break;
    case Family::F:
      link(0, 1, 3);
      link(1, 2, 4);
      link(2, 3, 3);
      break;
    case Family::E:
      // Bourbaki labels: chain 1-3-4-...-d with node 2 attached to node 4.
      link(0, 2, 3);
      link(1, 3, 3);
      for (int i = 2; i + 1 < d; ++i) link(i, i + 1, 3);
      break;
  }
  return m;
}

// Ambient dimension of the canonical embedding of one factor.
int factor_ambient_dim(const IrreducibleType& t) {
  if (t.family == Family::A && t.rank >= 2) return t.rank + 1;
  return t.rank;
}

Matrix canonical_roots(const IrreducibleType& t) {
  const int d = t.rank;
  const int n = factor_ambient_dim(t);
  Matrix r = Matrix::Zero(d, n);
  switch (t.family) {
    case Family::A:
      if (d == 1) {
        r(0, 0) = 1.0;
      } else {
        for (int i = 0; i < d; ++i) {
          r(i, i + 1) = 1.0;
          r(i, i) = -1.0;
        }
      }
      break;
    case Family::B:
      r(0, 0) = 1.0;
      for (int i = 1; i < d; ++i) {
        r(i, i) = 1.0;
        r(i, i - 1) = -1.0;
      }
      break;
    case Family::D:
      r(0, 0) = 1.0;
      r(0, 1) = 1.0;
      r(1, 1) = 1.0;
      r(1, 0) = -1.0;
      for (int i = 2; i < d; ++i) {
        r(i, i) = 1.0;
        r(i, i - 1) = -1.0;
      }
      break;
    case Family::I2: {
      const double angle = kPi * (t.m - 1) / t.m;
      r(0, 0) = 1.0;
      r(1, 0) = std::cos(angle);
      r(1, 1) = std::sin(angle);
      break;
    }
    default:
      throw InternalError("no canonical embedding for " + t.label());
  }
  return r;
}

Matrix cholesky_roots(const IrreducibleType& t) {
  const Matrix gram = gram_matrix(factor_coxeter_matrix(t));
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw InfiniteGroupError("Gram matrix of " + t.label() + " is not positive definite");
  }
  return llt.matrixL();
}

bool uses_canonical(const IrreducibleType& t) {
  return t.family == Family::A || t.family == Family::B || t.family == Family::D ||
         t.family == Family::I2;
}

std::size_t skip_digits(std::string_view s, std::size_t pos) {
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  return pos;
}

IrreducibleType parse_factor(std::string_view s, std::size_t begin, std::size_t end) {
  if (begin >= end) throw ParseError("empty group factor", begin);
  const char letter = s[begin];
  std::size_t pos = begin + 1;
  auto read_int = [&](std::size_t at) -> std::pair<int, std::size_t> {
    const std::size_t stop = skip_digits(s, at);
    if (stop == at) throw ParseError("expected an integer", at);
    if (stop - at > 6) throw ParseError("integer too large", at);
    return {std::stoi(std::string(s.substr(at, stop - at))), stop};
  };

  IrreducibleType t{Family::A, 0, 0};
  switch (letter) {
    case 'A': t.family = Family::A; break;
    case 'B': t.family = Family::B; break;
    case 'D': t.family = Family::D; break;
    case 'I': t.family = Family::I2; break;
    case 'H': t.family = Family::H; break;
    case 'F': t.family = Family::F; break;
    case 'E': t.family = Family::E; break;
    default: throw ParseError(std::string("unknown group family '") + letter + "'", begin);
  }
  auto [k, after] = read_int(pos);
  t.rank = k;
  pos = after;
  if (t.family == Family::I2) {
    if (k != 2) throw ParseError("dihedral groups are written I2:m", begin + 1);
    if (pos >= end || s[pos] != ':') throw ParseError("expected ':' after I2", pos);
    auto [m, after_m] = read_int(pos + 1);
    if (m < 3) throw ParseError("I2:m requires m >= 3", pos + 1);
    t.m = m;
    pos = after_m;
  }
  if (pos != end) throw ParseError("unexpected character", pos);

  bool ok = false;
  switch (t.family) {
    case Family::A: ok = k >= 1; break;
    case Family::B: ok = k >= 2; break;
    case Family::D: ok = k >= 3; break;
    case Family::I2: ok = true; break;
    case Family::H: ok = k == 3 || k == 4; break;
    case Family::F: ok = k == 4; break;
    case Family::E: ok = k >= 6 && k <= 8; break;
  }
  if (!ok) throw ParseError("unsupported rank for " + family_letter(t.family), begin + 1);
  return t;
}

using QuantizedKey = std::vector<long long>;

struct KeyHash {
  std::size_t operator()(const QuantizedKey& k) const {
    return boost::hash_range(k.begin(), k.end());
  }
};

QuantizedKey quantize(const Vector& v, double grid) {
  QuantizedKey key(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) key[i] = std::llround(v(i) / grid);
  return key;
}

Vector line_representative(const Vector& v, double zero) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > zero) return v(i) < 0 ? Vector(-v) : v;
  }
  return v;
}

}  // namespace

std::string IrreducibleType::label() const {
  if (family == Family::I2) return "I2:" + std::to_string(m);
  return family_letter(family) + std::to_string(rank);
}

CoxeterDiagram parse_group_spec(std::string_view label) {
  CoxeterDiagram diagram;
  diagram.label = std::string(label);
  if (label.empty()) throw ParseError("empty group label", 0);

  std::size_t begin = 0;
  while (true) {
    std::size_t end = label.find('x', begin);
    if (end == std::string_view::npos) end = label.size();
    diagram.factors.push_back(parse_factor(label, begin, end));
    if (end == label.size()) break;
    begin = end + 1;
    if (begin == label.size()) throw ParseError("dangling 'x'", end);
  }

  int d = 0;
  for (const auto& f : diagram.factors) d += f.rank;
  diagram.coxeter_matrix = Eigen::MatrixXi::Constant(d, d, 2);
  int offset = 0;
  for (const auto& f : diagram.factors) {
    diagram.coxeter_matrix.block(offset, offset, f.rank, f.rank) = factor_coxeter_matrix(f);
    offset += f.rank;
  }
  return diagram;
}

int ambient_dimension(const CoxeterDiagram& diagram) {
  int n = 0;
  for (const auto& f : diagram.factors) n += uses_canonical(f) ? factor_ambient_dim(f) : f.rank;
  return n;
}

Matrix gram_matrix(const Eigen::MatrixXi& coxeter_matrix) {
  const Eigen::Index d = coxeter_matrix.rows();
  Matrix b(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      b(i, j) = i == j ? 1.0 : -std::cos(kPi / coxeter_matrix(i, j));
    }
  }
  return b;
}

Matrix dual_basis(const Matrix& simple_roots) {
  const Matrix gram = simple_roots * simple_roots.transpose();
  return gram.ldlt().solve(simple_roots);
}

Matrix positive_roots(const Matrix& simple_roots, const Tolerances& tol,
                      std::size_t safety_bound) {
  const Eigen::Index d = simple_roots.rows();
  std::unordered_map<QuantizedKey, std::size_t, KeyHash> seen;
  std::vector<Vector> roots;
  std::deque<std::size_t> queue;

  auto insert = [&](const Vector& v) {
    Vector rep = line_representative(v, tol.dedup);
    auto key = quantize(rep, tol.dedup);
    if (seen.contains(key)) return;
    if (roots.size() >= safety_bound) {
      throw InfiniteGroupError("root closure exceeds " + std::to_string(safety_bound) +
                               " vectors; group is not finite");
    }
    seen.emplace(std::move(key), roots.size());
    queue.push_back(roots.size());
    roots.push_back(std::move(rep));
  };

  for (Eigen::Index i = 0; i < d; ++i) insert(simple_roots.row(i).transpose());
  while (!queue.empty()) {
    const Vector v = roots[queue.front()];
    queue.pop_front();
    for (Eigen::Index i = 0; i < d; ++i) insert(reflect(v, simple_roots.row(i).transpose()));
  }

  Matrix out(static_cast<Eigen::Index>(roots.size()), simple_roots.cols());
  for (std::size_t k = 0; k < roots.size(); ++k) out.row(k) = roots[k].transpose();
  return out;
}

RootSystem build_root_system(const CoxeterDiagram& diagram, const Tolerances& tol) {
  const Matrix gram = gram_matrix(diagram.coxeter_matrix);
  if (Eigen::LLT<Matrix>(gram).info() != Eigen::Success) {
    throw InfiniteGroupError("Gram matrix of " + diagram.label + " is not positive definite");
  }

  RootSystem rs;
  rs.diagram = diagram;
  rs.embedding = Embedding::canonical;
  for (const auto& f : diagram.factors) {
    if (!uses_canonical(f)) rs.embedding = Embedding::gram_cholesky;
  }
  const int n = ambient_dimension(diagram);
  rs.ambient_dim = n;
  rs.simple_roots = Matrix::Zero(diagram.rank(), n);

  int row = 0;
  int col = 0;
  for (const auto& f : diagram.factors) {
    const Matrix block = uses_canonical(f) ? canonical_roots(f) : cholesky_roots(f);
    rs.simple_roots.block(row, col, block.rows(), block.cols()) = block;
    row += static_cast<int>(block.rows());
    col += static_cast<int>(block.cols());
  }

  rs.dual_roots = dual_basis(rs.simple_roots);
  rs.positive_roots = positive_roots(rs.simple_roots, tol);
  return rs;
}

RootSystem rescale_simple_roots(const RootSystem& rs, const Vector& factors,
                                const Tolerances& tol) {
  if (factors.size() != rs.rank() || (factors.array() <= 0).any()) {
    throw PreconditionError("rescaling needs one positive factor per simple root");
  }
  RootSystem out = rs;
  out.simple_roots = factors.asDiagonal() * rs.simple_roots;
  out.dual_roots = dual_basis(out.simple_roots);
  out.positive_roots = positive_roots(out.simple_roots, tol);
  return out;
}

std::vector<int> exponents(const IrreducibleType& t) {
  std::vector<int> e;
  switch (t.family) {
    case Family::A:
      for (int i = 1; i <= t.rank; ++i) e.push_back(i);
      break;
    case Family::B:
      for (int i = 1; i <= t.rank; ++i) e.push_back(2 * i - 1);
      break;
    case Family::D:
      for (int i = 1; i < t.rank; ++i) e.push_back(2 * i - 1);
      e.push_back(t.rank - 1);
      break;
    case Family::I2:
      e = {1, t.m - 1};
      break;
    case Family::H:
      e = t.rank == 3 ? std::vector<int>{1, 5, 9} : std::vector<int>{1, 11, 19, 29};
      break;
    case Family::F:
      e = {1, 5, 7, 11};
      break;
    case Family::E:
      if (t.rank == 6) e = {1, 4, 5, 7, 8, 11};
      if (t.rank == 7) e = {1, 5, 7, 9, 11, 13, 17};
      if (t.rank == 8) e = {1, 7, 11, 13, 17, 19, 23, 29};
      break;
  }
  std::sort(e.begin(), e.end());
  return e;
}

std::vector<int> exponents(const CoxeterDiagram& diagram) {
  std::vector<int> all;
  for (const auto& f : diagram.factors) {
    auto e = exponents(f);
    all.insert(all.end(), e.begin(), e.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::uint64_t group_order(const CoxeterDiagram& diagram) {
  std::uint64_t order = 1;
  for (int e : exponents(diagram)) {
    if (__builtin_mul_overflow(order, static_cast<std::uint64_t>(e + 1), &order)) {
      throw std::overflow_error("group order of " + diagram.label + " exceeds 64 bits");
    }
  }
  return order;
}

Matrix reflection_matrix(const Eigen::Ref<const Vector>& root) {
  const Eigen::Index n = root.size();
  return Matrix::Identity(n, n) - (2.0 / root.squaredNorm()) * root * root.transpose();
}

int SignedPermutation::negative_count() const {
  return static_cast<int>(std::count(sign.begin(), sign.end(), -1));
}

Matrix SignedPermutation::matrix() const {
  Matrix m = Matrix::Zero(size(), size());
  for (int i = 0; i < size(); ++i) m(perm[i], i) = sign[i];
  return m;
}

std::optional<SignedPermutation> as_signed_permutation(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return std::nullopt;
  const int n = static_cast<int>(m.rows());
  SignedPermutation p{std::vector<int>(n, -1), std::vector<int>(n, 1)};
  std::vector<bool> used(n, false);
  for (int col = 0; col < n; ++col) {
    for (int row = 0; row < n; ++row) {
      const double v = m(row, col);
      if (std::abs(v) < tol) continue;
      if (std::abs(std::abs(v) - 1.0) > tol || p.perm[col] != -1 || used[row]) {
        return std::nullopt;
      }
      p.perm[col] = row;
      p.sign[col] = v > 0 ? 1 : -1;
      used[row] = true;
    }
    if (p.perm[col] == -1) return std::nullopt;
  }
  return p;
}

bool is_signed_permutation_family(const CoxeterDiagram& diagram) {
  return std::all_of(diagram.factors.begin(), diagram.factors.end(), [](const auto& f) {
    return f.family == Family::A || f.family == Family::B || f.family == Family::D;
  });
}

GroupElement element_from_word(const RootSystem& rs, std::vector<int> word) {
  const int n = rs.ambient_dim;
  Matrix m = Matrix::Identity(n, n);
  for (int i : word) {
    if (i < 0 || i >= rs.rank()) throw std::out_of_range("generator index out of range");
    m = m * reflection_matrix(rs.simple_roots.row(i).transpose());
  }
  GroupElement g{std::move(word), std::move(m), std::nullopt};
  if (is_signed_permutation_family(rs.diagram)) g.fast_form = as_signed_permutation(g.matrix);
  return g;
}

}  // namespace chambers
