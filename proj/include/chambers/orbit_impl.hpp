#pragma once

// Template definitions for orbit.hpp.

#include <deque>

namespace chambers {

namespace detail {

class DescentTree {
 public:
  DescentTree(const RootSystem& rs, const Vector& x, const Tolerances& tol)
      : units_(rs.simple_roots.rowwise().normalized()), eps_(tol.generic * x.norm()) {
    if (!(x.norm() > 0)) throw NonGenericError("orbit of the zero vector");
  }

  int rank() const { return static_cast<int>(units_.rows()); }

  // Children of y in the descent tree.
  template <typename Fn>
  void for_each_child(const Vector& y, Fn&& fn) const {
    const Vector ry = units_ * y;
    for (int j = 0; j < rank(); ++j) {
      if (std::abs(ry(j)) <= eps_) throw NonGenericError("orbit point lies on a mirror");
      if (ry(j) < 0) continue;
      Vector z = y - (2.0 * ry(j)) * units_.row(j).transpose();
      bool first_descent = true;
      for (int i = 0; i < j && first_descent; ++i) first_descent = units_.row(i).dot(z) >= 0;
      if (first_descent) fn(std::move(z));
    }
  }

  template <typename Fn>
  void walk(const Vector& root, Fn&& visit) const {
    std::vector<Vector> stack{root};
    while (!stack.empty()) {
      Vector y = std::move(stack.back());
      stack.pop_back();
      visit(y);
      for_each_child(y, [&](Vector z) { stack.push_back(std::move(z)); });
    }
  }

 private:
  Matrix units_;
  double eps_;
};

}  // namespace detail

template <typename Make>
auto orbit_reduce(const RootSystem& rs, const Vector& x, int threads, const Tolerances& tol,
                  Make&& make) -> decltype(make()) {
  using Acc = decltype(make());
  constexpr std::size_t kFrontierTarget = 256;
  const detail::DescentTree tree(rs, x, tol);

  Acc top = make();
  std::deque<Vector> frontier{x};
  while (!frontier.empty() && frontier.size() < kFrontierTarget) {
    std::deque<Vector> next;
    for (const Vector& y : frontier) {
      top.add(y);
      tree.for_each_child(y, [&](Vector z) { next.push_back(std::move(z)); });
    }
    frontier = std::move(next);
  }

  std::vector<Acc> parts;
  parts.reserve(frontier.size());
  for (std::size_t i = 0; i < frontier.size(); ++i) parts.push_back(make());
  parallel_for(frontier.size(), threads, [&](std::size_t i) {
    tree.walk(frontier[i], [&](const Vector& y) { parts[i].add(y); });
  });
  for (const Acc& p : parts) top.merge(p);
  return top;
}

}  // namespace chambers
