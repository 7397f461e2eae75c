#include "chambers/orbit.hpp"
#include "chambers/projection.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace chambers;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(v.size());
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Chamber<double> chamber_of(const std::string& g) { return Chamber<double>(build_root_system(parse_group_spec(g))); }

Vector gaussian(CounterRng& rng, int n) {
  Vector y(n);
  for (int i = 0; i < n; ++i) y(i) = rng.normal();
  return y;
}

Vector log_uniform_weights(CounterRng& rng, int n) {
  Vector w(n);
  for (int i = 0; i < n; ++i) w(i) = std::exp(std::log(0.5) + rng.uniform() * std::log(4.0));
  return w;
}

const std::vector<std::string> kSmallGroups = {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "D3", "D4",
                                               "I2:5", "I2:8", "H3", "H4", "F4", "A1xA1", "A1xB2"};

}  // namespace

TEST_CASE("weight vectors must be positive") {
  CHECK_THROWS_AS(WeightVector<double>(vec({1, 0})), PreconditionError);
  CHECK_THROWS_AS(WeightVector<double>(vec({1, -2})), PreconditionError);
  const WeightVector<double> w(vec({2, 4}));
  CHECK(w.inverted()(1) == doctest::Approx(0.25));
  CHECK(w.inner(vec({1, 1}), vec({1, 2})) == doctest::Approx(10));
}

TEST_CASE("small projection examples") {
  // B2 chamber 0 <= x_1 <= x_2: clamp the negative coordinate
  const auto b2 = chamber_of("B2");
  const auto p = project_unweighted<double>(vec({-1, 2}), b2);
  CHECK(p.point.isApprox(vec({0, 2})));
  CHECK(p.face.mask == 0b01);
  CHECK(p.dim == 1);

  // one wall x_1 = x_2 with weights (1, 3): weighted average 1.25
  const Chamber<double> wall((Matrix(1, 2) << -1, 1).finished());
  const auto q = project_weighted<double>(vec({2, 1}), wall, WeightVector<double>(vec({1, 3})));
  CHECK(q.point(0) == doctest::Approx(1.25));
  CHECK(q.point(1) == doctest::Approx(1.25));
  CHECK(q.dim == 1);

  // quadrant, third quadrant point goes to the origin
  const auto quad = chamber_of("A1xA1");
  const auto o = project_unweighted<double>(vec({-3, -4}), quad);
  CHECK(o.point.norm() < 1e-12);
  CHECK(o.dim == 0);
}

TEST_CASE("wall projections") {
  const WeightVector<double> unit = WeightVector<double>::unit(2);
  CHECK(project_wall<double>(vec({2, 0}), vec({-1, 1}), unit).isApprox(vec({1, 1})));
  for (const auto& w : {vec({1, 1}), vec({0.3, 7}), vec({5, 2})}) {
    CHECK(project_wall<double>(vec({-5, 3}), vec({1, 0}), WeightVector<double>(w)).isApprox(vec({0, 3})));
  }
  CHECK(project_wall<double>(vec({2, 1}), vec({-1, 1}), WeightVector<double>(vec({1, 3}))).isApprox(vec({1.25, 1.25})));
}

TEST_CASE("Pythagoras on walls in the weighted norm") {
  CounterRng rng(21, {});
  for (int t = 0; t < 500; ++t) {
    const Vector r = gaussian(rng, 4);
    const Vector y = gaussian(rng, 4);
    const WeightVector<double> w(log_uniform_weights(rng, 4));
    const Vector py = project_wall<double>(y, r, w);
    CHECK(std::abs(r.dot(py)) < 1e-12 * std::max(1.0, y.norm()));
    Vector h = gaussian(rng, 4);
    h -= (r.dot(h) / r.squaredNorm()) * r;  // any point of the wall
    const double lhs = std::pow(w.norm(y - h), 2);
    const double rhs = std::pow(w.norm(y - py), 2) + std::pow(w.norm(py - h), 2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("wall reduction matches the direct projection") {
  const auto b2 = chamber_of("B2");
  const WeightVector<double> w(vec({2, 5}));
  const auto direct = project_weighted<double>(vec({3, 1}), b2, w);
  const auto reduced = wall_reduction<double>(vec({3, 1}), b2, w, 1);
  CHECK((direct.point - reduced.point).norm() < 1e-9);

  const auto a2 = chamber_of("A2");
  CounterRng rng(8, {});
  for (int t = 0; t < 200; ++t) {
    Vector y = gaussian(rng, 3);
    if (y(0) < y(1)) std::swap(y(0), y(1));
    const WeightVector<double> wa(log_uniform_weights(rng, 3));
    CHECK((project_weighted(y, a2, wa).point - wall_reduction(y, a2, wa, 0).point).norm() < 1e-9);
  }
}

TEST_CASE("wall reduction checks its hypotheses") {
  const auto d3 = chamber_of("D3");
  const Vector y = vec({0.5, -1.5, 2.0});  // (r_2, y) < 0
  // (r_1, r_2)_phi = 1/w_2 - 1/w_1 is positive when w_1 > w_2
  CHECK_THROWS_AS(wall_reduction<double>(y, d3, WeightVector<double>(vec({2, 1, 1})), 1), PreconditionError);
  const auto ok = wall_reduction<double>(y, d3, WeightVector<double>(vec({1, 2, 1})), 1);
  CHECK((ok.point - project_weighted<double>(y, d3, WeightVector<double>(vec({1, 2, 1}))).point).norm() < 1e-9);
  // point on the chamber side of the wall
  CHECK_THROWS_AS(wall_reduction<double>(vec({0, 1, 2}), d3, WeightVector<double>::unit(3), 1), PreconditionError);
  CHECK_THROWS_AS(wall_reduction<double>(y, d3, WeightVector<double>::unit(3), 3), PreconditionError);
}

TEST_CASE("face membership") {
  const auto b3 = chamber_of("B3");
  const Vector interior = b3.duals().colwise().sum().transpose();
  CHECK(face_membership(interior, b3, 0u));
  const Vector polar = -b3.roots().colwise().sum().transpose();
  CHECK(face_membership(polar, b3, 0b111u));
  CHECK_FALSE(face_membership(polar, b3, 0u));

  const auto quad = chamber_of("A1xA1");
  CHECK(face_membership(vec({-1, 2}), quad, 0b01u));
  CHECK_FALSE(face_membership(vec({-1, 2}), quad, 0b10u));
}

TEST_CASE("fast classification on chamber, polar cone and boundaries") {
  for (const auto& g : kSmallGroups) {
    CAPTURE(g);
    const auto c = chamber_of(g);
    const Vector inside = c.duals().colwise().sum().transpose();
    CHECK(projection_dimension_fast(inside, c).mask == 0u);
    CHECK(projection_dimension_fast(inside, c).dim == c.ambient_dim());
    const Vector polar = -c.unit_roots().colwise().sum().transpose();
    CHECK(projection_dimension_fast(polar, c).mask == (1u << c.rank()) - 1);
  }
  // a dual ray lies on the boundary of several projection chambers
  const auto b2 = chamber_of("B2");
  CHECK_THROWS_AS(projection_dimension_fast(Vector(b2.duals().row(0).transpose()), b2), NonGenericError);
  CHECK_THROWS_AS(projection_dimension_fast(vec({0, 0}), b2), NonGenericError);
}

TEST_CASE("active set and fast path agree with the brute-force oracle") {
  for (const auto& g : kSmallGroups) {
    CAPTURE(g);
    const auto rs = build_root_system(parse_group_spec(g));
    const Chamber<double> c(rs);
    const int n = rs.ambient_dim;
    CounterRng rng(99, {static_cast<std::uint64_t>(n)});
    for (int t = 0; t < 1000; ++t) {
      const Vector y = gaussian(rng, n);
      const Vector w = t % 2 ? log_uniform_weights(rng, n) : Vector::Ones(n);
      const auto expected = oracle::brute_force_projection(rs.simple_roots, y, w);
      REQUIRE(expected.has_value());
      const auto got = project_weighted<double>(y, c, WeightVector<double>(w));
      CHECK(got.face.mask == expected->mask);
      CHECK((got.point - expected->point.cast<double>()).norm() < 1e-8);
      if (t % 2 == 0) CHECK(projection_dimension_fast(y, c).mask == expected->mask);
    }
  }
}

TEST_CASE("projection optimality certificates") {
  for (const char* g : {"A3", "B3", "H3", "F4"}) {
    CAPTURE(g);
    const auto c = chamber_of(g);
    const int n = c.ambient_dim();
    CounterRng rng(5, {});
    for (int t = 0; t < 300; ++t) {
      const Vector y = 3 * gaussian(rng, n);
      const WeightVector<double> w(log_uniform_weights(rng, n));
      const auto p = project_weighted(y, c, w);
      CHECK(variational_gap(y, p.point, c, w) < 1e-9 * std::max(1.0, y.norm()));
      for (int i = 0; i < c.rank(); ++i) {
        const double ri = c.unit_roots().row(i).dot(p.point);
        if (p.face.contains(i)) {
          CHECK(std::abs(ri) < 1e-9);
          CHECK(p.multipliers(i) >= -1e-9);
        } else {
          CHECK(ri >= -1e-9);
        }
      }
      // idempotence
      const auto again = project_weighted(p.point, c, w);
      CHECK((again.point - p.point).norm() < 1e-9 * std::max(1.0, y.norm()));
      CHECK(again.residual_norm < 1e-9 * std::max(1.0, y.norm()));
      // exhaustive search finds the same point
      CHECK((project_weighted_exhaustive(y, c, w).point - p.point).norm() < 1e-8);
    }
  }
}

TEST_CASE("non-essential directions pass through the projection") {
  const auto a2 = chamber_of("A2");
  REQUIRE(a2.lineality().cols() == 1);
  const Vector y = vec({3, -1, 0.5});
  const auto p = project_unweighted(y, a2);
  const Vector ones = Vector::Ones(3) / std::sqrt(3.0);
  CHECK(p.point.dot(ones) == doctest::Approx(y.dot(ones)));
  CHECK(projection_dimension_fast(Vector(y + 10 * ones), a2) == projection_dimension_fast(y, a2));
}

TEST_CASE("projection chambers partition space") {
  const auto c = chamber_of("B3");
  CounterRng rng(12, {});
  int generic = 0;
  for (int t = 0; t < 100000; ++t) {
    const Vector x = gaussian(rng, 3);
    int hits = 0;
    for (std::uint32_t mask = 0; mask < 8; ++mask) hits += face_membership(x, c, mask);
    generic += hits == 1;
  }
  CHECK(generic == 100000);
}

TEST_CASE("orbit points classify identically by fast path and solver") {
  for (const char* g : {"H3", "D4", "A1xB2"}) {
    CAPTURE(g);
    const auto rs = build_root_system(parse_group_spec(g));
    const Chamber<double> c(rs);
    CounterRng rng(4, {});
    const Vector x = sample_chamber_point(rs, rng).coords;
    orbit_traverse(rs, x, [&](const Vector& y) {
      CHECK(projection_dimension_fast(y, c) == project_unweighted(y, c).face);
    });
  }
}

TEST_CASE("weighted classification refuses degenerate projections") {
  const auto b2 = chamber_of("B2");
  const WeightVector<double> w = WeightVector<double>::unit(2);
  CHECK(classify_weighted<double>(vec({-1, 2}), b2, w).mask == 0b01u);
  // projects exactly onto the apex of the face
  CHECK_THROWS_AS(classify_weighted<double>(vec({-1, 0}), b2, w), NonGenericError);
}
