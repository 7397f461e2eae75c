#include "chambers/coxeter.hpp"
#include "chambers/orbit.hpp"

#include <doctest.h>

#include <numeric>

using namespace chambers;

namespace {

const std::vector<std::string> kGroups = {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "D3", "D4", "D5",
                                          "I2:5", "I2:7", "I2:12", "H3", "H4", "F4", "E6", "E7",
                                          "E8", "A1xA1", "A1xB2", "A2xI2:5"};

Matrix m(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix out(rows.size(), rows.begin()->size());
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) out(i, j++) = v;
    ++i;
  }
  return out;
}

}  // namespace

TEST_CASE("group labels parse into Coxeter matrices") {
  const auto a2 = parse_group_spec("A2");
  CHECK(a2.rank() == 2);
  CHECK(a2.coxeter_matrix(0, 1) == 3);

  const auto i27 = parse_group_spec("I2:7");
  CHECK(i27.rank() == 2);
  CHECK(i27.coxeter_matrix(0, 1) == 7);

  const auto quad = parse_group_spec("A1xA1");
  CHECK(quad.rank() == 2);
  CHECK(quad.coxeter_matrix(0, 1) == 2);
  CHECK(quad.factors.size() == 2);

  const auto prod = parse_group_spec("A2xB3");
  CHECK(prod.rank() == 5);
  CHECK(prod.coxeter_matrix(0, 1) == 3);
  CHECK(prod.coxeter_matrix(2, 3) == 4);
  CHECK(prod.coxeter_matrix(1, 2) == 2);  // blocks do not interact
  CHECK(prod.coxeter_matrix(4, 0) == 2);

  for (const auto& g : kGroups) {
    const auto d = parse_group_spec(g);
    CHECK(d.label == g);
    for (int i = 0; i < d.rank(); ++i) {
      CHECK(d.coxeter_matrix(i, i) == 1);
      for (int j = 0; j < d.rank(); ++j) {
        CHECK(d.coxeter_matrix(i, j) == d.coxeter_matrix(j, i));
        if (i != j) CHECK(d.coxeter_matrix(i, j) >= 2);
      }
    }
  }
}

TEST_CASE("malformed labels are rejected with a position") {
  for (const char* bad : {"", "D2", "A0", "B1", "X3", "A2x", "xA2", "I2:2", "I2:", "I3:5", "H5", "F3", "E9",
                          "E5", "A-1", "A2 ", "a2", "A2xD2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_group_spec(bad), ParseError);
  }
  try {
    parse_group_spec("A2xD2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);  // the offending rank digit
  }
}

TEST_CASE("canonical simple roots and duals") {
  const auto a2 = build_root_system(parse_group_spec("A2"));
  CHECK(a2.ambient_dim == 3);
  CHECK(a2.embedding == Embedding::canonical);
  CHECK(a2.simple_roots.isApprox(m({{-1, 1, 0}, {0, -1, 1}})));

  const auto b2 = build_root_system(parse_group_spec("B2"));
  CHECK(b2.simple_roots.isApprox(m({{1, 0}, {-1, 1}})));
  CHECK(b2.dual_roots.isApprox(m({{1, 1}, {0, 1}})));

  const auto d3 = build_root_system(parse_group_spec("D3"));
  CHECK(d3.simple_roots.isApprox(m({{1, 1, 0}, {-1, 1, 0}, {0, -1, 1}})));

  const auto i23 = build_root_system(parse_group_spec("I2:3"));
  CHECK(i23.simple_roots(1, 0) == doctest::Approx(std::cos(2 * M_PI / 3)));
  CHECK(i23.simple_roots(1, 1) == doctest::Approx(std::sin(2 * M_PI / 3)));

  const auto h3 = build_root_system(parse_group_spec("H3"));
  CHECK(h3.embedding == Embedding::gram_cholesky);
  CHECK((h3.simple_roots * h3.simple_roots.transpose()).isApprox(gram_matrix(h3.diagram.coxeter_matrix)));
}

TEST_CASE("root system invariants hold for every supported group") {
  const double eps = 1e-9;
  for (const auto& g : kGroups) {
    CAPTURE(g);
    const auto rs = build_root_system(parse_group_spec(g));
    const int d = rs.rank();
    const Matrix gram = rs.simple_roots * rs.simple_roots.transpose();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i != j) CHECK(gram(i, j) <= eps);
    const Matrix pairing = rs.dual_roots * rs.simple_roots.transpose();
    CHECK((pairing - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < eps);
    CHECK(Eigen::FullPivLU<Matrix>(rs.simple_roots).rank() == d);

    const auto e = exponents(rs.diagram);
    CHECK(rs.num_reflections() == std::accumulate(e.begin(), e.end(), 0));

    for (int i = 0; i < rs.num_reflections(); ++i) {
      const Vector r = rs.positive_roots.row(i).transpose();
      int first = 0;
      while (std::abs(r(first)) < 1e-9) ++first;
      CHECK(r(first) > 0);
      const Matrix refl = reflection_matrix(r);
      CHECK((refl * refl - Matrix::Identity(rs.ambient_dim, rs.ambient_dim)).cwiseAbs().maxCoeff() < eps);
      CHECK(refl.determinant() == doctest::Approx(-1.0));
    }
  }
}

TEST_CASE("positive root counts") {
  CHECK(build_root_system(parse_group_spec("A2")).num_reflections() == 3);
  CHECK(build_root_system(parse_group_spec("B3")).num_reflections() == 9);
  CHECK(build_root_system(parse_group_spec("H3")).num_reflections() == 15);
  CHECK(build_root_system(parse_group_spec("E8")).num_reflections() == 120);
}

TEST_CASE("positive root closure respects the safety bound") {
  const auto rs = build_root_system(parse_group_spec("H4"));
  CHECK_THROWS_AS(positive_roots(rs.simple_roots, Tolerances{}, 10), InfiniteGroupError);
}

TEST_CASE("exponents and group orders") {
  CHECK(exponents(parse_group_spec("B3")) == std::vector<int>{1, 3, 5});
  CHECK(exponents(parse_group_spec("I2:5")) == std::vector<int>{1, 4});
  CHECK(exponents(parse_group_spec("H3")) == std::vector<int>{1, 5, 9});
  CHECK(exponents(parse_group_spec("D4")) == std::vector<int>{1, 3, 3, 5});

  CHECK(group_order(parse_group_spec("A3")) == 24);
  // 2^(n-1) n! for n = 4
  CHECK(group_order(parse_group_spec("D4")) == 8 * 24);
  CHECK(group_order(parse_group_spec("E7")) == 2ULL * 6 * 8 * 10 * 12 * 14 * 18);
  CHECK(group_order(parse_group_spec("E8")) == 696729600ULL);
  CHECK(group_order(parse_group_spec("I2:9")) == 18);
  CHECK(group_order(parse_group_spec("A1xB2")) == 16);
  CHECK_THROWS_AS(group_order(parse_group_spec("E8xE8xE8")), std::overflow_error);
}

TEST_CASE("non-positive-definite Coxeter matrices are infinite groups") {
  CoxeterDiagram affine;
  affine.label = "affine-A2";
  affine.factors = {IrreducibleType{Family::A, 3}};
  affine.coxeter_matrix = Eigen::MatrixXi::Constant(3, 3, 3);
  affine.coxeter_matrix.diagonal().setOnes();
  CHECK_THROWS_AS(build_root_system(affine), InfiniteGroupError);
}

TEST_CASE("group elements from words") {
  const auto rs = build_root_system(parse_group_spec("B3"));
  const auto g = element_from_word(rs, {0, 1, 2, 1});
  CHECK((g.matrix.transpose() * g.matrix - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  REQUIRE(g.fast_form.has_value());
  CHECK(g.fast_form->matrix().isApprox(g.matrix));

  const Matrix expected = reflection_matrix(rs.simple_roots.row(0).transpose()) *
                          reflection_matrix(rs.simple_roots.row(1).transpose()) *
                          reflection_matrix(rs.simple_roots.row(2).transpose()) *
                          reflection_matrix(rs.simple_roots.row(1).transpose());
  CHECK(g.matrix.isApprox(expected));

  // D fast forms carry an even number of sign changes
  const auto d4 = build_root_system(parse_group_spec("D4"));
  for (std::vector<int> w : {std::vector<int>{0}, {0, 1}, {0, 2, 0, 3}, {1, 0, 2, 1, 3}}) {
    const auto e = element_from_word(d4, w);
    REQUIRE(e.fast_form.has_value());
    CHECK(e.fast_form->negative_count() % 2 == 0);
  }
  const auto h3 = build_root_system(parse_group_spec("H3"));
  CHECK_FALSE(element_from_word(h3, {0, 1}).fast_form.has_value());
}

TEST_CASE("signed permutations act on coordinates") {
  const SignedPermutation g{{2, 0, 1}, {1, -1, 1}};
  const Vector x = (Vector(3) << 1, 2, 3).finished();
  const Vector gx = g.apply(x);
  CHECK(gx(2) == 1);
  CHECK(gx(0) == -2);
  CHECK(gx(1) == 3);
  CHECK((g.matrix() * x).isApprox(gx));
  CHECK(g.apply_unsigned(x).minCoeff() > 0);
  const auto back = as_signed_permutation(g.matrix());
  REQUIRE(back.has_value());
  CHECK(back->perm == g.perm);
  CHECK(back->sign == g.sign);
}

TEST_CASE("rescaled simple roots leave faces and counts unchanged") {
  for (const char* g : {"A2", "B3", "H3", "I2:7", "A1xB2"}) {
    CAPTURE(g);
    const auto rs = build_root_system(parse_group_spec(g));
    Vector factors(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) factors(i) = 0.3 + 1.7 * i;
    const auto scaled = rescale_simple_roots(rs, factors);
    for (int i = 0; i < rs.rank(); ++i) {
      CHECK(scaled.simple_roots.row(i).isApprox(factors(i) * rs.simple_roots.row(i)));
      CHECK(scaled.dual_roots.row(i).isApprox(rs.dual_roots.row(i) / factors(i)));
    }
    const Chamber<double> c(rs), cs(scaled);
    CounterRng rng(17, {});
    for (int t = 0; t < 2000; ++t) {
      Vector y(rs.ambient_dim);
      for (int i = 0; i < y.size(); ++i) y(i) = rng.normal();
      CHECK(projection_dimension_fast(y, c) == projection_dimension_fast(y, cs));
    }
    CounterRng prng(3, {});
    const Vector x = sample_chamber_point(rs, prng).coords;
    CHECK(count_projection_dims(rs, x).counts == count_projection_dims(scaled, x).counts);
  }
}
