#include "chambers/arrangement.hpp"
#include "chambers/random.hpp"
#include "chambers/volumes.hpp"

#include <doctest.h>

using namespace chambers;

namespace {

Chamber<double> chamber_of(const std::string& g) { return Chamber<double>(build_root_system(parse_group_spec(g))); }

}  // namespace

TEST_CASE("exact dihedral volumes") {
  const auto quad = exact_volumes_rank2(2);
  CHECK(quad.fractions[0] == BigRational(1, 4));
  CHECK(quad.fractions[1] == BigRational(1, 2));
  CHECK(quad.fractions[2] == BigRational(1, 4));
  for (int m = 2; m <= 12; ++m) {
    CAPTURE(m);
    const auto v = exact_volumes_rank2(m);
    CHECK(v.fractions[0] == BigRational(m - 1, 2 * m));
    CHECK(v.fractions[2] == BigRational(1, 2 * m));
    for (int k = 0; k < 3; ++k) CHECK(v.from_angles[k] == doctest::Approx(v.fractions[k].convert_to<double>()));
  }
  CHECK_THROWS_AS(exact_volumes_rank2(1), PreconditionError);
}

TEST_CASE("Monte Carlo volumes match the characteristic polynomial") {
  for (const char* g : {"A1xA1", "B2", "A3", "H3"}) {
    CAPTURE(g);
    const auto d = parse_group_spec(g);
    const auto est = estimate_volumes(chamber_of(g), 40000, 9);
    double total = 0;
    for (double v : est.nu_hat) total += v;
    CHECK(total == doctest::Approx(1.0));
    const auto cmp = compare_volumes(est, char_poly_exponents(d), BigInt(group_order(d)));
    CHECK_FALSE(cmp.any_flagged());
  }
}

TEST_CASE("a perturbed polynomial is flagged") {
  const auto d = parse_group_spec("B2");
  const auto est = estimate_volumes(chamber_of("B2"), 100000, 1);
  CHECK(compare_volumes(est, IntegerPolynomial{4, -3, 1}, BigInt(8)).any_flagged());
}

TEST_CASE("standard errors shrink like 1/sqrt(N)") {
  const auto c = chamber_of("B2");
  const auto small = estimate_volumes(c, 10000, 3);
  const auto large = estimate_volumes(c, 20000, 3);
  for (int k = 0; k < 3; ++k) CHECK(small.std_error[k] / large.std_error[k] == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
}

TEST_CASE("estimates are reproducible across thread counts") {
  const auto c = chamber_of("A3");
  const auto one = estimate_volumes(c, 30000, 4, 1);
  const auto three = estimate_volumes(c, 30000, 4, 3);
  CHECK(one.counts == three.counts);
}

TEST_CASE("orthogonal transforms of the sample distribution leave volumes unchanged") {
  const auto c = chamber_of("B3");
  CounterRng rng(2, {});
  Matrix a(3, 3);
  for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = rng.normal();
  const Matrix q = Eigen::HouseholderQR<Matrix>(a).householderQ();
  const auto est = estimate_volumes(c, 40000, 8, 1, q);
  const auto d = parse_group_spec("B3");
  CHECK_FALSE(compare_volumes(est, char_poly_exponents(d), BigInt(group_order(d))).any_flagged());
}

TEST_CASE("z scores with a degenerate estimate") {
  VolumeEstimate est;
  est.nu_hat = {0.0, 1.0};
  est.std_error = {0.0, 0.0};
  est.counts = {0, 100};
  est.samples = 100;
  // A1: chi = t - 1, targets (1/2, 1/2)
  const auto cmp = compare_volumes(est, IntegerPolynomial{-1, 1}, BigInt(2));
  CHECK(cmp.z[0] == doctest::Approx(-10.0));
  CHECK(cmp.flagged[0]);
}
