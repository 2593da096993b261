#include <cmath>

#include <doctest.h>

#include "focklab/weight.hpp"

using namespace focklab;

TEST_CASE("classical moments match the factorial closed form") {
  const MomentTable t(Weight::classical(1.3), 24);
  for (int k = 0; k <= 24; ++k) {
    const double log_exact =
        std::log(kPi) + std::lgamma(k + 1.0) - (k + 1) * std::log(1.3);
    CHECK(std::abs(std::expm1(t.log_moment(k) - log_exact)) < 1e-11);
    CHECK(t.rel_err(k) < 1e-11);
  }
  CHECK(t.moment(0) == doctest::Approx(kPi / 1.3).epsilon(1e-12));
  CHECK(t.ratio(5) == doctest::Approx(6.0 / 1.3).epsilon(1e-11));
}

TEST_CASE("log-perturbed weight has shifted-factorial moments") {
  // phi(r) = r^2/2 - log(3 + r^2)/2 gives m_k = pi k! (k + 4)
  const MomentTable t(Weight::fock_sobolev(1.0, 1.0, 3.0), 20);
  for (int k = 0; k <= 20; ++k) {
    const double log_exact = std::log(kPi) + std::lgamma(k + 1.0) + std::log(k + 4.0);
    CHECK(std::abs(std::expm1(t.log_moment(k) - log_exact)) < 1e-9);
  }
}

TEST_CASE("log-perturbed weight rejects a too-small shift") {
  CHECK_THROWS_AS(Weight::fock_sobolev(1.0, 1.0, 2.0), InvalidParameter);
  CHECK_THROWS_AS(Weight::fock_sobolev(1.0, 1.0, 1.0), InvalidParameter);
  CHECK_NOTHROW(Weight::fock_sobolev(1.0, 1.0, 2.0 + 1e-6));
  CHECK_THROWS_AS(Weight::classical(0.0), InvalidParameter);
  CHECK_THROWS_AS(Weight::classical(-1.0), InvalidParameter);
}

TEST_CASE("head and tail fractions are complementary and monotone") {
  const MomentTable t(Weight::classical(1.0), 12);
  for (int k : {0, 3, 9}) {
    CHECK(t.head_fraction(k, 0.0) == 0.0);
    CHECK(t.head_fraction(k, t.r_cut()) == 1.0);
    double prev = -1.0;
    for (double r : {0.5, 1.0, 2.0, 3.0, 5.0}) {
      const double head = t.head_fraction(k, r);
      CHECK(head >= prev);
      prev = head;
      CHECK(head + t.tail_fraction(k, r) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  // tiny head fractions keep relative accuracy (no 1 - tail cancellation)
  const double head0 = t.head_fraction(6, 0.4);
  const double exact = 1.0 - std::exp(-0.16) * (1 + 0.16 + 0.16 * 0.16 / 2 +
                                                std::pow(0.16, 3) / 6.0 +
                                                std::pow(0.16, 4) / 24.0 +
                                                std::pow(0.16, 5) / 120.0 +
                                                std::pow(0.16, 6) / 720.0);
  CHECK(head0 == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("incomplete moments approach the full moment") {
  const MomentTable t(Weight::classical(0.7), 10);
  CHECK(t.incomplete_moment(4, t.r_cut()) ==
        doctest::Approx(t.moment(4)).epsilon(1e-12));
  CHECK(t.incomplete_moment(4, 0.0) == 0.0);
}

TEST_CASE("curvature estimate accepts the Gaussian and flags a wiggle") {
  std::vector<double> grid;
  for (double r = 0.1; r <= 8.0; r += 0.1) grid.push_back(r);

  const PhiConditionEstimate good = check_phi_condition(Weight::classical(2.0), grid);
  CHECK(good.satisfied);
  // radial laplacian of alpha r^2 / 2 is 2 alpha everywhere
  CHECK(good.c_est == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(good.C_est == doctest::Approx(4.0).epsilon(1e-6));

  const Weight wiggly = Weight::custom_radial(
      [](double r) { return 0.5 * r * r + 2.0 * std::sin(3.0 * r); }, "wiggly");
  CHECK_FALSE(check_phi_condition(wiggly, grid).satisfied);
}

TEST_CASE("moment table rejects bad arguments") {
  const MomentTable t(Weight::classical(1.0), 6);
  CHECK_THROWS_AS(t.moment(7), InvalidParameter);
  CHECK_THROWS_AS(t.moment(-1), InvalidParameter);
  CHECK_THROWS_AS(t.tail_fraction(2, -0.5), InvalidParameter);
  CHECK_THROWS_AS(MomentTable(Weight::classical(1.0), -2), InvalidParameter);
}
