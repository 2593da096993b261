#include <cmath>

#include <doctest.h>

#include "focklab/localization.hpp"
#include "focklab/operators.hpp"

using namespace focklab;

TEST_CASE("identity decay profile follows the coherent-state overlap law") {
  // |<k_z, k_{z + r e^{it}}>| = e^{-alpha r^2 / 2} exactly, for every z
  const ModelPtr m = make_model(Weight::classical(1.0), 40);
  const OpMatrix id = identity_op(m);
  const std::vector<double> radii = {0.5, 1.0, 2.0};
  const DecayCurve curve = decay_profile(id, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(curve.trusted[i]);
    CHECK(curve.n_samples[i] > 0);
    CHECK(curve.values[i] ==
          doctest::Approx(std::exp(-0.5 * radii[i] * radii[i])).epsilon(1e-7));
  }
}

TEST_CASE("decay profile marks unreachable separations") {
  const ModelPtr m = make_model(Weight::classical(1.0), 20);
  const DecayCurve curve = decay_profile(identity_op(m), {50.0});
  CHECK_FALSE(curve.trusted[0]);
  CHECK(curve.n_samples[0] == 0);
}

TEST_CASE("compactness indicator separates the disk compression from the identity") {
  const ModelPtr m = make_model(Weight::classical(1.0), 40);
  const OpMatrix chi = preset_operator(m, "unit-ball");
  const OpMatrix id = identity_op(m);
  const std::vector<double> shells = {1.0, 2.0, 3.0, 4.0};
  const DecayCurve c_chi = compactness_indicator(chi, 1.0, shells);
  const DecayCurve c_id = compactness_indicator(id, 1.0, shells);
  for (std::size_t i = 1; i < shells.size(); ++i) {
    CHECK(c_chi.values[i] < c_chi.values[i - 1]);  // vanishing correlations
    CHECK(c_id.values[i] == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(c_chi.values.back() < 1e-3);
  CHECK_THROWS_AS(compactness_indicator(id, -1.0, shells), InvalidParameter);
}

TEST_CASE("tail norms decay for localized symbols and persist for the identity") {
  const ModelPtr m = make_model(Weight::classical(1.0), 40);
  const OpMatrix chi = preset_operator(m, "unit-ball");
  double prev = 2.0;
  for (double r : {2.0, 4.0, 6.0}) {
    const double v = tail_norm(chi, r);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 1e-4);
  CHECK(tail_norm(identity_op(m), 0.5) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(tail_norm(chi, -1.0), InvalidParameter);
}

TEST_CASE("local norms vanish away from the symbol support") {
  const ModelPtr m = make_model(Weight::classical(1.0), 40);
  const OpMatrix chi = preset_operator(m, "unit-ball");
  const double near = local_norm(chi, Complex(0.0, 0.0), 1.0);
  const double far = local_norm(chi, Complex(5.0, 0.0), 1.0);
  CHECK(near > 0.1);
  CHECK(far < 1e-2);
  CHECK(far < near);
  CHECK_THROWS_AS(local_norm(chi, Complex(0.0, 0.0), 0.0), InvalidParameter);
}

TEST_CASE("essential-norm curves co-decay exactly for compact symbols") {
  // both estimators below 1e-2 by shell 4 for the unit-disk compression
  const ModelPtr m = make_model(Weight::classical(1.0), 60);
  const OpMatrix chi = preset_operator(m, "unit-ball");
  const EssNormReport rep = toeplitz_essnorm_check(chi, 1.0, {2.0, 3.0, 4.0});
  CHECK(rep.tail_values.back() < 1e-2);
  CHECK(rep.far_field_values.back() < 1e-2);
  for (std::size_t i = 1; i < rep.radii.size(); ++i) {
    CHECK(rep.tail_values[i] <= rep.tail_values[i - 1]);
    CHECK(rep.far_field_values[i] <= rep.far_field_values[i - 1]);
  }

  const EssNormReport flat = toeplitz_essnorm_check(identity_op(m), 1.0, {2.0, 3.0});
  CHECK(flat.far_field_values.back() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(toeplitz_essnorm_check(chi, -2.0, {1.0}), InvalidParameter);
}
