#include <cmath>
#include <random>

#include <doctest.h>

#include "focklab/frames.hpp"
#include "focklab/operators.hpp"

using namespace focklab;

TEST_CASE("lattice cover tiles once and dilates four-fold") {
  const LatticeCover cover = make_cover(0.5, 3.0);
  std::mt19937 rng(24601u);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const Complex z(unif(rng), unif(rng));
    CHECK(cover.cell_count(z) == 1);
    CHECK(cover.dilate_count(z) == 4);
  }
  // half-open cells keep seam points unambiguous
  CHECK(cover.cell_count(Complex(0.5, 0.5)) == 1);
  CHECK(cover.cell_count(Complex(-0.5, 1.5)) == 1);
  CHECK(cover.dilate_diameter() == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK_THROWS_AS(make_cover(0.0, 3.0), InvalidParameter);
  CHECK_THROWS_AS(make_cover(0.5, -1.0), InvalidParameter);
}

TEST_CASE("preframe keeps trusted lattice points and reports the rest") {
  const ModelPtr m = make_model(Weight::classical(1.0), 30);
  const PreFrame inner = preframe(m, Complex(0.1, 0.2), 2);
  CHECK(inner.points.size() + inner.omitted.size() == 9);
  CHECK(inner.mat.cols() == static_cast<int>(inner.points.size()));
  CHECK(inner.mat.rows() == 30);
  // frame columns carry the tilde normalization
  for (int j = 0; j < inner.mat.cols(); ++j)
    CHECK(inner.mat.col(j).squaredNorm() == doctest::Approx(1.0 / kPi).epsilon(1e-6));

  // a wide window on a small model must shed the far corners
  const PreFrame wide = preframe(m, Complex(0.0, 0.0), 4);
  CHECK(wide.points.size() + wide.omitted.size() == 49);
  CHECK_FALSE(wide.omitted.empty());

  CHECK_THROWS_AS(preframe(m, Complex(0.0, 0.0), 0), InvalidParameter);

  // a base far outside the trust region sheds its only point
  const PreFrame far = preframe(m, Complex(40.0, 0.0), 1);
  CHECK(far.points.empty());
  CHECK(far.omitted.size() == 1);
  CHECK(far.mat.cols() == 0);
}

TEST_CASE("frame norms are base-point invariant") {
  // lattice gram matrices at different bases are diagonal-phase conjugates
  const ModelPtr m = make_model(Weight::classical(1.0), 40);
  const std::vector<Complex> bases = {Complex(0.0, 0.0), Complex(0.3, 0.1),
                                      Complex(0.7, 0.9), Complex(0.5, 0.5)};
  const FrameScan scan = frame_norm_scan(m, 2, bases);
  CHECK(scan.norms.size() == bases.size());
  CHECK(scan.spread() < 1e-9);
  CHECK(scan.min_norm > 0.0);
}

TEST_CASE("identity quadrature converges under cell halving") {
  const ModelPtr m = make_model(Weight::classical(1.0), 16);
  const double coarse = leading_block_deviation(identity_quadrature(m, 0.7, 8.0), 10);
  const double fine = leading_block_deviation(identity_quadrature(m, 0.35, 8.0), 10);
  CHECK(coarse > 1e-9);
  CHECK(fine <= 0.5 * coarse);
  CHECK(leading_block_deviation(CMatrix::Identity(12, 12), 10) == 0.0);
  CHECK_THROWS_AS(identity_quadrature(m, 0.0, 4.0), InvalidParameter);
  CHECK_THROWS_AS(leading_block_deviation(CMatrix::Identity(4, 4), 10), InvalidParameter);
}

TEST_CASE("off-diagonal lattice blocks decay with separation") {
  const ModelPtr m = make_model(Weight::classical(1.0), 40);
  const OpMatrix id = identity_op(m);
  double prev = 1e9;
  for (double sep : {1.0, 2.0, 3.0}) {
    const double v = offdiag_block_norm(id, sep, 3, Complex(0.0, 0.0), Complex(0.5, 0.5));
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 0.1);
  CHECK_THROWS_AS(offdiag_block_norm(id, -1.0, 3, 0.0, 0.0), InvalidParameter);
}

TEST_CASE("block lower bounds notice mass between nearby frames") {
  const ModelPtr m = make_model(Weight::classical(1.0), 40);
  const OpMatrix id = identity_op(m);
  const double nearby = block_lower_bound(id, Complex(0.0, 0.0), Complex(1.0, 0.0), 2);
  const double far = block_lower_bound(id, Complex(0.0, 0.0), Complex(3.0, 0.0), 2);
  CHECK(nearby > far);
  CHECK(far > 0.0);
}
