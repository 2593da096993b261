#include <cmath>
#include <random>

#include <doctest.h>

#include "focklab/operators.hpp"
#include "focklab/symbols.hpp"

using namespace focklab;

TEST_CASE("compression of conj(f) is the adjoint of the compression of f") {
  const ModelPtr m = make_model(Weight::classical(1.0), 24);
  const OpMatrix tz = toeplitz_function(m, parse_symbol("z"));
  const OpMatrix tzbar = toeplitz_function(m, parse_symbol("conj(z)"));
  CHECK((tz.adjoint().mat() - tzbar.mat()).cwiseAbs().maxCoeff() < 1e-10);

  // and the ready-made ladder pair agrees with the quadrature route
  const OpMatrix up = preset_operator(m, "coord");
  CHECK((up.mat() - tz.mat()).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((preset_operator(m, "coord-conj").mat() - up.adjoint().mat())
            .cwiseAbs()
            .maxCoeff() < 1e-14);
}

TEST_CASE("radial and generic quadrature routes build the same compression") {
  const ModelPtr m = make_model(Weight::classical(1.0), 20);
  const Symbol radial = Symbol::radial(
      [](double r) { return std::exp(-r * r); }, "gauss-radial");
  const Symbol generic = Symbol::from_function(
      [](Complex z) { return Complex(std::exp(-std::norm(z))); }, "gauss-generic");
  const OpMatrix a = toeplitz_function(m, radial);
  const OpMatrix b = toeplitz_function(m, generic);
  CHECK((a.mat() - b.mat()).cwiseAbs().maxCoeff() < 1e-9);
  // radial compressions are diagonal
  CMatrix off = a.mat();
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("operator norm matches a dense SVD on random matrices") {
  std::mt19937 rng(9001u);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 4; ++trial) {
    CMatrix a(25, 25);
    for (int i = 0; i < 25; ++i)
      for (int j = 0; j < 25; ++j) a(i, j) = Complex(nd(rng), nd(rng));
    const Eigen::JacobiSVD<CMatrix> svd(a);
    CHECK(op_norm(a) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-9));
  }
  CHECK(op_norm(CMatrix::Zero(8, 8)) == 0.0);
}

TEST_CASE("coherent-state expectations of the identity stay at one") {
  const ModelPtr m = make_model(Weight::classical(1.0), 30);
  const OpMatrix id = identity_op(m);
  for (const Complex z : {Complex(0.0, 0.0), Complex(1.0, -1.0), Complex(2.0, 0.5)}) {
    CHECK(std::abs(berezin(id, z) - Complex(1.0)) < 1e-12);
  }
  CHECK(std::abs(kernel_correlation(id, Complex(0.5, 0.0), Complex(0.5, 0.0)) -
                 Complex(1.0)) < 1e-12);
}

TEST_CASE("kernel correlations of a contraction obey the Gaussian bound") {
  // |<T_f k_z, k_w>| <= e^{-alpha |z-w|^2 / 4} whenever |f| <= 1
  const ModelPtr m = make_model(Weight::classical(1.0), 40);
  const OpMatrix t = preset_operator(m, "unit-ball");
  for (const auto& [z, w] : std::vector<std::pair<Complex, Complex>>{
           {{0.0, 0.0}, {1.0, 0.0}},
           {{1.0, 1.0}, {-0.5, 0.5}},
           {{2.0, 0.0}, {0.0, 2.0}},
       }) {
    const double bound = std::exp(-0.25 * std::norm(z - w));
    CHECK(std::abs(kernel_correlation(t, z, w)) <= bound + 1e-10);
  }
}

TEST_CASE("ball grams are hermitian contractions") {
  const ModelPtr m = make_model(Weight::classical(1.0), 20);
  const CMatrix h = ball_gram(*m, Complex(1.0, 0.5), 1.5);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
  CHECK(es.eigenvalues().maxCoeff() < 1.0 + 1e-9);
}

TEST_CASE("atomic compressions are weighted outer products") {
  const ModelPtr m = make_model(Weight::classical(1.0), 16);
  const Complex w(0.7, -0.2);
  DiscreteMeasure mu;
  mu.atoms.push_back({w, Complex(1.0, 0.0)});
  const OpMatrix t = toeplitz_measure(m, mu);
  const CVector b = m->basis_at(w);
  const CMatrix expected =
      std::exp(-2.0 * m->weight().phi_at(w)) * (b.conjugate() * b.transpose());
  CHECK((t.mat() - expected).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(mu.total_variation() == doctest::Approx(1.0));

  // trace of the origin point mass is the kernel diagonal with its weight
  const OpMatrix pm = preset_operator(m, "point-mass");
  CHECK(pm.trace().real() == doctest::Approx(1.0 / kPi).epsilon(1e-12));
}

TEST_CASE("mollified point masses converge to the point compression") {
  const ModelPtr m = make_model(Weight::classical(1.0), 16);
  const OpMatrix pm = preset_operator(m, "point-mass");
  double prev = 1e9;
  for (double eps : {0.4, 0.2, 0.1}) {
    const OpMatrix soft = toeplitz_indicator_ball(m, Complex(0.0, 0.0), eps);
    const double gap = op_norm(soft.sub(pm));
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 0.01);
}

TEST_CASE("carleson norms see unit-disk mass") {
  std::vector<Complex> centers;
  for (int ix = -2; ix <= 2; ++ix)
    for (int iy = -2; iy <= 2; ++iy) centers.push_back(Complex(ix, iy));

  DiscreteMeasure mu;
  mu.atoms.push_back({Complex(0.2, 0.1), Complex(0.0, 2.0)});
  mu.atoms.push_back({Complex(4.0, 4.0), Complex(0.5, 0.0)});
  CHECK(carleson_norm(mu, centers) == doctest::Approx(2.0));

  // area integral of the unit-disk indicator over B(0,1) is pi
  CHECK(carleson_norm(Symbol::indicator_ball(0.0, 1.0), centers) ==
        doctest::Approx(kPi).epsilon(1e-6));
}

TEST_CASE("trace pairing closes on rank-one tests with a radial symbol") {
  const ModelPtr m = make_model(Weight::classical(1.0), 20);
  CMatrix e00 = CMatrix::Zero(20, 20);
  e00(0, 0) = 1.0;
  const OpMatrix x(m, e00);
  const Symbol g = Symbol::radial([](double r) { return std::exp(-r * r); }, "g");
  const TracePairing tp = trace_pairing(m, g, x);
  const OpMatrix tg = toeplitz_function(m, g);
  const Complex expected = tg.mat()(0, 0);
  CHECK(std::abs(tp.integral_side - expected) < 1e-6);
  CHECK(std::abs(tp.operator_side - expected) < 1e-10);
  CHECK(tp.abs_gap < 1e-6);
}

TEST_CASE("operator arithmetic guards model consistency") {
  const ModelPtr a = make_model(Weight::classical(1.0), 12);
  const ModelPtr b = make_model(Weight::classical(2.0), 12);
  CHECK_THROWS_AS(identity_op(a).add(identity_op(b)), InvalidParameter);
  CHECK_THROWS_AS(OpMatrix(a, CMatrix::Zero(5, 5)), InvalidParameter);
  CHECK_THROWS_AS(preset_operator(a, "no-such-preset"), InvalidParameter);
  const OpMatrix id = identity_op(a);
  CHECK(id.leading_block(5).rows() == 7);
  CHECK(id.compose(id).mat().isApprox(id.mat()));
  CHECK(id.scaled(Complex(0.0, 2.0)).trace() == Complex(0.0, 24.0));
}
