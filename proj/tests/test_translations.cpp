#include <cmath>

#include <doctest.h>

#include "focklab/operators.hpp"
#include "focklab/translations.hpp"

using namespace focklab;

TEST_CASE("quadrature and closed-form translation matrices agree") {
  const ModelPtr m = make_model(Weight::classical(1.0), 24);
  for (const Complex z : {Complex(0.7, 0.3), Complex(-0.5, 1.0)}) {
    const TranslationOp u = weighted_translation(m, z);
    const CMatrix exact = weighted_translation_exact(m, z);
    CHECK(u.trusted_cols > 4);
    const double gap = (u.op.mat().leftCols(u.trusted_cols) -
                        exact.leftCols(u.trusted_cols))
                           .cwiseAbs()
                           .maxCoeff();
    CHECK(gap < 1e-10);
  }
}

TEST_CASE("the zero shift is the parity operator") {
  const ModelPtr m = make_model(Weight::classical(1.0), 16);
  const TranslationOp u = weighted_translation(m, Complex(0.0, 0.0));
  for (int j = 0; j < 16; ++j)
    for (int k = 0; k < 16; ++k) {
      const Complex want = (j == k) ? Complex(j % 2 == 0 ? 1.0 : -1.0) : Complex(0.0);
      CHECK(std::abs(u.op.mat()(k, j) - want) < 1e-10);
    }
  CHECK(u.trusted_cols == 16);
}

TEST_CASE("translations are isometric on certified columns") {
  const ModelPtr m = make_model(Weight::classical(1.0), 30);
  const TranslationOp u = weighted_translation(m, Complex(1.0, -0.5));
  CHECK(u.trusted_cols > 0);
  CHECK(static_cast<int>(u.column_deficit.size()) == 30);
  for (int j = 0; j < u.trusted_cols; ++j) {
    CHECK(u.column_deficit[j] <= TranslationOp::kDeficitTol);
    CHECK(u.op.mat().col(j).norm() <= 1.0 + 1e-9);
  }
  // U^2 = Id holds column-wise on the certified prefix
  const CMatrix dd = u.op.mat() * u.op.mat() - CMatrix::Identity(30, 30);
  for (int j = 0; j < u.trusted_cols; ++j) CHECK(dd.col(j).norm() < 1e-4);
}

TEST_CASE("translation pairings are unimodular with the symplectic phase") {
  const ModelPtr m = make_model(Weight::classical(2.0), 40);
  const Complex z(1.0, 0.5), w(0.3, 0.0);
  const ThetaValue tv = theta_pairing(m, z, w);
  CHECK(tv.modulus_gap < 1e-8);
  CHECK(tv.residual < 1e-7);
  const Complex want = std::polar(1.0, 2.0 * std::imag(z * std::conj(w)));
  CHECK(std::abs(tv.value - want) < 1e-8);
}

TEST_CASE("non-Gaussian weights refuse weighted translations") {
  const ModelPtr fs = make_model(Weight::fock_sobolev(1.0, 1.0, 3.0), 16);
  CHECK_THROWS_AS(weighted_translation(fs, Complex(0.5, 0.0)), ModelError);
  CHECK_THROWS_AS(weighted_translation_exact(fs, Complex(0.5, 0.0)), ModelError);
}

TEST_CASE("probe family spans the two lowest modes deterministically") {
  const ModelPtr m = make_model(Weight::classical(1.0), 20);
  const std::vector<CVector> probes = default_probes(m);
  CHECK(probes.size() == 10);
  for (const CVector& f : probes) {
    CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.tail(18).norm() < 1e-15);  // support on e_0, e_1 only
  }
  const std::vector<CVector> again = default_probes(m);
  for (std::size_t i = 0; i < probes.size(); ++i)
    CHECK((probes[i] - again[i]).norm() == 0.0);
}

TEST_CASE("shell estimator sees the identity as norm-preserving") {
  const ModelPtr m = make_model(Weight::classical(1.0), 40);
  const TranslationEssNorm ess =
      translation_essnorm(identity_op(m), 1.5, 4, default_probes(m));
  CHECK(ess.shifts.size() == 4);
  CHECK(ess.per_shift.size() == 4);
  CHECK(ess.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("berezin decay and correlation decay travel together") {
  const ModelPtr m = make_model(Weight::classical(1.0), 40);
  const BerezinEquivalence eq =
      berezin_equiv_check(preset_operator(m, "unit-ball"), 1.0, {2.0, 3.0, 4.0});
  for (std::size_t i = 1; i < eq.radii.size(); ++i) {
    CHECK(eq.berezin_sup[i] < eq.berezin_sup[i - 1]);
    CHECK(eq.correlation_sup[i] < eq.correlation_sup[i - 1]);
  }
  CHECK(eq.berezin_sup.back() < 1e-3);
  CHECK(eq.correlation_sup.back() < 1e-3);
}
