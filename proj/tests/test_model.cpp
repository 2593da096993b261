#include <cmath>

#include <doctest.h>

#include "focklab/model.hpp"
#include "focklab/operators.hpp"

using namespace focklab;

namespace {

// Quadrature Gram of the basis over the model grid.
CMatrix quadrature_gram(const FockModel& m) {
  std::vector<Complex> nodes;
  CVector s(m.grid().size());
  for (std::size_t i = 0; i < m.grid().size(); ++i) {
    const Complex z = m.grid_node(i);
    nodes.push_back(z);
    s(i) = m.grid_area_weight(i) * std::exp(-2.0 * m.weight().phi_at(z));
  }
  return basis_outer_sum(m, nodes, s);
}

}  // namespace

TEST_CASE("basis is orthonormal under the weighted area measure") {
  for (const Weight& w :
       {Weight::classical(1.0), Weight::fock_sobolev(1.0, 1.0, 3.0)}) {
    const ModelPtr m = make_model(w, 40);
    const CMatrix gram = quadrature_gram(*m);
    const double dev = (gram - CMatrix::Identity(40, 40)).cwiseAbs().maxCoeff();
    CHECK(dev < 1e-8);
  }
}

TEST_CASE("kernel is hermitian and anchored at the origin") {
  const ModelPtr m = make_model(Weight::classical(1.0), 30);
  const Complex z(1.2, -0.4), w(0.3, 0.9);
  CHECK(std::abs(m->kernel(z, w) - std::conj(m->kernel(w, z))) < 1e-12);
  // only the constant term survives at w = 0
  CHECK(std::abs(m->kernel(z, 0.0) - Complex(1.0 / kPi)) < 1e-14);
  CHECK(m->kernel_diag(0.0) == doctest::Approx(1.0 / kPi));
}

TEST_CASE("normalized and frame kernel vectors carry the right lengths") {
  const ModelPtr m = make_model(Weight::classical(1.0), 40);
  const Complex z(1.5, 0.5);
  CHECK(m->normalized_kernel_vec(z).norm() == doctest::Approx(1.0).epsilon(1e-12));
  // || k~_z ||^2 = e^{-2 phi(z)} K(z, z) -> alpha / pi deep inside the trust region
  CHECK(m->tilde_kernel_vec(z).squaredNorm() ==
        doctest::Approx(1.0 / kPi).epsilon(1e-9));
}

TEST_CASE("evaluation matches the basis expansion and blocks match rows") {
  const ModelPtr m = make_model(Weight::classical(2.0), 16);
  CVector c = CVector::Zero(16);
  c(0) = Complex(0.5, 0.0);
  c(3) = Complex(0.0, -2.0);
  c(7) = Complex(1.0, 1.0);
  const Complex z(0.8, -0.6);
  const CVector b = m->basis_at(z);
  CHECK(std::abs(m->eval(c, z) - (b.transpose() * c)(0)) < 1e-13);

  const std::vector<Complex> nodes = {z, Complex(0.0, 0.0), Complex(-1.0, 0.2)};
  const CMatrix blk = m->basis_block(nodes);
  for (int i = 0; i < 3; ++i)
    CHECK((blk.row(i).transpose() - m->basis_at(nodes[i])).norm() < 1e-13);
}

TEST_CASE("basis vectors have unit 2-norm by quadrature") {
  const ModelPtr m = make_model(Weight::classical(1.0), 12);
  for (int k : {0, 5, 11}) {
    CVector c = CVector::Zero(12);
    c(k) = 1.0;
    CHECK(m->p_norm(c, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(m->p_norm(CVector::Zero(12), -1.0), InvalidParameter);
}

TEST_CASE("trust radius marks where the truncation stays faithful") {
  const ModelPtr m = make_model(Weight::classical(1.0), 40);
  CHECK(m->trust_radius() > 1.0);
  CHECK(m->trusted(Complex(0.0, 0.0)));
  CHECK(m->trusted(std::polar(m->trust_radius() - 0.01, 1.0)));
  CHECK_FALSE(m->trusted(std::polar(m->trust_radius() + 1.0, 2.0)));
  // larger truncations extend trust
  const ModelPtr bigger = make_model(Weight::classical(1.0), 60);
  CHECK(bigger->trust_radius() > m->trust_radius());
}

TEST_CASE("submean diagnostic returns a finite positive ratio") {
  const ModelPtr m = make_model(Weight::classical(1.0), 12);
  CVector c = CVector::Zero(12);
  c(0) = 1.0;
  const SubmeanReport rep = check_submeanvalue(*m, c, Complex(0.0, 0.0), 1.0, 2.0);
  CHECK(rep.ratio > 0.0);
  CHECK(std::isfinite(rep.ratio));
  CHECK(rep.ball_mass > 0.0);
}

TEST_CASE("model rejects degenerate dimensions and mismatched coefficients") {
  CHECK_THROWS_AS(make_model(Weight::classical(1.0), 4), InvalidParameter);
  const ModelPtr m = make_model(Weight::classical(1.0), 8);
  CHECK_THROWS_AS(m->eval(CVector::Zero(5), Complex(0.0, 0.0)), ModelError);
}
