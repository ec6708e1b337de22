#include "doctest.h"
#include "generators.hpp"
#include "qplane/model.hpp"

#include <cmath>

using namespace qplane;
using qtest::error_of;

namespace {

ModelParams params(std::size_t N = 200, double q = 0.5) {
  ModelParams p;
  p.q = Scalar(q);
  p.N = N;
  return p;
}

}  // namespace

TEST_CASE("reference membership") {
  const ModelParams p = params();
  CHECK(reference_membership(p, {Axis::X, Scalar(1.5)}) == ReferenceClass::Spectral);
  CHECK(reference_membership(p, {Axis::Y, Scalar(1.0)}) == ReferenceClass::Spectral);
  CHECK(reference_membership(p, {Axis::Y, Scalar(0.5)}) == ReferenceClass::Resolvent);
  CHECK(reference_membership(p, {Axis::Y, Scalar(2.0)}) == ReferenceClass::Resolvent);
  CHECK(reference_membership(p, {Axis::X, Scalar(0.0)}) == ReferenceClass::Resolvent);
  CHECK(reference_membership(p, {Axis::X, Scalar(0.5)}) == ReferenceClass::UnknownBand);
  CHECK(reference_membership(p, {Axis::X, Scalar(2.5)}) == ReferenceClass::Resolvent);
  CHECK(reference_membership(p, {Axis::X, Scalar(Complex(0.0, 1.0))}) == ReferenceClass::Essential);
  CHECK(reference_membership(p, {Axis::X, Scalar(-2.0)}) == ReferenceClass::Essential);
  // 0.6^2 + 0.8^2 = 1 exactly in rationals but not in doubles.
  const Scalar unit(GaussRational(mpq_class(3, 5), mpq_class(4, 5)));
  CHECK(reference_membership(p, {Axis::X, unit}) == ReferenceClass::Essential);
  CHECK(reference_membership(p, {Axis::X, Scalar(1.01)}, 0.02) == ReferenceClass::Essential);
  CHECK(error_of([] { params(200, 2.0).validate(); }) == ErrorCode::BadParameter);
  CHECK(error_of([] { params(1).validate(); }) == ErrorCode::BadParameter);
  const auto ref = reference_spectra(p);
  CHECK(ref.annulus_outer == 2.0);
  CHECK(ref.sigma_S.contains(0.125));
  CHECK_FALSE(ref.sigma_S.contains(0.3));
}

TEST_CASE("annulus witness") {
  const auto w2 = witness_h1_annulus(params(), Scalar(2.0));
  CHECK(w2.zeta_norm_closed == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(std::abs(w2.zeta_norm_partial - w2.zeta_norm_closed) <= 1e-12);
  for (double a : w2.alpha_abs) CHECK(a == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(w2.alpha_liminf == doctest::Approx(0.5));
  CHECK(w2.divergence_certificate);
  CHECK(w2.lift_norm_full > w2.lift_norm_half);

  const auto w = witness_h1_annulus(params(), Scalar(1.5));
  CHECK(w.interior_residual <= 1e-10);
  CHECK(w.corner_term == doctest::Approx(std::pow(1.5, -201.0)));
  CHECK(w.residual <= 2.0 * w.corner_term + 1e-14);
  CHECK(w.eta.norm() == 1.0);

  CHECK(error_of([] { witness_h1_annulus(params(), Scalar(0.9)); }) == ErrorCode::OutOfAnnulus);
  CHECK(error_of([] { witness_h1_annulus(params(), Scalar(2.5)); }) == ErrorCode::OutOfAnnulus);
  CHECK_NOTHROW(witness_h1_annulus(params(), Scalar(Complex(0.0, -2.0))));
}

TEST_CASE("telescoping holds at every truncation") {
  qtest::Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const double r = rng.real(1.05, 2.0);
    const Complex lambda = std::polar(r, rng.real(0.0, 6.28));
    const std::size_t N = static_cast<std::size_t>(rng.uniform(5, 120));
    const auto w = witness_h1_annulus(params(N), Scalar(lambda));
    CHECK(w.interior_residual <= 1e-12);
    CHECK(w.residual <= 2.0 * std::pow(r, -static_cast<double>(N) - 1.0) + 1e-14);
  }
}

TEST_CASE("epsilon_lambda") {
  const Complex q = 0.5;
  CHECK(epsilon_lambda(TailFunctionalInput::finite({}, 0.4, q), 50).total() == 0.0);
  CHECK(epsilon_lambda(TailFunctionalInput::finite({0.0, 0.0}, 0.4, q), 50).total() == 0.0);

  std::vector<Complex> spike(6, 0.0);
  spike[5] = 1.0;
  const Complex lambda(0.3, 0.5);
  const double w2 = std::norm(q * lambda);
  double want = 0.0;
  for (int j = 0; j <= 4; ++j) want += std::pow(w2, j);
  CHECK(epsilon_lambda(TailFunctionalInput::finite(spike, lambda, q), 50).total() == doctest::Approx(want).epsilon(1e-14));
  CHECK(epsilon_lambda(TailFunctionalInput::finite(spike, lambda, q), 3).remainder > 0.0);

  for (double z : {0.1, 0.3, 0.45}) {
    for (Complex l : {Complex(0.2), Complex(0.4), Complex(0.0, 0.75)}) {
      const auto in = TailFunctionalInput::geometric(z, l, q);
      CHECK(std::abs(in.orthogonality()) <= 1e-14);
      const auto e = epsilon_lambda(in, 200);
      CHECK(std::abs(e.total() - epsilon_geometric_closed_form(z, l, q)) <= 1e-10);
      CHECK(e.remainder <= e.tail_bound + 1e-15);
    }
  }
}

TEST_CASE("M_lambda membership") {
  const Complex q = 0.5, lambda = 0.4;
  CHECK(m_lambda_membership(TailFunctionalInput::geometric(0.3, lambda, q), 200).verdict == Membership::Member);

  // zeta_{lambda q} itself, coefficients (q lambda)^n conjugated.
  std::vector<Complex> zeta;
  for (int n = 0; n < 40; ++n) zeta.push_back(std::conj(std::pow(q * lambda, n)));
  const auto v = m_lambda_membership(TailFunctionalInput::finite(zeta, lambda, q), 100);
  CHECK(v.verdict == Membership::NonMember);
  CHECK(v.orthogonality_residual > 1.0);

  std::vector<Complex> harmonic;
  for (int n = 0; n < 2000; ++n) harmonic.push_back(1.0 / (n + 1.0));
  auto h = TailFunctionalInput::finite(harmonic, lambda, q);
  h.make_orthogonal();
  CHECK(std::abs(h.orthogonality()) <= 1e-12);
  CHECK(m_lambda_membership(h, 512).verdict == Membership::Member);

  CHECK(error_of([&] { m_lambda_membership(TailFunctionalInput::geometric(0.3, 0.4, q), 0); }) ==
        ErrorCode::BadParameter);
  auto out = TailFunctionalInput::finite({1.0}, 1.5, q);
  CHECK(error_of([&] { m_lambda_membership(out, 10); }) == ErrorCode::BadParameter);
}

TEST_CASE("H1 reconstruction") {
  const Complex q = 0.5, lambda = 0.4;
  const auto zero = h1_reconstruction_check(TailFunctionalInput::finite({}, lambda, q), 20);
  CHECK(zero.residual == 0.0);
  CHECK(zero.alpha.isZero());

  CHECK(h1_reconstruction_check(TailFunctionalInput::geometric(0.3, lambda, q), 200).residual <= 1e-10);

  auto spike = TailFunctionalInput::finite({0.0, 0.0, 0.0, 1.0}, lambda, q);
  spike.make_orthogonal();
  const auto r = h1_reconstruction_check(spike, 30);
  CHECK(r.orthogonality_residual <= 1e-15);
  CHECK(r.residual <= 1e-12);
  CHECK(r.alpha.tail(20).isZero());
}

TEST_CASE("right spectrum solver") {
  const ModelParams p = params();
  Eigen::VectorXcd zeta = Eigen::VectorXcd::Zero(6), eta = Eigen::VectorXcd::Zero(6);
  zeta(1) = 1.0;
  const auto r1 = right_spectrum_solver(p, Scalar(0.5), zeta, eta);
  CHECK(r1.k == 1);
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(6);
  e0(0) = 1.0;
  CHECK(r1.theta == e0);
  CHECK(r1.residual == 0.0);
  CHECK(r1.bound_ok);

  zeta(1) = 0.0;
  CHECK(right_spectrum_solver(p, Scalar(0.5), zeta, eta).theta.isZero());

  // Kernel of r1 at mu = q^2: (q^2 - q^n) zeta_n = eta_{n-1}, so zeta_0 = eta_1 = 0 and zeta_2 is free.
  qtest::Rng rng(31);
  const Complex q = 0.5, mu = 0.25;
  for (int trial = 0; trial < 10; ++trial) {
    const long M = rng.uniform(4, 30);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(M), z = Eigen::VectorXcd::Zero(M);
    for (long n = 0; n + 1 < M; ++n) e(n) = n == 1 ? Complex(0.0) : Complex(rng.real(-1, 1), rng.real(-1, 1));
    z(2) = Complex(rng.real(-1, 1), rng.real(-1, 1));
    Complex qn = q;
    for (long n = 1; n < M; ++n) {
      if (n != 2) z(n) = e(n - 1) / (mu - qn);
      qn *= q;
    }
    const auto r = right_spectrum_solver(p, Scalar(mu), z, e);
    CHECK(r.k == 2);
    CHECK(r.kernel_residual <= 1e-12);
    CHECK(r.residual <= 1e-12);
    CHECK(r.bound_ok);
  }

  CHECK(error_of([&] { right_spectrum_solver(p, Scalar(0.3), zeta, eta); }) == ErrorCode::BadParameter);
  CHECK(error_of([&] { right_spectrum_solver(p, Scalar(1.0), zeta, eta); }) == ErrorCode::BadParameter);
  CHECK(positive_power_of(Scalar(0.5), Scalar(0.125)) == std::optional<std::size_t>(3));
  CHECK_FALSE(positive_power_of(Scalar(0.5), Scalar(0.0)).has_value());
}

TEST_CASE("verify_model passes") {
  for (double q : {0.5, -0.4}) {
    const auto rep = verify_model(params(60, q));
    INFO(rep.dump(1));
    CHECK(rep["pass"].get<bool>());
    CHECK(rep["claims"].size() >= 15);
  }
  ModelParams pc = params(60);
  pc.q = Scalar(Complex(0.3, 0.4));
  CHECK(verify_model(pc)["pass"].get<bool>());
}
