#include "doctest.h"
#include "generators.hpp"
#include "qplane/koszul.hpp"

using namespace qplane;
using qtest::error_of;

namespace {

QPair model_pair(double q = 0.5) {
  return make_q_pair(OperatorSpec::shift(), OperatorSpec::diagonal_powers(Scalar(q)), Scalar(q), 50, 1e-12);
}

Eigen::MatrixXcd col(std::initializer_list<Complex> v) {
  Eigen::MatrixXcd m(static_cast<long>(v.size()), 1);
  long i = 0;
  for (auto z : v) m(i++, 0) = z;
  return m;
}

}  // namespace

TEST_CASE("zero pair differentials") {
  const QPair z = qtest::zero_pair();
  const double lambda = 0.75;
  const auto k = build_K(z, {Axis::X, Scalar(lambda)}, Truncation::square(1));
  CHECK(k.d0() == col({0.0, -0.5 * lambda}));
  CHECK(k.d1() == col({-lambda, 0.0}).transpose());
  const auto k0 = build_K(z, {Axis::X, Scalar(0.0)}, Truncation::square(1));
  CHECK(k0.d0().isZero());
  CHECK(k0.d1().isZero());
}

TEST_CASE("axis X specializes to [-qS; T - q lambda], [T - lambda, S]") {
  const QPair p = model_pair();
  const Truncation tr = Truncation::tall(6);
  const auto k = build_K(p, {Axis::X, Scalar(1.5)}, tr);
  const Eigen::MatrixXcd t = compress(p.T(), tr);
  const Eigen::MatrixXcd s = compress(p.S(), tr);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(7, 6);
  CHECK((k.a + 0.5 * s).norm() == 0.0);
  CHECK((k.b - (t - 0.75 * id)).norm() == 0.0);
  CHECK((k.c - (t - 1.5 * id)).norm() == 0.0);
  CHECK((k.d - s).norm() == 0.0);

  const auto k0 = build_K(p, {Axis::X, Scalar(0.0)}, Truncation::square(6));
  CHECK((k0.a + 0.5 * compress(p.S(), Truncation::square(6))).norm() == 0.0);
  CHECK((k0.b - compress(p.T(), Truncation::square(6))).norm() == 0.0);
}

TEST_CASE("L and R at zero") {
  qtest::Rng rng(17);
  const auto c = qtest::random_exact_pair(rng, 1, 3);
  const auto l = build_L_exact(c.pair, GaussRational(0));
  const ExactMatrix t = compress_exact(c.pair.T(), Truncation::square(3));
  const ExactMatrix s = compress_exact(c.pair.S(), Truncation::square(3));
  CHECK(l.a == s);
  CHECK(l.b == GaussRational(-1) * c.q.inverse() * t);
  CHECK(l.c == GaussRational(-1) * t);
  CHECK(l.d == GaussRational(-1) * s);
  const auto r = build_R_exact(c.pair, GaussRational(0));
  CHECK(r.a == t);
  CHECK(r.b == GaussRational(-1) * c.q * s);
  CHECK(r.c == GaussRational(-1) * s);
  CHECK(r.d == GaussRational(-1) * t);
}

TEST_CASE("d1 d0 = 0 exactly on random finite pairs") {
  qtest::Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = qtest::random_exact_pair(rng, trial % 4, static_cast<std::size_t>(rng.uniform(1, 5)));
    for (const auto& g : c.test_points) {
      CHECK((build_K_exact(c.pair, g).d1() * build_K_exact(c.pair, g).d0()).is_zero());
      CHECK(chain_isomorphism_residual_exact(c.pair, g) == 0);
      const GaussRational v = g.value.exact();
      const auto side = g.axis == Axis::X ? build_L_exact(c.pair, v) : build_R_exact(c.pair, v);
      CHECK((side.d1() * side.d0()).is_zero());
    }
  }
}

TEST_CASE("chain residuals") {
  CHECK(chain_isomorphism_residual(qtest::zero_pair(), {Axis::X, Scalar(1.0)}, Truncation::square(1)) == 0.0);
  const QPair p = model_pair();
  CHECK(chain_isomorphism_residual(p, {Axis::X, Scalar(1.5)}, Truncation::tall(50)) <= 1e-12);
  CHECK(chain_isomorphism_residual(p, {Axis::Y, Scalar(1.0)}, Truncation::tall(50)) <= 1e-12);
  CHECK(chain_isomorphism_residual(p, {Axis::X, Scalar(Complex(0.3, -1.1))}, Truncation::tall(30)) <= 1e-12);
  for (double lam : {0.0, 0.5, 1.5, 2.0}) {
    CHECK(build_K(p, {Axis::X, Scalar(lam)}, Truncation::tall(40)).chain_residual() <= 1e-14);
    CHECK(build_L(p, Scalar(lam), Truncation::tall(40)).chain_residual() <= 1e-14);
    CHECK(build_R(p, Scalar(lam), Truncation::tall(40)).chain_residual() <= 1e-14);
  }
}

TEST_CASE("character points") {
  const auto g = CharacterPoint::parse("Y,1/3,-2");
  CHECK(g.axis == Axis::Y);
  CHECK(g.value.exact() == GaussRational(mpq_class(1, 3), mpq_class(-2)));
  CHECK(g.gamma_x().is_zero());
  CHECK(CharacterPoint::parse("x,1.5,0").axis == Axis::X);
  CHECK(CharacterPoint::from_json(g.to_json()).value == g.value);
  CHECK(error_of([] { CharacterPoint::parse("Z,1,0"); }).has_value());
  CHECK(error_of([] { CharacterPoint::parse("X,1"); }).has_value());
}

TEST_CASE("complex export round-trips through the exact reader") {
  const QPair n = qtest::nilpotent_pair();
  const auto k = build_K(n, {Axis::Y, Scalar(1.0)}, Truncation::square(2));
  const auto back = ExactKoszulComplex::from_json(k.to_json());
  const auto exact = build_K_exact(n, {Axis::Y, Scalar(1.0)});
  CHECK(back.d0() == exact.d0());
  CHECK(back.d1() == exact.d1());
  CHECK(ExactKoszulComplex::from_json(exact.to_json()).d0() == exact.d0());
}

TEST_CASE("truncation must fit a finite pair") {
  CHECK(error_of([] { build_K(qtest::nilpotent_pair(), {Axis::X, Scalar(0.0)}, Truncation::square(3)); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(error_of([] { build_K_exact(model_pair(), {Axis::X, Scalar(0.0)}); }) == ErrorCode::DimensionMismatch);
}
