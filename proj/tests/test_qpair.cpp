#include "doctest.h"
#include "generators.hpp"
#include "qplane/model.hpp"
#include "qplane/qpair.hpp"

using namespace qplane;
using qtest::error_of;

namespace {

QPair model_pair(double q = 0.5, std::size_t dim = 50) {
  return make_q_pair(OperatorSpec::shift(), OperatorSpec::diagonal_powers(Scalar(q)), Scalar(q), dim, 1e-12);
}

OperatorSpec dense2(double a, double b, double c, double d) {
  return OperatorSpec::dense(2, 2, {Scalar(a), Scalar(b), Scalar(c), Scalar(d)});
}

}  // namespace

TEST_CASE("shift and diagonal powers form a q-pair") {
  const QPair p = model_pair();
  CHECK(p.commutation_residual() == 0.0);
  CHECK(p.semi_infinite());
  CHECK(p.flags().s_compact);
  CHECK_FALSE(p.flags().t_compact);
  REQUIRE(p.flags().t_invertible.has_value());
  CHECK_FALSE(*p.flags().t_invertible);
  CHECK(ModelParams{}.pair().commutation_residual() == 0.0);
}

TEST_CASE("zero operators satisfy the relation") {
  const QPair p = make_q_pair(OperatorSpec::zero(4), OperatorSpec::zero(4), Scalar(0.5), 4, 1e-12);
  CHECK(p.commutation_residual() == 0.0);
  REQUIRE(p.exact_relation().has_value());
  CHECK(*p.exact_relation());
}

TEST_CASE("2x2 nilpotent pair") {
  // With S = diag(1, q) the relation forces T to map e_0 to e_1.
  CHECK(error_of([] { make_q_pair(dense2(0, 1, 0, 0), dense2(1, 0, 0, 3), Scalar(3.0), 2, 1e-12); }) ==
        ErrorCode::QRelationViolated);
  const QPair p = make_q_pair(dense2(0, 0, 1, 0), dense2(1, 0, 0, 3), Scalar(3.0), 2, 1e-12);
  CHECK(*p.exact_relation());
  const InvertibilityVerdict v = finite_dim_invertibility_consequence(p, 2);
  CHECK(v.det_t_zero);
  CHECK_FALSE(v.det_s_zero);
  CHECK(v.disjunct == "det T = 0");
  CHECK(v.consistent);
}

TEST_CASE("q must avoid 0 and 1") {
  const auto id = OperatorSpec::identity(2);
  CHECK(error_of([&] { make_q_pair(id, id, Scalar(1.0), 2); }) == ErrorCode::BadParameter);
  CHECK(error_of([&] { make_q_pair(id, id, Scalar(0.0), 2); }) == ErrorCode::BadParameter);
  CHECK(error_of([] { model_pair(0.5, 1); }) == ErrorCode::BadParameter);
}

TEST_CASE("compressions") {
  Eigen::MatrixXcd shift = compress(OperatorSpec::shift(), Truncation::square(3));
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(3, 3);
  want(1, 0) = want(2, 1) = 1.0;
  CHECK(shift == want);

  Eigen::MatrixXcd diag = compress(OperatorSpec::diagonal_powers(Scalar(0.5)), Truncation::square(3));
  Eigen::MatrixXcd dwant = Eigen::MatrixXcd::Zero(3, 3);
  dwant(0, 0) = 1.0;
  dwant(1, 1) = 0.5;
  dwant(2, 2) = 0.25;
  CHECK(diag == dwant);

  Eigen::MatrixXcd slab = compress(OperatorSpec::shift(), Truncation(4, 3));
  REQUIRE(slab.rows() == 4);
  REQUIRE(slab.cols() == 3);
  for (long i = 0; i < 4; ++i) {
    for (long j = 0; j < 3; ++j) CHECK(slab(i, j) == Complex(i == j + 1 ? 1.0 : 0.0));
  }
  CHECK(error_of([] { Truncation(2, 3); }) == ErrorCode::DimensionMismatch);
  CHECK(error_of([] { compress(OperatorSpec::zero(2), Truncation::square(3)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("compress is linear in exact scalars") {
  qtest::Rng rng(5);
  const OperatorSpec a = OperatorSpec::shift();
  const OperatorSpec b = OperatorSpec::diagonal_powers(Scalar(GaussRational(mpq_class(1, 3))));
  for (int trial = 0; trial < 10; ++trial) {
    const GaussRational alpha = rng.small_rational();
    const GaussRational beta = rng.small_rational();
    const Truncation tr(static_cast<std::size_t>(rng.uniform(3, 8)), 3);
    const ExactMatrix lhs =
        compress_exact(OperatorSpec::scaled(a, Scalar(alpha)), tr) + compress_exact(OperatorSpec::scaled(b, Scalar(beta)), tr);
    const ExactMatrix rhs = alpha * compress_exact(a, tr) + beta * compress_exact(b, tr);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("corner residual of the model vanishes at every truncation") {
  const QPair p = model_pair(0.5);
  for (std::size_t m : {2u, 5u, 50u, 120u}) CHECK(corner_commutation_residual(p, m) <= 1e-11);
  const QPair pc = make_q_pair(OperatorSpec::shift(), OperatorSpec::diagonal_powers(Scalar(Complex(0.3, 0.4))),
                               Scalar(Complex(0.3, 0.4)), 20, 1e-12);
  CHECK(corner_commutation_residual(pc, 60) <= 1e-11);
}

TEST_CASE("random finite pairs with |q^n| != 1 have det T det S = 0") {
  qtest::Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int qi = trial % 4;
    const auto c = qtest::random_exact_pair(rng, qi, static_cast<std::size_t>(rng.uniform(2, 4)));
    CHECK(*c.pair.exact_relation());
    const auto v = finite_dim_invertibility_consequence(c.pair, c.n);
    CHECK((v.det_t_zero || v.det_s_zero));
    CHECK(v.consistent);
    CHECK(exact_determinant(compress_exact(c.pair.T(), Truncation::square(c.n))) *
              exact_determinant(compress_exact(c.pair.S(), Truncation::square(c.n))) ==
          GaussRational(0));
  }
  CHECK(error_of([] { finite_dim_invertibility_consequence(model_pair(), 3); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("pair JSON round-trip") {
  qtest::Rng rng(3);
  const auto c = qtest::random_exact_pair(rng, 3, 3);
  const QPair back = QPair::from_json(c.pair.to_json());
  CHECK(back.to_json() == c.pair.to_json());
  CHECK(compress_exact(back.T(), Truncation::square(3)) == compress_exact(c.pair.T(), Truncation::square(3)));
  const QPair m = QPair::from_json(model_pair().to_json());
  CHECK(m.semi_infinite());
  CHECK(m.q() == Scalar(0.5));
  CHECK(error_of([] { QPair::from_json(nlohmann::json::parse(R"({"schema":1})")); }).has_value());
}

TEST_CASE("finite sections of the model are exact q-pairs") {
  const QPair s = model_pair().finite_section(6);
  REQUIRE(s.dimension() == std::optional<std::size_t>(6));
  CHECK(*s.exact_relation());
}
