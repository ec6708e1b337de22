#include "doctest.h"
#include "generators.hpp"
#include "qplane/oracle.hpp"

using namespace qplane;
using qtest::error_of;

TEST_CASE("exact cohomology examples") {
  const auto z = exact_cohomology(qtest::zero_pair(), {Axis::X, Scalar(0.0)});
  CHECK(z.h0 == 1);
  CHECK(z.h1 == 2);
  CHECK(z.h2 == 1);
  CHECK(z.chain_ok);

  const QPair n = qtest::nilpotent_pair();
  const auto one = exact_cohomology(n, {Axis::Y, Scalar(1.0)});
  CHECK(one.h0 == 0);
  CHECK(one.h1 == 1);
  CHECK(one.h2 == 1);
  const auto q = exact_cohomology(n, {Axis::Y, Scalar(3.0)});
  CHECK(q.h2 == 0);
  CHECK(q.h0 + q.h2 == q.h1);
  // S is invertible, so the complex is exact off the axis-Y points 1 and q.
  CHECK(exact_cohomology(n, {Axis::X, Scalar(0.0)}).exact());
  CHECK(exact_cohomology(n, {Axis::X, Scalar(0.7)}).exact());
}

TEST_CASE("oracle limits") {
  CHECK(error_of([] { exact_cohomology(qtest::nilpotent_pair(), {Axis::X, Scalar(0.0)}, 1); }) ==
        ErrorCode::CapExceeded);
  const QPair model =
      make_q_pair(OperatorSpec::shift(), OperatorSpec::diagonal_powers(Scalar(0.5)), Scalar(0.5), 20, 1e-12);
  CHECK(error_of([&] { exact_cohomology(model, {Axis::X, Scalar(0.0)}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("normal-ordered algebra") {
  const GaussRational q(mpq_class(1, 2));
  const TensorTerm lx = TensorTerm::l_x(), ly = TensorTerm::l_y();
  // L_y L_x = q L_x L_y
  CHECK(ly.times(lx, q).plus(lx.times(ly, q).scaled(-q)).is_zero());
  CHECK(TensorTerm::r_y().times(TensorTerm::r_x(), q).plus(TensorTerm::r_x().times(TensorTerm::r_y(), q).scaled(-q.inverse())).is_zero());
  CHECK(lx.times(TensorTerm::r_y(), q).plus(TensorTerm::r_y().times(lx, q).scaled(-1)).is_zero());
  for (const auto& qq : {qtest::q_choice(0), qtest::q_choice(2), qtest::q_choice(3)}) {
    CHECK(SymbolicResolution(qq).composite().is_zero());
  }
}

TEST_CASE("resolution specializes to the Koszul complex") {
  CHECK(tor_consistency(qtest::zero_pair(), {Axis::X, Scalar(1.0)}));
  CHECK(tor_consistency(qtest::nilpotent_pair(), {Axis::Y, Scalar(1.0)}));
  const QPair model =
      make_q_pair(OperatorSpec::shift(), OperatorSpec::diagonal_powers(Scalar(0.5)), Scalar(0.5), 20, 1e-12);
  const QPair corner = model.finite_section(4);
  const auto rep = tor_consistency_report(corner, {Axis::X, Scalar(1.0)});
  CHECK(rep.symbolic_chain_ok);
  CHECK(rep.specialized_chain_ok);
  CHECK(rep.matches_koszul);
  const auto rc = specialize_resolution(qtest::zero_pair(), {Axis::X, Scalar(1.0)});
  ExactMatrix d0(2, 1);
  d0(1, 0) = GaussRational(mpq_class(-1, 2));
  CHECK(rc.d0 == d0);
}

TEST_CASE("oracle property sweep") {
  qtest::Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = qtest::random_exact_pair(rng, trial % 4, static_cast<std::size_t>(rng.uniform(1, 5)));
    for (const auto& g : c.test_points) {
      const auto h = exact_cohomology(c.pair, g);
      CHECK(h.chain_ok);
      CHECK(static_cast<long>(h.h0) - static_cast<long>(h.h1) + static_cast<long>(h.h2) == 0);
      CHECK(tor_consistency(c.pair, g));
    }
    // The joint spectrum lies in the candidate set.
    const auto sp = exact_spectral_points(c.pair, c.test_points);
    for (const auto& g : sp) {
      bool found = false;
      for (const auto& cand : c.candidates) found = found || (cand.value == g.value && (cand.axis == g.axis || g.value.is_zero()));
      CHECK(found);
    }
    CHECK_FALSE(sp.empty());
  }
}

TEST_CASE("exported complex JSON feeds the oracle") {
  const auto cx = build_K_exact(qtest::nilpotent_pair(), {Axis::Y, Scalar(1.0)});
  const auto h = exact_cohomology(ExactKoszulComplex::from_json(cx.to_json()));
  CHECK(h.to_json()["h1"] == 1);
  CHECK(h.to_json()["rank0"] == 2);
  CHECK(h.to_json()["rank1"] == 1);
}
