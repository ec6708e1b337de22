#include "qplane/oracle.hpp"

#include "qplane/error.hpp"

namespace qplane {

using nlohmann::json;

json ExactCohomology::to_json() const {
  return json{{"n", n},         {"h0", h0},         {"h1", h1},           {"h2", h2},
              {"rank0", rank0}, {"rank1", rank1}, {"chain_ok", chain_ok}};
}

namespace {

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw Error(ErrorCode::CapExceeded,
                "oracle dimension " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
}

std::size_t finite_dim(const QPair& pair) {
  if (!pair.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "the exact oracle needs a finite pair; take a finite section");
  }
  return *pair.dimension();
}

ExactMatrix matrix_power(const ExactMatrix& m, int k) {
  ExactMatrix r = ExactMatrix::identity(m.rows());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

}  // namespace

ExactCohomology exact_cohomology(const ExactKoszulComplex& cx, std::size_t cap) {
  const std::size_t n = cx.n();
  check_cap(n, cap);
  ExactCohomology h;
  h.n = n;
  const ExactMatrix d0 = cx.d0();
  const ExactMatrix d1 = cx.d1();
  h.chain_ok = (d1 * d0).is_zero();
  h.rank0 = exact_rank(d0);
  h.rank1 = exact_rank(d1);
  h.h0 = n - h.rank0;
  h.h2 = n - h.rank1;
  if (h.rank0 + h.rank1 > 2 * n) throw Error(ErrorCode::NumericalBreakdown, "inconsistent exact ranks");
  h.h1 = 2 * n - h.rank0 - h.rank1;
  return h;
}

ExactCohomology exact_cohomology(const QPair& pair, const CharacterPoint& gamma, std::size_t cap) {
  check_cap(finite_dim(pair), cap);
  return exact_cohomology(build_K_exact(pair, gamma), cap);
}

TensorTerm TensorTerm::constant(const GaussRational& c) {
  TensorTerm t;
  t.add({0, 0, 0, 0}, c);
  return t;
}

TensorTerm TensorTerm::generator(int index, const GaussRational& c) {
  TensorTerm t;
  Monomial m{0, 0, 0, 0};
  m.at(static_cast<std::size_t>(index)) = 1;
  t.add(m, c);
  return t;
}

void TensorTerm::add(const Monomial& m, const GaussRational& c) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TensorTerm TensorTerm::plus(const TensorTerm& o) const {
  TensorTerm r = *this;
  for (const auto& [m, c] : o.terms_) r.add(m, c);
  return r;
}

TensorTerm TensorTerm::scaled(const GaussRational& c) const {
  TensorTerm r;
  for (const auto& [m, v] : terms_) r.add(m, v * c);
  return r;
}

TensorTerm TensorTerm::times(const TensorTerm& o, const GaussRational& q) const {
  TensorTerm r;
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      // L_y^{a1} L_x^{b0} = q^{a1 b0} L_x^{b0} L_y^{a1}; R_y^{a3} R_x^{b2} = q^{-a3 b2} R_x^{b2} R_y^{a3}.
      const long swaps = static_cast<long>(a[1]) * b[0] - static_cast<long>(a[3]) * b[2];
      Monomial m{a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
      r.add(m, ca * cb * q.pow(swaps));
    }
  }
  return r;
}

ExactMatrix TensorTerm::specialize(const ExactMatrix& t, const ExactMatrix& s, const GaussRational& gx,
                                   const GaussRational& gy) const {
  ExactMatrix out(t.rows(), t.cols());
  for (const auto& [m, c] : terms_) {
    const GaussRational scalar = c * gx.pow(m[2]) * gy.pow(m[3]);
    if (scalar.is_zero()) continue;
    out = out + scalar * (matrix_power(t, m[0]) * matrix_power(s, m[1]));
  }
  return out;
}

SymbolicResolution::SymbolicResolution(const GaussRational& q_) : q(q_) {
  const GaussRational minus_q = -q;
  const GaussRational minus_one(-1);
  d0[0] = TensorTerm::r_y().plus(TensorTerm::l_y().scaled(minus_q));
  d0[1] = TensorTerm::l_x().plus(TensorTerm::r_x().scaled(minus_q));
  d1[0] = TensorTerm::l_x().plus(TensorTerm::r_x().scaled(minus_one));
  d1[1] = TensorTerm::l_y().plus(TensorTerm::r_y().scaled(minus_one));
}

TensorTerm SymbolicResolution::composite() const {
  return d1[0].times(d0[0], q).plus(d1[1].times(d0[1], q));
}

ResolutionComplex specialize_resolution(const QPair& pair, const CharacterPoint& gamma, std::size_t cap) {
  const std::size_t n = finite_dim(pair);
  check_cap(n, cap);
  const Truncation tr = Truncation::square(n);
  const ExactMatrix t = compress_exact(pair.T(), tr);
  const ExactMatrix s = compress_exact(pair.S(), tr);
  const GaussRational gx = gamma.gamma_x().exact();
  const GaussRational gy = gamma.gamma_y().exact();
  SymbolicResolution res(pair.q().exact());
  ResolutionComplex rc;
  rc.d0 = ExactMatrix::vstack(res.d0[0].specialize(t, s, gx, gy), res.d0[1].specialize(t, s, gx, gy));
  rc.d1 = ExactMatrix::hstack(res.d1[0].specialize(t, s, gx, gy), res.d1[1].specialize(t, s, gx, gy));
  rc.chain_ok = (rc.d1 * rc.d0).is_zero();
  return rc;
}

json TorConsistencyReport::to_json() const {
  return json{{"symbolic_chain_ok", symbolic_chain_ok},
              {"specialized_chain_ok", specialized_chain_ok},
              {"matches_koszul", matches_koszul},
              {"ok", ok()}};
}

TorConsistencyReport tor_consistency_report(const QPair& pair, const CharacterPoint& gamma, std::size_t cap) {
  TorConsistencyReport rep;
  rep.symbolic_chain_ok = SymbolicResolution(pair.q().exact()).composite().is_zero();
  ResolutionComplex rc = specialize_resolution(pair, gamma, cap);
  rep.specialized_chain_ok = rc.chain_ok;
  ExactKoszulComplex k = build_K_exact(pair, gamma);
  rep.matches_koszul = rc.d0 == k.d0() && rc.d1 == k.d1();
  return rep;
}

bool tor_consistency(const QPair& pair, const CharacterPoint& gamma, std::size_t cap) {
  return tor_consistency_report(pair, gamma, cap).ok();
}

std::vector<CharacterPoint> exact_spectral_points(const QPair& pair,
                                                  const std::vector<CharacterPoint>& candidates,
                                                  std::size_t cap) {
  std::vector<CharacterPoint> out;
  for (const auto& c : candidates) {
    if (!exact_cohomology(pair, c, cap).exact()) out.push_back(c);
  }
  return out;
}

}  // namespace qplane
