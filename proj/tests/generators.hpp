#pragma once

// Seeded generators shared by the unit tests and the acceptance binary.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "qplane/error.hpp"
#include "qplane/exact_matrix.hpp"
#include "qplane/koszul.hpp"
#include "qplane/qpair.hpp"

namespace qtest {

using qplane::Axis;
using qplane::CharacterPoint;
using qplane::ExactMatrix;
using qplane::GaussRational;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }

  // Re and im in {-2..2} / {1,2}.
  GaussRational small_rational() {
    return GaussRational(mpq_class(uniform(-2, 2), uniform(1, 2)), mpq_class(uniform(-2, 2), uniform(1, 2)));
  }
  GaussRational small_nonzero() {
    for (;;) {
      GaussRational g = small_rational();
      if (!g.is_zero()) return g;
    }
  }

 private:
  std::mt19937_64 gen_;
};

/// Code of the qplane::Error thrown by f, or nullopt if it returns normally.
inline std::optional<qplane::ErrorCode> error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const qplane::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline GaussRational q_choice(int k) {
  switch (k % 4) {
    case 0: return GaussRational(mpq_class(1, 2));
    case 1: return GaussRational(2);
    case 2: return GaussRational(3);
    default: return GaussRational(mpq_class(6, 5), mpq_class(8, 5));  // 2 (3/5 + 4/5 i)
  }
}

struct ExactCase {
  qplane::QPair pair;
  GaussRational q;
  std::size_t n = 0;
  std::vector<GaussRational> eig_T, eig_S;
  /// (sigma(T) u q^{-1} sigma(T)) x {0} u {0} x (sigma(S) u q sigma(S)); contains sigma(T,S).
  std::vector<CharacterPoint> candidates;
  /// At least five rational points: candidates first, then generic ones.
  std::vector<CharacterPoint> test_points;
};

inline void push_unique(std::vector<GaussRational>& v, const GaussRational& g) {
  for (const auto& x : v) {
    if (x == g) return;
  }
  v.push_back(g);
}

inline void push_point(std::vector<CharacterPoint>& v, Axis axis, const GaussRational& g) {
  const CharacterPoint p{g.is_zero() ? Axis::X : axis, qplane::Scalar(g)};
  for (const auto& x : v) {
    if (x.value == p.value && (x.axis == p.axis || p.value.is_zero())) return;
  }
  v.push_back(p);
}

/// S0 = diag(d) with d made of q-chains c, cq, cq^2, ... and zeros; T0 is
/// supported where d_i = q d_j, and upper triangular on the zero block. Then
/// both are conjugated by a unimodular Gaussian-integer matrix.
inline ExactCase random_exact_pair(Rng& rng, int q_index, std::size_t n) {
  struct {
    GaussRational q;
    std::vector<GaussRational> eig_T, eig_S;
    std::vector<CharacterPoint> candidates, test_points;
  } c;
  c.q = q_choice(q_index);
  std::vector<GaussRational> d;
  const std::size_t zeros = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n)));
  for (std::size_t i = 0; i < zeros; ++i) d.emplace_back(0);
  while (d.size() < n) {
    GaussRational v = rng.small_nonzero();
    const int len = rng.uniform(1, static_cast<int>(n - d.size()));
    for (int k = 0; k < len; ++k) {
      d.push_back(v);
      v *= c.q;
    }
  }
  ExactMatrix s0(n, n), t0(n, n);
  for (std::size_t i = 0; i < n; ++i) s0(i, i) = d[i];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool zero_block = d[i].is_zero() && d[j].is_zero();
      if (zero_block ? i <= j : d[i] == c.q * d[j]) {
        if (rng.uniform(0, 3) > 0) t0(i, j) = rng.small_rational();
      }
    }
  }
  ExactMatrix p = ExactMatrix::identity(n);
  const GaussRational units[] = {GaussRational(1), GaussRational(-1), GaussRational(0, 1), GaussRational(0, -1)};
  for (int k = 0; k < static_cast<int>(2 * n); ++k) {
    const std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1));
    const std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1));
    if (i == j) continue;
    const GaussRational u = units[rng.uniform(0, 3)];
    for (std::size_t col = 0; col < n; ++col) p(i, col) += u * p(j, col);
  }
  const ExactMatrix pinv = qplane::exact_inverse(p);
  const ExactMatrix t = p * t0 * pinv;
  const ExactMatrix s = p * s0 * pinv;

  qplane::QPair pair =
      qplane::make_q_pair(qplane::OperatorSpec::dense(t), qplane::OperatorSpec::dense(s), qplane::Scalar(c.q), n);

  bool chain_part = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i].is_zero()) {
      push_unique(c.eig_T, t0(i, i));
    } else {
      chain_part = true;
    }
    push_unique(c.eig_S, d[i]);
  }
  if (chain_part) push_unique(c.eig_T, GaussRational(0));

  const GaussRational qinv = c.q.inverse();
  for (const auto& e : c.eig_T) {
    push_point(c.candidates, Axis::X, e);
    push_point(c.candidates, Axis::X, qinv * e);
  }
  for (const auto& e : c.eig_S) {
    push_point(c.candidates, Axis::Y, e);
    push_point(c.candidates, Axis::Y, c.q * e);
  }
  c.test_points = c.candidates;
  while (c.test_points.size() < 5 || c.test_points.size() < c.candidates.size() + 2) {
    push_point(c.test_points, rng.coin() ? Axis::X : Axis::Y, rng.small_rational());
  }
  return ExactCase{std::move(pair), c.q, n, c.eig_T, c.eig_S, c.candidates, c.test_points};
}

/// T = [[0,0],[1,0]], S = diag(1,3), q = 3.
inline qplane::QPair nilpotent_pair() {
  using qplane::Scalar;
  return qplane::make_q_pair(
      qplane::OperatorSpec::dense(2, 2, {Scalar(0.0), Scalar(0.0), Scalar(1.0), Scalar(0.0)}),
      qplane::OperatorSpec::dense(2, 2, {Scalar(1.0), Scalar(0.0), Scalar(0.0), Scalar(3.0)}), Scalar(3.0), 2);
}

inline qplane::QPair zero_pair() {
  return qplane::make_q_pair(qplane::OperatorSpec::zero(1), qplane::OperatorSpec::zero(1), qplane::Scalar(0.5), 1);
}

}  // namespace qtest
