#pragma once

#include <string>

#include <Eigen/Dense>

#include "json.hpp"
#include "qplane/exact_matrix.hpp"
#include "qplane/qpair.hpp"

namespace qplane {

enum class Axis { X, Y };

const char* axis_name(Axis a);
Axis axis_from_string(const std::string& s);

/// A character of the quantum plane: (value, 0) on axis X or (0, value) on
/// axis Y, so that gamma(x) * gamma(y) = 0 always.
struct CharacterPoint {
  Axis axis = Axis::X;
  Scalar value;

  Scalar gamma_x() const { return axis == Axis::X ? value : Scalar(); }
  Scalar gamma_y() const { return axis == Axis::Y ? value : Scalar(); }

  nlohmann::json to_json() const;
  static CharacterPoint from_json(const nlohmann::json& j);
  /// "X,re,im" or "Y,re,im"; parts may be rationals such as "1/3".
  static CharacterPoint parse(const std::string& text);
};

enum class ComplexVariant { K, L, R };

const char* variant_name(ComplexVariant v);

/// Three-term complex X -> X+X -> X with d0 = [A; B] and d1 = [C, D].
///
/// For a finite pair every block is n x n. For a semi-infinite pair each block
/// is the rows x cols compression of a lower-bidiagonal operator; with
/// rows = cols + 1 the blocks are exact restrictions to span{e_0..e_{cols-1}}.
struct KoszulComplex {
  ComplexVariant variant = ComplexVariant::K;
  CharacterPoint point;
  Truncation trunc;
  bool semi_infinite = false;
  Eigen::MatrixXcd a, b, c, d;

  Eigen::MatrixXcd d0() const;
  Eigen::MatrixXcd d1() const;
  std::size_t n() const { return trunc.cols; }

  /// |d1 d0| on the interior columns, relative to |d0||d1|.
  double chain_residual() const;

  nlohmann::json to_json() const;
};

/// Exact counterpart for finite pairs with Gaussian-rational data.
struct ExactKoszulComplex {
  ComplexVariant variant = ComplexVariant::K;
  CharacterPoint point;
  ExactMatrix a, b, c, d;

  ExactMatrix d0() const { return ExactMatrix::vstack(a, b); }
  ExactMatrix d1() const { return ExactMatrix::hstack(c, d); }
  std::size_t n() const { return a.cols(); }

  nlohmann::json to_json() const;
  static ExactKoszulComplex from_json(const nlohmann::json& j);
};

/// K((T,S), gamma): d0 = [gamma(y) - qS; T - q gamma(x)], d1 = [T - gamma(x), S - gamma(y)].
KoszulComplex build_K(const QPair& pair, const CharacterPoint& gamma, Truncation trunc);
/// L_lambda(T,S): l0 = [S; lambda - q^{-1}T], l1 = [lambda - T, -S].
KoszulComplex build_L(const QPair& pair, const Scalar& lambda, Truncation trunc);
/// R_mu(T,S): r0 = [T; mu - qS], r1 = [mu - S, -T].
KoszulComplex build_R(const QPair& pair, const Scalar& mu, Truncation trunc);

/// Natural truncation: n x n for finite pairs, (N+1) x N for semi-infinite ones.
Truncation natural_truncation(const QPair& pair, std::size_t n);

ExactKoszulComplex build_K_exact(const QPair& pair, const CharacterPoint& gamma);
ExactKoszulComplex build_L_exact(const QPair& pair, const GaussRational& lambda);
ExactKoszulComplex build_R_exact(const QPair& pair, const GaussRational& mu);

/// Residual of the commuting squares identifying K with L (axis X, vertical
/// maps q, -(1+1), 1) or with R (axis Y, vertical maps 1, swap, -1). Returns
/// the larger Frobenius norm of the two squares.
double chain_isomorphism_residual(const QPair& pair, const CharacterPoint& gamma, Truncation trunc);

/// Exact version for finite pairs: largest squared modulus of an entry of
/// either square; zero exactly when the squares commute.
mpq_class chain_isomorphism_residual_exact(const QPair& pair, const CharacterPoint& gamma);

}  // namespace qplane
