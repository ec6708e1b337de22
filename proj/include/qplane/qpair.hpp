#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "qplane/operator_spec.hpp"

namespace qplane {

struct PairFlags {
  bool s_compact = false;
  bool t_compact = false;
  std::optional<bool> t_invertible;
  std::optional<bool> s_invertible;
};

/// A validated pair (T, S) with TS = q^{-1} ST. Immutable.
class QPair {
 public:
  const OperatorSpec& T() const { return t_; }
  const OperatorSpec& S() const { return s_; }
  const Scalar& q() const { return q_; }
  double commutation_residual() const { return residual_; }
  /// Set for finite pairs: whether TS = q^{-1} ST holds in exact arithmetic.
  std::optional<bool> exact_relation() const { return exact_relation_; }
  const PairFlags& flags() const { return flags_; }

  /// Finite dimension n, or nullopt for a pair on l_2(Z_+).
  std::optional<std::size_t> dimension() const { return dim_; }
  bool semi_infinite() const { return !dim_.has_value(); }

  /// Square n x n section of a semi-infinite pair as a dense finite pair. For
  /// lower-bidiagonal pairs whose relation holds entrywise (shift/diagonal)
  /// the section is again an exact q-pair.
  QPair finite_section(std::size_t n, double tol = 1e-10) const;

  nlohmann::json to_json() const;
  static QPair from_json(const nlohmann::json& j);

 private:
  friend QPair make_q_pair(OperatorSpec, OperatorSpec, Scalar, std::size_t, double);
  QPair(OperatorSpec t, OperatorSpec s, Scalar q) : t_(std::move(t)), s_(std::move(s)), q_(std::move(q)) {}

  OperatorSpec t_;
  OperatorSpec s_;
  Scalar q_;
  double residual_ = 0.0;
  std::optional<bool> exact_relation_;
  PairFlags flags_;
  std::optional<std::size_t> dim_;
  std::size_t validation_dim_ = 0;
  double tol_ = 0.0;
};

/// Validates TS = q^{-1} ST on a validation truncation. The residual is the
/// Frobenius norm of the validation corner; it is compared against
/// tol * max(1, |T|_F |S|_F).
QPair make_q_pair(OperatorSpec T, OperatorSpec S, Scalar q, std::size_t validation_dim,
                  double tol = 1e-10);

/// Finite-dimensional form of the non-voidness argument: if det T != 0 and
/// det S != 0 then q^n = 1.
struct InvertibilityVerdict {
  bool det_t_zero = false;
  bool det_s_zero = false;
  bool q_power_is_one = false;  // |q^n - 1| <= tol
  bool consistent = false;      // det T = 0, det S = 0, or q^n = 1
  std::string disjunct;         // "det T = 0", "det S = 0", "q^n = 1", or "violated"
};

InvertibilityVerdict finite_dim_invertibility_consequence(const QPair& pair, std::size_t n,
                                                          double tol = 1e-12);

/// Frobenius norm of T_m S_m - q^{-1} S_m T_m on the (m-1) x (m-1) leading corner.
double corner_commutation_residual(const QPair& pair, std::size_t m);

}  // namespace qplane
