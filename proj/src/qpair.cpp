#include "qplane/qpair.hpp"

#include <cmath>

#include "qplane/error.hpp"

namespace qplane {

using nlohmann::json;

namespace {

std::optional<std::size_t> common_dimension(const OperatorSpec& t, const OperatorSpec& s) {
  const bool ta = t.adapts_dimension();
  const bool sa = s.adapts_dimension();
  if (ta && sa) return std::nullopt;
  if (ta) return s.dimension();
  if (sa) return t.dimension();
  if (t.dimension() != s.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "T and S act on spaces of different dimension");
  }
  return t.dimension();
}

// Leading m x m block of (TS - q^{-1} ST), computed from (m+1)-square compressions.
Eigen::MatrixXcd relation_defect(const OperatorSpec& t, const OperatorSpec& s, Complex q,
                                 std::size_t m, bool finite) {
  const std::size_t k = finite ? m : m + 1;
  Eigen::MatrixXcd tm = compress(t, Truncation::square(k));
  Eigen::MatrixXcd sm = compress(s, Truncation::square(k));
  Eigen::MatrixXcd d = tm * sm - (sm * tm) / q;
  return d.topLeftCorner(static_cast<long>(m), static_cast<long>(m));
}

}  // namespace

QPair make_q_pair(OperatorSpec T, OperatorSpec S, Scalar q, std::size_t validation_dim, double tol) {
  if (q.is_zero() || q.exact() == GaussRational(1)) {
    throw Error(ErrorCode::BadParameter, "q must differ from 0 and 1");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::BadParameter, "tolerance must be positive");

  QPair pair(std::move(T), std::move(S), std::move(q));
  pair.dim_ = common_dimension(pair.t_, pair.s_);
  pair.validation_dim_ = validation_dim;
  pair.tol_ = tol;

  const bool finite = pair.dim_.has_value();
  if (!finite && validation_dim < 2) throw Error(ErrorCode::BadParameter, "validation_dim must be >= 2");
  const std::size_t m = finite ? *pair.dim_ : validation_dim;
  Eigen::MatrixXcd defect = relation_defect(pair.t_, pair.s_, pair.q_.value(), m, finite);
  pair.residual_ = defect.norm();

  const double tn = compress(pair.t_, Truncation::square(m)).norm();
  const double sn = compress(pair.s_, Truncation::square(m)).norm();
  const double bound = tol * std::max(1.0, tn * sn);
  if (!std::isfinite(pair.residual_) || pair.residual_ > bound) {
    throw Error(ErrorCode::QRelationViolated,
                "TS - q^{-1}ST has Frobenius norm " + std::to_string(pair.residual_) +
                    " on the validation truncation (bound " + std::to_string(bound) + ")");
  }

  if (finite) {
    ExactMatrix te = compress_exact(pair.t_, Truncation::square(m));
    ExactMatrix se = compress_exact(pair.s_, Truncation::square(m));
    ExactMatrix d = te * se - (se * te) * pair.q_.exact().inverse();
    pair.exact_relation_ = d.is_zero();
  }

  pair.flags_.t_compact = pair.t_.is_compact();
  pair.flags_.s_compact = pair.s_.is_compact();
  pair.flags_.t_invertible = pair.t_.is_invertible();
  pair.flags_.s_invertible = pair.s_.is_invertible();
  if (finite) {
    // Zero/Identity without a fixed dimension take the pair's dimension.
    pair.flags_.t_compact = pair.flags_.s_compact = true;
  }
  return pair;
}

QPair QPair::finite_section(std::size_t n, double tol) const {
  if (dim_ && n > *dim_) throw Error(ErrorCode::DimensionMismatch, "section larger than the pair");
  auto t = OperatorSpec::dense(compress_exact(t_, Truncation::square(n)));
  auto s = OperatorSpec::dense(compress_exact(s_, Truncation::square(n)));
  return make_q_pair(std::move(t), std::move(s), q_, std::max<std::size_t>(n, 2), tol);
}

double corner_commutation_residual(const QPair& pair, std::size_t m) {
  if (m < 2) throw Error(ErrorCode::BadParameter, "corner residual needs m >= 2");
  Eigen::MatrixXcd tm = compress(pair.T(), Truncation::square(m));
  Eigen::MatrixXcd sm = compress(pair.S(), Truncation::square(m));
  Eigen::MatrixXcd d = tm * sm - (sm * tm) / pair.q().value();
  return d.topLeftCorner(static_cast<long>(m - 1), static_cast<long>(m - 1)).norm();
}

InvertibilityVerdict finite_dim_invertibility_consequence(const QPair& pair, std::size_t n,
                                                          double tol) {
  if (!pair.dimension() || *pair.dimension() != n) {
    throw Error(ErrorCode::DimensionMismatch, "invertibility check needs an n x n finite pair");
  }
  InvertibilityVerdict v;
  v.det_t_zero = exact_determinant(compress_exact(pair.T(), Truncation::square(n))).is_zero();
  v.det_s_zero = exact_determinant(compress_exact(pair.S(), Truncation::square(n))).is_zero();
  const Complex qn = std::pow(pair.q().value(), static_cast<double>(n));
  v.q_power_is_one = std::abs(qn - 1.0) <= tol;
  v.consistent = v.det_t_zero || v.det_s_zero || v.q_power_is_one;
  if (v.det_t_zero) {
    v.disjunct = "det T = 0";
  } else if (v.det_s_zero) {
    v.disjunct = "det S = 0";
  } else if (v.q_power_is_one) {
    v.disjunct = "q^n = 1";
  } else {
    v.disjunct = "violated";
  }
  return v;
}

json QPair::to_json() const {
  return json{{"schema", 1},
              {"T", t_.to_json()},
              {"S", s_.to_json()},
              {"q", scalar_to_json(q_)},
              {"validation_dim", validation_dim_},
              {"tol", tol_}};
}

QPair QPair::from_json(const json& j) {
  try {
    if (j.contains("schema") && j["schema"].get<int>() != 1) {
      throw Error(ErrorCode::ParseError, "unsupported pair schema");
    }
    return make_q_pair(OperatorSpec::from_json(j.at("T")), OperatorSpec::from_json(j.at("S")),
                       scalar_from_json(j.at("q")), j.value("validation_dim", std::size_t{50}),
                       j.value("tol", 1e-10));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("pair: ") + e.what());
  }
}

}  // namespace qplane
