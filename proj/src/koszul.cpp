#include "qplane/koszul.hpp"

#include <sstream>

#include "qplane/error.hpp"

namespace qplane {

using nlohmann::json;

const char* axis_name(Axis a) { return a == Axis::X ? "X" : "Y"; }

Axis axis_from_string(const std::string& s) {
  if (s == "X" || s == "x") return Axis::X;
  if (s == "Y" || s == "y") return Axis::Y;
  throw Error(ErrorCode::ParseError, "axis must be X or Y, got '" + s + "'");
}

const char* variant_name(ComplexVariant v) {
  switch (v) {
    case ComplexVariant::K: return "K";
    case ComplexVariant::L: return "L";
    case ComplexVariant::R: return "R";
  }
  return "?";
}

namespace {

ComplexVariant variant_from_string(const std::string& s) {
  if (s == "K") return ComplexVariant::K;
  if (s == "L") return ComplexVariant::L;
  if (s == "R") return ComplexVariant::R;
  throw Error(ErrorCode::ParseError, "unknown complex variant: " + s);
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json entries = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

json matrix_to_json(const ExactMatrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(scalar_to_json(Scalar(m(i, j))));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

ExactMatrix exact_matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const json& e = j.at("entries");
  if (e.size() != rows * cols) throw Error(ErrorCode::ParseError, "matrix entry count mismatch");
  ExactMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j2 = 0; j2 < cols; ++j2) m(i, j2) = scalar_from_json(e[i * cols + j2]).exact();
  }
  return m;
}

void check_finite_truncation(const QPair& pair, Truncation trunc) {
  if (auto n = pair.dimension()) {
    if (!(trunc == Truncation::square(*n))) {
      throw Error(ErrorCode::DimensionMismatch,
                  "finite pairs use the full " + std::to_string(*n) + "x" + std::to_string(*n) +
                      " complex");
    }
  }
}

struct Blocks {
  Eigen::MatrixXcd t, s, id;
};

Blocks float_blocks(const QPair& pair, Truncation trunc) {
  check_finite_truncation(pair, trunc);
  return {compress(pair.T(), trunc), compress(pair.S(), trunc),
          compress(OperatorSpec::identity(), trunc)};
}

struct ExactBlocks {
  ExactMatrix t, s, id;
};

ExactBlocks exact_blocks(const QPair& pair) {
  if (!pair.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "exact complexes need a finite pair");
  }
  auto tr = Truncation::square(*pair.dimension());
  return {compress_exact(pair.T(), tr), compress_exact(pair.S(), tr),
          compress_exact(OperatorSpec::identity(), tr)};
}

KoszulComplex make(ComplexVariant v, CharacterPoint p, Truncation trunc, const QPair& pair) {
  KoszulComplex k;
  k.variant = v;
  k.point = std::move(p);
  k.trunc = trunc;
  k.semi_infinite = pair.semi_infinite();
  return k;
}

}  // namespace

json CharacterPoint::to_json() const {
  return json{{"axis", axis_name(axis)}, {"value", scalar_to_json(value)}};
}

CharacterPoint CharacterPoint::from_json(const json& j) {
  return {axis_from_string(j.at("axis").get<std::string>()), scalar_from_json(j.at("value"))};
}

CharacterPoint CharacterPoint::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3) throw Error(ErrorCode::ParseError, "point must be axis,re,im");
  return {axis_from_string(parts[0]),
          Scalar(GaussRational(GaussRational::parse_rational(parts[1]),
                               GaussRational::parse_rational(parts[2])))};
}

Eigen::MatrixXcd KoszulComplex::d0() const {
  Eigen::MatrixXcd m(a.rows() + b.rows(), a.cols());
  m << a, b;
  return m;
}

Eigen::MatrixXcd KoszulComplex::d1() const {
  Eigen::MatrixXcd m(c.rows(), c.cols() + d.cols());
  m << c, d;
  return m;
}

double KoszulComplex::chain_residual() const {
  const long m = static_cast<long>(trunc.cols);
  Eigen::MatrixXcd prod = c * a.topRows(m) + d * b.topRows(m);
  const long interior = semi_infinite ? m - 1 : m;
  if (interior <= 0) return 0.0;
  const double r = prod.leftCols(interior).norm();
  const double scale = d0().norm() * d1().norm();
  return scale > 0.0 ? r / scale : r;
}

json KoszulComplex::to_json() const {
  return json{{"schema", 1},
              {"variant", variant_name(variant)},
              {"point", point.to_json()},
              {"trunc", {trunc.rows, trunc.cols}},
              {"semi_infinite", semi_infinite},
              {"d0", matrix_to_json(d0())},
              {"d1", matrix_to_json(d1())}};
}

json ExactKoszulComplex::to_json() const {
  return json{{"schema", 1},
              {"variant", variant_name(variant)},
              {"point", point.to_json()},
              {"trunc", {a.rows(), a.cols()}},
              {"semi_infinite", false},
              {"d0", matrix_to_json(d0())},
              {"d1", matrix_to_json(d1())}};
}

ExactKoszulComplex ExactKoszulComplex::from_json(const json& j) {
  try {
    ExactKoszulComplex k;
    k.variant = variant_from_string(j.at("variant").get<std::string>());
    k.point = CharacterPoint::from_json(j.at("point"));
    ExactMatrix d0 = exact_matrix_from_json(j.at("d0"));
    ExactMatrix d1 = exact_matrix_from_json(j.at("d1"));
    const std::size_t n = d0.cols();
    if (d0.rows() != 2 * n || d1.rows() != n || d1.cols() != 2 * n) {
      throw Error(ErrorCode::DimensionMismatch, "complex export must have d0 2n x n and d1 n x 2n");
    }
    k.a = ExactMatrix(n, n);
    k.b = ExactMatrix(n, n);
    k.c = ExactMatrix(n, n);
    k.d = ExactMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < n; ++c) {
        k.a(i, c) = d0(i, c);
        k.b(i, c) = d0(n + i, c);
        k.c(i, c) = d1(i, c);
        k.d(i, c) = d1(i, n + c);
      }
    }
    return k;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("complex export: ") + e.what());
  }
}

Truncation natural_truncation(const QPair& pair, std::size_t n) {
  if (auto d = pair.dimension()) return Truncation::square(*d);
  return Truncation::tall(n);
}

KoszulComplex build_K(const QPair& pair, const CharacterPoint& gamma, Truncation trunc) {
  auto bl = float_blocks(pair, trunc);
  const Complex q = pair.q().value();
  const Complex gx = gamma.gamma_x().value();
  const Complex gy = gamma.gamma_y().value();
  auto k = make(ComplexVariant::K, gamma, trunc, pair);
  k.a = gy * bl.id - q * bl.s;
  k.b = bl.t - (q * gx) * bl.id;
  k.c = bl.t - gx * bl.id;
  k.d = bl.s - gy * bl.id;
  return k;
}

KoszulComplex build_L(const QPair& pair, const Scalar& lambda, Truncation trunc) {
  auto bl = float_blocks(pair, trunc);
  const Complex q = pair.q().value();
  const Complex l = lambda.value();
  auto k = make(ComplexVariant::L, {Axis::X, lambda}, trunc, pair);
  k.a = bl.s;
  k.b = l * bl.id - bl.t / q;
  k.c = l * bl.id - bl.t;
  k.d = -bl.s;
  return k;
}

KoszulComplex build_R(const QPair& pair, const Scalar& mu, Truncation trunc) {
  auto bl = float_blocks(pair, trunc);
  const Complex q = pair.q().value();
  const Complex m = mu.value();
  auto k = make(ComplexVariant::R, {Axis::Y, mu}, trunc, pair);
  k.a = bl.t;
  k.b = m * bl.id - q * bl.s;
  k.c = m * bl.id - bl.s;
  k.d = -bl.t;
  return k;
}

ExactKoszulComplex build_K_exact(const QPair& pair, const CharacterPoint& gamma) {
  auto bl = exact_blocks(pair);
  const GaussRational& q = pair.q().exact();
  const GaussRational gx = gamma.gamma_x().exact();
  const GaussRational gy = gamma.gamma_y().exact();
  ExactKoszulComplex k;
  k.variant = ComplexVariant::K;
  k.point = gamma;
  k.a = gy * bl.id - q * bl.s;
  k.b = bl.t - (q * gx) * bl.id;
  k.c = bl.t - gx * bl.id;
  k.d = bl.s - gy * bl.id;
  return k;
}

ExactKoszulComplex build_L_exact(const QPair& pair, const GaussRational& lambda) {
  auto bl = exact_blocks(pair);
  const GaussRational qinv = pair.q().exact().inverse();
  ExactKoszulComplex k;
  k.variant = ComplexVariant::L;
  k.point = {Axis::X, Scalar(lambda)};
  k.a = bl.s;
  k.b = lambda * bl.id - qinv * bl.t;
  k.c = lambda * bl.id - bl.t;
  k.d = GaussRational(-1) * bl.s;
  return k;
}

ExactKoszulComplex build_R_exact(const QPair& pair, const GaussRational& mu) {
  auto bl = exact_blocks(pair);
  const GaussRational& q = pair.q().exact();
  ExactKoszulComplex k;
  k.variant = ComplexVariant::R;
  k.point = {Axis::Y, Scalar(mu)};
  k.a = bl.t;
  k.b = mu * bl.id - q * bl.s;
  k.c = mu * bl.id - bl.s;
  k.d = GaussRational(-1) * bl.t;
  return k;
}

double chain_isomorphism_residual(const QPair& pair, const CharacterPoint& gamma, Truncation trunc) {
  const Complex q = pair.q().value();
  KoszulComplex k = build_K(pair, gamma, trunc);
  if (gamma.axis == Axis::X) {
    KoszulComplex l = build_L(pair, gamma.value, trunc);
    // V1 d0_K = l0 V0 with V0 = q, V1 = -(1+1); V2 d1_K = l1 V1 with V2 = 1.
    const double r0 = (-k.d0() - q * l.d0()).norm();
    const double r1 = (k.d1() + l.d1()).norm();
    return std::max(r0, r1);
  }
  KoszulComplex r = build_R(pair, gamma.value, trunc);
  // V0 = 1, V1 = swap, V2 = -1.
  Eigen::MatrixXcd swapped0(k.a.rows() + k.b.rows(), k.a.cols());
  swapped0 << k.b, k.a;
  Eigen::MatrixXcd r1_swapped(r.c.rows(), r.c.cols() + r.d.cols());
  r1_swapped << r.d, r.c;
  const double r0 = (swapped0 - r.d0()).norm();
  const double r1 = (-k.d1() - r1_swapped).norm();
  return std::max(r0, r1);
}

mpq_class chain_isomorphism_residual_exact(const QPair& pair, const CharacterPoint& gamma) {
  const GaussRational& q = pair.q().exact();
  ExactKoszulComplex k = build_K_exact(pair, gamma);
  const GaussRational minus_one(-1);
  if (gamma.axis == Axis::X) {
    ExactKoszulComplex l = build_L_exact(pair, gamma.value.exact());
    mpq_class r0 = (minus_one * k.d0() - q * l.d0()).max_norm_squared();
    mpq_class r1 = (k.d1() + l.d1()).max_norm_squared();
    return r0 > r1 ? r0 : r1;
  }
  ExactKoszulComplex r = build_R_exact(pair, gamma.value.exact());
  mpq_class r0 = (ExactMatrix::vstack(k.b, k.a) - r.d0()).max_norm_squared();
  mpq_class r1 = (minus_one * k.d1() - ExactMatrix::hstack(r.d, r.c)).max_norm_squared();
  return r0 > r1 ? r0 : r1;
}

}  // namespace qplane
