#include "qplane/model.hpp"

#include <algorithm>
#include <cmath>

#include "qplane/error.hpp"

namespace qplane {

using nlohmann::json;

namespace {

double lp_norm(const Eigen::VectorXcd& v, double p) {
  double s = 0.0;
  for (long i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

void ModelParams::validate() const {
  if (q.is_zero() || !(q.exact().norm() < 1)) throw Error(ErrorCode::BadParameter, "model needs 0 < |q| < 1");
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::BadParameter, "model needs 1 <= p < inf");
  if (N < 2) throw Error(ErrorCode::BadParameter, "model needs N >= 2");
}

QPair ModelParams::pair(std::size_t validation_dim) const {
  validate();
  return make_q_pair(OperatorSpec::shift(), OperatorSpec::diagonal_powers(q), q, validation_dim, 1e-12);
}

const char* reference_class_name(ReferenceClass c) {
  switch (c) {
    case ReferenceClass::Resolvent: return "resolvent";
    case ReferenceClass::Spectral: return "spectral";
    case ReferenceClass::Essential: return "essential";
    case ReferenceClass::UnknownBand: return "unknown-band";
  }
  return "?";
}

ReferenceSpectra reference_spectra(const ModelParams& params) {
  params.validate();
  const double rq = 1.0 / params.q.abs();
  ReferenceSpectra r;
  r.sigma_T = ComplexSet::disk(0.0, 1.0);
  r.sigma_S = ComplexSet::power_hull(1.0, params.q.value());
  r.annulus_inner = 1.0;
  r.annulus_outer = rq;
  r.sigma_r = ComplexSet::points({1.0});
  r.sigma_e_x = ComplexSet::circle(0.0, 1.0).united(ComplexSet::circle(0.0, rq));
  return r;
}

ReferenceClass reference_membership(const ModelParams& params, const CharacterPoint& gamma, double band) {
  params.validate();
  if (band < 0.0) throw Error(ErrorCode::BadParameter, "band must be nonnegative");
  const GaussRational& v = gamma.value.exact();
  if (gamma.axis == Axis::Y) {
    if (band == 0.0) return v == GaussRational(1) ? ReferenceClass::Spectral : ReferenceClass::Resolvent;
    return std::abs(gamma.value.value() - 1.0) <= band ? ReferenceClass::Spectral : ReferenceClass::Resolvent;
  }
  if (v.is_zero()) return ReferenceClass::Resolvent;
  if (band == 0.0) {
    const mpq_class r2 = v.norm();
    const mpq_class scaled = r2 * params.q.exact().norm();  // |q lambda|^2
    if (r2 == 1 || scaled == 1) return ReferenceClass::Essential;
    if (r2 < 1) return ReferenceClass::UnknownBand;
    if (scaled < 1) return ReferenceClass::Spectral;
    return ReferenceClass::Resolvent;
  }
  const double r = gamma.value.abs();
  const double outer = 1.0 / params.q.abs();
  if (std::abs(r - 1.0) <= band || std::abs(r - outer) <= band) return ReferenceClass::Essential;
  if (r < 1.0) return ReferenceClass::UnknownBand;
  if (r < outer) return ReferenceClass::Spectral;
  return ReferenceClass::Resolvent;
}

json AnnulusWitness::to_json() const {
  return json{{"N", zeta.size() - 1},
              {"residual", residual},
              {"interior_residual", interior_residual},
              {"corner_term", corner_term},
              {"zeta_norm_partial", zeta_norm_partial},
              {"zeta_norm_closed", zeta_norm_closed},
              {"alpha_liminf", alpha_liminf},
              {"lift_norm_half", lift_norm_half},
              {"lift_norm_full", lift_norm_full},
              {"divergence_certificate", divergence_certificate}};
}

AnnulusWitness witness_h1_annulus(const ModelParams& params, const Scalar& lambda) {
  params.validate();
  const mpq_class r2 = lambda.exact().norm();
  if (!(r2 > 1) || r2 * params.q.exact().norm() > 1) {
    throw Error(ErrorCode::OutOfAnnulus, "witness needs 1 < |lambda| <= |q|^{-1}");
  }
  const std::size_t N = params.N;
  const long n1 = static_cast<long>(N) + 1;
  const Complex l = lambda.value();
  const Complex q = params.q.value();
  const double p = params.p;

  AnnulusWitness w;
  w.zeta.resize(n1);
  Complex pw = 1.0 / l;
  for (long n = 0; n < n1; ++n) {
    w.zeta(n) = pw;
    pw /= l;
  }
  w.eta = Eigen::VectorXcd::Zero(n1);
  w.eta(0) = 1.0;

  const Truncation tr(N + 2, N + 1);
  Eigen::MatrixXcd lt = l * compress(OperatorSpec::identity(), tr) - compress(OperatorSpec::shift(), tr);
  Eigen::MatrixXcd s = compress(OperatorSpec::diagonal_powers(params.q), tr);
  Eigen::VectorXcd res = lt * w.zeta - s * w.eta;
  w.residual = res.norm();
  w.interior_residual = res.head(n1).norm();
  w.corner_term = std::pow(std::abs(l), -static_cast<double>(N) - 1.0);

  w.zeta_norm_partial = lp_norm(w.zeta, p);
  w.zeta_norm_closed = std::pow(std::pow(std::abs(l), p) - 1.0, -1.0 / p);

  const double ql = std::abs(q * l);
  w.alpha_abs.resize(static_cast<std::size_t>(n1));
  double a = 1.0 / std::abs(l);
  double half = 0.0, full = 0.0;
  for (std::size_t n = 0; n <= N; ++n) {
    w.alpha_abs[n] = a;
    full += std::pow(a, p);
    if (n <= N / 2) half += std::pow(a, p);
    a /= ql;
  }
  w.alpha_liminf = *std::min_element(w.alpha_abs.begin() + static_cast<long>(N / 2), w.alpha_abs.end());
  w.lift_norm_half = std::pow(half, 1.0 / p);
  w.lift_norm_full = std::pow(full, 1.0 / p);
  // |q lambda| <= 1 keeps |alpha_n| >= 1/|lambda|, so the partial norms grow like N^{1/p}.
  w.divergence_certificate = r2 * params.q.exact().norm() <= 1 && w.alpha_liminf >= 1.0 / std::abs(l) * (1 - 1e-12) &&
                             w.lift_norm_full > w.lift_norm_half;
  return w;
}

TailFunctionalInput TailFunctionalInput::geometric(Complex z, Complex lambda, Complex q) {
  TailFunctionalInput in;
  in.lambda = lambda;
  in.q = q;
  const Complex zw = z * q * lambda;
  in.beta = {-zw / (1.0 - zw)};
  in.tail_scale = 1.0;
  in.tail_ratio = z;
  return in;
}

TailFunctionalInput TailFunctionalInput::finite(std::vector<Complex> beta, Complex lambda, Complex q) {
  TailFunctionalInput in;
  in.beta = std::move(beta);
  in.lambda = lambda;
  in.q = q;
  return in;
}

void TailFunctionalInput::validate() const {
  if (has_tail() && !(std::abs(tail_ratio) < 1.0)) {
    throw Error(ErrorCode::BadParameter, "geometric tail needs |ratio| < 1");
  }
  if (!(std::abs(w()) < 1.0)) throw Error(ErrorCode::BadParameter, "tail functional needs |q lambda| < 1");
}

Complex TailFunctionalInput::beta_at(std::size_t k) const {
  if (k < beta.size()) return beta[k];
  if (!has_tail()) return 0.0;
  return tail_scale * std::pow(tail_ratio, static_cast<double>(k));
}

Complex TailFunctionalInput::orthogonality() const {
  validate();
  const Complex wv = w();
  Complex s = 0.0;
  Complex pw = 1.0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    s += beta[k] * pw;
    pw *= wv;
  }
  if (has_tail()) {
    const Complex zw = tail_ratio * wv;
    s += tail_scale * std::pow(zw, static_cast<double>(beta.size())) / (1.0 - zw);
  }
  return s;
}

double TailFunctionalInput::norm_squared_from(std::size_t m) const {
  double s = 0.0;
  for (std::size_t k = m; k < beta.size(); ++k) s += std::norm(beta[k]);
  if (has_tail()) {
    const std::size_t start = std::max(m, beta.size());
    const double r2 = std::norm(tail_ratio);
    s += std::norm(tail_scale) * std::pow(r2, static_cast<double>(start)) / (1.0 - r2);
  }
  return s;
}

void TailFunctionalInput::make_orthogonal() {
  if (beta.empty()) beta.push_back(0.0);
  beta[0] -= orthogonality();
}

std::vector<Complex> TailFunctionalInput::tail_sums(std::size_t count) const {
  validate();
  const Complex wv = w();
  const std::size_t L = beta.size();
  std::vector<Complex> t(count, 0.0);
  // For n >= L - 1 every beta_k with k > n is on the geometric tail.
  auto closed = [&](std::size_t n) -> Complex {
    if (!has_tail()) return 0.0;
    return tail_scale * std::pow(tail_ratio, static_cast<double>(n + 1)) / (1.0 - tail_ratio * wv);
  };
  const std::size_t pivot = L == 0 ? 0 : L - 1;
  for (std::size_t n = pivot; n < count; ++n) t[n] = closed(n);
  if (pivot > 0) {
    Complex cur = closed(pivot);
    for (std::size_t n = pivot; n-- > 0;) {
      cur = beta[n + 1] + wv * cur;
      if (n < count) t[n] = cur;
    }
  }
  return t;
}

json EpsilonResult::to_json() const {
  return json{{"partial", partial}, {"remainder", remainder}, {"tail_bound", tail_bound}, {"total", total()}};
}

EpsilonResult epsilon_lambda(const TailFunctionalInput& inp, std::size_t N) {
  inp.validate();
  const std::size_t L = inp.beta.size();
  const std::size_t pivot = L == 0 ? 0 : L - 1;
  const std::size_t explicit_count = std::max(N, pivot);
  const std::vector<Complex> t = inp.tail_sums(explicit_count);
  EpsilonResult r;
  for (std::size_t n = 0; n < N; ++n) r.partial += std::norm(t[n]);
  for (std::size_t n = N; n < explicit_count; ++n) r.remainder += std::norm(t[n]);
  if (inp.has_tail()) {
    const std::size_t n0 = explicit_count;
    const double z2 = std::norm(inp.tail_ratio);
    const double den = std::norm(1.0 - inp.tail_ratio * inp.w()) * (1.0 - z2);
    r.remainder += std::norm(inp.tail_scale) * std::pow(z2, static_cast<double>(n0 + 1)) / den;
  }
  const double gap = 1.0 - std::abs(inp.w());
  r.tail_bound = inp.norm_squared_from(N + 1) / (gap * gap);
  return r;
}

double epsilon_geometric_closed_form(Complex z, Complex lambda, Complex q) {
  const Complex zw = z * q * lambda;
  return std::norm(z / (1.0 - zw)) / (1.0 - std::norm(z));
}

const char* membership_name(Membership m) {
  switch (m) {
    case Membership::Member: return "member";
    case Membership::NonMember: return "non-member";
    case Membership::Undecided: return "undecided";
  }
  return "?";
}

json MLambdaVerdict::to_json() const {
  return json{{"verdict", membership_name(verdict)},
              {"orthogonality_residual", orthogonality_residual},
              {"partial_N", partial_N},
              {"partial_2N", partial_2N},
              {"tail_bound", tail_bound},
              {"reason", reason}};
}

MLambdaVerdict m_lambda_membership(const TailFunctionalInput& inp, std::size_t N, const MLambdaOptions& opts) {
  const double r = std::abs(inp.lambda);
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::BadParameter, "M_lambda needs 0 < |lambda| < 1");
  if (N < 1) throw Error(ErrorCode::BadParameter, "M_lambda needs N >= 1");
  MLambdaVerdict v;
  v.orthogonality_residual = std::abs(inp.orthogonality());
  const EpsilonResult e1 = epsilon_lambda(inp, N);
  const EpsilonResult e2 = epsilon_lambda(inp, 2 * N);
  v.partial_N = e1.partial;
  v.partial_2N = e2.partial;
  v.tail_bound = e2.tail_bound;
  if (v.orthogonality_residual > opts.tol) {
    v.verdict = Membership::NonMember;
    v.reason = "not orthogonal to zeta_{lambda q}";
  } else if (!std::isfinite(v.partial_2N) || v.partial_2N > opts.divergence_threshold) {
    v.verdict = Membership::NonMember;
    v.reason = "partial sums diverge";
  } else if (v.partial_2N - v.partial_N <= opts.cauchy_rel * v.partial_2N + opts.tol &&
             std::isfinite(v.tail_bound)) {
    v.verdict = Membership::Member;
    v.reason = "partial sums settle and the tail is bounded";
  } else {
    v.reason = "partial sums still moving";
  }
  return v;
}

json ReconstructionResult::to_json() const {
  return json{{"N", alpha.size()}, {"residual", residual}, {"orthogonality_residual", orthogonality_residual}};
}

ReconstructionResult h1_reconstruction_check(const TailFunctionalInput& inp, std::size_t N) {
  const double r = std::abs(inp.lambda);
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::BadParameter, "reconstruction needs 0 < |lambda| < 1");
  const std::vector<Complex> t = inp.tail_sums(N);
  ReconstructionResult res;
  res.orthogonality_residual = std::abs(inp.orthogonality());
  res.alpha.resize(static_cast<long>(N));
  Complex qp = inp.q;  // q^{n+1}
  for (std::size_t n = 0; n < N; ++n) {
    res.alpha(static_cast<long>(n)) = -qp * t[n];
    qp *= inp.q;
  }
  double s = 0.0;
  Complex qn = 1.0;
  for (std::size_t n = 0; n < N; ++n) {
    const long i = static_cast<long>(n);
    Complex comp = inp.lambda * res.alpha(i) - qn * inp.beta_at(n);
    if (n > 0) comp -= res.alpha(i - 1);
    s += std::norm(comp);
    qn *= inp.q;
  }
  res.residual = std::sqrt(s);
  return res;
}

std::optional<std::size_t> positive_power_of(const Scalar& q, const Scalar& mu) {
  GaussRational p = q.exact();
  for (std::size_t k = 1; k <= 256; ++k) {
    if (p == mu.exact()) return k;
    if (p.norm() < mu.exact().norm()) break;  // |q| < 1: powers only shrink
    p *= q.exact();
  }
  return std::nullopt;
}

json RightSolverResult::to_json() const {
  return json{{"k", k},
              {"residual", residual},
              {"kernel_residual", kernel_residual},
              {"bound_constant", bound_constant},
              {"theta_norm", theta_norm},
              {"eta_norm", eta_norm},
              {"bound_ok", bound_ok}};
}

RightSolverResult right_spectrum_solver(const ModelParams& params, const Scalar& mu, const Eigen::VectorXcd& zeta,
                                        const Eigen::VectorXcd& eta) {
  params.validate();
  auto k = positive_power_of(params.q, mu);
  if (!k) throw Error(ErrorCode::BadParameter, "mu is not a positive power of q");
  if (zeta.size() != eta.size() || zeta.size() < static_cast<long>(*k) + 1) {
    throw Error(ErrorCode::DimensionMismatch, "zeta and eta need equal length > k");
  }
  const long M = zeta.size();
  const Complex m = mu.value();
  const Complex q = params.q.value();

  RightSolverResult r;
  r.k = *k;
  r.theta.resize(M);
  Complex qp = q;  // q^{n+1}
  for (long n = 0; n < M; ++n) {
    if (n == static_cast<long>(*k) - 1) {
      r.theta(n) = zeta(static_cast<long>(*k));
    } else {
      r.theta(n) = eta(n) / (m - qp);
      r.bound_constant = std::max(r.bound_constant, 1.0 / std::abs(m - qp));
    }
    qp *= q;
  }

  const Truncation tr(static_cast<std::size_t>(M), static_cast<std::size_t>(M));
  const Eigen::MatrixXcd T = compress(OperatorSpec::shift(), tr);
  const Eigen::MatrixXcd S = compress(OperatorSpec::diagonal_powers(params.q), tr);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(M, M);
  Eigen::VectorXcd top = T * r.theta - zeta;
  Eigen::VectorXcd bottom = (m * I - q * S) * r.theta - eta;
  r.residual = std::sqrt(top.squaredNorm() + bottom.squaredNorm());
  // Row M-1 of T eta involves eta_{M-2} only, so the kernel test is exact on the support.
  r.kernel_residual = ((m * I - S) * zeta - T * eta).norm();
  r.theta_norm = lp_norm(r.theta, params.p);
  r.eta_norm = lp_norm(eta, params.p);
  r.bound_ok = r.theta_norm <= r.bound_constant * r.eta_norm + std::abs(zeta(static_cast<long>(*k))) + 1e-12;
  return r;
}

namespace {

json claim(const std::string& name, json measured, bool pass) {
  return json{{"claim", name}, {"measured", std::move(measured)}, {"pass", pass}};
}

}  // namespace

json verify_model(const ModelParams& params) {
  params.validate();
  if (params.N < 8) throw Error(ErrorCode::BadParameter, "verify_model needs N >= 8");
  const QPair pair = params.pair();
  const Complex q = params.q.value();
  const double rq = 1.0 / params.q.abs();
  ToleranceConfig cfg;
  cfg.truncation_schedule = {params.N / 4, params.N / 2, params.N};
  json claims = json::array();

  claims.push_back(claim("q-relation on the validation corner", pair.commutation_residual(),
                         pair.commutation_residual() <= 1e-12));

  {
    auto pc = classify_point(pair, {Axis::X, Scalar(0.0)}, cfg);
    claims.push_back(claim("(0,0) is outside the joint spectrum", pc.to_json()["h"], !pc.in_sigma));
  }

  const double mid = 1.0 + 0.5 * (rq - 1.0);
  for (double radius : {1.0 + 0.2 * (rq - 1.0), 1.0 + 0.6 * (rq - 1.0), rq}) {
    auto pc = classify_point(pair, {Axis::X, Scalar(radius)}, cfg);
    bool ok = pc.in_sigma && pc.h[0] == 0 && pc.h[1] > 0 && pc.h[2] == 0;
    claims.push_back(claim("annulus point has an H1 defect only",
                           json{{"radius", radius}, {"h", pc.h}, {"flags", pc.flags}}, ok));
  }
  {
    const double radius = 1.25 * rq;
    auto pc = classify_point(pair, {Axis::X, Scalar(radius)}, cfg);
    claims.push_back(claim("outside the disk of radius 1/|q| is resolvent",
                           json{{"radius", radius}, {"h", pc.h}}, !pc.in_sigma));
  }
  {
    auto pc = classify_point(pair, {Axis::X, Scalar(0.5)}, cfg);
    claims.push_back(claim("inside the unit disk H0 = H2 = 0",
                           json{{"radius", 0.5}, {"h", pc.h}}, pc.h[0] == 0 && pc.h[2] == 0));
  }

  {
    auto pc = classify_point(pair, {Axis::Y, Scalar(1.0)}, cfg);
    bool ok = pc.in_sigma && pc.h == std::array<std::size_t, 3>{0, 1, 1} && pc.fredholm && !pc.in_sigma_e;
    claims.push_back(claim("mu = 1 gives a nonexact Fredholm complex with defects (0,1,1)",
                           json{{"h", pc.h}, {"fredholm", pc.fredholm}}, ok));
  }
  for (const Scalar& mu : {params.q, Scalar(params.q.exact() * params.q.exact()), Scalar(0.0), Scalar(0.7)}) {
    auto pc = classify_point(pair, {Axis::Y, mu}, cfg);
    claims.push_back(claim("axis-Y point off mu = 1 is resolvent",
                           json{{"mu", scalar_to_json(mu)}, {"h", pc.h}}, !pc.in_sigma));
  }

  // q^{-1} sits exactly on the outer circle; a double radius 1/|q| may not.
  for (const Scalar& lambda : {Scalar(mid), Scalar(params.q.exact().inverse())}) {
    ModelParams wp = params;
    wp.N = std::max<std::size_t>(params.N, 400);
    auto w = witness_h1_annulus(wp, lambda);
    bool ok = std::abs(w.zeta_norm_partial - w.zeta_norm_closed) <= 1e-10 && w.interior_residual <= 1e-10 &&
              w.residual <= 2.0 * w.corner_term + 1e-14 && w.divergence_certificate;
    json m = w.to_json();
    m["lambda"] = scalar_to_json(lambda);
    claims.push_back(claim("annulus witness: telescoping, norm formula, non-liftability", m, ok));
  }

  {
    double worst = 0.0;
    for (double z : {0.1, 0.3, 0.45}) {
      for (double l : {0.2, 0.4, 0.75}) {
        auto in = TailFunctionalInput::geometric(z, l, q);
        worst = std::max(worst, std::abs(epsilon_lambda(in, params.N).total() - epsilon_geometric_closed_form(z, l, q)));
      }
    }
    claims.push_back(claim("epsilon_lambda matches its geometric closed form", worst, worst <= 1e-10));
  }
  {
    auto in = TailFunctionalInput::geometric(0.3, 0.4, q);
    auto m = m_lambda_membership(in, params.N);
    claims.push_back(claim("geometric eta lies in M_lambda", m.to_json(), m.verdict == Membership::Member));
    auto rec = h1_reconstruction_check(in, params.N);
    claims.push_back(claim("H1 reconstruction telescopes", rec.to_json(), rec.residual <= 1e-10));
  }

  {
    Eigen::VectorXcd zeta = Eigen::VectorXcd::Zero(8), eta = Eigen::VectorXcd::Zero(8);
    zeta(1) = 1.0;
    auto r = right_spectrum_solver(params, params.q, zeta, eta);
    claims.push_back(claim("mu = q lifts the kernel element (e_1, 0)", r.to_json(), r.residual <= 1e-12 && r.bound_ok));
  }

  {
    const ReferenceSpectra ref = reference_spectra(params);
    bool ok = reference_membership(params, {Axis::X, Scalar(1.0)}) == ReferenceClass::Essential &&
              reference_membership(params, {Axis::X, Scalar(params.q.exact().inverse())}) == ReferenceClass::Essential &&
              reference_membership(params, {Axis::X, Scalar(mid)}) == ReferenceClass::Spectral &&
              reference_membership(params, {Axis::Y, Scalar(1.0)}) == ReferenceClass::Spectral;
    claims.push_back(claim("essential circles at radii 1 and 1/|q|", ref.sigma_e_x.describe(), ok));
  }

  {
    auto pc = chain_isomorphism_residual(pair, {Axis::X, Scalar(mid)}, Truncation::tall(50));
    auto py = chain_isomorphism_residual(pair, {Axis::Y, Scalar(1.0)}, Truncation::tall(50));
    claims.push_back(claim("chain isomorphisms K ~ L and K ~ R", json{{"x", pc}, {"y", py}},
                           pc <= 1e-12 && py <= 1e-12));
  }

  {
    auto lb = left_spectrum_bound_check(pair, {Scalar(1.5 * rq)}, cfg);
    claims.push_back(claim("left spectrum inside sigma(T) u q^{-1} sigma(T)", lb.to_json(), lb.ok()));
  }

  bool all = std::all_of(claims.begin(), claims.end(), [](const json& c) { return c["pass"].get<bool>(); });
  return json{{"schema", 1},
              {"q", scalar_to_json(params.q)},
              {"p", params.p},
              {"N", params.N},
              {"truncation_schedule", cfg.truncation_schedule},
              {"claims", claims},
              {"pass", all}};
}

}  // namespace qplane
