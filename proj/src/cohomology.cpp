#include "qplane/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qplane/error.hpp"

namespace qplane {

using nlohmann::json;

void ToleranceConfig::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::BadParameter, what); };
  if (!(rank_rel_tol > 0.0)) bad("rank_rel_tol must be positive");
  if (!(closed_range_floor > 0.0)) bad("closed_range_floor must be positive");
  if (fredholm_dim_cap < 1) bad("fredholm_dim_cap must be positive");
  if (truncation_schedule.empty()) bad("truncation_schedule is empty");
  for (std::size_t i = 0; i < truncation_schedule.size(); ++i) {
    if (truncation_schedule[i] < 2) bad("truncation sizes must be at least 2");
    if (i > 0 && truncation_schedule[i] <= truncation_schedule[i - 1]) {
      bad("truncation_schedule must be strictly increasing");
    }
  }
  if (!(kernel_decay_ratio > 0.0 && kernel_decay_ratio < decay_ratio && decay_ratio < 1.0)) {
    bad("need 0 < kernel_decay_ratio < decay_ratio < 1");
  }
  if (!(closed_kernel_ratio > kernel_decay_ratio && closed_kernel_ratio < 1.0)) {
    bad("need kernel_decay_ratio < closed_kernel_ratio < 1");
  }
  if (!(boundary_margin >= 0.0)) bad("boundary_margin must be nonnegative");
  if (!(essential_band >= 0.0)) bad("essential_band must be nonnegative");
  if (workers < 1) bad("workers must be positive");
}

json ToleranceConfig::to_json() const {
  return json{{"schema", 1},
              {"rank_rel_tol", rank_rel_tol},
              {"closed_range_floor", closed_range_floor},
              {"fredholm_dim_cap", fredholm_dim_cap},
              {"truncation_schedule", truncation_schedule},
              {"kernel_decay_ratio", kernel_decay_ratio},
              {"decay_ratio", decay_ratio},
              {"closed_kernel_ratio", closed_kernel_ratio},
              {"boundary_margin", boundary_margin},
              {"essential_band", essential_band},
              {"cross_check_lr", cross_check_lr},
              {"workers", workers}};
}

ToleranceConfig ToleranceConfig::from_json(const json& j) {
  ToleranceConfig c;
  try {
    if (j.contains("schema") && j["schema"].get<int>() != 1) {
      throw Error(ErrorCode::ParseError, "unsupported tolerance schema");
    }
    c.rank_rel_tol = j.value("rank_rel_tol", c.rank_rel_tol);
    c.closed_range_floor = j.value("closed_range_floor", c.closed_range_floor);
    c.fredholm_dim_cap = j.value("fredholm_dim_cap", c.fredholm_dim_cap);
    if (j.contains("truncation_schedule")) {
      c.truncation_schedule.clear();
      for (const auto& t : j["truncation_schedule"]) {
        // Either N or [rows, cols] with rows = cols + 1.
        if (t.is_array()) {
          Truncation tr(t.at(0).get<std::size_t>(), t.at(1).get<std::size_t>());
          if (tr.rows != tr.cols + 1) {
            throw Error(ErrorCode::BadParameter, "schedule truncations must be (N+1) x N");
          }
          c.truncation_schedule.push_back(tr.cols);
        } else {
          c.truncation_schedule.push_back(t.get<std::size_t>());
        }
      }
    }
    c.kernel_decay_ratio = j.value("kernel_decay_ratio", c.kernel_decay_ratio);
    c.decay_ratio = j.value("decay_ratio", c.decay_ratio);
    c.closed_kernel_ratio = j.value("closed_kernel_ratio", c.closed_kernel_ratio);
    c.boundary_margin = j.value("boundary_margin", c.boundary_margin);
    c.essential_band = j.value("essential_band", c.essential_band);
    c.cross_check_lr = j.value("cross_check_lr", c.cross_check_lr);
    c.workers = j.value("workers", c.workers);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("tolerance config: ") + e.what());
  }
  c.validate();
  return c;
}

json MapSpectrum::to_json() const {
  return json{{"rows", rows},           {"cols", cols},         {"kernel", kernel},
              {"sigma_max", sigma_max}, {"threshold", threshold}, {"smallest", smallest},
              {"smin_nonzero", smin_nonzero}};
}

MapSpectrum MapSpectrum::from_json(const json& j) {
  MapSpectrum m;
  m.rows = j.at("rows").get<std::size_t>();
  m.cols = j.at("cols").get<std::size_t>();
  m.kernel = j.at("kernel").get<std::size_t>();
  m.sigma_max = j.at("sigma_max").get<double>();
  m.threshold = j.at("threshold").get<double>();
  m.smallest = j.at("smallest").get<std::vector<double>>();
  m.smin_nonzero = j.at("smin_nonzero").get<double>();
  return m;
}

json CohomologyReport::to_json() const {
  json m = json::array();
  for (const auto& s : maps) m.push_back(s.to_json());
  return json{{"trunc", {trunc.rows, trunc.cols}},
              {"hodge", hodge},
              {"n", n},
              {"h0", h0},
              {"h1", h1},
              {"h2", h2},
              {"rank_d0", rank_d0},
              {"rank_d1", rank_d1},
              {"sigma_min_d0", sigma_min_d0},
              {"sigma_min_d1_adjoint", sigma_min_d1_adjoint},
              {"sigma_min_h1", sigma_min_h1},
              {"closed_range_d0", closed_range_d0},
              {"closed_range_d1", closed_range_d1},
              {"maps", m}};
}

CohomologyReport CohomologyReport::from_json(const json& j) {
  CohomologyReport r;
  r.trunc = Truncation(j.at("trunc").at(0).get<std::size_t>(), j.at("trunc").at(1).get<std::size_t>());
  r.hodge = j.at("hodge").get<bool>();
  r.n = j.at("n").get<std::size_t>();
  r.h0 = j.at("h0").get<std::size_t>();
  r.h1 = j.at("h1").get<std::size_t>();
  r.h2 = j.at("h2").get<std::size_t>();
  r.rank_d0 = j.at("rank_d0").get<std::size_t>();
  r.rank_d1 = j.at("rank_d1").get<std::size_t>();
  r.sigma_min_d0 = j.at("sigma_min_d0").get<double>();
  r.sigma_min_d1_adjoint = j.at("sigma_min_d1_adjoint").get<double>();
  r.sigma_min_h1 = j.at("sigma_min_h1").get<double>();
  r.closed_range_d0 = j.at("closed_range_d0").get<bool>();
  r.closed_range_d1 = j.at("closed_range_d1").get<bool>();
  const json& m = j.at("maps");
  for (std::size_t i = 0; i < 3; ++i) r.maps[i] = MapSpectrum::from_json(m.at(i));
  return r;
}

namespace {

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  if (!m.allFinite()) throw Error(ErrorCode::NumericalBreakdown, "non-finite entry in differential");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  if (svd.info() != Eigen::Success) throw Error(ErrorCode::NumericalBreakdown, "SVD did not converge");
  return svd.singularValues();
}

// The threshold is relative to the largest singular value over the whole
// complex: a block that cancels exactly (T - q lambda = 0) leaves roundoff
// that must not count as rank.
MapSpectrum map_spectrum(const Eigen::MatrixXcd& m, const Eigen::VectorXd& s, double scale,
                         const ToleranceConfig& cfg) {
  MapSpectrum ms;
  ms.rows = static_cast<std::size_t>(m.rows());
  ms.cols = static_cast<std::size_t>(m.cols());
  ms.sigma_max = s.size() > 0 ? s(0) : 0.0;
  ms.threshold = cfg.rank_rel_tol * std::max(scale, ms.sigma_max) * static_cast<double>(std::max(ms.rows, ms.cols));

  std::vector<double> asc(ms.cols, 0.0);  // wide maps have cols - rows implicit zeros
  for (long i = 0; i < s.size(); ++i) asc[ms.cols - 1 - static_cast<std::size_t>(i)] = s(i);
  std::size_t rank = 0;
  for (long i = 0; i < s.size(); ++i) {
    if (s(i) > ms.threshold) ++rank;
  }
  ms.kernel = ms.cols - rank;
  ms.smin_nonzero = rank > 0 ? asc[ms.kernel] : 0.0;
  const std::size_t keep = std::min(ms.cols, static_cast<std::size_t>(cfg.fredholm_dim_cap) + 2);
  ms.smallest.assign(asc.begin(), asc.begin() + static_cast<long>(keep));
  return ms;
}

// Fills maps[i] for the given matrices (null entries are skipped) on a common scale.
void measure(CohomologyReport& r, const std::array<const Eigen::MatrixXcd*, 3>& ms, const ToleranceConfig& cfg) {
  std::array<Eigen::VectorXd, 3> sv;
  double scale = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!ms[i]) continue;
    sv[i] = singular_values(*ms[i]);
    if (sv[i].size() > 0) scale = std::max(scale, sv[i](0));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (ms[i]) r.maps[i] = map_spectrum(*ms[i], sv[i], scale, cfg);
  }
}

struct MapVerdict {
  std::size_t kernel = 0;
  bool nonclosed = false;
  bool boundary = false;
};

MapVerdict single_verdict(const MapSpectrum& m, const ToleranceConfig& cfg, bool semi_infinite) {
  MapVerdict v;
  v.kernel = m.kernel;
  if (semi_infinite && m.kernel < m.smallest.size()) {
    v.nonclosed = m.smallest[m.kernel] < cfg.closed_range_floor;
  }
  return v;
}

// Follows the k-th smallest singular value from one truncation to the next.
// With assume_closed no range is read as non-closed and a value decaying
// faster than closed_kernel_ratio counts as a kernel vector.
MapVerdict paired_verdict(const MapSpectrum& prev, const MapSpectrum& last, const ToleranceConfig& cfg,
                          bool assume_closed) {
  const double kernel_ratio = assume_closed ? cfg.closed_kernel_ratio : cfg.kernel_decay_ratio;
  MapVerdict v;
  const std::size_t lim = std::min(prev.smallest.size(), last.smallest.size());
  std::size_t k = 0;
  double ratio = std::numeric_limits<double>::infinity();
  while (k < lim) {
    const double sl = last.smallest[k];
    const double sp = prev.smallest[k];
    if (sl <= last.threshold) {
      ++k;
      continue;
    }
    ratio = sp > 0.0 ? sl / sp : std::numeric_limits<double>::infinity();
    if (ratio < kernel_ratio) {
      ++k;
      continue;
    }
    break;
  }
  v.kernel = std::max(k, last.kernel);
  if (assume_closed) {
    v.boundary = k < lim && ratio < kernel_ratio + cfg.boundary_margin;
  } else if (k < lim) {
    v.nonclosed = ratio < cfg.decay_ratio || last.smallest[k] < cfg.closed_range_floor;
    if (!v.nonclosed && ratio < cfg.decay_ratio + cfg.boundary_margin) {
      v.boundary = true;
      v.nonclosed = true;
    }
  }
  return v;
}

struct Signature {
  std::array<std::size_t, 3> h{0, 0, 0};
  bool nc0 = false, nc1 = false, ncH = false, boundary = false;

  bool same(const Signature& o) const {
    return h == o.h && nc0 == o.nc0 && nc1 == o.nc1 && ncH == o.ncH;
  }
};

Signature signature_of(const MapVerdict& v0, const MapVerdict& vh, const MapVerdict& v2,
                       const CohomologyReport& last) {
  Signature s;
  s.h[0] = v0.kernel;
  s.nc0 = v0.nonclosed;
  s.nc1 = v2.nonclosed;
  s.boundary = v0.boundary || vh.boundary || v2.boundary;
  if (last.hodge) {
    s.h[1] = vh.kernel;
    s.ncH = vh.nonclosed;
    if (s.h[1] == 0 && (s.nc0 || s.ncH)) s.h[1] = 1;
  } else {
    s.h[1] = last.h1;
  }
  s.h[2] = v2.kernel;
  if (s.h[2] == 0 && s.nc1) s.h[2] = 1;
  return s;
}

void add_flag(PointClassification& pc, const std::string& f) {
  if (!pc.has_flag(f)) pc.flags.push_back(f);
}

void derive_sets(PointClassification& pc) {
  const bool s0 = pc.h[0] > 0, s1 = pc.h[1] > 0, s2 = pc.h[2] > 0;
  pc.in_sigma = pc.in_sigma || s0 || s1 || s2 || pc.nonclosed_d0 || pc.nonclosed_d1;
  pc.in_sigma_pi = {s0 || pc.nonclosed_d0, s0 || s1 || pc.nonclosed_d1, pc.in_sigma};
  pc.in_sigma_delta = {pc.in_sigma, s1 || s2, s2};
}

KoszulComplex build_variant(const QPair& pair, const CharacterPoint& gamma, ComplexVariant variant,
                            Truncation trunc) {
  switch (variant) {
    case ComplexVariant::K: return build_K(pair, gamma, trunc);
    case ComplexVariant::L:
      if (gamma.axis != Axis::X) throw Error(ErrorCode::BadParameter, "L complex lives on axis X");
      return build_L(pair, gamma.value, trunc);
    case ComplexVariant::R:
      if (gamma.axis != Axis::Y) throw Error(ErrorCode::BadParameter, "R complex lives on axis Y");
      return build_R(pair, gamma.value, trunc);
  }
  throw Error(ErrorCode::BadParameter, "unknown variant");
}

}  // namespace

CohomologyReport cohomology_dims(const KoszulComplex& cx, const ToleranceConfig& cfg) {
  CohomologyReport r;
  r.trunc = cx.trunc;
  r.n = cx.n();
  r.hodge = cx.semi_infinite && cx.trunc.rows == cx.trunc.cols + 1;
  const long n = static_cast<long>(r.n);
  if (r.hodge) {
    Eigen::MatrixXcd h1op(2 * n + 1, 2 * n);
    h1op << cx.a.topRows(n).adjoint(), cx.b.topRows(n).adjoint(), cx.c, cx.d;
    Eigen::MatrixXcd d1s(2 * n, n);
    d1s << cx.c.topRows(n).adjoint(), cx.d.topRows(n).adjoint();
    const Eigen::MatrixXcd d0 = cx.d0();
    measure(r, {&d0, &h1op, &d1s}, cfg);
    r.h0 = r.maps[0].kernel;
    r.h1 = r.maps[1].kernel;
    r.h2 = r.maps[2].kernel;
  } else {
    const Eigen::MatrixXcd d0 = cx.d0();
    const Eigen::MatrixXcd d1s = cx.d1().adjoint();
    measure(r, {&d0, nullptr, &d1s}, cfg);
    r.h0 = r.maps[0].kernel;
    r.h2 = r.maps[2].kernel;
    r.h1 = 2 * r.n - (r.n - r.h0) - (r.n - r.h2);
  }
  r.rank_d0 = r.n - r.h0;
  r.rank_d1 = r.n - r.h2;
  r.sigma_min_d0 = r.maps[0].smin_nonzero;
  r.sigma_min_d1_adjoint = r.maps[2].smin_nonzero;
  r.sigma_min_h1 = r.maps[1].smin_nonzero;
  r.closed_range_d0 = r.rank_d0 == 0 || r.sigma_min_d0 >= cfg.closed_range_floor;
  r.closed_range_d1 = r.rank_d1 == 0 || r.sigma_min_d1_adjoint >= cfg.closed_range_floor;
  return r;
}

bool PointClassification::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

json PointClassification::to_json() const {
  json reps = json::array();
  for (const auto& r : schedule_reports) reps.push_back(r.to_json());
  return json{{"point", point.to_json()},
              {"variant", variant_name(variant)},
              {"h", h},
              {"nonclosed_d0", nonclosed_d0},
              {"nonclosed_d1", nonclosed_d1},
              {"nonclosed_h1", nonclosed_h1},
              {"fredholm", fredholm},
              {"in_sigma", in_sigma},
              {"in_sigma_e", in_sigma_e},
              {"in_sigma_pi", in_sigma_pi},
              {"in_sigma_delta", in_sigma_delta},
              {"in_sigma_l_or_r", in_sigma_l_or_r},
              {"flags", flags},
              {"schedule_reports", reps}};
}

PointClassification PointClassification::from_json(const json& j) {
  try {
    PointClassification pc;
    pc.point = CharacterPoint::from_json(j.at("point"));
    const auto v = j.at("variant").get<std::string>();
    pc.variant = v == "L" ? ComplexVariant::L : v == "R" ? ComplexVariant::R : ComplexVariant::K;
    pc.h = j.at("h").get<std::array<std::size_t, 3>>();
    pc.nonclosed_d0 = j.at("nonclosed_d0").get<bool>();
    pc.nonclosed_d1 = j.at("nonclosed_d1").get<bool>();
    pc.nonclosed_h1 = j.at("nonclosed_h1").get<bool>();
    pc.fredholm = j.at("fredholm").get<bool>();
    pc.in_sigma = j.at("in_sigma").get<bool>();
    pc.in_sigma_e = j.at("in_sigma_e").get<bool>();
    pc.in_sigma_pi = j.at("in_sigma_pi").get<std::array<bool, 3>>();
    pc.in_sigma_delta = j.at("in_sigma_delta").get<std::array<bool, 3>>();
    pc.in_sigma_l_or_r = j.at("in_sigma_l_or_r").get<bool>();
    pc.flags = j.at("flags").get<std::vector<std::string>>();
    for (const auto& r : j.at("schedule_reports")) pc.schedule_reports.push_back(CohomologyReport::from_json(r));
    if (pc.schedule_reports.empty()) throw Error(ErrorCode::ParseError, "classification without reports");
    pc.report = pc.schedule_reports.back();
    return pc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("classification: ") + e.what());
  }
}

namespace {

// Reads dimensions, closed-range and Fredholm verdicts from pc.schedule_reports.
void finalize(PointClassification& pc, const ToleranceConfig& cfg, bool semi, bool assume_closed) {
  pc.flags.clear();
  pc.in_sigma = false;
  const auto& reps = pc.schedule_reports;
  std::vector<Signature> sigs;
  if (reps.size() == 1) {
    sigs.push_back(signature_of(single_verdict(reps[0].maps[0], cfg, semi && !assume_closed),
                                single_verdict(reps[0].maps[1], cfg, semi && !assume_closed && reps[0].hodge),
                                single_verdict(reps[0].maps[2], cfg, semi && !assume_closed), reps[0]));
    if (semi) add_flag(pc, "single-truncation");
  } else {
    for (std::size_t i = 1; i < reps.size(); ++i) {
      sigs.push_back(signature_of(paired_verdict(reps[i - 1].maps[0], reps[i].maps[0], cfg, assume_closed),
                                  paired_verdict(reps[i - 1].maps[1], reps[i].maps[1], cfg, assume_closed),
                                  paired_verdict(reps[i - 1].maps[2], reps[i].maps[2], cfg, assume_closed),
                                  reps[i]));
    }
  }
  const Signature& last = sigs.back();
  pc.h = last.h;
  pc.nonclosed_d0 = last.nc0;
  pc.nonclosed_d1 = last.nc1;
  pc.nonclosed_h1 = last.ncH;
  if (last.boundary) add_flag(pc, "boundary");

  bool growing = false;
  bool oscillating = false;
  for (std::size_t k = 0; k < 3; ++k) {
    bool nondecreasing = true;
    for (std::size_t i = 1; i < sigs.size(); ++i) nondecreasing = nondecreasing && sigs[i].h[k] >= sigs[i - 1].h[k];
    if (nondecreasing && sigs.back().h[k] > sigs.front().h[k]) growing = true;
    if (!nondecreasing) oscillating = true;
  }
  for (std::size_t i = 0; i + 1 < sigs.size(); ++i) {
    if (!sigs[i].same(last) && !growing) oscillating = true;
  }
  if (growing) add_flag(pc, "growing-defect");
  if (oscillating) add_flag(pc, "inconclusive");

  const auto cap = static_cast<std::size_t>(cfg.fredholm_dim_cap);
  pc.fredholm = !(last.nc0 || last.nc1 || last.ncH) && !growing &&
                std::all_of(last.h.begin(), last.h.end(), [cap](std::size_t d) { return d <= cap; });
  pc.in_sigma_e = !pc.fredholm;
  derive_sets(pc);
  pc.in_sigma_l_or_r = pc.in_sigma;
}

}  // namespace

PointClassification classify_variant(const QPair& pair, const CharacterPoint& gamma,
                                     ComplexVariant variant, const ToleranceConfig& cfg) {
  cfg.validate();
  PointClassification pc;
  pc.point = gamma;
  pc.variant = variant;

  if (auto n = pair.dimension()) {
    pc.schedule_reports.push_back(cohomology_dims(build_variant(pair, gamma, variant, Truncation::square(*n)), cfg));
  } else {
    for (std::size_t N : cfg.truncation_schedule) {
      pc.schedule_reports.push_back(cohomology_dims(build_variant(pair, gamma, variant, Truncation::tall(N)), cfg));
    }
  }
  pc.report = pc.schedule_reports.back();
  finalize(pc, cfg, pair.semi_infinite(), false);
  return pc;
}

std::optional<bool> compact_factor_essential_rule(const QPair& pair, const CharacterPoint& gamma,
                                                  double band) {
  if (!pair.semi_infinite()) return std::nullopt;
  const Complex z = gamma.value.value();
  const Complex q = pair.q().value();
  if (gamma.axis == Axis::X && pair.flags().s_compact) {
    ComplexSet e = pair.T().essential_spectrum();
    return e.contains(z, band) || e.scaled(1.0 / q).contains(z, band);
  }
  if (gamma.axis == Axis::Y && pair.flags().t_compact) {
    ComplexSet e = pair.S().essential_spectrum();
    return e.contains(z, band) || e.scaled(q).contains(z, band);
  }
  return std::nullopt;
}

PointClassification classify_point(const QPair& pair, const CharacterPoint& gamma,
                                   const ToleranceConfig& cfg) {
  PointClassification pc = classify_variant(pair, gamma, ComplexVariant::K, cfg);
  const bool numeric_sigma = pc.in_sigma;
  if (pair.semi_infinite()) {
    if (auto rule = compact_factor_essential_rule(pair, gamma, cfg.essential_band)) {
      if (!*rule && pc.in_sigma_e) {
        // A Fredholm complex has closed ranges; reread the same spectra under that constraint.
        finalize(pc, cfg, true, true);
        add_flag(pc, "fredholm-by-rule");
      } else if (*rule && !pc.in_sigma_e) {
        add_flag(pc, "essential-rule");
      }
      pc.in_sigma_e = *rule;
      if (*rule && !pc.in_sigma) {
        pc.in_sigma = true;
        derive_sets(pc);
      }
    }
  } else {
    pc.in_sigma_e = false;
  }
  pc.in_sigma_l_or_r = pc.in_sigma;
  if (cfg.cross_check_lr) {
    const auto v = gamma.axis == Axis::X ? ComplexVariant::L : ComplexVariant::R;
    PointClassification other = classify_variant(pair, gamma, v, cfg);
    pc.in_sigma_l_or_r = other.in_sigma;
    if (other.in_sigma != numeric_sigma) {
      add_flag(pc, "lr-mismatch");
    }
  }
  return pc;
}

json LeftBoundReport::to_json() const {
  json s = json::array();
  for (const auto& x : samples) {
    s.push_back({{"lambda", scalar_to_json(x.lambda)},
                 {"inside_bound", x.inside_bound},
                 {"resolvent", x.resolvent},
                 {"violation", x.violation}});
  }
  return json{{"bound", bound.describe()},
              {"s_invertible", s_invertible},
              {"violations", violations},
              {"ok", ok()},
              {"samples", s}};
}

LeftBoundReport left_spectrum_bound_check(const QPair& pair, const std::vector<Scalar>& samples,
                                          const ToleranceConfig& cfg) {
  LeftBoundReport rep;
  const ComplexSet st = pair.T().spectrum();
  rep.bound = st.united(st.scaled(1.0 / pair.q().value()));
  rep.s_invertible = pair.flags().s_invertible.value_or(false);
  for (const auto& lambda : samples) {
    LeftBoundSample s;
    s.lambda = lambda;
    const double slack = std::max(cfg.essential_band, 1e-8 * std::max(1.0, lambda.abs()));
    s.inside_bound = rep.bound.contains(lambda.value(), slack);
    s.resolvent = !classify_variant(pair, {Axis::X, lambda}, ComplexVariant::L, cfg).in_sigma;
    s.violation = !s.resolvent && (rep.s_invertible || !s.inside_bound);
    if (s.violation) ++rep.violations;
    rep.samples.push_back(s);
  }
  return rep;
}

const char* csv_header() {
  return "axis,re,im,h0,h1,h2,smin0,smin1,in_sigma,in_sigma_e,pi0,pi1,pi2,delta0,delta1,delta2,flags";
}

std::string csv_row(const PointClassification& pc) {
  char buf[512];
  const Complex z = pc.point.value.value();
  std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%zu,%zu,%zu,%.17g,%.17g,%d,%d,%d,%d,%d,%d,%d,%d,",
                axis_name(pc.point.axis), z.real(), z.imag(), pc.h[0], pc.h[1], pc.h[2], pc.smin0(),
                pc.smin1(), pc.in_sigma, pc.in_sigma_e, pc.in_sigma_pi[0], pc.in_sigma_pi[1],
                pc.in_sigma_pi[2], pc.in_sigma_delta[0], pc.in_sigma_delta[1], pc.in_sigma_delta[2]);
  std::string row = buf;
  for (std::size_t i = 0; i < pc.flags.size(); ++i) {
    if (i) row += ';';
    row += pc.flags[i];
  }
  return row;
}

}  // namespace qplane
