#include "qplane/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "qplane/error.hpp"

namespace qplane {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const char* kind_name(GridSpec::Kind k) {
  switch (k) {
    case GridSpec::Kind::Cartesian: return "cartesian";
    case GridSpec::Kind::Polar: return "polar";
    case GridSpec::Kind::Points: return "points";
  }
  return "?";
}

const char* selection_name(AxisSelection a) {
  switch (a) {
    case AxisSelection::X: return "X";
    case AxisSelection::Y: return "Y";
    case AxisSelection::Both: return "both";
  }
  return "?";
}

AxisSelection selection_from_string(const std::string& s) {
  if (s == "X" || s == "x") return AxisSelection::X;
  if (s == "Y" || s == "y") return AxisSelection::Y;
  if (s == "both" || s == "XY" || s == "xy") return AxisSelection::Both;
  throw Error(ErrorCode::ParseError, "unknown axis selection '" + s + "'");
}

void bad(const std::string& m) { throw Error(ErrorCode::BadParameter, m); }

}  // namespace

void GridSpec::validate() const {
  if (!std::isfinite(center.value().real()) || !std::isfinite(center.value().imag())) bad("grid center must be finite");
  if (refine_depth < 0) bad("refine_depth must be >= 0");
  switch (kind) {
    case Kind::Cartesian:
      if (resolution < 2) bad("resolution must be >= 2");
      if (!(half_width > 0.0) || !std::isfinite(half_width)) bad("half_width must be positive");
      break;
    case Kind::Polar:
      if (angles < 1 || radii < 2) bad("polar grid needs angles >= 1 and radii >= 2");
      if (!(r_min >= 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) bad("polar grid needs 0 <= r_min < r_max");
      break;
    case Kind::Points:
      if (refine_depth != 0) bad("point lists cannot be refined");
      break;
  }
}

double GridSpec::spacing() const {
  switch (kind) {
    case Kind::Cartesian: return 2.0 * half_width / (resolution - 1);
    case Kind::Polar: return (r_max - r_min) / (radii - 1);
    case Kind::Points: return 0.0;
  }
  return 0.0;
}

json GridSpec::to_json() const {
  json j{{"schema", 1}, {"kind", kind_name(kind)}, {"refine_depth", refine_depth}};
  switch (kind) {
    case Kind::Cartesian:
      j["axis"] = selection_name(axis);
      j["center"] = scalar_to_json(center);
      j["half_width"] = half_width;
      j["resolution"] = resolution;
      break;
    case Kind::Polar:
      j["axis"] = selection_name(axis);
      j["angles"] = angles;
      j["radii"] = radii;
      j["r_min"] = r_min;
      j["r_max"] = r_max;
      break;
    case Kind::Points: {
      json pts = json::array();
      for (const auto& p : points) pts.push_back(p.to_json());
      j["points"] = std::move(pts);
      break;
    }
  }
  return j;
}

GridSpec GridSpec::from_json(const json& j) {
  try {
    if (j.value("schema", 1) != 1) throw Error(ErrorCode::ParseError, "unsupported grid schema");
    GridSpec g;
    const std::string kind = j.value("kind", std::string("cartesian"));
    if (kind == "cartesian") {
      g.kind = Kind::Cartesian;
    } else if (kind == "polar") {
      g.kind = Kind::Polar;
    } else if (kind == "points") {
      g.kind = Kind::Points;
    } else {
      throw Error(ErrorCode::ParseError, "unknown grid kind '" + kind + "'");
    }
    if (j.contains("axis")) g.axis = selection_from_string(j.at("axis").get<std::string>());
    if (j.contains("center")) g.center = scalar_from_json(j.at("center"));
    g.half_width = j.value("half_width", g.half_width);
    g.resolution = j.value("resolution", g.resolution);
    g.refine_depth = j.value("refine_depth", g.refine_depth);
    g.angles = j.value("angles", g.angles);
    g.radii = j.value("radii", g.radii);
    g.r_min = j.value("r_min", g.r_min);
    g.r_max = j.value("r_max", g.r_max);
    if (j.contains("points")) {
      for (const auto& p : j.at("points")) {
        g.points.push_back(p.is_string() ? CharacterPoint::parse(p.get<std::string>()) : CharacterPoint::from_json(p));
      }
    }
    g.validate();
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("grid: ") + e.what());
  }
}

std::vector<GridSpec> grids_from_json(const json& j) {
  std::vector<GridSpec> out;
  if (j.is_object() && j.contains("grids")) {
    if (j.value("schema", 1) != 1) throw Error(ErrorCode::ParseError, "unsupported grid schema");
    for (const auto& g : j.at("grids")) out.push_back(GridSpec::from_json(g));
  } else if (j.is_array()) {
    for (const auto& g : j) out.push_back(GridSpec::from_json(g));
  } else {
    out.push_back(GridSpec::from_json(j));
  }
  return out;
}

std::vector<GridSpec> default_model_grids(const Scalar& q) {
  GridSpec x;
  x.kind = GridSpec::Kind::Polar;
  x.axis = AxisSelection::X;
  x.angles = 24;
  x.radii = 40;
  x.r_min = 0.0;
  x.r_max = 1.25 / q.abs();

  GridSpec y;
  y.kind = GridSpec::Kind::Points;
  y.axis = AxisSelection::Y;
  y.points.push_back({Axis::Y, Scalar(0.0)});
  GaussRational power(1);
  for (int k = 0; k <= 12; ++k) {
    y.points.push_back({Axis::Y, Scalar(power)});
    power *= q.exact();
  }

  GridSpec disk;
  disk.kind = GridSpec::Kind::Polar;
  disk.axis = AxisSelection::Y;
  disk.angles = 8;
  disk.radii = 5;
  disk.r_min = 0.0;
  disk.r_max = 1.25;
  return {x, y, disk};
}

// ---------------------------------------------------------------------------

namespace {

struct Param {
  double u, v;
};

using Key = std::pair<long long, long long>;

struct Run {
  const GridSpec* grid;
  Axis axis;
};

Complex to_complex(const GridSpec& g, double u, double v) {
  if (g.kind == GridSpec::Kind::Polar) return std::polar(u, v);
  return g.center.value() + Complex(u, v);
}

Key key_of(const GridSpec& g, double u, double v) {
  if (g.kind == GridSpec::Kind::Polar) {
    if (u == 0.0) return {0, 0};
    const long long period = std::llround(kTwoPi * 1e12);
    long long kv = std::llround(v * 1e12) % period;
    if (kv < 0) kv += period;
    return {std::llround(u * 1e12), kv};
  }
  return {std::llround(u * 1e12), std::llround(v * 1e12)};
}

struct Cell {
  double u0, u1, v0, v1;
};

std::vector<PointClassification> classify_batch(const QPair& pair, const std::vector<CharacterPoint>& pts,
                                                const ToleranceConfig& cfg) {
  std::vector<PointClassification> out(pts.size());
  std::vector<std::exception_ptr> errors(pts.size());
  unsigned workers = std::max(1u, cfg.workers);
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, pts.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= pts.size()) return;
      try {
        out[i] = classify_point(pair, pts[i], cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void scan_run(const QPair& pair, const Run& run, const ToleranceConfig& cfg, SpectralPortrait& portrait,
              std::size_t grid_idx) {
  const GridSpec& g = *run.grid;
  auto append = [&](const std::vector<CharacterPoint>& pts) {
    auto res = classify_batch(pair, pts, cfg);
    for (auto& r : res) {
      portrait.points.push_back(std::move(r));
      portrait.grid_index.push_back(grid_idx);
    }
  };

  if (g.kind == GridSpec::Kind::Points) {
    append(g.points);
    return;
  }

  std::vector<double> us, vs;
  if (g.kind == GridSpec::Kind::Cartesian) {
    for (int i = 0; i < g.resolution; ++i) {
      const double t = -g.half_width + 2.0 * g.half_width * i / (g.resolution - 1);
      us.push_back(t);
      vs.push_back(t);
    }
  } else {
    for (int i = 0; i < g.radii; ++i) us.push_back(g.r_min + (g.r_max - g.r_min) * i / (g.radii - 1));
    for (int a = 0; a <= g.angles; ++a) vs.push_back(kTwoPi * a / g.angles);
  }

  std::map<Key, std::size_t> index;
  std::vector<CharacterPoint> base;
  std::vector<Key> base_keys;
  const std::size_t offset = portrait.points.size();
  if (g.kind == GridSpec::Kind::Cartesian) {
    for (double v : vs) {
      for (double u : us) {
        base.push_back({run.axis, Scalar(to_complex(g, u, v))});
        base_keys.push_back(key_of(g, u, v));
      }
    }
  } else {
    for (double u : us) {
      for (int a = 0; a < g.angles; ++a) {
        const Key k = key_of(g, u, vs[a]);
        if (u == 0.0 && a > 0) continue;
        base.push_back({run.axis, Scalar(u == 0.0 ? Complex(0.0, 0.0) : to_complex(g, u, vs[a]))});
        base_keys.push_back(k);
      }
    }
  }
  append(base);
  for (std::size_t i = 0; i < base_keys.size(); ++i) index.emplace(base_keys[i], offset + i);

  std::vector<Cell> cells;
  const std::size_t nv = g.kind == GridSpec::Kind::Cartesian ? vs.size() - 1 : static_cast<std::size_t>(g.angles);
  for (std::size_t i = 0; i + 1 < us.size(); ++i) {
    for (std::size_t a = 0; a < nv; ++a) cells.push_back({us[i], us[i + 1], vs[a], vs[a + 1]});
  }

  for (int depth = 1; depth <= g.refine_depth; ++depth) {
    std::vector<Cell> next;
    std::vector<CharacterPoint> fresh;
    std::vector<Key> fresh_keys;
    std::set<Key> pending;
    for (const Cell& c : cells) {
      const std::array<Key, 4> corners{key_of(g, c.u0, c.v0), key_of(g, c.u1, c.v0), key_of(g, c.u0, c.v1),
                                       key_of(g, c.u1, c.v1)};
      bool any = false, all = true;
      for (const Key& k : corners) {
        const bool s = portrait.points[index.at(k)].in_sigma;
        any = any || s;
        all = all && s;
      }
      if (any == all) continue;
      const double um = 0.5 * (c.u0 + c.u1), vm = 0.5 * (c.v0 + c.v1);
      const std::array<Param, 5> mids{Param{um, vm}, Param{um, c.v0}, Param{um, c.v1}, Param{c.u0, vm},
                                      Param{c.u1, vm}};
      for (const Param& p : mids) {
        const Key k = key_of(g, p.u, p.v);
        if (index.count(k) || pending.count(k)) continue;
        pending.insert(k);
        fresh.push_back({run.axis, Scalar(p.u == 0.0 && g.kind == GridSpec::Kind::Polar ? Complex(0.0, 0.0)
                                                                                      : to_complex(g, p.u, p.v))});
        fresh_keys.push_back(k);
      }
      next.push_back({c.u0, um, c.v0, vm});
      next.push_back({um, c.u1, c.v0, vm});
      next.push_back({c.u0, um, vm, c.v1});
      next.push_back({um, c.u1, vm, c.v1});
    }
    if (next.empty()) break;
    const std::size_t at = portrait.points.size();
    append(fresh);
    for (std::size_t i = 0; i < fresh_keys.size(); ++i) index.emplace(fresh_keys[i], at + i);
    cells = std::move(next);
  }
}

json config_snapshot(const ToleranceConfig& cfg) {
  json j = cfg.to_json();
  j.erase("workers");  // scheduling only
  return j;
}

void extend(PortraitSummary::Box& b, Complex z) {
  if (b.empty) {
    b = {false, z.real(), z.real(), z.imag(), z.imag()};
    return;
  }
  b.min_re = std::min(b.min_re, z.real());
  b.max_re = std::max(b.max_re, z.real());
  b.min_im = std::min(b.min_im, z.imag());
  b.max_im = std::max(b.max_im, z.imag());
}

json box_json(const PortraitSummary::Box& b) {
  if (b.empty) return nullptr;
  return json{{"min_re", b.min_re}, {"max_re", b.max_re}, {"min_im", b.min_im}, {"max_im", b.max_im}};
}

}  // namespace

json PortraitSummary::to_json() const {
  return json{{"total", total},
              {"sigma", sigma},
              {"sigma_e", sigma_e},
              {"sigma_x", sigma_x},
              {"sigma_y", sigma_y},
              {"sigma_pi", pi},
              {"sigma_delta", delta},
              {"inconclusive", inconclusive},
              {"boundary", boundary},
              {"box_x", box_json(box_x)},
              {"box_y", box_json(box_y)}};
}

PortraitSummary SpectralPortrait::summary() const {
  PortraitSummary s;
  s.total = points.size();
  for (const auto& p : points) {
    if (p.in_sigma) {
      ++s.sigma;
      const Complex z = p.point.value.value();
      if (p.point.axis == Axis::X) {
        ++s.sigma_x;
        extend(s.box_x, z);
      } else {
        ++s.sigma_y;
        extend(s.box_y, z);
      }
    }
    if (p.in_sigma_e) ++s.sigma_e;
    for (int k = 0; k < 3; ++k) {
      if (p.in_sigma_pi[k]) ++s.pi[k];
      if (p.in_sigma_delta[k]) ++s.delta[k];
    }
    if (p.has_flag("inconclusive")) ++s.inconclusive;
    if (p.has_flag("boundary")) ++s.boundary;
  }
  return s;
}

json SpectralPortrait::to_json() const {
  json g = json::array();
  for (const auto& x : grids) g.push_back(x.to_json());
  json pts = json::array();
  for (const auto& p : points) pts.push_back(p.to_json());
  return json{{"schema", 1},
              {"pair", pair},
              {"config", config_snapshot(cfg)},
              {"grids", std::move(g)},
              {"essential_bands", essential_bands},
              {"grid_index", grid_index},
              {"points", std::move(pts)},
              {"summary", summary().to_json()}};
}

SpectralPortrait SpectralPortrait::from_json(const json& j) {
  try {
    if (j.value("schema", 0) != 1) throw Error(ErrorCode::ParseError, "unsupported portrait schema");
    SpectralPortrait p;
    p.pair = j.at("pair");
    p.cfg = ToleranceConfig::from_json(j.at("config"));
    for (const auto& g : j.at("grids")) p.grids.push_back(GridSpec::from_json(g));
    p.essential_bands = j.at("essential_bands").get<std::vector<double>>();
    p.grid_index = j.at("grid_index").get<std::vector<std::size_t>>();
    for (const auto& x : j.at("points")) p.points.push_back(PointClassification::from_json(x));
    if (p.grid_index.size() != p.points.size()) throw Error(ErrorCode::ParseError, "grid_index length mismatch");
    for (std::size_t gi : p.grid_index) {
      if (gi >= p.grids.size()) throw Error(ErrorCode::ParseError, "grid_index out of range");
    }
    if (p.summary().to_json() != j.at("summary")) {
      throw Error(ErrorCode::ParseError, "portrait summary disagrees with its points");
    }
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("portrait: ") + e.what());
  }
}

SpectralPortrait scan(const QPair& pair, const std::vector<GridSpec>& grids, const ToleranceConfig& cfg) {
  cfg.validate();
  SpectralPortrait portrait;
  portrait.pair = pair.to_json();
  portrait.cfg = cfg;
  portrait.grids = grids;
  for (std::size_t gi = 0; gi < grids.size(); ++gi) {
    const GridSpec& g = grids[gi];
    g.validate();
    ToleranceConfig local = cfg;
    local.essential_band = std::max(cfg.essential_band, 0.5 * g.spacing());
    portrait.essential_bands.push_back(local.essential_band);
    if (g.kind == GridSpec::Kind::Points) {
      scan_run(pair, {&g, Axis::X}, local, portrait, gi);
      continue;
    }
    if (g.axis != AxisSelection::Y) scan_run(pair, {&g, Axis::X}, local, portrait, gi);
    if (g.axis != AxisSelection::X) scan_run(pair, {&g, Axis::Y}, local, portrait, gi);
  }
  return portrait;
}

SpectralPortrait scan(const QPair& pair, const GridSpec& grid, const ToleranceConfig& cfg) {
  return scan(pair, std::vector<GridSpec>{grid}, cfg);
}

// ---------------------------------------------------------------------------

json ProjectionReport::to_json() const {
  auto list = [](const std::vector<CharacterPoint>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back(p.to_json());
    return a;
  };
  return json{{"q_projection_holds", q_projection_holds},
              {"naive_forward_holds", naive_forward_holds},
              {"naive_backward_holds", naive_backward_holds},
              {"q_projection_violations", list(q_projection_violations)},
              {"forward_violations", list(forward_violations)},
              {"backward_violations", list(backward_violations)},
              {"backward_tested", backward_tested},
              {"dilation", dilation}};
}

ProjectionReport verify_q_projection(const SpectralPortrait& portrait, const ComplexSet& sigma_T,
                                     const ComplexSet& sigma_S, const Scalar& q, std::optional<double> dilation) {
  ProjectionReport rep;
  const Complex qv = q.value();
  const ComplexSet x_set = sigma_T.united(sigma_T.scaled(1.0 / qv));
  const ComplexSet y_set = sigma_S.united(sigma_S.scaled(qv));
  constexpr double kFloor = 1e-9;
  auto dil_of = [&](std::size_t i) {
    if (dilation) return std::max(*dilation, kFloor);
    const std::size_t gi = i < portrait.grid_index.size() ? portrait.grid_index[i] : 0;
    const double s = gi < portrait.grids.size() ? portrait.grids[gi].spacing() : 0.0;
    return std::max(s, kFloor);
  };
  for (std::size_t i = 0; i < portrait.points.size(); ++i) {
    const auto& pc = portrait.points[i];
    const Complex z = pc.point.value.value();
    const double dil = dil_of(i);
    rep.dilation = std::max(rep.dilation, dil);
    const bool origin = pc.point.value.is_zero();
    const bool on_x = origin || pc.point.axis == Axis::X;
    const bool on_y = origin || pc.point.axis == Axis::Y;

    if (pc.in_sigma) {
      const bool ok = (on_x && x_set.contains(z, dil)) || (on_y && y_set.contains(z, dil));
      if (!ok) rep.q_projection_violations.push_back(pc.point);
      if (on_x && !sigma_T.contains(z, dil)) rep.forward_violations.push_back(pc.point);
    }
    // Backward: only sampled points that are themselves in sigma(S) can be tested.
    if (on_y && sigma_S.contains(z, kFloor * std::max(1.0, std::abs(z)))) {
      ++rep.backward_tested;
      if (!pc.in_sigma) rep.backward_violations.push_back(pc.point);
    }
  }
  rep.q_projection_holds = rep.q_projection_violations.empty();
  rep.naive_forward_holds = rep.forward_violations.empty();
  rep.naive_backward_holds = rep.backward_violations.empty();
  return rep;
}

ProjectionReport verify_q_projection(const SpectralPortrait& portrait, const QPair& pair) {
  return verify_q_projection(portrait, pair.T().spectrum(), pair.S().spectrum(), pair.q(), std::nullopt);
}

// ---------------------------------------------------------------------------

PortraitFormat format_from_path(const std::string& path) {
  auto ends = [&](const char* ext) {
    const std::string e(ext);
    return path.size() >= e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0;
  };
  if (ends(".csv")) return PortraitFormat::Csv;
  if (ends(".json")) return PortraitFormat::Json;
  if (ends(".svg")) return PortraitFormat::Svg;
  throw Error(ErrorCode::BadParameter, "cannot infer output format from '" + path + "'");
}

std::string portrait_csv(const SpectralPortrait& portrait) {
  std::string out = csv_header();
  out += '\n';
  for (const auto& p : portrait.points) {
    out += csv_row(p);
    out += '\n';
  }
  return out;
}

namespace {

const char* membership_class(const PointClassification& p) {
  if (p.has_flag("inconclusive")) return "inconclusive";
  if (p.in_sigma_e) return "essential";
  if (p.in_sigma) return "spectral";
  return "resolvent";
}

const char* class_color(const std::string& c) {
  if (c == "essential") return "#c0392b";
  if (c == "spectral") return "#2e6fba";
  if (c == "inconclusive") return "#f39c12";
  return "#e4e4e4";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void panel(std::ostringstream& os, const SpectralPortrait& portrait, Axis axis, double x0, double y0,
           double size) {
  double extent = 0.0;
  std::size_t count = 0;
  for (const auto& p : portrait.points) {
    if (p.point.axis != axis) continue;
    const Complex z = p.point.value.value();
    extent = std::max({extent, std::abs(z.real()), std::abs(z.imag())});
    ++count;
  }
  if (extent == 0.0) extent = 1.0;
  extent *= 1.08;
  const double half = size / 2.0;
  const double scale = half / extent;
  const double cx = x0 + half, cy = y0 + half;
  os << "<g class=\"panel\" data-axis=\"" << axis_name(axis) << "\">\n";
  os << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y0) << "\" width=\"" << fmt(size) << "\" height=\""
     << fmt(size) << "\" fill=\"#ffffff\" stroke=\"#888888\"/>\n";
  os << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(cy) << "\" x2=\"" << fmt(x0 + size) << "\" y2=\""
     << fmt(cy) << "\" stroke=\"#bbbbbb\"/>\n";
  os << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(cx) << "\" y2=\""
     << fmt(y0 + size) << "\" stroke=\"#bbbbbb\"/>\n";
  os << "<text x=\"" << fmt(x0) << "\" y=\"" << fmt(y0 - 8) << "\" font-family=\"sans-serif\" font-size=\"14\">axis "
     << axis_name(axis) << " (" << count << " points, |re|,|im| &lt;= " << fmt(extent) << ")</text>\n";
  // Resolvent points first so that spectral ones stay on top.
  for (int layer = 0; layer < 2; ++layer) {
    for (const auto& p : portrait.points) {
      if (p.point.axis != axis) continue;
      const std::string cls = membership_class(p);
      if ((cls == "resolvent") != (layer == 0)) continue;
      const Complex z = p.point.value.value();
      os << "<circle class=\"" << cls << "\" cx=\"" << fmt(cx + scale * z.real()) << "\" cy=\""
         << fmt(cy - scale * z.imag()) << "\" r=\"3\" fill=\"" << class_color(cls) << "\"/>\n";
    }
  }
  os << "</g>\n";
}

}  // namespace

std::string portrait_svg(const SpectralPortrait& portrait) {
  const double size = 400.0, margin = 30.0;
  const double width = 2 * size + 3 * margin;
  const double height = size + 2 * margin + 40.0;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
     << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#fafafa\"/>\n";
  panel(os, portrait, Axis::X, margin, margin, size);
  panel(os, portrait, Axis::Y, 2 * margin + size, margin, size);
  os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  double lx = margin;
  const double ly = margin + size + 25.0;
  for (const char* c : {"resolvent", "spectral", "essential", "inconclusive"}) {
    os << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly - 10) << "\" width=\"12\" height=\"12\" fill=\""
       << class_color(c) << "\" stroke=\"#666666\"/>\n";
    os << "<text x=\"" << fmt(lx + 18) << "\" y=\"" << fmt(ly) << "\">" << c << "</text>\n";
    lx += 120.0;
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string render_portrait(const SpectralPortrait& portrait, PortraitFormat format) {
  switch (format) {
    case PortraitFormat::Csv: return portrait_csv(portrait);
    case PortraitFormat::Json: return portrait.to_json().dump(1) + "\n";
    case PortraitFormat::Svg: return portrait_svg(portrait);
  }
  return {};
}

void emit(const SpectralPortrait& portrait, PortraitFormat format, const std::string& path) {
  const std::string text = render_portrait(portrait, format);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw Error(ErrorCode::IoFailure, "write to '" + path + "' failed");
}

SpectralPortrait read_portrait(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("portrait: ") + e.what());
  }
  return SpectralPortrait::from_json(j);
}

}  // namespace qplane
