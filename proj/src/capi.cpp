#include "qplane/qplane.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "qplane/error.hpp"
#include "qplane/model.hpp"
#include "qplane/oracle.hpp"
#include "qplane/scan.hpp"

using nlohmann::json;
using namespace qplane;

struct qp_pair {
  QPair pair;
};
struct qp_config {
  ToleranceConfig cfg;
};
struct qp_classification {
  PointClassification pc;
};
struct qp_portrait {
  SpectralPortrait portrait;
};

namespace {

thread_local std::string g_last_error;

qp_status status_of(ErrorCode c) { return static_cast<qp_status>(static_cast<int>(c)); }

template <class F>
qp_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return QP_OK;
  } catch (const Error& e) {
    g_last_error = std::string(error_code_name(e.code())) + ": " + e.what();
    return status_of(e.code());
  } catch (const json::exception& e) {
    g_last_error = std::string("ParseError: ") + e.what();
    return QP_PARSE_ERROR;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QP_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QP_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::BadParameter, std::string(what) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_json(const char* text, const char* what) {
  require(text, what);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

ToleranceConfig config_or_default(const qp_config* cfg) { return cfg ? cfg->cfg : ToleranceConfig{}; }

PortraitFormat format_named(const char* format, const char* path) {
  if (!format) {
    require(path, "path");
    return format_from_path(path);
  }
  const std::string f = format;
  if (f == "csv") return PortraitFormat::Csv;
  if (f == "json") return PortraitFormat::Json;
  if (f == "svg") return PortraitFormat::Svg;
  throw Error(ErrorCode::BadParameter, "unknown format '" + f + "'");
}

Scalar parse_scalar_text(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return Scalar(GaussRational(GaussRational::parse_rational(text)));
  return Scalar(GaussRational(GaussRational::parse_rational(text.substr(0, comma)),
                              GaussRational::parse_rational(text.substr(comma + 1))));
}

}  // namespace

extern "C" {

const char* qp_version(void) { return "1.0.0"; }

const char* qp_status_name(qp_status s) {
  if (s == QP_OK) return "Ok";
  if (s == QP_INTERNAL) return "Internal";
  if (s >= QP_BAD_PARAMETER && s <= QP_PARSE_ERROR) return error_code_name(static_cast<ErrorCode>(s));
  return "Unknown";
}

const char* qp_last_error_message(void) { return g_last_error.c_str(); }

void qp_string_free(char* s) { std::free(s); }

qp_status qp_pair_from_json(const char* text, qp_pair** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    *out = new qp_pair{QPair::from_json(parse_json(text, "pair"))};
  });
}

qp_status qp_pair_model(double q_re, double q_im, qp_pair** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    ModelParams p;
    p.q = Scalar(Complex(q_re, q_im));
    p.validate();
    *out = new qp_pair{p.pair()};
  });
}

qp_status qp_pair_to_json(const qp_pair* pair, char** out) {
  return guarded([&] {
    require(pair, "pair");
    require(out, "out");
    *out = dup_string(pair->pair.to_json().dump(2));
  });
}

size_t qp_pair_dimension(const qp_pair* pair) {
  if (!pair) return 0;
  return pair->pair.dimension().value_or(0);
}

void qp_pair_free(qp_pair* pair) { delete pair; }

qp_status qp_config_default(qp_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new qp_config{};
  });
}

qp_status qp_config_from_json(const char* text, qp_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    *out = new qp_config{ToleranceConfig::from_json(parse_json(text, "config"))};
  });
}

qp_status qp_config_set_workers(qp_config* cfg, unsigned workers) {
  return guarded([&] {
    require(cfg, "cfg");
    ToleranceConfig c = cfg->cfg;
    c.workers = workers;
    c.validate();
    cfg->cfg = c;
  });
}

qp_status qp_config_set_schedule(qp_config* cfg, const size_t* sizes, size_t count) {
  return guarded([&] {
    require(cfg, "cfg");
    require(sizes, "sizes");
    ToleranceConfig c = cfg->cfg;
    c.truncation_schedule.assign(sizes, sizes + count);
    c.validate();
    cfg->cfg = c;
  });
}

qp_status qp_config_to_json(const qp_config* cfg, char** out) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = dup_string(cfg->cfg.to_json().dump(2));
  });
}

void qp_config_free(qp_config* cfg) { delete cfg; }

qp_status qp_classify_point(const qp_pair* pair, const char* point, const qp_config* cfg,
                            qp_classification** out) {
  return guarded([&] {
    require(pair, "pair");
    require(point, "point");
    require(out, "out");
    *out = nullptr;
    *out = new qp_classification{classify_point(pair->pair, CharacterPoint::parse(point), config_or_default(cfg))};
  });
}

qp_status qp_classification_to_json(const qp_classification* c, char** out) {
  return guarded([&] {
    require(c, "classification");
    require(out, "out");
    *out = dup_string(c->pc.to_json().dump(2));
  });
}

qp_status qp_classification_csv_row(const qp_classification* c, char** out) {
  return guarded([&] {
    require(c, "classification");
    require(out, "out");
    *out = dup_string(csv_row(c->pc));
  });
}

void qp_classification_dims(const qp_classification* c, size_t h[3]) {
  if (!c || !h) return;
  for (int k = 0; k < 3; ++k) h[k] = c->pc.h[k];
}

int qp_classification_in_sigma(const qp_classification* c) { return c && c->pc.in_sigma ? 1 : 0; }

int qp_classification_in_sigma_e(const qp_classification* c) { return c && c->pc.in_sigma_e ? 1 : 0; }

void qp_classification_free(qp_classification* c) { delete c; }

const char* qp_csv_header(void) { return csv_header(); }

qp_status qp_scan(const qp_pair* pair, const char* grid_json, const qp_config* cfg, qp_portrait** out) {
  return guarded([&] {
    require(pair, "pair");
    require(out, "out");
    *out = nullptr;
    const std::vector<GridSpec> grids =
        grid_json ? grids_from_json(parse_json(grid_json, "grid")) : default_model_grids(pair->pair.q());
    *out = new qp_portrait{scan(pair->pair, grids, config_or_default(cfg))};
  });
}

size_t qp_portrait_size(const qp_portrait* p) { return p ? p->portrait.points.size() : 0; }

qp_status qp_portrait_write(const qp_portrait* p, const char* path, const char* format) {
  return guarded([&] {
    require(p, "portrait");
    require(path, "path");
    emit(p->portrait, format_named(format, path), path);
  });
}

qp_status qp_portrait_render(const qp_portrait* p, const char* format, char** out) {
  return guarded([&] {
    require(p, "portrait");
    require(format, "format");
    require(out, "out");
    *out = dup_string(render_portrait(p->portrait, format_named(format, nullptr)));
  });
}

qp_status qp_portrait_read(const char* path, qp_portrait** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = new qp_portrait{read_portrait(path)};
  });
}

qp_status qp_portrait_summary(const qp_portrait* p, char** out) {
  return guarded([&] {
    require(p, "portrait");
    require(out, "out");
    *out = dup_string(p->portrait.summary().to_json().dump(2));
  });
}

qp_status qp_portrait_verify_projection(const qp_portrait* p, const qp_pair* pair, char** out) {
  return guarded([&] {
    require(p, "portrait");
    require(out, "out");
    const QPair pr = pair ? pair->pair : QPair::from_json(p->portrait.pair);
    *out = dup_string(verify_q_projection(p->portrait, pr).to_json().dump(2));
  });
}

void qp_portrait_free(qp_portrait* p) { delete p; }

qp_status qp_verify_model(const char* q, size_t n, char** report, int* pass) {
  return guarded([&] {
    require(q, "q");
    require(report, "report");
    ModelParams params;
    params.q = parse_scalar_text(q);
    params.N = n;
    const json j = verify_model(params);
    if (pass) *pass = j.at("pass").get<bool>() ? 1 : 0;
    *report = dup_string(j.dump(2));
  });
}

qp_status qp_oracle(const qp_pair* pair, const char* point, size_t cap, char** out) {
  return guarded([&] {
    require(pair, "pair");
    require(point, "point");
    require(out, "out");
    const std::size_t c = cap ? cap : kDefaultOracleCap;
    const CharacterPoint gamma = CharacterPoint::parse(point);
    json j = exact_cohomology(pair->pair, gamma, c).to_json();
    j["point"] = gamma.to_json();
    j["tor_consistency"] = tor_consistency_report(pair->pair, gamma, c).to_json();
    *out = dup_string(j.dump(2));
  });
}

qp_status qp_oracle_complex(const char* complex_json, size_t cap, char** out) {
  return guarded([&] {
    require(out, "out");
    const ExactKoszulComplex k = ExactKoszulComplex::from_json(parse_json(complex_json, "complex"));
    *out = dup_string(exact_cohomology(k, cap ? cap : kDefaultOracleCap).to_json().dump(2));
  });
}

}  // extern "C"
