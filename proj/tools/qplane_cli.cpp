// qplane command line. Talks to the library only through qplane.h.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qplane/qplane.h"

namespace {

struct Failure {
  qp_status status;
};

void check(qp_status s) {
  if (s != QP_OK) throw Failure{s};
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot read '" << path << "'\n";
    throw Failure{QP_IO_FAILURE};
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { qp_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};

using PairHandle = Handle<qp_pair, qp_pair_free>;
using ConfigHandle = Handle<qp_config, qp_config_free>;
using PortraitHandle = Handle<qp_portrait, qp_portrait_free>;
using ClassHandle = Handle<qp_classification, qp_classification_free>;

struct PairSource {
  std::string path;
  double model_q = 0.0;
  bool use_model = false;

  void add(CLI::App* app) {
    app->add_option("--pair", path, "pair JSON file");
    app->add_option("--model-q", model_q, "use the shift/diagonal model with this real q instead");
  }
  void load(PairHandle& h) const {
    if (!path.empty()) {
      check(qp_pair_from_json(read_file(path).c_str(), &h.p));
    } else if (model_q != 0.0) {
      check(qp_pair_model(model_q, 0.0, &h.p));
    } else {
      std::cerr << "error: give --pair or --model-q\n";
      throw Failure{QP_BAD_PARAMETER};
    }
  }
};

void load_config(const std::string& path, unsigned workers, ConfigHandle& h) {
  if (path.empty()) {
    check(qp_config_default(&h.p));
  } else {
    check(qp_config_from_json(read_file(path).c_str(), &h.p));
  }
  if (workers > 0) check(qp_config_set_workers(h.p, workers));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Koszul spectra of quantum-plane pairs"};
  app.require_subcommand(1);

  PairSource scan_pair;
  std::string scan_grid, scan_cfg, scan_out;
  unsigned scan_workers = 0;
  bool scan_verify = false;
  auto* scan = app.add_subcommand("scan", "classify a grid over the character cross");
  scan_pair.add(scan);
  scan->add_option("--grid", scan_grid, "grid JSON (default: model grids for the pair's q)");
  scan->add_option("--cfg", scan_cfg, "tolerance JSON");
  scan->add_option("--out", scan_out, "portrait output (.csv, .json or .svg)")->required();
  scan->add_option("--workers", scan_workers, "worker threads (overrides the config)");
  scan->add_flag("--verify", scan_verify, "print the q-projection report");

  PairSource cls_pair;
  std::string cls_point, cls_cfg;
  bool cls_json = false;
  auto* classify = app.add_subcommand("classify", "classify one point");
  cls_pair.add(classify);
  classify->add_option("--point", cls_point, "axis,re,im, e.g. X,1.5,0")->required();
  classify->add_option("--cfg", cls_cfg, "tolerance JSON");
  classify->add_flag("--json", cls_json, "full JSON instead of a CSV row");

  std::string vm_q = "0.5";
  std::size_t vm_n = 200;
  auto* verify = app.add_subcommand("verify-model", "check the shift/diagonal model claims");
  verify->add_option("--q", vm_q, "q as re or re,im");
  verify->add_option("--N", vm_n, "truncation size");

  std::string or_pair, or_complex, or_point;
  std::size_t or_cap = 0;
  auto* oracle = app.add_subcommand("oracle", "exact cohomology of a finite pair or an exported complex");
  auto* or_pair_opt = oracle->add_option("--pair", or_pair, "finite pair JSON");
  auto* or_complex_opt = oracle->add_option("--complex", or_complex, "complex JSON");
  or_pair_opt->excludes(or_complex_opt);
  oracle->add_option("--point", or_point, "axis,re,im (with --pair)");
  oracle->add_option("--cap", or_cap, "largest dimension accepted");

  std::string rep_portrait, rep_svg, rep_csv;
  bool rep_verify = false;
  auto* report = app.add_subcommand("report", "summarize or re-render a portrait JSON");
  report->add_option("--portrait", rep_portrait, "portrait JSON")->required();
  report->add_option("--svg", rep_svg, "write an SVG");
  report->add_option("--csv", rep_csv, "write a CSV");
  report->add_flag("--verify", rep_verify, "print the q-projection report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*scan) {
      PairHandle pair;
      scan_pair.load(pair);
      ConfigHandle cfg;
      load_config(scan_cfg, scan_workers, cfg);
      const std::string grid = scan_grid.empty() ? std::string() : read_file(scan_grid);
      PortraitHandle portrait;
      check(qp_scan(pair.p, scan_grid.empty() ? nullptr : grid.c_str(), cfg.p, &portrait.p));
      check(qp_portrait_write(portrait.p, scan_out.c_str(), nullptr));
      OwnedString summary;
      check(qp_portrait_summary(portrait.p, &summary.s));
      std::cout << summary.str() << "\n";
      if (scan_verify) {
        OwnedString rep;
        check(qp_portrait_verify_projection(portrait.p, pair.p, &rep.s));
        std::cout << rep.str() << "\n";
      }
    } else if (*classify) {
      PairHandle pair;
      cls_pair.load(pair);
      ConfigHandle cfg;
      load_config(cls_cfg, 0, cfg);
      ClassHandle c;
      check(qp_classify_point(pair.p, cls_point.c_str(), cfg.p, &c.p));
      OwnedString text;
      if (cls_json) {
        check(qp_classification_to_json(c.p, &text.s));
        std::cout << text.str() << "\n";
      } else {
        check(qp_classification_csv_row(c.p, &text.s));
        std::cout << qp_csv_header() << "\n" << text.str() << "\n";
      }
    } else if (*verify) {
      OwnedString rep;
      int pass = 0;
      check(qp_verify_model(vm_q.c_str(), vm_n, &rep.s, &pass));
      std::cout << rep.str() << "\n";
      return pass ? 0 : 1;
    } else if (*oracle) {
      OwnedString out;
      if (!or_complex.empty()) {
        check(qp_oracle_complex(read_file(or_complex).c_str(), or_cap, &out.s));
      } else if (!or_pair.empty()) {
        if (or_point.empty()) {
          std::cerr << "error: --pair needs --point\n";
          return QP_BAD_PARAMETER;
        }
        PairHandle pair;
        check(qp_pair_from_json(read_file(or_pair).c_str(), &pair.p));
        check(qp_oracle(pair.p, or_point.c_str(), or_cap, &out.s));
      } else {
        std::cerr << "error: give --pair or --complex\n";
        return QP_BAD_PARAMETER;
      }
      std::cout << out.str() << "\n";
    } else if (*report) {
      PortraitHandle portrait;
      check(qp_portrait_read(rep_portrait.c_str(), &portrait.p));
      if (!rep_svg.empty()) check(qp_portrait_write(portrait.p, rep_svg.c_str(), "svg"));
      if (!rep_csv.empty()) check(qp_portrait_write(portrait.p, rep_csv.c_str(), "csv"));
      OwnedString summary;
      check(qp_portrait_summary(portrait.p, &summary.s));
      std::cout << summary.str() << "\n";
      if (rep_verify) {
        OwnedString rep;
        check(qp_portrait_verify_projection(portrait.p, nullptr, &rep.s));
        std::cout << rep.str() << "\n";
      }
    }
  } catch (const Failure& f) {
    const char* msg = qp_last_error_message();
    if (msg && *msg) std::cerr << "error: " << msg << "\n";
    return static_cast<int>(f.status);
  }
  return 0;
}
