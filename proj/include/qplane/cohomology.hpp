#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "qplane/koszul.hpp"

namespace qplane {

struct ToleranceConfig {
  double rank_rel_tol = 1e-9;
  double closed_range_floor = 1e-6;
  int fredholm_dim_cap = 3;
  /// Semi-infinite pairs are truncated to (N+1) x N for each N here.
  std::vector<std::size_t> truncation_schedule{20, 40, 80};

  /// Ratio of a singular value between consecutive schedule entries below
  /// which it is read as a kernel vector (geometric decay) ...
  double kernel_decay_ratio = 0.1;
  /// ... and below which it is read as a non-closed range (algebraic decay).
  double decay_ratio = 0.7;
  /// Used instead of both when closed ranges are known (Fredholm by the
  /// compact-factor rule): a faster decay than this is a kernel vector, a
  /// slower one converges to a positive limit. 1/N decay has ratio 1/2.
  double closed_kernel_ratio = 0.5;
  /// Ratios in [decay_ratio, decay_ratio + boundary_margin) get the "boundary" flag.
  double boundary_margin = 0.05;

  /// Slack for the compact-factor essential rule.
  double essential_band = 1e-9;
  bool cross_check_lr = false;
  unsigned workers = 1;

  void validate() const;
  nlohmann::json to_json() const;
  static ToleranceConfig from_json(const nlohmann::json& j);
};

/// Singular-value summary of one map whose kernel is being measured.
struct MapSpectrum {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t kernel = 0;         // cols - numerical rank
  double sigma_max = 0.0;
  double threshold = 0.0;         // rank_rel_tol * sigma_max * max(rows, cols)
  std::vector<double> smallest;   // ascending, at most fredholm_dim_cap + 2 values
  double smin_nonzero = 0.0;      // smallest singular value above threshold, 0 if none

  nlohmann::json to_json() const;
  static MapSpectrum from_json(const nlohmann::json& j);
};

/// Cohomology of one truncated complex.
///
/// Finite complexes use rank-nullity on d0 and d1. A semi-infinite complex on
/// an (N+1) x N truncation is measured through exact restrictions to
/// span{e_0..e_{N-1}}: H0 = ker d0, H1 = ker d0* n ker d1, H2 = ker d1*.
struct CohomologyReport {
  Truncation trunc;
  bool hodge = false;
  std::size_t n = 0;
  std::size_t h0 = 0, h1 = 0, h2 = 0;
  std::size_t rank_d0 = 0, rank_d1 = 0;
  double sigma_min_d0 = 0.0;
  double sigma_min_d1_adjoint = 0.0;
  double sigma_min_h1 = 0.0;
  bool closed_range_d0 = true;
  bool closed_range_d1 = true;
  /// d0, the H1 operator [d0*; d1] (Hodge mode only), d1*.
  std::array<MapSpectrum, 3> maps;

  long euler() const { return static_cast<long>(h0) - static_cast<long>(h1) + static_cast<long>(h2); }
  nlohmann::json to_json() const;
  static CohomologyReport from_json(const nlohmann::json& j);
};

CohomologyReport cohomology_dims(const KoszulComplex& cx, const ToleranceConfig& cfg);

struct PointClassification {
  CharacterPoint point;
  ComplexVariant variant = ComplexVariant::K;
  /// Report at the largest truncation, plus all of them in schedule order.
  CohomologyReport report;
  std::vector<CohomologyReport> schedule_reports;

  /// Lower bounds for dim H^k. A non-closed range adds one to the degree
  /// whose quotient it spoils.
  std::array<std::size_t, 3> h{0, 0, 0};
  bool nonclosed_d0 = false;
  bool nonclosed_d1 = false;
  bool nonclosed_h1 = false;
  bool fredholm = true;

  bool in_sigma = false;
  bool in_sigma_e = false;
  std::array<bool, 3> in_sigma_pi{false, false, false};
  std::array<bool, 3> in_sigma_delta{false, false, false};
  bool in_sigma_l_or_r = false;
  std::vector<std::string> flags;

  bool has_flag(const std::string& f) const;
  double smin0() const { return report.sigma_min_d0; }
  double smin1() const { return report.sigma_min_d1_adjoint; }

  nlohmann::json to_json() const;
  static PointClassification from_json(const nlohmann::json& j);
};

PointClassification classify_point(const QPair& pair, const CharacterPoint& gamma,
                                   const ToleranceConfig& cfg);

/// Same pipeline on the L (axis X) or R (axis Y) complex. No essential rule.
PointClassification classify_variant(const QPair& pair, const CharacterPoint& gamma,
                                     ComplexVariant variant, const ToleranceConfig& cfg);

/// Axis X: S compact gives lambda in sigma_e(T) u q^{-1} sigma_e(T).
/// Axis Y: T compact gives mu in sigma_e(S) u q sigma_e(S).
/// Empty when neither rule applies.
std::optional<bool> compact_factor_essential_rule(const QPair& pair, const CharacterPoint& gamma,
                                                  double band);

struct LeftBoundSample {
  Scalar lambda;
  bool inside_bound = false;  // within sigma(T) u sigma(q^{-1}T)
  bool resolvent = false;     // L complex exact
  bool violation = false;
};

struct LeftBoundReport {
  ComplexSet bound;
  bool s_invertible = false;
  std::vector<LeftBoundSample> samples;
  std::size_t violations = 0;

  bool ok() const { return violations == 0; }
  nlohmann::json to_json() const;
};

/// Checks sigma_l inside sigma(T) u sigma(q^{-1}T), and sigma_l empty when S is invertible.
LeftBoundReport left_spectrum_bound_check(const QPair& pair, const std::vector<Scalar>& samples,
                                          const ToleranceConfig& cfg);

const char* csv_header();
std::string csv_row(const PointClassification& pc);

}  // namespace qplane
