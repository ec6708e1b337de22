#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qplane/cohomology.hpp"

namespace qplane {

enum class AxisSelection { X, Y, Both };

/// A 1-D complex grid on one or both lines of the character cross.
///
/// Cartesian: resolution x resolution points on the square center +- half_width.
/// Polar: radii x angles points r e^{i theta}, r in [r_min, r_max]; the origin once.
/// Points: an explicit list (the axis comes from each point).
struct GridSpec {
  enum class Kind { Cartesian, Polar, Points };
  Kind kind = Kind::Cartesian;
  AxisSelection axis = AxisSelection::X;
  Scalar center{0.0};
  double half_width = 1.0;
  int resolution = 11;
  int refine_depth = 0;
  int angles = 24;
  int radii = 40;
  double r_min = 0.0;
  double r_max = 2.5;
  std::vector<CharacterPoint> points;

  void validate() const;
  /// Largest distance between neighbouring base points (0 for point lists).
  double spacing() const;
  nlohmann::json to_json() const;
  static GridSpec from_json(const nlohmann::json& j);
};

/// Polar grid on axis X (24 angles x 40 radii up to 1.25/|q|) plus axis-Y
/// points {0} u {q^k : 0 <= k <= 12} and a coarse polar disk grid (8 angles x 5 radii
/// up to 1.25).
std::vector<GridSpec> default_model_grids(const Scalar& q);

/// Accepts a single grid object, an array of them, or {"grids": [...]}.
std::vector<GridSpec> grids_from_json(const nlohmann::json& j);

struct PortraitSummary {
  struct Box {
    bool empty = true;
    double min_re = 0, max_re = 0, min_im = 0, max_im = 0;
  };
  std::size_t total = 0;
  std::size_t sigma = 0, sigma_e = 0, sigma_x = 0, sigma_y = 0;
  std::array<std::size_t, 3> pi{0, 0, 0};
  std::array<std::size_t, 3> delta{0, 0, 0};
  std::size_t inconclusive = 0, boundary = 0;
  Box box_x, box_y;  // bounding boxes of spectral points per axis

  nlohmann::json to_json() const;
  friend bool operator==(const PortraitSummary& a, const PortraitSummary& b) {
    return a.to_json() == b.to_json();
  }
};

struct SpectralPortrait {
  nlohmann::json pair;  // pair snapshot
  ToleranceConfig cfg;
  std::vector<GridSpec> grids;
  std::vector<double> essential_bands;  // per grid, as used
  std::vector<PointClassification> points;
  std::vector<std::size_t> grid_index;  // grid of each point

  PortraitSummary summary() const;
  nlohmann::json to_json() const;
  /// Rejects documents whose stored summary disagrees with the points.
  static SpectralPortrait from_json(const nlohmann::json& j);
};

/// Classifies every grid point in order; refinement points follow the base
/// points of their grid. Workers only change scheduling, never the output.
SpectralPortrait scan(const QPair& pair, const std::vector<GridSpec>& grids, const ToleranceConfig& cfg);
SpectralPortrait scan(const QPair& pair, const GridSpec& grid, const ToleranceConfig& cfg);

struct ProjectionReport {
  bool q_projection_holds = true;
  bool naive_forward_holds = true;   // sigma_x within sigma(T) x {0}
  bool naive_backward_holds = true;  // {0} x sigma(S) within sigma_y, on sampled points
  std::vector<CharacterPoint> q_projection_violations;
  std::vector<CharacterPoint> forward_violations;
  std::vector<CharacterPoint> backward_violations;
  std::size_t backward_tested = 0;
  double dilation = 0.0;

  nlohmann::json to_json() const;
};

/// Sets are dilated by `dilation`, or by the spacing of each point's grid when unset.
ProjectionReport verify_q_projection(const SpectralPortrait& portrait, const ComplexSet& sigma_T,
                                     const ComplexSet& sigma_S, const Scalar& q,
                                     std::optional<double> dilation = std::nullopt);
/// Uses the operator spectra of the pair.
ProjectionReport verify_q_projection(const SpectralPortrait& portrait, const QPair& pair);

enum class PortraitFormat { Csv, Json, Svg };
PortraitFormat format_from_path(const std::string& path);

std::string portrait_csv(const SpectralPortrait& portrait);
std::string portrait_svg(const SpectralPortrait& portrait);
std::string render_portrait(const SpectralPortrait& portrait, PortraitFormat format);
void emit(const SpectralPortrait& portrait, PortraitFormat format, const std::string& path);
SpectralPortrait read_portrait(const std::string& path);

}  // namespace qplane
