#pragma once

#include <string>
#include <vector>

#include "qplane/scalar.hpp"

namespace qplane {

/// A closed subset of the complex plane described as a union of simple
/// shapes. Used for spectra of single operators (disks, circles, finite sets,
/// and q-hulls {c*b^n : n >= 0} u {0}).
class ComplexSet {
 public:
  enum class Kind { Disk, Circle, Point, PowerHull };

  struct Shape {
    Kind kind;
    Complex center{0.0, 0.0};  // Disk/Circle center, Point location, PowerHull scale c
    double radius = 0.0;       // Disk/Circle radius
    Complex base{0.0, 0.0};    // PowerHull base b, |b| < 1
  };

  ComplexSet() = default;

  static ComplexSet empty() { return {}; }
  static ComplexSet disk(Complex center, double radius);
  static ComplexSet circle(Complex center, double radius);
  static ComplexSet points(const std::vector<Complex>& pts);
  static ComplexSet power_hull(Complex scale, Complex base);

  ComplexSet united(const ComplexSet& other) const;
  /// {factor * z : z in this}
  ComplexSet scaled(Complex factor) const;

  bool is_empty() const { return shapes_.empty(); }
  /// Distance from z to the set (infinity when empty).
  double distance(Complex z) const;
  bool contains(Complex z, double slack = 0.0) const { return distance(z) <= slack; }

  const std::vector<Shape>& shapes() const { return shapes_; }
  std::string describe() const;

 private:
  std::vector<Shape> shapes_;
};

}  // namespace qplane
