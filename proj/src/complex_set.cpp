#include "qplane/complex_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qplane {

ComplexSet ComplexSet::disk(Complex center, double radius) {
  ComplexSet s;
  s.shapes_.push_back({Kind::Disk, center, radius, {}});
  return s;
}

ComplexSet ComplexSet::circle(Complex center, double radius) {
  ComplexSet s;
  s.shapes_.push_back({Kind::Circle, center, radius, {}});
  return s;
}

ComplexSet ComplexSet::points(const std::vector<Complex>& pts) {
  ComplexSet s;
  for (auto p : pts) s.shapes_.push_back({Kind::Point, p, 0.0, {}});
  return s;
}

ComplexSet ComplexSet::power_hull(Complex scale, Complex base) {
  ComplexSet s;
  s.shapes_.push_back({Kind::PowerHull, scale, 0.0, base});
  return s;
}

ComplexSet ComplexSet::united(const ComplexSet& other) const {
  ComplexSet s = *this;
  s.shapes_.insert(s.shapes_.end(), other.shapes_.begin(), other.shapes_.end());
  return s;
}

ComplexSet ComplexSet::scaled(Complex factor) const {
  ComplexSet s = *this;
  for (auto& sh : s.shapes_) {
    sh.center *= factor;
    sh.radius *= std::abs(factor);
  }
  return s;
}

double ComplexSet::distance(Complex z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& sh : shapes_) {
    double d = best;
    switch (sh.kind) {
      case Kind::Disk:
        d = std::max(0.0, std::abs(z - sh.center) - sh.radius);
        break;
      case Kind::Circle:
        d = std::abs(std::abs(z - sh.center) - sh.radius);
        break;
      case Kind::Point:
        d = std::abs(z - sh.center);
        break;
      case Kind::PowerHull: {
        // Points c*b^n accumulate at 0; walk until they are closer to 0 than z is to 0.
        d = std::abs(z);
        Complex p = sh.center;
        for (int n = 0; n < 4096 && std::abs(p) > 1e-300; ++n) {
          d = std::min(d, std::abs(z - p));
          if (std::abs(p) < 0.5 * std::abs(z) && std::abs(sh.base) < 1.0) break;
          p *= sh.base;
        }
        break;
      }
    }
    best = std::min(best, d);
  }
  return best;
}

std::string ComplexSet::describe() const {
  if (shapes_.empty()) return "empty";
  std::ostringstream os;
  bool first = true;
  for (const auto& sh : shapes_) {
    if (!first) os << " u ";
    first = false;
    switch (sh.kind) {
      case Kind::Disk: os << "disk(" << sh.center << "," << sh.radius << ")"; break;
      case Kind::Circle: os << "circle(" << sh.center << "," << sh.radius << ")"; break;
      case Kind::Point: os << "point" << sh.center; break;
      case Kind::PowerHull: os << "hull(" << sh.center << "*" << sh.base << "^n)"; break;
    }
  }
  return os.str();
}

}  // namespace qplane
