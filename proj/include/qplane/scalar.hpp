#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace qplane {

using Complex = std::complex<double>;

/// Exact complex number with rational real and imaginary parts.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(mpq_class re, mpq_class im = 0);
  GaussRational(long re) : GaussRational(mpq_class(re)) {}
  GaussRational(int re) : GaussRational(mpq_class(re)) {}

  /// Exact conversion of a finite double (every double is a dyadic rational).
  static GaussRational from_double(Complex z);
  /// Parses "a", "a/b", or decimal literals such as "0.25".
  static mpq_class parse_rational(const std::string& text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  GaussRational conj() const { return {re_, -im_}; }
  GaussRational inverse() const;
  GaussRational pow(long exponent) const;
  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string to_string() const;

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    return a * b.inverse();
  }
  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o) { return *this = *this + o; }
  GaussRational& operator-=(const GaussRational& o) { return *this = *this - o; }
  GaussRational& operator*=(const GaussRational& o) { return *this = *this * o; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// A parameter value carried both exactly and in floating point. Values
/// built from doubles keep the exact dyadic expansion of the double.
class Scalar {
 public:
  Scalar() = default;
  Scalar(double re) : Scalar(Complex(re, 0.0)) {}
  Scalar(Complex z);
  Scalar(GaussRational exact);

  const Complex& value() const { return value_; }
  const GaussRational& exact() const { return exact_; }
  double abs() const { return std::abs(value_); }
  bool is_zero() const { return exact_.is_zero(); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.exact_ == b.exact_; }

 private:
  Complex value_{0.0, 0.0};
  GaussRational exact_;
};

}  // namespace qplane
