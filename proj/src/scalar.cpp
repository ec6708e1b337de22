#include "qplane/scalar.hpp"

#include <cmath>

#include "qplane/error.hpp"

namespace qplane {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::QRelationViolated: return "QRelationViolated";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::OutOfAnnulus: return "OutOfAnnulus";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

GaussRational::GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRational GaussRational::from_double(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::BadParameter, "non-finite scalar");
  }
  return {mpq_class(z.real()), mpq_class(z.imag())};
}

mpq_class GaussRational::parse_rational(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational literal");
  try {
    auto dot = s.find('.');
    auto exp = s.find_first_of("eE");
    if (dot != std::string::npos || exp != std::string::npos) {
      // Decimal literal: parse mantissa digits exactly, then apply the exponent.
      std::string mant = exp == std::string::npos ? s : s.substr(0, exp);
      long e10 = exp == std::string::npos ? 0 : std::stol(s.substr(exp + 1));
      bool neg = !mant.empty() && (mant[0] == '-' || mant[0] == '+');
      bool minus = !mant.empty() && mant[0] == '-';
      if (neg) mant = mant.substr(1);
      auto d = mant.find('.');
      std::string digits = mant;
      if (d != std::string::npos) {
        e10 -= static_cast<long>(mant.size() - d - 1);
        digits = mant.substr(0, d) + mant.substr(d + 1);
      }
      if (digits.empty()) throw Error(ErrorCode::ParseError, "bad decimal: " + text);
      mpz_class num(digits, 10);
      mpz_class p10;
      mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e10)));
      mpq_class r = e10 >= 0 ? mpq_class(num * p10) : mpq_class(num, p10);
      r.canonicalize();
      return minus ? mpq_class(-r) : r;
    }
    mpq_class r(s, 10);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ParseError, "bad rational literal: " + text);
  }
}

GaussRational GaussRational::inverse() const {
  mpq_class n = norm();
  if (sgn(n) == 0) throw Error(ErrorCode::BadParameter, "division by zero");
  return {re_ / n, -im_ / n};
}

GaussRational GaussRational::pow(long exponent) const {
  GaussRational base = exponent < 0 ? inverse() : *this;
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  GaussRational result(1);
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::string GaussRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  return "(" + re_.get_str() + "," + im_.get_str() + ")";
}

Scalar::Scalar(Complex z) : value_(z), exact_(GaussRational::from_double(z)) {}

Scalar::Scalar(GaussRational exact) : value_(exact.to_complex()), exact_(std::move(exact)) {}

}  // namespace qplane
