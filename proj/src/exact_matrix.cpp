#include "qplane/exact_matrix.hpp"

#include <utility>

#include "qplane/error.hpp"

namespace qplane {

namespace {

// Gaussian integer used internally by the fraction-free elimination.
struct GaussInt {
  mpz_class re{0};
  mpz_class im{0};

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

GaussInt mul(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussInt sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

// a / b where the quotient is known to lie in Z[i].
GaussInt divexact(const GaussInt& a, const GaussInt& b) {
  mpz_class n = b.re * b.re + b.im * b.im;
  mpz_class re = a.re * b.re + a.im * b.im;
  mpz_class im = a.im * b.re - a.re * b.im;
  GaussInt q;
  mpz_divexact(q.re.get_mpz_t(), re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(q.im.get_mpz_t(), im.get_mpz_t(), n.get_mpz_t());
  return q;
}

struct IntegerForm {
  std::vector<std::vector<GaussInt>> rows;
  mpz_class scale{1};  // product of the per-row denominators cleared
};

IntegerForm clear_denominators(const ExactMatrix& m) {
  IntegerForm out;
  out.rows.resize(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).re().get_den_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).im().get_den_mpz_t());
    }
    out.scale *= l;
    auto& row = out.rows[i];
    row.resize(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpq_class re = m(i, j).re() * l;
      mpq_class im = m(i, j).im() * l;
      row[j] = {re.get_num(), im.get_num()};
    }
  }
  return out;
}

struct EliminationResult {
  std::size_t rank = 0;
  GaussInt last_pivot{1, 0};
  bool odd_swaps = false;
};

EliminationResult bareiss(std::vector<std::vector<GaussInt>>& a, std::size_t cols) {
  EliminationResult res;
  const std::size_t rows = a.size();
  GaussInt prev{1, 0};
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      res.odd_swaps = !res.odd_swaps;
    }
    const GaussInt& piv = a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = divexact(sub(mul(piv, a[i][j]), mul(a[i][c], a[r][j])), prev);
      }
      a[i][c] = GaussInt{};
    }
    prev = a[r][c];
    ++r;
  }
  res.rank = r;
  res.last_pivot = prev;
  return res;
}

}  // namespace

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = GaussRational(1);
  return m;
}

bool ExactMatrix::is_zero() const {
  for (const auto& v : data_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

ExactMatrix ExactMatrix::adjoint() const {
  ExactMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j).conj();
  }
  return out;
}

Eigen::MatrixXcd ExactMatrix::to_complex() const {
  Eigen::MatrixXcd out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).to_complex();
  }
  return out;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorCode::DimensionMismatch, "exact product shape mismatch");
  ExactMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (!o(k, j).is_zero()) out(i, j) += a * o(k, j);
      }
    }
  }
  return out;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw Error(ErrorCode::DimensionMismatch, "exact sum shape mismatch");
  }
  ExactMatrix out(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += o.data_[k];
  return out;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const { return *this + o * GaussRational(-1); }

ExactMatrix ExactMatrix::operator*(const GaussRational& s) const {
  ExactMatrix out(*this);
  for (auto& v : out.data_) v *= s;
  return out;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& top, const ExactMatrix& bottom) {
  if (top.cols_ != bottom.cols_) throw Error(ErrorCode::DimensionMismatch, "vstack width mismatch");
  ExactMatrix out(top.rows_ + bottom.rows_, top.cols_);
  std::copy(top.data_.begin(), top.data_.end(), out.data_.begin());
  std::copy(bottom.data_.begin(), bottom.data_.end(), out.data_.begin() + static_cast<long>(top.data_.size()));
  return out;
}

ExactMatrix ExactMatrix::hstack(const ExactMatrix& left, const ExactMatrix& right) {
  if (left.rows_ != right.rows_) throw Error(ErrorCode::DimensionMismatch, "hstack height mismatch");
  ExactMatrix out(left.rows_, left.cols_ + right.cols_);
  for (std::size_t i = 0; i < left.rows_; ++i) {
    for (std::size_t j = 0; j < left.cols_; ++j) out(i, j) = left(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) out(i, left.cols_ + j) = right(i, j);
  }
  return out;
}

mpq_class ExactMatrix::max_norm_squared() const {
  mpq_class best = 0;
  for (const auto& v : data_) {
    mpq_class n = v.norm();
    if (n > best) best = n;
  }
  return best;
}

std::size_t exact_rank(const ExactMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto form = clear_denominators(m);
  return bareiss(form.rows, m.cols()).rank;
}

GaussRational exact_determinant(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  if (m.rows() == 0) return GaussRational(1);
  auto form = clear_denominators(m);
  auto res = bareiss(form.rows, m.cols());
  if (res.rank < m.rows()) return GaussRational(0);
  GaussRational det(mpq_class(res.last_pivot.re), mpq_class(res.last_pivot.im));
  det = det * GaussRational(mpq_class(1, 1) / mpq_class(form.scale));
  return res.odd_swaps ? -det : det;
}

ExactMatrix exact_inverse(const ExactMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  ExactMatrix a(m);
  ExactMatrix inv = ExactMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw Error(ErrorCode::BadParameter, "matrix is singular");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    GaussRational s = a(c, c).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      GaussRational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace qplane
