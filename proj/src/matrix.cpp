#include "fsph/matrix.hpp"

#include <cmath>

namespace fsph {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> entries) {
  ComplexMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
  ComplexMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(const cvec& u, const cvec& v) {
  ComplexMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = std::conj(data_[i]);
  return m;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  const std::size_t n = rows_ < cols_ ? rows_ : cols_;
  for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw dimension_error("matrix add: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw dimension_error("matrix sub: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw dimension_error("matrix mul: inner dimension mismatch");
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  ComplexMatrix c(n, m);
  // i-k-j order keeps b and c rows contiguous; the split re/im accumulation
  // vectorizes where the std::complex product (with its NaN bookkeeping)
  // does not.
#pragma omp parallel for schedule(static) if (n * k * m > 32768)
  for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    for (std::size_t kk = 0; kk < k; ++kk) {
      const double ar = a(i, kk).real(), ai = a(i, kk).imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const double* brow = reinterpret_cast<const double*>(&b(kk, 0));
      double* crow = reinterpret_cast<double*>(&c(i, 0));
      for (std::size_t j = 0; j < m; ++j) {
        const double xr = brow[2 * j], xi = brow[2 * j + 1];
        crow[2 * j] += ar * xr - ai * xi;
        crow[2 * j + 1] += ar * xi + ai * xr;
      }
    }
  }
  return c;
}

cvec matvec(const ComplexMatrix& a, const cvec& x) {
  if (a.cols() != x.size()) throw dimension_error("matvec: dimension mismatch");
  cvec y(a.rows(), cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
#pragma omp parallel for collapse(2) schedule(static) if (a.rows() * b.rows() > 64)
  for (long long i = 0; i < static_cast<long long>(a.rows()); ++i)
    for (long long p = 0; p < static_cast<long long>(b.rows()); ++p) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        const cplx aij = a(static_cast<std::size_t>(i), j);
        for (std::size_t q = 0; q < b.cols(); ++q)
          c(static_cast<std::size_t>(i) * b.rows() + static_cast<std::size_t>(p),
            j * b.cols() + q) = aij * b(static_cast<std::size_t>(p), q);
      }
    }
  return c;
}

ComplexMatrix mat_exp(const ComplexMatrix& m) {
  if (!m.square()) throw dimension_error("mat_exp: matrix must be square");
  const std::size_t n = m.rows();
  if (n == 0) return m;

  // Scale so that the series converges fast, then square back.
  double nrm = m.frobenius_norm();
  int squarings = 0;
  while (nrm > 0.5) {
    nrm *= 0.5;
    ++squarings;
  }
  ComplexMatrix a = m;
  a *= cplx(std::ldexp(1.0, -squarings), 0.0);

  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int j = 1; j <= 24; ++j) {
    term = term * a;
    term *= cplx(1.0 / j, 0.0);
    result += term;
    if (term.frobenius_norm() < 1e-18 * (1.0 + result.frobenius_norm())) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.square()) return false;
  double diff = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) diff += std::norm(m(i, j) - std::conj(m(j, i)));
  return std::sqrt(diff) < tol * (1.0 + m.frobenius_norm());
}

cplx inner(const cvec& u, const cvec& v) {
  if (u.size() != v.size()) throw dimension_error("inner: length mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

double vec_norm(const cvec& u) {
  double s = 0.0;
  for (const cplx& z : u) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace fsph
