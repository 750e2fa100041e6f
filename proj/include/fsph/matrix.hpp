#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fsph/errors.hpp"

namespace fsph {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Dense complex matrix, row-major storage. All operations are pure and
// return fresh values; instances are safe to share read-only across threads.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }
  static ComplexMatrix diagonal(std::span<const cplx> entries);
  static ComplexMatrix diagonal(std::span<const double> entries);
  // Rank-one |u><v| : w -> <v, w> u  (conjugation on v).
  static ComplexMatrix outer(const cvec& u, const cvec& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

// Matrix product (OpenMP-parallel kernel; see serial_ref.hpp for the
// reference loop used as a test oracle).
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

cvec matvec(const ComplexMatrix& a, const cvec& x);

// Kronecker product; index convention (i, j) -> i * b.rows() + j, so the
// left factor is the outer (slow) index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// exp(M) by scaling and squaring with a truncated series.
ComplexMatrix mat_exp(const ComplexMatrix& m);

// Hermitian within an absolute-plus-relative Frobenius tolerance.
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);

// <u, v> = sum_i u_i * conj(v_i)  (conjugation on the second argument).
cplx inner(const cvec& u, const cvec& v);
double vec_norm(const cvec& u);

}  // namespace fsph
