#include "fsph/serial_ref.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fsph/errors.hpp"

namespace fsph::serial {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw dimension_error("serial matmul: inner dimension mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

HermitianSpectrum jacobi_eig(const ComplexMatrix& m, int max_sweeps) {
  if (m.empty() || !m.square()) throw dimension_error("jacobi_eig: square matrix required");
  if (!is_hermitian(m)) throw precondition_error("jacobi_eig: matrix is not Hermitian");
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  const double stop = 1e-14 * (1.0 + a.frobenius_norm());
  for (int sweep = 0; sweep < max_sweeps && off_norm() > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const cplx phase = apq / mag;  // strip the phase, then rotate as real
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Combined unitary on coordinates (p, q): J = diag(1, conj(phase)) * R(c, s).
        const cplx jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
        for (std::size_t r = 0; r < n; ++r) {  // A <- A J (columns p, q)
          const cplx arp = a(r, p), arq = a(r, q);
          a(r, p) = arp * jpp + arq * jqp;
          a(r, q) = arp * jpq + arq * jqq;
        }
        for (std::size_t cidx = 0; cidx < n; ++cidx) {  // A <- J* A (rows p, q)
          const cplx apr = a(p, cidx), aqr = a(q, cidx);
          a(p, cidx) = std::conj(jpp) * apr + std::conj(jqp) * aqr;
          a(q, cidx) = std::conj(jpq) * apr + std::conj(jqq) * aqr;
        }
        for (std::size_t r = 0; r < n; ++r) {  // V <- V J
          const cplx vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp * jpp + vrq * jqp;
          v(r, q) = vrp * jpq + vrq * jqq;
        }
      }
    }
  }

  HermitianSpectrum out;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a(i, i).real();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t x, std::size_t y) { return out.eigenvalues[x] < out.eigenvalues[y]; });
  std::vector<double> d(n);
  ComplexMatrix vs(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = out.eigenvalues[idx[j]];
    for (std::size_t r = 0; r < n; ++r) vs(r, j) = v(r, idx[j]);
  }
  out.eigenvalues = std::move(d);
  out.eigenvectors = std::move(vs);
  return out;
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.empty()) throw dimension_error("serial spectral_norm: empty matrix");
  const ComplexMatrix g = (m.rows() <= m.cols()) ? matmul(m, m.adjoint()) : matmul(m.adjoint(), m);
  ComplexMatrix h = g;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  const HermitianSpectrum s = jacobi_eig(h);
  return std::sqrt(std::max(0.0, s.eigenvalues.back()));
}

}  // namespace fsph::serial
