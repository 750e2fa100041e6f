#include "fsph/contour.hpp"

#include <cmath>

#include "fsph/eig.hpp"
#include "fsph/errors.hpp"

namespace fsph {
namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

void check_contour(const Contour& c) {
  if (!contour_valid(c)) throw precondition_error("contour: radius > 0 and points a power of two >= 16 required");
}

// For Hermitian m we can check the spectrum-vs-contour clearance directly.
void check_spectrum_clearance(const ComplexMatrix& m, const Contour& g) {
  if (!is_hermitian(m)) return;  // non-Hermitian inputs rely on the LU pivot check
  for (double lam : herm_eigvalues(m)) {
    const double dist = std::abs(std::abs(cplx(lam) - g.center) - g.radius);
    if (dist < g.radius * 1e-6)
      throw singularity_error("contour passes within tolerance of eigenvalue " + std::to_string(lam));
  }
}

}  // namespace

bool contour_valid(const Contour& c) {
  if (!(c.radius > 0.0)) return false;
  if (c.points < 16) return false;
  return (c.points & (c.points - 1)) == 0;
}

std::vector<cplx> contour_nodes(const Contour& c) {
  std::vector<cplx> nodes(c.points);
  for (std::size_t j = 0; j < c.points; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(c.points);
    nodes[j] = c.center + c.radius * cplx(std::cos(t), std::sin(t));
  }
  return nodes;
}

ComplexMatrix lu_solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.square() || a.rows() != b.rows()) throw dimension_error("lu_solve: shape mismatch");
  const std::size_t n = a.rows();
  ComplexMatrix lu = a;
  ComplexMatrix x = b;
  std::vector<std::size_t> piv(n);
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;

  const double scale = a.max_abs();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best <= 1e-14 * (1.0 + scale))
      throw singularity_error("lu_solve: pivot collapsed (matrix singular to working precision)");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(p, j));
    }
    const cplx inv = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = lu(i, k) * inv;
      lu(i, k) = f;
      if (f == cplx(0.0, 0.0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    const cplx inv = 1.0 / lu(kk, kk);
    for (std::size_t j = 0; j < x.cols(); ++j) {
      cplx s = x(kk, j);
      for (std::size_t i = kk + 1; i < n; ++i) s -= lu(kk, i) * x(i, j);
      x(kk, j) = s * inv;
    }
  }
  return x;
}

ComplexMatrix resolvent_contour_sum(const ComplexMatrix& m,
                                    const std::function<cplx(cplx)>& theta,
                                    const Contour& gamma) {
  if (!m.square() || m.empty()) throw dimension_error("resolvent_contour_sum: square matrix required");
  check_contour(gamma);
  check_spectrum_clearance(m, gamma);

  const std::size_t n = m.rows();
  const ComplexMatrix eye = ComplexMatrix::identity(n);
  ComplexMatrix acc(n, n);
  const double wr = gamma.radius / static_cast<double>(gamma.points);
  for (std::size_t j = 0; j < gamma.points; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(gamma.points);
    const cplx e_it(std::cos(t), std::sin(t));
    const cplx z = gamma.center + gamma.radius * e_it;
    ComplexMatrix zi = eye;
    zi *= z;
    zi -= m;
    const ComplexMatrix res = lu_solve(zi, eye);
    const cplx weight = wr * e_it * theta(z);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) acc(r, c) += weight * res(r, c);
  }
  return acc;
}

double resolvent_bound(const ComplexMatrix& m, const Contour& gamma) {
  if (!m.square() || m.empty()) throw dimension_error("resolvent_bound: square matrix required");
  check_contour(gamma);
  check_spectrum_clearance(m, gamma);
  const std::size_t n = m.rows();
  const ComplexMatrix eye = ComplexMatrix::identity(n);
  double best = 0.0;
  for (const cplx& z : contour_nodes(gamma)) {
    ComplexMatrix zi = eye;
    zi *= z;
    zi -= m;
    best = std::max(best, spectral_norm(lu_solve(zi, eye)));
  }
  return best;
}

}  // namespace fsph
