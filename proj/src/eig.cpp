#include "fsph/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fsph/errors.hpp"

namespace fsph {
namespace {

// Reduce Hermitian a to real symmetric tridiagonal form (d, e) by Householder
// reflections. If q is non-null the accumulated unitary is written there, so
// that a = q * tridiag(d, e) * q^*.
void tridiagonalize(ComplexMatrix a, std::vector<double>& d, std::vector<double>& e,
                    ComplexMatrix* q) {
  const std::size_t n = a.rows();
  d.assign(n, 0.0);
  e.assign(n > 0 ? n - 1 : 0, 0.0);
  if (q) *q = ComplexMatrix::identity(n);
  if (n == 0) return;

  std::vector<cplx> sub(n > 0 ? n - 1 : 0, cplx(0.0, 0.0));
  cvec v(n), p(n), w(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - 1 - k;  // active block below row k
    double sigma2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) sigma2 += std::norm(a(k + 1 + i, k));
    const double sigma = std::sqrt(sigma2);
    const cplx x0 = a(k + 1, k);
    if (sigma == 0.0) {
      sub[k] = cplx(0.0, 0.0);
      continue;
    }
    const double ax0 = std::abs(x0);
    const cplx phase = (ax0 > 0.0) ? x0 / ax0 : cplx(1.0, 0.0);
    const cplx alpha = -phase * sigma;

    for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
    v[0] -= alpha;
    const double vnorm2 = 2.0 * sigma * (sigma + ax0);
    if (vnorm2 == 0.0) {
      sub[k] = alpha;
      continue;
    }
    const double tau = 2.0 / vnorm2;

    // Rank-2 update of the trailing block: a <- a - v w^* - w v^*.
#pragma omp parallel for schedule(static) if (m > 96)
    for (long long ii = 0; ii < static_cast<long long>(m); ++ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      cplx s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += a(k + 1 + i, k + 1 + j) * v[j];
      p[i] = tau * s;
    }
    cplx kappa = 0.0;
    for (std::size_t i = 0; i < m; ++i) kappa += std::conj(v[i]) * p[i];
    kappa *= 0.5 * tau;
    for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - kappa * v[i];

#pragma omp parallel for schedule(static) if (m > 96)
    for (long long ii = 0; ii < static_cast<long long>(m); ++ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      for (std::size_t j = 0; j < m; ++j)
        a(k + 1 + i, k + 1 + j) -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);
    }

    if (q) {
      // q[:, k+1..] <- q[:, k+1..] (I - tau v v^*)
#pragma omp parallel for schedule(static) if (n > 96)
      for (long long rr = 0; rr < static_cast<long long>(n); ++rr) {
        const std::size_t r = static_cast<std::size_t>(rr);
        cplx s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += (*q)(r, k + 1 + j) * v[j];
        s *= tau;
        for (std::size_t j = 0; j < m; ++j) (*q)(r, k + 1 + j) -= s * std::conj(v[j]);
      }
    }

    sub[k] = alpha;
    a(k + 1, k) = alpha;
    for (std::size_t i = 1; i < m; ++i) a(k + 1 + i, k) = 0.0;
  }
  if (n >= 2) sub[n - 2] = a(n - 1, n - 2);

  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();

  // Phase-scale columns so the subdiagonal becomes real nonnegative.
  cplx dk(1.0, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const cplx t = sub[j] * dk;  // subdiagonal after scaling applied so far
    const double at = std::abs(t);
    e[j] = at;
    cplx dk1(1.0, 0.0);
    if (at > 0.0) dk1 = t / at;
    if (q && dk1 != cplx(1.0, 0.0))
      for (std::size_t r = 0; r < n; ++r) (*q)(r, j + 1) *= dk1;
    dk = dk1;
  }
}

// Implicit-shift QL on a real symmetric tridiagonal; rotations are folded
// into the complex columns of q when present.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, ComplexMatrix* q) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  std::vector<double> ee(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) ee[i] = e[i];

  const double eps = std::numeric_limits<double>::epsilon();
  // Scale-aware deflation floor: rank-deficient inputs leave long stretches
  // of noise-scale entries for which the purely relative test never fires.
  double anorm = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    anorm = std::max(anorm, std::abs(d[i]) + (i + 1 < n ? std::abs(ee[i]) : 0.0));
  const double floor_tol = 0.5 * eps * anorm;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(ee[m]) <= eps * dd + floor_tol) break;
      }
      if (m != l) {
        if (iter++ == 64) throw singularity_error("herm_eig: QL iteration failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * ee[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + ee[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        long long i;
        for (i = static_cast<long long>(m) - 1; i >= static_cast<long long>(l); --i) {
          double f = s * ee[i];
          const double b = c * ee[i];
          r = std::hypot(f, g);
          ee[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            ee[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (q) {
            const std::size_t col = static_cast<std::size_t>(i);
            for (std::size_t row = 0; row < n; ++row) {
              const cplx qf = (*q)(row, col + 1);
              (*q)(row, col + 1) = s * (*q)(row, col) + c * qf;
              (*q)(row, col) = c * (*q)(row, col) - s * qf;
            }
          }
        }
        if (r == 0.0 && i >= static_cast<long long>(l)) continue;
        d[l] -= p;
        ee[l] = g;
        ee[m] = 0.0;
      }
    } while (m != l);
  }
}

void sort_ascending(std::vector<double>& d, ComplexMatrix* q) {
  const std::size_t n = d.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  std::vector<double> ds(n);
  for (std::size_t i = 0; i < n; ++i) ds[i] = d[idx[i]];
  d = std::move(ds);
  if (q) {
    ComplexMatrix qs(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r) qs(r, j) = (*q)(r, idx[j]);
    *q = std::move(qs);
  }
}

void require_hermitian(const ComplexMatrix& m) {
  if (m.empty()) throw dimension_error("herm_eig: empty matrix");
  if (!m.square()) throw dimension_error("herm_eig: matrix must be square");
  if (!is_hermitian(m)) throw precondition_error("herm_eig: matrix is not Hermitian");
}

}  // namespace

HermitianSpectrum herm_eig(const ComplexMatrix& m) {
  require_hermitian(m);
  HermitianSpectrum out;
  std::vector<double> e;
  tridiagonalize(m, out.eigenvalues, e, &out.eigenvectors);
  ql_implicit(out.eigenvalues, e, &out.eigenvectors);
  sort_ascending(out.eigenvalues, &out.eigenvectors);
  return out;
}

std::vector<double> herm_eigvalues(const ComplexMatrix& m) {
  require_hermitian(m);
  std::vector<double> d, e;
  tridiagonalize(m, d, e, nullptr);
  ql_implicit(d, e, nullptr);
  sort_ascending(d, nullptr);
  return d;
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.empty()) throw dimension_error("spectral_norm: empty matrix");
  // Gram matrix on the smaller side.
  const ComplexMatrix g = (m.rows() <= m.cols()) ? m * m.adjoint() : m.adjoint() * m;
  // Hermitize to wash out rounding from the product.
  ComplexMatrix h = g;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j)
      h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  const std::vector<double> vals = herm_eigvalues(h);
  const double top = vals.empty() ? 0.0 : vals.back();
  return std::sqrt(std::max(0.0, top));
}

}  // namespace fsph
