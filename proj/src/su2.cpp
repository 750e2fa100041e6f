#include "fsph/su2.hpp"

#include <cmath>

#include "fsph/errors.hpp"

namespace fsph {
namespace {

constexpr double kTwoPi = 6.283185307179586476925287;
constexpr double kPi = 3.14159265358979323846264338;

}  // namespace

ComplexMatrix GroupElement::as_matrix() const {
  ComplexMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = -std::conj(b);
  m(1, 0) = b;
  m(1, 1) = std::conj(a);
  return m;
}

double GroupElement::sphere_defect() const {
  return std::abs(std::norm(a) + std::norm(b) - 1.0);
}

GroupElement group_mul(const GroupElement& x, const GroupElement& y) {
  return {x.a * y.a - std::conj(x.b) * y.b, x.b * y.a + std::conj(x.a) * y.b};
}

GroupElement torus_element(double t) {
  const double th = kTwoPi * t;
  return {cplx(std::cos(th), std::sin(th)), cplx(0.0, 0.0)};
}

double spectral_norm_2x2(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw dimension_error("spectral_norm_2x2: 2x2 required");
  // Top eigenvalue of m* m; the discriminant is a sum of squares, so there
  // is no cancellation when the two singular values coincide.
  const double p = std::norm(m(0, 0)) + std::norm(m(1, 0));
  const double q = std::norm(m(0, 1)) + std::norm(m(1, 1));
  const cplx r = std::conj(m(0, 0)) * m(0, 1) + std::conj(m(1, 0)) * m(1, 1);
  const double half_gap = 0.5 * (p - q);
  const double top = 0.5 * (p + q) + std::sqrt(half_gap * half_gap + std::norm(r));
  return std::sqrt(std::max(0.0, top));
}

double length(const GroupElement& x) {
  ComplexMatrix m = x.as_matrix();
  m(0, 0) -= 1.0;
  m(1, 1) -= 1.0;
  return spectral_norm_2x2(m);
}

GroupElement haar_sample(RandomStream& rng) {
  double g[4];
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& gi : g) {
      gi = rng.next_gaussian();
      n2 += gi * gi;
    }
  } while (n2 == 0.0);
  const double inv = 1.0 / std::sqrt(n2);
  return {cplx(g[0] * inv, g[1] * inv), cplx(g[2] * inv, g[3] * inv)};
}

std::vector<bigint> ladder_norms_sq(int m) {
  std::vector<bigint> v(static_cast<std::size_t>(m) + 1);
  v[0] = 1;
  // |F^a e_m|^2 = a (m - a + 1) |F^{a-1} e_m|^2, telescoping to a! m!/(m-a)!.
  for (int a = 1; a <= m; ++a) v[a] = v[a - 1] * a * (m - a + 1);
  return v;
}

Irrep make_irrep(int n) {
  if (n < 0) throw precondition_error("make_irrep: n must be nonnegative");
  Irrep rep;
  rep.n = n;
  rep.dim = static_cast<std::size_t>(n) + 1;
  rep.E = ComplexMatrix(rep.dim, rep.dim);
  rep.F = ComplexMatrix(rep.dim, rep.dim);
  rep.H = ComplexMatrix(rep.dim, rep.dim);
  for (int a = 0; a <= n; ++a) {
    rep.H(a, a) = cplx(static_cast<double>(n - 2 * a), 0.0);
    if (a + 1 <= n) {
      const double c = std::sqrt(static_cast<double>(a + 1) * static_cast<double>(n - a));
      rep.F(a + 1, a) = c;
      rep.E(a, a + 1) = c;
    }
  }
  rep.unnorm_sq = ladder_norms_sq(n);
  return rep;
}

ComplexMatrix principal_log(const GroupElement& x) {
  // x = cos(phi) I + i sin(phi) (n . sigma); recover sin(phi) * n from the
  // anti-Hermitian part, which is exact for unitary x.
  const double c = x.a.real();
  const double w3 = x.a.imag();
  const double w1 = x.b.imag();
  const double w2 = -x.b.real();
  const double rho = std::sqrt(w1 * w1 + w2 * w2 + w3 * w3);
  const double phi = std::atan2(rho, c);

  ComplexMatrix out(2, 2);
  if (rho < 1e-300) {
    if (c < 0.0) {  // x = -I: pinned branch
      out(0, 0) = cplx(0.0, kPi);
      out(1, 1) = cplx(0.0, -kPi);
    }
    return out;
  }
  const double s = phi / rho;
  out(0, 0) = cplx(0.0, s * w3);
  out(1, 1) = cplx(0.0, -s * w3);
  out(0, 1) = cplx(s * w2, s * w1);
  out(1, 0) = cplx(-s * w2, s * w1);
  return out;
}

ComplexMatrix lift(const GroupElement& x, const Irrep& rep) {
  if (rep.n == 0) return ComplexMatrix::identity(1);
  const ComplexMatrix lg = principal_log(x);
  const double c = lg(0, 0).imag();
  const cplx z = lg(0, 1);
  ComplexMatrix gen = rep.H;
  gen *= cplx(0.0, c);
  ComplexMatrix ze = rep.E;
  ze *= z;
  gen += ze;
  ComplexMatrix zf = rep.F;
  zf *= -std::conj(z);
  gen += zf;
  return mat_exp(gen);
}

ComplexMatrix lift(const GroupElement& x, int n) { return lift(x, make_irrep(n)); }

double quotient_metric(const GroupElement& x, const GroupElement& y) {
  const GroupElement m = group_mul(x.inverse(), y);
  const auto f = [&](double t) { return length(group_mul(m, torus_element(t))); };

  const int grid = 256;
  double best_t = 0.0;
  double best = f(0.0);
  for (int i = 1; i < grid; ++i) {
    const double t = static_cast<double>(i) / grid;
    const double v = f(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }

  // Golden-section refinement on the bracketing grid interval.
  const double inv_grid = 1.0 / grid;
  double lo = best_t - inv_grid;
  double hi = best_t + inv_grid;
  const double golden = 0.61803398874989484820;
  double t1 = hi - golden * (hi - lo);
  double t2 = lo + golden * (hi - lo);
  double f1 = f(t1), f2 = f(t2);
  while (hi - lo > 1e-10) {
    if (f1 <= f2) {
      hi = t2;
      t2 = t1;
      f2 = f1;
      t1 = hi - golden * (hi - lo);
      f1 = f(t1);
    } else {
      lo = t1;
      t1 = t2;
      f1 = f2;
      t2 = lo + golden * (hi - lo);
      f2 = f(t2);
    }
  }
  return std::min({best, f1, f2});
}

}  // namespace fsph
