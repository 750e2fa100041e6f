#include "fsph/modules.hpp"

#include <cmath>

#include "fsph/errors.hpp"

namespace fsph {
namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

bigint binomial(int n, int r) {
  bigint v = 1;
  for (int i = 0; i < r; ++i) {
    v *= (n - i);
    v /= (i + 1);
  }
  return v;
}

double sign_of(const bigint& v) { return v < 0 ? -1.0 : (v > 0 ? 1.0 : 0.0); }

cplx ipow(cplx z, int p) {
  cplx r(1.0, 0.0);
  for (int i = 0; i < p; ++i) r *= z;
  return r;
}

}  // namespace

cvec HighestWeightData::normalized_vector(std::size_t a) const {
  const std::size_t q1 = dim_left();
  const std::size_t n1 = dim_right();
  const std::vector<bigint> ue = ladder_norms_sq(std::abs(k));
  const std::vector<bigint> uf = ladder_norms_sq(n);
  cvec out(q1 * n1, cplx(0.0, 0.0));
  const bigint& nrm = norm_sq[a];
  for (std::size_t i = 0; i < q1; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      const bigint& c = coeffs[a][i * n1 + j];
      if (c == 0) continue;
      const bigrat frac(c * c * ue[i] * uf[j], nrm);
      out[i * n1 + j] = sign_of(c) * std::sqrt(frac.convert_to<double>());
    }
  return out;
}

HighestWeightData highest_weight_vector(int k, int n) {
  if (n < 1) throw precondition_error("highest_weight_vector: n >= 1 required");
  if (k + n < 0) throw precondition_error("highest_weight_vector: k + n >= 0 required");
  const int q = std::abs(k);
  const std::size_t q1 = static_cast<std::size_t>(q) + 1;
  const std::size_t n1 = static_cast<std::size_t>(n) + 1;

  HighestWeightData hw;
  hw.k = k;
  hw.n = n;

  // Top vector over the unnormalized product basis.
  std::vector<bigint> top(q1 * n1, bigint(0));
  if (k >= 0) {
    hw.alpha = {bigint(1)};
    top[0 * n1 + 0] = 1;
  } else {
    // alpha_b = (-1)^b C(n+k+b, b), placed at e_b (x) f_{q-b}.
    hw.alpha.resize(static_cast<std::size_t>(q) + 1);
    for (int b = 0; b <= q; ++b) {
      bigint ab = binomial(n - q + b, b);
      if (b % 2 == 1) ab = -ab;
      hw.alpha[b] = ab;
      top[static_cast<std::size_t>(b) * n1 + static_cast<std::size_t>(q - b)] = ab;
    }
  }

  // Descend with the integer lowering action F (e_i x f_j) = e_{i+1} x f_j
  // + e_i x f_{j+1}.
  const int descents = k + n;
  hw.coeffs.reserve(descents + 1);
  hw.coeffs.push_back(std::move(top));
  for (int a = 1; a <= descents; ++a) {
    const std::vector<bigint>& prev = hw.coeffs.back();
    std::vector<bigint> cur(q1 * n1, bigint(0));
    for (std::size_t i = 0; i < q1; ++i)
      for (std::size_t j = 0; j < n1; ++j) {
        const bigint& c = prev[i * n1 + j];
        if (c == 0) continue;
        if (i + 1 < q1) cur[(i + 1) * n1 + j] += c;
        if (j + 1 < n1) cur[i * n1 + (j + 1)] += c;
      }
    hw.coeffs.push_back(std::move(cur));
  }

  const std::vector<bigint> ue = ladder_norms_sq(q);
  const std::vector<bigint> uf = ladder_norms_sq(n);
  hw.norm_sq.resize(hw.coeffs.size());
  hw.v_vectors.resize(hw.coeffs.size());
  for (std::size_t a = 0; a < hw.coeffs.size(); ++a) {
    bigint s = 0;
    cvec vf(q1 * n1, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < q1; ++i)
      for (std::size_t j = 0; j < n1; ++j) {
        const bigint& c = hw.coeffs[a][i * n1 + j];
        if (c == 0) continue;
        s += c * c * ue[i] * uf[j];
        const bigrat w2(c * c * ue[i] * uf[j], 1);
        vf[i * n1 + j] = sign_of(c) * std::sqrt(w2.convert_to<double>());
      }
    hw.norm_sq[a] = std::move(s);
    hw.v_vectors[a] = std::move(vf);
  }
  return hw;
}

ModuleProjection module_projection(const HighestWeightData& hw) {
  ModuleProjection p;
  p.k = hw.k;
  p.n = hw.n;
  p.rank = hw.k + hw.n + 1;
  p.matrix = ComplexMatrix(hw.dim(), hw.dim());
  for (std::size_t a = 0; a < hw.coeffs.size(); ++a) {
    const cvec v = hw.normalized_vector(a);
    p.matrix += ComplexMatrix::outer(v, v);
  }
  return p;
}

ModuleProjection module_projection(int k, int n) {
  return module_projection(highest_weight_vector(k, n));
}

SphereProjectionField make_sphere_field(int k) {
  SphereProjectionField f;
  f.k = k;
  f.rep = make_irrep(std::abs(k));
  f.p_line = ComplexMatrix(f.rep.dim, f.rep.dim);
  const std::size_t line = (k >= 0) ? 0 : f.rep.dim - 1;
  f.p_line(line, line) = 1.0;
  return f;
}

ComplexMatrix sphere_projection(const SphereProjectionField& field, const GroupElement& x) {
  const ComplexMatrix u = lift(x, field.rep);
  return u * field.p_line * u.adjoint();
}

std::vector<cvec> frame_sections(const SphereProjectionField& field, const GroupElement& x) {
  const ComplexMatrix u_adj = lift(x, field.rep).adjoint();
  const std::size_t d = field.rep.dim;
  std::vector<cvec> sections(d);
  const std::size_t line = (field.k >= 0) ? 0 : d - 1;
  for (std::size_t j = 0; j < d; ++j) {
    cvec g(d, cplx(0.0, 0.0));
    g[line] = u_adj(line, j);  // P^k keeps only the reference line
    sections[j] = std::move(g);
  }
  return sections;
}

ComplexMatrix frame_gram(const std::vector<cvec>& sections) {
  const std::size_t d = sections.size();
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = inner(sections[i], sections[j]);
  return g;
}

ComplexMatrix clutching_matrix(int j, int k, cplx z, cplx w) {
  if (j < 0 || k < 0) throw precondition_error("clutching_matrix: charges must be nonnegative");
  if (std::abs(std::norm(z) + std::norm(w) - 1.0) > 1e-10)
    throw precondition_error("clutching_matrix: (z, w) is off the unit 3-sphere");
  ComplexMatrix m(2, 2);
  m(0, 0) = ipow(std::conj(z), k);
  m(0, 1) = -ipow(std::conj(w), j);
  m(1, 0) = ipow(w, j);
  m(1, 1) = ipow(z, k);
  return m;
}

std::vector<GroupElement> s3_grid(std::size_t count, std::uint64_t seed) {
  // Kronecker lattice in Hopf coordinates (u, theta, psi); the map
  // (sqrt(1-u) e(theta), sqrt(u) e(psi)) is area-preserving onto the sphere.
  const double g = 1.2207440846057594753;  // root of x^3 = x + 1
  const double a1 = 1.0 / g;
  const double a2 = 1.0 / (g * g);
  const double a3 = 1.0 / (g * g * g);
  RandomStream rng(seed);
  const double o1 = rng.next_double();
  const double o2 = rng.next_double();
  const double o3 = rng.next_double();

  std::vector<GroupElement> grid;
  grid.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    const double md = static_cast<double>(m + 1);
    const double u = std::fmod(o1 + a1 * md, 1.0);
    const double th = std::fmod(o2 + a2 * md, 1.0);
    const double ps = std::fmod(o3 + a3 * md, 1.0);
    const double rz = std::sqrt(1.0 - u);
    const double rw = std::sqrt(u);
    grid.push_back(GroupElement{cplx(rz * std::cos(kTwoPi * th), rz * std::sin(kTwoPi * th)),
                                cplx(rw * std::cos(kTwoPi * ps), rw * std::sin(kTwoPi * ps))});
  }
  return grid;
}

double equivariance_residual(const SphereFunction& xi, int charge,
                             const std::vector<GroupElement>& grid) {
  // Fixed circle parameters are enough: equivariance is a one-parameter law.
  static const double ts[] = {0.17305, 0.39841, 0.66123, 0.91427};
  double worst = 0.0;
  for (const GroupElement& x : grid) {
    const cplx base = xi(x.a, x.b);
    for (double t : ts) {
      const cplx phase(std::cos(kTwoPi * t), std::sin(kTwoPi * t));
      const cplx expected = std::conj(ipow(phase, charge)) * base;
      const cplx got = xi(x.a * phase, x.b * phase);
      worst = std::max(worst, std::abs(got - expected));
    }
  }
  return worst;
}

SectionPair clutching_apply(int j, int k, const SectionPair& in,
                            const std::vector<GroupElement>& grid, double tol) {
  if (j < 0 || k < 0) throw precondition_error("clutching_apply: charges must be nonnegative");
  if (equivariance_residual(in.f, j, grid) > tol)
    throw precondition_error("clutching_apply: first section is not charge-" + std::to_string(j) +
                             " equivariant on the grid");
  if (equivariance_residual(in.g, k, grid) > tol)
    throw precondition_error("clutching_apply: second section is not charge-" + std::to_string(k) +
                             " equivariant on the grid");
  const SphereFunction f = in.f;
  const SphereFunction g = in.g;
  SectionPair out;
  out.f = [k, j, f, g](cplx z, cplx w) {
    return ipow(std::conj(z), k) * f(z, w) - ipow(std::conj(w), j) * g(z, w);
  };
  out.g = [k, j, f, g](cplx z, cplx w) { return ipow(w, j) * f(z, w) + ipow(z, k) * g(z, w); };
  return out;
}

SectionPair clutching_apply_inverse(int j, int k, const SectionPair& in) {
  if (j < 0 || k < 0)
    throw precondition_error("clutching_apply_inverse: charges must be nonnegative");
  const SphereFunction f = in.f;
  const SphereFunction g = in.g;
  SectionPair out;
  out.f = [k, j, f, g](cplx z, cplx w) {
    const double det = std::pow(std::norm(z), k) + std::pow(std::norm(w), j);
    return (ipow(z, k) * f(z, w) + ipow(std::conj(w), j) * g(z, w)) / det;
  };
  out.g = [k, j, f, g](cplx z, cplx w) {
    const double det = std::pow(std::norm(z), k) + std::pow(std::norm(w), j);
    return (-ipow(w, j) * f(z, w) + ipow(std::conj(z), k) * g(z, w)) / det;
  };
  return out;
}

}  // namespace fsph
