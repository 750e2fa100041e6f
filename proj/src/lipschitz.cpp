#include "fsph/lipschitz.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fsph/eig.hpp"
#include "fsph/errors.hpp"

namespace fsph {
namespace {

constexpr double kPi = 3.14159265358979323846264338;

// Chart (c, Re z, Im z) -> exp(i c H + z E - conj(z) F) in the defining
// representation, with the log norm clipped to pi.
GroupElement chart_point(std::array<double, 3> p) {
  double c = p[0];
  double zr = p[1];
  double zi = p[2];
  double phi = std::sqrt(c * c + zr * zr + zi * zi);
  if (phi > kPi) {
    const double scale = kPi / phi;
    c *= scale;
    zr *= scale;
    zi *= scale;
    phi = kPi;
  }
  const double snc = (phi < 1e-8) ? 1.0 - phi * phi / 6.0 : std::sin(phi) / phi;
  return GroupElement{cplx(std::cos(phi), c * snc), cplx(-zr * snc, zi * snc)};
}

// Nelder-Mead maximization in three parameters.
template <typename F>
std::pair<std::array<double, 3>, double> simplex_maximize(F&& f, std::array<double, 3> start,
                                                          double scale, std::size_t iterations,
                                                          double tol, bool* converged) {
  using Point = std::array<double, 3>;
  struct Vertex {
    Point x;
    double v;
  };
  std::array<Vertex, 4> s;
  s[0] = {start, f(start)};
  for (int i = 0; i < 3; ++i) {
    Point p = start;
    p[i] += scale;
    s[i + 1] = {p, f(p)};
  }
  auto order = [&]() {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.v > b.v; });
  };
  order();
  *converged = false;
  for (std::size_t it = 0; it < iterations; ++it) {
    if (std::abs(s[0].v - s[3].v) < tol * (1.0 + std::abs(s[0].v))) {
      *converged = true;
      break;
    }
    Point centroid{};
    for (int i = 0; i < 3; ++i)
      centroid[i] = (s[0].x[i] + s[1].x[i] + s[2].x[i]) / 3.0;
    auto blend = [&](double alpha) {
      Point p;
      for (int i = 0; i < 3; ++i) p[i] = centroid[i] + alpha * (centroid[i] - s[3].x[i]);
      return p;
    };
    const Point refl = blend(1.0);
    const double frefl = f(refl);
    if (frefl > s[0].v) {
      const Point expd = blend(2.0);
      const double fexpd = f(expd);
      s[3] = (fexpd > frefl) ? Vertex{expd, fexpd} : Vertex{refl, frefl};
    } else if (frefl > s[2].v) {
      s[3] = {refl, frefl};
    } else {
      const Point contr = blend(-0.5);
      const double fcontr = f(contr);
      if (fcontr > s[3].v) {
        s[3] = {contr, fcontr};
      } else {
        for (int i = 1; i < 4; ++i) {
          for (int d = 0; d < 3; ++d) s[i].x[d] = 0.5 * (s[i].x[d] + s[0].x[d]);
          s[i].v = f(s[i].x);
        }
      }
    }
    order();
  }
  return {s[0].x, s[0].v};
}

}  // namespace

ComplexMatrix conj_right_blocks(const ComplexMatrix& t, const ComplexMatrix& u, std::size_t m) {
  const std::size_t nn = u.rows();
  if (t.rows() != m * nn) throw dimension_error("conj_right_blocks: size mismatch");
  ComplexMatrix out(t.rows(), t.cols());
  const ComplexMatrix ua = u.adjoint();
  for (std::size_t bi = 0; bi < m; ++bi)
    for (std::size_t bj = 0; bj < m; ++bj) {
      // out block = u * t_block * u^*
      ComplexMatrix blk(nn, nn);
      for (std::size_t r = 0; r < nn; ++r)
        for (std::size_t c = 0; c < nn; ++c) blk(r, c) = t(bi * nn + r, bj * nn + c);
      const ComplexMatrix res = u * blk * ua;
      for (std::size_t r = 0; r < nn; ++r)
        for (std::size_t c = 0; c < nn; ++c) out(bi * nn + r, bj * nn + c) = res(r, c);
    }
  return out;
}

ComplexMatrix conj_left_blocks(const ComplexMatrix& t, const ComplexMatrix& u, std::size_t m) {
  const std::size_t dd = u.rows();
  if (t.rows() != dd * m) throw dimension_error("conj_left_blocks: size mismatch");
  ComplexMatrix out(t.rows(), t.cols());
  for (std::size_t i = 0; i < dd; ++i)
    for (std::size_t j = 0; j < dd; ++j) {
      // out block (i, j) = sum_{a, b} u(i, a) conj(u(j, b)) t_block(a, b)
      for (std::size_t a = 0; a < dd; ++a) {
        if (u(i, a) == cplx(0.0, 0.0)) continue;
        for (std::size_t b = 0; b < dd; ++b) {
          const cplx w = u(i, a) * std::conj(u(j, b));
          if (w == cplx(0.0, 0.0)) continue;
          for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
              out(i * m + r, j * m + c) += w * t(a * m + r, b * m + c);
        }
      }
    }
  return out;
}

ConjugationAction conj_action(const Irrep& rep) {
  ConjugationAction act;
  act.dim = rep.dim;
  act.apply = [rep](const ComplexMatrix& t, const GroupElement& x) {
    const ComplexMatrix u = lift(x, rep);
    return u * t * u.adjoint();
  };
  return act;
}

ConjugationAction right_factor_action(std::size_t m, const Irrep& rep) {
  ConjugationAction act;
  act.dim = m * rep.dim;
  act.apply = [m, rep](const ComplexMatrix& t, const GroupElement& x) {
    return conj_right_blocks(t, lift(x, rep), m);
  };
  return act;
}

ConjugationAction left_factor_action(const Irrep& rep, std::size_t m) {
  ConjugationAction act;
  act.dim = rep.dim * m;
  act.apply = [m, rep](const ComplexMatrix& t, const GroupElement& x) {
    return conj_left_blocks(t, lift(x, rep), m);
  };
  return act;
}

double action_quotient(const ComplexMatrix& t, const ConjugationAction& action,
                       const GroupElement& x, double exclusion) {
  const double len = length(x);
  if (len < exclusion) return 0.0;
  ComplexMatrix moved = action.apply(t, x);
  moved -= t;
  return spectral_norm(moved) / len;
}

SeminormEstimate estimate_on_witnesses(const ComplexMatrix& t, const ConjugationAction& action,
                                       std::span<const GroupElement> witnesses,
                                       double exclusion) {
  SeminormEstimate est;
  est.starts = witnesses.size();
  for (const GroupElement& x : witnesses) {
    const double q = action_quotient(t, action, x, exclusion);
    if (q > est.value) {
      est.value = q;
      est.witness = x;
    }
  }
  est.converged = true;
  return est;
}

SeminormEstimate lip_action_estimate(const ComplexMatrix& t, const ConjugationAction& action,
                                     const SearchOptions& opts) {
  if (t.rows() != action.dim || t.cols() != action.dim)
    throw dimension_error("lip_action_estimate: operator does not match the action space");

  struct StartResult {
    double value = 0.0;
    std::array<double, 3> point{};
    bool converged = false;
  };
  std::vector<StartResult> results(opts.starts);
  std::vector<std::array<double, 3>> seeds(opts.starts);
  RandomStream rng(opts.seed);
  for (std::size_t s = 0; s < opts.starts; ++s)
    seeds[s] = {rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian()};

  const auto objective = [&](const std::array<double, 3>& p) {
    return action_quotient(t, action, chart_point(p), opts.exclusion);
  };

#pragma omp parallel for schedule(dynamic) if (opts.starts > 1)
  for (long long s = 0; s < static_cast<long long>(opts.starts); ++s) {
    bool conv = false;
    const auto [point, value] =
        simplex_maximize(objective, seeds[s], 0.35, opts.iterations, opts.tolerance, &conv);
    results[s] = StartResult{value, point, conv};
  }

  // Deterministic reduction: value first, then lowest start index.
  SeminormEstimate est;
  est.starts = opts.starts;
  est.iterations = opts.iterations;
  std::size_t best = 0;
  for (std::size_t s = 1; s < results.size(); ++s)
    if (results[s].value > results[best].value) best = s;
  if (!results.empty()) {
    est.value = results[best].value;
    est.witness = chart_point(results[best].point);
    est.converged = results[best].converged;
  }
  return est;
}

SeminormEstimate lip_sphere_estimate(const MatrixField& field, std::size_t pairs,
                                     std::uint64_t seed, std::size_t refine_iterations) {
  RandomStream rng(seed);

  // Precondition: the field must descend to the quotient sphere.
  for (int i = 0; i < 4; ++i) {
    const GroupElement x = haar_sample(rng);
    const double t = rng.next_double();
    ComplexMatrix diff = field(group_mul(x, torus_element(t)));
    diff -= field(x);
    if (diff.frobenius_norm() > 1e-8)
      throw precondition_error("lip_sphere_estimate: field is not constant on circle fibers");
  }

  const double exclusion = 1e-6;
  const auto pair_quotient = [&](const GroupElement& x, const GroupElement& y) {
    const double dist = quotient_metric(x, y);
    if (dist < exclusion) return 0.0;
    ComplexMatrix diff = field(x);
    diff -= field(y);
    return spectral_norm(diff) / dist;
  };

  SeminormEstimate est;
  est.starts = pairs;
  for (std::size_t i = 0; i < pairs; ++i) {
    const GroupElement x = haar_sample(rng);
    const GroupElement y = haar_sample(rng);
    const double q = pair_quotient(x, y);
    if (q > est.value) {
      est.value = q;
      est.witness = x;
      est.witness_pair = y;
    }
  }

  // Local refinement around the best pair: greedy coordinate perturbations
  // with a shrinking radius (derivative-free, deterministic given the seed).
  GroupElement bx = est.witness, by = est.witness_pair;
  double radius = 0.4;
  for (std::size_t it = 0; it < refine_iterations; ++it) {
    bool improved = false;
    for (int which = 0; which < 2; ++which) {
      const GroupElement delta = chart_point(
          {radius * rng.next_gaussian(), radius * rng.next_gaussian(), radius * rng.next_gaussian()});
      const GroupElement cx = (which == 0) ? group_mul(delta, bx) : bx;
      const GroupElement cy = (which == 1) ? group_mul(delta, by) : by;
      const double q = pair_quotient(cx, cy);
      if (q > est.value) {
        est.value = q;
        bx = cx;
        by = cy;
        improved = true;
      }
    }
    if (!improved) radius *= 0.85;
    if (radius < 1e-7) break;
  }
  est.witness = bx;
  est.witness_pair = by;
  est.iterations = refine_iterations;
  est.converged = true;
  return est;
}

double beta_gamma_identity_check(const ModuleProjection& module, const Irrep& rep_left,
                                 const Irrep& rep_right, const GroupElement& x) {
  const std::size_t d = rep_left.dim;
  const ComplexMatrix beta = conj_right_blocks(module.matrix, lift(x, rep_right), d);
  const ComplexMatrix gamma =
      conj_left_blocks(module.matrix, lift(x.inverse(), rep_left), rep_right.dim);
  return (beta - gamma).frobenius_norm();
}

double beta_gamma_identity_check(int k, int n, const GroupElement& x) {
  const ModuleProjection module = module_projection(k, n);
  return beta_gamma_identity_check(module, make_irrep(std::abs(k)), make_irrep(n), x);
}

SlipAxiomReport slip_axiom_check(const Irrep& rep, std::span<const GroupElement> witnesses,
                                 std::size_t samples, std::size_t max_amplification,
                                 std::uint64_t seed, double tol) {
  RandomStream rng(seed);
  SlipAxiomReport report;
  report.samples = samples;

  const auto random_mat = [&rng](std::size_t r, std::size_t c) {
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian());
    return m;
  };
  const auto level = [&](std::size_t m, const ComplexMatrix& t) {
    return estimate_on_witnesses(t, right_factor_action(m, rep), witnesses).value;
  };

  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t d = 1 + rng.next_u64() % max_amplification;
    const std::size_t m = 1 + rng.next_u64() % max_amplification;
    const ComplexMatrix a = random_mat(d * rep.dim, d * rep.dim);

    // Compression: L_m(alpha A beta) <= |alpha| L_d(A) |beta|.
    const ComplexMatrix alpha = random_mat(m, d);
    const ComplexMatrix beta = random_mat(d, m);
    const ComplexMatrix compressed =
        kron(alpha, ComplexMatrix::identity(rep.dim)) * a * kron(beta, ComplexMatrix::identity(rep.dim));
    const double lhs = level(m, compressed);
    const double rhs = spectral_norm(alpha) * level(d, a) * spectral_norm(beta);
    report.max_compression_violation = std::max(report.max_compression_violation, lhs - rhs);

    // Block diagonal: L_{d+e}(diag(A, C)) = max(L_d(A), L_e(C)).
    const std::size_t e = 1 + rng.next_u64() % max_amplification;
    const ComplexMatrix c = random_mat(e * rep.dim, e * rep.dim);
    ComplexMatrix diag(d * rep.dim + e * rep.dim, d * rep.dim + e * rep.dim);
    for (std::size_t i = 0; i < d * rep.dim; ++i)
      for (std::size_t j = 0; j < d * rep.dim; ++j) diag(i, j) = a(i, j);
    for (std::size_t i = 0; i < e * rep.dim; ++i)
      for (std::size_t j = 0; j < e * rep.dim; ++j)
        diag(d * rep.dim + i, d * rep.dim + j) = c(i, j);
    const double whole = level(d + e, diag);
    const double parts = std::max(level(d, a), level(e, c));
    report.max_block_deviation = std::max(report.max_block_deviation, std::abs(whole - parts));
  }
  report.pass = report.max_compression_violation <= tol && report.max_block_deviation <= tol;
  return report;
}

LeibnizCheck leibniz_spotcheck(const ComplexMatrix& t1, const ComplexMatrix& t2,
                               const ConjugationAction& action,
                               std::span<const GroupElement> witnesses) {
  const double l12 = estimate_on_witnesses(t1 * t2, action, witnesses).value;
  const double l1 = estimate_on_witnesses(t1, action, witnesses).value;
  const double l2 = estimate_on_witnesses(t2, action, witnesses).value;
  const double rhs = l1 * spectral_norm(t2) + spectral_norm(t1) * l2;
  return LeibnizCheck{l12 <= rhs + 1e-9, rhs - l12};
}

std::vector<GroupElement> haar_witnesses(std::size_t count, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<GroupElement> w;
  w.reserve(count);
  for (std::size_t i = 0; i < count; ++i) w.push_back(haar_sample(rng));
  return w;
}

}  // namespace fsph
