#include "fsph/projcalc.hpp"

#include <cmath>

#include "fsph/eig.hpp"
#include "fsph/errors.hpp"
#include "fsph/rng.hpp"

namespace fsph {

ComplexMatrix nearest_projection(const ComplexMatrix& c, double gap_tol) {
  if (!c.square() || c.empty()) throw dimension_error("nearest_projection: square matrix required");
  if (!is_hermitian(c, 1e-8)) throw precondition_error("nearest_projection: input is not self-adjoint");
  ComplexMatrix sym(c.rows(), c.cols());
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) sym(i, j) = 0.5 * (c(i, j) + std::conj(c(j, i)));

  const HermitianSpectrum spectrum = herm_eig(sym);
  for (double lam : spectrum.eigenvalues)
    if (std::abs(lam - 0.5) < gap_tol)
      throw singularity_error("nearest_projection: eigenvalue " + std::to_string(lam) +
                              " is within gap_tol of 1/2");

  const std::size_t n = c.rows();
  ComplexMatrix p(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (spectrum.eigenvalues[j] <= 0.5) continue;
    cvec col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = spectrum.eigenvectors(r, j);
    p += ComplexMatrix::outer(col, col);
  }
  return p;
}

std::vector<double> uniform_grid(std::size_t points) {
  if (points < 2) throw precondition_error("uniform_grid: at least two points required");
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

ProjectionPath projection_path(const ComplexMatrix& p0, const ComplexMatrix& p1,
                               const std::vector<double>& t_grid, double gap_tol) {
  if (p0.rows() != p1.rows() || p0.cols() != p1.cols() || !p0.square())
    throw dimension_error("projection_path: endpoint shapes differ");
  if ((p0 * p0 - p0).max_abs() > 1e-6 || (p1 * p1 - p1).max_abs() > 1e-6)
    throw precondition_error("projection_path: endpoints are not projections");
  if (t_grid.size() < 2 || t_grid.front() != 0.0 || t_grid.back() != 1.0)
    throw precondition_error("projection_path: grid must run from 0 to 1");

  ProjectionPath out;
  out.p0 = p0;
  out.p1 = p1;
  out.t_grid = t_grid;
  out.delta = spectral_norm(p0 - p1);
  if (out.delta >= 1.0)
    throw no_path_error("projection_path: endpoint distance " + std::to_string(out.delta) +
                        " >= 1, spectral cut undefined");
  if (std::abs(p0.trace() - p1.trace()) > 1e-8)
    throw precondition_error("projection_path: endpoint traces differ");

  out.path.resize(t_grid.size());
#pragma omp parallel for schedule(dynamic) if (t_grid.size() > 4)
  for (long long i = 0; i < static_cast<long long>(t_grid.size()); ++i) {
    const double t = t_grid[static_cast<std::size_t>(i)];
    ComplexMatrix seg = p0;
    seg *= cplx(1.0 - t, 0.0);
    ComplexMatrix s1 = p1;
    s1 *= cplx(t, 0.0);
    seg += s1;
    out.path[static_cast<std::size_t>(i)] = nearest_projection(seg, gap_tol);
  }
  return out;
}

PathValidation validate_path(const ProjectionPath& path, double proj_tol,
                             double continuity_slack, double endpoint_tol) {
  PathValidation v;
  if (path.path.size() != path.t_grid.size() || path.path.empty())
    return {false, "empty or inconsistent path"};

  for (std::size_t i = 0; i < path.path.size(); ++i) {
    const ComplexMatrix& p = path.path[i];
    if ((p * p - p).max_abs() > proj_tol) return {false, "idempotence fails at grid index " + std::to_string(i)};
    if ((p.adjoint() - p).max_abs() > proj_tol)
      return {false, "self-adjointness fails at grid index " + std::to_string(i)};
  }
  const double trace0 = path.path.front().trace().real();
  for (std::size_t i = 1; i < path.path.size(); ++i) {
    if (std::abs(path.path[i].trace().real() - trace0) > 1e-8)
      return {false, "trace drifts at grid index " + std::to_string(i)};
    const double step = path.t_grid[i] - path.t_grid[i - 1];
    const double bound = 2.0 * step / (1.0 - path.delta) + continuity_slack;
    if (spectral_norm(path.path[i] - path.path[i - 1]) > bound)
      return {false, "continuity bound fails at grid index " + std::to_string(i)};
  }
  if ((path.path.front() - path.p0).max_abs() > endpoint_tol) return {false, "start point mismatch"};
  if ((path.path.back() - path.p1).max_abs() > endpoint_tol) return {false, "end point mismatch"};
  return v;
}

ProjectionPath concatenate_paths(const ProjectionPath& a, const ProjectionPath& b,
                                 double join_tol) {
  if (a.path.empty() || b.path.empty())
    throw precondition_error("concatenate_paths: empty input path");
  if ((a.path.back() - b.path.front()).max_abs() > join_tol)
    throw precondition_error("concatenate_paths: paths do not meet at the join point");

  ProjectionPath out;
  out.p0 = a.p0;
  out.p1 = b.p1;
  out.delta = 0.5 * (1.0 + std::max(a.delta, b.delta));
  out.t_grid.reserve(a.t_grid.size() + b.t_grid.size() - 1);
  out.path.reserve(a.t_grid.size() + b.t_grid.size() - 1);
  for (std::size_t i = 0; i < a.t_grid.size(); ++i) {
    out.t_grid.push_back(0.5 * a.t_grid[i]);
    out.path.push_back(a.path[i]);
  }
  for (std::size_t i = 1; i < b.t_grid.size(); ++i) {
    out.t_grid.push_back(0.5 + 0.5 * b.t_grid[i]);
    out.path.push_back(b.path[i]);
  }
  return out;
}

PathProfile path_seminorm_profile(const ProjectionPath& path, const SeminormEvaluator& seminorm,
                                  double headroom) {
  PathProfile profile;
  profile.values.reserve(path.path.size());
  for (const ComplexMatrix& p : path.path) {
    profile.values.push_back(seminorm(p));
    profile.max_value = std::max(profile.max_value, profile.values.back());
  }
  const double ends = std::max(profile.values.front(), profile.values.back());
  profile.bound = (1.0 + headroom) * ends / (1.0 - path.delta);
  profile.within_bound = profile.max_value <= profile.bound;
  return profile;
}

HomotopyDecision homotopy_decision(double endpoint_distance, double eps, double lq0, double lq1) {
  if (endpoint_distance < 0.0 || eps < 0.0 || lq0 < 0.0 || lq1 < 0.0)
    throw precondition_error("homotopy_decision: inputs must be nonnegative");
  HomotopyDecision d;
  d.delta = endpoint_distance + eps * (lq0 + lq1);
  d.guaranteed = d.delta < 1.0;
  return d;
}

BridgeDecision bridge_homotopy_decision(double h, double r, double lr) {
  if (h < 0.0 || r < 0.0 || lr < 0.0)
    throw precondition_error("bridge_homotopy_decision: inputs must be nonnegative");
  BridgeDecision d;
  d.value = (h + r) * lr;
  d.guaranteed = d.value < 0.5;
  return d;
}

HoloBoundCheck holo_seminorm_bound_check(const ComplexMatrix& c,
                                         const std::function<cplx(cplx)>& theta,
                                         const Contour& gamma, const SeminormEvaluator& seminorm,
                                         double tol) {
  HoloBoundCheck check;
  const ComplexMatrix image = resolvent_contour_sum(c, theta, gamma);
  check.left = seminorm(image);

  double theta_arc = 0.0;  // Riemann sum of |theta| d|z|
  const double darc = 6.283185307179586 * gamma.radius / static_cast<double>(gamma.points);
  for (const cplx& z : contour_nodes(gamma)) theta_arc += std::abs(theta(z)) * darc;
  const double m_gamma = resolvent_bound(c, gamma);
  check.right = theta_arc / 6.283185307179586 * m_gamma * m_gamma * seminorm(c);
  check.holds = check.left <= check.right + tol;
  return check;
}

ProjectionPair rotated_projection_pair(std::size_t dim, std::size_t rank, double theta,
                                       std::uint64_t seed) {
  if (rank == 0 || rank >= dim)
    throw precondition_error("rotated_projection_pair: need 0 < rank < dim");

  // Seeded random orthonormal frame by Gram-Schmidt.
  RandomStream rng(seed);
  ComplexMatrix v(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    cvec col(dim);
    for (std::size_t r = 0; r < dim; ++r) col[r] = cplx(rng.next_gaussian(), rng.next_gaussian());
    for (std::size_t prev = 0; prev < j; ++prev) {
      cvec pcol(dim);
      for (std::size_t r = 0; r < dim; ++r) pcol[r] = v(r, prev);
      const cplx overlap = inner(col, pcol);
      for (std::size_t r = 0; r < dim; ++r) col[r] -= overlap * pcol[r];
    }
    const double nrm = vec_norm(col);
    for (std::size_t r = 0; r < dim; ++r) v(r, j) = col[r] / nrm;
  }

  // Plane rotation between the last kept direction and the first dropped one.
  ComplexMatrix rot = ComplexMatrix::identity(dim);
  rot(rank - 1, rank - 1) = std::cos(theta);
  rot(rank - 1, rank) = -std::sin(theta);
  rot(rank, rank - 1) = std::sin(theta);
  rot(rank, rank) = std::cos(theta);

  ComplexMatrix diag(dim, dim);
  for (std::size_t i = 0; i < rank; ++i) diag(i, i) = 1.0;

  ProjectionPair pair;
  pair.p0 = v * diag * v.adjoint();
  pair.p1 = v * (rot * diag * rot.adjoint()) * v.adjoint();
  return pair;
}

}  // namespace fsph
