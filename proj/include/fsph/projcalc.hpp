#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "fsph/contour.hpp"
#include "fsph/matrix.hpp"

namespace fsph {

using SeminormEvaluator = std::function<double(const ComplexMatrix&)>;

// Spectral projection onto the eigenvalues above 1/2. The input must be
// self-adjoint within 1e-8 and keep its spectrum at least gap_tol away from
// 1/2, otherwise singularity_error names the offending eigenvalue.
ComplexMatrix nearest_projection(const ComplexMatrix& c, double gap_tol = 1e-3);

// Norm-continuous family of projections produced by spectral cuts of the
// affine segment between two projections.
struct ProjectionPath {
  ComplexMatrix p0, p1;
  std::vector<double> t_grid;
  std::vector<ComplexMatrix> path;
  double delta = 0.0;  // effective endpoint distance used by the invariants
};

std::vector<double> uniform_grid(std::size_t points = 101);

// p_t = nearest_projection((1-t) p0 + t p1). Requires |p0 - p1| < 1.
ProjectionPath projection_path(const ComplexMatrix& p0, const ComplexMatrix& p1,
                               const std::vector<double>& t_grid = uniform_grid(),
                               double gap_tol = 1e-3);

struct PathValidation {
  bool valid = true;
  std::string detail;
};

// Checks idempotence/self-adjointness of every point, grid-scale norm
// continuity 2 dt / (1 - delta), endpoint matching, and trace constancy.
PathValidation validate_path(const ProjectionPath& path, double proj_tol = 1e-9,
                             double continuity_slack = 1e-8, double endpoint_tol = 1e-10);

// Joins two paths end-to-start on a merged half-scale grid. The effective
// delta becomes (1 + max(delta_a, delta_b)) / 2 so the continuity invariant
// carries over to the halved grid steps.
ProjectionPath concatenate_paths(const ProjectionPath& a, const ProjectionPath& b,
                                 double join_tol = 1e-8);

struct PathProfile {
  std::vector<double> values;
  double max_value = 0.0;
  double bound = 0.0;  // (1 - delta)^{-1} max(L(p0), L(p1)) plus headroom
  bool within_bound = false;
};

// Seminorm along the path against the spectral-cut growth bound. The
// headroom absorbs float noise only; the evaluator is a lower bound, so a
// violation is a real failure of the constructed path.
PathProfile path_seminorm_profile(const ProjectionPath& path, const SeminormEvaluator& seminorm,
                                  double headroom = 0.05);

struct HomotopyDecision {
  double delta = 0.0;
  bool guaranteed = false;  // delta < 1
};

// delta = |p0 - p1| + eps (L(q0) + L(q1)).
HomotopyDecision homotopy_decision(double endpoint_distance, double eps, double lq0, double lq1);

struct BridgeDecision {
  double value = 0.0;
  bool guaranteed = false;  // value < 1/2
};

BridgeDecision bridge_homotopy_decision(double h, double r, double lr);

struct HoloBoundCheck {
  bool holds = false;
  double left = 0.0;
  double right = 0.0;
};

// Functional-calculus seminorm bound: L(theta(c)) against
// (1/2pi) (integral of |theta| arc length) * M^2 * L(c), with M the largest
// resolvent norm on the contour.
HoloBoundCheck holo_seminorm_bound_check(const ComplexMatrix& c,
                                         const std::function<cplx(cplx)>& theta,
                                         const Contour& gamma, const SeminormEvaluator& seminorm,
                                         double tol = 1e-6);

// Pair of projections of the given rank at exact spectral distance
// sin(theta), conjugated into a seeded random orthonormal frame.
struct ProjectionPair {
  ComplexMatrix p0, p1;
};

ProjectionPair rotated_projection_pair(std::size_t dim, std::size_t rank, double theta,
                                       std::uint64_t seed);

}  // namespace fsph
