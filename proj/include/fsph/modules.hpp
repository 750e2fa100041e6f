#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <vector>

#include "fsph/matrix.hpp"
#include "fsph/su2.hpp"

namespace fsph {

using bigrat = boost::multiprecision::cpp_rational;

// Ladder data for the top-weight vector of the charge-k module inside
// H^{|k|} (x) H^n. All coefficients are kept over the unnormalized product
// ladder basis, where the lowering operator has integer matrix elements, so
// everything up to the final float conversion is exact.
//
// Basis convention: index pair (i, j) <-> e_i (x) f_j, flattened to
// i * (n+1) + j; e_i is the i-th unnormalized ladder vector of H^{|k|}
// (weight |k| - 2i) and f_j the j-th of H^n.
struct HighestWeightData {
  int k = 0;
  int n = 1;
  std::vector<bigint> alpha;                // signed coefficients of the top vector
  std::vector<std::vector<bigint>> coeffs;  // descended vectors, flattened (q+1)(n+1)
  std::vector<bigint> norm_sq;              // exact squared norms of the descents
  std::vector<cvec> v_vectors;              // float image in the orthonormal basis

  std::size_t dim_left() const { return static_cast<std::size_t>(std::abs(k)) + 1; }
  std::size_t dim_right() const { return static_cast<std::size_t>(n) + 1; }
  std::size_t dim() const { return dim_left() * dim_right(); }

  // Unit descended vector in the orthonormal tensor basis. Each component is
  // the square root of an exact rational, so no intermediate overflow.
  cvec normalized_vector(std::size_t a) const;
};

// Builds the exact top-weight vector and its full ladder. Requires k+n >= 0.
HighestWeightData highest_weight_vector(int k, int n);

// Projection of H^{|k|} (x) H^n onto the top irreducible summand.
struct ModuleProjection {
  int k = 0;
  int n = 1;
  int rank = 0;  // k + n + 1
  ComplexMatrix matrix;
};

ModuleProjection module_projection(int k, int n);
ModuleProjection module_projection(const HighestWeightData& hw);

// Rank-one projection field x -> U^{|k|}_x P^k U^{|k|*}_x on the sphere.
// P^k fixes the top weight line for k >= 0, the bottom line for k <= -1.
struct SphereProjectionField {
  int k = 0;
  Irrep rep;             // highest weight |k|
  ComplexMatrix p_line;  // the reference rank-one projection
};

SphereProjectionField make_sphere_field(int k);
ComplexMatrix sphere_projection(const SphereProjectionField& field, const GroupElement& x);

// Frame sections g_j(x) = P^k U^{|k|*}_x e_j.
std::vector<cvec> frame_sections(const SphereProjectionField& field, const GroupElement& x);

// Gram matrix <g_i, g_j> (conjugate-linear in the second slot). For frame
// sections this is the transpose of sphere_projection at the same point.
ComplexMatrix frame_gram(const std::vector<cvec>& sections);

// Clutching matrix M(z,w) = [[conj(z)^k, -conj(w)^j], [w^j, z^k]] on the
// 3-sphere, for charges j, k >= 0. det M = |z|^{2k} + |w|^{2j}.
ComplexMatrix clutching_matrix(int j, int k, cplx z, cplx w);

// Scalar function on the unit 3-sphere, as (z, w) with |z|^2 + |w|^2 = 1.
using SphereFunction = std::function<cplx(cplx, cplx)>;

// Matrix-valued function on the group.
using MatrixField = std::function<ComplexMatrix(const GroupElement&)>;

struct SectionPair {
  SphereFunction f;
  SphereFunction g;
};

// Deterministic low-discrepancy 3-sphere grid: a Kronecker lattice in Hopf
// coordinates, phase-shifted by the seed.
std::vector<GroupElement> s3_grid(std::size_t count, std::uint64_t seed);

// Largest deviation of xi from  xi(z e_t, w e_t) = conj(e(charge t)) xi(z, w)
// over the grid and a fixed set of circle parameters.
double equivariance_residual(const SphereFunction& xi, int charge,
                             const std::vector<GroupElement>& grid);

// Pointwise action of M: maps a (charge j, charge k) section pair to a
// (charge j+k, charge 0) pair. Inputs must be equivariant on the grid within
// tol, otherwise precondition_error.
SectionPair clutching_apply(int j, int k, const SectionPair& in,
                            const std::vector<GroupElement>& grid, double tol = 1e-8);

// Pointwise action of M^{-1}; composing with clutching_apply is the identity.
SectionPair clutching_apply_inverse(int j, int k, const SectionPair& in);

}  // namespace fsph
