#pragma once

#include <functional>

#include "fsph/matrix.hpp"

namespace fsph {

// Circular contour for discretized Cauchy integrals. Node count must be a
// power of two >= 16 so the uniform Riemann sum doubles cleanly.
struct Contour {
  cplx center;
  double radius = 0.0;
  std::size_t points = 256;
};

bool contour_valid(const Contour& c);
std::vector<cplx> contour_nodes(const Contour& c);

// Solve (a) x = b for dense complex a by partial-pivot LU. Throws
// singularity_error when a pivot collapses.
ComplexMatrix lu_solve(const ComplexMatrix& a, const ComplexMatrix& b);

// (1/2*pi*i) * integral of theta(z) (z - m)^{-1} dz over the circle,
// as a uniform-node Riemann sum. With theta == 1 around a spectral cluster
// of a Hermitian m this converges geometrically to the spectral projection.
ComplexMatrix resolvent_contour_sum(const ComplexMatrix& m,
                                    const std::function<cplx(cplx)>& theta,
                                    const Contour& gamma);

// max over contour nodes of |(z - m)^{-1}|.
double resolvent_bound(const ComplexMatrix& m, const Contour& gamma);

}  // namespace fsph
