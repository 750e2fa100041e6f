#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "fsph/matrix.hpp"
#include "fsph/rng.hpp"

namespace fsph {

using bigint = boost::multiprecision::cpp_int;

// Element of SU(2), stored as the first column (a, b) of
//   [[a, -conj(b)], [b, conj(a)]],
// i.e. a point of the unit 3-sphere in C^2.
struct GroupElement {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};

  ComplexMatrix as_matrix() const;
  GroupElement inverse() const { return {std::conj(a), -b}; }
  double sphere_defect() const;  // | |a|^2 + |b|^2 - 1 |
};

GroupElement group_mul(const GroupElement& x, const GroupElement& y);

// One-parameter diagonal subgroup diag(e(t), conj(e(t))), e(t) = exp(2*pi*i*t).
GroupElement torus_element(double t);

// Length function l(x) = |x - I| (2x2 operator norm). Continuous, symmetric,
// subadditive, and conjugation-invariant.
double length(const GroupElement& x);

// Closed-form largest singular value of a 2x2 matrix.
double spectral_norm_2x2(const ComplexMatrix& m);

// Haar-uniform element: four standard Gaussians normalized to the 3-sphere.
GroupElement haar_sample(RandomStream& rng);

// Irreducible representation of highest weight n, in the orthonormal weight
// basis e_0 (weight n) .. e_n (weight -n):
//   F e_a = sqrt((a+1)(n-a)) e_{a+1},  E e_a = sqrt(a(n-a+1)) e_{a-1},
//   H = diag(n, n-2, ..., -n),  F = E^*.
// unnorm_sq[a] = a! n! / (n-a)! is the exact squared norm of the a-th
// unnormalized ladder vector.
struct Irrep {
  int n = 0;
  std::size_t dim = 1;
  ComplexMatrix E, F, H;
  std::vector<bigint> unnorm_sq;
};

Irrep make_irrep(int n);

// Exact a! m! / (m-a)! ladder norms for highest weight m.
std::vector<bigint> ladder_norms_sq(int m);

// Principal logarithm of x as a 2x2 anti-Hermitian matrix. The only branch
// ambiguity is at x = -I, which is pinned to i*pi*diag(1,-1).
ComplexMatrix principal_log(const GroupElement& x);

// Unitary of size n+1 representing x: write log(x) = i c H + z E - conj(z) F
// in the defining representation and exponentiate the same combination of
// the weight-n generators.
ComplexMatrix lift(const GroupElement& x, const Irrep& rep);
ComplexMatrix lift(const GroupElement& x, int n);

// Coset distance on the quotient by the diagonal subgroup:
//   inf over t in [0,1) of l(x^{-1} y s_t),
// minimized on a 256-point grid followed by golden-section refinement.
double quotient_metric(const GroupElement& x, const GroupElement& y);

}  // namespace fsph
