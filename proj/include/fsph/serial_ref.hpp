#pragma once

#include "fsph/eig.hpp"
#include "fsph/matrix.hpp"

// Serial reference implementations of the hot kernels. These stay
// deliberately naive: the tests use them as independent oracles for the
// OpenMP kernels, and the benchmark compares against them.
namespace fsph::serial {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Cyclic Jacobi eigensolver for Hermitian matrices (a different algorithm
// than the production Householder+QL path on purpose).
HermitianSpectrum jacobi_eig(const ComplexMatrix& m, int max_sweeps = 64);

double spectral_norm(const ComplexMatrix& m);

}  // namespace fsph::serial
