#pragma once

#include <vector>

#include "fsph/matrix.hpp"

namespace fsph {

// Full spectrum of a Hermitian matrix. Eigenvalues ascending; eigenvectors
// are the matching columns of a unitary matrix.
struct HermitianSpectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

// Hermitian eigendecomposition by Householder tridiagonalization followed by
// implicit-shift QL. Throws precondition_error if the input is not Hermitian
// within 1e-10 * (1 + |M|).
HermitianSpectrum herm_eig(const ComplexMatrix& m);

// Eigenvalues only (ascending); skips all eigenvector accumulation.
std::vector<double> herm_eigvalues(const ComplexMatrix& m);

// Largest singular value, computed as sqrt of the top eigenvalue of M*M.
double spectral_norm(const ComplexMatrix& m);

}  // namespace fsph
