#include <cmath>
#include <complex>

#include "doctest.h"
#include "fsph/contour.hpp"
#include "fsph/eig.hpp"
#include "fsph/errors.hpp"
#include "fsph/matrix.hpp"
#include "fsph/rng.hpp"
#include "fsph/serial_ref.hpp"

using namespace fsph;

namespace {

ComplexMatrix random_matrix(std::size_t r, std::size_t c, RandomStream& rng) {
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian());
  return m;
}

ComplexMatrix random_hermitian(std::size_t n, RandomStream& rng) {
  ComplexMatrix m = random_matrix(n, n, rng);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

}  // namespace

TEST_CASE("spectral norm: identity and diagonal cases") {
  CHECK(spectral_norm(ComplexMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-12));
  const cplx d[] = {cplx(2.0), cplx(-5.0)};
  CHECK(spectral_norm(ComplexMatrix::diagonal(std::span<const cplx>(d, 2))) ==
        doctest::Approx(5.0).epsilon(1e-12));
  CHECK_THROWS_AS(spectral_norm(ComplexMatrix()), dimension_error);
}

TEST_CASE("spectral norm: rank-one |y><phi| equals |y||phi|, cross-checked on the serial path") {
  RandomStream rng(11);
  cvec y(5);
  for (auto& z : y) z = cplx(rng.next_gaussian(), rng.next_gaussian());
  const double ny = vec_norm(y);
  for (auto& z : y) z /= ny;
  const cvec phi = {cplx(0.5), cplx(0.5)};
  const ComplexMatrix m = ComplexMatrix::outer(y, phi);
  const double expect = std::sqrt(2.0) / 2.0;
  CHECK(spectral_norm(m) == doctest::Approx(expect).epsilon(1e-10));
  CHECK(serial::spectral_norm(m) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("spectral norm agrees with the serial Jacobi reference on random matrices") {
  RandomStream rng(22);
  for (int rep = 0; rep < 6; ++rep) {
    const ComplexMatrix m = random_matrix(4 + rep, 3 + rep, rng);
    CHECK(spectral_norm(m) == doctest::Approx(serial::spectral_norm(m)).epsilon(1e-11));
  }
}

TEST_CASE("spectral norm is submultiplicative on random pairs") {
  RandomStream rng(33);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix a = random_matrix(6, 6, rng);
    const ComplexMatrix b = random_matrix(6, 6, rng);
    CHECK(spectral_norm(a * b) <= spectral_norm(a) * spectral_norm(b) + 1e-9);
  }
}

TEST_CASE("herm_eig: fixed spectra") {
  const cplx d3[] = {cplx(3.0), cplx(1.0), cplx(2.0)};
  const auto s = herm_eig(ComplexMatrix::diagonal(std::span<const cplx>(d3, 3)));
  REQUIRE(s.eigenvalues.size() == 3);
  CHECK(s.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(s.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(s.eigenvalues[2] == doctest::Approx(3.0));

  ComplexMatrix pauli_x(2, 2);
  pauli_x(0, 1) = 1.0;
  pauli_x(1, 0) = 1.0;
  const auto sx = herm_eig(pauli_x);
  CHECK(sx.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(sx.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("herm_eig rejects non-Hermitian and empty input") {
  ComplexMatrix m(2, 2);
  m(0, 1) = cplx(1.0, 0.0);
  m(1, 0) = cplx(0.0, 0.5);
  CHECK_THROWS_AS(herm_eig(m), precondition_error);
  CHECK_THROWS_AS(herm_eig(ComplexMatrix()), dimension_error);
  CHECK_THROWS_AS(herm_eig(ComplexMatrix(2, 3)), dimension_error);
}

TEST_CASE("herm_eig: random 50x50 reconstruction and unitarity residuals") {
  RandomStream rng(44);
  const ComplexMatrix m = random_hermitian(50, rng);
  const auto s = herm_eig(m);

  const ComplexMatrix v = s.eigenvectors;
  ComplexMatrix lambda(50, 50);
  for (std::size_t i = 0; i < 50; ++i) lambda(i, i) = s.eigenvalues[i];
  const ComplexMatrix recon = v * lambda * v.adjoint();
  CHECK((recon - m).frobenius_norm() < 1e-10 * (1.0 + m.frobenius_norm()));
  CHECK((v.adjoint() * v - ComplexMatrix::identity(50)).frobenius_norm() < 1e-12 * 50);

  // Same spectrum from the independent Jacobi reference.
  const auto sj = serial::jacobi_eig(m);
  for (std::size_t i = 0; i < 50; ++i)
    CHECK(s.eigenvalues[i] == doctest::Approx(sj.eigenvalues[i]).epsilon(1e-11));
}

TEST_CASE("herm_eig eigenvalues of a projection sit on {0,1}") {
  RandomStream rng(55);
  const ComplexMatrix m = random_hermitian(12, rng);
  const auto s = herm_eig(m);
  // Build a projection from half the eigenvectors.
  ComplexMatrix p(12, 12);
  for (std::size_t j = 0; j < 6; ++j) {
    cvec col(12);
    for (std::size_t r = 0; r < 12; ++r) col[r] = s.eigenvectors(r, j);
    p += ComplexMatrix::outer(col, col);
  }
  for (double lam : herm_eigvalues(p))
    CHECK(std::min(std::abs(lam), std::abs(lam - 1.0)) < 1e-10);
}

TEST_CASE("mat_exp: zero, scalar phases, unitarity for anti-Hermitian input") {
  CHECK((mat_exp(ComplexMatrix::zero(4, 4)) - ComplexMatrix::identity(4)).frobenius_norm() < 1e-14);

  const double pi = 3.14159265358979323846;
  const cplx d[] = {cplx(0.0, pi), cplx(0.0, -pi)};
  const ComplexMatrix e = mat_exp(ComplexMatrix::diagonal(std::span<const cplx>(d, 2)));
  CHECK(std::abs(e(0, 0) - cplx(-1.0)) < 1e-12);
  CHECK(std::abs(e(1, 1) - cplx(-1.0)) < 1e-12);

  RandomStream rng(66);
  ComplexMatrix a = random_matrix(10, 10, rng);
  ComplexMatrix anti(10, 10);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) anti(i, j) = 0.5 * (a(i, j) - std::conj(a(j, i)));
  const ComplexMatrix u = mat_exp(anti);
  CHECK((u.adjoint() * u - ComplexMatrix::identity(10)).frobenius_norm() < 1e-10);

  CHECK_THROWS_AS(mat_exp(ComplexMatrix(2, 3)), dimension_error);
}

TEST_CASE("kron: fixed cases, adjoint identity, norm multiplicativity") {
  CHECK((kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3)) - ComplexMatrix::identity(6))
            .frobenius_norm() < 1e-15);

  const cplx d1[] = {cplx(1.0), cplx(2.0)};
  const cplx d2[] = {cplx(3.0), cplx(4.0)};
  const ComplexMatrix kd = kron(ComplexMatrix::diagonal(std::span<const cplx>(d1, 2)),
                                ComplexMatrix::diagonal(std::span<const cplx>(d2, 2)));
  CHECK(kd(0, 0) == cplx(3.0));
  CHECK(kd(1, 1) == cplx(4.0));
  CHECK(kd(2, 2) == cplx(6.0));
  CHECK(kd(3, 3) == cplx(8.0));

  RandomStream rng(77);
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexMatrix a = random_matrix(3, 3, rng);
    const ComplexMatrix b = random_matrix(3, 3, rng);
    CHECK((kron(a, b).adjoint() - kron(a.adjoint(), b.adjoint())).max_abs() < 1e-14);
    CHECK(spectral_norm(kron(a, b)) ==
          doctest::Approx(spectral_norm(a) * spectral_norm(b)).epsilon(1e-9));
    // Mixed-product identity on conformable inputs.
    const ComplexMatrix c = random_matrix(3, 3, rng);
    const ComplexMatrix d = random_matrix(3, 3, rng);
    CHECK((kron(a, b) * kron(c, d) - kron(a * c, b * d)).max_abs() < 1e-12);
  }
}

TEST_CASE("parallel matmul matches the serial reference") {
  RandomStream rng(88);
  const ComplexMatrix a = random_matrix(37, 53, rng);
  const ComplexMatrix b = random_matrix(53, 29, rng);
  CHECK(((a * b) - serial::matmul(a, b)).max_abs() < 1e-12);
}

TEST_CASE("resolvent contour sum: spectral projections of diag(0,1)") {
  const cplx d[] = {cplx(0.0), cplx(1.0)};
  const ComplexMatrix m = ComplexMatrix::diagonal(std::span<const cplx>(d, 2));
  const auto one = [](cplx) { return cplx(1.0); };

  const ComplexMatrix p1 = resolvent_contour_sum(m, one, Contour{cplx(1.0), 0.4, 256});
  CHECK(std::abs(p1(0, 0)) < 1e-8);
  CHECK(std::abs(p1(1, 1) - cplx(1.0)) < 1e-8);

  const ComplexMatrix p0 = resolvent_contour_sum(m, one, Contour{cplx(0.0), 0.4, 256});
  CHECK(std::abs(p0(0, 0) - cplx(1.0)) < 1e-8);
  CHECK(std::abs(p0(1, 1)) < 1e-8);

  // Compare against the herm_eig spectral projection.
  const auto s = herm_eig(m);
  cvec top(2);
  for (std::size_t r = 0; r < 2; ++r) top[r] = s.eigenvectors(r, 1);
  CHECK((p1 - ComplexMatrix::outer(top, top)).max_abs() < 1e-8);
}

TEST_CASE("resolvent contour sum: theta = z reproduces a projection on its full spectrum") {
  RandomStream rng(99);
  const ComplexMatrix h = random_hermitian(6, rng);
  const auto s = herm_eig(h);
  ComplexMatrix p(6, 6);
  for (std::size_t j = 3; j < 6; ++j) {
    cvec col(6);
    for (std::size_t r = 0; r < 6; ++r) col[r] = s.eigenvectors(r, j);
    p += ComplexMatrix::outer(col, col);
  }
  const ComplexMatrix back =
      resolvent_contour_sum(p, [](cplx z) { return z; }, Contour{cplx(0.5), 1.2, 256});
  CHECK((back - p).max_abs() < 1e-8);
}

TEST_CASE("resolvent contour sum with theta=1 over the whole spectrum gives the identity") {
  RandomStream rng(101);
  const ComplexMatrix h = random_hermitian(8, rng);
  const auto vals = herm_eigvalues(h);
  const double c = 0.5 * (vals.front() + vals.back());
  const double r = 0.5 * (vals.back() - vals.front()) + 1.0;
  const ComplexMatrix out =
      resolvent_contour_sum(h, [](cplx) { return cplx(1.0); }, Contour{cplx(c), r, 256});
  CHECK((out - ComplexMatrix::identity(8)).max_abs() < 1e-8);
}

TEST_CASE("resolvent contour sum rejects contours through or near the spectrum") {
  const cplx d[] = {cplx(0.0), cplx(1.0)};
  const ComplexMatrix m = ComplexMatrix::diagonal(std::span<const cplx>(d, 2));
  const auto one = [](cplx) { return cplx(1.0); };
  CHECK_THROWS_AS(resolvent_contour_sum(m, one, Contour{cplx(0.0), 1.0, 256}), singularity_error);
  // Inside the relative clearance band counts as a hit too.
  CHECK_THROWS_AS(resolvent_contour_sum(m, one, Contour{cplx(0.0), 1.0 - 1e-8, 256}),
                  singularity_error);
  // Node count must be a power of two >= 16.
  CHECK_THROWS_AS(resolvent_contour_sum(m, one, Contour{cplx(0.0), 0.4, 100}), precondition_error);
  CHECK_THROWS_AS(resolvent_contour_sum(m, one, Contour{cplx(0.0), 0.4, 8}), precondition_error);
}

TEST_CASE("eigensolver handles one- and two-dimensional inputs") {
  ComplexMatrix one(1, 1);
  one(0, 0) = cplx(-2.5, 0.0);
  const auto s1 = herm_eig(one);
  CHECK(s1.eigenvalues == std::vector<double>{-2.5});
  CHECK(std::abs(s1.eigenvectors(0, 0)) == doctest::Approx(1.0));

  ComplexMatrix two(2, 2);
  two(0, 0) = 1.0;
  two(0, 1) = cplx(0.0, -2.0);
  two(1, 0) = cplx(0.0, 2.0);
  two(1, 1) = 1.0;
  const auto s2 = herm_eig(two);  // eigenvalues 1 -+ 2
  CHECK(s2.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(s2.eigenvalues[1] == doctest::Approx(3.0));
  const ComplexMatrix v = s2.eigenvectors;
  ComplexMatrix lambda(2, 2);
  lambda(0, 0) = s2.eigenvalues[0];
  lambda(1, 1) = s2.eigenvalues[1];
  CHECK((v * lambda * v.adjoint() - two).max_abs() < 1e-13);
}

TEST_CASE("adjoint is an involution and matrix invariants hold") {
  RandomStream rng(110);
  const ComplexMatrix m = random_matrix(5, 7, rng);
  CHECK((m.adjoint().adjoint() - m).max_abs() == 0.0);
  CHECK(spectral_norm(m) >= 0.0);
  CHECK(spectral_norm(ComplexMatrix::zero(4, 4)) == 0.0);
}
