#include <cmath>

#include "doctest.h"
#include "fsph/eig.hpp"
#include "fsph/errors.hpp"
#include "fsph/modules.hpp"
#include "fsph/rng.hpp"
#include "fsph/su2.hpp"

using namespace fsph;

namespace {

bigint factorial(int n) {
  bigint f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// E acting on the orthonormal tensor basis of H^{|k|} (x) H^n.
ComplexMatrix tensor_raise(int k, int n) {
  const Irrep left = make_irrep(std::abs(k));
  const Irrep right = make_irrep(n);
  return kron(left.E, ComplexMatrix::identity(right.dim)) +
         kron(ComplexMatrix::identity(left.dim), right.E);
}

}  // namespace

TEST_CASE("highest weight vector: k >= 0 is the single top product term") {
  const HighestWeightData hw = highest_weight_vector(3, 5);
  CHECK(hw.alpha.size() == 1);
  CHECK(hw.alpha[0] == 1);
  const cvec v = hw.normalized_vector(0);
  CHECK(std::abs(v[0] - cplx(1.0)) < 1e-15);
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(std::abs(v[i]) == 0.0);
  CHECK(hw.norm_sq[0] == 1);
}

TEST_CASE("highest weight vector: closed-form coefficients for k <= -1") {
  const HighestWeightData a1 = highest_weight_vector(-1, 4);
  CHECK(a1.alpha == std::vector<bigint>{1, -4});

  const HighestWeightData a2 = highest_weight_vector(-2, 4);
  CHECK(a2.alpha == std::vector<bigint>{1, -3, 6});

  const HighestWeightData a3 = highest_weight_vector(-1, 7);
  CHECK(a3.alpha == std::vector<bigint>{1, -7});

  CHECK_THROWS_AS(highest_weight_vector(-4, 3), precondition_error);
}

TEST_CASE("highest weight vectors are annihilated by the raising operator") {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{0, 3}, {2, 5}, {-1, 6}, {-3, 9}, {-5, 40}}) {
    const HighestWeightData hw = highest_weight_vector(k, n);
    const ComplexMatrix e = tensor_raise(k, n);
    const cvec v = hw.normalized_vector(0);
    CHECK(vec_norm(matvec(e, v)) < 1e-10);
  }
}

TEST_CASE("descended-vector norms match the ladder factorial law for k >= 0") {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{1, 3}, {2, 7}, {5, 20}}) {
    const HighestWeightData hw = highest_weight_vector(k, n);
    const int m = k + n;
    for (int a = 0; a <= m; ++a) {
      const bigint expect = factorial(a) * factorial(m) / factorial(m - a);
      CHECK(hw.norm_sq[a] == expect);
    }
  }
}

TEST_CASE("descended vectors are pairwise orthogonal") {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 4}, {-2, 6}}) {
    const HighestWeightData hw = highest_weight_vector(k, n);
    for (std::size_t a = 0; a < hw.v_vectors.size(); ++a)
      for (std::size_t b = a + 1; b < hw.v_vectors.size(); ++b)
        CHECK(std::abs(inner(hw.normalized_vector(a), hw.normalized_vector(b))) < 1e-10);
  }
}

TEST_CASE("module projection: k = 0 gives the identity") {
  const ModuleProjection p = module_projection(0, 6);
  CHECK((p.matrix - ComplexMatrix::identity(7)).max_abs() < 1e-12);
  CHECK(p.rank == 7);
}

TEST_CASE("module projection: symmetric and singlet subspaces of C^2 (x) C^2") {
  // Swap-based oracle for the tensor square of the defining representation.
  ComplexMatrix swap(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) swap(i * 2 + j, j * 2 + i) = 1.0;
  ComplexMatrix sym = ComplexMatrix::identity(4);
  sym += swap;
  sym *= 0.5;

  const ModuleProjection triplet = module_projection(1, 1);
  CHECK(triplet.rank == 3);
  CHECK((triplet.matrix - sym).max_abs() < 1e-12);

  const ModuleProjection singlet = module_projection(-1, 1);
  CHECK(singlet.rank == 1);
  const ComplexMatrix anti = ComplexMatrix::identity(4) - sym;
  CHECK((singlet.matrix - anti).max_abs() < 1e-12);
}

TEST_CASE("module projections are idempotent self-adjoint with trace k+n+1") {
  RandomStream rng(71);
  for (auto [k, n] : std::vector<std::pair<int, int>>{{1, 1}, {0, 5}, {3, 8}, {-1, 2}, {-2, 9}, {-4, 12}}) {
    const ModuleProjection p = module_projection(k, n);
    CHECK((p.matrix * p.matrix - p.matrix).max_abs() < 1e-10);
    CHECK((p.matrix.adjoint() - p.matrix).max_abs() < 1e-10);
    CHECK(std::abs(p.matrix.trace() - cplx(static_cast<double>(k + n + 1))) < 1e-8);

    // Equivariance under the product representation.
    const Irrep left = make_irrep(std::abs(k));
    const Irrep right = make_irrep(n);
    for (int rep = 0; rep < 3; ++rep) {
      const GroupElement x = haar_sample(rng);
      const ComplexMatrix u = kron(lift(x, left), lift(x, right));
      CHECK((u * p.matrix - p.matrix * u).frobenius_norm() < 1e-8);
    }
  }
}

TEST_CASE("sphere projection field: stability and trace") {
  RandomStream rng(83);
  for (int k : {2, -3}) {
    const SphereProjectionField field = make_sphere_field(k);

    CHECK((sphere_projection(field, GroupElement{}) - field.p_line).max_abs() < 1e-14);
    // Diagonal elements fix the reference line.
    CHECK((sphere_projection(field, torus_element(0.3)) - field.p_line).max_abs() < 1e-10);

    for (int i = 0; i < 20; ++i) {
      const GroupElement x = haar_sample(rng);
      const ComplexMatrix p = sphere_projection(field, x);
      CHECK((p * p - p).max_abs() < 1e-10);
      CHECK((p.adjoint() - p).max_abs() < 1e-10);
      CHECK(std::abs(p.trace() - cplx(1.0)) < 1e-10);
      // Right-translation invariance along the circle fiber.
      const double t = rng.next_double();
      CHECK((sphere_projection(field, group_mul(x, torus_element(t))) - p).max_abs() < 1e-10);
    }
  }
}

TEST_CASE("frame sections reproduce the projection through their Gram matrix") {
  RandomStream rng(91);
  for (int k : {1, -2}) {
    const SphereProjectionField field = make_sphere_field(k);

    const auto at_e = frame_sections(field, GroupElement{});
    std::size_t nonzero = 0;
    for (const cvec& gsec : at_e)
      if (vec_norm(gsec) > 1e-14) ++nonzero;
    CHECK(nonzero == 1);

    for (int i = 0; i < 50; ++i) {
      const GroupElement x = haar_sample(rng);
      const auto sections = frame_sections(field, x);
      double total = 0.0;
      for (const cvec& gsec : sections) total += inner(gsec, gsec).real();
      CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

      const ComplexMatrix gram = frame_gram(sections);
      const ComplexMatrix p_t = sphere_projection(field, x).transpose();
      CHECK((gram - p_t).max_abs() < 1e-10);
    }
  }
}

TEST_CASE("clutching matrix: constant case, north pole, determinant identity") {
  const ComplexMatrix m0 = clutching_matrix(0, 0, cplx(0.6, 0.0), cplx(0.8, 0.0));
  CHECK(m0(0, 0) == cplx(1.0));
  CHECK(m0(0, 1) == cplx(-1.0));
  CHECK(m0(1, 0) == cplx(1.0));
  CHECK(m0(1, 1) == cplx(1.0));

  const ComplexMatrix m1 = clutching_matrix(1, 1, cplx(1.0, 0.0), cplx(0.0, 0.0));
  CHECK((m1 - ComplexMatrix::identity(2)).max_abs() == 0.0);

  for (const GroupElement& x : s3_grid(1000, 42)) {
    for (int j : {0, 1, 3})
      for (int k : {0, 2}) {
        const ComplexMatrix m = clutching_matrix(j, k, x.a, x.b);
        const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        const double expect = std::pow(std::norm(x.a), k) + std::pow(std::norm(x.b), j);
        CHECK(std::abs(det - cplx(expect)) < 1e-12);
      }
  }
  CHECK_THROWS_AS(clutching_matrix(1, 1, cplx(1.0), cplx(1.0)), precondition_error);
  CHECK_THROWS_AS(clutching_matrix(-1, 0, cplx(1.0), cplx(0.0)), precondition_error);
}

TEST_CASE("clutching matrix is invertible over a dense grid") {
  for (int j : {0, 1, 2, 3})
    for (int k : {0, 1, 2, 3}) {
      double min_det = 1e300;
      for (const GroupElement& x : s3_grid(10000, 7)) {
        const double det = std::pow(std::norm(x.a), k) + std::pow(std::norm(x.b), j);
        min_det = std::min(min_det, det);
      }
      CHECK(min_det > 0.0);
    }
}

TEST_CASE("clutching apply: monomial sections transform as computed by hand") {
  const int j = 2, k = 1;
  const auto grid = s3_grid(200, 3);
  SectionPair in;
  in.f = [](cplx z, cplx) { return std::conj(z) * std::conj(z); };  // charge 2
  in.g = [](cplx, cplx) { return cplx(0.0); };
  const SectionPair out = clutching_apply(j, k, in, grid);
  for (const GroupElement& x : s3_grid(50, 9)) {
    const cplx zb = std::conj(x.a);
    CHECK(std::abs(out.f(x.a, x.b) - zb * zb * zb) < 1e-12);
    CHECK(std::abs(out.g(x.a, x.b) - x.b * x.b * zb * zb) < 1e-12);
  }
  CHECK(equivariance_residual(out.f, j + k, grid) < 1e-8);
  CHECK(equivariance_residual(out.g, 0, grid) < 1e-8);
}

TEST_CASE("clutching apply: zero sections, round trip, precondition") {
  const int j = 1, k = 2;
  const auto grid = s3_grid(200, 5);

  SectionPair zero;
  zero.f = [](cplx, cplx) { return cplx(0.0); };
  zero.g = [](cplx, cplx) { return cplx(0.0); };
  const SectionPair z_out = clutching_apply(j, k, zero, grid);
  CHECK(std::abs(z_out.f(cplx(0.6, 0.0), cplx(0.0, 0.8))) == 0.0);
  CHECK(std::abs(z_out.g(cplx(0.6, 0.0), cplx(0.0, 0.8))) == 0.0);

  // Equivariant polynomial sections: round trip through M and M^{-1}.
  SectionPair in;
  in.f = [](cplx z, cplx w) { return std::conj(z) + cplx(0.0, 2.0) * std::conj(w); };  // charge 1
  in.g = [](cplx z, cplx w) {
    return std::conj(z) * std::conj(w) + cplx(0.5, 0.0) * std::conj(z) * std::conj(z);
  };  // charge 2
  const SectionPair fwd = clutching_apply(j, k, in, grid);
  const SectionPair back = clutching_apply_inverse(j, k, fwd);
  for (const GroupElement& x : s3_grid(100, 13)) {
    CHECK(std::abs(back.f(x.a, x.b) - in.f(x.a, x.b)) < 1e-10);
    CHECK(std::abs(back.g(x.a, x.b) - in.g(x.a, x.b)) < 1e-10);
  }

  SectionPair bad;
  bad.f = [](cplx z, cplx) { return z; };  // transforms with the wrong sign of charge
  bad.g = [](cplx, cplx) { return cplx(0.0); };
  CHECK_THROWS_AS(clutching_apply(j, k, bad, grid), precondition_error);
}
