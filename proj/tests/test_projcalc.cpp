#include <cmath>

#include "doctest.h"
#include "fsph/bridge.hpp"
#include "fsph/eig.hpp"
#include "fsph/errors.hpp"
#include "fsph/lipschitz.hpp"
#include "fsph/projcalc.hpp"
#include "fsph/rng.hpp"

using namespace fsph;

namespace {

ComplexMatrix random_hermitian(std::size_t n, RandomStream& rng) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian());
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

int rank_of(const ComplexMatrix& p) {
  int r = 0;
  for (double lam : herm_eigvalues(p))
    if (lam > 0.5) ++r;
  return r;
}

}  // namespace

TEST_CASE("nearest projection: fixed points and spectral cuts") {
  ComplexMatrix p(3, 3);
  p(0, 0) = 1.0;
  p(2, 2) = 1.0;
  CHECK((nearest_projection(p) - p).max_abs() < 1e-12);

  const cplx d[] = {cplx(0.9), cplx(0.1)};
  const ComplexMatrix cut = nearest_projection(ComplexMatrix::diagonal(std::span<const cplx>(d, 2)));
  CHECK(std::abs(cut(0, 0) - cplx(1.0)) < 1e-14);
  CHECK(std::abs(cut(1, 1)) < 1e-14);
}

TEST_CASE("nearest projection preserves rank under moderate perturbations") {
  RandomStream rng(401);
  const std::size_t n = 10;
  const ProjectionPair base = rotated_projection_pair(n, 4, 0.0, 17);
  ComplexMatrix perturbed = base.p0;
  ComplexMatrix h = random_hermitian(n, rng);
  h *= cplx(0.2 / spectral_norm(h), 0.0);
  perturbed += h;
  const ComplexMatrix p = nearest_projection(perturbed);
  CHECK(rank_of(p) == 4);
  // Retraction: applying the cut twice equals applying it once.
  CHECK((nearest_projection(p) - p).max_abs() < 1e-12);
}

TEST_CASE("nearest projection errors: gap violation and asymmetry") {
  const cplx d[] = {cplx(0.5004), cplx(0.1)};
  CHECK_THROWS_AS(nearest_projection(ComplexMatrix::diagonal(std::span<const cplx>(d, 2))),
                  singularity_error);
  ComplexMatrix bad(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(nearest_projection(bad), precondition_error);
}

TEST_CASE("projection path: constant path and the rotated-pair distance oracle") {
  const ProjectionPair pair = rotated_projection_pair(4, 2, std::asin(0.5), 23);
  CHECK(spectral_norm(pair.p0 - pair.p1) == doctest::Approx(0.5).epsilon(1e-10));

  const ProjectionPath constant = projection_path(pair.p0, pair.p0, uniform_grid(21));
  for (const ComplexMatrix& p : constant.path) CHECK((p - pair.p0).max_abs() < 1e-10);
  CHECK(validate_path(constant).valid);

  const ProjectionPath path = projection_path(pair.p0, pair.p1, uniform_grid(51));
  CHECK(path.delta == doctest::Approx(0.5).epsilon(1e-10));
  const PathValidation v = validate_path(path);
  CHECK(v.valid);
  INFO(v.detail);
}

TEST_CASE("projection path requires endpoint distance below one") {
  ComplexMatrix p0(2, 2), p1(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;  // orthogonal rank-one pair at distance exactly 1
  CHECK_THROWS_AS(projection_path(p0, p1), no_path_error);
}

TEST_CASE("path ranks stay constant along the grid") {
  const ProjectionPair pair = rotated_projection_pair(6, 3, std::asin(0.8), 31);
  const ProjectionPath path = projection_path(pair.p0, pair.p1, uniform_grid(41));
  for (const ComplexMatrix& p : path.path) CHECK(rank_of(p) == 3);
  CHECK(std::abs(path.path.front().trace().real() - 3.0) < 1e-10);
}

TEST_CASE("concatenation of two legs stays a valid path") {
  const double th = std::asin(0.45);
  const ProjectionPair leg1 = rotated_projection_pair(5, 2, th, 41);
  // Second leg continues from leg1.p1 by an independent rotation.
  RandomStream rng(402);
  ComplexMatrix h = random_hermitian(5, rng);
  h *= cplx(0.25 / spectral_norm(h), 0.0);
  ComplexMatrix mid = leg1.p1;
  ComplexMatrix target = nearest_projection(leg1.p1 + h, 1e-4);

  const ProjectionPath a = projection_path(leg1.p0, mid, uniform_grid(41));
  const ProjectionPath b = projection_path(mid, target, uniform_grid(41));
  const ProjectionPath joined = concatenate_paths(a, b);
  CHECK(joined.path.size() == 81);
  CHECK((joined.path.front() - leg1.p0).max_abs() < 1e-12);
  CHECK((joined.path.back() - target).max_abs() < 1e-12);
  const PathValidation v = validate_path(joined);
  CHECK(v.valid);
  INFO(v.detail);

  ComplexMatrix other(5, 5);
  other(4, 4) = 1.0;
  const ProjectionPath c = projection_path(other, other, uniform_grid(11));
  CHECK_THROWS_AS(concatenate_paths(a, c), precondition_error);
}

TEST_CASE("seminorm profile along rotated paths respects the growth bound") {
  const Irrep rep = make_irrep(3);  // dimension 4 conjugation seminorm
  const auto witnesses = haar_witnesses(24, 1001);
  const ConjugationAction act = conj_action(rep);
  const SeminormEvaluator seminorm = [&](const ComplexMatrix& p) {
    return estimate_on_witnesses(p, act, witnesses).value;
  };

  for (double delta : {0.5, 0.9}) {
    const ProjectionPair pair = rotated_projection_pair(4, 2, std::asin(delta), 53);
    const ProjectionPath path = projection_path(pair.p0, pair.p1, uniform_grid(31));
    const PathProfile profile = path_seminorm_profile(path, seminorm);
    CHECK(profile.within_bound);
    CHECK(profile.values.size() == 31);
  }

  // Constant path: profile is flat and trivially within bound.
  const ProjectionPair pair = rotated_projection_pair(4, 2, 0.3, 59);
  const ProjectionPath flat = projection_path(pair.p0, pair.p0, uniform_grid(11));
  const PathProfile profile = path_seminorm_profile(flat, seminorm);
  for (double v : profile.values) CHECK(v == doctest::Approx(profile.values.front()).epsilon(1e-12));
  CHECK(profile.within_bound);
}

TEST_CASE("homotopy decision arithmetic") {
  const HomotopyDecision d0 = homotopy_decision(0.0, 0.0, 5.0, 7.0);
  CHECK(d0.delta == 0.0);
  CHECK(d0.guaranteed);

  const HomotopyDecision d1 = homotopy_decision(0.5, 0.1, 2.0, 2.0);
  CHECK(d1.delta == doctest::Approx(0.9));
  CHECK(d1.guaranteed);

  const HomotopyDecision d2 = homotopy_decision(0.5, 0.2, 2.0, 2.0);
  CHECK(d2.delta == doctest::Approx(1.3));
  CHECK_FALSE(d2.guaranteed);

  CHECK(bridge_homotopy_decision(0.2, 0.2, 1.0).guaranteed);
  CHECK_FALSE(bridge_homotopy_decision(0.3, 0.3, 1.0).guaranteed);
}

TEST_CASE("functional-calculus seminorm bound") {
  const Irrep rep = make_irrep(4);
  const auto witnesses = haar_witnesses(16, 1101);
  const ConjugationAction act = conj_action(rep);
  const SeminormEvaluator seminorm = [&](const ComplexMatrix& p) {
    return estimate_on_witnesses(p, act, witnesses).value;
  };
  const auto one = [](cplx) { return cplx(1.0); };

  // theta = 1 over the whole spectrum: image is the identity, seminorm zero.
  RandomStream rng(403);
  const ComplexMatrix h = random_hermitian(rep.dim, rng);
  const auto vals = herm_eigvalues(h);
  const double mid = 0.5 * (vals.front() + vals.back());
  const double rad = 0.5 * (vals.back() - vals.front()) + 1.0;
  const HoloBoundCheck full = holo_seminorm_bound_check(h, one, Contour{cplx(mid), rad, 256}, seminorm);
  CHECK(full.holds);
  CHECK(full.left < 1e-8);

  // Scalar input: both sides vanish.
  ComplexMatrix scal = ComplexMatrix::identity(rep.dim);
  scal *= cplx(0.7, 0.0);
  const HoloBoundCheck sc = holo_seminorm_bound_check(scal, one, Contour{cplx(0.7), 0.3, 256}, seminorm);
  CHECK(sc.holds);
  CHECK(sc.left < 1e-10);
  CHECK(sc.right < 1e-10);

  // Module projection: contour around eigenvalue 1 reproduces it.
  const ModuleProjection module = module_projection(1, 3);
  const auto witnesses_big = haar_witnesses(16, 1102);
  const ConjugationAction act_big = right_factor_action(2, make_irrep(3));
  const SeminormEvaluator seminorm_big = [&](const ComplexMatrix& p) {
    return estimate_on_witnesses(p, act_big, witnesses_big).value;
  };
  const Contour around_one{cplx(1.0), 0.4, 256};
  const ComplexMatrix image = resolvent_contour_sum(module.matrix, one, around_one);
  CHECK((image - module.matrix).max_abs() < 1e-8);
  const HoloBoundCheck hb =
      holo_seminorm_bound_check(module.matrix, one, around_one, seminorm_big);
  CHECK(hb.holds);
}
