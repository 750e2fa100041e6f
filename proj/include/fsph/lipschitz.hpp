#pragma once

#include <cstdint>
#include <span>

#include "fsph/modules.hpp"

namespace fsph {

// Conjugation action of the group on a fixed matrix space. apply(T, x)
// returns alpha_x(T); implementations exploit tensor-factor structure.
struct ConjugationAction {
  std::size_t dim = 0;
  std::function<ComplexMatrix(const ComplexMatrix&, const GroupElement&)> apply;
};

// T -> U_x T U_x^* on the irrep space.
ConjugationAction conj_action(const Irrep& rep);
// T -> (I_m (x) U_x) T (I_m (x) U_x)^* on C^m (x) H^n  (matrix amplification).
ConjugationAction right_factor_action(std::size_t m, const Irrep& rep);
// T -> (U_x (x) I_m) T (U_x (x) I_m)^*.
ConjugationAction left_factor_action(const Irrep& rep, std::size_t m);

// (I_m (x) U) T (I_m (x) U)^* and (U (x) I_m) T (U (x) I_m)^*, blockwise.
ComplexMatrix conj_right_blocks(const ComplexMatrix& t, const ComplexMatrix& u, std::size_t m);
ComplexMatrix conj_left_blocks(const ComplexMatrix& t, const ComplexMatrix& u, std::size_t m);

// Lower-bound estimate of a Lipschitz-type seminorm, with the point (or point
// pair) realizing the reported value.
struct SeminormEstimate {
  double value = 0.0;
  GroupElement witness;
  GroupElement witness_pair;  // second point, for difference-quotient seminorms
  std::size_t starts = 0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct SearchOptions {
  std::size_t starts = 64;
  std::size_t iterations = 200;
  double tolerance = 1e-9;
  double exclusion = 1e-6;  // skip points closer to the identity than this
  std::uint64_t seed = 1;
};

// |alpha_x(T) - T| / l(x); zero when l(x) is inside the exclusion radius.
double action_quotient(const ComplexMatrix& t, const ConjugationAction& action,
                       const GroupElement& x, double exclusion = 1e-6);

// Sampled sup over an explicit witness set. Using one witness set across
// several operators makes algebraic seminorm identities exact for the
// sampled sup, which is how every inequality check below is phrased.
SeminormEstimate estimate_on_witnesses(const ComplexMatrix& t, const ConjugationAction& action,
                                       std::span<const GroupElement> witnesses,
                                       double exclusion = 1e-6);

// Multi-start derivative-free search over the three-parameter chart
// x = exp(i c H + z E - conj(z) F), |log| clipped at pi. The result is a
// certified lower bound for the supremum.
SeminormEstimate lip_action_estimate(const ComplexMatrix& t, const ConjugationAction& action,
                                     const SearchOptions& opts = {});

// Difference-quotient seminorm of a right-invariant field on the quotient
// sphere: sup |F(x) - F(y)| / dist(x, y) over sampled and refined pairs.
// Throws precondition_error if the field is not circle-invariant within 1e-8.
SeminormEstimate lip_sphere_estimate(const MatrixField& field, std::size_t pairs,
                                     std::uint64_t seed, std::size_t refine_iterations = 120);

// Frobenius residual of the two conjugation routes moving the module
// projection: level-n action on the right factor at x versus charge-side
// action on the left factor at x^{-1}.
double beta_gamma_identity_check(int k, int n, const GroupElement& x);
double beta_gamma_identity_check(const ModuleProjection& module, const Irrep& rep_left,
                                 const Irrep& rep_right, const GroupElement& x);

// Shared-witness checks of the matrix-seminorm axioms for the amplified
// conjugation family L_m on M_m(L(H^n)).
struct SlipAxiomReport {
  std::size_t samples = 0;
  double max_compression_violation = 0.0;  // estimate(a A b) - |a| L(A) |b|
  double max_block_deviation = 0.0;        // |L(diag(A,C)) - max(L(A), L(C))|
  bool pass = false;
};

SlipAxiomReport slip_axiom_check(const Irrep& rep, std::span<const GroupElement> witnesses,
                                 std::size_t samples, std::size_t max_amplification,
                                 std::uint64_t seed, double tol = 1e-6);

struct LeibnizCheck {
  bool holds = false;
  double slack = 0.0;
};

// L(T1 T2) <= L(T1)|T2| + |T1|L(T2) over one witness set.
LeibnizCheck leibniz_spotcheck(const ComplexMatrix& t1, const ComplexMatrix& t2,
                               const ConjugationAction& action,
                               std::span<const GroupElement> witnesses);

std::vector<GroupElement> haar_witnesses(std::size_t count, std::uint64_t seed);

}  // namespace fsph
