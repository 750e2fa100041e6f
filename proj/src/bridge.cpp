#include "fsph/bridge.hpp"

#include <cmath>

#include "fsph/eig.hpp"
#include "fsph/errors.hpp"
#include "fsph/rng.hpp"

namespace fsph {
namespace {

// (I_m (x) pivot) b for a rank-one pivot = u u^*: each (n+1)-block column of
// b is hit with u (u^* .), which keeps the assembly quadratic.
ComplexMatrix apply_pivot_left(const cvec& u, const ComplexMatrix& b, std::size_t m) {
  const std::size_t nn = u.size();
  ComplexMatrix out(b.rows(), b.cols());
  for (std::size_t bi = 0; bi < m; ++bi) {
    for (std::size_t col = 0; col < b.cols(); ++col) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < nn; ++t) s += std::conj(u[t]) * b(bi * nn + t, col);
      if (s == cplx(0.0, 0.0)) continue;
      for (std::size_t t = 0; t < nn; ++t) out(bi * nn + t, col) += u[t] * s;
    }
  }
  return out;
}

cvec pivot_vector(const BridgeInstance& inst, const GroupElement& x) {
  // omega(x) = u u^* with u the image of the top weight vector.
  const ComplexMatrix ur = lift(x, inst.rep_right);
  cvec u(ur.rows());
  for (std::size_t r = 0; r < ur.rows(); ++r) u[r] = ur(r, 0);
  return u;
}

}  // namespace

BridgeInstance make_bridge(int k, int n) {
  BridgeInstance inst;
  inst.k = k;
  inst.n = n;
  inst.d = static_cast<std::size_t>(std::abs(k)) + 1;
  inst.rep_left = make_irrep(std::abs(k));
  inst.rep_right = make_irrep(n);
  inst.p_line_left = ComplexMatrix(inst.d, inst.d);
  inst.p_line_left((k >= 0) ? 0 : inst.d - 1, (k >= 0) ? 0 : inst.d - 1) = 1.0;
  inst.p_line_right = ComplexMatrix(inst.rep_right.dim, inst.rep_right.dim);
  inst.p_line_right(0, 0) = 1.0;
  inst.module = module_projection(k, n);
  return inst;
}

ComplexMatrix pivot_at(const BridgeInstance& inst, const GroupElement& x) {
  const cvec u = pivot_vector(inst, x);
  return ComplexMatrix::outer(u, u);
}

double pair_defect(const ComplexMatrix& a_val, const ComplexMatrix& b,
                   const ComplexMatrix& pivot) {
  if (!a_val.square() || !b.square() || !pivot.square())
    throw dimension_error("pair_defect: square blocks required");
  const std::size_t m = a_val.rows();
  const std::size_t nn = pivot.rows();
  if (b.rows() != m * nn) throw dimension_error("pair_defect: size mismatch");

  // a omega_m = a (x) pivot since the two factors commute.
  ComplexMatrix diff = kron(a_val, pivot);

  // omega_m b, using the rank-one structure when available, else the full
  // blockwise product.
  ComplexMatrix ob(b.rows(), b.cols());
  for (std::size_t bi = 0; bi < m; ++bi)
    for (std::size_t bj = 0; bj < m; ++bj) {
      // block (bi, bj) of omega_m b is pivot * b_block(bi, bj)
      for (std::size_t r = 0; r < nn; ++r)
        for (std::size_t c = 0; c < nn; ++c) {
          cplx s = 0.0;
          for (std::size_t t = 0; t < nn; ++t) s += pivot(r, t) * b(bi * nn + t, bj * nn + c);
          ob(bi * nn + r, bj * nn + c) = s;
        }
    }
  diff -= ob;
  return spectral_norm(diff);
}

double defect_norm_at(const BridgeInstance& inst, const GroupElement& x) {
  const ComplexMatrix ul = lift(x, inst.rep_left);
  const ComplexMatrix a = ul * inst.p_line_left * ul.adjoint();

  const cvec u = pivot_vector(inst, x);
  const ComplexMatrix omega = ComplexMatrix::outer(u, u);

  ComplexMatrix diff = kron(a, omega);
  diff -= apply_pivot_left(u, inst.module.matrix, inst.d);
  return spectral_norm(diff);
}

double defect_norm_closed(const BridgeInstance& inst) {
  const std::size_t nn = inst.rep_right.dim;
  cvec top(nn, cplx(0.0, 0.0));
  top[0] = 1.0;
  ComplexMatrix t = kron(inst.p_line_left, inst.p_line_right);
  t -= apply_pivot_left(top, inst.module.matrix, inst.d);
  return spectral_norm(t);
}

double defect_norm_closed(int k, int n) { return defect_norm_closed(make_bridge(k, n)); }

double analytic_defect(int k, int n) {
  if (k < 0) throw precondition_error("analytic_defect: k >= 0 required");
  if (n < 1) throw precondition_error("analytic_defect: n >= 1 required");
  if (k == 0) return 0.0;
  return std::sqrt(static_cast<double>(k) / static_cast<double>(k + n));
}

bigrat analytic_defect_ratio(int k, int n) {
  if (k > -1) throw precondition_error("analytic_defect_ratio: k <= -1 required");
  if (k + n < 0) throw precondition_error("analytic_defect_ratio: k + n >= 0 required");
  const HighestWeightData hw = highest_weight_vector(k, n);
  const int q = -k;
  // Final product term of the top vector sits at e_q (x) f_0 with
  // coefficient alpha_q; its squared length is alpha_q^2 (q!)^2.
  const std::vector<bigint> ue = ladder_norms_sq(q);
  const bigint last = hw.alpha[static_cast<std::size_t>(q)] *
                      hw.alpha[static_cast<std::size_t>(q)] * ue[static_cast<std::size_t>(q)];
  return bigrat(hw.norm_sq[0] - last, hw.norm_sq[0]);
}

NhatEstimate nhat(const MatrixField& a, const ComplexMatrix& b, const BridgeInstance& inst,
                  std::size_t samples, std::uint64_t seed) {
  RandomStream rng(seed);
  const ComplexMatrix b_adj = b.adjoint();
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const GroupElement x = haar_sample(rng);
    const ComplexMatrix a_val = a(x);
    const ComplexMatrix omega = pivot_at(inst, x);
    worst = std::max(worst, pair_defect(a_val, b, omega));
    worst = std::max(worst, pair_defect(a_val.adjoint(), b_adj, omega));
  }
  return NhatEstimate{worst, true};
}

double combined_seminorm(double la, double lb, double nhat_val, double r) {
  if (!(r > 0.0)) throw std::domain_error("combined_seminorm: r must be positive");
  return std::max({la, lb, nhat_val / r});
}

DecisionQuantity decision_quantity(int k, int n, const BridgeBounds& bounds, double la,
                                   double lb) {
  if (!(bounds.r > 0.0) || bounds.h < 0.0)
    throw config_error("decision_quantity: bounds not populated (need r > 0, h >= 0)");
  const double defect = defect_norm_closed(k, n);
  DecisionQuantity out;
  out.value = (bounds.h + bounds.r) * combined_seminorm(la, lb, defect, bounds.r);
  out.two_defect_bound = 2.0 * defect;
  return out;
}

InequalityCheck quotient_inequality_check(double c_norm, double pic_norm, double eps,
                                          double lip) {
  const double rhs = pic_norm + eps * lip;
  return InequalityCheck{c_norm <= rhs, rhs - c_norm};
}

InequalityCheck pairing_bound_check(double pair_norm, double a_norm, double h, double r, double lr) {
  const double rhs = a_norm + (h + r) * lr;
  return InequalityCheck{pair_norm <= rhs, rhs - pair_norm};
}

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

}  // namespace fsph
