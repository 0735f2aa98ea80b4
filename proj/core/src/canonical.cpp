#include "schurloss/canonical.hpp"

#include <string>

#include <Eigen/SVD>

#include "schurloss/error.hpp"

namespace schurloss {

StableSystem::StableSystem(Realization g, const ToleranceProfile& tol) : g_(std::move(g)) {
  const double rho = spectral_radius(g_.A);
  if (g_.n() > 0 && rho > 1.0 - tol.tol_contraction) {
    raise(ErrorCode::NotStable, "spectral radius " + std::to_string(rho) + " is not below one");
  }
}

Completion lossless_completion(const CMatrix& a, const CMatrix& c, const ToleranceProfile& tol) {
  const Index n = a.rows();
  if (a.cols() != n || c.cols() != n) {
    raise(ErrorCode::DimensionMismatch, "lossless_completion: A must be n x n and C p x n");
  }
  const Index p = c.rows();
  CMatrix m(p + n, n);
  m << c, a;
  const double res = (m.adjoint() * m - CMatrix::Identity(n, n)).norm();
  if (res > tol.tol_unitary) {
    raise(ErrorCode::NotOutputNormal, "A^*A + C^*C - I has norm " + std::to_string(res));
  }
  const CMatrix q = unitary_completion(m, tol);
  return {q.bottomRows(n), q.topRows(p)};
}

Realization dual(const Realization& g) {
  return Realization(g.A.adjoint(), g.C.adjoint(), g.B.adjoint(), g.D.adjoint());
}

namespace {

Chart free_base(const Chart& chart) {
  Chart out = chart;
  out.fixed_d0.reset();
  return out;
}

}  // namespace

CanonicalForm output_normal_form(const StableSystem& s, const Chart& chart,
                                 const ToleranceProfile& tol) {
  const Realization& g = s.realization();
  const Index n = g.n();
  if (n == 0) return {g, CMatrix(0, 0)};

  // Step 1: Wo = L L^*, x1 = L^* x.
  const CMatrix wo = solve_stein(g.A.adjoint(), g.C.adjoint() * g.C, tol);
  if (min_hermitian_eigenvalue(wo) <= tol.tol_rank) {
    raise(ErrorCode::NotMinimal, "observability Gramian is singular");
  }
  Eigen::LLT<CMatrix> llt(0.5 * (wo + wo.adjoint()));
  if (llt.info() != Eigen::Success) raise(ErrorCode::NotMinimal, "Cholesky of Wo failed");
  const CMatrix t1 = llt.matrixU();
  const CMatrix t1_inv = t1.triangularView<Eigen::Upper>().solve(CMatrix::Identity(n, n));
  CMatrix stacked(g.p() + n, n);
  stacked << g.C * t1_inv, t1 * g.A * t1_inv;
  // Rounding in the Cholesky factor leaves [C1; A1] slightly off isometric;
  // snap to the polar factor.
  const Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
  stacked = svd.matrixU() * svd.matrixV().adjoint();
  const CMatrix c1 = stacked.topRows(g.p());
  const CMatrix a1 = stacked.bottomRows(n);

  // Step 2: lossless completion of (A1, C1).
  const Completion comp = lossless_completion(a1, c1, tol);
  const Realization lossless(a1, comp.B, c1, comp.D);

  // Step 3: Schur balanced form, taken in the row charts of the dual so
  // that the result does not depend on the completion.
  const Realization lossless_dual = dual(lossless);
  const Chart free_chart = free_base(chart);
  const Realization balanced_dual =
      schur_reconstruct(schur_decompose(lossless_dual, free_chart, tol), tol);
  const CMatrix a_b = balanced_dual.A.adjoint();
  const CMatrix c_b = balanced_dual.B.adjoint();

  // T A = A_b T and C_b T = C, i.e. T - A_b^* T A = C_b^* C. Solved in the
  // original coordinates to keep the Cholesky factor out of T.
  const CMatrix t = solve_sylvester_stein(a_b.adjoint(), g.A.adjoint(), c_b.adjoint() * g.C, tol);
  return {Realization(a_b, t * g.B, c_b, g.D), t};
}

CanonicalForm input_normal_form(const StableSystem& s, const Chart& chart,
                                const ToleranceProfile& tol) {
  const Realization& g = s.realization();
  if (g.n() == 0) return {g, CMatrix(0, 0)};
  const CanonicalForm d = output_normal_form(StableSystem(dual(g), tol), chart, tol);
  // Dual state map x' = T' x turns into x -> T'^{-*} x.
  const CMatrix t = d.T.adjoint().partialPivLu().inverse();
  return {dual(d.form), t};
}

}  // namespace schurloss
