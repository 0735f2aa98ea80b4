#include "schurloss/lft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schurloss/error.hpp"
#include "schurloss/jtheory.hpp"

namespace schurloss {

void UnitaryPair::validate(const ToleranceProfile& tol) const {
  if (U.rows() != U.cols() || V.rows() != V.cols() || U.rows() != V.rows() || U.rows() < 2) {
    raise(ErrorCode::DimensionMismatch, "unitary pair must hold two (p+1) x (p+1) matrices, p >= 1");
  }
  if (unitarity_residual(U) > tol.tol_unitary) raise(ErrorCode::NotIsometry, "U is not unitary");
  if (unitarity_residual(V) > tol.tol_unitary) raise(ErrorCode::NotIsometry, "V is not unitary");
}

CMatrix lft_pointwise(const CMatrix& theta, const CMatrix& g, const ToleranceProfile& tol) {
  const Index p = g.rows();
  if (g.cols() != p || theta.rows() != 2 * p || theta.cols() != 2 * p) {
    raise(ErrorCode::DimensionMismatch, "lft_pointwise: Theta must be 2p x 2p for p x p G");
  }
  const CMatrix den = theta.topRightCorner(p, p) * g + theta.topLeftCorner(p, p);
  Eigen::PartialPivLU<CMatrix> lu(den.transpose());
  if (!(lu.rcond() > tol.tol_rank)) raise(ErrorCode::SingularPivot, "Theta2 G + Theta1 is singular");
  const CMatrix num = theta.bottomRightCorner(p, p) * g + theta.bottomLeftCorner(p, p);
  // num * den^{-1} = (den^{-T} num^T)^T
  return lu.solve(num.transpose()).transpose();
}

Realization mobius(const CMatrix& m, const Realization& g, const ToleranceProfile& tol) {
  const Index p = g.p();
  if (g.m() != p || m.rows() != 2 * p || m.cols() != 2 * p) {
    raise(ErrorCode::DimensionMismatch, "mobius: M must be 2p x 2p for a p x p system");
  }
  const double res = j_unitarity_residual(m);
  // Entries of a J-unitary matrix grow without bound; compare relative to ||M||^2.
  if (res > tol.tol_unitary * std::max(1.0, std::pow(spectral_norm(m), 2))) {
    raise(ErrorCode::NotJUnitary, "mobius: residual " + std::to_string(res));
  }
  const CMatrix m1 = m.topLeftCorner(p, p);
  const CMatrix m2 = m.topRightCorner(p, p);
  const CMatrix m3 = m.bottomLeftCorner(p, p);
  const CMatrix m4 = m.bottomRightCorner(p, p);

  const CMatrix pivot = m2 * g.D + m1;
  Eigen::PartialPivLU<CMatrix> lu(pivot);
  if (!(lu.rcond() > tol.tol_rank)) raise(ErrorCode::SingularPivot, "M2 D + M1 is singular");
  const CMatrix pivot_inv = lu.inverse();

  const CMatrix d_new = (m4 * g.D + m3) * pivot_inv;
  const CMatrix b_new = g.B * pivot_inv;
  const CMatrix a_new = g.A - b_new * m2 * g.C;
  const CMatrix c_new = (m4 - d_new * m2) * g.C;
  return Realization(a_new, b_new, c_new, d_new);
}

Realization fuv_apply(const UnitaryPair& pair, const Realization& g) {
  const Index p = g.p();
  if (g.m() != p) raise(ErrorCode::DimensionMismatch, "fuv_apply: G must be square");
  if (pair.U.rows() != p + 1 || pair.U.cols() != p + 1 || pair.V.rows() != p + 1 ||
      pair.V.cols() != p + 1) {
    raise(ErrorCode::DimensionMismatch, "fuv_apply: U and V must be (p+1) x (p+1)");
  }
  const Index n = g.n();
  const Index k = p + n + 1;

  CMatrix core = CMatrix::Zero(k, k);
  core(0, 0) = 1.0;
  core.bottomRightCorner(p + n, p + n) = g.matrix();

  CMatrix left = CMatrix::Identity(k, k);
  left.topLeftCorner(p + 1, p + 1) = pair.V;
  CMatrix right = CMatrix::Identity(k, k);
  right.topLeftCorner(p + 1, p + 1) = pair.U.adjoint();

  return Realization::from_matrix(left * core * right, p, p);
}

CMatrix fuv_pointwise(const UnitaryPair& pair, const CMatrix& g_value, Complex z,
                      const ToleranceProfile& tol) {
  const Index p = pair.p();
  if (g_value.rows() != p || g_value.cols() != p) {
    raise(ErrorCode::DimensionMismatch, "fuv_pointwise: G(z) has the wrong size");
  }
  CMatrix inner = CMatrix::Zero(p + 1, p + 1);
  inner(0, 0) = 1.0;
  inner.bottomRightCorner(p, p) = g_value;
  const CMatrix f = pair.V * inner * pair.U.adjoint();
  const Complex den = z - f(p, p);
  if (std::abs(den) <= tol.tol_rank) raise(ErrorCode::PoleHit, "z - F4(z) vanishes");
  return f.topLeftCorner(p, p) + f.topRightCorner(p, 1) * f.bottomLeftCorner(1, p) / den;
}

CMatrix phi_from_uv(const UnitaryPair& pair, Complex z, const ToleranceProfile& tol) {
  const Index p = pair.p();
  const Complex ku = pair.k_u();
  const Complex kv = pair.k_v();
  if (std::abs(ku) < tol.tol_rank && std::abs(kv) < tol.tol_rank) {
    raise(ErrorCode::DegeneratePair, "k_U and k_V both vanish");
  }
  const Complex den = kv - z * ku;
  if (std::abs(den) < tol.tol_rank) raise(ErrorCode::PoleHit, "z = k_V / k_U");

  const CVector au = pair.alpha_u();
  const CVector av = pair.alpha_v();
  const CVector bu = pair.beta_u();
  const CVector bv = pair.beta_v();
  CMatrix phi(2 * p, 2 * p);
  phi.topLeftCorner(p, p) = pair.m_u() + (z / den) * (au * bu.adjoint());
  phi.topRightCorner(p, p) = -(au * bv.adjoint()) / den;
  phi.bottomLeftCorner(p, p) = (z / den) * (av * bu.adjoint());
  phi.bottomRightCorner(p, p) = pair.m_v() - (av * bv.adjoint()) / den;
  return phi;
}

UnitaryPair uhat_vhat(const CVector& u, const CVector& v, Complex w) {
  const Index p = u.size();
  if (v.size() != p || p == 0) raise(ErrorCode::DimensionMismatch, "uhat_vhat: u and v sizes differ");
  const double vv = v.squaredNorm();
  const double ww = std::norm(w);
  const double s = std::sqrt(1.0 - ww * vv);   // sqrt(1 - |w|^2 ||v||^2)
  const double a = std::sqrt(1.0 - vv);        // sqrt(1 - ||v||^2)
  const double c = std::sqrt(1.0 - ww);        // sqrt(1 - |w|^2)
  const CMatrix id = CMatrix::Identity(p, p);

  UnitaryPair pair;
  pair.U.resize(p + 1, p + 1);
  pair.U.col(0).head(p) = (c / s) * u;
  pair.U.topRightCorner(p, p) = id - (1.0 + w * a / s) * (u * u.adjoint());
  pair.U(p, 0) = std::conj(w) * a / s;
  pair.U.row(p).tail(p) = (c / s) * u.adjoint();

  // (1 - a/s) / ||v||^2 rewritten without the division by ||v||^2.
  const double proj = (1.0 - ww) / (s * (a + s));
  pair.V.resize(p + 1, p + 1);
  pair.V.col(0).head(p) = (c / s) * v;
  pair.V.topRightCorner(p, p) = id - proj * (v * v.adjoint());
  pair.V(p, 0) = a / s;
  pair.V.row(p).tail(p) = -(c / s) * v.adjoint();
  return pair;
}

namespace {

void check_step_parameters(const CVector& u, Complex w, const ToleranceProfile& tol) {
  if (std::abs(u.norm() - 1.0) > 1e-10) {
    raise(ErrorCode::InvalidArgument, "direction vector u must have unit norm");
  }
  if (std::abs(w) > 1.0 - tol.tol_contraction) {
    raise(ErrorCode::InvalidArgument, "interpolation point w must lie in the open unit disk");
  }
}

}  // namespace

Realization elementary_apply(const CVector& u, const CVector& v, Complex w, const Realization& g,
                             const ToleranceProfile& tol) {
  if (g.p() != g.m() || u.size() != g.p() || v.size() != g.p()) {
    raise(ErrorCode::DimensionMismatch, "elementary_apply: u, v and G must share the size p");
  }
  check_step_parameters(u, w, tol);
  const double vn = v.norm();
  if (vn > 1.0 - tol.tol_contraction) {
    raise(ErrorCode::SchurVectorTooLarge, "||v|| = " + std::to_string(vn));
  }
  return fuv_apply(uhat_vhat(u, v, w), g);
}

Realization blaschke_potapov_quotient(const Realization& r, const CVector& u, Complex w,
                                      const ToleranceProfile& tol) {
  const Index p = r.p();
  const Index n = r.n();
  if (r.m() != p || u.size() != p) {
    raise(ErrorCode::DimensionMismatch, "blaschke_potapov_quotient: sizes differ");
  }
  // With f(z) = R(z) u vanishing at 1/conj(w):
  //   f(z) / (1 - conj(w) z) = C (zI - A)^{-1} (I - conj(w) A)^{-1} B u
  //   b_w(z) f(z) = C b' + C (zI - A)^{-1} (A - wI) b',  b' = (I - conj(w) A)^{-1} B u.
  const CMatrix id_n = CMatrix::Identity(n, n);
  const CMatrix id_p = CMatrix::Identity(p, p);
  const CMatrix shifted = id_n - std::conj(w) * r.A;
  Eigen::PartialPivLU<CMatrix> lu(shifted);
  if (n > 0 && !(lu.rcond() > tol.tol_rank)) {
    raise(ErrorCode::PoleHit, "1/conj(w) is a pole of R");
  }
  const CVector bu = r.B * u;
  const CVector bp = n > 0 ? CVector(lu.solve(bu)) : CVector(0);
  const CMatrix complement = id_p - u * u.adjoint();

  CMatrix d = r.D * complement + (r.C * bp) * u.adjoint();
  CMatrix b = r.B * complement + ((r.A - w * id_n) * bp) * u.adjoint();
  return Realization(r.A, std::move(b), r.C, std::move(d));
}

Deflation elementary_deflate(const CVector& u, Complex w, const Realization& g,
                             const ToleranceProfile& tol) {
  if (g.p() != g.m() || u.size() != g.p()) {
    raise(ErrorCode::DimensionMismatch, "elementary_deflate: u and G must share the size p");
  }
  if (g.n() == 0) raise(ErrorCode::DeflationFailed, "cannot deflate a constant system");
  check_step_parameters(u, w, tol);

  Deflation out;
  out.v = eval(g, Point::reflect(w), tol) * u;
  const double vn = out.v.norm();
  if (vn >= 1.0 - tol.tol_contraction) {
    raise(ErrorCode::SchurVectorTooLarge, "||v|| = " + std::to_string(vn));
  }

  const CMatrix e = u * out.v.adjoint();
  // R^ = T_{H(uv*)^{-1}}(G) has R^(1/conj(w)) u = 0.
  const Realization r_hat = mobius(halmos(-e, tol), g, tol);
  const Realization r_raw = blaschke_potapov_quotient(r_hat, u, w, tol);
  const Realization r = minimal_reduce(r_raw, tol);
  if (r.n() != g.n() - 1) {
    raise(ErrorCode::DeflationFailed, "state dimension went from " + std::to_string(g.n()) +
                                          " to " + std::to_string(r.n()) + " instead of " +
                                          std::to_string(g.n() - 1));
  }
  out.g = mobius(halmos(-std::conj(w) * e, tol), r, tol);
  return out;
}

}  // namespace schurloss
