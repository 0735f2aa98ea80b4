#pragma once

///
/// \file lft.hpp
///
/// Linear fractional transformations acting on lossless realizations.
///
/// The forward step of the Schur algorithm is the unitary recursion
///
///   [[D~, C~], [B~, A~]] = diag(V, I_n) (1 (+) [[D, C], [B, A]]) diag(U^*, I_n)
///
/// with (U, V) = (U-hat, V-hat)(u, v, w). It realizes T_Theta-hat(u,v,w)(G),
/// raises the McMillan degree by one and enforces G~(1/conj(w)) u = v.
/// The backward step removes that degree again by two Moebius transforms
/// around a division by the Blaschke-Potapov factor.
///

#include "schurloss/matnum.hpp"
#include "schurloss/realization.hpp"

namespace schurloss {

/// A pair of unitary (p+1) x (p+1) matrices, partitioned as
///   U = [[alpha_U, M_U], [k_U, beta_U^*]]
/// with alpha_U a p-column, M_U p x p and k_U a scalar; likewise for V.
struct UnitaryPair {
  CMatrix U;
  CMatrix V;

  Index p() const { return U.rows() - 1; }

  CVector alpha_u() const { return U.col(0).head(p()); }
  CMatrix m_u() const { return U.topRightCorner(p(), p()); }
  Complex k_u() const { return U(p(), 0); }
  CVector beta_u() const { return U.row(p()).tail(p()).adjoint(); }

  CVector alpha_v() const { return V.col(0).head(p()); }
  CMatrix m_v() const { return V.topRightCorner(p(), p()); }
  Complex k_v() const { return V(p(), 0); }
  CVector beta_v() const { return V.row(p()).tail(p()).adjoint(); }

  /// Throws DimensionMismatch or NotIsometry (non-unitary U or V).
  void validate(const ToleranceProfile& tol = {}) const;
};

/// T_Theta(G) = (Theta4 G + Theta3)(Theta2 G + Theta1)^{-1} for a 2p x 2p
/// matrix and a p x p value. Throws SingularPivot if Theta2 G + Theta1 is singular.
CMatrix lft_pointwise(const CMatrix& theta, const CMatrix& g, const ToleranceProfile& tol = {});

/// Generalized Moebius transform T_M on a lossless realization; preserves
/// the state dimension and, for balanced input, the unitarity of the
/// realization matrix.
///
/// Throws NotJUnitary (residual above tol_unitary ||M||_2^2) or
/// SingularPivot (M2 D + M1 singular).
Realization mobius(const CMatrix& m, const Realization& g, const ToleranceProfile& tol = {});

/// Realization of F_{U,V}(G) with n + 1 states.
Realization fuv_apply(const UnitaryPair& pair, const Realization& g);

/// F1 + F2 F3 / (z - F4) where F = V diag(1, G(z)) U^*, from a value of G.
/// Throws PoleHit when z - F4 vanishes.
CMatrix fuv_pointwise(const UnitaryPair& pair, const CMatrix& g_value, Complex z,
                      const ToleranceProfile& tol = {});

/// The 2p x 2p matrix Phi(z) with F_{U,V} = T_Phi on lossless functions.
/// Throws DegeneratePair if k_U and k_V both vanish, PoleHit at z = k_V/k_U.
CMatrix phi_from_uv(const UnitaryPair& pair, Complex z, const ToleranceProfile& tol = {});

/// The unitary pair (U-hat, V-hat) for which F_{U,V} = T_Theta-hat(u,v,w).
/// For v = 0 the vv^*/||v||^2 term of V-hat is omitted (its coefficient
/// vanishes to second order).
UnitaryPair uhat_vhat(const CVector& u, const CVector& v, Complex w);

/// Forward Schur step: lossless-balanced realization of degree n + 1 with
/// G~(1/conj(w)) u = v.
Realization elementary_apply(const CVector& u, const CVector& v, Complex w, const Realization& g,
                             const ToleranceProfile& tol = {});

/// Realization of R(z) (I - (1 - b_w(z)) uu^*) on the state space of R,
/// valid when R(1/conj(w)) u = 0. The result has the same A and C as R and
/// one unreachable mode.
Realization blaschke_potapov_quotient(const Realization& r, const CVector& u, Complex w,
                                      const ToleranceProfile& tol = {});

struct Deflation {
  CVector v;      ///< Schur vector G(1/conj(w)) u
  Realization g;  ///< lossless-balanced realization of degree n - 1
};

/// Backward Schur step: v = G(1/conj(w)) u and the degree-reduced lossless
/// function G' with elementary_apply(u, v, w, G') = G.
///
/// Throws SchurVectorTooLarge if ||v|| >= 1 - tol_contraction and
/// DeflationFailed if the state dimension does not drop by exactly one.
Deflation elementary_deflate(const CVector& u, Complex w, const Realization& g,
                             const ToleranceProfile& tol = {});

}  // namespace schurloss
