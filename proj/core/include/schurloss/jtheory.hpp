#pragma once

///
/// \file jtheory.hpp
///
/// Pointwise constructors for the J-unitary and J-inner building blocks used
/// by the tangential Schur algorithm. J = diag(I_p, -I_p) throughout and
/// K = [[0, I_p], [I_p, 0]] is the block flip.
///
/// None of the elementary factors is given a state-space realization: for
/// w = 0 they are not proper. They are evaluated at points or used through
/// their factorization H(uv^*) S_{u,w}(z) H(.)^{-1}.
///

#include <functional>

#include "schurloss/matnum.hpp"

namespace schurloss {

CMatrix signature_j(Index p);
CMatrix flip_k(Index p);

/// ||M^* J M - J||_F
double j_unitarity_residual(const CMatrix& m);

/// b_w(z) = (z - w) / (1 - conj(w) z), |w| != 1. Throws PoleHit at z = 1/conj(w).
Complex blaschke(Complex w, Complex z);

/// c_w(z) = (z + w) / (z - w), |w| = 1. Throws PoleHit at z = w.
Complex caratheodory(Complex w, Complex z);

/// Halmos extension
///   H(E) = [[(I - EE^*)^{-1/2},      (I - EE^*)^{-1/2} E],
///           [(I - E^*E)^{-1/2} E^*,  (I - E^*E)^{-1/2}  ]]
/// of a strict contraction. Throws NotContractive unless ||E||_2 <= 1 - tol_contraction.
CMatrix halmos(const CMatrix& e, const ToleranceProfile& tol = {});

/// X_x(alpha) = I + (alpha - 1) x (x^*Jx)^{-1} x^* J, for x^*Jx != 0.
CMatrix x_family(const CVector& x, Complex alpha, const ToleranceProfile& tol = {});

/// Y_x(alpha) = I + alpha x x^* J, for x^*Jx = 0.
CMatrix y_family(const CVector& x, Complex alpha, const ToleranceProfile& tol = {});

/// M = H(E) diag(P, Q) with E strictly contractive, P and Q unitary.
struct JUnitaryParts {
  CMatrix E;
  CMatrix P;
  CMatrix Q;
};

/// Unique Halmos representation of a constant J-unitary matrix.
/// Throws NotJUnitary or SingularBlock (M22 not invertible).
JUnitaryParts junitary_decompose(const CMatrix& m, const ToleranceProfile& tol = {});

/// Parameters (u, v, w, xi, H) of the elementary J-inner factor
///   Theta(z) = (I + (b_w(z)/b_w(xi) - 1) [u;v][u;v]^* J / (1 - ||v||^2)) H,
/// analytic in the closed disk with its pole at 1/conj(w).
struct ElementaryFactor {
  CVector u;
  CVector v;
  Complex w;
  Complex xi{1.0, 0.0};
  CMatrix H;

  /// Builds a factor with H = I.
  static ElementaryFactor with_identity(CVector u, CVector v, Complex w, Complex xi = 1.0);

  /// Throws InvalidArgument / NotContractive / NotJUnitary when the
  /// parameter constraints are violated.
  void validate(const ToleranceProfile& tol = {}) const;

  Index p() const { return u.size(); }
};

/// Theta(u, v, w, xi, H)(z). Throws PoleHit at z = 1/conj(w).
CMatrix theta_eval(const ElementaryFactor& f, Complex z);

/// S_{u,w}(z) = diag(I - (1 - b_w(z)) uu^*, I).
CMatrix s_factor(const CVector& u, Complex w, Complex z);

/// Theta-hat(u, v, w)(z) = H(uv^*) S_{u,w}(z) H(conj(w) uv^*).
CMatrix theta_hat_eval(const CVector& u, const CVector& v, Complex w, Complex z,
                       const ToleranceProfile& tol = {});

/// The (xi, H) choice for which Theta(u, v, w, xi, H) = Theta-hat(u, v, w):
/// H = H(uv^*) S_{u,w}(xi) H(conj(w) uv^*).
ElementaryFactor theta_hat_factor(const CVector& u, const CVector& v, Complex w,
                                  Complex xi = 1.0, const ToleranceProfile& tol = {});

/// Theta^o(z) = K Theta(1/z) K, analytic outside the open disk.
CMatrix theta_dual(const ElementaryFactor& f, Complex z);

/// Sampled J-inner check for a pointwise-evaluable 2p x 2p function.
struct JInnerReport {
  double circle_residual = 0.0;    ///< max ||Theta^* J Theta - J|| on the unit circle
  double interior_violation = 0.0; ///< max eigenvalue of Theta^* J Theta - J inside the disk
};

JInnerReport check_j_inner(const std::function<CMatrix(Complex)>& theta, Index p,
                           int circle_points = 64, int interior_points = 32);

}  // namespace schurloss
