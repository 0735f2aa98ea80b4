#pragma once

///
/// \file matnum.hpp
///
/// Dense complex matrix substrate shared by every other module: the scalar
/// and matrix aliases, the tolerance profile, and the two nontrivial solvers
/// (discrete Stein equations and unitary completion of an isometry).
///

#include <complex>

#include <Eigen/Dense>

namespace schurloss {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Named numerical thresholds. Passed explicitly to every operation that
/// has to decide something numerically.
struct ToleranceProfile {
  double tol_unitary = 1e-8;      ///< unitarity / J-unitarity residuals
  double tol_rank = 1e-9;         ///< numerical rank and singularity decisions
  double tol_contraction = 1e-10; ///< margin for strict inequalities (|w|<1, ||v||<1)
  double tol_roundtrip = 1e-7;    ///< transfer-function agreement after a roundtrip

  /// Throws InvalidArgument unless every threshold is strictly positive.
  void validate() const;
};

//
// Small helpers
//

bool all_finite(const CMatrix& m);

/// Throws InvalidArgument naming `what` if `m` holds NaN or Inf.
void require_finite(const CMatrix& m, const char* what);

/// max(||M*M - I||_F, ||MM* - I||_F); zero for an empty matrix.
double unitarity_residual(const CMatrix& m);

/// ||M*M - I||_F for a tall matrix with orthonormal columns.
double isometry_residual(const CMatrix& m);

/// ||M - M*||_F
double hermitian_defect(const CMatrix& m);

double spectral_radius(const CMatrix& a);

/// Spectral 2-norm (largest singular value).
double spectral_norm(const CMatrix& m);

/// Largest modulus over all entries.
double max_abs(const CMatrix& m);

/// (M)^{-1/2} for Hermitian positive definite M, through the Hermitian
/// eigendecomposition with eigenvalues floored at `floor`.
CMatrix hermitian_inverse_sqrt(const CMatrix& m, double floor);

/// L with M = L L^*, for Hermitian positive semi-definite M. Negative
/// eigenvalues from roundoff are clipped to zero.
CMatrix hermitian_psd_factor(const CMatrix& m);

/// Smallest eigenvalue of the Hermitian part of M.
double min_hermitian_eigenvalue(const CMatrix& m);

/// Multiply each column by a unimodular scalar so that its largest-modulus
/// entry (first one on ties) becomes real and positive.
void normalize_column_phases(CMatrix& m);

//
// Stein equations
//

/// Solves X - A1 X A2^* = Q for X. Both A1 and A2 must have spectral radius
/// below one. Complex Schur forms of A1 and A2 reduce it to a triangular
/// recurrence, O(n^3).
CMatrix solve_sylvester_stein(const CMatrix& a1, const CMatrix& a2, const CMatrix& q,
                              const ToleranceProfile& tol = {});

/// Unique Hermitian PSD solution W of W - A W A^* = Q.
///
/// Throws NotStable when the spectral radius of A is not below
/// 1 - tol_contraction, NotHermitian when Q is not Hermitian.
CMatrix solve_stein(const CMatrix& a, const CMatrix& q, const ToleranceProfile& tol = {});

/// ||W - A W A^* - Q||_F
double stein_residual(const CMatrix& a, const CMatrix& w, const CMatrix& q);

//
// Unitary completion
//

/// Given M ((n+p) x n) with orthonormal columns, returns N ((n+p) x p) such
/// that [M | N] is unitary. The completion is a deterministic function of M:
/// column-pivoted orthogonalization of the residual projector I - MM^*,
/// followed by the phase convention of normalize_column_phases.
///
/// Throws NotIsometry if ||M^*M - I|| exceeds tol_unitary.
CMatrix unitary_completion(const CMatrix& m, const ToleranceProfile& tol = {});

}  // namespace schurloss
