#pragma once

///
/// \file realization.hpp
///
/// Discrete-time state-space realizations G(z) = D + C (zI - A)^{-1} B and
/// the operations on them: pointwise evaluation, Gramians, balancing of
/// lossless systems, cascade, balanced-truncation minimal reduction and
/// losslessness certificates.
///

#include <cstdint>

#include "schurloss/matnum.hpp"

namespace schurloss {

/// A point of the extended complex plane. Evaluation at infinity returns
/// the feedthrough term D.
class Point {
 public:
  Point(Complex z) : value_(z) {}  // NOLINT(google-explicit-constructor)
  Point(double x) : value_(x) {}   // NOLINT(google-explicit-constructor)

  static Point infinity() {
    Point p(0.0);
    p.infinite_ = true;
    return p;
  }

  /// 1 / conj(w); infinity for w = 0.
  static Point reflect(Complex w);

  bool is_infinite() const { return infinite_; }
  Complex value() const { return value_; }

 private:
  Complex value_;
  bool infinite_ = false;
};

struct Realization {
  CMatrix A;  ///< n x n
  CMatrix B;  ///< n x m
  CMatrix C;  ///< p x n
  CMatrix D;  ///< p x m

  Realization() = default;

  /// Validates dimensional consistency and finiteness.
  Realization(CMatrix a, CMatrix b, CMatrix c, CMatrix d);

  /// The zero-state system G(z) = D.
  static Realization constant(const CMatrix& d);

  /// Splits a realization matrix [[D, C], [B, A]] with D of size p x m.
  static Realization from_matrix(const CMatrix& r, Index p, Index m);

  Index n() const { return A.rows(); }
  Index m() const { return D.cols(); }
  Index p() const { return D.rows(); }

  /// The realization matrix [[D, C], [B, A]].
  CMatrix matrix() const;
};

struct GramianPair {
  CMatrix Wc;
  CMatrix Wo;
};

/// D + C (zI - A)^{-1} B, or D at infinity.
///
/// Throws PoleHit when zI - A is singular within tol_rank.
CMatrix eval(const Realization& g, const Point& z, const ToleranceProfile& tol = {});

/// G^#(z) = G(1/conj(z))^*.
CMatrix eval_sharp(const Realization& g, const Point& z, const ToleranceProfile& tol = {});

/// Controllability and observability Gramians via the two Stein equations.
GramianPair gramians(const Realization& g, const ToleranceProfile& tol = {});

/// Stein residuals of a Gramian pair: (||Wc - A Wc A^* - BB^*||, ||Wo - A^* Wo A - C^*C||).
std::pair<double, double> gramian_residuals(const Realization& g, const GramianPair& w);

/// State transformation T = chol(Wc) that makes a minimal lossless
/// realization balanced, i.e. its realization matrix unitary.
///
/// Throws NotMinimal if either Gramian is singular within tol_rank and
/// NotLossless if the balanced realization matrix is not unitary within
/// tol_unitary.
Realization balance_lossless(const Realization& g, const ToleranceProfile& tol = {});

/// Realization of G1 * G2 with state [x2; x1]:
///   [[D1 D2, D1 C2, C1], [B2, A2, 0], [B1 D2, B1 C2, A1]].
Realization cascade(const Realization& g1, const Realization& g2);

/// Balanced truncation that discards the states whose squared Hankel
/// singular value falls below tol_rank times max(sigma_1^2, 1). The
/// retained realization is balanced (Wc = Wo = diag of kept values).
Realization minimal_reduce(const Realization& g, const ToleranceProfile& tol = {});

/// Squared Hankel singular values (eigenvalues of Wc Wo), descending.
Eigen::VectorXd hankel_singular_values(const Realization& g, const ToleranceProfile& tol = {});

struct LosslessCertificate {
  double unitarity_residual = 0.0;  ///< ||R^*R - I|| after balancing (raw R if balancing fails)
  double raw_unitarity_residual = 0.0;  ///< same, for the realization as given
  double spectral_radius = 0.0;
  double stability_margin = 1.0;    ///< 1 - spectral radius of A
  double circle_residual = 0.0;     ///< max over the circle samples of ||G^*G - I||
  bool balanced = false;            ///< whether the balancing step succeeded

  bool passes(const ToleranceProfile& tol) const;
};

/// Two independent losslessness checks: algebraic (unitary realization
/// matrix after balancing) and analytic (unitarity on `circle_points`
/// equispaced samples of the unit circle).
LosslessCertificate is_lossless(const Realization& g, const ToleranceProfile& tol = {},
                                int circle_points = 64);

/// Minus the winding number of det G(e^{i theta}): the McMillan degree of a
/// square lossless G. Grid spacing is at most 2 pi / grid_points and shrinks
/// near eigenvalues of A close to the circle.
///
/// Throws WindingAmbiguous if a phase step exceeds pi/2 even after the grid
/// has been refined once.
int winding_degree(const Realization& g, int grid_points = 1024,
                   const ToleranceProfile& tol = {});

/// A lossless-balanced realization of exact degree n with p inputs and
/// outputs, built from a random Schur chart and random Schur vectors.
/// Deterministic per seed.
Realization random_lossless(Index n, Index p, std::uint64_t seed);

/// Max over `points` equispaced unit-circle samples of ||G1(z) - G2(z)||_F.
double circle_distance(const Realization& g1, const Realization& g2, int points = 32,
                       const ToleranceProfile& tol = {});

/// Similarity transform (T^{-1} A T, T^{-1} B, C T, D).
Realization similarity(const Realization& g, const CMatrix& t);

}  // namespace schurloss
