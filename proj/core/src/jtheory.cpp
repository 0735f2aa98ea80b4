#include "schurloss/jtheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "schurloss/error.hpp"

namespace schurloss {

namespace {

constexpr double kPoleGuard = 1e-14;

CMatrix rank_one_step(const CVector& x, Complex scale, const CMatrix& j) {
  const Index k = x.size();
  return CMatrix::Identity(k, k) + scale * (x * x.adjoint()) * j;
}

}  // namespace

CMatrix signature_j(Index p) {
  CMatrix j = CMatrix::Identity(2 * p, 2 * p);
  j.bottomRightCorner(p, p) *= -1.0;
  return j;
}

CMatrix flip_k(Index p) {
  CMatrix k = CMatrix::Zero(2 * p, 2 * p);
  k.topRightCorner(p, p).setIdentity();
  k.bottomLeftCorner(p, p).setIdentity();
  return k;
}

double j_unitarity_residual(const CMatrix& m) {
  const CMatrix j = signature_j(m.rows() / 2);
  return (m.adjoint() * j * m - j).norm();
}

Complex blaschke(Complex w, Complex z) {
  const Complex den = 1.0 - std::conj(w) * z;
  if (std::abs(den) < kPoleGuard) raise(ErrorCode::PoleHit, "Blaschke factor evaluated at its pole");
  return (z - w) / den;
}

Complex caratheodory(Complex w, Complex z) {
  const Complex den = z - w;
  if (std::abs(den) < kPoleGuard) {
    raise(ErrorCode::PoleHit, "Caratheodory function evaluated at its pole");
  }
  return (z + w) / den;
}

CMatrix halmos(const CMatrix& e, const ToleranceProfile& tol) {
  if (e.rows() != e.cols()) raise(ErrorCode::DimensionMismatch, "halmos: E must be square");
  const double norm = spectral_norm(e);
  if (norm > 1.0 - tol.tol_contraction) {
    raise(ErrorCode::NotContractive,
          "halmos: ||E|| = " + std::to_string(norm) + " is not strictly below one");
  }
  const Index p = e.rows();
  const CMatrix id = CMatrix::Identity(p, p);
  const double floor = tol.tol_contraction * tol.tol_contraction;
  const CMatrix left = hermitian_inverse_sqrt(id - e * e.adjoint(), floor);
  const CMatrix right = hermitian_inverse_sqrt(id - e.adjoint() * e, floor);
  CMatrix h(2 * p, 2 * p);
  h << left, left * e, right * e.adjoint(), right;
  return h;
}

CMatrix x_family(const CVector& x, Complex alpha, const ToleranceProfile& tol) {
  const Index p = x.size() / 2;
  if (x.size() != 2 * p || p == 0) raise(ErrorCode::DimensionMismatch, "x_family: x must have even length");
  const CMatrix j = signature_j(p);
  const double xjx = (x.adjoint() * j * x)(0, 0).real();
  if (std::abs(xjx) <= tol.tol_rank * x.squaredNorm()) {
    raise(ErrorCode::DegenerateVector, "x_family requires x^*Jx != 0");
  }
  return rank_one_step(x, (alpha - 1.0) / xjx, j);
}

CMatrix y_family(const CVector& x, Complex alpha, const ToleranceProfile& tol) {
  const Index p = x.size() / 2;
  if (x.size() != 2 * p || p == 0) raise(ErrorCode::DimensionMismatch, "y_family: x must have even length");
  const CMatrix j = signature_j(p);
  const double xjx = (x.adjoint() * j * x)(0, 0).real();
  if (x.squaredNorm() == 0.0 || std::abs(xjx) > tol.tol_rank * x.squaredNorm()) {
    raise(ErrorCode::DegenerateVector, "y_family requires a nonzero x with x^*Jx = 0");
  }
  return rank_one_step(x, alpha, j);
}

JUnitaryParts junitary_decompose(const CMatrix& m, const ToleranceProfile& tol) {
  const Index p = m.rows() / 2;
  if (m.rows() != m.cols() || m.rows() != 2 * p) {
    raise(ErrorCode::DimensionMismatch, "junitary_decompose: M must be 2p x 2p");
  }
  const double res = j_unitarity_residual(m);
  // Entries of a J-unitary matrix grow without bound; compare relative to ||M||^2.
  if (res > tol.tol_unitary * std::max(1.0, std::pow(spectral_norm(m), 2))) {
    raise(ErrorCode::NotJUnitary, "residual " + std::to_string(res));
  }
  const CMatrix m22 = m.bottomRightCorner(p, p);
  Eigen::PartialPivLU<CMatrix> lu(m22.transpose());
  if (!(lu.rcond() > tol.tol_rank)) raise(ErrorCode::SingularBlock, "M22 is singular");

  JUnitaryParts parts;
  // E = M12 M22^{-1}, computed as (M22^{-T} M12^T)^T.
  parts.E = lu.solve(m.topRightCorner(p, p).transpose()).transpose();
  const CMatrix blocks = halmos(-parts.E, tol) * m;
  parts.P = blocks.topLeftCorner(p, p);
  parts.Q = blocks.bottomRightCorner(p, p);
  return parts;
}

ElementaryFactor ElementaryFactor::with_identity(CVector u, CVector v, Complex w, Complex xi) {
  ElementaryFactor f;
  const Index p = u.size();
  f.u = std::move(u);
  f.v = std::move(v);
  f.w = w;
  f.xi = xi;
  f.H = CMatrix::Identity(2 * p, 2 * p);
  return f;
}

void ElementaryFactor::validate(const ToleranceProfile& tol) const {
  const Index p_ = p();
  if (v.size() != p_ || H.rows() != 2 * p_ || H.cols() != 2 * p_) {
    raise(ErrorCode::DimensionMismatch, "elementary factor: inconsistent sizes");
  }
  if (std::abs(u.norm() - 1.0) > 1e-12) raise(ErrorCode::InvalidArgument, "||u|| must be 1");
  if (v.norm() > 1.0 - tol.tol_contraction) raise(ErrorCode::NotContractive, "||v|| must be < 1");
  if (std::abs(w) > 1.0 - tol.tol_contraction) raise(ErrorCode::InvalidArgument, "|w| must be < 1");
  if (std::abs(std::abs(xi) - 1.0) > 1e-12) raise(ErrorCode::InvalidArgument, "|xi| must be 1");
  if (j_unitarity_residual(H) > tol.tol_unitary) raise(ErrorCode::NotJUnitary, "H is not J-unitary");
}

namespace {

CMatrix theta_from_blaschke(const ElementaryFactor& f, Complex bz) {
  const Index p = f.p();
  CVector x(2 * p);
  x << f.u, f.v;
  const Complex scale = (bz / blaschke(f.w, f.xi) - 1.0) / (1.0 - f.v.squaredNorm());
  return rank_one_step(x, scale, signature_j(p)) * f.H;
}

}  // namespace

CMatrix theta_eval(const ElementaryFactor& f, Complex z) {
  return theta_from_blaschke(f, blaschke(f.w, z));
}

CMatrix s_factor(const CVector& u, Complex w, Complex z) {
  const Index p = u.size();
  CMatrix s = CMatrix::Identity(2 * p, 2 * p);
  s.topLeftCorner(p, p) -= (1.0 - blaschke(w, z)) * (u * u.adjoint());
  return s;
}

CMatrix theta_hat_eval(const CVector& u, const CVector& v, Complex w, Complex z,
                       const ToleranceProfile& tol) {
  const CMatrix e = u * v.adjoint();
  return halmos(e, tol) * s_factor(u, w, z) * halmos(std::conj(w) * e, tol);
}

ElementaryFactor theta_hat_factor(const CVector& u, const CVector& v, Complex w, Complex xi,
                                  const ToleranceProfile& tol) {
  ElementaryFactor f;
  f.u = u;
  f.v = v;
  f.w = w;
  f.xi = xi;
  f.H = theta_hat_eval(u, v, w, xi, tol);
  return f;
}

CMatrix theta_dual(const ElementaryFactor& f, Complex z) {
  const CMatrix k = flip_k(f.p());
  Complex bz;
  if (std::abs(z) < kPoleGuard) {
    // b_w(infinity) = -1/conj(w); a pole when w = 0.
    if (std::abs(f.w) < kPoleGuard) raise(ErrorCode::PoleHit, "theta_dual at z = 0 with w = 0");
    bz = -1.0 / std::conj(f.w);
  } else {
    bz = blaschke(f.w, 1.0 / z);
  }
  return k * theta_from_blaschke(f, bz) * k;
}

JInnerReport check_j_inner(const std::function<CMatrix(Complex)>& theta, Index p,
                           int circle_points, int interior_points) {
  const CMatrix j = signature_j(p);
  JInnerReport report;
  for (int k = 0; k < circle_points; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.25) / circle_points);
    const CMatrix t = theta(z);
    report.circle_residual = std::max(report.circle_residual, (t.adjoint() * j * t - j).norm());
  }
  report.interior_violation = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < interior_points; ++k) {
    // Deterministic spiral through the open disk.
    const double r = 0.95 * (k + 0.5) / interior_points;
    const Complex z = std::polar(r, 2.399963229728653 * k);
    const CMatrix t = theta(z);
    const CMatrix defect = t.adjoint() * j * t - j;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (defect + defect.adjoint()),
                                              Eigen::EigenvaluesOnly);
    report.interior_violation =
        std::max(report.interior_violation, es.eigenvalues()(es.eigenvalues().size() - 1));
  }
  return report;
}

}  // namespace schurloss
