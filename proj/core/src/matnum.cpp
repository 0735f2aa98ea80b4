#include "schurloss/matnum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "schurloss/error.hpp"

namespace schurloss {

void ToleranceProfile::validate() const {
  if (!(tol_unitary > 0) || !(tol_rank > 0) || !(tol_contraction > 0) || !(tol_roundtrip > 0)) {
    raise(ErrorCode::InvalidArgument, "all tolerances must be strictly positive");
  }
}

bool all_finite(const CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex& c = m(i, j);
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
  }
  return true;
}

void require_finite(const CMatrix& m, const char* what) {
  if (!all_finite(m)) {
    raise(ErrorCode::InvalidArgument, std::string(what) + " contains NaN or Inf");
  }
}

double unitarity_residual(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const Index n = m.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const double r1 = (m.adjoint() * m - id).norm();
  const double r2 = (m * m.adjoint() - id).norm();
  return std::max(r1, r2);
}

double isometry_residual(const CMatrix& m) {
  if (m.cols() == 0) return 0.0;
  return (m.adjoint() * m - CMatrix::Identity(m.cols(), m.cols())).norm();
}

double hermitian_defect(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).norm();
}

double spectral_radius(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<CMatrix> es(a, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double max_abs(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

CMatrix hermitian_inverse_sqrt(const CMatrix& m, double floor) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  Eigen::VectorXd d = es.eigenvalues();
  for (Index i = 0; i < d.size(); ++i) d(i) = 1.0 / std::sqrt(std::max(d(i), floor));
  return es.eigenvectors() * d.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix hermitian_psd_factor(const CMatrix& m) {
  if (m.size() == 0) return CMatrix(0, 0);
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.cast<Complex>().asDiagonal();
}

double min_hermitian_eigenvalue(const CMatrix& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

void normalize_column_phases(CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    Index best = 0;
    double best_abs = -1.0;
    for (Index i = 0; i < m.rows(); ++i) {
      const double a = std::abs(m(i, j));
      if (a > best_abs) {
        best_abs = a;
        best = i;
      }
    }
    if (best_abs > 0.0) m.col(j) *= std::conj(m(best, j)) / best_abs;
  }
}

namespace {

// X - T1 X T2^* = Q with T1, T2 upper triangular, solved one column at a
// time from the last.
CMatrix stein_triangular(const CMatrix& t1, const CMatrix& t2, const CMatrix& q) {
  const Index n1 = t1.rows();
  const Index n2 = t2.rows();
  CMatrix x(n1, n2);
  const CMatrix id = CMatrix::Identity(n1, n1);
  for (Index j = n2 - 1; j >= 0; --j) {
    CVector rhs = q.col(j);
    const Index tail = n2 - 1 - j;
    if (tail > 0) {
      rhs += t1 * (x.rightCols(tail) * t2.row(j).tail(tail).adjoint());
    }
    const CMatrix lhs = id - std::conj(t2(j, j)) * t1;
    x.col(j) = lhs.triangularView<Eigen::Upper>().solve(rhs);
  }
  return x;
}

}  // namespace

CMatrix solve_sylvester_stein(const CMatrix& a1, const CMatrix& a2, const CMatrix& q,
                              const ToleranceProfile& tol) {
  if (a1.rows() != a1.cols() || a2.rows() != a2.cols() || q.rows() != a1.rows() ||
      q.cols() != a2.rows()) {
    raise(ErrorCode::DimensionMismatch, "solve_sylvester_stein: incompatible shapes");
  }
  if (q.size() == 0) return CMatrix(a1.rows(), a2.rows());
  const Eigen::ComplexSchur<CMatrix> s1(a1);
  const bool same = &a1 == &a2 || (a1.rows() == a2.rows() && a1 == a2);
  const Eigen::ComplexSchur<CMatrix> s2 = same ? s1 : Eigen::ComplexSchur<CMatrix>(a2);
  const double rho = std::max(s1.matrixT().diagonal().cwiseAbs().maxCoeff(),
                              s2.matrixT().diagonal().cwiseAbs().maxCoeff());
  if (rho >= 1.0 - tol.tol_contraction) {
    raise(ErrorCode::NotStable, "Stein equation: spectral radius " + std::to_string(rho) +
                                    " is not below one");
  }
  const CMatrix& u1 = s1.matrixU();
  const CMatrix& u2 = s2.matrixU();
  const CMatrix y = stein_triangular(s1.matrixT(), s2.matrixT(), u1.adjoint() * q * u2);
  return u1 * y * u2.adjoint();
}

CMatrix solve_stein(const CMatrix& a, const CMatrix& q, const ToleranceProfile& tol) {
  if (a.rows() != a.cols() || q.rows() != a.rows() || q.cols() != a.cols()) {
    raise(ErrorCode::DimensionMismatch, "solve_stein: A and Q must be square of equal size");
  }
  if (a.size() == 0) return CMatrix(0, 0);
  if (hermitian_defect(q) > tol.tol_rank * (1.0 + q.norm())) {
    raise(ErrorCode::NotHermitian, "solve_stein: Q is not Hermitian");
  }
  const CMatrix w = solve_sylvester_stein(a, a, q, tol);
  return 0.5 * (w + w.adjoint());
}

double stein_residual(const CMatrix& a, const CMatrix& w, const CMatrix& q) {
  if (w.size() == 0) return 0.0;
  return (w - a * w * a.adjoint() - q).norm();
}

CMatrix unitary_completion(const CMatrix& m, const ToleranceProfile& tol) {
  const Index rows = m.rows();
  const Index n = m.cols();
  if (n > rows) raise(ErrorCode::NotIsometry, "unitary_completion: more columns than rows");
  if (isometry_residual(m) > tol.tol_unitary) {
    raise(ErrorCode::NotIsometry, "unitary_completion: columns are not orthonormal");
  }
  const Index p = rows - n;
  if (p == 0) return CMatrix(rows, 0);

  const CMatrix projector = CMatrix::Identity(rows, rows) - m * m.adjoint();
  Eigen::ColPivHouseholderQR<CMatrix> qr(projector);
  const CMatrix q = qr.householderQ();
  CMatrix out = q.leftCols(p);

  // Two passes of Gram-Schmidt against M and the earlier columns.
  for (int pass = 0; pass < 2; ++pass) {
    for (Index j = 0; j < p; ++j) {
      CVector c = out.col(j);
      if (n > 0) c -= m * (m.adjoint() * c);
      if (j > 0) c -= out.leftCols(j) * (out.leftCols(j).adjoint() * c);
      out.col(j) = c / c.norm();
    }
  }
  normalize_column_phases(out);
  return out;
}

}  // namespace schurloss
