#include "schurloss/realization.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "schurloss/error.hpp"

namespace schurloss {

Point Point::reflect(Complex w) {
  if (w == Complex(0.0)) return infinity();
  return Point(1.0 / std::conj(w));
}

Realization::Realization(CMatrix a, CMatrix b, CMatrix c, CMatrix d)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)) {
  const Index n = A.rows();
  if (A.cols() != n || B.rows() != n || C.cols() != n || C.rows() != D.rows() ||
      B.cols() != D.cols()) {
    raise(ErrorCode::DimensionMismatch,
          "realization blocks have inconsistent sizes: A " + std::to_string(A.rows()) + "x" +
              std::to_string(A.cols()) + ", B " + std::to_string(B.rows()) + "x" +
              std::to_string(B.cols()) + ", C " + std::to_string(C.rows()) + "x" +
              std::to_string(C.cols()) + ", D " + std::to_string(D.rows()) + "x" +
              std::to_string(D.cols()));
  }
  require_finite(A, "A");
  require_finite(B, "B");
  require_finite(C, "C");
  require_finite(D, "D");
}

Realization Realization::constant(const CMatrix& d) {
  return Realization(CMatrix(0, 0), CMatrix(0, d.cols()), CMatrix(d.rows(), 0), d);
}

Realization Realization::from_matrix(const CMatrix& r, Index p, Index m) {
  const Index n = r.rows() - p;
  if (n < 0 || r.cols() - m != n) {
    raise(ErrorCode::DimensionMismatch, "realization matrix does not split as requested");
  }
  return Realization(r.bottomRightCorner(n, n), r.bottomLeftCorner(n, m), r.topRightCorner(p, n),
                     r.topLeftCorner(p, m));
}

CMatrix Realization::matrix() const {
  const Index n_ = n();
  CMatrix r(p() + n_, m() + n_);
  r << D, C, B, A;
  return r;
}

CMatrix eval(const Realization& g, const Point& z, const ToleranceProfile& tol) {
  if (z.is_infinite() || g.n() == 0) return g.D;
  const Index n = g.n();
  const CMatrix m = z.value() * CMatrix::Identity(n, n) - g.A;
  Eigen::PartialPivLU<CMatrix> lu(m);
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  if (!(lu.rcond() * norm1 > tol.tol_rank)) {
    raise(ErrorCode::PoleHit, "zI - A is numerically singular at z = " +
                                  std::to_string(z.value().real()) + "+" +
                                  std::to_string(z.value().imag()) + "i");
  }
  return g.D + g.C * lu.solve(g.B);
}

CMatrix eval_sharp(const Realization& g, const Point& z, const ToleranceProfile& tol) {
  if (z.is_infinite()) return eval(g, Point(0.0), tol).adjoint();
  return eval(g, Point::reflect(z.value()), tol).adjoint();
}

GramianPair gramians(const Realization& g, const ToleranceProfile& tol) {
  GramianPair w;
  w.Wc = solve_stein(g.A, g.B * g.B.adjoint(), tol);
  w.Wo = solve_stein(g.A.adjoint(), g.C.adjoint() * g.C, tol);
  return w;
}

std::pair<double, double> gramian_residuals(const Realization& g, const GramianPair& w) {
  return {stein_residual(g.A, w.Wc, g.B * g.B.adjoint()),
          stein_residual(g.A.adjoint(), w.Wo, g.C.adjoint() * g.C)};
}

Realization similarity(const Realization& g, const CMatrix& t) {
  if (g.n() == 0) return g;
  Eigen::PartialPivLU<CMatrix> lu(t);
  return Realization(lu.solve(g.A * t), lu.solve(g.B), g.C * t, g.D);
}

namespace {

// Balancing by the Cholesky factor of Wc; nullopt when A is not stable or
// Wc is singular.
std::optional<Realization> balance_by_reachability(const Realization& g,
                                                   const ToleranceProfile& tol) {
  if (g.n() == 0) return g;
  if (spectral_radius(g.A) >= 1.0 - tol.tol_contraction) return std::nullopt;
  const CMatrix wc = solve_stein(g.A, g.B * g.B.adjoint(), tol);
  if (min_hermitian_eigenvalue(wc) <= tol.tol_rank) return std::nullopt;
  Eigen::LLT<CMatrix> llt(wc);
  if (llt.info() != Eigen::Success) return std::nullopt;
  const CMatrix l = llt.matrixL();
  return similarity(g, l);
}

}  // namespace

Realization balance_lossless(const Realization& g, const ToleranceProfile& tol) {
  if (g.n() == 0) {
    if (unitarity_residual(g.D) > tol.tol_unitary) {
      raise(ErrorCode::NotLossless, "constant system with non-unitary D");
    }
    return g;
  }
  const GramianPair w = gramians(g, tol);
  if (min_hermitian_eigenvalue(w.Wc) <= tol.tol_rank ||
      min_hermitian_eigenvalue(w.Wo) <= tol.tol_rank) {
    raise(ErrorCode::NotMinimal, "a Gramian is singular; realization is not minimal");
  }
  Eigen::LLT<CMatrix> llt(0.5 * (w.Wc + w.Wc.adjoint()));
  if (llt.info() != Eigen::Success) {
    raise(ErrorCode::NotMinimal, "Cholesky factorization of Wc failed");
  }
  const CMatrix l = llt.matrixL();
  Realization out = similarity(g, l);
  const double res = unitarity_residual(out.matrix());
  if (res > tol.tol_unitary) {
    raise(ErrorCode::NotLossless,
          "balanced realization matrix is not unitary (residual " + std::to_string(res) + ")");
  }
  return out;
}

Realization cascade(const Realization& g1, const Realization& g2) {
  if (g1.m() != g2.p()) {
    raise(ErrorCode::DimensionMismatch, "cascade: G1 has " + std::to_string(g1.m()) +
                                            " inputs but G2 has " + std::to_string(g2.p()) +
                                            " outputs");
  }
  const Index n1 = g1.n();
  const Index n2 = g2.n();
  CMatrix a = CMatrix::Zero(n1 + n2, n1 + n2);
  a.topLeftCorner(n2, n2) = g2.A;
  a.bottomLeftCorner(n1, n2) = g1.B * g2.C;
  a.bottomRightCorner(n1, n1) = g1.A;
  CMatrix b(n1 + n2, g2.m());
  b << g2.B, g1.B * g2.D;
  CMatrix c(g1.p(), n1 + n2);
  c << g1.D * g2.C, g1.C;
  return Realization(std::move(a), std::move(b), std::move(c), g1.D * g2.D);
}

namespace {

struct SquareRootFactors {
  CMatrix lc;
  CMatrix lo;
  Eigen::JacobiSVD<CMatrix> svd;
};

SquareRootFactors square_root_factors(const Realization& g, const ToleranceProfile& tol) {
  const GramianPair w = gramians(g, tol);
  SquareRootFactors f;
  f.lc = hermitian_psd_factor(w.Wc);
  f.lo = hermitian_psd_factor(w.Wo);
  f.svd.compute(f.lo.adjoint() * f.lc, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return f;
}

}  // namespace

Eigen::VectorXd hankel_singular_values(const Realization& g, const ToleranceProfile& tol) {
  if (g.n() == 0) return Eigen::VectorXd(0);
  const SquareRootFactors f = square_root_factors(g, tol);
  return f.svd.singularValues().cwiseAbs2();
}

Realization minimal_reduce(const Realization& g, const ToleranceProfile& tol) {
  if (g.n() == 0) return g;
  const SquareRootFactors f = square_root_factors(g, tol);
  const Eigen::VectorXd s = f.svd.singularValues();
  // Unit scale floor: a lone near-zero mode must still count as removable.
  const double ref = std::max(s(0) * s(0), 1.0);
  Index r = 0;
  while (r < s.size() && s(r) * s(r) > tol.tol_rank * ref) ++r;
  if (r == 0) return Realization::constant(g.D);

  Eigen::VectorXd scale = s.head(r).cwiseSqrt().cwiseInverse();
  const CMatrix left =
      scale.cast<Complex>().asDiagonal() * f.svd.matrixU().leftCols(r).adjoint() * f.lo.adjoint();
  const CMatrix right = f.lc * f.svd.matrixV().leftCols(r) * scale.cast<Complex>().asDiagonal();
  return Realization(left * g.A * right, left * g.B, g.C * right, g.D);
}

bool LosslessCertificate::passes(const ToleranceProfile& tol) const {
  return balanced && unitarity_residual < tol.tol_unitary &&
         circle_residual < tol.tol_unitary && stability_margin > 0.0;
}

LosslessCertificate is_lossless(const Realization& g, const ToleranceProfile& tol,
                                int circle_points) {
  LosslessCertificate cert;
  cert.raw_unitarity_residual = unitarity_residual(g.matrix());
  cert.spectral_radius = spectral_radius(g.A);
  cert.stability_margin = 1.0 - cert.spectral_radius;

  if (auto balanced = balance_by_reachability(g, tol)) {
    cert.balanced = true;
    cert.unitarity_residual = unitarity_residual(balanced->matrix());
  } else {
    cert.unitarity_residual = cert.raw_unitarity_residual;
  }

  if (g.p() != g.m()) {
    cert.circle_residual = std::numeric_limits<double>::infinity();
    return cert;
  }
  const CMatrix id = CMatrix::Identity(g.p(), g.p());
  double worst = 0.0;
  for (int k = 0; k < circle_points; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / circle_points);
    try {
      const CMatrix v = eval(g, z, tol);
      worst = std::max(worst, (v.adjoint() * v - id).norm());
    } catch (const Error&) {
      worst = std::numeric_limits<double>::infinity();
    }
  }
  cert.circle_residual = worst;
  return cert;
}

namespace {

// Grid step at angle theta: below half the distance to every eigenvalue of
// A, and small enough that the phase of a Blaschke product with these poles
// moves by at most pi/4 over the step.
double grid_step(double theta, const Eigen::VectorXcd& poles, double max_step) {
  const Complex z = std::polar(1.0, theta);
  double h = max_step;
  double rate = 0.0;
  for (Index i = 0; i < poles.size(); ++i) {
    const double d = std::abs(z - poles(i));
    h = std::min(h, 0.5 * d);
    rate += std::abs(1.0 - std::norm(poles(i))) / (d * d);
  }
  // Distances shrink by at most half over the step, so rates grow at most 4x.
  if (rate > 0.0) h = std::min(h, std::numbers::pi / (16.0 * rate));
  return h;
}

// Sum of principal phase increments of det G around the circle, in units of
// full turns, or nullopt if some increment exceeds pi/2.
std::optional<double> winding_turns(const Realization& g, const Eigen::VectorXcd& poles,
                                    int grid_points, double refine, const ToleranceProfile& tol) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  constexpr long kMaxSteps = 1L << 22;
  const double max_step = kTwoPi / grid_points;
  double total = 0.0;
  Complex prev = eval(g, Complex(1.0, 0.0), tol).determinant();
  const Complex first = prev;
  double theta = 0.0;
  for (long k = 0; theta < kTwoPi; ++k) {
    if (k == kMaxSteps) {
      raise(ErrorCode::WindingAmbiguous, "winding grid exceeds its size limit");
    }
    const double h = refine * grid_step(theta, poles, max_step);
    theta = std::min(theta + h, kTwoPi);
    const Complex cur = theta >= kTwoPi ? first : eval(g, std::polar(1.0, theta), tol).determinant();
    const double step = std::arg(cur / prev);
    if (std::abs(step) > std::numbers::pi / 2) return std::nullopt;
    total += step;
    prev = cur;
  }
  return total / kTwoPi;
}

}  // namespace

int winding_degree(const Realization& g, int grid_points, const ToleranceProfile& tol) {
  if (g.p() != g.m()) raise(ErrorCode::DimensionMismatch, "winding_degree needs a square G");
  if (g.p() == 0) return 0;
  if (grid_points < 1) raise(ErrorCode::InvalidArgument, "winding_degree: grid_points must be positive");
  Eigen::VectorXcd poles(0);
  if (g.n() > 0) poles = Eigen::ComplexEigenSolver<CMatrix>(g.A, false).eigenvalues();
  std::optional<double> turns = winding_turns(g, poles, grid_points, 1.0, tol);
  if (!turns) turns = winding_turns(g, poles, 2 * grid_points, 0.5, tol);
  if (!turns) {
    raise(ErrorCode::WindingAmbiguous,
          "phase of det G jumps by more than pi/2 between grid points");
  }
  return -static_cast<int>(std::lround(*turns));
}

double circle_distance(const Realization& g1, const Realization& g2, int points,
                       const ToleranceProfile& tol) {
  if (g1.p() != g2.p() || g1.m() != g2.m()) {
    raise(ErrorCode::DimensionMismatch, "circle_distance: transfer sizes differ");
  }
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.5) / points);
    worst = std::max(worst, (eval(g1, z, tol) - eval(g2, z, tol)).norm());
  }
  return worst;
}

}  // namespace schurloss
