#include "schurloss/random.hpp"

#include <cmath>
#include <numbers>

namespace schurloss {

double RandomSource::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double RandomSource::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Complex RandomSource::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

CMatrix RandomSource::complex_normal(Index rows, Index cols) {
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

CVector RandomSource::unit_vector(Index p) {
  CVector v = complex_normal(p, 1);
  return v / v.norm();
}

CVector RandomSource::vector_in_ball(Index p, double max_norm) {
  return unit_vector(p) * uniform(0.0, max_norm);
}

Complex RandomSource::point_in_disk(double max_modulus) {
  return std::polar(uniform(0.0, max_modulus), uniform(0.0, 2.0 * std::numbers::pi));
}

Complex RandomSource::unimodular() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }

CMatrix RandomSource::unitary(Index p) { return isometry(p, p); }

CMatrix RandomSource::isometry(Index rows, Index cols) {
  const CMatrix g = complex_normal(rows, cols);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  const CMatrix r = qr.matrixQR();
  for (Index j = 0; j < cols; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

CMatrix RandomSource::contraction(Index p, double norm) {
  const CMatrix g = complex_normal(p, p);
  return g * (norm / spectral_norm(g));
}

CMatrix RandomSource::stable_matrix(Index n, double radius) {
  if (n == 0) return CMatrix(0, 0);
  CMatrix g = complex_normal(n, n);
  const double rho = spectral_radius(g);
  return g * (radius / rho);
}

}  // namespace schurloss
