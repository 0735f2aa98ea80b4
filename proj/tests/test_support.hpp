#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "schurloss/matnum.hpp"
#include "schurloss/realization.hpp"

namespace schurloss::testing {

inline Complex circle_point(int k, int count) {
  return std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.5) / count);
}

inline double max_diff(const CMatrix& a, const CMatrix& b) {
  EXPECT_EQ(a.rows(), b.rows());
  EXPECT_EQ(a.cols(), b.cols());
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

/// Reference evaluation of C (zI - A)^{-1} B + D by a full-pivoting solve.
inline CMatrix reference_eval(const Realization& g, Complex z) {
  if (g.n() == 0) return g.D;
  const CMatrix m = z * CMatrix::Identity(g.n(), g.n()) - g.A;
  return g.D + g.C * m.fullPivLu().solve(g.B);
}

}  // namespace schurloss::testing
