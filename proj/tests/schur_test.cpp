#include "schurloss/schur.hpp"

#include <gtest/gtest.h>

#include "schurloss/error.hpp"
#include "schurloss/jtheory.hpp"
#include "schurloss/lft.hpp"
#include "schurloss/random.hpp"
#include "test_support.hpp"

namespace schurloss {
namespace {

using testing::circle_point;
using testing::max_diff;

TEST(SchurReconstruct, EmptyChartGivesConstant) {
  RandomSource rng(3);
  SchurData data;
  data.D0 = rng.unitary(2);
  const Realization g = schur_reconstruct(data);
  EXPECT_EQ(g.n(), 0);
  EXPECT_LT(max_diff(g.D, data.D0), 1e-15);
}

TEST(SchurReconstruct, ZeroVectorsGivePureDelay) {
  for (int n = 1; n <= 5; ++n) {
    SchurData data;
    data.chart = default_chart(n, 1);
    data.v.assign(static_cast<std::size_t>(n), CVector::Zero(1));
    data.D0 = CMatrix::Identity(1, 1);
    const Realization g = schur_reconstruct(data);
    ASSERT_EQ(g.n(), n);
    for (int k = 0; k < 8; ++k) {
      const Complex z = circle_point(k, 8);
      EXPECT_LT(std::abs(eval(g, z)(0, 0) - std::pow(z, -n)), 1e-12);
    }
  }
}

TEST(SchurReconstruct, PositiveUpperHessenberg) {
  RandomSource rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 8;
    SchurData data;
    data.chart = default_chart(n, 1);
    data.chart.fixed_d0.reset();
    for (int k = 0; k < n; ++k) data.v.push_back(rng.vector_in_ball(1, 0.95));
    data.D0 = rng.unitary(1);
    const Realization g = schur_reconstruct(data);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j + 1) {
          EXPECT_LT(std::abs(g.A(i, j).imag()), 1e-12);
          EXPECT_GT(g.A(i, j).real(), 0.0);
        } else if (i > j + 1) {
          EXPECT_LT(std::abs(g.A(i, j)), 1e-12);
        }
      }
    }
  }
}

TEST(SchurReconstruct, IntermediatesAreLosslessAndInterpolate) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Index p = 1 + static_cast<Index>(seed % 3);
    const SchurData data = random_schur_data(6, p, seed);
    const std::vector<Realization> stages = schur_reconstruct_trace(data);
    ASSERT_EQ(stages.size(), 7u);
    for (std::size_t k = 0; k < stages.size(); ++k) {
      const Realization& g = stages[k];
      EXPECT_EQ(g.n(), static_cast<Index>(k));
      EXPECT_LT(unitarity_residual(g.matrix()), 1e-8);
      EXPECT_EQ(winding_degree(g), static_cast<int>(k));
      if (k == 0) continue;
      const ChartStep& s = data.chart.steps[k - 1];
      const CVector got = eval(g, Point::reflect(s.w)) * s.u;
      EXPECT_LT((got - data.v[k - 1]).norm(), 1e-8);
    }
  }
}

TEST(PickDirection, DelayHasZeroVector) {
  SchurData data;
  data.chart = default_chart(1, 1);
  data.v = {CVector::Zero(1)};
  data.D0 = CMatrix::Identity(1, 1);
  const Realization g = schur_reconstruct(data);
  const Direction d = pick_direction(g, 0.0, {CVector::Ones(1)});
  EXPECT_LT(std::abs(d.u(0) - 1.0), 1e-15);
  EXPECT_LT(d.v.norm(), 1e-15);
}

TEST(PickDirection, CanonicalBasisAlwaysAdmissible) {
  const Realization g = random_lossless(2, 2, 5);
  const std::vector<CVector> basis{CVector::Unit(2, 0), CVector::Unit(2, 1)};
  for (int k = 0; k < 16; ++k) {
    const Complex w = std::polar(0.3 + 0.6 * (k % 4) / 4.0, 0.4 * k);
    EXPECT_NO_THROW(pick_direction(g, w, basis));
  }
}

TEST(PickDirection, MinNormFlag) {
  const Realization g = random_lossless(3, 3, 8);
  const std::vector<CVector> basis{CVector::Unit(3, 0), CVector::Unit(3, 1), CVector::Unit(3, 2)};
  const Complex w(0.2, -0.1);
  const CMatrix value = eval(g, Point::reflect(w));
  double best = INFINITY;
  for (const CVector& u : basis) best = std::min(best, (value * u).norm());
  const Direction d = pick_direction(g, w, basis, {}, true);
  EXPECT_DOUBLE_EQ(d.v.norm(), best);
}

TEST(PickDirection, NoneAdmissible) {
  const Realization g = Realization::constant(CMatrix::Identity(1, 1));
  EXPECT_THROW(
      {
        try {
          pick_direction(g, 0.0, {CVector::Ones(1)});
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::NoAdmissibleDirection);
          throw;
        }
      },
      Error);
}

TEST(SchurDecompose, RoundtripOnData) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Index p = 1 + static_cast<Index>(seed % 3);
    const Index n = 1 + static_cast<Index>(seed % 8);
    const SchurData data = random_schur_data(n, p, seed);
    const SchurData back = schur_decompose(schur_reconstruct(data), data.chart);
    ASSERT_EQ(back.v.size(), data.v.size());
    for (std::size_t k = 0; k < data.v.size(); ++k) {
      EXPECT_LT(max_diff(back.v[k], data.v[k]), 1e-8) << "seed " << seed << " step " << k;
    }
    EXPECT_LT(max_diff(back.D0, data.D0), 1e-8);
  }
}

TEST(SchurDecompose, RoundtripOnFunctionAndLosslessStages) {
  for (std::uint64_t seed = 40; seed < 50; ++seed) {
    const Index p = 1 + static_cast<Index>(seed % 3);
    const Realization g = random_lossless(5, p, seed);
    Chart chart;
    RandomSource rng(seed + 1000);
    for (int k = 0; k < 5; ++k) chart.steps.push_back({rng.point_in_disk(0.5), rng.unit_vector(p)});
    const DecompositionTrace trace = schur_decompose_trace(g, chart);
    for (std::size_t k = 0; k < trace.stages.size(); ++k) {
      EXPECT_EQ(trace.stages[k].n(), static_cast<Index>(k));
      EXPECT_LT(unitarity_residual(trace.stages[k].matrix()), 1e-8);
      EXPECT_EQ(winding_degree(trace.stages[k]), static_cast<int>(k));
    }
    EXPECT_LT(circle_distance(schur_reconstruct(trace.data), g), 1e-7);
  }
}

TEST(SchurDecompose, DegreeOneScalarClosedForm) {
  // G(z) = gamma (1 - conj(a) z) / (z - a), so G(infinity) = -gamma conj(a).
  const Complex a(0.3, 0.4);
  const Complex gamma = std::polar(1.0, 0.7);
  const double r = std::sqrt(1.0 - std::norm(a));
  CMatrix m(2, 2);
  m << -gamma * std::conj(a), gamma * r, r, a;
  const Realization g = Realization::from_matrix(m, 1, 1);
  Chart chart;
  chart.steps.push_back({0.0, CVector::Ones(1)});
  const SchurData data = schur_decompose(g, chart);
  EXPECT_LT(std::abs(data.v[0](0) - (-gamma * std::conj(a))), 1e-12);
  EXPECT_LT(circle_distance(schur_reconstruct(data), g), 1e-10);
}

TEST(SchurDecompose, SchurFormChart) {
  // Interpolating at poles along kernel directions gives v = 0 and triangular A.
  const Index p = 2;
  Realization g = random_lossless(3, p, 77);
  Chart chart;
  std::vector<ChartStep> rev;
  Realization cur = g;
  for (Index k = 3; k >= 1; --k) {
    Eigen::ComplexEigenSolver<CMatrix> es(cur.A);
    const Complex w = es.eigenvalues()(0);
    const CMatrix value = eval(cur, Point::reflect(w));
    Eigen::JacobiSVD<CMatrix> svd(value, Eigen::ComputeFullV);
    CVector u = svd.matrixV().col(p - 1);
    rev.push_back({w, u});
    cur = elementary_deflate(u, w, cur).g;
  }
  chart.steps.assign(rev.rbegin(), rev.rend());
  const SchurData data = schur_decompose(g, chart);
  for (const CVector& v : data.v) EXPECT_LT(v.norm(), 1e-8);
  const Realization b = schur_reconstruct(data);
  // Newest state first: the triangle is the lower one.
  for (Index i = 0; i < 3; ++i) {
    for (Index j = i + 1; j < 3; ++j) EXPECT_LT(std::abs(b.A(i, j)), 1e-8);
  }
  EXPECT_LT(circle_distance(b, g), 1e-7);
}

TEST(SchurDecompose, FixedBaseMismatchIsStepZero) {
  const Realization g = random_lossless(2, 2, 9);
  const Chart chart = default_chart(2, 2);
  try {
    schur_decompose(g, chart);
    FAIL() << "expected NotInChartError";
  } catch (const NotInChartError& e) {
    EXPECT_EQ(e.step(), 0);
    EXPECT_EQ(e.code(), ErrorCode::NotInChart);
  }
}

TEST(SchurDecompose, FixedBaseRoundtrip) {
  const Chart chart = default_chart(4, 2);
  const SchurData data = random_schur_data(chart, 2, 4);
  const Realization g = schur_reconstruct(data);
  const SchurData back = schur_decompose(g, chart);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_LT(max_diff(back.v[k], data.v[k]), 1e-8);
}

TEST(SchurDecompose, QuotientEquivariance) {
  RandomSource rng(31);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Index p = 1 + static_cast<Index>(seed % 3);
    const SchurData data = random_schur_data(4, p, seed);
    const Realization g = schur_reconstruct(data);
    const CMatrix x = rng.unitary(p);
    const Realization xg(g.A, g.B, x * g.C, x * g.D);
    const SchurData d1 = schur_decompose(g, data.chart);
    const SchurData d2 = schur_decompose(xg, data.chart);
    for (std::size_t k = 0; k < d1.v.size(); ++k) {
      EXPECT_LT(max_diff(d2.v[k], x * d1.v[k]), 1e-8);
    }
    EXPECT_LT(max_diff(d2.D0, x * d1.D0), 1e-8);
  }
}

TEST(SchurDecompose, ChartOverlapAgreesOnFunction) {
  const Realization g = random_lossless(4, 2, 123);
  Chart c1 = default_chart(4, 2);
  c1.fixed_d0.reset();
  Chart c2;
  RandomSource rng(5);
  for (int k = 0; k < 4; ++k) c2.steps.push_back({rng.point_in_disk(0.6), rng.unit_vector(2)});
  ASSERT_TRUE(chart_contains(g, c1).in_chart);
  ASSERT_TRUE(chart_contains(g, c2).in_chart);
  const Realization g1 = schur_reconstruct(schur_decompose(g, c1));
  const Realization g2 = schur_reconstruct(schur_decompose(g, c2));
  EXPECT_LT(circle_distance(g1, g2), 1e-7);
}

TEST(ChartContains, OwnDecompositionChart) {
  const SchurData data = random_schur_data(5, 2, 17);
  const ChartReport report = chart_contains(schur_reconstruct(data), data.chart);
  EXPECT_TRUE(report.in_chart);
  EXPECT_EQ(report.per_step_norms.size(), 5u);
}

TEST(ChartContains, NearBoundaryIsOutside) {
  // One forward step with ||v|| = 1 - 1e-12, built under a looser contraction
  // tolerance; at w = 0 the Schur vector is D u.
  ToleranceProfile loose;
  loose.tol_contraction = 1e-14;
  const CVector u = CVector::Unit(2, 0);
  const CVector v = (1.0 - 1e-12) * CVector::Unit(2, 1);
  const Realization g =
      elementary_apply(u, v, 0.0, Realization::constant(CMatrix::Identity(2, 2)), loose);
  Chart chart;
  chart.steps.push_back({0.0, u});
  const ChartReport report = chart_contains(g, chart);
  EXPECT_FALSE(report.in_chart);
  EXPECT_EQ(report.failure_step, 1);
  ASSERT_EQ(report.per_step_norms.size(), 1u);
  EXPECT_NEAR(report.per_step_norms[0], 1.0 - 1e-12, 1e-14);
}

TEST(ChartContains, WrongLength) {
  const Realization g = random_lossless(3, 1, 2);
  const ChartReport report = chart_contains(g, default_chart(2, 1));
  EXPECT_FALSE(report.in_chart);
  EXPECT_EQ(report.failure_step, -1);
}

TEST(ChartValidate, RejectsBadSteps) {
  Chart chart;
  chart.steps.push_back({Complex(1.0, 0.0), CVector::Ones(1)});
  EXPECT_THROW(chart.validate(1), Error);
  chart.steps[0] = {0.0, CVector::Constant(1, 2.0)};
  EXPECT_THROW(chart.validate(1), Error);
}

}  // namespace
}  // namespace schurloss
