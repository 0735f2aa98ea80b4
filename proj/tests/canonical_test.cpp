#include "schurloss/canonical.hpp"

#include <gtest/gtest.h>

#include "schurloss/error.hpp"
#include "schurloss/random.hpp"
#include "test_support.hpp"

namespace schurloss {
namespace {

using testing::circle_point;
using testing::max_diff;

Realization random_stable(Index n, Index p, Index m, RandomSource& rng) {
  return Realization(rng.stable_matrix(n, 0.8), rng.complex_normal(n, m), rng.complex_normal(p, n),
                     rng.complex_normal(p, m));
}

Chart free_default(Index n, Index p) {
  Chart c = default_chart(n, p);
  c.fixed_d0.reset();
  return c;
}

CMatrix random_similarity(Index n, RandomSource& rng) {
  return CMatrix::Identity(n, n) + 0.5 * rng.complex_normal(n, n);
}

TEST(LosslessCompletion, DelayExample) {
  const CMatrix a = CMatrix::Zero(1, 1);
  const CMatrix c = CMatrix::Ones(1, 1);
  const Completion comp = lossless_completion(a, c);
  EXPECT_LT(std::abs(comp.B(0, 0) - 1.0), 1e-15);
  EXPECT_LT(std::abs(comp.D(0, 0)), 1e-15);
}

TEST(LosslessCompletion, RandomOutputNormalCertifies) {
  RandomSource rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    // Output-normal pair from the last n columns of a random unitary.
    const CMatrix q = rng.unitary(6);
    const CMatrix c = q.topRightCorner(2, 4);
    const CMatrix a = q.bottomRightCorner(4, 4);
    const Completion comp = lossless_completion(a, c);
    const Realization g(a, comp.B, c, comp.D);
    EXPECT_LT(unitarity_residual(g.matrix()), 1e-9);
    const LosslessCertificate cert = is_lossless(g);
    EXPECT_LT(cert.unitarity_residual, 1e-9);
    EXPECT_LT(cert.circle_residual, 1e-9);
  }
}

TEST(LosslessCompletion, RejectsNonOutputNormal) {
  try {
    lossless_completion(CMatrix::Constant(1, 1, 0.5), CMatrix::Ones(1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOutputNormal);
  }
}

TEST(LosslessCompletion, DeterministicInAC) {
  RandomSource rng(4);
  const CMatrix q = rng.unitary(5);
  const Completion c1 = lossless_completion(q.bottomRightCorner(3, 3), q.topRightCorner(2, 3));
  const Completion c2 = lossless_completion(q.bottomRightCorner(3, 3), q.topRightCorner(2, 3));
  EXPECT_EQ(c1.B, c2.B);
  EXPECT_EQ(c1.D, c2.D);
}

TEST(StableSystem, RejectsUnstable) {
  const Realization g(CMatrix::Constant(1, 1, 1.0), CMatrix::Ones(1, 1), CMatrix::Ones(1, 1),
                      CMatrix::Zero(1, 1));
  EXPECT_THROW(StableSystem{g}, Error);
}

TEST(OutputNormalForm, GramianAndTransferFunction) {
  RandomSource rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 6;
    const Index p = 1 + trial % 3;
    const Index m = 1 + (trial / 3) % 3;
    const Realization g = random_stable(n, p, m, rng);
    const CanonicalForm f = output_normal_form(StableSystem(g), free_default(n, p));
    const GramianPair w = gramians(f.form);
    EXPECT_LT(max_diff(w.Wo, CMatrix::Identity(n, n)), 1e-8);
    for (int k = 0; k < 16; ++k) {
      const Complex z = circle_point(k, 16);
      EXPECT_LT(max_diff(eval(f.form, z), eval(g, z)), 1e-9);
    }
    // T maps the input realization onto the form.
    EXPECT_LT(max_diff(f.T * g.A, f.form.A * f.T), 1e-9);
  }
}

TEST(OutputNormalForm, ConstantOnSimilarityOrbits) {
  RandomSource rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + trial % 6;
    const Index p = 1 + trial % 2;
    const Realization g = random_stable(n, p, 2, rng);
    const Realization h = similarity(g, random_similarity(n, rng));
    const Chart chart = free_default(n, p);
    const CanonicalForm fg = output_normal_form(StableSystem(g), chart);
    const CanonicalForm fh = output_normal_form(StableSystem(h), chart);
    EXPECT_LT(max_diff(fg.form.A, fh.form.A), 1e-8);
    EXPECT_LT(max_diff(fg.form.B, fh.form.B), 1e-8);
    EXPECT_LT(max_diff(fg.form.C, fh.form.C), 1e-8);
  }
}

TEST(OutputNormalForm, Idempotent) {
  RandomSource rng(10);
  const Realization g = random_stable(4, 2, 1, rng);
  const Chart chart = free_default(4, 2);
  const CanonicalForm once = output_normal_form(StableSystem(g), chart);
  const CanonicalForm twice = output_normal_form(StableSystem(once.form), chart);
  EXPECT_LT(max_diff(twice.T, CMatrix::Identity(4, 4)), 1e-9);
  EXPECT_LT(max_diff(twice.form.A, once.form.A), 1e-9);
  EXPECT_LT(max_diff(twice.form.B, once.form.B), 1e-9);
}

TEST(OutputNormalForm, PairMatchesCompletedLosslessSystem) {
  // (A_n, C_n) is the Schur balanced pair of the completion.
  RandomSource rng(12);
  const Realization g = random_stable(3, 2, 2, rng);
  const CanonicalForm f = output_normal_form(StableSystem(g), free_default(3, 2));
  const Completion comp = lossless_completion(f.form.A, f.form.C);
  const Realization lossless(f.form.A, comp.B, f.form.C, comp.D);
  EXPECT_LT(unitarity_residual(lossless.matrix()), 1e-9);
}

TEST(InputNormalForm, GramianAndInvariance) {
  RandomSource rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 6;
    const Index m = 1 + trial % 3;
    const Realization g = random_stable(n, 2, m, rng);
    const Chart chart = free_default(n, m);
    const CanonicalForm f = input_normal_form(StableSystem(g), chart);
    const GramianPair w = gramians(f.form);
    EXPECT_LT(max_diff(w.Wc, CMatrix::Identity(n, n)), 1e-8);
    EXPECT_LT(max_diff(f.T * g.A, f.form.A * f.T), 1e-9);
    if (trial < 20) {
      const Realization h = similarity(g, random_similarity(n, rng));
      const CanonicalForm fh = input_normal_form(StableSystem(h), chart);
      EXPECT_LT(max_diff(f.form.A, fh.form.A), 1e-8);
      EXPECT_LT(max_diff(f.form.B, fh.form.B), 1e-8);
      EXPECT_LT(max_diff(f.form.C, fh.form.C), 1e-8);
    }
  }
}

TEST(InputNormalForm, DualityInvolution) {
  RandomSource rng(14);
  const Realization g = random_stable(4, 2, 3, rng);
  const CanonicalForm a = input_normal_form(StableSystem(dual(g)), free_default(4, 2));
  const CanonicalForm b = output_normal_form(StableSystem(g), free_default(4, 2));
  const Realization db = dual(b.form);
  EXPECT_LT(max_diff(a.form.A, db.A), 1e-12);
  EXPECT_LT(max_diff(a.form.B, db.B), 1e-12);
  EXPECT_LT(max_diff(a.form.C, db.C), 1e-12);
}

}  // namespace
}  // namespace schurloss
