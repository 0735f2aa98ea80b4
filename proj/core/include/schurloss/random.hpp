#pragma once

#include <cstdint>
#include <random>

#include "schurloss/matnum.hpp"

namespace schurloss {

/// Seeded generator for the random objects used by `random_lossless`, the
/// CLI and the test suites. Deterministic for a fixed seed and toolchain.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();

  /// Circularly-symmetric complex Gaussian with unit variance.
  Complex complex_normal();
  CMatrix complex_normal(Index rows, Index cols);

  CVector unit_vector(Index p);

  /// Vector with norm drawn uniformly in [0, max_norm).
  CVector vector_in_ball(Index p, double max_norm);

  /// Point with modulus drawn uniformly in [0, max_modulus).
  Complex point_in_disk(double max_modulus);
  Complex unimodular();

  /// Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
  CMatrix unitary(Index p);

  /// (rows x cols) matrix with orthonormal columns.
  CMatrix isometry(Index rows, Index cols);

  /// Random p x p matrix scaled to the given spectral norm.
  CMatrix contraction(Index p, double norm);

  /// Random n x n matrix scaled to the given spectral radius.
  CMatrix stable_matrix(Index n, double radius);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace schurloss
