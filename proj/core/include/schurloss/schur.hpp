#pragma once

///
/// \file schur.hpp
///
/// Tangential Schur algorithm on lossless realizations.
///
/// A chart is a list of interpolation data (w_k, u_k), k = 1..n. Schur
/// coordinates of G in the chart are the vectors v_k = G^(k)(1/conj(w_k)) u_k
/// together with the constant G^(0). Reconstruction applies step 1 first;
/// decomposition consumes step n first.
///

#include <cstdint>
#include <optional>
#include <vector>

#include "schurloss/matnum.hpp"
#include "schurloss/realization.hpp"

namespace schurloss {

struct ChartStep {
  Complex w;
  CVector u;
};

struct Chart {
  std::vector<ChartStep> steps;
  /// Constant G^(0) for the quotient atlas; empty for a free unitary base.
  std::optional<CMatrix> fixed_d0;

  Index n() const { return static_cast<Index>(steps.size()); }

  /// Throws InvalidArgument (|w| or ||u|| out of range, mixed sizes) or
  /// NotIsometry (fixed D0 not unitary).
  void validate(Index p, const ToleranceProfile& tol = {}) const;
};

/// w_k = 0, u_k = e_{1 + ((k-1) mod p)}, fixed base D0 = I.
Chart default_chart(Index n, Index p);

struct SchurData {
  Chart chart;
  std::vector<CVector> v;  ///< v_1 .. v_n
  CMatrix D0;              ///< G^(0); equals the chart's D0 for a fixed base

  Index p() const { return D0.rows(); }

  /// Chart invariants plus ||v_k|| <= 1 - tol_contraction and unitary D0.
  void validate(const ToleranceProfile& tol = {}) const;
};

/// Lossless-balanced realization of degree n obtained by n forward steps
/// from the constant D0.
Realization schur_reconstruct(const SchurData& data, const ToleranceProfile& tol = {});

/// As schur_reconstruct, returning G^(0), ..., G^(n).
std::vector<Realization> schur_reconstruct_trace(const SchurData& data,
                                                 const ToleranceProfile& tol = {});

struct Direction {
  CVector u;
  CVector v;
};

/// First basis vector u with ||G(1/conj(w)) u|| <= 1 - tol_contraction, or the
/// admissible one of least ||v|| when min_norm is set.
/// Throws NoAdmissibleDirection.
Direction pick_direction(const Realization& g, Complex w, const std::vector<CVector>& basis,
                         const ToleranceProfile& tol = {}, bool min_norm = false);

/// Schur coordinates of a lossless-balanced G in the chart. Throws
/// NotInChartError with the failing step (0 for a fixed base mismatch).
SchurData schur_decompose(const Realization& g, const Chart& chart,
                          const ToleranceProfile& tol = {});

struct DecompositionTrace {
  SchurData data;
  std::vector<Realization> stages;  ///< G^(0), ..., G^(n)
};

DecompositionTrace schur_decompose_trace(const Realization& g, const Chart& chart,
                                         const ToleranceProfile& tol = {});

struct ChartReport {
  bool in_chart = false;
  std::vector<double> per_step_norms;  ///< ||v_k|| for the steps reached, k = n first
  int failure_step = 0;                ///< -1 wrong length, 0 base mismatch or none
  std::string message;
};

/// Non-throwing chart membership test.
ChartReport chart_contains(const Realization& g, const Chart& chart,
                           const ToleranceProfile& tol = {});

/// Random Schur data on a random chart: |w_k| < 0.9, ||v_k|| < 0.9, random
/// unitary D0 (or the chart's fixed D0 when given).
SchurData random_schur_data(const Chart& chart, Index p, std::uint64_t seed);
SchurData random_schur_data(Index n, Index p, std::uint64_t seed);

}  // namespace schurloss
