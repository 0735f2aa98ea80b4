#pragma once

///
/// \file canonical.hpp
///
/// Output-normal and input-normal canonical forms of stable systems,
/// obtained by completing the output-normal pair (A, C) to a lossless system
/// and replacing (A, C) by the Schur balanced pair of that completion.
///

#include "schurloss/matnum.hpp"
#include "schurloss/realization.hpp"
#include "schurloss/schur.hpp"

namespace schurloss {

/// A realization whose A has spectral radius at most 1 - tol_contraction.
class StableSystem {
 public:
  /// Throws NotStable.
  explicit StableSystem(Realization g, const ToleranceProfile& tol = {});

  const Realization& realization() const { return g_; }

 private:
  Realization g_;
};

struct Completion {
  CMatrix B;  ///< n x p
  CMatrix D;  ///< p x p
};

/// (B~, D~) with [[D~, C], [B~, A]] unitary. Deterministic in (A, C).
/// Throws NotOutputNormal unless A^*A + C^*C = I within tol_unitary.
Completion lossless_completion(const CMatrix& a, const CMatrix& c,
                               const ToleranceProfile& tol = {});

/// Conjugate-transpose dual (A^*, C^*, B^*, D^*).
Realization dual(const Realization& g);

struct CanonicalForm {
  Realization form;
  CMatrix T;  ///< state map x -> T x taking the input to the form
};

/// Canonical realization with observability Gramian I. The chart supplies
/// the interpolation data (w_k, u_k); its base is not used.
/// Throws NotMinimal, or NotInChartError if the completed system lies
/// outside the chart.
CanonicalForm output_normal_form(const StableSystem& s, const Chart& chart,
                                 const ToleranceProfile& tol = {});

/// Dual of output_normal_form: controllability Gramian I.
CanonicalForm input_normal_form(const StableSystem& s, const Chart& chart,
                                const ToleranceProfile& tol = {});

}  // namespace schurloss
