#include "schurloss/schur.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "schurloss/error.hpp"
#include "schurloss/lft.hpp"

namespace schurloss {

void Chart::validate(Index p, const ToleranceProfile& tol) const {
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const ChartStep& s = steps[k];
    const std::string where = "chart step " + std::to_string(k + 1);
    if (s.u.size() != p) raise(ErrorCode::InvalidArgument, where + ": u has the wrong size");
    if (!std::isfinite(s.w.real()) || !std::isfinite(s.w.imag()) || !all_finite(s.u)) {
      raise(ErrorCode::InvalidArgument, where + ": non-finite entries");
    }
    if (std::abs(s.w) > 1.0 - tol.tol_contraction) {
      raise(ErrorCode::InvalidArgument, where + ": |w| must be below 1 - tol_contraction");
    }
    if (std::abs(s.u.norm() - 1.0) > 1e-12) {
      raise(ErrorCode::InvalidArgument, where + ": u must have unit norm");
    }
  }
  if (fixed_d0) {
    if (fixed_d0->rows() != p || fixed_d0->cols() != p) {
      raise(ErrorCode::InvalidArgument, "chart base D0 has the wrong size");
    }
    if (unitarity_residual(*fixed_d0) > tol.tol_unitary) {
      raise(ErrorCode::NotIsometry, "chart base D0 is not unitary");
    }
  }
}

Chart default_chart(Index n, Index p) {
  if (p < 1 || n < 0) raise(ErrorCode::InvalidArgument, "default_chart needs n >= 0 and p >= 1");
  Chart chart;
  chart.steps.reserve(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    chart.steps.push_back({Complex(0.0), CVector::Unit(p, k % p)});
  }
  chart.fixed_d0 = CMatrix::Identity(p, p);
  return chart;
}

void SchurData::validate(const ToleranceProfile& tol) const {
  const Index p_ = p();
  if (D0.cols() != p_ || p_ < 1) raise(ErrorCode::DimensionMismatch, "D0 must be square and nonempty");
  chart.validate(p_, tol);
  if (static_cast<Index>(v.size()) != chart.n()) {
    raise(ErrorCode::DimensionMismatch, "number of Schur vectors differs from the chart length");
  }
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].size() != p_) raise(ErrorCode::DimensionMismatch, "Schur vector has the wrong size");
    if (!(v[k].norm() <= 1.0 - tol.tol_contraction)) {
      raise(ErrorCode::SchurVectorTooLarge,
            "||v_" + std::to_string(k + 1) + "|| = " + std::to_string(v[k].norm()));
    }
  }
  if (unitarity_residual(D0) > tol.tol_unitary) raise(ErrorCode::NotIsometry, "D0 is not unitary");
  if (chart.fixed_d0 && max_abs(*chart.fixed_d0 - D0) > tol.tol_roundtrip) {
    raise(ErrorCode::InvalidArgument, "D0 differs from the chart's fixed base");
  }
}

std::vector<Realization> schur_reconstruct_trace(const SchurData& data,
                                                 const ToleranceProfile& tol) {
  data.validate(tol);
  std::vector<Realization> stages;
  stages.reserve(data.v.size() + 1);
  stages.push_back(Realization::constant(data.D0));
  for (std::size_t k = 0; k < data.v.size(); ++k) {
    const ChartStep& s = data.chart.steps[k];
    stages.push_back(elementary_apply(s.u, data.v[k], s.w, stages.back(), tol));
  }
  return stages;
}

Realization schur_reconstruct(const SchurData& data, const ToleranceProfile& tol) {
  return schur_reconstruct_trace(data, tol).back();
}

Direction pick_direction(const Realization& g, Complex w, const std::vector<CVector>& basis,
                         const ToleranceProfile& tol, bool min_norm) {
  const CMatrix value = eval(g, Point::reflect(w), tol);
  std::optional<Direction> best;
  double best_norm = std::numeric_limits<double>::infinity();
  for (const CVector& u : basis) {
    if (u.size() != g.m()) raise(ErrorCode::DimensionMismatch, "basis vector has the wrong size");
    CVector v = value * u;
    const double norm = v.norm();
    if (norm > 1.0 - tol.tol_contraction) continue;
    if (!min_norm) return {u, std::move(v)};
    if (norm < best_norm) {
      best_norm = norm;
      best = Direction{u, std::move(v)};
    }
  }
  if (!best) raise(ErrorCode::NoAdmissibleDirection, "no basis vector gives ||v|| < 1");
  return *best;
}

DecompositionTrace schur_decompose_trace(const Realization& g, const Chart& chart,
                                         const ToleranceProfile& tol) {
  const Index p = g.p();
  if (g.m() != p) raise(ErrorCode::DimensionMismatch, "schur_decompose needs a square system");
  chart.validate(p, tol);
  const Index n = chart.n();
  if (g.n() != n) {
    raise(ErrorCode::DimensionMismatch, "chart has " + std::to_string(n) +
                                            " steps but the system has degree " +
                                            std::to_string(g.n()));
  }

  DecompositionTrace trace;
  std::vector<Realization> down{g};
  std::vector<CVector> v(static_cast<std::size_t>(n));
  for (Index k = n; k >= 1; --k) {
    const ChartStep& s = chart.steps[static_cast<std::size_t>(k - 1)];
    const CVector value = eval(down.back(), Point::reflect(s.w), tol) * s.u;
    const double norm = value.norm();
    if (!(norm < 1.0 - tol.tol_contraction)) {
      throw NotInChartError(static_cast<int>(k), norm,
                            "step " + std::to_string(k) + ": ||v|| = " + std::to_string(norm));
    }
    Deflation d = elementary_deflate(s.u, s.w, down.back(), tol);
    v[static_cast<std::size_t>(k - 1)] = std::move(d.v);
    down.push_back(std::move(d.g));
  }

  const CMatrix d0 = down.back().D;
  if (chart.fixed_d0) {
    const double gap = max_abs(*chart.fixed_d0 - d0);
    if (gap > tol.tol_roundtrip) {
      throw NotInChartError(0, gap, "final constant differs from the chart base by " +
                                        std::to_string(gap));
    }
  }

  trace.data.chart = chart;
  trace.data.v = std::move(v);
  trace.data.D0 = chart.fixed_d0 ? *chart.fixed_d0 : d0;
  trace.stages.assign(down.rbegin(), down.rend());
  return trace;
}

SchurData schur_decompose(const Realization& g, const Chart& chart, const ToleranceProfile& tol) {
  return schur_decompose_trace(g, chart, tol).data;
}

ChartReport chart_contains(const Realization& g, const Chart& chart,
                           const ToleranceProfile& tol) {
  ChartReport report;
  if (g.p() != g.m() || chart.n() != g.n()) {
    report.failure_step = -1;
    report.message = "chart length " + std::to_string(chart.n()) + " does not match degree " +
                     std::to_string(g.n());
    return report;
  }
  try {
    chart.validate(g.p(), tol);
  } catch (const Error& e) {
    report.failure_step = -1;
    report.message = e.what();
    return report;
  }

  Realization cur = g;
  for (Index k = chart.n(); k >= 1; --k) {
    const ChartStep& s = chart.steps[static_cast<std::size_t>(k - 1)];
    try {
      const double norm = (eval(cur, Point::reflect(s.w), tol) * s.u).norm();
      report.per_step_norms.push_back(norm);
      if (!(norm < 1.0 - tol.tol_contraction)) {
        report.failure_step = static_cast<int>(k);
        report.message = "||v_" + std::to_string(k) + "|| = " + std::to_string(norm);
        return report;
      }
      cur = elementary_deflate(s.u, s.w, cur, tol).g;
    } catch (const Error& e) {
      report.failure_step = static_cast<int>(k);
      report.message = e.what();
      return report;
    }
  }
  if (chart.fixed_d0) {
    const double gap = max_abs(*chart.fixed_d0 - cur.D);
    if (gap > tol.tol_roundtrip) {
      report.failure_step = 0;
      report.message = "final constant differs from the chart base by " + std::to_string(gap);
      return report;
    }
  }
  report.in_chart = true;
  return report;
}

}  // namespace schurloss
