#include "schurloss/random.hpp"
#include "schurloss/realization.hpp"
#include "schurloss/schur.hpp"

namespace schurloss {

namespace {

constexpr double kMaxPoint = 0.9;
constexpr double kMaxSchurNorm = 0.9;

}  // namespace

SchurData random_schur_data(const Chart& chart, Index p, std::uint64_t seed) {
  RandomSource rng(seed);
  SchurData data;
  data.chart = chart;
  data.v.reserve(chart.steps.size());
  for (std::size_t k = 0; k < chart.steps.size(); ++k) {
    data.v.push_back(rng.vector_in_ball(p, kMaxSchurNorm));
  }
  data.D0 = chart.fixed_d0 ? *chart.fixed_d0 : rng.unitary(p);
  return data;
}

SchurData random_schur_data(Index n, Index p, std::uint64_t seed) {
  RandomSource rng(seed);
  Chart chart;
  for (Index k = 0; k < n; ++k) {
    const Complex w = rng.point_in_disk(kMaxPoint);
    chart.steps.push_back({w, rng.unit_vector(p)});
  }
  // A different stream for the coordinates keeps them independent of n.
  return random_schur_data(chart, p, seed ^ 0x9e3779b97f4a7c15ULL);
}

Realization random_lossless(Index n, Index p, std::uint64_t seed) {
  return schur_reconstruct(random_schur_data(n, p, seed));
}

}  // namespace schurloss
