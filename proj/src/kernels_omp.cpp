#include "qsr/kernels.hpp"

#include <omp.h>

namespace qsr::kernels {

std::vector<SampleVerdict> homotopy_verdicts_omp(const HomotopyWitness& w,
                                                 std::span<const std::vector<Element>> samples) {
  std::vector<SampleVerdict> out(samples.size(), SampleVerdict::Invalid);
  const auto n = static_cast<std::int64_t>(samples.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) out[i] = check_homotopy_sample(w, samples[i]);
  return out;
}

std::vector<std::optional<Clause>> separation_omp(const PointRelation& R,
                                                  std::span<const WeakOrder> excluded,
                                                  HornClass cls) {
  std::vector<std::optional<Clause>> out(excluded.size());
  const auto n = static_cast<std::int64_t>(excluded.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) out[i] = separating_clause(R, excluded[i], cls);
  return out;
}


std::optional<Violation> preservation_omp(const PointRelation& R, ThresholdOp op) {
  std::vector<std::optional<Violation>> rows(R.size());
  const auto n = static_cast<std::int64_t>(R.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) rows[i] = least_violation_from(R, op, i);
  std::optional<Violation> best;
  for (auto& v : rows) {
    if (v && (!best || violation_less(*v, *best))) best = std::move(v);
  }
  return best;
}

}  // namespace qsr::kernels
