#include "qsr/kernels.hpp"

namespace qsr::kernels {

std::vector<SampleVerdict> homotopy_verdicts_serial(const HomotopyWitness& w,
                                                    std::span<const std::vector<Element>> samples) {
  std::vector<SampleVerdict> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(check_homotopy_sample(w, s));
  return out;
}

std::vector<std::optional<Clause>> separation_serial(const PointRelation& R,
                                                     std::span<const WeakOrder> excluded,
                                                     HornClass cls) {
  std::vector<std::optional<Clause>> out;
  out.reserve(excluded.size());
  for (const auto& w : excluded) out.push_back(separating_clause(R, w, cls));
  return out;
}


std::optional<Violation> preservation_serial(const PointRelation& R, ThresholdOp op) {
  std::optional<Violation> best;
  for (std::size_t i = 0; i < R.size(); ++i) {
    auto v = least_violation_from(R, op, i);
    if (v && (!best || violation_less(*v, *best))) best = std::move(v);
  }
  return best;
}

}  // namespace qsr::kernels
