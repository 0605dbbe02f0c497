#pragma once

// Hot loops in two flavours: a plain serial reference and an OpenMP version
// that must agree with it element for element.

#include <cstdint>
#include <span>
#include <vector>

#include "qsr/definability.hpp"
#include "qsr/interpretation.hpp"
#include "qsr/point_relation.hpp"
#include "qsr/poly_check.hpp"
#include "qsr/weak_order.hpp"

namespace qsr::kernels {

std::vector<SampleVerdict> homotopy_verdicts_serial(const HomotopyWitness& w,
                                                    std::span<const std::vector<Element>> samples);
std::vector<SampleVerdict> homotopy_verdicts_omp(const HomotopyWitness& w,
                                                 std::span<const std::vector<Element>> samples);

/// One separating clause (or none) per excluded weak order.
std::vector<std::optional<Clause>> separation_serial(const PointRelation& R,
                                                     std::span<const WeakOrder> excluded,
                                                     HornClass cls);
std::vector<std::optional<Clause>> separation_omp(const PointRelation& R,
                                                  std::span<const WeakOrder> excluded,
                                                  HornClass cls);

/// Least violation over all model pairs of a single-sort relation.
std::optional<Violation> preservation_serial(const PointRelation& R, ThresholdOp op);
std::optional<Violation> preservation_omp(const PointRelation& R, ThresholdOp op);

}  // namespace qsr::kernels
