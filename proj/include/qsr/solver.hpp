#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsr/instance.hpp"

namespace qsr {

inline constexpr std::size_t kBruteForceSlotCap = 10;

/// Every instance reduces to constraints over rational slots: the endpoint
/// slots of calculus variables (with the domain of each variable as an extra
/// constraint), or the point variables themselves.
struct SlotProblem {
  std::vector<std::string> names;
  std::vector<int> sorts;
  std::vector<PointConstraint> constraints;
  std::map<int, Rational> constants;

  std::size_t slots() const { return names.size(); }
};

SlotProblem slot_problem(const QualInstance& inst);
SlotProblem slot_problem(const PointInstance& inst);

struct SolveOptions {
  std::string method = "auto";  // auto | bruteforce | backtracking | ordhorn | translate:<name>
  std::size_t max_slots = kBruteForceSlotCap;
  std::uint64_t seed = 0;
  bool parallel = true;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t firings = 0;
  std::uint64_t backtracks = 0;
  double ms = 0;
};

using Witness = std::vector<std::pair<std::string, Element>>;

struct SolveReport {
  bool satisfiable = false;
  std::optional<Witness> witness;
  std::string strategy;
  SolveStats stats;
  std::uint64_t seed = 0;
};

/// Slot values of a satisfying assignment, or nullopt. Brute force walks weak
/// orders slot by slot (per sort), checking each constraint once its scope is
/// placed. The serial form is the reference for the parallel prefix split.
std::optional<std::vector<Rational>> bruteforce_slots(const SlotProblem& p, std::size_t cap,
                                                      bool parallel, SolveStats& stats);
/// Backtracking over the models of each constraint (one weak order of its
/// scope per branch), ordered by model count, then variable degree, then
/// position; pruned by the conjunctive store.
std::optional<std::vector<Rational>> backtracking_slots(const SlotProblem& p, SolveStats& stats);
/// Propagation after reading every constraint as ORD-Horn clauses. Throws
/// InapplicableStrategy when some constraint is not ORD-Horn definable.
std::optional<std::vector<Rational>> ordhorn_slots(const SlotProblem& p, SolveStats& stats);

bool all_ordhorn(const SlotProblem& p);

SolveReport solve(const Instance& inst, const SolveOptions& opt = {});

/// True iff the witness names every declared variable and satisfies every
/// constraint of the instance.
bool verify_witness(const Instance& inst, const Witness& w);

std::string to_json(const SolveReport& r);

}  // namespace qsr
