#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "forestdec/forests.hpp"

namespace forestdec {

struct SearchBudget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<std::chrono::milliseconds> deadline;

  static SearchBudget unlimited() { return {}; }
  static SearchBudget nodes(std::uint64_t n) { return {n, std::nullopt}; }
};

enum class Outcome { Yes, No, BudgetExceeded };

const char* outcome_name(Outcome o) noexcept;

struct OracleResult {
  Outcome outcome = Outcome::No;
  std::optional<Decomposition> decomposition;
  // Number of arc labelings performed, including propagated ones.
  std::uint64_t nodes_visited = 0;
};

using Constraint = std::map<ArcId, Part>;

OracleResult oracle_decide(const Digraph& d, const ProblemSpec& spec,
                           const SearchBudget& budget = SearchBudget::unlimited(),
                           const Constraint& constraint = {});

struct EnumerationResult {
  std::vector<Decomposition> decompositions;  // sorted by labels, First < Second
  bool budget_exceeded = false;
  std::uint64_t nodes_visited = 0;
};

EnumerationResult oracle_enumerate(const Digraph& d, const ProblemSpec& spec,
                                   const SearchBudget& budget = SearchBudget::unlimited(),
                                   const Constraint& constraint = {});

// Streams decompositions in search order; the visitor returns false to stop.
// Returns BudgetExceeded, Yes if stopped by the visitor, otherwise No.
Outcome for_each_decomposition(const Digraph& d, const ProblemSpec& spec, const SearchBudget& budget,
                               const Constraint& constraint,
                               const std::function<bool(const Decomposition&)>& visit,
                               std::uint64_t* nodes_visited = nullptr);

}  // namespace forestdec
