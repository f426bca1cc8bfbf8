#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "forestdec/error.hpp"

namespace forestdec {

struct Literal {
  std::uint32_t var = 0;
  bool positive = true;
  Literal negated() const { return {var, !positive}; }
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct TwoSatInstance {
  std::size_t variable_count = 0;
  std::vector<std::pair<Literal, Literal>> clauses;

  void add(Literal a, Literal b) { clauses.emplace_back(a, b); }
  void add_unit(Literal a) { clauses.emplace_back(a, a); }
};

// nullopt means unsatisfiable. Without clauses every variable is false.
std::optional<std::vector<bool>> solve_2sat(const TwoSatInstance& inst);

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct UndirectedGraph {
  std::size_t node_count = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;

  NodeId add_node() { return static_cast<NodeId>(node_count++); }
  EdgeId add_edge(NodeId u, NodeId v);
};

struct Bipartition {
  bool bipartite = true;
  std::vector<std::uint8_t> side;         // 0 or 1 per node when bipartite
  std::vector<NodeId> odd_closed_walk;   // first node repeated at the end
};

Bipartition bipartition(const UndirectedGraph& g);

// Edge ids of a maximum matching, ascending.
std::vector<EdgeId> maximum_matching(const UndirectedGraph& g);

// A matching covering every node of z, or nullopt.
std::optional<std::vector<EdgeId>> matching_covering(const UndirectedGraph& g, const std::vector<NodeId>& z);

}  // namespace forestdec
