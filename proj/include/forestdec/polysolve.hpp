#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "forestdec/forests.hpp"
#include "forestdec/satmatch.hpp"

namespace forestdec {

// Orientation of a path v0 v1 .. vL: arc i joins v_i and v_{i+1} and points
// forward when its tail is v_i.
struct OrientedPath {
  std::vector<bool> forward;
  std::size_t length() const noexcept { return forward.size(); }
};

// Orientation of a cycle v0 .. v_{q-1}: arc i joins v_i and v_{(i+1) mod q}.
struct OrientedCycle {
  std::vector<bool> forward;
  std::size_t length() const noexcept { return forward.size(); }
  bool is_circuit() const;
};

// Vertices 0..L, ArcId i is arc i of the path.
Digraph to_digraph(const OrientedPath& p);
Digraph to_digraph(const OrientedCycle& c);

// Orientation of a walk given by its arcs and vertex sequence.
OrientedPath path_of_walk(const Digraph& d, const std::vector<ArcId>& arcs, const std::vector<VertexId>& vertices);
OrientedCycle cycle_of_walk(const Digraph& d, const std::vector<ArcId>& arcs, const std::vector<VertexId>& vertices);

// Endarcs required in the 1-bounded part (part Second).
struct EndarcConstraint {
  bool first = false;
  bool last = false;
  friend bool operator==(const EndarcConstraint&, const EndarcConstraint&) = default;
};

// Decompositions below are indexed like to_digraph(P); First is the
// larger-bound part, Second the 1-bounded part.
std::optional<Decomposition> path_21_constrained(const OrientedPath& p, EndarcConstraint c);
std::optional<Decomposition> path_21_isolated_endarcs(const OrientedPath& p, EndarcConstraint c);
// {a in Second, a isolated in First} for the endarc a (first or last arc).
std::pair<Decomposition, Decomposition> path_21_free(const OrientedPath& p, bool endarc_is_first);
Decomposition cycle_21(const OrientedCycle& c);

std::optional<Decomposition> cycle_k1_galaxy(const OrientedCycle& c, Bound k);
std::optional<Decomposition> path_k1_galaxy_constrained(const OrientedPath& p, Bound k, EndarcConstraint c);

// Member I of an X-set is encoded by bit (I has 1 ? 1 : 0) | (I has 2 ? 2 : 0).
struct XSet {
  std::uint8_t mask = 0;
  static constexpr std::uint8_t kEmpty = 1 << 0, kOne = 1 << 1, kTwo = 1 << 2, kBoth = 1 << 3;
  bool contains(bool one, bool two) const noexcept { return mask & (1u << ((one ? 1 : 0) | (two ? 2 : 0))); }
  std::string to_string() const;
  friend bool operator==(XSet, XSet) = default;
};

XSet compute_xset(const OrientedPath& p, Bound k);

struct XGadget {
  UndirectedGraph graph;
  NodeId v1 = 0, v2 = 1;
  EdgeId e1 = 0, e2 = 0;
  std::vector<NodeId> z;
  int case_number = 0;
};

XGadget build_xgadget(XSet x);

Verdict solve_bdlfd_11(const Digraph& d);
Verdict solve_bdlfd_21(const Digraph& d);
Verdict solve_bogd_inf_inf(const Digraph& d);
Verdict solve_bogd_k1(const Digraph& d, Bound k);

struct BogdK1Trace {
  UndirectedGraph graph;
  std::vector<NodeId> z;
  std::vector<XSet> xsets;  // per segment, in segment order
  std::size_t bound = 0;
};
// Same as solve_bogd_k1, exposing the matching instance it builds.
Verdict solve_bogd_k1(const Digraph& d, Bound k, BogdK1Trace* trace);

bool is_polynomial(const ProblemSpec& spec);
// Dispatches to the matching solver after ordering the bounds; throws
// UnsupportedSpec outside the polynomial cases.
Verdict solve_polynomial(const Digraph& d, const ProblemSpec& spec);

}  // namespace forestdec
