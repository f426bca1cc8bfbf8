#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "forestdec/digraph.hpp"
#include "forestdec/forests.hpp"
#include "forestdec/satmatch.hpp"

namespace forestdec {

using Clause = std::vector<Literal>;
using Assignment = std::vector<bool>;

struct CnfInstance {
  std::size_t variable_count = 0;
  std::vector<Clause> clauses;
  friend bool operator==(const CnfInstance&, const CnfInstance&) = default;
};

// Index in range, no empty clause, no variable twice in one clause.
bool is_well_formed(const CnfInstance& inst);
// Index of the first clause breaking is_well_formed, or -1.
long first_malformed_clause(const CnfInstance& inst);

bool validate_3b2sat(const CnfInstance& inst);
bool validate_meksat(const CnfInstance& inst, std::size_t k);
bool satisfies(const CnfInstance& inst, const Assignment& phi);
bool check_me_assignment(const CnfInstance& inst, std::size_t k, const Assignment& phi);

CnfInstance parse_dimacs(std::string_view text);
std::string emit_dimacs(const CnfInstance& inst);

struct Gadget {
  Digraph digraph;
  // Decompositions in `witnesses` are valid for this spec; Part::First is
  // the part with the first bound.
  ProblemSpec spec;
  std::map<std::string, VertexId> vertices;
  std::map<std::string, ArcId> arcs;
  std::map<std::string, std::vector<VertexId>> vertex_sets;
  std::map<std::string, Decomposition> witnesses;

  VertexId vertex(const std::string& name) const;
  ArcId arc(const std::string& name) const;
  const Decomposition& witness(const std::string& name) const;
};

Gadget build_binary_tree_orientation(std::size_t depth, bool toward_tip);

// (k,1) forcers and gadgets.
Gadget short_k_in_forcer(std::size_t k);
Gadget long_k_alpha_in_forcer(std::size_t k, std::size_t alpha);
// Witnesses "i0", "i1": the Second arcs among a1..a4 are {a1,a3} resp. {a2,a4}.
Gadget k_variable_gadget(std::size_t k);
// Witnesses named by the b-arcs placed in First: "b1", "b2", "b3", "b1b2",
// "b1b3", "b2b3", "b1b2b3".
Gadget k_clause_gadget(std::size_t k);

// (k,l) forcers for min(k,l) >= 2.
Gadget kk_minus2_in_forcer(std::size_t k);
Gadget long_kl_out_forcer(std::size_t k, std::size_t l);
Gadget short_kl_out_forcer(std::size_t k, std::size_t l);
Gadget kl_minus2_in_forcer(std::size_t k, std::size_t l);
Gadget k2_alpha_in_forcer(std::size_t k, std::size_t alpha);
// Witnesses "c" (all a_i in First) and "d" (all a_i in Second).
Gadget klt_variable_gadget(std::size_t k, std::size_t l, std::size_t t);
// Witnesses named by Z, the indices whose a_i is in First: "1", "2", "3",
// "12", "13", "23".
Gadget kl_clause_gadget_dlf(std::size_t k, std::size_t l);

// Out-galaxy gadgets. Witnesses "S_first" and "S_second" name the part
// holding every arc entering S.
Gadget q_variable_gadget_bogd(std::size_t q);
Gadget kl_alpha_clause_gadget_bogd(Bound k, std::size_t l, std::size_t alpha1, std::size_t alpha2);
// Labeling of the clause gadget with the arcs entering the vertices flagged in
// `in_first` (S1 then S2 order) placed in First. Valid unless the flagged set is S2.
Decomposition bogd_clause_factorization(std::size_t alpha1, std::size_t alpha2,
                                        const std::vector<bool>& in_first);

enum class ReductionKind { ThreeB2Sat, Me1Sat, Hamiltonicity, MekSatBogd, LPlus1SatBogd };
const char* reduction_name(ReductionKind kind) noexcept;

struct PlacedGadget {
  std::string name;
  std::vector<ArcId> arc_map;                    // gadget arc -> instance arc
  std::map<std::string, ArcId> arcs;             // interface, instance ids
  std::map<std::string, VertexId> vertices;      // interface, instance ids
  std::map<std::string, Decomposition> witnesses;  // in gadget arc space
};

// One literal occurrence glued across a variable and a clause gadget.
struct Link {
  std::uint32_t clause = 0;
  std::uint32_t position = 0;
  std::uint32_t variable = 0;
  ArcId variable_arc{};
  ArcId clause_arc{};
  VertexId merged{};
};

struct ReductionOutput {
  ReductionKind kind = ReductionKind::ThreeB2Sat;
  Digraph instance;
  ProblemSpec spec;
  CnfInstance source;
  Digraph source_digraph;
  std::size_t parameter = 0;  // k of the source problem where it has one
  // Gadgets are built with the larger bound first; set when the requested
  // spec lists the smaller bound first.
  bool swapped = false;
  std::vector<PlacedGadget> variable_gadgets;  // empty name: variable unused
  std::vector<PlacedGadget> clause_gadgets;
  std::vector<Link> links;
  // Hamiltonicity: instance arc u+v- for every source arc uv, and the arcs of
  // each vertex widget in First when the vertex lies on the cycle.
  std::vector<ArcId> source_arc_map;
  std::vector<std::vector<ArcId>> widget_first;
  std::vector<std::vector<ArcId>> widget_second;
};

ReductionOutput reduce_3b2sat_to_bdlfd(const CnfInstance& inst, std::size_t k);
ReductionOutput reduce_me1sat_to_bdlfd(const CnfInstance& inst, std::size_t k, std::size_t l);
ReductionOutput reduce_hamiltonicity_to_bdlfd(const Digraph& d2, std::size_t k);
ReductionOutput reduce_meksat_to_bogd_kk(const CnfInstance& inst, std::size_t k);
ReductionOutput reduce_lplus1sat_to_bogd_kl(const CnfInstance& inst, Bound k, std::size_t l);

// Checks the source semantics first and throws UnsatisfiedPrecondition.
Decomposition assignment_to_decomposition(const ReductionOutput& red, const Assignment& phi);
// Same mapping without the check; the result need not be valid.
Decomposition assignment_to_labeling(const ReductionOutput& red, const Assignment& phi);
Assignment decomposition_to_assignment(const ReductionOutput& red, const Decomposition& dec);

bool is_hamiltonian_cycle(const Digraph& d, const std::vector<ArcId>& cycle);
// `cycle` lists source arcs in traversal order.
Decomposition cycle_to_decomposition(const ReductionOutput& red, const std::vector<ArcId>& cycle);
std::vector<ArcId> decomposition_to_cycle(const ReductionOutput& red, const Decomposition& dec);

bool is_2diregular(const Digraph& d);
Digraph generate_2diregular(std::size_t n, std::uint64_t seed);

}  // namespace forestdec
