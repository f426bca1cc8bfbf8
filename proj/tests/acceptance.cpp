// Prints one PASS/FAIL line per acceptance criterion; exits non-zero when any
// criterion fails. An argument list of criterion numbers restricts the run.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "forestdec/gadgets.hpp"
#include "forestdec/oracle.hpp"
#include "forestdec/polysolve.hpp"
#include "forestdec/satmatch.hpp"
#include "reduction_oracles.hpp"
#include "support.hpp"

using namespace forestdec;
using namespace shadow;

namespace {

constexpr std::uint64_t kBudget = 10'000'000;

struct Tally {
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::size_t budget_hits = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++violations;
    if (notes.size() < 5) notes.push_back(what);
  }
};

struct SolverCase {
  const char* name;
  ProblemSpec spec;
  std::function<Verdict(const Digraph&)> solve;
};

std::vector<SolverCase> solvers() {
  auto og = [](Bound k) { return ProblemSpec{FamilyKind::OutGalaxy, k, Bound(1)}; };
  return {
      {"bdlfd(1,1)", {FamilyKind::LinearForest, Bound(1), Bound(1)}, solve_bdlfd_11},
      {"bdlfd(2,1)", {FamilyKind::LinearForest, Bound(2), Bound(1)}, solve_bdlfd_21},
      {"bogd(inf,inf)", {FamilyKind::OutGalaxy, Bound::infinity(), Bound::infinity()}, solve_bogd_inf_inf},
      {"bogd(1,1)", og(Bound(1)), [](const Digraph& d) { return solve_bogd_k1(d, Bound(1)); }},
      {"bogd(2,1)", og(Bound(2)), [](const Digraph& d) { return solve_bogd_k1(d, Bound(2)); }},
      {"bogd(3,1)", og(Bound(3)), [](const Digraph& d) { return solve_bogd_k1(d, Bound(3)); }},
  };
}

std::string arcs_of(const Digraph& d) {
  std::string s;
  for (const Arc& a : d.arcs()) s += std::to_string(index(a.tail)) + ">" + std::to_string(index(a.head)) + " ";
  return s;
}

void agree(Tally& t, const Digraph& d, const SolverCase& c) {
  Verdict v = c.solve(d);
  OracleResult o = oracle_decide(d, c.spec);
  t.expect(v.yes() == (o.outcome == Outcome::Yes), std::string(c.name) + " disagrees on " + arcs_of(d));
  if (v.yes()) t.expect(verify_decomposition(d, *v.certificate, c.spec), std::string(c.name) + " bad certificate");
}

Tally criterion1() {
  Tally t;
  auto cases = solvers();
  for (std::uint32_t n = 1; n <= 4; ++n)
    for_each_small_digraph(n, 6, 2, [&](const Digraph& d) {
      for (const auto& c : cases) agree(t, d, c);
    });
  return t;
}

Tally criterion2() {
  Tally t;
  for (const auto& c : solvers()) {
    std::mt19937_64 rng(1000 + t.checks);
    for (int rep = 0; rep < 500; ++rep) {
      auto n = static_cast<std::uint32_t>(1 + rng() % 8);
      agree(t, random_digraph(rng, n, rng() % 13), c);
    }
  }
  return t;
}

// Oracle helpers that turn budget exhaustion into a recorded violation.
std::optional<std::vector<Decomposition>> all_decompositions(Tally& t, const Digraph& d, const ProblemSpec& s,
                                                             const std::string& what) {
  auto r = oracle_enumerate(d, s, SearchBudget::nodes(kBudget));
  if (r.budget_exceeded) {
    ++t.budget_hits;
    t.expect(false, what + ": budget exhausted");
    return std::nullopt;
  }
  return r.decompositions;
}

std::optional<bool> exists(Tally& t, const Digraph& d, const ProblemSpec& s, const Constraint& c, const std::string& what) {
  auto r = oracle_decide(d, s, SearchBudget::nodes(kBudget), c);
  if (r.outcome == Outcome::BudgetExceeded) {
    ++t.budget_hits;
    t.expect(false, what + ": budget exhausted");
    return std::nullopt;
  }
  return r.outcome == Outcome::Yes;
}

Tally criterion3() {
  Tally t;
  for (std::size_t k : {2, 3, 4}) {
    Gadget g = short_k_in_forcer(k);
    std::string w = "short " + std::to_string(k) + "-in-forcer";
    auto all = all_decompositions(t, g.digraph, g.spec, w);
    if (!all) continue;
    t.expect(!all->empty(), w + " has no decomposition");
    for (const auto& d : *all) t.expect(d[g.arc("a")] == Part::Second, w + ": a in First");
  }
  for (std::size_t k = 2; k <= 7; ++k)
    for (std::size_t alpha = 1; alpha < k; ++alpha) {
      Gadget g = long_k_alpha_in_forcer(k, alpha);
      if (g.digraph.arc_count() > 12) continue;
      std::string w = "long (" + std::to_string(k) + "," + std::to_string(alpha) + ")-in-forcer";
      ArcId in = g.digraph.in_arcs(g.vertex("tip")).front();
      auto all = all_decompositions(t, g.digraph, g.spec, w);
      if (!all) continue;
      bool escape = false;
      for (const auto& d : *all) {
        t.expect(d[in] == Part::First && path_ending_at(g.digraph, d, in) >= alpha, w + ": universal clause");
        escape = escape || d[in] != Part::First || path_ending_at(g.digraph, d, in) < alpha + 1;
      }
      t.expect(escape, w + ": existential clause");
    }
  for (std::size_t k : {3, 4}) {
    Gadget g = kk_minus2_in_forcer(k);
    std::string w = "(" + std::to_string(k) + "," + std::to_string(k) + ",-2)-in-forcer";
    ArcId a = g.arc("a");
    t.expect(g.digraph.degree(g.vertex("tip")) == 1, w + ": tip degree");
    auto all = all_decompositions(t, g.digraph, g.spec, w);
    if (!all) continue;
    bool c = false, d2 = false;
    for (const auto& d : *all) {
      std::size_t len = path_ending_at(g.digraph, d, a);
      t.expect(len >= k - 2, w + ": clause (b)");
      c = c || (d[a] == Part::First && len <= k - 2);
      d2 = d2 || (d[a] == Part::Second && len <= k - 2);
    }
    t.expect(c, w + ": clause (c)");
    t.expect(d2, w + ": clause (d)");
  }
  for (std::size_t alpha : {1, 2}) {
    Gadget g = k2_alpha_in_forcer(3, alpha);
    std::string w = "(3,2," + std::to_string(alpha) + ")-in-forcer";
    ArcId a = g.arc("a");
    auto all = all_decompositions(t, g.digraph, g.spec, w);
    if (!all) continue;
    bool c = false;
    for (const auto& d : *all) {
      t.expect(d[a] == Part::First && path_ending_at(g.digraph, d, a) >= alpha, w + ": clause (b)");
      c = c || d[a] != Part::First || path_ending_at(g.digraph, d, a) <= alpha;
    }
    t.expect(c, w + ": clause (c)");
  }
  for (auto [k, l] : {std::pair{4, 3}, {6, 4}, {7, 5}})
    for (const Gadget& g : {long_kl_out_forcer(k, l), short_kl_out_forcer(k, l), kl_minus2_in_forcer(k, l)}) {
      t.expect(!g.witnesses.empty(), g.spec.to_string() + ": forcer without witness");
      for (const auto& [name, dec] : g.witnesses)
        t.expect(verify_decomposition(g.digraph, dec, g.spec) && naive_valid(g.digraph, dec.labels(), g.spec),
                 g.spec.to_string() + " witness " + name);
    }
  return t;
}

Tally criterion4() {
  Tally t;
  {
    Gadget g = k_variable_gadget(3);
    ArcId a[5];
    for (int i = 1; i <= 4; ++i) {
      a[i] = g.arc("a" + std::to_string(i));
      t.expect(g.digraph.degree(g.digraph.head(a[i])) == 1, "3-variable gadget: (a) a" + std::to_string(i));
    }
    for (int r = 0; r < 2; ++r) {
      const Decomposition& w = g.witness(r == 0 ? "i0" : "i1");
      t.expect(verify_decomposition(g.digraph, w, g.spec), "3-variable gadget: witness invalid");
      for (int i = 1; i <= 4; ++i)
        t.expect((w[a[i]] == Part::Second) == (i % 2 == (r == 0 ? 1 : 0)), "3-variable gadget: (c)");
    }
    for (int odd : {1, 3})
      for (int even : {2, 4}) {
        auto e = exists(t, g.digraph, g.spec, {{a[odd], Part::Second}, {a[even], Part::Second}}, "3-variable gadget (b)");
        if (e) t.expect(!*e, "3-variable gadget: (b) mixed pair in Second");
      }
  }
  for (std::size_t k : {3, 4}) {
    Gadget g = k_clause_gadget(k);
    std::string w = std::to_string(k) + "-clause gadget";
    ArcId b[3] = {g.arc("b1"), g.arc("b2"), g.arc("b3")};
    for (ArcId x : b) t.expect(g.digraph.degree(g.digraph.head(x)) == 1, w + ": (a)");
    for (int mask = 1; mask < 8; ++mask) {
      std::string name;
      for (int i = 0; i < 3; ++i)
        if (mask >> i & 1) name += "b" + std::to_string(i + 1);
      const Decomposition& d = g.witness(name);
      t.expect(verify_decomposition(g.digraph, d, g.spec), w + ": witness " + name + " invalid");
      for (int i = 0; i < 3; ++i) t.expect((d[b[i]] == Part::First) == bool(mask >> i & 1), w + ": (c) " + name);
    }
    auto e = exists(t, g.digraph, g.spec, {{b[0], Part::Second}, {b[1], Part::Second}, {b[2], Part::Second}}, w);
    if (e) t.expect(!*e, w + ": (b) all b in Second");
  }
  for (auto [k, l] : {std::pair{2, 2}, {3, 2}, {2, 3}, {4, 2}, {3, 3}, {4, 3}}) {
    Gadget g = kl_clause_gadget_dlf(k, l);
    std::string w = "(" + std::to_string(k) + "," + std::to_string(l) + ")-clause gadget";
    ArcId a[3] = {g.arc("a1"), g.arc("a2"), g.arc("a3")};
    auto all = all_decompositions(t, g.digraph, g.spec, w);
    if (!all) continue;
    std::set<int> seen;
    for (const auto& d : *all) {
      int z = 0;
      for (int i = 0; i < 3; ++i) z |= (d[a[i]] == Part::First) << i;
      t.expect(z != 0 && z != 7, w + ": (b) a-arcs in one part");
      seen.insert(z);
    }
    t.expect(seen.size() == 6, w + ": (c) some Z unrealized");
  }
  for (std::size_t tt : {1, 2}) {
    Gadget g = klt_variable_gadget(2, 2, tt);
    std::string w = "(2,2," + std::to_string(tt) + ")-variable gadget";
    std::vector<ArcId> as;
    for (std::size_t i = 1; i <= tt; ++i) as.push_back(g.arc("a" + std::to_string(i)));
    auto all = all_decompositions(t, g.digraph, g.spec, w);
    if (!all) continue;
    bool c = false, d2 = false;
    for (const auto& d : *all) {
      std::size_t first = 0;
      for (ArcId a : as) {
        first += d[a] == Part::First;
        t.expect(path_ending_at(g.digraph, d, a) == 2, w + ": (b) path length");
      }
      t.expect(first == 0 || first == as.size(), w + ": (b) a-arcs split");
      c = c || first == as.size();
      d2 = d2 || first == 0;
    }
    t.expect(c, w + ": (c)");
    t.expect(d2, w + ": (d)");
  }
  return t;
}

OrientedPath path_of(std::uint32_t mask, std::size_t len) {
  OrientedPath p;
  for (std::size_t i = 0; i < len; ++i) p.forward.push_back(mask >> i & 1);
  return p;
}

Tally criterion5() {
  Tally t;
  for (std::size_t q = 2; q <= 6; ++q)
    for (std::uint32_t mask = 0; mask < (1u << q); ++mask)
      for (std::uint64_t k : {2, 3}) {
        OrientedPath p = path_of(mask, q);
        Digraph d = to_digraph(p);
        ProblemSpec spec{FamilyKind::OutGalaxy, Bound(k), Bound(1)};
        std::uint8_t expected = 0;
        for (int i = 0; i < 4; ++i) {
          Constraint c{{arc(0), (i & 1) ? Part::Second : Part::First},
                       {arc(static_cast<std::uint32_t>(q - 1)), (i & 2) ? Part::Second : Part::First}};
          if (oracle_decide(d, spec, SearchBudget::unlimited(), c).outcome == Outcome::Yes) expected |= 1u << i;
        }
        t.expect(compute_xset(p, Bound(k)).mask == expected,
                 "compute_xset q=" + std::to_string(q) + " mask=" + std::to_string(mask) + " k=" + std::to_string(k));
      }
  std::size_t cases = 0;
  for (std::uint8_t mask = 1; mask < 16; ++mask) {
    XSet x{mask};
    bool ok = (x.contains(false, false) && x.contains(true, true)) || (x.contains(true, false) && x.contains(false, true));
    if (!ok) continue;
    ++cases;
    XGadget g = build_xgadget(x);
    std::uint8_t traced = 0;
    for_each_matching(g.graph, [&](std::uint32_t m) {
      std::vector<char> cov(g.graph.node_count, 0);
      for (std::size_t e = 0; e < g.graph.edges.size(); ++e)
        if (m >> e & 1) cov[g.graph.edges[e].first] = cov[g.graph.edges[e].second] = 1;
      for (NodeId z : g.z)
        if (!cov[z]) return;
      traced |= static_cast<std::uint8_t>(1u << (((m >> g.e1) & 1) | (((m >> g.e2) & 1) << 1)));
    });
    t.expect(traced == mask, "build_xgadget " + x.to_string());
  }
  t.expect(cases == 7, "expected 7 X-gadget cases");
  return t;
}

Tally criterion6() {
  Tally t;
  auto roundtrip = [&](const std::string& w, const ReductionOutput& red, const std::vector<Assignment>& models,
                       const std::function<bool(const Assignment&)>& good) {
    for (const auto& phi : models)
      t.expect(verify_decomposition(red.instance, assignment_to_decomposition(red, phi), red.spec), w + ": forward");
    auto r = oracle_decide(red.instance, red.spec, SearchBudget::nodes(kBudget));
    if (r.outcome == Outcome::BudgetExceeded) {
      ++t.budget_hits;
      t.expect(false, w + ": budget exhausted");
      return;
    }
    t.expect((r.outcome == Outcome::Yes) == !models.empty(), w + ": oracle verdict");
    if (r.decomposition) t.expect(good(decomposition_to_assignment(red, *r.decomposition)), w + ": backward");
  };
  {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
      CnfInstance inst = random_3b2(rng, 3);
      ReductionOutput red = reduce_3b2sat_to_bdlfd(inst, 3);
      roundtrip("3b2sat #" + std::to_string(i), red, brute_models(inst),
                [&](const Assignment& phi) { return satisfies(inst, phi); });
      // every full assignment pinned on the variable gadgets
      for (std::uint32_t m = 0; m < 8; ++m) {
        Assignment phi = to_assignment(3, m);
        Decomposition lab = assignment_to_labeling(red, phi);
        Constraint pin;
        for (const PlacedGadget& vg : red.variable_gadgets)
          for (const auto& [name, a] : vg.arcs) pin[a] = lab[a];
        auto e = exists(t, red.instance, red.spec, pin, "3b2sat pinned");
        if (e) t.expect(*e == satisfies(inst, phi), "3b2sat #" + std::to_string(i) + ": pinned assignment");
      }
    }
  }
  CnfInstance fano = cnf(7, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}});
  {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
      CnfInstance inst = random_monotone(rng, 3 + i % 3, 1 + i % 3, 3);
      roundtrip("me1sat #" + std::to_string(i), reduce_me1sat_to_bdlfd(inst, 2, 2), brute_me_models(inst, 1),
                [&](const Assignment& phi) { return check_me_assignment(inst, 1, phi); });
    }
    roundtrip("me1sat fano", reduce_me1sat_to_bdlfd(fano, 2, 2), brute_me_models(fano, 1),
              [](const Assignment&) { return false; });
  }
  {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Digraph d2 = generate_2diregular(3 + seed % 3, seed);
      auto cyc = brute_hamiltonian(d2);
      ReductionOutput red = reduce_hamiltonicity_to_bdlfd(d2, 1);
      std::string w = "hamiltonicity #" + std::to_string(seed);
      if (cyc) t.expect(verify_decomposition(red.instance, cycle_to_decomposition(red, *cyc), red.spec), w + ": forward");
      auto r = oracle_decide(red.instance, red.spec, SearchBudget::nodes(kBudget));
      if (r.outcome == Outcome::BudgetExceeded) {
        ++t.budget_hits;
        t.expect(false, w + ": budget exhausted");
        continue;
      }
      t.expect((r.outcome == Outcome::Yes) == cyc.has_value(), w + ": oracle verdict");
      if (r.decomposition) t.expect(is_hamiltonian_cycle(d2, decomposition_to_cycle(red, *r.decomposition)), w + ": backward");
    }
    auto nh = smallest_non_hamiltonian();
    t.expect(nh.has_value(), "no non-hamiltonian 2-diregular digraph found");
    if (nh) {
      ReductionOutput red = reduce_hamiltonicity_to_bdlfd(*nh, 1);
      auto e = exists(t, red.instance, red.spec, {}, "hamiltonicity negative");
      if (e) t.expect(!*e, "non-hamiltonian source gives a decomposition");
    }
  }
  {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) {
      std::size_t k = i % 4 == 3 ? 3 : 2;
      CnfInstance inst = random_monotone(rng, 2 * k - 1 + i % 3, 1 + i % 4, 2 * k - 1);
      roundtrip("meksat-bogd #" + std::to_string(i), reduce_meksat_to_bogd_kk(inst, k), brute_me_models(inst, k - 1),
                [&](const Assignment& phi) { return check_me_assignment(inst, k - 1, phi); });
    }
    roundtrip("meksat-bogd fano", reduce_meksat_to_bogd_kk(fano, 2), brute_me_models(fano, 1),
              [](const Assignment&) { return false; });
  }
  {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
      std::size_t l = i % 5 == 4 ? 3 : 2;
      Bound k = i % 2 ? Bound::infinity() : Bound(l + 1 + i % 3);
      CnfInstance inst = random_ksat(rng, l + 1 + i % 2, 2 + i % 5, l + 1);
      roundtrip("sat-bogd #" + std::to_string(i), reduce_lplus1sat_to_bogd_kl(inst, k, l), brute_models(inst),
                [&](const Assignment& phi) { return satisfies(inst, phi); });
    }
    CnfInstance all8 = cnf(3, {{1, 2, 3}, {1, 2, -3}, {1, -2, 3}, {1, -2, -3}, {-1, 2, 3}, {-1, 2, -3}, {-1, -2, 3},
                               {-1, -2, -3}});
    roundtrip("sat-bogd all eight clauses", reduce_lplus1sat_to_bogd_kl(all8, Bound(3), 2), brute_models(all8),
              [](const Assignment&) { return false; });
  }
  return t;
}

Tally criterion7() {
  Tally t;
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t n = 1 + rng() % 15;
    TwoSatInstance inst;
    inst.variable_count = n;
    std::size_t m = rng() % (3 * n + 1);
    auto lit = [&] { return Literal{static_cast<std::uint32_t>(rng() % n), (rng() & 1) != 0}; };
    for (std::size_t i = 0; i < m; ++i) inst.add(lit(), lit());
    auto holds = [&](std::uint32_t mask, Literal l) { return ((mask >> l.var) & 1u) == (l.positive ? 1u : 0u); };
    bool brute = false;
    for (std::uint32_t mask = 0; mask < (1u << n) && !brute; ++mask) {
      bool ok = true;
      for (auto [a, b] : inst.clauses) ok = ok && (holds(mask, a) || holds(mask, b));
      brute = ok;
    }
    auto got = solve_2sat(inst);
    t.expect(got.has_value() == brute, "solve_2sat verdict");
    if (got) {
      bool ok = true;
      for (auto [a, b] : inst.clauses) ok = ok && ((*got)[a.var] == a.positive || (*got)[b.var] == b.positive);
      t.expect(ok, "solve_2sat assignment");
    }
  }
  auto is_matching = [](const UndirectedGraph& g, const std::vector<EdgeId>& es) {
    std::vector<char> used(g.node_count, 0);
    for (EdgeId e : es) {
      auto [u, v] = g.edges[e];
      if (used[u] || used[v]) return false;
      used[u] = used[v] = 1;
    }
    return true;
  };
  for (int rep = 0; rep < 200; ++rep) {
    UndirectedGraph g = random_graph(rng, 1 + rng() % 10, rng() % 13);
    auto m = maximum_matching(g);
    t.expect(is_matching(g, m) && m.size() == naive_max_matching(g), "maximum_matching");
  }
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t n = 1 + rng() % 10;
    UndirectedGraph g = random_graph(rng, n, rng() % 13);
    std::vector<NodeId> z;
    for (NodeId v = 0; v < n; ++v)
      if (rng() % 3 == 0) z.push_back(v);
    auto got = matching_covering(g, z);
    t.expect(got.has_value() == naive_covering_exists(g, z), "matching_covering verdict");
    if (got) {
      std::vector<char> cov(n, 0);
      for (EdgeId e : *got) cov[g.edges[e].first] = cov[g.edges[e].second] = 1;
      bool all = is_matching(g, *got);
      for (NodeId v : z) all = all && cov[v];
      t.expect(all, "matching_covering certificate");
    }
  }
  return t;
}

Tally criterion8() {
  Tally t;
  for (std::size_t q = 2; q <= 7; ++q)
    for (std::uint32_t mask = 0; mask < (1u << q); ++mask) {
      OrientedCycle c{path_of(mask, q).forward};
      Digraph d = to_digraph(c);
      std::string w = "cycle q=" + std::to_string(q) + " mask=" + std::to_string(mask);
      t.expect(verify_decomposition(d, cycle_21(c), {FamilyKind::LinearForest, Bound(2), Bound(1)}), w + ": cycle_21");
      bool odd_circuit = q % 2 == 1 && c.is_circuit();
      for (Bound k : {Bound(2), Bound(3), Bound::infinity()}) {
        ProblemSpec og{FamilyKind::OutGalaxy, k, Bound(1)};
        auto got = cycle_k1_galaxy(c, k);
        t.expect(got.has_value() == !odd_circuit, w + ": infeasible iff odd circuit");
        t.expect(got.has_value() == (oracle_decide(d, og).outcome == Outcome::Yes), w + ": oracle agreement");
        if (got) t.expect(verify_decomposition(d, *got, og), w + ": galaxy certificate");
      }
    }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Tally()>>> criteria = {
      {"dichotomy agreement, exhaustive", criterion1}, {"dichotomy agreement, randomized", criterion2},
      {"forcer suite", criterion3},                    {"gadget-definition suite", criterion4},
      {"X-machinery", criterion5},                     {"reduction round-trips", criterion6},
      {"engine oracles", criterion7},                  {"cycle decompositions", criterion8},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int n = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(n)) continue;
    auto start = std::chrono::steady_clock::now();
    Tally t;
    std::string crash;
    try {
      t = criteria[i].second();
    } catch (const std::exception& e) {
      crash = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = crash.empty() && t.violations == 0;
    failed += !pass;
    std::printf("criterion %d %s: %s (checks=%zu violations=%zu budget_exhausted=%zu time=%.2fs)\n", n,
                criteria[i].first, pass ? "PASS" : "FAIL", t.checks, t.violations, t.budget_hits, secs);
    if (!crash.empty()) std::printf("  exception: %s\n", crash.c_str());
    for (const auto& note : t.notes) std::printf("  %s\n", note.c_str());
  }
  return failed == 0 ? 0 : 1;
}
