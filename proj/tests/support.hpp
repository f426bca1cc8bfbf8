#pragma once

// Test-only shadow implementations: naive exhaustive checkers that share no
// code with the production search, plus instance generators.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "forestdec/digraph.hpp"
#include "forestdec/forests.hpp"
#include "forestdec/satmatch.hpp"

namespace shadow {

using namespace forestdec;

// Independent shape check of one part: components found by flood fill over
// the underlying graph, then counted.
inline bool naive_part_ok(const Digraph& d, const std::vector<Part>& lab, Part part, FamilyKind f, Bound k) {
  const std::size_t n = d.vertex_count();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::uint32_t a = 0; a < d.arc_count(); ++a)
    if (lab[a] == part) {
      adj[index(d.arcs()[a].tail)].push_back(index(d.arcs()[a].head));
      adj[index(d.arcs()[a].head)].push_back(index(d.arcs()[a].tail));
    }
  int c = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::uint32_t> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      std::uint32_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t w : adj[u])
        if (comp[w] < 0) comp[w] = c, stack.push_back(w);
    }
    ++c;
  }
  std::vector<std::size_t> verts(c, 0), arcs(c, 0), roots(c, 0);
  std::vector<std::size_t> in(n, 0), out(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) ++verts[comp[v]];
  for (std::uint32_t a = 0; a < d.arc_count(); ++a)
    if (lab[a] == part) {
      ++arcs[comp[index(d.arcs()[a].tail)]];
      ++out[index(d.arcs()[a].tail)];
      ++in[index(d.arcs()[a].head)];
    }
  for (std::uint32_t v = 0; v < n; ++v) {
    if (in[v] > 1) return false;
    if (f == FamilyKind::LinearForest && out[v] > 1) return false;
    if (f == FamilyKind::OutGalaxy && in[v] == 1 && out[v] > 0) return false;
    if (out[v] > 0) ++roots[comp[v]];
  }
  for (int i = 0; i < c; ++i) {
    if (arcs[i] + 1 != verts[i]) return false;  // a tree, so no cycle
    if (!k.admits(arcs[i])) return false;
    if (f == FamilyKind::OutGalaxy && roots[i] > 1) return false;
  }
  return true;
}

inline bool naive_valid(const Digraph& d, const std::vector<Part>& lab, const ProblemSpec& spec) {
  return naive_part_ok(d, lab, Part::First, spec.family, spec.first) &&
         naive_part_ok(d, lab, Part::Second, spec.family, spec.second);
}

inline std::optional<Decomposition> naive_decide(const Digraph& d, const ProblemSpec& spec) {
  const std::size_t m = d.arc_count();
  if (m > 20) throw std::invalid_argument("naive_decide is limited to 20 arcs");
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<Part> lab(m);
    for (std::size_t i = 0; i < m; ++i) lab[i] = (mask >> i) & 1 ? Part::Second : Part::First;
    if (naive_valid(d, lab, spec)) return Decomposition(std::move(lab));
  }
  return std::nullopt;
}

inline std::vector<Decomposition> naive_enumerate(const Digraph& d, const ProblemSpec& spec) {
  const std::size_t m = d.arc_count();
  if (m > 20) throw std::invalid_argument("naive_enumerate is limited to 20 arcs");
  std::vector<Decomposition> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<Part> lab(m);
    for (std::size_t i = 0; i < m; ++i) lab[i] = (mask >> i) & 1 ? Part::Second : Part::First;
    if (naive_valid(d, lab, spec)) out.emplace_back(std::move(lab));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every labeled multidigraph on n vertices with at most max_arcs arcs and at
// most max_mult parallel arcs per ordered pair.
inline void for_each_small_digraph(std::uint32_t n, std::size_t max_arcs, std::size_t max_mult,
                                   const std::function<void(const Digraph&)>& fn) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = 0; v < n; ++v)
      if (u != v) pairs.emplace_back(u, v);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == pairs.size()) {
      fn(build_digraph(n, std::span<const std::pair<std::uint32_t, std::uint32_t>>(arcs)));
      return;
    }
    for (std::size_t mult = 0; mult <= max_mult && arcs.size() + mult <= max_arcs; ++mult) {
      for (std::size_t t = 0; t < mult; ++t) arcs.push_back(pairs[i]);
      rec(i + 1);
      for (std::size_t t = 0; t < mult; ++t) arcs.pop_back();
    }
  };
  rec(0);
}

inline Digraph random_digraph(std::mt19937_64& rng, std::uint32_t n, std::size_t m) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  if (n < 2) m = 0;
  std::uniform_int_distribution<std::uint32_t> pick(0, n == 0 ? 0 : n - 1);
  while (arcs.size() < m) {
    std::uint32_t u = pick(rng), v = pick(rng);
    if (u != v) arcs.emplace_back(u, v);
  }
  return build_digraph(n, std::span<const std::pair<std::uint32_t, std::uint32_t>>(arcs));
}

// Maximum matching size by subset enumeration.
inline std::size_t naive_max_matching(const UndirectedGraph& g) {
  const std::size_t m = g.edges.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<char> used(g.node_count, 0);
    bool ok = true;
    std::size_t size = 0;
    for (std::size_t e = 0; e < m && ok; ++e)
      if ((mask >> e) & 1) {
        auto [u, v] = g.edges[e];
        if (used[u] || used[v]) ok = false;
        used[u] = used[v] = 1;
        ++size;
      }
    if (ok) best = std::max(best, size);
  }
  return best;
}

// Calls fn with the edge mask of every matching.
inline void for_each_matching(const UndirectedGraph& g, const std::function<void(std::uint32_t)>& fn) {
  const std::size_t m = g.edges.size();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<char> used(g.node_count, 0);
    bool ok = true;
    for (std::size_t e = 0; e < m && ok; ++e)
      if ((mask >> e) & 1) {
        auto [u, v] = g.edges[e];
        if (used[u] || used[v]) ok = false;
        used[u] = used[v] = 1;
      }
    if (ok) fn(mask);
  }
}

inline bool naive_covering_exists(const UndirectedGraph& g, const std::vector<NodeId>& z) {
  bool found = false;
  for_each_matching(g, [&](std::uint32_t mask) {
    std::vector<char> cov(g.node_count, 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if ((mask >> e) & 1) cov[g.edges[e].first] = cov[g.edges[e].second] = 1;
    bool all = true;
    for (NodeId v : z) all = all && cov[v];
    found = found || all;
  });
  return found;
}

inline UndirectedGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  UndirectedGraph g;
  g.node_count = n;
  if (n < 2) return g;
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
  while (g.edges.size() < m) {
    auto u = pick(rng), v = pick(rng);
    if (u != v) g.edges.emplace_back(u, v);
  }
  return g;
}

}  // namespace shadow
