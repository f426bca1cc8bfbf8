#include "forestdec/satmatch.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace forestdec {

namespace {

// Node 2v encodes the negative literal of v, node 2v+1 the positive one.
std::uint32_t node_of(Literal l) { return 2 * l.var + (l.positive ? 1 : 0); }

std::vector<std::uint32_t> tarjan(const std::vector<std::vector<std::uint32_t>>& adj) {
  const std::uint32_t n = static_cast<std::uint32_t>(adj.size());
  constexpr std::uint32_t none = ~0u;
  std::vector<std::uint32_t> idx(n, none), low(n, 0), comp(n, none);
  std::vector<std::uint32_t> stack;
  std::vector<char> on_stack(n, 0);
  std::uint32_t counter = 0, comps = 0;
  struct Frame { std::uint32_t v, next; };
  std::vector<Frame> frames;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (idx[s] != none) continue;
    frames.push_back({s, 0});
    idx[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next < adj[f.v].size()) {
        std::uint32_t w = adj[f.v][f.next++];
        if (idx[w] == none) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], idx[w]);
        }
        continue;
      }
      std::uint32_t v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == idx[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
    }
  }
  return comp;
}

}  // namespace

std::optional<std::vector<bool>> solve_2sat(const TwoSatInstance& inst) {
  const std::size_t n = inst.variable_count;
  std::vector<std::vector<std::uint32_t>> adj(2 * n);
  for (auto [a, b] : inst.clauses) {
    if (a.var >= n || b.var >= n) throw Error(ErrorCode::OutOfRange, "2-SAT literal variable out of range");
    adj[node_of(a.negated())].push_back(node_of(b));
    adj[node_of(b.negated())].push_back(node_of(a));
  }
  auto comp = tarjan(adj);
  std::vector<bool> value(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (comp[2 * v] == comp[2 * v + 1]) return std::nullopt;
    // Tarjan numbers components in reverse topological order.
    value[v] = comp[2 * v + 1] < comp[2 * v];
  }
  return value;
}

EdgeId UndirectedGraph::add_edge(NodeId u, NodeId v) {
  if (u >= node_count || v >= node_count) throw Error(ErrorCode::UnknownVertex, "edge endpoint out of range");
  if (u == v) throw Error(ErrorCode::LoopArc, "self-loop at node " + std::to_string(u));
  edges.emplace_back(u, v);
  return static_cast<EdgeId>(edges.size() - 1);
}

namespace {

std::vector<std::vector<std::pair<NodeId, EdgeId>>> adjacency(const UndirectedGraph& g) {
  std::vector<std::vector<std::pair<NodeId, EdgeId>>> adj(g.node_count);
  for (EdgeId e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    if (u >= g.node_count || v >= g.node_count) throw Error(ErrorCode::UnknownVertex, "edge endpoint out of range");
    adj[u].push_back({v, e});
    adj[v].push_back({u, e});
  }
  return adj;
}

}  // namespace

Bipartition bipartition(const UndirectedGraph& g) {
  auto adj = adjacency(g);
  Bipartition r;
  constexpr std::uint8_t unset = 2;
  r.side.assign(g.node_count, unset);
  std::vector<NodeId> parent(g.node_count);
  std::vector<std::uint32_t> depth(g.node_count, 0);
  for (NodeId s = 0; s < g.node_count; ++s) {
    if (r.side[s] != unset) continue;
    r.side[s] = 0;
    parent[s] = s;
    std::deque<NodeId> queue{s};
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      for (auto [v, e] : adj[u]) {
        if (r.side[v] == unset) {
          r.side[v] = r.side[u] ^ 1;
          parent[v] = u;
          depth[v] = depth[u] + 1;
          queue.push_back(v);
        } else if (r.side[v] == r.side[u]) {
          // Tree paths from u and v to their meeting point close an odd walk.
          std::vector<NodeId> left{u}, right{v};
          NodeId a = u, b = v;
          while (a != b) {
            if (depth[a] >= depth[b]) left.push_back(a = parent[a]);
            else right.push_back(b = parent[b]);
          }
          right.pop_back();
          r.odd_closed_walk = left;
          r.odd_closed_walk.insert(r.odd_closed_walk.end(), right.rbegin(), right.rend());
          r.odd_closed_walk.push_back(u);
          r.bipartite = false;
          r.side.clear();
          return r;
        }
      }
    }
  }
  return r;
}

std::vector<EdgeId> maximum_matching(const UndirectedGraph& g) {
  const std::size_t n = g.node_count;
  auto adj = adjacency(g);
  constexpr std::int64_t none = -1;
  std::vector<std::int64_t> match(n, none), p(n, none);
  std::vector<NodeId> base(n);
  std::vector<char> used(n), blossom(n);

  auto lca = [&](std::int64_t a, std::int64_t b) {
    std::vector<char> seen(n, 0);
    while (true) {
      a = base[a];
      seen[a] = 1;
      if (match[a] == none) break;
      a = p[match[a]];
    }
    while (true) {
      b = base[b];
      if (seen[b]) return b;
      b = p[match[b]];
    }
  };
  auto mark_path = [&](std::int64_t v, std::int64_t b, std::int64_t child) {
    while (base[v] != b) {
      blossom[base[v]] = blossom[base[match[v]]] = 1;
      p[v] = child;
      child = match[v];
      v = p[match[v]];
    }
  };
  auto find_path = [&](NodeId root) -> std::int64_t {
    std::fill(used.begin(), used.end(), 0);
    std::fill(p.begin(), p.end(), none);
    for (NodeId i = 0; i < n; ++i) base[i] = i;
    used[root] = 1;
    std::deque<NodeId> queue{root};
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      for (auto [to, e] : adj[v]) {
        (void)e;
        if (base[v] == base[to] || match[v] == to) continue;
        if (to == root || (match[to] != none && p[match[to]] != none)) {
          std::int64_t cur = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (NodeId i = 0; i < n; ++i)
            if (blossom[base[i]]) {
              base[i] = static_cast<NodeId>(cur);
              if (!used[i]) {
                used[i] = 1;
                queue.push_back(i);
              }
            }
        } else if (p[to] == none) {
          p[to] = v;
          if (match[to] == none) return to;
          used[match[to]] = 1;
          queue.push_back(static_cast<NodeId>(match[to]));
        }
      }
    }
    return none;
  };

  for (NodeId v = 0; v < n; ++v) {
    if (match[v] != none) continue;
    std::int64_t end = find_path(v);
    while (end != none) {
      std::int64_t pv = p[end], ppv = match[pv];
      match[end] = pv;
      match[pv] = end;
      end = ppv;
    }
  }
  std::vector<EdgeId> out;
  std::vector<char> taken(n, 0);
  for (EdgeId e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    if (match[u] == v && !taken[u]) {
      taken[u] = taken[v] = 1;
      out.push_back(e);
    }
  }
  return out;
}

std::optional<std::vector<EdgeId>> matching_covering(const UndirectedGraph& g, const std::vector<NodeId>& z) {
  const std::size_t n = g.node_count, m = g.edges.size();
  std::vector<char> in_z(n, 0);
  for (NodeId v : z) {
    if (v >= n) throw Error(ErrorCode::UnknownVertex, "node " + std::to_string(v));
    in_z[v] = 1;
  }
  // Two copies of g, each node outside z joined to its twin.
  UndirectedGraph h;
  h.node_count = 2 * n;
  h.edges = g.edges;
  for (auto [u, v] : g.edges) h.edges.emplace_back(u + n, v + n);
  for (NodeId v = 0; v < n; ++v)
    if (!in_z[v]) h.edges.emplace_back(v, v + n);
  auto mm = maximum_matching(h);
  if (mm.size() * 2 != h.node_count) return std::nullopt;
  std::vector<EdgeId> out;
  for (EdgeId e : mm)
    if (e < m) out.push_back(e);
  return out;
}

}  // namespace forestdec
