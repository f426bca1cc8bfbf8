#include "forestdec/polysolve.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace forestdec {

namespace {

constexpr Part F = Part::First;
constexpr Part S = Part::Second;
constexpr std::uint64_t kUnbounded = UINT64_MAX;

std::uint64_t raw(Bound b) { return b.is_infinite() ? kUnbounded : b.value(); }

bool runs_valid(const std::vector<bool>& fw, const std::vector<Part>& lab, std::size_t lo, std::size_t hi,
                FamilyKind family, std::uint64_t k_first) {
  std::size_t i = lo;
  while (i <= hi) {
    std::size_t j = i;
    while (j + 1 <= hi && lab[j + 1] == lab[i]) ++j;
    std::size_t len = j - i + 1;
    std::uint64_t bound = lab[i] == F ? k_first : 1;
    if (len > bound) return false;
    if (family == FamilyKind::LinearForest) {
      for (std::size_t t = i; t < j; ++t)
        if (fw[t] != fw[t + 1]) return false;
    } else if (len == 2) {
      if (fw[i] || !fw[i + 1]) return false;
    } else if (len > 2) {
      return false;
    }
    i = j + 1;
  }
  return true;
}

template <class Extra>
bool brute(const std::vector<bool>& fw, std::vector<Part>& lab, std::size_t lo, std::size_t hi, Part req_lo,
           Part req_hi, FamilyKind family, std::uint64_t k_first, Extra extra) {
  const std::size_t len = hi - lo + 1;
  for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
    for (std::size_t i = 0; i < len; ++i) lab[lo + i] = (mask >> i) & 1 ? S : F;
    if (lab[lo] != req_lo || lab[hi] != req_hi) continue;
    if (runs_valid(fw, lab, lo, hi, family, k_first) && extra()) return true;
  }
  return false;
}

bool path21_core(const std::vector<bool>& fw, std::vector<Part>& lab, std::size_t lo, std::size_t hi, bool one_lo,
                 bool one_hi) {
  while (true) {
    const std::size_t len = hi - lo + 1;
    if (len <= 2)
      return brute(fw, lab, lo, hi, one_lo ? S : F, one_hi ? S : F, FamilyKind::LinearForest, 2, [] { return true; });
    if (one_lo) {
      lab[lo++] = S;
      one_lo = false;
    } else if (one_hi) {
      lab[hi--] = S;
      one_hi = false;
    } else if (fw[lo] != fw[lo + 1]) {
      lab[lo++] = F;
      one_lo = true;
    } else {
      const std::size_t q = len + 1;
      for (std::size_t i = 1; i <= len; ++i) {
        bool first = q % 2 == 0 ? i % 2 == 1 : (i == 1 || i % 2 == 0);
        lab[lo + i - 1] = first ? F : S;
      }
      return true;
    }
  }
}

bool galaxy_core(const std::vector<bool>& fw, std::vector<Part>& lab, std::size_t lo, std::size_t hi, bool one_lo,
                 bool one_hi, std::uint64_t k) {
  while (true) {
    const std::size_t len = hi - lo + 1;
    if (len <= 2)
      return brute(fw, lab, lo, hi, one_lo ? S : F, one_hi ? S : F, FamilyKind::OutGalaxy, k, [] { return true; });
    if (one_lo) {
      lab[lo++] = S;
      one_lo = false;
    } else if (one_hi) {
      lab[hi--] = S;
      one_hi = false;
    } else if (fw[lo] || !fw[lo + 1]) {
      lab[lo++] = F;
      one_lo = true;
    } else {
      const std::size_t q = len + 1;
      for (std::size_t i = 1; i <= len; ++i) {
        bool first = q % 2 == 0 ? i % 2 == 1 : (i == 1 || i % 2 == 0);
        lab[lo + i - 1] = first ? F : S;
      }
      return true;
    }
  }
}

void require_path(const OrientedPath& p, std::size_t min_len) {
  if (p.length() < min_len)
    throw Error(ErrorCode::NotAPath, "path of length " + std::to_string(p.length()) + " is shorter than " +
                                         std::to_string(min_len));
}

void require_cycle(const OrientedCycle& c) {
  if (c.length() < 2) throw Error(ErrorCode::NotACycle, "cycles have length at least 2");
}

struct SubDigraph {
  Digraph d;
  std::vector<ArcId> host;
};

SubDigraph restrict_arcs(const Digraph& d, const std::vector<char>& keep) {
  SubDigraph s;
  std::vector<Arc> arcs;
  for (std::uint32_t a = 0; a < d.arc_count(); ++a)
    if (keep[a]) {
      arcs.push_back(d.arc_at(arc(a)));
      s.host.push_back(arc(a));
    }
  s.d = build_digraph(d.vertex_count(), arcs);
  return s;
}

// Per vertex: whether its component contains a vertex satisfying `pred`.
template <class Pred>
std::vector<char> component_flags(const Digraph& d, Pred pred) {
  std::vector<char> flag(d.vertex_count(), 0);
  for (const auto& comp : connected_components(d)) {
    bool any = std::any_of(comp.begin(), comp.end(), pred);
    for (VertexId v : comp) flag[index(v)] = any;
  }
  return flag;
}

void checked(const Digraph& d, const Decomposition& dec, const ProblemSpec& spec, const char* who) {
  if (auto v = find_violation(d, dec, spec))
    throw std::logic_error(std::string(who) + " built an invalid certificate: " + v->reason);
}

}  // namespace

bool OrientedCycle::is_circuit() const {
  return std::all_of(forward.begin(), forward.end(), [&](bool b) { return b == forward.front(); });
}

Digraph to_digraph(const OrientedPath& p) {
  std::vector<Arc> arcs;
  for (std::uint32_t i = 0; i < p.length(); ++i)
    arcs.push_back(p.forward[i] ? Arc{vertex(i), vertex(i + 1)} : Arc{vertex(i + 1), vertex(i)});
  return build_digraph(p.length() + 1, arcs);
}

Digraph to_digraph(const OrientedCycle& c) {
  require_cycle(c);
  const std::uint32_t q = static_cast<std::uint32_t>(c.length());
  std::vector<Arc> arcs;
  for (std::uint32_t i = 0; i < q; ++i) {
    VertexId a = vertex(i), b = vertex((i + 1) % q);
    arcs.push_back(c.forward[i] ? Arc{a, b} : Arc{b, a});
  }
  return build_digraph(q, arcs);
}

OrientedPath path_of_walk(const Digraph& d, const std::vector<ArcId>& arcs, const std::vector<VertexId>& vertices) {
  if (vertices.size() != arcs.size() + 1) throw Error(ErrorCode::NotAPath, "walk vertex count mismatch");
  OrientedPath p;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& e = d.arc_at(arcs[i]);
    if (e.tail == vertices[i] && e.head == vertices[i + 1]) p.forward.push_back(true);
    else if (e.head == vertices[i] && e.tail == vertices[i + 1]) p.forward.push_back(false);
    else throw Error(ErrorCode::NotAPath, "arc " + std::to_string(index(arcs[i])) + " does not follow the walk");
  }
  return p;
}

OrientedCycle cycle_of_walk(const Digraph& d, const std::vector<ArcId>& arcs, const std::vector<VertexId>& vertices) {
  if (vertices.empty() || vertices.front() != vertices.back())
    throw Error(ErrorCode::NotACycle, "walk is not closed");
  OrientedCycle c{path_of_walk(d, arcs, vertices).forward};
  require_cycle(c);
  return c;
}

std::optional<Decomposition> path_21_constrained(const OrientedPath& p, EndarcConstraint c) {
  require_path(p, 2);
  std::vector<Part> lab(p.length(), F);
  if (!path21_core(p.forward, lab, 0, p.length() - 1, c.first, c.last)) return std::nullopt;
  return Decomposition(std::move(lab));
}

std::optional<Decomposition> path_21_isolated_endarcs(const OrientedPath& p, EndarcConstraint c) {
  require_path(p, 2);
  const std::size_t L = p.length();
  std::vector<Part> lab(L, F);
  if (L <= 3) {
    bool ok = brute(p.forward, lab, 0, L - 1, c.first ? S : F, c.last ? S : F, FamilyKind::LinearForest, 2, [&] {
      return (c.first || lab[1] == S) && (c.last || lab[L - 2] == S);
    });
    if (!ok) return std::nullopt;
    return Decomposition(std::move(lab));
  }
  std::size_t lo = c.first ? 0 : 1, hi = c.last ? L - 1 : L - 2;
  if (!path21_core(p.forward, lab, lo, hi, true, true)) return std::nullopt;
  return Decomposition(std::move(lab));
}

std::pair<Decomposition, Decomposition> path_21_free(const OrientedPath& p, bool endarc_is_first) {
  require_path(p, 1);
  const std::size_t L = p.length();
  std::vector<Part> in_one(L), isolated(L);
  for (std::size_t i = 0; i < L; ++i) {
    std::size_t dist = endarc_is_first ? i : L - 1 - i;
    in_one[i] = dist % 2 == 0 ? S : F;
    isolated[i] = other(in_one[i]);
  }
  return {Decomposition(std::move(in_one)), Decomposition(std::move(isolated))};
}

Decomposition cycle_21(const OrientedCycle& c) {
  require_cycle(c);
  const std::size_t q = c.length();
  std::vector<Part> lab(q);
  if (q % 2 == 0) {
    for (std::size_t i = 0; i < q; ++i) lab[i] = i % 2 == 0 ? F : S;
    return Decomposition(std::move(lab));
  }
  std::size_t at = q;
  for (std::size_t i = 0; i < q && at == q; ++i)
    if (c.forward[(i + q - 1) % q] == c.forward[i]) at = i;
  for (std::size_t j = 1; j <= q; ++j) {
    std::size_t a = (at + q - 2 + j) % q;
    lab[a] = (j == 1 || (j % 2 == 0 && j <= q - 1)) ? F : S;
  }
  return Decomposition(std::move(lab));
}

std::optional<Decomposition> cycle_k1_galaxy(const OrientedCycle& c, Bound k) {
  require_cycle(c);
  const std::size_t q = c.length();
  std::vector<Part> lab(q);
  if (q % 2 == 0) {
    for (std::size_t i = 0; i < q; ++i) lab[i] = i % 2 == 0 ? F : S;
    return Decomposition(std::move(lab));
  }
  if (raw(k) < 2 || c.is_circuit()) return std::nullopt;
  std::size_t src = q;
  for (std::size_t i = 0; i < q && src == q; ++i)
    if (!c.forward[(i + q - 1) % q] && c.forward[i]) src = i;
  for (std::size_t j = 1; j <= q; ++j) {
    std::size_t a = (src + j - 1) % q;
    lab[a] = (j == q || (j % 2 == 1 && j + 2 <= q)) ? F : S;
  }
  return Decomposition(std::move(lab));
}

std::optional<Decomposition> path_k1_galaxy_constrained(const OrientedPath& p, Bound k, EndarcConstraint c) {
  require_path(p, 2);
  const std::size_t L = p.length();
  std::vector<Part> lab(L);
  if (raw(k) == 1) {
    for (Part start : {F, S}) {
      for (std::size_t i = 0; i < L; ++i) lab[i] = i % 2 == 0 ? start : other(start);
      if (lab.front() == (c.first ? S : F) && lab.back() == (c.last ? S : F)) return Decomposition(lab);
    }
    return std::nullopt;
  }
  if (!galaxy_core(p.forward, lab, 0, L - 1, c.first, c.last, raw(k))) return std::nullopt;
  return Decomposition(std::move(lab));
}

std::string XSet::to_string() const {
  static const char* names[] = {"{}", "{1}", "{2}", "{1,2}"};
  std::string s = "{";
  for (int i = 0; i < 4; ++i)
    if (mask & (1 << i)) {
      if (s.size() > 1) s += ",";
      s += names[i];
    }
  return s + "}";
}

XSet compute_xset(const OrientedPath& p, Bound k) {
  require_path(p, 2);
  XSet x;
  for (int i = 0; i < 4; ++i)
    if (path_k1_galaxy_constrained(p, k, {(i & 1) != 0, (i & 2) != 0})) x.mask |= static_cast<std::uint8_t>(1 << i);
  return x;
}

XGadget build_xgadget(XSet x) {
  constexpr std::uint8_t E = XSet::kEmpty, O = XSet::kOne, T = XSet::kTwo, B = XSet::kBoth;
  XGadget g;
  auto& G = g.graph;
  G.node_count = 2;
  NodeId v1 = 0, v2 = 1;
  switch (x.mask) {
    case E | B: {
      NodeId z1 = G.add_node(), z2 = G.add_node();
      g.e1 = G.add_edge(v1, z1);
      G.add_edge(z1, z2);
      g.e2 = G.add_edge(v2, z2);
      g.z = {z1, z2};
      g.case_number = 1;
      break;
    }
    case O | T: {
      NodeId z = G.add_node();
      g.e1 = G.add_edge(v1, z);
      g.e2 = G.add_edge(v2, z);
      g.z = {z};
      g.case_number = 2;
      break;
    }
    case E | O | T: {
      NodeId w = G.add_node();
      g.e1 = G.add_edge(v1, w);
      g.e2 = G.add_edge(v2, w);
      g.case_number = 3;
      break;
    }
    case E | O | B: {
      NodeId z = G.add_node(), w = G.add_node();
      g.e1 = G.add_edge(v1, z);
      g.e2 = G.add_edge(v2, w);
      G.add_edge(w, z);
      g.z = {z};
      g.case_number = 4;
      break;
    }
    case E | T | B: {
      NodeId z = G.add_node(), w = G.add_node();
      g.e1 = G.add_edge(v1, w);
      g.e2 = G.add_edge(v2, z);
      G.add_edge(w, z);
      g.z = {z};
      g.case_number = 5;
      break;
    }
    case O | T | B: {
      NodeId z1 = G.add_node(), z2 = G.add_node(), w = G.add_node();
      g.e1 = G.add_edge(v1, z1);
      g.e2 = G.add_edge(v2, z2);
      G.add_edge(z1, w);
      G.add_edge(z2, w);
      g.z = {z1, z2};
      g.case_number = 6;
      break;
    }
    case E | O | T | B: {
      NodeId w1 = G.add_node(), w2 = G.add_node();
      g.e1 = G.add_edge(v1, w1);
      g.e2 = G.add_edge(v2, w2);
      g.case_number = 7;
      break;
    }
    default:
      throw Error(ErrorCode::UnsupportedXSet, "X = " + x.to_string());
  }
  g.v1 = v1;
  g.v2 = v2;
  return g;
}

Verdict solve_bdlfd_11(const Digraph& d) {
  const ProblemSpec spec{FamilyKind::LinearForest, Bound(1), Bound(1)};
  if (d.max_degree() > 2) return Verdict::No("a vertex has degree greater than 2");
  Decomposition dec(d.arc_count());
  for (const Walk& w : degree_two_walks(d)) {
    if (w.closed && w.arcs.size() % 2 == 1) return Verdict::No("odd cycle");
    for (std::size_t i = 0; i < w.arcs.size(); ++i) dec.set(w.arcs[i], i % 2 == 0 ? F : S);
  }
  checked(d, dec, spec, "solve_bdlfd_11");
  return Verdict::Yes(std::move(dec));
}

Verdict solve_bdlfd_21(const Digraph& d) {
  const ProblemSpec spec{FamilyKind::LinearForest, Bound(2), Bound(1)};
  const std::size_t n = d.vertex_count(), m = d.arc_count();
  Decomposition dec(m);
  if (m == 0) return Verdict::Yes(std::move(dec));
  std::vector<char> v3(n, 0);
  std::vector<VertexId> v3_list, v1_list;
  for (std::uint32_t v = 0; v < n; ++v) {
    Degrees dg = d.degrees(vertex(v));
    if (dg.total() >= 4) return Verdict::No("degree >= 4 at vertex " + std::to_string(v));
    if (dg.total() == 3) {
      if (std::max(dg.in, dg.out) == 3)
        return Verdict::No("degree-3 vertex " + std::to_string(v) + " with all arcs in one direction");
      v3[v] = 1;
      v3_list.push_back(vertex(v));
    }
    if (dg.total() == 1) v1_list.push_back(vertex(v));
  }
  auto with_v3 = component_flags(d, [&](VertexId v) { return v3[index(v)] != 0; });
  std::vector<char> keep(m, 0), rest(m, 0);
  for (std::uint32_t a = 0; a < m; ++a) (with_v3[index(d.tail(arc(a)))] ? keep : rest)[a] = 1;

  SubDigraph simple = restrict_arcs(d, rest);
  for (const Walk& w : degree_two_walks(simple.d)) {
    Decomposition local = w.closed ? cycle_21(cycle_of_walk(simple.d, w.arcs, w.vertices))
                                   : path_21_free(path_of_walk(simple.d, w.arcs, w.vertices), true).first;
    for (std::size_t i = 0; i < w.arcs.size(); ++i) dec.set(simple.host[index(w.arcs[i])], local[arc(i)]);
  }

  if (!v3_list.empty()) {
    SubDigraph sub = restrict_arcs(d, keep);
    const Digraph& g = sub.d;
    std::vector<std::int64_t> var(g.arc_count(), -1);
    TwoSatInstance sat;
    for (std::uint32_t a = 0; a < g.arc_count(); ++a)
      if (v3[index(g.tail(arc(a)))] || v3[index(g.head(arc(a)))]) var[a] = static_cast<std::int64_t>(sat.variable_count++);
    auto lit = [&](ArcId a, bool positive) { return Literal{static_cast<std::uint32_t>(var[index(a)]), positive}; };

    for (VertexId v : v3_list) {
      Degrees dg = g.degrees(v);
      bool unique_in = dg.in == 1;
      ArcId a1{};
      std::vector<ArcId> pair;
      for (ArcId a : g.incident_arcs(v)) {
        bool is_in = g.head(a) == v;
        if (is_in == unique_in) a1 = a;
        else pair.push_back(a);
      }
      sat.add_unit(lit(a1, false));
      sat.add(lit(pair[0], false), lit(pair[1], false));
      sat.add(lit(pair[0], true), lit(pair[1], true));
    }

    auto segments = segment_decomposition(g, v3_list, v1_list);
    struct SegmentPlan {
      OrientedPath path;
      bool both_v3 = false;
      bool v3_first = false;
      std::optional<Decomposition> witness[4];
    };
    std::vector<SegmentPlan> plans(segments.size());
    for (std::size_t s = 0; s < segments.size(); ++s) {
      const Segment& seg = segments[s];
      SegmentPlan& plan = plans[s];
      plan.path = path_of_walk(g, seg.arcs, seg.vertices);
      plan.both_v3 = v3[index(seg.first_endpoint())] && v3[index(seg.last_endpoint())];
      plan.v3_first = v3[index(seg.first_endpoint())];
      if (!plan.both_v3) continue;
      auto [a1, a2] = seg.endarcs();
      if (seg.length() == 1) {
        sat.add_unit(lit(a1, true));
        continue;
      }
      for (int i = 0; i < 4; ++i) {
        EndarcConstraint c{(i & 1) != 0, (i & 2) != 0};
        plan.witness[i] = path_21_isolated_endarcs(plan.path, c);
        if (!plan.witness[i]) sat.add(lit(a1, !c.first), lit(a2, !c.last));
      }
    }
    // Two arcs joining the same pair of vertices never share a part.
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<ArcId>> by_pair;
    for (std::uint32_t a = 0; a < g.arc_count(); ++a) {
      std::uint32_t t = index(g.tail(arc(a))), h = index(g.head(arc(a)));
      if (t > h) std::swap(t, h);
      by_pair[{t, h}].push_back(arc(a));
    }
    for (const auto& [key, arcs] : by_pair)
      for (std::size_t i = 0; i < arcs.size(); ++i)
        for (std::size_t j = i + 1; j < arcs.size(); ++j)
          if (var[index(arcs[i])] >= 0 && var[index(arcs[j])] >= 0) {
            sat.add(lit(arcs[i], true), lit(arcs[j], true));
            sat.add(lit(arcs[i], false), lit(arcs[j], false));
          }

    auto phi = solve_2sat(sat);
    if (!phi) return Verdict::No("the 2-SAT instance is unsatisfiable");
    auto in_one = [&](ArcId a) { return (*phi)[var[index(a)]]; };

    for (std::size_t s = 0; s < segments.size(); ++s) {
      const Segment& seg = segments[s];
      const SegmentPlan& plan = plans[s];
      Decomposition local;
      if (plan.both_v3 && seg.length() == 1) {
        local = Decomposition(1, in_one(seg.arcs[0]) ? S : F);
      } else if (plan.both_v3) {
        auto [a1, a2] = seg.endarcs();
        int i = (in_one(a1) ? 1 : 0) | (in_one(a2) ? 2 : 0);
        if (!plan.witness[i]) throw std::logic_error("solve_bdlfd_21: assignment selects an infeasible segment state");
        local = *plan.witness[i];
      } else {
        ArcId end = plan.v3_first ? seg.arcs.front() : seg.arcs.back();
        auto options = path_21_free(plan.path, plan.v3_first);
        local = in_one(end) ? options.first : options.second;
      }
      for (std::size_t i = 0; i < seg.arcs.size(); ++i) dec.set(sub.host[index(seg.arcs[i])], local[arc(i)]);
    }
  }
  checked(d, dec, spec, "solve_bdlfd_21");
  return Verdict::Yes(std::move(dec));
}

Verdict solve_bogd_inf_inf(const Digraph& d) {
  const ProblemSpec spec{FamilyKind::OutGalaxy, Bound::infinity(), Bound::infinity()};
  UndirectedGraph g;
  g.node_count = d.arc_count();
  for (std::uint32_t v = 0; v < d.vertex_count(); ++v) {
    auto inc = d.incident_arcs(vertex(v));
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j)
        if (d.tail(inc[i]) != vertex(v) || d.tail(inc[j]) != vertex(v)) g.add_edge(index(inc[i]), index(inc[j]));
  }
  Bipartition bip = bipartition(g);
  if (!bip.bipartite) return Verdict::No("the conflict graph contains an odd cycle");
  Decomposition dec(d.arc_count());
  for (std::uint32_t a = 0; a < d.arc_count(); ++a) dec.set(arc(a), bip.side[a] == 0 ? F : S);
  checked(d, dec, spec, "solve_bogd_inf_inf");
  return Verdict::Yes(std::move(dec));
}

Verdict solve_bogd_k1(const Digraph& d, Bound k) { return solve_bogd_k1(d, k, nullptr); }

Verdict solve_bogd_k1(const Digraph& d, Bound k, BogdK1Trace* trace) {
  const std::size_t n = d.vertex_count(), m = d.arc_count();
  Decomposition dec(m);
  if (m == 0) return Verdict::Yes(std::move(dec));
  const std::uint64_t K = k.is_infinite() ? std::max<std::size_t>(1, d.max_degree()) : k.value();
  const Bound bound(K);
  const ProblemSpec spec{FamilyKind::OutGalaxy, bound, Bound(1)};

  enum Kind : std::uint8_t { Plain, Tiny, Big0, Big1 };
  std::vector<Kind> kind(n, Plain);
  std::vector<VertexId> attach;
  for (std::uint32_t v = 0; v < n; ++v) {
    Degrees dg = d.degrees(vertex(v));
    if (dg.total() >= 3) {
      if (dg.total() > K + 1)
        return Verdict::No("vertex " + std::to_string(v) + " has degree above k+1");
      if (dg.in >= 2) return Verdict::No("vertex " + std::to_string(v) + " of degree >= 3 has in-degree >= 2");
      kind[v] = dg.in == 0 ? Big0 : Big1;
    } else if (dg.total() == 1) {
      kind[v] = Tiny;
    }
    if (kind[v] != Plain) attach.push_back(vertex(v));
  }

  auto attached = component_flags(d, [&](VertexId v) { return kind[index(v)] != Plain; });
  std::vector<char> keep(m, 0), rest(m, 0);
  for (std::uint32_t a = 0; a < m; ++a) (attached[index(d.tail(arc(a)))] ? keep : rest)[a] = 1;

  SubDigraph cycles = restrict_arcs(d, rest);
  for (const Walk& w : degree_two_walks(cycles.d)) {
    auto local = cycle_k1_galaxy(cycle_of_walk(cycles.d, w.arcs, w.vertices), bound);
    if (!local) return Verdict::No("a component is an odd circuit");
    for (std::size_t i = 0; i < w.arcs.size(); ++i) dec.set(cycles.host[index(w.arcs[i])], (*local)[arc(i)]);
  }

  SubDigraph sub = restrict_arcs(d, keep);
  const Digraph& g = sub.d;
  UndirectedGraph G;
  std::vector<NodeId> Z;
  constexpr NodeId none = ~NodeId{0};
  std::vector<NodeId> vnode(n, none);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (kind[v] != Big0 && kind[v] != Tiny) continue;
    vnode[v] = G.add_node();
    if (kind[v] == Big0 && g.degree(vertex(v)) == K + 1) Z.push_back(vnode[v]);
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, NodeId> unode;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (kind[v] != Big1) continue;
    for (ArcId a : g.incident_arcs(vertex(v))) {
      NodeId u = G.add_node();
      unode[{v, index(a)}] = u;
      if (g.head(a) == vertex(v)) {
        Z.push_back(u);
      } else {
        NodeId z = G.add_node();
        G.add_edge(u, z);
        Z.push_back(z);
      }
    }
  }
  auto endpoint_node = [&](VertexId b, ArcId a) {
    return kind[index(b)] == Big1 ? unode.at({index(b), index(a)}) : vnode[index(b)];
  };

  auto segments = segment_decomposition(g, attach, {});
  struct Placed {
    OrientedPath path;
    EdgeId e1, e2;
  };
  std::vector<Placed> placed;
  std::vector<XSet> xsets;
  for (const Segment& seg : segments) {
    Placed pl;
    pl.path = path_of_walk(g, seg.arcs, seg.vertices);
    XSet x{static_cast<std::uint8_t>(XSet::kEmpty | XSet::kBoth)};
    if (seg.length() >= 2) x = compute_xset(pl.path, bound);
    xsets.push_back(x);
    XGadget xg = build_xgadget(x);
    std::vector<NodeId> map(xg.graph.node_count);
    auto [a1, a2] = seg.endarcs();
    map[xg.v1] = endpoint_node(seg.first_endpoint(), a1);
    map[xg.v2] = endpoint_node(seg.last_endpoint(), a2);
    for (NodeId i = 0; i < xg.graph.node_count; ++i)
      if (i != xg.v1 && i != xg.v2) map[i] = G.add_node();
    EdgeId base = static_cast<EdgeId>(G.edges.size());
    for (auto [u, v] : xg.graph.edges) G.add_edge(map[u], map[v]);
    pl.e1 = base + xg.e1;
    pl.e2 = base + xg.e2;
    for (NodeId z : xg.z) Z.push_back(map[z]);
    placed.push_back(std::move(pl));
  }
  if (trace) {
    trace->graph = G;
    trace->z = Z;
    trace->xsets = xsets;
    trace->bound = K;
  }

  auto matching = matching_covering(G, Z);
  if (!matching) return Verdict::No("no matching of the auxiliary graph covers Z");
  std::vector<char> matched(G.edges.size(), 0);
  for (EdgeId e : *matching) matched[e] = 1;

  for (std::size_t s = 0; s < segments.size(); ++s) {
    const Segment& seg = segments[s];
    const Placed& pl = placed[s];
    Decomposition local;
    if (seg.length() == 1) {
      local = Decomposition(1, matched[pl.e1] ? S : F);
    } else {
      auto got = path_k1_galaxy_constrained(pl.path, bound, {matched[pl.e1] != 0, matched[pl.e2] != 0});
      if (!got) throw std::logic_error("solve_bogd_k1: matching trace outside the X-set");
      local = *got;
    }
    for (std::size_t i = 0; i < seg.arcs.size(); ++i) dec.set(sub.host[index(seg.arcs[i])], local[arc(i)]);
  }
  checked(d, dec, spec, "solve_bogd_k1");
  return Verdict::Yes(std::move(dec));
}

bool is_polynomial(const ProblemSpec& spec) {
  auto one = [](Bound b) { return !b.is_infinite() && b.value() == 1; };
  auto two = [](Bound b) { return !b.is_infinite() && b.value() == 2; };
  if (spec.family == FamilyKind::LinearForest)
    return (one(spec.first) && one(spec.second)) || (one(spec.first) && two(spec.second)) ||
           (two(spec.first) && one(spec.second));
  return one(spec.first) || one(spec.second) || (spec.first.is_infinite() && spec.second.is_infinite());
}

Verdict solve_polynomial(const Digraph& d, const ProblemSpec& spec) {
  if (!is_polynomial(spec))
    throw Error(ErrorCode::UnsupportedSpec, spec.to_string() + " has no polynomial solver; use the oracle");
  auto one = [](Bound b) { return !b.is_infinite() && b.value() == 1; };
  bool swap = !one(spec.second) && !(spec.first.is_infinite() && spec.second.is_infinite());
  ProblemSpec s = swap ? spec.swapped() : spec;
  Verdict v;
  if (s.family == FamilyKind::LinearForest)
    v = one(s.first) ? solve_bdlfd_11(d) : solve_bdlfd_21(d);
  else if (s.first.is_infinite() && s.second.is_infinite())
    v = solve_bogd_inf_inf(d);
  else
    v = solve_bogd_k1(d, s.first);
  if (swap && v.certificate) v.certificate = v.certificate->swapped();
  return v;
}

}  // namespace forestdec
