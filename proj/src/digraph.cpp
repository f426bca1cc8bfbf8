#include "forestdec/digraph.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace forestdec {

const Arc& Digraph::arc_at(ArcId a) const {
  if (!has_arc(a)) throw Error(ErrorCode::UnknownArc, "arc " + std::to_string(index(a)));
  return arcs_[index(a)];
}

VertexId Digraph::opposite(ArcId a, VertexId v) const {
  const Arc& e = arc_at(a);
  return e.tail == v ? e.head : e.tail;
}

static void check_vertex(const Digraph& d, VertexId v) {
  if (!d.has_vertex(v)) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(index(v)));
}

std::span<const ArcId> Digraph::out_arcs(VertexId v) const {
  check_vertex(*this, v);
  return out_[index(v)];
}

std::span<const ArcId> Digraph::in_arcs(VertexId v) const {
  check_vertex(*this, v);
  return in_[index(v)];
}

std::span<const ArcId> Digraph::incident_arcs(VertexId v) const {
  check_vertex(*this, v);
  return incident_[index(v)];
}

Degrees Digraph::degrees(VertexId v) const {
  check_vertex(*this, v);
  return {in_[index(v)].size(), out_[index(v)].size()};
}

std::size_t Digraph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& inc : incident_) best = std::max(best, inc.size());
  return best;
}

Digraph build_digraph(std::size_t vertex_count,
                      std::span<const std::pair<std::uint32_t, std::uint32_t>> arc_list) {
  Digraph d;
  d.out_.resize(vertex_count);
  d.in_.resize(vertex_count);
  d.incident_.resize(vertex_count);
  d.arcs_.reserve(arc_list.size());
  for (std::size_t i = 0; i < arc_list.size(); ++i) {
    auto [t, h] = arc_list[i];
    if (t >= vertex_count || h >= vertex_count)
      throw Error(ErrorCode::OutOfRange, "arc " + std::to_string(i) + " has an endpoint >= " +
                                             std::to_string(vertex_count));
    if (t == h) throw Error(ErrorCode::LoopArc, "arc " + std::to_string(i) + " is a loop at " + std::to_string(t));
    ArcId a = arc(static_cast<std::uint32_t>(i));
    d.arcs_.push_back({vertex(t), vertex(h)});
    d.out_[t].push_back(a);
    d.in_[h].push_back(a);
    d.incident_[t].push_back(a);
    d.incident_[h].push_back(a);
  }
  return d;
}

Digraph build_digraph(std::size_t vertex_count,
                      std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> arc_list) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> v(arc_list);
  return build_digraph(vertex_count, std::span<const std::pair<std::uint32_t, std::uint32_t>>(v));
}

Digraph build_digraph(std::size_t vertex_count, const std::vector<Arc>& arc_list) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> v;
  v.reserve(arc_list.size());
  for (const Arc& e : arc_list) v.emplace_back(index(e.tail), index(e.head));
  return build_digraph(vertex_count, std::span<const std::pair<std::uint32_t, std::uint32_t>>(v));
}

Degrees degrees(const Digraph& d, VertexId v) { return d.degrees(v); }

std::vector<std::vector<VertexId>> connected_components(const Digraph& d) {
  std::vector<std::vector<VertexId>> comps;
  std::vector<char> seen(d.vertex_count(), 0);
  for (std::uint32_t s = 0; s < d.vertex_count(); ++s) {
    if (seen[s]) continue;
    std::vector<VertexId> comp;
    std::vector<VertexId> stack{vertex(s)};
    seen[s] = 1;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (ArcId a : d.incident_arcs(v)) {
        VertexId w = d.opposite(a, v);
        if (!seen[index(w)]) {
          seen[index(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::vector<ArcId> bfs_arc_order(const Digraph& d) {
  std::vector<ArcId> order;
  order.reserve(d.arc_count());
  std::vector<char> seen_v(d.vertex_count(), 0), seen_a(d.arc_count(), 0);
  std::deque<VertexId> queue;
  for (std::uint32_t s = 0; s < d.vertex_count(); ++s) {
    if (seen_v[s]) continue;
    seen_v[s] = 1;
    queue.push_back(vertex(s));
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (ArcId a : d.incident_arcs(v)) {
        if (seen_a[index(a)]) continue;
        seen_a[index(a)] = 1;
        order.push_back(a);
        VertexId w = d.opposite(a, v);
        if (!seen_v[index(w)]) {
          seen_v[index(w)] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  return order;
}

namespace {

// Follows degree-2 interior vertices from `start` along `first` until `stop` says so.
template <class Stop>
void trace(const Digraph& d, VertexId start, ArcId first, std::vector<char>& used, Stop stop,
           std::vector<ArcId>& arcs, std::vector<VertexId>& verts) {
  verts.push_back(start);
  VertexId cur = start;
  ArcId a = first;
  while (true) {
    used[index(a)] = 1;
    arcs.push_back(a);
    cur = d.opposite(a, cur);
    verts.push_back(cur);
    if (stop(cur)) return;
    auto inc = d.incident_arcs(cur);
    ArcId next = a;
    for (ArcId b : inc)
      if (b != a && !used[index(b)]) {
        next = b;
        break;
      }
    if (next == a) return;
    a = next;
  }
}

}  // namespace

std::vector<Segment> segment_decomposition(const Digraph& d, const std::vector<VertexId>& big,
                                           const std::vector<VertexId>& tiny) {
  std::vector<char> attach(d.vertex_count(), 0);
  for (VertexId v : big) {
    check_vertex(d, v);
    attach[index(v)] = 1;
  }
  for (VertexId v : tiny) {
    check_vertex(d, v);
    attach[index(v)] = 1;
  }
  for (std::uint32_t v = 0; v < d.vertex_count(); ++v) {
    std::size_t deg = d.degree(vertex(v));
    if (!attach[v] && deg != 0 && deg != 2)
      throw Error(ErrorCode::PreconditionViolated,
                  "vertex " + std::to_string(v) + " is interior with degree " + std::to_string(deg));
  }
  std::vector<Segment> segments;
  std::vector<char> used(d.arc_count(), 0);
  for (std::uint32_t s = 0; s < d.vertex_count(); ++s) {
    if (!attach[s]) continue;
    for (ArcId a : d.incident_arcs(vertex(s))) {
      if (used[index(a)]) continue;
      Segment seg;
      trace(d, vertex(s), a, used, [&](VertexId v) { return attach[index(v)] != 0; }, seg.arcs, seg.vertices);
      seg.kind = seg.vertices.back() == seg.vertices.front() ? SegmentKind::CycleAtBig : SegmentKind::Path;
      segments.push_back(std::move(seg));
    }
  }
  for (std::uint32_t a = 0; a < d.arc_count(); ++a)
    if (!used[a])
      throw Error(ErrorCode::PreconditionViolated,
                  "arc " + std::to_string(a) + " lies in a component without attachment vertex");
  return segments;
}

std::vector<Walk> degree_two_walks(const Digraph& d) {
  if (d.max_degree() > 2) throw Error(ErrorCode::PreconditionViolated, "maximum degree exceeds 2");
  std::vector<Walk> walks;
  std::vector<char> used(d.arc_count(), 0);
  for (std::uint32_t s = 0; s < d.vertex_count(); ++s) {
    if (d.degree(vertex(s)) != 1) continue;
    ArcId a = d.incident_arcs(vertex(s))[0];
    if (used[index(a)]) continue;
    Walk w;
    trace(d, vertex(s), a, used, [&](VertexId v) { return d.degree(v) == 1; }, w.arcs, w.vertices);
    walks.push_back(std::move(w));
  }
  for (std::uint32_t s = 0; s < d.vertex_count(); ++s) {
    for (ArcId a : d.incident_arcs(vertex(s))) {
      if (used[index(a)]) continue;
      Walk w;
      w.closed = true;
      VertexId start = vertex(s);
      trace(d, start, a, used, [&](VertexId v) { return v == start; }, w.arcs, w.vertices);
      walks.push_back(std::move(w));
    }
  }
  return walks;
}

VertexId DigraphBuilder::add_vertex() { return vertex(static_cast<std::uint32_t>(vertex_count_++)); }

VertexId DigraphBuilder::add_vertices(std::size_t count) {
  VertexId first = vertex(static_cast<std::uint32_t>(vertex_count_));
  vertex_count_ += count;
  return first;
}

ArcId DigraphBuilder::add_arc(VertexId tail, VertexId head) {
  if (index(tail) >= vertex_count_ || index(head) >= vertex_count_)
    throw Error(ErrorCode::OutOfRange, "builder arc endpoint out of range");
  if (tail == head) throw Error(ErrorCode::LoopArc, "builder loop at " + std::to_string(index(tail)));
  arcs_.push_back({tail, head});
  return arc(static_cast<std::uint32_t>(arcs_.size() - 1));
}

DigraphBuilder::Embedding DigraphBuilder::embed(const Digraph& sub,
                                                const std::vector<std::pair<VertexId, VertexId>>& identify) {
  constexpr std::uint32_t unset = ~std::uint32_t{0};
  Embedding e;
  e.vertex_map.assign(sub.vertex_count(), vertex(unset));
  for (auto [s, h] : identify) {
    if (!sub.has_vertex(s) || index(h) >= vertex_count_)
      throw Error(ErrorCode::OutOfRange, "identification outside the digraphs");
    e.vertex_map[index(s)] = h;
  }
  for (auto& v : e.vertex_map)
    if (index(v) == unset) v = add_vertex();
  e.arc_map.reserve(sub.arc_count());
  for (const Arc& a : sub.arcs()) e.arc_map.push_back(add_arc(e.vertex(a.tail), e.vertex(a.head)));
  return e;
}

}  // namespace forestdec
