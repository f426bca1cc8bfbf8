#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "forestdec/error.hpp"

namespace forestdec {

enum class VertexId : std::uint32_t {};
enum class ArcId : std::uint32_t {};

constexpr std::uint32_t index(VertexId v) noexcept { return static_cast<std::uint32_t>(v); }
constexpr std::uint32_t index(ArcId a) noexcept { return static_cast<std::uint32_t>(a); }
constexpr VertexId vertex(std::uint32_t i) noexcept { return static_cast<VertexId>(i); }
constexpr ArcId arc(std::uint32_t i) noexcept { return static_cast<ArcId>(i); }

struct Arc {
  VertexId tail;
  VertexId head;
  friend bool operator==(const Arc&, const Arc&) = default;
};

struct Degrees {
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t total() const noexcept { return in + out; }
  friend bool operator==(const Degrees&, const Degrees&) = default;
};

// Immutable directed multigraph without loops.
class Digraph {
 public:
  Digraph() = default;

  std::size_t vertex_count() const noexcept { return out_.size(); }
  std::size_t arc_count() const noexcept { return arcs_.size(); }

  bool has_vertex(VertexId v) const noexcept { return index(v) < out_.size(); }
  bool has_arc(ArcId a) const noexcept { return index(a) < arcs_.size(); }

  const Arc& arc_at(ArcId a) const;
  VertexId tail(ArcId a) const { return arc_at(a).tail; }
  VertexId head(ArcId a) const { return arc_at(a).head; }
  // The endpoint of `a` that is not `v`.
  VertexId opposite(ArcId a, VertexId v) const;

  std::span<const ArcId> out_arcs(VertexId v) const;
  std::span<const ArcId> in_arcs(VertexId v) const;
  // In and out arcs merged, sorted by ArcId.
  std::span<const ArcId> incident_arcs(VertexId v) const;

  Degrees degrees(VertexId v) const;
  std::size_t degree(VertexId v) const { return incident_arcs(v).size(); }
  std::size_t max_degree() const noexcept;

  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.vertex_count() == b.vertex_count() && a.arcs_ == b.arcs_;
  }

 private:
  friend Digraph build_digraph(std::size_t, std::span<const std::pair<std::uint32_t, std::uint32_t>>);

  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
  std::vector<std::vector<ArcId>> incident_;
};

Digraph build_digraph(std::size_t vertex_count,
                      std::span<const std::pair<std::uint32_t, std::uint32_t>> arc_list);
Digraph build_digraph(std::size_t vertex_count,
                      std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> arc_list);
Digraph build_digraph(std::size_t vertex_count, const std::vector<Arc>& arc_list);

Degrees degrees(const Digraph& d, VertexId v);

// Vertex classes of the underlying graph, each sorted, ordered by smallest member.
std::vector<std::vector<VertexId>> connected_components(const Digraph& d);

// Vertices in BFS order from the smallest vertex of each component; arcs in
// the order they are first reached.
std::vector<ArcId> bfs_arc_order(const Digraph& d);

enum class SegmentKind { Path, CycleAtBig };

struct Segment {
  SegmentKind kind = SegmentKind::Path;
  std::vector<ArcId> arcs;
  // vertices[i] and vertices[i+1] are the ends of arcs[i]; for a cycle the
  // first and last entries coincide.
  std::vector<VertexId> vertices;

  VertexId first_endpoint() const { return vertices.front(); }
  VertexId last_endpoint() const { return vertices.back(); }
  std::pair<ArcId, ArcId> endarcs() const { return {arcs.front(), arcs.back()}; }
  std::size_t length() const noexcept { return arcs.size(); }
};

std::vector<Segment> segment_decomposition(const Digraph& d, const std::vector<VertexId>& big,
                                           const std::vector<VertexId>& tiny);

// Maximal walks of a digraph whose underlying maximum degree is at most 2.
// Paths come first in order of their smallest end, then closed walks.
struct Walk {
  std::vector<ArcId> arcs;
  std::vector<VertexId> vertices;
  bool closed = false;
};
std::vector<Walk> degree_two_walks(const Digraph& d);

// Incrementally assembles digraphs; used by gadget composition.
class DigraphBuilder {
 public:
  VertexId add_vertex();
  VertexId add_vertices(std::size_t count);  // returns the first new vertex
  ArcId add_arc(VertexId tail, VertexId head);

  struct Embedding {
    std::vector<VertexId> vertex_map;
    std::vector<ArcId> arc_map;
    VertexId vertex(VertexId v) const { return vertex_map[index(v)]; }
    ArcId arc(ArcId a) const { return arc_map[index(a)]; }
  };
  // Copies `sub` in, identifying each listed sub vertex with a host vertex.
  Embedding embed(const Digraph& sub, const std::vector<std::pair<VertexId, VertexId>>& identify = {});

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  Digraph build() const { return build_digraph(vertex_count_, arcs_); }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Arc> arcs_;
};

}  // namespace forestdec
