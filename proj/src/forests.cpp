#include "forestdec/forests.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace forestdec {

Bound::Bound(std::uint64_t k) : value_(k) {
  if (k == 0) throw Error(ErrorCode::BadParameter, "bounds must be at least 1");
}

std::uint64_t Bound::value() const {
  if (is_infinite()) throw Error(ErrorCode::BadParameter, "bound is infinite");
  return value_;
}

std::string Bound::to_string() const { return is_infinite() ? "inf" : std::to_string(value_); }

Bound parse_bound(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "∞") return Bound::infinity();
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || v == 0)
    throw Error(ErrorCode::ParseError, "bad bound '" + text + "'");
  return Bound(v);
}

const char* family_name(FamilyKind f) noexcept {
  return f == FamilyKind::LinearForest ? "LinearForest" : "OutGalaxy";
}

std::string ProblemSpec::to_string() const {
  return std::string(family_name(family)) + "(" + first.to_string() + "," + second.to_string() + ")";
}

std::vector<ArcId> Decomposition::arcs_in(Part p) const {
  std::vector<ArcId> out;
  for (std::uint32_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == p) out.push_back(arc(i));
  return out;
}

Decomposition Decomposition::swapped() const {
  Decomposition d(*this);
  for (auto& l : d.labels_) l = other(l);
  return d;
}

namespace {

struct Dsu {
  std::vector<std::uint32_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

// Returns the empty string when `arcs` forms a valid member of the family.
std::string check(const Digraph& d, const std::vector<ArcId>& arcs, FamilyKind f, Bound k,
                  std::vector<ArcId>* offending) {
  const std::size_t n = d.vertex_count();
  std::vector<std::uint32_t> in(n, 0), out(n, 0);
  for (ArcId a : arcs) {
    const Arc& e = d.arc_at(a);
    ++out[index(e.tail)];
    ++in[index(e.head)];
  }
  Dsu dsu(n);
  for (ArcId a : arcs) dsu.unite(index(d.tail(a)), index(d.head(a)));
  std::vector<std::uint32_t> comp_arcs(n, 0), comp_vertices(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) ++comp_vertices[dsu.find(v)];
  for (ArcId a : arcs) ++comp_arcs[dsu.find(index(d.tail(a)))];

  auto report = [&](std::uint32_t root, std::string why) {
    if (offending) {
      offending->clear();
      for (ArcId a : arcs)
        if (dsu.find(index(d.tail(a))) == root) offending->push_back(a);
    }
    return why;
  };

  for (ArcId a : arcs) {
    VertexId t = d.tail(a), h = d.head(a);
    std::uint32_t root = dsu.find(index(t));
    if (f == FamilyKind::LinearForest) {
      if (out[index(t)] > 1) return report(root, "vertex " + std::to_string(index(t)) + " has out-degree > 1");
      if (in[index(h)] > 1) return report(root, "vertex " + std::to_string(index(h)) + " has in-degree > 1");
    } else {
      if (in[index(h)] > 1) return report(root, "vertex " + std::to_string(index(h)) + " has in-degree > 1");
      if (in[index(t)] > 0)
        return report(root, "vertex " + std::to_string(index(t)) + " has both an in-arc and an out-arc");
      if (!k.admits(out[index(t)]))
        return report(root, "star at " + std::to_string(index(t)) + " has more than " + k.to_string() + " arcs");
    }
  }
  if (f == FamilyKind::LinearForest) {
    for (ArcId a : arcs) {
      std::uint32_t root = dsu.find(index(d.tail(a)));
      if (comp_arcs[root] >= comp_vertices[root]) return report(root, "component contains a cycle");
      if (!k.admits(comp_arcs[root]))
        return report(root, "path of length " + std::to_string(comp_arcs[root]) + " exceeds " + k.to_string());
    }
  }
  return {};
}

void check_arcs_known(const Digraph& d, const std::vector<ArcId>& arcs) {
  for (ArcId a : arcs)
    if (!d.has_arc(a)) throw Error(ErrorCode::UnknownArc, "arc " + std::to_string(index(a)));
}

}  // namespace

bool is_bounded_dlf(const Digraph& d, const std::vector<ArcId>& arcs, Bound k) {
  check_arcs_known(d, arcs);
  return check(d, arcs, FamilyKind::LinearForest, k, nullptr).empty();
}

bool is_bounded_out_galaxy(const Digraph& d, const std::vector<ArcId>& arcs, Bound k) {
  check_arcs_known(d, arcs);
  return check(d, arcs, FamilyKind::OutGalaxy, k, nullptr).empty();
}

bool is_bounded_family(const Digraph& d, const std::vector<ArcId>& arcs, FamilyKind f, Bound k) {
  return f == FamilyKind::LinearForest ? is_bounded_dlf(d, arcs, k) : is_bounded_out_galaxy(d, arcs, k);
}

std::optional<Violation> find_violation(const Digraph& d, const Decomposition& dec, const ProblemSpec& spec) {
  if (dec.size() != d.arc_count())
    throw Error(ErrorCode::IncompleteLabeling, "decomposition labels " + std::to_string(dec.size()) +
                                                   " arcs, digraph has " + std::to_string(d.arc_count()));
  for (Part p : {Part::First, Part::Second}) {
    Violation v;
    v.part = p;
    v.reason = check(d, dec.arcs_in(p), spec.family, p == Part::First ? spec.first : spec.second, &v.component);
    if (!v.reason.empty()) return v;
  }
  return std::nullopt;
}

bool verify_decomposition(const Digraph& d, const Decomposition& dec, const ProblemSpec& spec) {
  return !find_violation(d, dec, spec).has_value();
}

}  // namespace forestdec
