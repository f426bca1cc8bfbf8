#include "forestdec/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace forestdec {

const char* outcome_name(Outcome o) noexcept {
  switch (o) {
    case Outcome::Yes: return "Yes";
    case Outcome::No: return "No";
    case Outcome::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

namespace {

struct BudgetHit {};

constexpr std::int8_t kUnlabeled = -1;

class Search {
 public:
  Search(const Digraph& d, const ProblemSpec& spec, const SearchBudget& budget)
      : d_(d), lf_(spec.family == FamilyKind::LinearForest), budget_(budget),
        labels_(d.arc_count(), kUnlabeled) {
    bound_[0] = spec.first.is_infinite() ? UINT64_MAX : spec.first.value();
    bound_[1] = spec.second.is_infinite() ? UINT64_MAX : spec.second.value();
    const std::size_t n = d.vertex_count();
    for (auto& p : parts_) {
      p.in.assign(n, 0);
      p.out.assign(n, 0);
      p.parent.resize(n);
      std::iota(p.parent.begin(), p.parent.end(), 0u);
      p.size.assign(n, 1);
      p.len.assign(n, 0);
      p.start.resize(n);
      std::iota(p.start.begin(), p.start.end(), 0u);
      p.end = p.start;
    }
    if (budget.deadline) deadline_ = std::chrono::steady_clock::now() + *budget.deadline;
    rank_.assign(d.arc_count(), 0);
    order_ = bfs_arc_order(d);
    for (std::uint32_t i = 0; i < order_.size(); ++i) rank_[index(order_[i])] = i;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

  bool apply_constraint(const Constraint& c) {
    for (auto [a, p] : c) {
      if (!d_.has_arc(a)) throw Error(ErrorCode::UnknownArc, "constraint on arc " + std::to_string(index(a)));
      int cur = labels_[index(a)];
      if (cur == static_cast<int>(p)) continue;
      if (cur != kUnlabeled || !assign_and_propagate(a, p)) return false;
    }
    return true;
  }

  std::vector<ArcId> unlabeled_in_order() const {
    std::vector<ArcId> s;
    for (ArcId a : order_)
      if (labels_[index(a)] == kUnlabeled) s.push_back(a);
    return s;
  }

  // Decision search; on success the labels hold a witness.
  bool solve(std::vector<ArcId> s) {
    std::erase_if(s, [&](ArcId a) { return labels_[index(a)] != kUnlabeled; });
    if (s.empty()) return true;
    auto groups = split(s);
    if (groups.size() > 1) {
      std::size_t mark = trail_.size();
      for (auto& g : groups)
        if (!solve(std::move(g))) {
          undo(mark);
          return false;
        }
      return true;
    }
    ArcId a = s.front();
    for (Part p : {Part::First, Part::Second}) {
      std::size_t mark = trail_.size();
      if (assign_and_propagate(a, p) && solve(s)) return true;
      undo(mark);
    }
    return false;
  }

  // Full enumeration in search order.
  bool enumerate(const std::vector<ArcId>& s, std::size_t pos, const std::function<bool(const Decomposition&)>& visit) {
    while (pos < s.size() && labels_[index(s[pos])] != kUnlabeled) ++pos;
    if (pos == s.size()) return visit(current());
    for (Part p : {Part::First, Part::Second}) {
      std::size_t mark = trail_.size();
      bool keep_going = true;
      if (assign_and_propagate(s[pos], p)) keep_going = enumerate(s, pos + 1, visit);
      undo(mark);
      if (!keep_going) return false;
    }
    return true;
  }

  Decomposition current() const {
    std::vector<Part> out(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) out[i] = static_cast<Part>(labels_[i]);
    return Decomposition(std::move(out));
  }

 private:
  struct PartState {
    std::vector<std::uint32_t> in, out, parent, size, len, start, end;
    std::uint32_t find(std::uint32_t x) const {
      while (parent[x] != x) x = parent[x];
      return x;
    }
  };

  struct Step {
    ArcId a;
    std::uint8_t part;
    bool merged;
    std::uint32_t child, root, old_size, old_len, old_start, old_end;
  };

  bool can_assign(ArcId a, int p) const {
    const PartState& s = parts_[p];
    const Arc& e = d_.arc_at(a);
    std::uint32_t t = index(e.tail), h = index(e.head);
    if (lf_) {
      if (s.out[t] || s.in[h]) return false;
      std::uint32_t rt = s.find(t), rh = s.find(h);
      if (rt == rh) return false;
      return std::uint64_t(s.len[rt]) + s.len[rh] + 1 <= bound_[p];
    }
    if (s.in[h] || s.out[h] || s.in[t]) return false;
    return std::uint64_t(s.out[t]) + 1 <= bound_[p];
  }

  void tick() {
    ++nodes_;
    if (budget_.max_nodes && nodes_ > *budget_.max_nodes) throw BudgetHit{};
    if (deadline_ && (nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > *deadline_) throw BudgetHit{};
  }

  void assign(ArcId a, int p, std::vector<std::uint32_t>& touched) {
    tick();
    PartState& s = parts_[p];
    const Arc& e = d_.arc_at(a);
    std::uint32_t t = index(e.tail), h = index(e.head);
    labels_[index(a)] = static_cast<std::int8_t>(p);
    ++s.out[t];
    ++s.in[h];
    Step st{a, static_cast<std::uint8_t>(p), false, 0, 0, 0, 0, 0, 0};
    touched.push_back(t);
    touched.push_back(h);
    if (lf_) {
      std::uint32_t rt = s.find(t), rh = s.find(h);
      std::uint32_t new_start = s.start[rt], new_end = s.end[rh];
      std::uint32_t new_len = s.len[rt] + s.len[rh] + 1;
      std::uint32_t root = rt, child = rh;
      if (s.size[root] < s.size[child]) std::swap(root, child);
      st.merged = true;
      st.child = child;
      st.root = root;
      st.old_size = s.size[root];
      st.old_len = s.len[root];
      st.old_start = s.start[root];
      st.old_end = s.end[root];
      s.parent[child] = root;
      s.size[root] += s.size[child];
      s.len[root] = new_len;
      s.start[root] = new_start;
      s.end[root] = new_end;
      touched.push_back(new_start);
      touched.push_back(new_end);
    }
    trail_.push_back(st);
  }

  bool assign_and_propagate(ArcId a, Part part) {
    int p = static_cast<int>(part);
    if (!can_assign(a, p)) return false;
    std::vector<std::uint32_t> queue;
    assign(a, p, queue);
    while (!queue.empty()) {
      std::uint32_t v = queue.back();
      queue.pop_back();
      for (ArcId b : d_.incident_arcs(vertex(v))) {
        if (labels_[index(b)] != kUnlabeled) continue;
        bool f = can_assign(b, 0), g = can_assign(b, 1);
        if (!f && !g) return false;
        if (f != g) assign(b, f ? 0 : 1, queue);
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const Step& st = trail_.back();
      PartState& s = parts_[st.part];
      const Arc& e = d_.arc_at(st.a);
      --s.out[index(e.tail)];
      --s.in[index(e.head)];
      if (st.merged) {
        s.parent[st.child] = st.child;
        s.size[st.root] = st.old_size;
        s.len[st.root] = st.old_len;
        s.start[st.root] = st.old_start;
        s.end[st.root] = st.old_end;
      }
      labels_[index(st.a)] = kUnlabeled;
      trail_.pop_back();
    }
  }

  // Groups of unlabeled arcs that cannot influence each other.
  std::vector<std::vector<ArcId>> split(const std::vector<ArcId>& s) {
    const std::size_t m = s.size();
    if (m < 2) return {s};
    if (token_stamp_.size() != 2 * d_.vertex_count()) {
      token_stamp_.assign(2 * d_.vertex_count(), 0);
      token_slot_.assign(2 * d_.vertex_count(), 0);
    }
    ++stamp_;
    std::vector<std::uint32_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto token_of = [&](std::uint32_t v, int p) -> std::uint32_t {
      return lf_ ? 2 * parts_[p].find(v) + p : 2 * v;
    };
    for (std::uint32_t i = 0; i < m; ++i) {
      const Arc& e = d_.arc_at(s[i]);
      for (std::uint32_t v : {index(e.tail), index(e.head)})
        for (int p = 0; p < (lf_ ? 2 : 1); ++p) {
          std::uint32_t tok = token_of(v, p);
          if (token_stamp_[tok] != stamp_) {
            token_stamp_[tok] = stamp_;
            token_slot_[tok] = i;
          } else {
            parent[find(i)] = find(token_slot_[tok]);
          }
        }
    }
    std::vector<std::vector<ArcId>> groups;
    std::vector<std::int64_t> group_of(m, -1);
    for (std::uint32_t i = 0; i < m; ++i) {
      std::uint32_t r = find(i);
      if (group_of[r] < 0) {
        group_of[r] = static_cast<std::int64_t>(groups.size());
        groups.emplace_back();
      }
      groups[group_of[r]].push_back(s[i]);
    }
    return groups;
  }

  const Digraph& d_;
  bool lf_;
  SearchBudget budget_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint64_t bound_[2];
  PartState parts_[2];
  std::vector<std::int8_t> labels_;
  std::vector<Step> trail_;
  std::vector<ArcId> order_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::uint64_t> token_stamp_;
  std::vector<std::uint32_t> token_slot_;
  std::uint64_t stamp_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

OracleResult oracle_decide(const Digraph& d, const ProblemSpec& spec, const SearchBudget& budget,
                           const Constraint& constraint) {
  Search search(d, spec, budget);
  OracleResult r;
  try {
    if (search.apply_constraint(constraint) && search.solve(search.unlabeled_in_order())) {
      r.outcome = Outcome::Yes;
      r.decomposition = search.current();
      if (!verify_decomposition(d, *r.decomposition, spec))
        throw std::logic_error("oracle produced an invalid decomposition");
    } else {
      r.outcome = Outcome::No;
    }
  } catch (const BudgetHit&) {
    r.outcome = Outcome::BudgetExceeded;
    r.decomposition.reset();
  }
  r.nodes_visited = search.nodes();
  return r;
}

Outcome for_each_decomposition(const Digraph& d, const ProblemSpec& spec, const SearchBudget& budget,
                               const Constraint& constraint,
                               const std::function<bool(const Decomposition&)>& visit,
                               std::uint64_t* nodes_visited) {
  Search search(d, spec, budget);
  Outcome out = Outcome::No;
  try {
    if (search.apply_constraint(constraint)) {
      auto s = search.unlabeled_in_order();
      if (!search.enumerate(s, 0, visit)) out = Outcome::Yes;
    }
  } catch (const BudgetHit&) {
    out = Outcome::BudgetExceeded;
  }
  if (nodes_visited) *nodes_visited = search.nodes();
  return out;
}

EnumerationResult oracle_enumerate(const Digraph& d, const ProblemSpec& spec, const SearchBudget& budget,
                                   const Constraint& constraint) {
  EnumerationResult r;
  Outcome o = for_each_decomposition(
      d, spec, budget, constraint,
      [&](const Decomposition& dec) {
        if (!verify_decomposition(d, dec, spec)) throw std::logic_error("oracle enumerated an invalid decomposition");
        r.decompositions.push_back(dec);
        return true;
      },
      &r.nodes_visited);
  r.budget_exceeded = o == Outcome::BudgetExceeded;
  if (r.budget_exceeded) r.decompositions.clear();
  std::sort(r.decompositions.begin(), r.decompositions.end());
  return r;
}

}  // namespace forestdec
