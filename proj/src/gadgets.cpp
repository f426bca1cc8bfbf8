#include "forestdec/gadgets.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <sstream>

namespace forestdec {

namespace {

Error bad(const std::string& what) { return Error(ErrorCode::BadParameter, what); }

std::uint32_t u32(std::size_t x) { return static_cast<std::uint32_t>(x); }

struct Pick {
  std::string name;
  bool swap = false;
};

// Builds a gadget together with its named witness labelings.
class Assembly {
 public:
  explicit Assembly(const std::vector<std::string>& witness_names) {
    for (const auto& n : witness_names) labels_[n];
  }

  VertexId add_vertices(std::size_t n) { return b_.add_vertices(n); }
  VertexId add_vertex() { return b_.add_vertex(); }
  ArcId add_arc(VertexId t, VertexId h) { return b_.add_arc(t, h); }
  ArcId add_arc(std::size_t t, std::size_t h) { return b_.add_arc(vertex(u32(t)), vertex(u32(h))); }
  std::size_t vertex_count() const { return b_.vertex_count(); }

  void set(const std::string& w, ArcId a, Part p) {
    auto& v = labels_.at(w);
    if (v.size() <= index(a)) v.resize(index(a) + 1);
    v[index(a)] = p;
  }
  void set_all(ArcId a, Part p) {
    for (auto& [name, _] : labels_) set(name, a, p);
  }

  // Embeds `g`; each host witness copies the chosen sub witness.
  DigraphBuilder::Embedding embed(const Gadget& g, const std::vector<std::pair<VertexId, VertexId>>& identify,
                                  const std::map<std::string, Pick>& picks) {
    auto e = b_.embed(g.digraph, identify);
    for (const auto& [host, pick] : picks) {
      const Decomposition& sub = g.witness(pick.name);
      for (std::uint32_t a = 0; a < sub.size(); ++a) {
        Part p = sub[arc(a)];
        set(host, e.arc(arc(a)), pick.swap ? other(p) : p);
      }
    }
    return e;
  }
  // Same sub witness for every host witness.
  DigraphBuilder::Embedding embed_all(const Gadget& g, const std::vector<std::pair<VertexId, VertexId>>& identify,
                                      const std::string& sub_name) {
    std::map<std::string, Pick> picks;
    for (const auto& [name, _] : labels_) picks[name] = {sub_name, false};
    return embed(g, identify, picks);
  }

  Gadget finish(ProblemSpec spec) {
    Gadget g;
    g.digraph = b_.build();
    g.spec = spec;
    for (auto& [name, v] : labels_) {
      v.resize(g.digraph.arc_count());
      std::vector<Part> parts;
      parts.reserve(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i]) throw std::logic_error("unlabeled arc " + std::to_string(i) + " in witness " + name);
        parts.push_back(*v[i]);
      }
      g.witnesses.emplace(name, Decomposition(std::move(parts)));
    }
    return g;
  }

 private:
  DigraphBuilder b_;
  std::map<std::string, std::vector<std::optional<Part>>> labels_;
};

constexpr Part F = Part::First;
constexpr Part S = Part::Second;

ProblemSpec lf(std::size_t k, std::size_t l) { return {FamilyKind::LinearForest, Bound(k), Bound(l)}; }

std::string digits(const std::vector<std::size_t>& members) {
  std::string s;
  for (auto m : members) s += std::to_string(m);
  return s;
}

}  // namespace

VertexId Gadget::vertex(const std::string& name) const {
  auto it = vertices.find(name);
  if (it == vertices.end()) throw Error(ErrorCode::UnknownVertex, "no interface vertex " + name);
  return it->second;
}

ArcId Gadget::arc(const std::string& name) const {
  auto it = arcs.find(name);
  if (it == arcs.end()) throw Error(ErrorCode::UnknownArc, "no interface arc " + name);
  return it->second;
}

const Decomposition& Gadget::witness(const std::string& name) const {
  auto it = witnesses.find(name);
  if (it == witnesses.end()) throw bad("no witness " + name);
  return it->second;
}

// ---------------------------------------------------------------- CNF

long first_malformed_clause(const CnfInstance& inst) {
  for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
    const Clause& cl = inst.clauses[c];
    if (cl.empty()) return static_cast<long>(c);
    std::set<std::uint32_t> seen;
    for (const Literal& l : cl)
      if (l.var >= inst.variable_count || !seen.insert(l.var).second) return static_cast<long>(c);
  }
  return -1;
}

bool is_well_formed(const CnfInstance& inst) { return first_malformed_clause(inst) < 0; }

bool validate_3b2sat(const CnfInstance& inst) {
  if (!is_well_formed(inst)) return false;
  std::vector<int> count(2 * inst.variable_count, 0);
  for (const Clause& cl : inst.clauses) {
    if (cl.size() != 3) return false;
    for (const Literal& l : cl) ++count[2 * l.var + (l.positive ? 0 : 1)];
  }
  return std::all_of(count.begin(), count.end(), [](int c) { return c == 2; });
}

bool validate_meksat(const CnfInstance& inst, std::size_t k) {
  if (k < 1 || !is_well_formed(inst)) return false;
  for (const Clause& cl : inst.clauses) {
    if (cl.size() != 2 * k + 1) return false;
    for (const Literal& l : cl)
      if (!l.positive) return false;
  }
  return true;
}

bool satisfies(const CnfInstance& inst, const Assignment& phi) {
  if (phi.size() != inst.variable_count) return false;
  for (const Clause& cl : inst.clauses) {
    bool sat = false;
    for (const Literal& l : cl) sat = sat || phi[l.var] == l.positive;
    if (!sat) return false;
  }
  return true;
}

bool check_me_assignment(const CnfInstance& inst, std::size_t k, const Assignment& phi) {
  if (phi.size() != inst.variable_count) return false;
  for (const Clause& cl : inst.clauses) {
    std::size_t t = 0;
    for (const Literal& l : cl) t += phi[l.var] ? 1 : 0;
    if (t < k || cl.size() - t < k) return false;
  }
  return true;
}

CnfInstance parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  CnfInstance inst;
  long declared = -1;
  bool header = false;
  Clause current;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c" || first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string fmt;
      long v = -1, c = -1;
      if (header || !(ls >> fmt >> v >> c) || fmt != "cnf" || v < 0 || c < 0)
        throw Error(ErrorCode::ParseError, "bad problem line: " + line);
      inst.variable_count = static_cast<std::size_t>(v);
      declared = c;
      header = true;
      continue;
    }
    if (!header) throw Error(ErrorCode::ParseError, "clause before problem line");
    std::istringstream body(line);
    long lit = 0;
    std::string tok;
    while (body >> tok) {
      try {
        std::size_t used = 0;
        lit = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad literal '" + tok + "'");
      }
      if (lit == 0) {
        inst.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      long var = lit < 0 ? -lit : lit;
      if (static_cast<std::size_t>(var) > inst.variable_count)
        throw Error(ErrorCode::ParseError, "literal " + tok + " exceeds variable count");
      current.push_back({static_cast<std::uint32_t>(var - 1), lit > 0});
    }
  }
  if (!header) throw Error(ErrorCode::ParseError, "missing problem line");
  if (!current.empty()) throw Error(ErrorCode::ParseError, "unterminated clause");
  if (static_cast<long>(inst.clauses.size()) != declared)
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(declared) + " clauses, found " +
                                           std::to_string(inst.clauses.size()));
  return inst;
}

std::string emit_dimacs(const CnfInstance& inst) {
  std::ostringstream out;
  out << "p cnf " << inst.variable_count << ' ' << inst.clauses.size() << '\n';
  for (const Clause& cl : inst.clauses) {
    for (const Literal& l : cl) out << (l.positive ? "" : "-") << l.var + 1 << ' ';
    out << "0\n";
  }
  return out.str();
}

// ---------------------------------------------------------------- gadgets

Gadget build_binary_tree_orientation(std::size_t depth, bool toward_tip) {
  if (depth > 24) throw bad("binary tree depth too large");
  std::size_t n = (std::size_t{2} << depth) - 1;
  Assembly as({});
  as.add_vertices(n);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t p = (i - 1) / 2;
    toward_tip ? as.add_arc(i, p) : as.add_arc(p, i);
  }
  Gadget g = as.finish(lf(1, 1));
  g.vertices["tip"] = vertex(0);
  return g;
}

Gadget short_k_in_forcer(std::size_t k) {
  if (k < 2) throw bad("short k-in-forcer needs k >= 2");
  Assembly as({"witness"});
  as.add_vertices(5);  // v1..v4, z
  as.set("witness", as.add_arc(0, 1), F);
  as.set("witness", as.add_arc(1, 2), F);
  as.set("witness", as.add_arc(1, 3), S);
  ArcId a = as.add_arc(0, 4);
  as.set("witness", a, S);
  Gadget g = as.finish(lf(k, 1));
  g.arcs["a"] = a;
  g.vertices["tip"] = vertex(4);
  return g;
}

Gadget long_k_alpha_in_forcer(std::size_t k, std::size_t alpha) {
  if (!(k > alpha && alpha >= 1)) throw bad("long (k,alpha)-in-forcer needs k > alpha >= 1");
  Assembly as({"witness"});
  as.add_vertices(alpha + 1);
  for (std::size_t i = 0; i < alpha; ++i) as.set("witness", as.add_arc(i, i + 1), F);
  Gadget sf = short_k_in_forcer(k);
  for (std::size_t i = 0; i < alpha; ++i) as.embed_all(sf, {{sf.vertex("tip"), vertex(u32(i))}}, "witness");
  Gadget g = as.finish(lf(k, 1));
  g.vertices["tip"] = vertex(u32(alpha));
  return g;
}

Gadget k_variable_gadget(std::size_t k) {
  if (k < 3) throw bad("k-variable gadget needs k >= 3");
  Assembly as({"i0", "i1"});
  as.add_vertices(20);
  auto v = [](std::size_t j) { return j - 1; };        // v1..v12
  auto z = [](std::size_t i) { return 11 + i; };       // z1..z4
  auto y = [](std::size_t i) { return 15 + i; };       // y1..y4
  std::vector<ArcId> cyc(13), a(5), ya(5);
  for (std::size_t j = 1; j <= 12; ++j) cyc[j] = as.add_arc(v(j), v(j % 12 + 1));
  for (std::size_t i = 1; i <= 4; ++i) {
    a[i] = as.add_arc(y(i), z(i));
    ya[i] = as.add_arc(y(i), v(3 * i - 2));
  }
  for (int r = 0; r < 2; ++r) {
    std::string w = r == 0 ? "i0" : "i1";
    for (std::size_t j = 1; j <= 12; ++j) as.set(w, cyc[j], F);
    for (std::size_t i = 1; i <= 4; ++i) {
      as.set(w, a[i], F);
      as.set(w, ya[i], F);
    }
    for (std::size_t j : {2, 6, 8, 12}) as.set(w, cyc[(j - 1 + 3 * r) % 12 + 1], S);
    for (std::size_t i : {1, 3}) as.set(w, a[i + r], S);
    for (std::size_t i : {2, 4}) as.set(w, ya[(i - 1 + r) % 4 + 1], S);
  }
  Gadget lf_ = long_k_alpha_in_forcer(k, k - 2);
  for (std::size_t i = 1; i <= 4; ++i) as.embed_all(lf_, {{lf_.vertex("tip"), vertex(u32(y(i)))}}, "witness");
  Gadget g = as.finish(lf(k, 1));
  for (std::size_t i = 1; i <= 4; ++i) {
    g.arcs["a" + std::to_string(i)] = a[i];
    g.vertices["z" + std::to_string(i)] = vertex(u32(z(i)));
    g.vertices["y" + std::to_string(i)] = vertex(u32(y(i)));
  }
  return g;
}

Gadget k_clause_gadget(std::size_t k) {
  if (k < 3) throw bad("k-clause gadget needs k >= 3");
  static const char* names[7] = {"b1", "b2", "b3", "b1b2", "b1b3", "b2b3", "b1b2b3"};
  Assembly as({names, names + 7});
  as.add_vertices(10);  // v1..v7, y1..y3
  ArcId v1v2 = as.add_arc(0, 1), v3v2 = as.add_arc(2, 1), v3v4 = as.add_arc(2, 3), v4v5 = as.add_arc(3, 4),
        v5v6 = as.add_arc(4, 5), v6v7 = as.add_arc(5, 6), b1 = as.add_arc(0, 7), b2 = as.add_arc(4, 8),
        b3 = as.add_arc(6, 9);
  auto in = [](int i, std::initializer_list<int> s) { return std::find(s.begin(), s.end(), i) != s.end(); };
  for (int i = 0; i < 7; ++i) {
    std::string w = names[i];
    bool left = in(i, {0, 3, 4, 6});
    as.set(w, v1v2, left ? S : F);
    as.set(w, b1, left ? F : S);
    as.set(w, v3v2, left ? F : S);
    as.set(w, v3v4, left ? S : F);
    as.set(w, v4v5, F);
    bool mid = in(i, {0, 2, 4});
    as.set(w, b2, mid ? S : F);
    as.set(w, v5v6, mid ? F : S);
    as.set(w, v6v7, in(i, {2, 4}) ? S : F);
    as.set(w, b3, in(i, {0, 1, 3}) ? S : F);
  }
  if (k >= 4) {
    Gadget lf_ = long_k_alpha_in_forcer(k, k - 3);
    as.embed_all(lf_, {{lf_.vertex("tip"), vertex(2)}}, "witness");
  }
  Gadget g = as.finish(lf(k, 1));
  g.arcs["b1"] = b1;
  g.arcs["b2"] = b2;
  g.arcs["b3"] = b3;
  for (int i = 1; i <= 3; ++i) g.vertices["y" + std::to_string(i)] = vertex(u32(6 + i));
  return g;
}

Gadget kk_minus2_in_forcer(std::size_t k) {
  if (k < 3) throw bad("(k,k,-2)-in-forcer needs k >= 3");
  Gadget tree = build_binary_tree_orientation(k - 3, true);
  Assembly as({"c", "d"});
  std::size_t n = tree.digraph.vertex_count();
  as.add_vertices(n + 1);
  for (std::uint32_t i = 0; i < tree.digraph.arc_count(); ++i) {
    const Arc& t = tree.digraph.arc_at(arc(i));
    ArcId b = as.add_arc(t.tail, t.head);
    Part p = index(t.tail) % 2 == 1 ? F : S;
    as.set("c", b, p);
    as.set("d", b, other(p));
  }
  ArcId a = as.add_arc(0, n);
  as.set("c", a, F);
  as.set("d", a, S);
  Gadget g = as.finish(lf(k, k));
  g.arcs["a"] = a;
  g.vertices["x"] = vertex(0);
  g.vertices["tip"] = vertex(u32(n));
  return g;
}

Gadget long_kl_out_forcer(std::size_t k, std::size_t l) {
  if (!(k > l && l >= 3)) throw bad("long (k,l)-out-forcer needs k > l >= 3");
  Gadget tree = build_binary_tree_orientation(l, false);
  Assembly as({"witness"});
  std::size_t n = tree.digraph.vertex_count();
  as.add_vertices(n + 1);
  for (const Arc& t : tree.digraph.arcs())
    as.set("witness", as.add_arc(t.tail, t.head), index(t.head) % 2 == 1 ? F : S);
  ArcId a = as.add_arc(n, 0);
  as.set("witness", a, F);
  Gadget g = as.finish(lf(k, l));
  g.arcs["a"] = a;
  g.vertices["origin"] = vertex(u32(n));
  g.vertices["y"] = vertex(0);
  return g;
}

Gadget short_kl_out_forcer(std::size_t k, std::size_t l) {
  if (!(k > l && l >= 3)) throw bad("short (k,l)-out-forcer needs k > l >= 3");
  Gadget lo = long_kl_out_forcer(k, l);
  Assembly as({"witness"});
  std::size_t n = lo.digraph.vertex_count();
  as.add_vertices(n + 1);
  const Decomposition& w = lo.witness("witness");
  for (std::uint32_t i = 0; i < lo.digraph.arc_count(); ++i) {
    const Arc& t = lo.digraph.arc_at(arc(i));
    as.set("witness", as.add_arc(t.head, t.tail), w[arc(i)]);
  }
  VertexId y = lo.vertex("origin");
  ArcId a = as.add_arc(vertex(u32(n)), y);
  as.set("witness", a, S);
  Gadget g = as.finish(lf(k, l));
  g.arcs["a"] = a;
  g.vertices["origin"] = vertex(u32(n));
  g.vertices["y"] = y;
  return g;
}

Gadget kl_minus2_in_forcer(std::size_t k, std::size_t l) {
  if (!(k > l && l >= 3)) throw bad("(k,l,-2)-in-forcer needs k > l >= 3");
  std::size_t nu = k - 3, nv = l - 3;
  Assembly as({"c", "d"});
  as.add_vertices(nu + nv + 2);
  std::size_t x = nu + nv, z = x + 1;
  for (std::size_t i = 0; i + 1 < nu; ++i) as.set_all(as.add_arc(i, i + 1), F);
  for (std::size_t i = 0; i + 1 < nv; ++i) as.set_all(as.add_arc(nu + i, nu + i + 1), S);
  as.set_all(as.add_arc(nu - 1, x), F);
  if (nv > 0) as.set_all(as.add_arc(nu + nv - 1, x), S);
  ArcId a = as.add_arc(x, z);
  as.set("c", a, F);
  as.set("d", a, S);
  Gadget sh = short_kl_out_forcer(k, l);
  for (std::size_t i = 0; i < nu; ++i) as.embed_all(sh, {{sh.vertex("origin"), vertex(u32(i))}}, "witness");
  if (nv > 0) {
    Gadget lo = long_kl_out_forcer(k, l);
    for (std::size_t i = 0; i < nv; ++i)
      as.embed_all(lo, {{lo.vertex("origin"), vertex(u32(nu + i))}}, "witness");
  }
  Gadget g = as.finish(lf(k, l));
  g.arcs["a"] = a;
  g.vertices["x"] = vertex(u32(x));
  g.vertices["tip"] = vertex(u32(z));
  return g;
}

Gadget k2_alpha_in_forcer(std::size_t k, std::size_t alpha) {
  if (!(k >= 3 && alpha >= 1 && alpha <= k)) throw bad("(k,2,alpha)-in-forcer needs k >= 3 and 1 <= alpha <= k");
  Assembly as({"c"});
  as.add_vertices(alpha + 1 + 6 * alpha);
  ArcId a{};
  for (std::size_t i = 1; i <= alpha; ++i) {
    std::size_t vi = i - 1, vn = i;
    std::size_t base = alpha + 1 + 6 * (i - 1);
    std::size_t u = base, w = base + 1, x1 = base + 2, x2 = base + 3, y1 = base + 4, y2 = base + 5;
    ArcId spine = as.add_arc(vn, vi);
    if (i == 1) a = spine;
    as.set("c", spine, F);
    as.set("c", as.add_arc(u, x1), F);
    as.set("c", as.add_arc(u, x2), S);
    as.set("c", as.add_arc(w, u), F);
    as.set("c", as.add_arc(vn, u), S);
    as.set("c", as.add_arc(y1, w), F);
    as.set("c", as.add_arc(y2, w), S);
  }
  Gadget g = as.finish(lf(k, 2));
  g.arcs["a"] = a;
  g.vertices["tip"] = vertex(0);
  return g;
}

namespace {

Gadget klt_spine(std::size_t k, std::size_t l, std::size_t t) {
  Gadget forcer = k == l ? kk_minus2_in_forcer(k) : kl_minus2_in_forcer(k, l);
  Assembly as({"c", "d"});
  as.add_vertices(4 * t + 2);
  auto u = [](std::size_t i) { return i; };
  auto v = [t](std::size_t i) { return 2 * t + i; };
  std::vector<ArcId> ua(2 * t + 1), va(2 * t);
  for (std::size_t i = 1; i <= 2 * t; ++i) ua[i] = as.add_arc(u(i - 1), u(i));
  for (std::size_t i = 1; i < 2 * t; ++i) va[i] = as.add_arc(u(i), v(i));
  ArcId w1 = as.add_arc(u(2 * t), 4 * t), w2 = as.add_arc(u(2 * t), 4 * t + 1);
  for (const char* w : {"c", "d"}) {
    Part odd = std::string(w) == "c" ? F : S;
    for (std::size_t i = 1; i <= 2 * t; ++i) {
      Part p = i % 2 == 1 ? odd : other(odd);
      as.set(w, ua[i], p);
      if (i < 2 * t) as.set(w, va[i], p);
    }
    as.set(w, w1, F);
    as.set(w, w2, S);
  }
  VertexId tip = forcer.vertex("tip");
  as.embed(forcer, {{tip, vertex(0)}}, {{"c", {"c"}}, {"d", {"c"}}});
  as.embed(forcer, {{tip, vertex(0)}}, {{"c", {"d"}}, {"d", {"d"}}});
  for (std::size_t i = 1; i < 2 * t; ++i) {
    // Forcer part is opposite to the spine arc entering u_i.
    std::string for_c = i % 2 == 1 ? "d" : "c";
    std::string for_d = i % 2 == 1 ? "c" : "d";
    as.embed(forcer, {{tip, vertex(u32(u(i)))}}, {{"c", {for_c}}, {"d", {for_d}}});
  }
  Gadget g = as.finish(lf(k, l));
  for (std::size_t i = 1; i <= t; ++i) {
    g.arcs["a" + std::to_string(i)] = va[2 * i - 1];
    g.vertices["head" + std::to_string(i)] = vertex(u32(v(2 * i - 1)));
  }
  return g;
}

Gadget k2t(std::size_t k, std::size_t t) {
  Assembly as({"c", "d"});
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> id;
  for (std::size_t i = 1; i <= t; ++i)
    for (std::size_t j = 1; j <= 7; ++j)
      if (!(i == t && j >= 6)) id[{i, j}] = index(as.add_vertex());
  std::size_t w = index(as.add_vertex());
  auto V = [&](std::size_t i, std::size_t j) { return id.at({i, j}); };
  // Arcs listed here go to First in "c" and Second in "d"; the other core
  // arcs take the opposite parts.
  auto core = [&](std::size_t t_, std::size_t h, bool special) {
    ArcId b = as.add_arc(t_, h);
    as.set("c", b, special ? F : S);
    as.set("d", b, special ? S : F);
    return b;
  };
  std::vector<ArcId> a(t + 1);
  for (std::size_t i = 1; i <= t; ++i) {
    core(V(i, 2), V(i, 1), false);
    core(V(i, 2), V(i, 3), true);
    core(V(i, 4), V(i, 3), false);
    a[i] = core(V(i, 4), V(i, 5), true);
    if (i < t) {
      core(V(i, 1), V(i, 6), false);
      core(V(i, 7), V(i, 6), true);
      core(V(i, 6), V(i + 1, 1), true);
    }
  }
  core(w, V(1, 1), true);
  std::vector<std::size_t> tops{w};
  for (std::size_t i = 1; i <= t; ++i) tops.push_back(V(i, 4));
  if (k == 2) {
    for (std::size_t top : tops) {
      ArcId p = as.add_arc(index(as.add_vertex()), top);
      ArcId q = as.add_arc(index(as.add_vertex()), top);
      as.set("c", p, F);
      as.set("c", q, S);
      as.set("d", p, S);
      as.set("d", q, F);
    }
  } else {
    Gadget f2 = k2_alpha_in_forcer(k, k - 2), f1 = k2_alpha_in_forcer(k, k - 1);
    for (std::size_t i = 1; i <= t; ++i) {
      as.embed_all(f2, {{f2.vertex("tip"), vertex(u32(V(i, 2)))}}, "c");
      if (i < t) as.embed_all(f2, {{f2.vertex("tip"), vertex(u32(V(i, 7)))}}, "c");
    }
    for (std::size_t top : tops) {
      as.embed_all(f1, {{f1.vertex("tip"), vertex(u32(top))}}, "c");
      as.set_all(as.add_arc(index(as.add_vertex()), top), S);
    }
  }
  Gadget g = as.finish(lf(k, 2));
  for (std::size_t i = 1; i <= t; ++i) {
    g.arcs["a" + std::to_string(i)] = a[i];
    g.vertices["head" + std::to_string(i)] = vertex(u32(V(i, 5)));
  }
  return g;
}

// Swaps parts and renames Z-named witnesses to their complements.
Gadget swap_clause_roles(Gadget g, ProblemSpec spec) {
  std::map<std::string, Decomposition> w;
  for (auto& [name, d] : g.witnesses) {
    std::string comp;
    for (char c : std::string("123"))
      if (name.find(c) == std::string::npos) comp += c;
    w.emplace(comp, d.swapped());
  }
  g.witnesses = std::move(w);
  g.spec = spec;
  return g;
}

}  // namespace

Gadget klt_variable_gadget(std::size_t k, std::size_t l, std::size_t t) {
  if (!(k >= l && l >= 2 && t >= 1)) throw bad("(k,l,t)-variable gadget needs k >= l >= 2 and t >= 1");
  return l == 2 ? k2t(k, t) : klt_spine(k, l, t);
}

Gadget kl_clause_gadget_dlf(std::size_t k, std::size_t l) {
  if (std::min(k, l) < 2) throw bad("(k,l)-clause gadget needs min(k,l) >= 2");
  if (std::min(k, l) >= 3) {
    Assembly as({"1", "2", "3", "12", "13", "23"});
    as.add_vertices(6);  // y1..y3, t1..t3
    std::vector<ArcId> a, tri;
    for (std::size_t i = 0; i < 3; ++i) a.push_back(as.add_arc(3 + i, i));
    for (std::size_t i = 0; i < 3; ++i) tri.push_back(as.add_arc(i, (i + 1) % 3));
    for (std::size_t i = 0; i < 3; ++i) {
      std::size_t j = (i + 1) % 3, h = (i + 2) % 3;
      std::vector<std::size_t> pair{i + 1, j + 1};
      std::sort(pair.begin(), pair.end());
      std::string both = digits(pair), single = std::to_string(h + 1);
      // y_{j} y_{h} is tri[j].
      for (std::size_t x = 0; x < 3; ++x) {
        bool first = x == i || x == j;
        as.set(both, a[x], first ? F : S);
        as.set(single, a[x], first ? S : F);
        as.set(both, tri[x], x == j ? F : S);
        as.set(single, tri[x], x == j ? S : F);
      }
    }
    Gadget g = as.finish(lf(k, l));
    for (std::size_t i = 0; i < 3; ++i) {
      g.arcs["a" + std::to_string(i + 1)] = a[i];
      g.vertices["t" + std::to_string(i + 1)] = vertex(u32(3 + i));
    }
    return g;
  }
  if (l != 2) return swap_clause_roles(kl_clause_gadget_dlf(l, k), lf(k, l));
  static const std::pair<const char*, const char*> table[6] = {
      {"1", "GRRRGGR"}, {"2", "RGRGRGR"}, {"3", "RRGGRRG"},
      {"12", "GGRGRGR"}, {"13", "GRGRGRG"}, {"23", "RGGGRRG"}};
  Assembly as({"1", "2", "3", "12", "13", "23"});
  as.add_vertices(8);  // v1..v5, t1..t3
  std::vector<ArcId> arcs{as.add_arc(0, 5), as.add_arc(1, 6), as.add_arc(7, 2), as.add_arc(3, 0),
                          as.add_arc(3, 1), as.add_arc(4, 2), as.add_arc(4, 3)};
  for (const auto& [name, row] : table)
    for (std::size_t i = 0; i < arcs.size(); ++i) as.set(name, arcs[i], row[i] == 'G' ? F : S);
  if (k >= 3) {
    Gadget f = k2_alpha_in_forcer(k, k - 2);
    as.embed_all(f, {{f.vertex("tip"), vertex(4)}}, "c");
  }
  Gadget g = as.finish(lf(k, 2));
  for (std::size_t i = 0; i < 3; ++i) {
    g.arcs["a" + std::to_string(i + 1)] = arcs[i];
    g.vertices["t" + std::to_string(i + 1)] = vertex(u32(5 + i));
  }
  return g;
}

Gadget q_variable_gadget_bogd(std::size_t q) {
  if (q < 1) throw bad("q-variable gadget needs q >= 1");
  Assembly as({"S_first", "S_second"});
  as.add_vertices(3 * q);
  for (std::size_t j = 1; j < 2 * q; ++j) {
    ArcId b = as.add_arc(j - 1, j);
    as.set("S_second", b, j % 2 == 1 ? F : S);
    as.set("S_first", b, j % 2 == 1 ? S : F);
  }
  std::vector<VertexId> s;
  for (std::size_t i = 1; i <= q; ++i) {
    ArcId b = as.add_arc(2 * i - 1, 2 * q + i - 1);
    as.set("S_second", b, S);
    as.set("S_first", b, F);
    s.push_back(vertex(u32(2 * q + i - 1)));
  }
  Gadget g = as.finish({FamilyKind::OutGalaxy, Bound(2), Bound(2)});
  g.vertex_sets["S"] = s;
  return g;
}

Gadget kl_alpha_clause_gadget_bogd(Bound k, std::size_t l, std::size_t alpha1, std::size_t alpha2) {
  if (l < 2) throw bad("clause gadget needs l >= 2");
  if (!(k.is_infinite() || k.value() >= l + 1)) throw bad("clause gadget needs k >= l+1");
  if (alpha1 + alpha2 != l + 1) throw bad("clause gadget needs alpha1 + alpha2 = l+1");
  Assembly as({});
  as.add_vertices(1 + alpha1 + 2 * alpha2);
  std::vector<VertexId> s1, s2;
  for (std::size_t i = 0; i < alpha1; ++i) {
    as.add_arc(0, 1 + i);
    s1.push_back(vertex(u32(1 + i)));
  }
  for (std::size_t i = 0; i < alpha2; ++i) {
    std::size_t s = 1 + alpha1 + i, u = 1 + alpha1 + alpha2 + i;
    as.add_arc(0, u);
    as.add_arc(u, s);
    s2.push_back(vertex(u32(s)));
  }
  Gadget g = as.finish({FamilyKind::OutGalaxy, k, Bound(l)});
  g.vertices["r"] = vertex(0);
  g.vertex_sets["S1"] = s1;
  g.vertex_sets["S2"] = s2;
  return g;
}

Decomposition bogd_clause_factorization(std::size_t alpha1, std::size_t alpha2, const std::vector<bool>& in_first) {
  if (in_first.size() != alpha1 + alpha2) throw bad("flag count must be alpha1 + alpha2");
  Decomposition d(alpha1 + 2 * alpha2, S);
  for (std::size_t i = 0; i < alpha1; ++i) d.set(arc(u32(i)), in_first[i] ? F : S);
  for (std::size_t i = 0; i < alpha2; ++i) {
    bool f = in_first[alpha1 + i];
    d.set(arc(u32(alpha1 + 2 * i)), f ? S : F);
    d.set(arc(u32(alpha1 + 2 * i + 1)), f ? F : S);
  }
  return d;
}

// ---------------------------------------------------------------- reductions

const char* reduction_name(ReductionKind kind) noexcept {
  switch (kind) {
    case ReductionKind::ThreeB2Sat: return "3b2sat-bdlfd";
    case ReductionKind::Me1Sat: return "me1sat-bdlfd";
    case ReductionKind::Hamiltonicity: return "hamiltonicity-bdlfd";
    case ReductionKind::MekSatBogd: return "meksat-bogd";
    case ReductionKind::LPlus1SatBogd: return "sat-bogd";
  }
  return "?";
}

namespace {

PlacedGadget place(DigraphBuilder& b, const Gadget& g, const std::string& name,
                   const std::vector<std::pair<VertexId, VertexId>>& identify) {
  auto e = b.embed(g.digraph, identify);
  PlacedGadget p;
  p.name = name;
  p.arc_map = e.arc_map;
  for (const auto& [n, a] : g.arcs) p.arcs[n] = e.arc(a);
  for (const auto& [n, v] : g.vertices) p.vertices[n] = e.vertex(v);
  for (const auto& [n, vs] : g.vertex_sets)
    for (std::size_t i = 0; i < vs.size(); ++i) p.vertices[n + std::to_string(i + 1)] = e.vertex(vs[i]);
  p.witnesses = g.witnesses;
  return p;
}

void paint(Decomposition& host, const PlacedGadget& p, const Decomposition& local) {
  for (std::size_t i = 0; i < p.arc_map.size(); ++i) host.set(p.arc_map[i], local[arc(u32(i))]);
}

// Occurrences of each variable as (clause, position), in clause order.
std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> occurrences(const CnfInstance& inst) {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> occ(inst.variable_count);
  for (std::uint32_t c = 0; c < inst.clauses.size(); ++c)
    for (std::uint32_t j = 0; j < inst.clauses[c].size(); ++j)
      occ[inst.clauses[c][j].var].push_back({c, j});
  return occ;
}

void require_source(bool ok, const CnfInstance& inst, const std::string& what) {
  if (ok) return;
  long bad_clause = first_malformed_clause(inst);
  std::string where = bad_clause >= 0 ? " (clause " + std::to_string(bad_clause) + ")" : "";
  throw Error(ErrorCode::InvalidSource, "source is not a valid " + what + " instance" + where);
}

void require_width(const CnfInstance& inst, std::size_t width, const std::string& what) {
  for (std::size_t c = 0; c < inst.clauses.size(); ++c)
    if (inst.clauses[c].size() != width)
      throw Error(ErrorCode::InvalidSource,
                  what + ": clause " + std::to_string(c) + " has " + std::to_string(inst.clauses[c].size()) +
                      " literals, expected " + std::to_string(width));
}

}  // namespace

ReductionOutput reduce_3b2sat_to_bdlfd(const CnfInstance& inst, std::size_t k) {
  if (k < 3) throw bad("(3,B2)-SAT reduction needs k >= 3");
  require_source(is_well_formed(inst), inst, "(3,B2)-SAT");
  require_width(inst, 3, "(3,B2)-SAT");
  require_source(validate_3b2sat(inst), inst, "(3,B2)-SAT");
  ReductionOutput red;
  red.kind = ReductionKind::ThreeB2Sat;
  red.spec = lf(k, 1);
  red.source = inst;
  red.parameter = k;
  Gadget var = k_variable_gadget(k), cl = k_clause_gadget(k);
  DigraphBuilder b;
  auto occ = occurrences(inst);
  // slot_of[clause][position] = interface slot 1..4 of the variable gadget.
  std::vector<std::vector<int>> slot_of(inst.clauses.size(), std::vector<int>(3, 0));
  for (std::uint32_t x = 0; x < inst.variable_count; ++x) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pos, neg;
    for (auto o : occ[x]) (inst.clauses[o.first][o.second].positive ? pos : neg).push_back(o);
    std::pair<std::uint32_t, std::uint32_t> order[4] = {pos[0], neg[0], pos[1], neg[1]};
    for (int s = 0; s < 4; ++s) slot_of[order[s].first][order[s].second] = s + 1;
    red.variable_gadgets.push_back(place(b, var, "k-variable-gadget", {}));
  }
  for (std::uint32_t c = 0; c < inst.clauses.size(); ++c) {
    std::vector<std::pair<VertexId, VertexId>> ident;
    for (std::uint32_t j = 0; j < 3; ++j) {
      const PlacedGadget& vg = red.variable_gadgets[inst.clauses[c][j].var];
      VertexId z = vg.vertices.at("z" + std::to_string(slot_of[c][j]));
      ident.push_back({cl.vertex("y" + std::to_string(j + 1)), z});
    }
    red.clause_gadgets.push_back(place(b, cl, "k-clause-gadget", ident));
    for (std::uint32_t j = 0; j < 3; ++j) {
      std::uint32_t x = inst.clauses[c][j].var;
      const PlacedGadget& vg = red.variable_gadgets[x];
      red.links.push_back({c, j, x, vg.arcs.at("a" + std::to_string(slot_of[c][j])),
                           red.clause_gadgets.back().arcs.at("b" + std::to_string(j + 1)), ident[j].second});
    }
  }
  red.instance = b.build();
  return red;
}

ReductionOutput reduce_me1sat_to_bdlfd(const CnfInstance& inst, std::size_t k, std::size_t l) {
  if (std::min(k, l) < 2) throw bad("ME-1-SAT reduction needs min(k,l) >= 2");
  require_source(is_well_formed(inst), inst, "ME-1-SAT");
  require_width(inst, 3, "ME-1-SAT");
  require_source(validate_meksat(inst, 1), inst, "ME-1-SAT");
  ReductionOutput red;
  red.kind = ReductionKind::Me1Sat;
  red.spec = lf(k, l);
  red.source = inst;
  red.parameter = 1;
  red.swapped = k < l;
  std::size_t K = std::max(k, l), L = std::min(k, l);
  DigraphBuilder b;
  auto occ = occurrences(inst);
  std::map<std::size_t, Gadget> var_cache;
  for (std::uint32_t x = 0; x < inst.variable_count; ++x) {
    std::size_t q = occ[x].size();
    if (q == 0) {
      red.variable_gadgets.push_back({});
      continue;
    }
    auto it = var_cache.find(q);
    if (it == var_cache.end()) it = var_cache.emplace(q, klt_variable_gadget(K, L, q)).first;
    red.variable_gadgets.push_back(place(b, it->second, "klt-variable-gadget", {}));
  }
  Gadget cl = kl_clause_gadget_dlf(K, L);
  std::vector<std::size_t> seen(inst.variable_count, 0);
  for (std::uint32_t c = 0; c < inst.clauses.size(); ++c) {
    std::vector<std::pair<VertexId, VertexId>> ident;
    std::vector<std::size_t> slot;
    for (std::uint32_t j = 0; j < 3; ++j) {
      std::uint32_t x = inst.clauses[c][j].var;
      slot.push_back(++seen[x]);
      const PlacedGadget& vg = red.variable_gadgets[x];
      ident.push_back({cl.vertex("t" + std::to_string(j + 1)), vg.vertices.at("head" + std::to_string(slot[j]))});
    }
    red.clause_gadgets.push_back(place(b, cl, "kl-clause-gadget", ident));
    for (std::uint32_t j = 0; j < 3; ++j) {
      std::uint32_t x = inst.clauses[c][j].var;
      red.links.push_back({c, j, x, red.variable_gadgets[x].arcs.at("a" + std::to_string(slot[j])),
                           red.clause_gadgets.back().arcs.at("a" + std::to_string(j + 1)), ident[j].second});
    }
  }
  red.instance = b.build();
  return red;
}

bool is_2diregular(const Digraph& d) {
  for (std::uint32_t v = 0; v < d.vertex_count(); ++v)
    if (d.degrees(vertex(v)) != Degrees{2, 2}) return false;
  return true;
}

ReductionOutput reduce_hamiltonicity_to_bdlfd(const Digraph& d2, std::size_t k) {
  if (k < 1) throw bad("hamiltonicity reduction needs k >= 1");
  if (!is_2diregular(d2)) throw Error(ErrorCode::NotDiregular, "source digraph is not 2-diregular");
  ReductionOutput red;
  red.kind = ReductionKind::Hamiltonicity;
  red.spec = {FamilyKind::LinearForest, Bound::infinity(), Bound(k)};
  red.source_digraph = d2;
  red.parameter = k;
  std::size_t n = d2.vertex_count();
  DigraphBuilder b;
  b.add_vertices(2 * n);
  auto plus = [](std::uint32_t v) { return vertex(2 * v); };
  auto minus = [](std::uint32_t v) { return vertex(2 * v + 1); };
  for (const Arc& a : d2.arcs()) red.source_arc_map.push_back(b.add_arc(plus(index(a.tail)), minus(index(a.head))));
  red.widget_first.assign(n, {});
  red.widget_second.assign(n, {});
  for (std::uint32_t v = 1; v < n; ++v) {
    auto& first = red.widget_first[v];
    auto& second = red.widget_second[v];
    if (k == 1) {
      first.push_back(b.add_arc(minus(v), plus(v)));
      continue;
    }
    // chain[i], prime[i] for i = 2..k
    std::vector<VertexId> chain(k + 1), prime(k + 1);
    for (std::size_t i = 2; i <= k; ++i) {
      chain[i] = b.add_vertex();
      prime[i] = b.add_vertex();
    }
    second.push_back(b.add_arc(minus(v), chain[2]));
    first.push_back(b.add_arc(minus(v), prime[2]));
    first.push_back(b.add_arc(prime[2], chain[2]));
    for (std::size_t i = 3; i <= k; ++i) {
      second.push_back(b.add_arc(chain[i - 1], chain[i]));
      first.push_back(b.add_arc(chain[i - 1], prime[i]));
      first.push_back(b.add_arc(prime[i], chain[i]));
    }
    first.push_back(b.add_arc(chain[k], plus(v)));
  }
  red.instance = b.build();
  return red;
}

ReductionOutput reduce_meksat_to_bogd_kk(const CnfInstance& inst, std::size_t k) {
  if (k < 2) throw bad("(k,k)-BOGD reduction needs k >= 2");
  require_source(is_well_formed(inst), inst, "ME-" + std::to_string(k - 1) + "-SAT");
  require_width(inst, 2 * k - 1, "ME-" + std::to_string(k - 1) + "-SAT");
  require_source(validate_meksat(inst, k - 1), inst, "ME-" + std::to_string(k - 1) + "-SAT");
  ReductionOutput red;
  red.kind = ReductionKind::MekSatBogd;
  red.spec = {FamilyKind::OutGalaxy, Bound(k), Bound(k)};
  red.source = inst;
  red.parameter = k - 1;
  DigraphBuilder b;
  auto occ = occurrences(inst);
  for (std::uint32_t x = 0; x < inst.variable_count; ++x) {
    if (occ[x].empty()) {
      red.variable_gadgets.push_back({});
      continue;
    }
    red.variable_gadgets.push_back(place(b, q_variable_gadget_bogd(occ[x].size()), "q-variable-gadget", {}));
  }
  std::vector<std::size_t> seen(inst.variable_count, 0);
  std::size_t width = 2 * k - 1;
  Assembly star_as({});
  star_as.add_vertices(width + 1);
  for (std::size_t i = 1; i <= width; ++i) star_as.add_arc(0, i);
  Gadget star = star_as.finish(red.spec);
  for (std::size_t i = 1; i <= width; ++i) star.arcs["a" + std::to_string(i)] = arc(u32(i - 1));
  for (std::uint32_t c = 0; c < inst.clauses.size(); ++c) {
    std::vector<std::pair<VertexId, VertexId>> ident;
    for (std::uint32_t j = 0; j < width; ++j) {
      std::uint32_t x = inst.clauses[c][j].var;
      ident.push_back({vertex(j + 1), red.variable_gadgets[x].vertices.at("S" + std::to_string(++seen[x]))});
    }
    red.clause_gadgets.push_back(place(b, star, "out-star", ident));
  }
  red.instance = b.build();
  for (std::uint32_t c = 0; c < inst.clauses.size(); ++c)
    for (std::uint32_t j = 0; j < width; ++j) {
      const PlacedGadget& cg = red.clause_gadgets[c];
      ArcId ca = cg.arcs.at("a" + std::to_string(j + 1));
      VertexId s = red.instance.head(ca);
      ArcId va = red.instance.in_arcs(s)[0] == ca ? red.instance.in_arcs(s)[1] : red.instance.in_arcs(s)[0];
      red.links.push_back({c, j, inst.clauses[c][j].var, va, ca, s});
    }
  return red;
}

ReductionOutput reduce_lplus1sat_to_bogd_kl(const CnfInstance& inst, Bound k, std::size_t l) {
  if (l < 2) throw bad("(k,l)-BOGD reduction needs l >= 2");
  if (!(k.is_infinite() || k.value() >= l + 1)) throw bad("(k,l)-BOGD reduction needs k >= l+1");
  require_source(is_well_formed(inst), inst, std::to_string(l + 1) + "-SAT");
  require_width(inst, l + 1, std::to_string(l + 1) + "-SAT");
  ReductionOutput red;
  red.kind = ReductionKind::LPlus1SatBogd;
  red.spec = {FamilyKind::OutGalaxy, k, Bound(l)};
  red.source = inst;
  red.parameter = l;
  DigraphBuilder b;
  auto occ = occurrences(inst);
  for (std::uint32_t x = 0; x < inst.variable_count; ++x) {
    if (occ[x].empty()) {
      red.variable_gadgets.push_back({});
      continue;
    }
    red.variable_gadgets.push_back(place(b, q_variable_gadget_bogd(occ[x].size()), "q-variable-gadget", {}));
  }
  std::vector<std::size_t> seen(inst.variable_count, 0);
  std::map<std::size_t, Gadget> cache;
  std::vector<std::vector<std::uint32_t>> order(inst.clauses.size());
  for (std::uint32_t c = 0; c < inst.clauses.size(); ++c) {
    const Clause& cl = inst.clauses[c];
    std::vector<std::uint32_t> pos, neg;
    for (std::uint32_t j = 0; j < cl.size(); ++j) (cl[j].positive ? pos : neg).push_back(j);
    auto it = cache.find(pos.size());
    if (it == cache.end()) it = cache.emplace(pos.size(), kl_alpha_clause_gadget_bogd(k, l, pos.size(), neg.size())).first;
    const Gadget& g = it->second;
    std::vector<VertexId> svs = g.vertex_sets.at("S1");
    svs.insert(svs.end(), g.vertex_sets.at("S2").begin(), g.vertex_sets.at("S2").end());
    order[c] = pos;
    order[c].insert(order[c].end(), neg.begin(), neg.end());
    std::vector<VertexId> host(cl.size());
    for (std::uint32_t j = 0; j < cl.size(); ++j) {
      std::uint32_t x = cl[j].var;
      host[j] = red.variable_gadgets[x].vertices.at("S" + std::to_string(++seen[x]));
    }
    std::vector<std::pair<VertexId, VertexId>> ident;
    for (std::size_t s = 0; s < order[c].size(); ++s) ident.push_back({svs[s], host[order[c][s]]});
    red.clause_gadgets.push_back(place(b, g, "kl-alpha-clause-gadget", ident));
  }
  red.instance = b.build();
  // Links: the merged vertex has one in-arc from each side.
  for (std::uint32_t c = 0; c < inst.clauses.size(); ++c) {
    const PlacedGadget& cg = red.clause_gadgets[c];
    std::set<ArcId> own(cg.arc_map.begin(), cg.arc_map.end());
    std::size_t a1 = 0;
    for (const Literal& lit : inst.clauses[c]) a1 += lit.positive ? 1 : 0;
    for (std::size_t s = 0; s < order[c].size(); ++s) {
      std::string key = s < a1 ? "S1" + std::to_string(s + 1) : "S2" + std::to_string(s - a1 + 1);
      VertexId v = cg.vertices.at(key);
      auto ins = red.instance.in_arcs(v);
      ArcId ca = own.count(ins[0]) ? ins[0] : ins[1];
      ArcId va = ca == ins[0] ? ins[1] : ins[0];
      std::uint32_t j = order[c][s];
      red.links.push_back({c, j, inst.clauses[c][j].var, va, ca, v});
    }
  }
  return red;
}

// ---------------------------------------------------------------- translation

namespace {

bool source_ok(const ReductionOutput& red, const Assignment& phi) {
  switch (red.kind) {
    case ReductionKind::ThreeB2Sat:
    case ReductionKind::LPlus1SatBogd: return satisfies(red.source, phi);
    case ReductionKind::Me1Sat:
    case ReductionKind::MekSatBogd: return check_me_assignment(red.source, red.parameter, phi);
    case ReductionKind::Hamiltonicity: break;
  }
  return false;
}

void require_sat_kind(const ReductionOutput& red) {
  if (red.kind == ReductionKind::Hamiltonicity)
    throw bad("hamiltonicity reductions translate cycles, not assignments");
}

}  // namespace

Decomposition assignment_to_labeling(const ReductionOutput& red, const Assignment& phi) {
  require_sat_kind(red);
  if (phi.size() != red.source.variable_count) throw bad("assignment size differs from variable count");
  Decomposition dec(red.instance.arc_count(), F);
  const CnfInstance& inst = red.source;
  for (std::uint32_t x = 0; x < inst.variable_count; ++x) {
    const PlacedGadget& vg = red.variable_gadgets[x];
    if (vg.name.empty()) continue;
    std::string w;
    switch (red.kind) {
      case ReductionKind::ThreeB2Sat: w = phi[x] ? "i0" : "i1"; break;
      case ReductionKind::Me1Sat: w = phi[x] ? "c" : "d"; break;
      case ReductionKind::MekSatBogd: w = phi[x] ? "S_first" : "S_second"; break;
      case ReductionKind::LPlus1SatBogd: w = phi[x] ? "S_second" : "S_first"; break;
      case ReductionKind::Hamiltonicity: break;
    }
    paint(dec, vg, vg.witnesses.at(w));
  }
  for (std::uint32_t c = 0; c < inst.clauses.size(); ++c) {
    const PlacedGadget& cg = red.clause_gadgets[c];
    const Clause& cl = inst.clauses[c];
    switch (red.kind) {
      case ReductionKind::ThreeB2Sat: {
        std::string w;
        for (std::size_t j = 0; j < 3; ++j)
          if (phi[cl[j].var] == cl[j].positive) w += "b" + std::to_string(j + 1);
        paint(dec, cg, cg.witnesses.at(w.empty() ? "b1" : w));
        break;
      }
      case ReductionKind::Me1Sat: {
        std::string z;
        for (std::size_t j = 0; j < 3; ++j)
          if (!phi[cl[j].var]) z += std::to_string(j + 1);
        if (z.empty()) z = "1";
        if (z == "123") z = "12";
        paint(dec, cg, cg.witnesses.at(z));
        break;
      }
      case ReductionKind::MekSatBogd:
        for (std::size_t j = 0; j < cl.size(); ++j)
          dec.set(cg.arcs.at("a" + std::to_string(j + 1)), phi[cl[j].var] ? S : F);
        break;
      case ReductionKind::LPlus1SatBogd: {
        std::vector<bool> flags;
        for (const Literal& lit : cl)
          if (lit.positive) flags.push_back(phi[lit.var]);
        for (const Literal& lit : cl)
          if (!lit.positive) flags.push_back(phi[lit.var]);
        std::size_t a1 = 0;
        for (const Literal& lit : cl) a1 += lit.positive ? 1 : 0;
        paint(dec, cg, bogd_clause_factorization(a1, cl.size() - a1, flags));
        break;
      }
      case ReductionKind::Hamiltonicity: break;
    }
  }
  return red.swapped ? dec.swapped() : dec;
}

Decomposition assignment_to_decomposition(const ReductionOutput& red, const Assignment& phi) {
  require_sat_kind(red);
  if (!source_ok(red, phi))
    throw Error(ErrorCode::UnsatisfiedPrecondition, "assignment does not satisfy the source instance");
  return assignment_to_labeling(red, phi);
}

Assignment decomposition_to_assignment(const ReductionOutput& red, const Decomposition& dec) {
  require_sat_kind(red);
  if (dec.size() != red.instance.arc_count() || !verify_decomposition(red.instance, dec, red.spec))
    throw Error(ErrorCode::InvalidDecomposition, "decomposition does not verify under " + red.spec.to_string());
  Decomposition d = red.swapped ? dec.swapped() : dec;
  const CnfInstance& inst = red.source;
  Assignment phi(inst.variable_count, false);
  for (std::uint32_t x = 0; x < inst.variable_count; ++x) {
    const PlacedGadget& vg = red.variable_gadgets[x];
    if (vg.name.empty()) continue;
    switch (red.kind) {
      case ReductionKind::ThreeB2Sat:
        phi[x] = d[vg.arcs.at("a2")] == F && d[vg.arcs.at("a4")] == F;
        break;
      case ReductionKind::Me1Sat: phi[x] = d[vg.arcs.at("a1")] == F; break;
      case ReductionKind::MekSatBogd:
      case ReductionKind::LPlus1SatBogd: {
        // The merged S vertex has two in-arcs; take the one inside the gadget.
        std::set<ArcId> own(vg.arc_map.begin(), vg.arc_map.end());
        Part want = red.kind == ReductionKind::MekSatBogd ? F : S;
        for (ArcId a : red.instance.in_arcs(vg.vertices.at("S1")))
          if (own.count(a)) phi[x] = d[a] == want;
        break;
      }
      case ReductionKind::Hamiltonicity: break;
    }
  }
  if (!source_ok(red, phi))
    throw Error(ErrorCode::InvalidDecomposition, "extracted assignment violates the source instance");
  return phi;
}

bool is_hamiltonian_cycle(const Digraph& d, const std::vector<ArcId>& cycle) {
  std::size_t n = d.vertex_count();
  if (n == 0 || cycle.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (!d.has_arc(cycle[i])) return false;
    VertexId t = d.tail(cycle[i]);
    if (seen[index(t)]) return false;
    seen[index(t)] = true;
    if (d.head(cycle[i]) != d.tail(cycle[(i + 1) % n])) return false;
  }
  return true;
}

Decomposition cycle_to_decomposition(const ReductionOutput& red, const std::vector<ArcId>& cycle) {
  if (red.kind != ReductionKind::Hamiltonicity) throw bad("not a hamiltonicity reduction");
  if (!is_hamiltonian_cycle(red.source_digraph, cycle))
    throw Error(ErrorCode::UnsatisfiedPrecondition, "arcs do not form a hamiltonian cycle");
  Decomposition dec(red.instance.arc_count(), S);
  for (ArcId a : cycle) dec.set(red.source_arc_map[index(a)], F);
  for (std::size_t v = 0; v < red.widget_first.size(); ++v) {
    for (ArcId a : red.widget_first[v]) dec.set(a, F);
    for (ArcId a : red.widget_second[v]) dec.set(a, S);
  }
  return dec;
}

std::vector<ArcId> decomposition_to_cycle(const ReductionOutput& red, const Decomposition& dec) {
  if (red.kind != ReductionKind::Hamiltonicity) throw bad("not a hamiltonicity reduction");
  if (dec.size() != red.instance.arc_count() || !verify_decomposition(red.instance, dec, red.spec))
    throw Error(ErrorCode::InvalidDecomposition, "decomposition does not verify under " + red.spec.to_string());
  const Digraph& d2 = red.source_digraph;
  std::size_t n = d2.vertex_count();
  std::vector<std::optional<ArcId>> next(n);
  for (std::uint32_t a = 0; a < d2.arc_count(); ++a) {
    if (dec[red.source_arc_map[a]] != F) continue;
    auto& slot = next[index(d2.tail(arc(a)))];
    if (slot) throw Error(ErrorCode::InvalidDecomposition, "two cycle arcs leave one vertex");
    slot = arc(a);
  }
  std::vector<ArcId> cycle;
  VertexId v = vertex(0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!next[index(v)]) throw Error(ErrorCode::InvalidDecomposition, "cycle arcs do not close up");
    cycle.push_back(*next[index(v)]);
    v = d2.head(cycle.back());
  }
  if (!is_hamiltonian_cycle(d2, cycle)) throw Error(ErrorCode::InvalidDecomposition, "not a hamiltonian cycle");
  return cycle;
}

Digraph generate_2diregular(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw bad("2-diregular generation needs n >= 3");
  std::mt19937_64 rng(seed);
  auto derangement = [&](const std::vector<std::uint32_t>* avoid) {
    std::vector<std::uint32_t> p(n);
    for (int attempt = 0;; ++attempt) {
      for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
      std::shuffle(p.begin(), p.end(), rng);
      bool ok = true;
      for (std::uint32_t i = 0; i < n && ok; ++i) {
        ok = p[i] != i;
        if (ok && avoid && attempt < 2000) ok = p[i] != (*avoid)[i];
      }
      if (ok) return p;
    }
  };
  auto s1 = derangement(nullptr);
  auto s2 = derangement(&s1);
  std::vector<Arc> arcs;
  for (std::uint32_t v = 0; v < n; ++v) arcs.push_back({vertex(v), vertex(s1[v])});
  for (std::uint32_t v = 0; v < n; ++v) arcs.push_back({vertex(v), vertex(s2[v])});
  return build_digraph(n, arcs);
}

}  // namespace forestdec
