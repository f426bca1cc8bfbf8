#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "forestdec/gadgets.hpp"
#include "forestdec/io.hpp"
#include "forestdec/oracle.hpp"
#include "forestdec/polysolve.hpp"
#include "json.hpp"

namespace forestdec::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpecFlags {
  std::string family, k, l;
};

void add_spec_flags(CLI::App* cmd, SpecFlags& f) {
  cmd->add_option("--family", f.family, "LinearForest (lf) or OutGalaxy (og)");
  cmd->add_option("--k", f.k, "bound of the first part, an integer or inf");
  cmd->add_option("--l", f.l, "bound of the second part, an integer or inf");
}

ProblemSpec resolve_spec(const SpecFlags& f, const InstanceFile& in) {
  if (f.k.empty() != f.l.empty()) throw UsageError("--k and --l must be given together");
  if (f.k.empty()) {
    if (!in.spec) throw UsageError("no problem spec: pass --k and --l or include a spec in the input");
    ProblemSpec s = *in.spec;
    if (!f.family.empty()) s.family = parse_family(f.family);
    return s;
  }
  FamilyKind fam = !f.family.empty() ? parse_family(f.family) : in.spec ? in.spec->family : FamilyKind::LinearForest;
  return {fam, parse_bound(f.k), parse_bound(f.l)};
}

SearchBudget resolve_budget(std::string text, std::uint64_t time_ms) {
  if (text.empty())
    if (const char* env = std::getenv("FORESTDEC_BUDGET_NODES")) text = env;
  SearchBudget b;
  if (!text.empty() && text != "unlimited" && text != "inf") {
    std::size_t used = 0;
    try {
      b.max_nodes = std::stoull(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size()) throw UsageError("bad node budget '" + text + "'");
  }
  if (time_ms) b.deadline = std::chrono::milliseconds(time_ms);
  return b;
}

std::optional<FileFormat> format_flag(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_format(s);
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file_atomic(path, text);
}

std::string emit_for(const InstanceFile& f, const std::string& path, std::optional<FileFormat> fmt) {
  return emit_instance(f, fmt.value_or(path.empty() || path == "-" ? FileFormat::Json : format_for_path(path)));
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Json report(const std::string& command, const Digraph& d) {
  Json j;
  j["command"] = command;
  j["digest"] = instance_digest(d);
  return j;
}

Json nullable(const std::string& s) { return s.empty() ? Json(nullptr) : Json(s); }

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  std::uint64_t x = 0;
  try {
    x = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty() || v[0] == '-') throw Error(ErrorCode::BadParameter, key + " must be a non-negative integer");
  return x;
}

// Gadget parameters given as key=value words; bare words are flags.
struct Params {
  std::map<std::string, std::string> values;
  std::set<std::string> flags;

  explicit Params(const std::vector<std::string>& words) {
    for (const auto& w : words) {
      auto eq = w.find('=');
      if (eq == std::string::npos)
        flags.insert(w);
      else
        values[w.substr(0, eq)] = w.substr(eq + 1);
    }
  }
  std::size_t num(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw Error(ErrorCode::BadParameter, "missing parameter " + key + "=");
    return parse_u64(key, it->second);
  }
  Bound bound(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw Error(ErrorCode::BadParameter, "missing parameter " + key + "=");
    return parse_bound(it->second);
  }
};

using GadgetBuilder = std::function<Gadget(const Params&)>;

const std::map<std::string, GadgetBuilder>& gadget_builders() {
  static const std::map<std::string, GadgetBuilder> m = {
      {"binary-tree",
       [](const Params& p) {
         if (p.flags.count("toward-tip") && p.flags.count("from-root"))
           throw Error(ErrorCode::BadParameter, "choose one of toward-tip and from-root");
         return build_binary_tree_orientation(p.num("depth"), !p.flags.count("from-root"));
       }},
      {"short-k-in-forcer", [](const Params& p) { return short_k_in_forcer(p.num("k")); }},
      {"long-k-alpha-in-forcer", [](const Params& p) { return long_k_alpha_in_forcer(p.num("k"), p.num("alpha")); }},
      {"k-variable-gadget", [](const Params& p) { return k_variable_gadget(p.num("k")); }},
      {"k-clause-gadget", [](const Params& p) { return k_clause_gadget(p.num("k")); }},
      {"kk-minus2-in-forcer", [](const Params& p) { return kk_minus2_in_forcer(p.num("k")); }},
      {"long-kl-out-forcer", [](const Params& p) { return long_kl_out_forcer(p.num("k"), p.num("l")); }},
      {"short-kl-out-forcer", [](const Params& p) { return short_kl_out_forcer(p.num("k"), p.num("l")); }},
      {"kl-minus2-in-forcer", [](const Params& p) { return kl_minus2_in_forcer(p.num("k"), p.num("l")); }},
      {"k2-alpha-in-forcer", [](const Params& p) { return k2_alpha_in_forcer(p.num("k"), p.num("alpha")); }},
      {"klt-variable-gadget",
       [](const Params& p) { return klt_variable_gadget(p.num("k"), p.num("l"), p.num("t")); }},
      {"kl-clause-gadget", [](const Params& p) { return kl_clause_gadget_dlf(p.num("k"), p.num("l")); }},
      {"q-variable-gadget", [](const Params& p) { return q_variable_gadget_bogd(p.num("q")); }},
      {"kl-alpha-clause-gadget",
       [](const Params& p) {
         return kl_alpha_clause_gadget_bogd(p.bound("k"), p.num("l"), p.num("alpha1"), p.num("alpha2"));
       }},
  };
  return m;
}

Json spec_json(const ProblemSpec& s) {
  auto b = [](Bound x) { return x.is_infinite() ? Json("inf") : Json(x.value()); };
  return {{"family", family_name(s.family)}, {"k", b(s.first)}, {"l", b(s.second)}};
}

template <class Id>
Json id_map(const std::map<std::string, Id>& m) {
  Json j = Json::object();
  for (const auto& [name, id] : m) j[name] = index(id);
  return j;
}

Json ids(const std::vector<ArcId>& v) {
  Json j = Json::array();
  for (ArcId a : v) j.push_back(index(a));
  return j;
}

Json placed_json(const PlacedGadget& g) {
  if (g.name.empty()) return nullptr;
  Json w = Json::array();
  for (const auto& [name, dec] : g.witnesses) w.push_back(name);
  return {{"gadget", g.name}, {"arcs", id_map(g.arcs)}, {"vertices", id_map(g.vertices)}, {"arc_map", ids(g.arc_map)},
          {"witnesses", w}};
}

Json backmap_json(const ReductionOutput& r) {
  Json j;
  j["reduction"] = reduction_name(r.kind);
  j["spec"] = spec_json(r.spec);
  j["parameter"] = r.parameter;
  j["swapped"] = r.swapped;
  j["vertices"] = r.instance.vertex_count();
  j["arcs"] = r.instance.arc_count();
  Json vars = Json::array(), clauses = Json::array(), links = Json::array();
  for (const auto& g : r.variable_gadgets) vars.push_back(placed_json(g));
  for (const auto& g : r.clause_gadgets) clauses.push_back(placed_json(g));
  for (const Link& l : r.links)
    links.push_back({{"clause", l.clause}, {"position", l.position}, {"variable", l.variable},
                     {"variable_arc", index(l.variable_arc)}, {"clause_arc", index(l.clause_arc)},
                     {"vertex", index(l.merged)}});
  j["variable_gadgets"] = vars;
  j["clause_gadgets"] = clauses;
  j["links"] = links;
  if (r.kind == ReductionKind::Hamiltonicity) {
    j["source_arcs"] = ids(r.source_arc_map);
    Json wf = Json::array(), ws = Json::array();
    for (const auto& w : r.widget_first) wf.push_back(ids(w));
    for (const auto& w : r.widget_second) ws.push_back(ids(w));
    j["widget_first"] = wf;
    j["widget_second"] = ws;
  }
  return j;
}

InstanceFile gadget_file(const Gadget& g, const std::string& witness) {
  InstanceFile f{g.digraph, std::nullopt, g.spec, {}, {}};
  for (const auto& [name, vs] : g.vertex_sets)
    for (std::size_t i = 0; i < vs.size(); ++i) f.vertex_labels[index(vs[i])] = name + "[" + std::to_string(i) + "]";
  for (const auto& [name, v] : g.vertices) f.vertex_labels[index(v)] = name;
  for (const auto& [name, a] : g.arcs) f.arc_labels[index(a)] = name;
  if (!witness.empty()) f.decomposition = g.witness(witness);
  return f;
}

Json gadget_manifest(const std::string& name, const Params& p, const Gadget& g) {
  Json params = Json::object();
  for (const auto& [k, v] : p.values) params[k] = v;
  for (const auto& f : p.flags) params[f] = true;
  Json sets = Json::object();
  for (const auto& [n, vs] : g.vertex_sets) {
    Json a = Json::array();
    for (VertexId v : vs) a.push_back(index(v));
    sets[n] = a;
  }
  Json w = Json::array();
  for (const auto& [n, dec] : g.witnesses) w.push_back(n);
  return {{"gadget", name},         {"parameters", params},      {"spec", spec_json(g.spec)},
          {"vertex_count", g.digraph.vertex_count()}, {"arc_count", g.digraph.arc_count()},
          {"vertices", id_map(g.vertices)}, {"arcs", id_map(g.arcs)}, {"vertex_sets", sets},
          {"witnesses", w}};
}

// Loopless random digraph; plain modulo keeps the stream identical across
// standard libraries.
Digraph bench_digraph(std::mt19937_64& rng, std::uint32_t n, std::size_t m) {
  std::vector<Arc> arcs;
  if (n < 2) m = 0;
  while (arcs.size() < m) {
    std::uint32_t u = static_cast<std::uint32_t>(rng() % n), v = static_cast<std::uint32_t>(rng() % n);
    if (u != v) arcs.push_back({vertex(u), vertex(v)});
  }
  return build_digraph(n, arcs);
}

std::string spec_cells(const ProblemSpec& s) {
  return std::string(family_name(s.family)) + ',' + s.first.to_string() + ',' + s.second.to_string();
}

const char* verdict_name(bool yes) { return yes ? "Yes" : "No"; }

struct BenchOptions {
  std::string suite;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t max_n = 8;
  std::size_t max_m = 12;
  std::string budget;
  std::string csv;
};

std::string run_bench(const BenchOptions& o, bool& disagreement) {
  std::ostringstream csv;
  csv << "suite,instance,n,m,family,k,l,verdict,oracle,agree,time_us,nodes\n";
  std::mt19937_64 rng(o.seed);
  auto us = [](Clock::time_point s) {
    return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - s).count();
  };
  if (o.suite == "empty") return csv.str();
  if (o.suite == "agreement") {
    const std::vector<ProblemSpec> specs = {
        {FamilyKind::LinearForest, Bound(1), Bound(1)},        {FamilyKind::LinearForest, Bound(2), Bound(1)},
        {FamilyKind::OutGalaxy, Bound::infinity(), Bound::infinity()}, {FamilyKind::OutGalaxy, Bound(1), Bound(1)},
        {FamilyKind::OutGalaxy, Bound(2), Bound(1)},           {FamilyKind::OutGalaxy, Bound(3), Bound(1)}};
    SearchBudget budget = resolve_budget(o.budget, 0);
    for (std::size_t i = 0; i < o.count; ++i) {
      auto n = static_cast<std::uint32_t>(1 + rng() % std::max<std::size_t>(o.max_n, 1));
      std::size_t m = rng() % (o.max_m + 1);
      Digraph d = bench_digraph(rng, n, m);
      for (const ProblemSpec& s : specs) {
        auto start = Clock::now();
        Verdict v = solve_polynomial(d, s);
        auto t = us(start);
        bool cert_ok = !v.certificate || verify_decomposition(d, *v.certificate, s);
        OracleResult r = oracle_decide(d, s, budget);
        std::string oracle = outcome_name(r.outcome);
        bool agree = r.outcome == Outcome::BudgetExceeded || (cert_ok && (r.outcome == Outcome::Yes) == v.yes());
        disagreement = disagreement || !agree;
        csv << o.suite << ',' << i << ',' << n << ',' << d.arc_count() << ',' << spec_cells(s) << ','
            << verdict_name(v.yes()) << ',' << oracle << ',' << (agree ? 1 : 0) << ',' << t << ',' << r.nodes_visited
            << "\n";
      }
    }
    return csv.str();
  }
  if (o.suite == "scaling") {
    ProblemSpec s{FamilyKind::OutGalaxy, Bound(2), Bound(1)};
    std::size_t i = 0;
    for (std::size_t n = 8; n <= std::max<std::size_t>(o.max_n, 8); n *= 2, ++i) {
      Digraph d = bench_digraph(rng, static_cast<std::uint32_t>(n), n + n / 2);
      auto start = Clock::now();
      Verdict v = solve_polynomial(d, s);
      auto t = us(start);
      csv << o.suite << ',' << i << ',' << n << ',' << d.arc_count() << ',' << spec_cells(s) << ','
          << verdict_name(v.yes()) << ",,," << t << ",\n";
    }
    return csv.str();
  }
  throw UsageError("unknown bench suite '" + o.suite + "' (agreement, scaling, empty)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded linear-forest and out-galaxy decompositions of digraphs"};
  app.name("forestdec");
  app.require_subcommand(1);

  std::string input, format, cert, cert_format, budget;
  std::uint64_t time_ms = 0;
  SpecFlags spec_flags;

  auto* solve = app.add_subcommand("solve", "polynomial-time solver for the tractable bound pairs");
  solve->add_option("input", input, "instance file")->required();
  add_spec_flags(solve, spec_flags);
  solve->add_option("--format", format, "input format: json, edgelist or dot");
  solve->add_option("--cert", cert, "write the certificate here on Yes");
  solve->add_option("--cert-format", cert_format, "certificate format");

  auto* oracle = app.add_subcommand("oracle", "exact exponential search");
  oracle->add_option("input", input, "instance file")->required();
  add_spec_flags(oracle, spec_flags);
  oracle->add_option("--format", format, "input format");
  oracle->add_option("--budget", budget, "node budget or 'unlimited' (default FORESTDEC_BUDGET_NODES)");
  oracle->add_option("--time-limit-ms", time_ms, "wall-clock limit");
  oracle->add_option("--cert", cert, "write the certificate here on Yes");
  oracle->add_option("--cert-format", cert_format, "certificate format");

  auto* verify = app.add_subcommand("verify", "check a decomposition against a spec");
  verify->add_option("input", input, "instance file with a decomposition")->required();
  add_spec_flags(verify, spec_flags);
  verify->add_option("--format", format, "input format");

  std::string target, output, backmap, decode;
  auto* reduce = app.add_subcommand("reduce", "emit the digraph of a hardness reduction");
  reduce->add_option("source", input, "DIMACS file, or a digraph file for hamiltonicity-bdlfd")->required();
  reduce->add_option("--to", target, "3b2sat-bdlfd, me1sat-bdlfd, hamiltonicity-bdlfd, meksat-bogd or sat-bogd")
      ->required();
  add_spec_flags(reduce, spec_flags);
  reduce->add_option("-o,--output", output, "instance file (default stdout)");
  reduce->add_option("--format", format, "output format");
  reduce->add_option("--backmap", backmap, "write the gadget map here");
  reduce->add_option("--decode", decode, "map a decomposition of the reduced instance back to the source");

  std::string gadget_name, witness, manifest;
  std::vector<std::string> gadget_params;
  auto* gadget = app.add_subcommand("gadget", "emit a forcer or gadget");
  gadget->add_option("name", gadget_name, "gadget name")->required();
  gadget->add_option("params", gadget_params, "key=value parameters and flags such as toward-tip");
  gadget->add_option("-o,--output", output, "digraph file (default stdout)");
  gadget->add_option("--format", format, "output format");
  gadget->add_option("--witness", witness, "include this witness decomposition");
  gadget->add_option("--manifest", manifest, "write the interface manifest here");

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "seeded benchmark suites with CSV output");
  bench->add_option("suite", bench_opts.suite, "agreement, scaling or empty")->required();
  bench->add_option("--seed", bench_opts.seed, "random seed");
  bench->add_option("--count", bench_opts.count, "instances (agreement)");
  bench->add_option("--max-n", bench_opts.max_n, "largest vertex count");
  bench->add_option("--max-m", bench_opts.max_m, "largest arc count (agreement)");
  bench->add_option("--budget", bench_opts.budget, "oracle node budget");
  bench->add_option("--csv", bench_opts.csv, "CSV file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kYes : kUsage;
  }

  auto start = Clock::now();
  try {
    if (solve->parsed()) {
      InstanceFile in = read_instance(input, format_flag(format));
      ProblemSpec spec = resolve_spec(spec_flags, in);
      Verdict v = solve_polynomial(in.digraph, spec);
      Json j = report("solve", in.digraph);
      j["spec"] = spec.to_string();
      j["verdict"] = verdict_name(v.yes());
      if (!v.yes()) j["reason"] = nullable(v.reason);
      if (v.yes() && !cert.empty())
        write_file_atomic(cert, emit_for({in.digraph, v.certificate, spec, {}, {}}, cert, format_flag(cert_format)));
      j["certificate"] = v.yes() ? nullable(cert) : Json(nullptr);
      j["wall_ms"] = elapsed_ms(start);
      out << j.dump() << "\n";
      return v.yes() ? kYes : kNo;
    }
    if (oracle->parsed()) {
      InstanceFile in = read_instance(input, format_flag(format));
      ProblemSpec spec = resolve_spec(spec_flags, in);
      OracleResult r = oracle_decide(in.digraph, spec, resolve_budget(budget, time_ms));
      Json j = report("oracle", in.digraph);
      j["spec"] = spec.to_string();
      j["verdict"] = outcome_name(r.outcome);
      if (r.decomposition && !cert.empty())
        write_file_atomic(cert, emit_for({in.digraph, r.decomposition, spec, {}, {}}, cert, format_flag(cert_format)));
      j["certificate"] = r.decomposition ? nullable(cert) : Json(nullptr);
      j["nodes"] = r.nodes_visited;
      j["wall_ms"] = elapsed_ms(start);
      out << j.dump() << "\n";
      return r.outcome == Outcome::Yes ? kYes : r.outcome == Outcome::No ? kNo : kBudgetExceeded;
    }
    if (verify->parsed()) {
      InstanceFile in = read_instance(input, format_flag(format));
      if (!in.decomposition) throw Error(ErrorCode::IncompleteLabeling, "the input carries no decomposition");
      ProblemSpec spec = resolve_spec(spec_flags, in);
      auto violation = find_violation(in.digraph, *in.decomposition, spec);
      Json j = report("verify", in.digraph);
      j["spec"] = spec.to_string();
      j["verdict"] = violation ? "Fail" : "Pass";
      if (violation)
        j["violation"] = {{"part", violation->part == Part::First ? "F1" : "F2"},
                          {"component", ids(violation->component)},
                          {"reason", violation->reason}};
      j["wall_ms"] = elapsed_ms(start);
      out << j.dump() << "\n";
      return violation ? kNo : kYes;
    }
    if (reduce->parsed()) {
      auto need = [](const std::string& v, const char* flag) {
        if (v.empty()) throw UsageError(std::string(flag) + " is required for this reduction");
        return v;
      };
      auto small = [&](const std::string& v, const char* flag) {
        Bound b = parse_bound(need(v, flag));
        if (b.is_infinite()) throw Error(ErrorCode::BadParameter, std::string(flag) + " must be finite here");
        return static_cast<std::size_t>(b.value());
      };
      ReductionOutput red;
      if (target == "hamiltonicity-bdlfd") {
        red = reduce_hamiltonicity_to_bdlfd(read_instance(input).digraph, small(spec_flags.k, "--k"));
      } else {
        CnfInstance cnf = parse_dimacs(read_text_file(input));
        if (target == "3b2sat-bdlfd")
          red = reduce_3b2sat_to_bdlfd(cnf, small(spec_flags.k, "--k"));
        else if (target == "me1sat-bdlfd")
          red = reduce_me1sat_to_bdlfd(cnf, small(spec_flags.k, "--k"), small(spec_flags.l, "--l"));
        else if (target == "meksat-bogd")
          red = reduce_meksat_to_bogd_kk(cnf, small(spec_flags.k, "--k"));
        else if (target == "sat-bogd")
          red = reduce_lplus1sat_to_bogd_kl(cnf, parse_bound(need(spec_flags.k, "--k")), small(spec_flags.l, "--l"));
        else
          throw UsageError("unknown reduction '" + target + "'");
      }
      Json j = report("reduce", red.instance);
      j["reduction"] = reduction_name(red.kind);
      j["spec"] = red.spec.to_string();
      j["vertices"] = red.instance.vertex_count();
      j["arcs"] = red.instance.arc_count();
      if (!decode.empty()) {
        InstanceFile c = read_instance(decode);
        if (!(c.digraph == red.instance)) throw Error(ErrorCode::InvalidDecomposition, "certificate digraph differs from the reduced instance");
        if (!c.decomposition) throw Error(ErrorCode::IncompleteLabeling, "the certificate carries no decomposition");
        if (red.kind == ReductionKind::Hamiltonicity) {
          j["cycle"] = ids(decomposition_to_cycle(red, *c.decomposition));
        } else {
          Assignment phi = decomposition_to_assignment(red, *c.decomposition);
          Json a = Json::array();
          for (std::size_t x = 0; x < phi.size(); ++x) a.push_back(phi[x] ? static_cast<long>(x + 1) : -static_cast<long>(x + 1));
          j["assignment"] = a;
        }
        j["wall_ms"] = elapsed_ms(start);
        out << j.dump() << "\n";
        return kYes;
      }
      std::string text = emit_for({red.instance, std::nullopt, red.spec, {}, {}}, output, format_flag(format));
      if (!backmap.empty()) write_file_atomic(backmap, backmap_json(red).dump(2) + "\n");
      if (output.empty() || output == "-") {
        out << text;
        return kYes;
      }
      write_file_atomic(output, text);
      j["output"] = output;
      j["backmap"] = nullable(backmap);
      j["wall_ms"] = elapsed_ms(start);
      out << j.dump() << "\n";
      return kYes;
    }
    if (gadget->parsed()) {
      const auto& builders = gadget_builders();
      auto it = builders.find(gadget_name);
      if (it == builders.end()) {
        std::string names;
        for (const auto& [n, b] : builders) names += (names.empty() ? "" : ", ") + n;
        throw UsageError("unknown gadget '" + gadget_name + "'; known: " + names);
      }
      Params params(gadget_params);
      Gadget g = it->second(params);
      std::string text = emit_for(gadget_file(g, witness), output, format_flag(format));
      if (!manifest.empty()) write_file_atomic(manifest, gadget_manifest(gadget_name, params, g).dump(2) + "\n");
      if (output.empty() || output == "-") {
        out << text;
        return kYes;
      }
      write_file_atomic(output, text);
      Json j = report("gadget", g.digraph);
      j["gadget"] = gadget_name;
      j["vertices"] = g.digraph.vertex_count();
      j["arcs"] = g.digraph.arc_count();
      j["output"] = output;
      j["manifest"] = nullable(manifest);
      out << j.dump() << "\n";
      return kYes;
    }
    if (bench->parsed()) {
      bool disagreement = false;
      std::string text = run_bench(bench_opts, disagreement);
      write_output(bench_opts.csv, text, out);
      if (!bench_opts.csv.empty()) {
        Json j;
        j["command"] = "bench";
        j["suite"] = bench_opts.suite;
        j["seed"] = bench_opts.seed;
        j["csv"] = bench_opts.csv;
        j["disagreements"] = disagreement;
        j["wall_ms"] = elapsed_ms(start);
        out << j.dump() << "\n";
      }
      return disagreement ? kNo : kYes;
    }
  } catch (const UsageError& e) {
    err << "forestdec: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "forestdec: " << e.what() << "\n";
    return e.code() == ErrorCode::UnsupportedSpec ? kUnsupported : kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "forestdec: " << e.what() << "\n";
    return std::string(e.what()).find("cannot open") != std::string::npos ? kNoInput : kCannotCreate;
  }
  return kUsage;
}

}  // namespace forestdec::cli
