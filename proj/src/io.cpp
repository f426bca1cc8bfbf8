#include "forestdec/io.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace forestdec {

namespace {

using Json = nlohmann::ordered_json;

Error parse_error(const std::string& what) { return Error(ErrorCode::ParseError, what); }

std::uint32_t parse_id(std::string_view s, const char* what) {
  std::uint32_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw parse_error(std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

Part parse_part(std::string_view s) {
  if (s == "F1") return Part::First;
  if (s == "F2") return Part::Second;
  throw parse_error("bad part '" + std::string(s) + "', expected F1 or F2");
}

const char* part_name(Part p) { return p == Part::First ? "F1" : "F2"; }

Decomposition complete(const std::vector<std::optional<Part>>& labels) {
  std::vector<Part> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i]) throw Error(ErrorCode::IncompleteLabeling, "arc " + std::to_string(i) + " has no part");
    out.push_back(*labels[i]);
  }
  return Decomposition(std::move(out));
}

Digraph checked_digraph(std::size_t n, const std::vector<Arc>& arcs) {
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (index(arcs[i].tail) >= n || index(arcs[i].head) >= n)
      throw parse_error("arc " + std::to_string(i) + " has an endpoint outside 0.." + std::to_string(n) + "-1");
  try {
    return build_digraph(n, arcs);
  } catch (const Error& e) {
    throw parse_error(e.what());
  }
}

Json bound_json(Bound b) { return b.is_infinite() ? Json("inf") : Json(b.value()); }

Bound bound_from_json(const Json& j) {
  if (j.is_string()) return parse_bound(j.get<std::string>());
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > 0) return Bound(j.get<std::uint64_t>());
  throw parse_error("bad bound " + j.dump());
}

InstanceFile parse_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(e.what());
  }
  try {
    InstanceFile f;
    std::size_t n = j.at("vertices").get<std::size_t>();
    std::vector<Arc> arcs;
    for (const Json& a : j.at("arcs")) {
      if (a.contains("id") && a.at("id").get<std::size_t>() != arcs.size())
        throw parse_error("arc ids must be 0..m-1 in order");
      arcs.push_back({vertex(a.at("tail").get<std::uint32_t>()), vertex(a.at("head").get<std::uint32_t>())});
    }
    f.digraph = checked_digraph(n, arcs);
    if (j.contains("decomposition")) {
      std::vector<std::optional<Part>> labels(arcs.size());
      for (const auto& [key, value] : j.at("decomposition").items()) {
        std::uint32_t id = parse_id(key, "arc id");
        if (id >= arcs.size()) throw Error(ErrorCode::UnknownArc, "decomposition names arc " + key);
        labels[id] = parse_part(value.get<std::string>());
      }
      f.decomposition = complete(labels);
    }
    if (j.contains("spec")) {
      const Json& s = j.at("spec");
      f.spec = ProblemSpec{parse_family(s.at("family").get<std::string>()), bound_from_json(s.at("k")),
                           bound_from_json(s.at("l"))};
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(e.what());
  }
}

std::string emit_json(const InstanceFile& f) {
  Json j;
  j["vertices"] = f.digraph.vertex_count();
  Json arcs = Json::array();
  for (std::uint32_t i = 0; i < f.digraph.arc_count(); ++i)
    arcs.push_back({{"id", i}, {"tail", index(f.digraph.tail(arc(i)))}, {"head", index(f.digraph.head(arc(i)))}});
  j["arcs"] = arcs;
  if (f.decomposition) {
    Json d = Json::object();
    for (std::uint32_t i = 0; i < f.decomposition->size(); ++i) d[std::to_string(i)] = part_name((*f.decomposition)[arc(i)]);
    j["decomposition"] = d;
  }
  if (f.spec)
    j["spec"] = {{"family", family_name(f.spec->family)}, {"k", bound_json(f.spec->first)}, {"l", bound_json(f.spec->second)}};
  return j.dump(2) + "\n";
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

InstanceFile parse_edge_list(std::string_view text) {
  InstanceFile f;
  std::optional<std::size_t> declared;
  std::vector<Arc> arcs;
  std::vector<std::optional<Part>> labels;
  bool any_label = false;
  std::size_t n = 0, lineno = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    auto w = words(line);
    if (w.empty()) continue;
    if (w[0].front() == '#') {
      if (w[0] == "#" && w.size() == 3 && w[1] == "vertices") declared = parse_id(w[2], "vertex count");
      if (w[0] == "#" && w.size() == 2 && w[1] == "labeled") any_label = true;
      if (w[0] == "#" && w.size() == 5 && w[1] == "spec")
        f.spec = ProblemSpec{parse_family(w[2]), parse_bound(w[3]), parse_bound(w[4])};
      continue;
    }
    if (w.size() < 2 || w.size() > 3) throw parse_error("line " + std::to_string(lineno) + ": expected 'tail head [F1|F2]'");
    std::uint32_t t = parse_id(w[0], "vertex"), h = parse_id(w[1], "vertex");
    arcs.push_back({vertex(t), vertex(h)});
    n = std::max<std::size_t>(n, std::max(t, h) + 1);
    labels.push_back(w.size() == 3 ? std::optional<Part>(parse_part(w[2])) : std::nullopt);
    any_label = any_label || w.size() == 3;
  }
  if (declared) {
    if (*declared < n) throw parse_error("arc endpoint exceeds declared vertex count");
    n = *declared;
  }
  f.digraph = checked_digraph(n, arcs);
  if (any_label) f.decomposition = complete(labels);
  return f;
}

std::string emit_edge_list(const InstanceFile& f) {
  std::ostringstream out;
  out << "# vertices " << f.digraph.vertex_count() << "\n";
  if (f.spec)
    out << "# spec " << family_name(f.spec->family) << ' ' << f.spec->first.to_string() << ' '
        << f.spec->second.to_string() << "\n";
  if (f.decomposition) out << "# labeled\n";
  for (std::uint32_t i = 0; i < f.digraph.arc_count(); ++i) {
    out << index(f.digraph.tail(arc(i))) << ' ' << index(f.digraph.head(arc(i)));
    if (f.decomposition) out << ' ' << part_name((*f.decomposition)[arc(i)]);
    out << "\n";
  }
  return out.str();
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::map<std::string, std::string> dot_attributes(const std::string& body) {
  static const std::regex attr(R"re((\w+)\s*=\s*(?:"((?:[^"\\]|\\.)*)"|([^,;\s\]]+)))re");
  std::map<std::string, std::string> out;
  for (auto it = std::sregex_iterator(body.begin(), body.end(), attr); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    std::string v = m[2].matched ? m[2].str() : m[3].str();
    std::string un;
    for (std::size_t i = 0; i < v.size(); ++i) un += (v[i] == '\\' && i + 1 < v.size()) ? v[++i] : v[i];
    out[m[1]] = un;
  }
  return out;
}

InstanceFile parse_dot(std::string_view text) {
  static const std::regex edge(R"(^\s*(\d+)\s*->\s*(\d+)\s*(?:\[(.*)\])?\s*;?\s*$)");
  static const std::regex node(R"(^\s*(\d+)\s*(?:\[(.*)\])?\s*;?\s*$)");
  static const std::regex graph_attr(R"(^\s*graph\s*\[(.*)\]\s*;?\s*$)");
  static const std::regex skip(R"(^\s*((strict\s+)?digraph\b.*\{|\}|//.*|node\s*\[.*|edge\s*\[.*)?\s*$)");
  InstanceFile f;
  std::vector<Arc> arcs;
  std::vector<std::optional<Part>> labels;
  bool any_label = false;
  std::size_t n = 0, lineno = 0;
  std::istringstream in{std::string(text)};
  std::smatch m;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (std::regex_match(line, m, edge)) {
      auto attrs = dot_attributes(m[3].str());
      std::uint32_t t = parse_id(m[1].str(), "vertex"), h = parse_id(m[2].str(), "vertex");
      if (attrs.count("id") && parse_id(attrs["id"], "arc id") != arcs.size())
        throw parse_error("line " + std::to_string(lineno) + ": arc ids must be 0..m-1 in order");
      if (attrs.count("label")) f.arc_labels[static_cast<std::uint32_t>(arcs.size())] = attrs["label"];
      labels.push_back(attrs.count("part") ? std::optional<Part>(parse_part(attrs["part"])) : std::nullopt);
      any_label = any_label || attrs.count("part");
      arcs.push_back({vertex(t), vertex(h)});
      n = std::max<std::size_t>(n, std::max(t, h) + 1);
    } else if (std::regex_match(line, m, node)) {
      std::uint32_t v = parse_id(m[1].str(), "vertex");
      auto attrs = dot_attributes(m[2].str());
      if (attrs.count("label")) f.vertex_labels[v] = attrs["label"];
      n = std::max<std::size_t>(n, v + 1);
    } else if (std::regex_match(line, m, graph_attr)) {
      auto attrs = dot_attributes(m[1].str());
      if (attrs.count("spec")) f.spec = parse_spec(attrs["spec"]);
      if (attrs.count("labeled")) any_label = attrs["labeled"] == "true";
    } else if (!std::regex_match(line, skip)) {
      throw parse_error("line " + std::to_string(lineno) + ": unsupported DOT statement");
    }
  }
  f.digraph = checked_digraph(n, arcs);
  if (any_label) f.decomposition = complete(labels);
  return f;
}

std::string emit_dot(const InstanceFile& f) {
  std::ostringstream out;
  out << "digraph forestdec {\n";
  if (f.spec || f.decomposition) {
    out << "  graph [";
    if (f.spec) out << "spec=" << quote(f.spec->to_string()) << (f.decomposition ? ", " : "");
    if (f.decomposition) out << "labeled=true";
    out << "];\n";
  }
  for (std::uint32_t v = 0; v < f.digraph.vertex_count(); ++v) {
    out << "  " << v;
    if (auto it = f.vertex_labels.find(v); it != f.vertex_labels.end()) out << " [label=" << quote(it->second) << "]";
    out << ";\n";
  }
  for (std::uint32_t i = 0; i < f.digraph.arc_count(); ++i) {
    out << "  " << index(f.digraph.tail(arc(i))) << " -> " << index(f.digraph.head(arc(i))) << " [id=" << i;
    if (f.decomposition) {
      Part p = (*f.decomposition)[arc(i)];
      out << ", part=" << part_name(p) << (p == Part::First ? ", style=solid, color=black" : ", style=dashed, color=red");
    }
    if (auto it = f.arc_labels.find(i); it != f.arc_labels.end()) out << ", label=" << quote(it->second);
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

const char* format_name(FileFormat f) noexcept {
  switch (f) {
    case FileFormat::Json: return "json";
    case FileFormat::EdgeList: return "edgelist";
    case FileFormat::Dot: return "dot";
  }
  return "?";
}

FileFormat parse_format(std::string_view name) {
  if (name == "json") return FileFormat::Json;
  if (name == "edgelist" || name == "edges") return FileFormat::EdgeList;
  if (name == "dot") return FileFormat::Dot;
  throw parse_error("unknown format '" + std::string(name) + "'");
}

FileFormat format_for_path(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  if (ext == ".json") return FileFormat::Json;
  if (ext == ".dot" || ext == ".gv") return FileFormat::Dot;
  return FileFormat::EdgeList;
}

FamilyKind parse_family(std::string_view name) {
  if (name == "LinearForest" || name == "lf" || name == "dlf") return FamilyKind::LinearForest;
  if (name == "OutGalaxy" || name == "og") return FamilyKind::OutGalaxy;
  throw parse_error("unknown family '" + std::string(name) + "'");
}

ProblemSpec parse_spec(std::string_view text) {
  static const std::regex form(R"(^(\w+)\((\w+),(\w+)\)$)");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, form)) throw parse_error("bad spec '" + s + "'");
  return {parse_family(m[1].str()), parse_bound(m[2].str()), parse_bound(m[3].str())};
}

InstanceFile parse_instance(std::string_view text, FileFormat f) {
  switch (f) {
    case FileFormat::Json: return parse_json(text);
    case FileFormat::EdgeList: return parse_edge_list(text);
    case FileFormat::Dot: return parse_dot(text);
  }
  throw parse_error("unknown format");
}

std::string emit_instance(const InstanceFile& inst, FileFormat f) {
  if (inst.decomposition && inst.decomposition->size() != inst.digraph.arc_count())
    throw Error(ErrorCode::IncompleteLabeling, "decomposition does not cover the digraph");
  switch (f) {
    case FileFormat::Json: return emit_json(inst);
    case FileFormat::EdgeList: return emit_edge_list(inst);
    case FileFormat::Dot: return emit_dot(inst);
  }
  return {};
}

std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::filesystem::filesystem_error("cannot open", p, std::make_error_code(std::errc::no_such_file_or_directory));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

InstanceFile read_instance(const std::filesystem::path& p, std::optional<FileFormat> f) {
  return parse_instance(read_text_file(p), f.value_or(format_for_path(p)));
}

void write_file_atomic(const std::filesystem::path& p, std::string_view contents) {
  auto dir = p.has_parent_path() ? p.parent_path() : std::filesystem::path(".");
  std::random_device rd;
  auto tmp = dir / ("." + p.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::filesystem::filesystem_error("cannot write", tmp, std::make_error_code(std::errc::permission_denied));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::filesystem::filesystem_error("write failed", tmp, std::make_error_code(std::errc::io_error));
    }
  }
  std::filesystem::rename(tmp, p);
}

std::string instance_digest(const Digraph& d) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : emit_json(InstanceFile{d, {}, {}, {}, {}})) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace forestdec
