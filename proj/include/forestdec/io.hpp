#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "forestdec/digraph.hpp"
#include "forestdec/forests.hpp"

namespace forestdec {

enum class FileFormat { Json, EdgeList, Dot };

struct InstanceFile {
  Digraph digraph;
  std::optional<Decomposition> decomposition;
  std::optional<ProblemSpec> spec;
  // Only carried by DOT, as node and edge labels.
  std::map<std::uint32_t, std::string> vertex_labels;
  std::map<std::uint32_t, std::string> arc_labels;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

const char* format_name(FileFormat f) noexcept;
FileFormat parse_format(std::string_view name);
// By extension: .json, .dot/.gv, anything else is an edge list.
FileFormat format_for_path(const std::filesystem::path& p);

FamilyKind parse_family(std::string_view name);
// Inverse of ProblemSpec::to_string.
ProblemSpec parse_spec(std::string_view text);

InstanceFile parse_instance(std::string_view text, FileFormat f);
std::string emit_instance(const InstanceFile& inst, FileFormat f);

std::string read_text_file(const std::filesystem::path& p);
InstanceFile read_instance(const std::filesystem::path& p, std::optional<FileFormat> f = std::nullopt);
// Writes through a temporary in the same directory and renames it over `p`.
void write_file_atomic(const std::filesystem::path& p, std::string_view contents);

// FNV-1a over the canonical JSON form of the digraph, 16 hex digits.
std::string instance_digest(const Digraph& d);

}  // namespace forestdec
