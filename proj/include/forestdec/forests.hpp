#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forestdec/digraph.hpp"

namespace forestdec {

class Bound {
 public:
  constexpr Bound() = default;  // infinity
  explicit Bound(std::uint64_t k);
  static constexpr Bound infinity() { return Bound(); }

  constexpr bool is_infinite() const noexcept { return value_ == 0; }
  std::uint64_t value() const;  // throws for infinity
  constexpr bool admits(std::uint64_t n) const noexcept { return value_ == 0 || n <= value_; }
  std::string to_string() const;

  friend constexpr bool operator==(Bound, Bound) = default;
  // Orders finite values by size with infinity greatest.
  friend constexpr bool operator<(Bound a, Bound b) noexcept {
    if (a.value_ == 0) return false;
    return b.value_ == 0 || a.value_ < b.value_;
  }

 private:
  std::uint64_t value_ = 0;
};

Bound parse_bound(const std::string& text);

enum class FamilyKind { LinearForest, OutGalaxy };

struct ProblemSpec {
  FamilyKind family = FamilyKind::LinearForest;
  Bound first = Bound(1);
  Bound second = Bound(1);

  ProblemSpec swapped() const { return {family, second, first}; }
  std::string to_string() const;
  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

const char* family_name(FamilyKind f) noexcept;

enum class Part : std::uint8_t { First = 0, Second = 1 };

constexpr Part other(Part p) noexcept { return p == Part::First ? Part::Second : Part::First; }

class Decomposition {
 public:
  Decomposition() = default;
  explicit Decomposition(std::size_t arc_count, Part fill = Part::First) : labels_(arc_count, fill) {}
  explicit Decomposition(std::vector<Part> labels) : labels_(std::move(labels)) {}

  std::size_t size() const noexcept { return labels_.size(); }
  Part operator[](ArcId a) const { return labels_.at(index(a)); }
  Part& operator[](ArcId a) { return labels_.at(index(a)); }
  void set(ArcId a, Part p) { labels_.at(index(a)) = p; }

  std::vector<ArcId> arcs_in(Part p) const;
  Decomposition swapped() const;
  const std::vector<Part>& labels() const noexcept { return labels_; }

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
  friend auto operator<=>(const Decomposition& a, const Decomposition& b) { return a.labels_ <=> b.labels_; }

 private:
  std::vector<Part> labels_;
};

struct Verdict {
  std::optional<Decomposition> certificate;
  std::string reason;

  bool yes() const noexcept { return certificate.has_value(); }
  static Verdict Yes(Decomposition d) { return {std::move(d), {}}; }
  static Verdict No(std::string why = {}) { return {std::nullopt, std::move(why)}; }
};

bool is_bounded_dlf(const Digraph& d, const std::vector<ArcId>& arcs, Bound k);
bool is_bounded_out_galaxy(const Digraph& d, const std::vector<ArcId>& arcs, Bound k);
bool is_bounded_family(const Digraph& d, const std::vector<ArcId>& arcs, FamilyKind f, Bound k);

bool verify_decomposition(const Digraph& d, const Decomposition& dec, const ProblemSpec& spec);

struct Violation {
  Part part = Part::First;
  std::vector<ArcId> component;
  std::string reason;
};

// First offending component of either part, scanning First before Second.
std::optional<Violation> find_violation(const Digraph& d, const Decomposition& dec, const ProblemSpec& spec);

}  // namespace forestdec
