#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "normgraph/date.hpp"

// LexML-style identifiers:
//
//   urn:lex:JURIS:AUTH:DOCTYPE:YYYY-MM-DD;ID[@YYYY-MM-DD][~FORM;LANG][!PATH]
//
// PATH is one or more segments joined by '_', each segment a lowercase kind
// optionally followed by a positive index without leading zeros ("art6",
// "cpt", "alt1"). Input is lowercase only; there is no percent-encoding layer.

namespace normgraph {

struct PathSegment {
  std::string kind;
  std::optional<unsigned> index;

  friend auto operator<=>(const PathSegment&, const PathSegment&) = default;
};

class ComponentPath {
 public:
  ComponentPath() = default;
  // Throws Error(InvalidArgument) if segments is empty or any segment is
  // malformed.
  explicit ComponentPath(std::vector<PathSegment> segments);

  // Parses the canonical "_"-joined form. Throws MalformedUrn.
  static ComponentPath parse(std::string_view text);

  const std::vector<PathSegment>& segments() const noexcept { return segments_; }
  bool empty() const noexcept { return segments_.empty(); }
  std::string to_string() const;

  friend auto operator<=>(const ComponentPath&, const ComponentPath&) = default;

 private:
  std::vector<PathSegment> segments_;
};

struct Urn {
  std::string jurisdiction;
  std::string authority;
  std::string doctype;
  Date base_date;
  std::string base_id;
  std::optional<Date> version_date;
  std::optional<std::string> form;
  std::optional<std::string> language;
  std::optional<ComponentPath> component_path;

  bool has_version() const noexcept { return version_date.has_value(); }
  bool has_language() const noexcept { return language.has_value(); }
  bool has_component() const noexcept { return component_path.has_value(); }

  friend bool operator==(const Urn&, const Urn&) = default;
};

// Throws MalformedUrn with the offending byte offset.
Urn parse_urn(std::string_view text);
std::string format_urn(const Urn& urn);

// Throws Error(InvalidArgument) when date < base_date.
Urn with_version(const Urn& urn, Date date);
Urn with_language(const Urn& urn, std::string form, std::string language);
Urn with_component(const Urn& urn, ComponentPath path);
Urn without_version(const Urn& urn);
Urn without_language(const Urn& urn);
Urn without_component(const Urn& urn);
Urn strip_to_concept(const Urn& urn);

// Throws Error(InvalidArgument) if the Urn violates its invariants
// (token syntax, form/language pairing, version_date >= base_date).
void check_urn(const Urn& urn);

bool is_valid_token(std::string_view s);
bool is_valid_doctype(std::string_view s);
bool is_valid_language(std::string_view s);

}  // namespace normgraph
