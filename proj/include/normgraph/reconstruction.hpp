#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normgraph/model.hpp"

namespace normgraph {

enum class NodeStatus { InForce, Repealed };
std::string_view to_string(NodeStatus s);

struct DocumentNode {
  std::optional<ComponentPath> path;  // absent for the norm root
  NodeStatus status = NodeStatus::InForce;
  std::string text;
  unsigned ordinal = 0;
  std::vector<DocumentNode> children;

  friend bool operator==(const DocumentNode&, const DocumentNode&) = default;
};

struct DocumentTree {
  DocumentNode root;
  std::string language;
  Date as_of;
  NodeId tv_urn;  // version resolved for the root

  friend bool operator==(const DocumentTree&, const DocumentTree&) = default;
};

enum class ChangeKind { Added, TextChanged, Repealed };
std::string_view to_string(ChangeKind k);

struct ChangeRecord {
  std::optional<ComponentPath> path;  // absent for norm-level versions
  ChangeKind change = ChangeKind::TextChanged;
  std::optional<NodeId> from_ctv;
  std::optional<NodeId> to_ctv;
  NodeId event;        // the creating micro event (or macro, for norm versions)
  NodeId macro_event;  // enclosing macro event; equals `event` for macro events
  std::optional<NodeId> instruction;
  std::string nature;
  std::vector<std::string> actors;
  Date date;

  friend bool operator==(const ChangeRecord&, const ChangeRecord&) = default;
};

// Throws UnknownConcept or NotYetEnacted.
const WorkNode& resolve_version(const TemporalGraph& g, const Urn& concept_or_cc, Date at);

// Accepts a norm Concept or a Component Concept. Throws NotYetEnacted,
// UnknownConcept or MissingLanguage.
DocumentTree reconstruct_text(const TemporalGraph& g, const Urn& concept_or_cc, Date at,
                              const std::string& language);

std::vector<std::pair<WorkNode, NodeId>> history(const TemporalGraph& g, const Urn& concept_or_cc);

// One record per component whose resolved version differs between d1 and d2,
// in document order. Throws InvalidRange unless d1 < d2.
std::vector<ChangeRecord> diff(const TemporalGraph& g, const Urn& concept_urn, Date d1, Date d2);

// Throws UnknownVersion.
ChangeRecord provenance(const TemporalGraph& g, const Urn& version);

// Depth-first, one line per component: "<path>\t<status>\t<text>\n".
// Backslash, tab, newline and carriage return in text are escaped as
// \\, \t, \n and \r.
std::string render_flat(const DocumentTree& tree);
std::string render_tree(const DocumentTree& tree);
std::string escape_flat(std::string_view text);

}  // namespace normgraph
