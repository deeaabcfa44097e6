#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "normgraph/date.hpp"
#include "normgraph/urn.hpp"

namespace normgraph {

// Graph key: the canonical URN string of a Work or Expression, or an event id.
using NodeId = std::string;

enum class WorkKind {
  NormConcept,
  TemporalVersion,
  ComponentConcept,
  ComponentTemporalVersion,
  AmendmentInstrument,
};

enum class VersionStatus { InForce, Superseded, Repealed };

enum class ExpressionKind { LanguageVersion, ComponentLanguageVersion };

enum class EventLevel { Macro, Micro };

enum class EdgeKind {
  MemberOf,                 // R10 is member of: version -> concept
  DerivativeOf,             // R2 is derivative of: successor -> predecessor
  RealisedIn,               // R3 is realised in: work -> expression
  HasPart,                  // R67 has part: concept -> component concept
  HasComponent,             // R5 has component: expression -> expression
  TranslationDerivativeOf,  // R76 is derivative of: expression -> expression
  Modified,                 // P31 has modified: event -> work
  Created,                  // R16 created: event -> work
  ConsistsOf,               // P9 consists of: macro event -> micro event
  Used,                     // event -> amending provision
};

inline constexpr std::string_view kTemporalSuccession = "TemporalSuccession";

std::string_view to_string(WorkKind k);
std::string_view to_string(VersionStatus s);
std::string_view to_string(ExpressionKind k);
std::string_view to_string(EventLevel l);
std::string_view to_string(EdgeKind k);
std::optional<WorkKind> work_kind_from_string(std::string_view s);
std::optional<VersionStatus> version_status_from_string(std::string_view s);
std::optional<ExpressionKind> expression_kind_from_string(std::string_view s);
std::optional<EventLevel> event_level_from_string(std::string_view s);

bool is_version_kind(WorkKind k);
// Whether the urn's optional parts (version, language, component) fit the kind.
bool urn_matches_kind(const Urn& u, WorkKind k);
bool urn_matches_kind(const Urn& u, ExpressionKind k);

// Half-open [start, end); an absent end is open-ended.
struct ValidityInterval {
  Date start;
  std::optional<Date> end;

  bool contains(Date d) const { return start <= d && (!end || d < *end); }
  bool overlaps(const ValidityInterval& o) const {
    return (!end || o.start < *end) && (!o.end || start < *o.end);
  }
  friend bool operator==(const ValidityInterval&, const ValidityInterval&) = default;
};

struct WorkNode {
  Urn urn;
  WorkKind kind = WorkKind::NormConcept;
  std::optional<ValidityInterval> validity;
  std::optional<VersionStatus> status;

  NodeId id() const { return format_urn(urn); }
  friend bool operator==(const WorkNode&, const WorkNode&) = default;
};

struct ExpressionNode {
  Urn urn;
  ExpressionKind kind = ExpressionKind::LanguageVersion;
  std::string language;
  std::optional<std::string> content;

  NodeId id() const { return format_urn(urn); }
  friend bool operator==(const ExpressionNode&, const ExpressionNode&) = default;
};

// Reference lists mirror the event's outgoing Modified/Created/ConsistsOf/Used
// edges and are kept sorted.
struct LegislativeEvent {
  NodeId id;
  EventLevel level = EventLevel::Macro;
  std::string nature;
  std::vector<std::string> actors;
  Date time_span;
  std::vector<NodeId> modified;
  std::vector<NodeId> created;
  std::vector<NodeId> children;
  std::optional<NodeId> instruction;

  friend bool operator==(const LegislativeEvent&, const LegislativeEvent&) = default;
};

struct Edge {
  NodeId from;
  EdgeKind kind = EdgeKind::MemberOf;
  NodeId to;
  std::string qualifier;  // DerivativeOf only
  unsigned ordinal = 0;   // HasPart / HasComponent only

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Part {
  unsigned ordinal;
  NodeId child;
  friend auto operator<=>(const Part&, const Part&) = default;
};

enum class NodeCategory { None, Work, Expression, Event };

namespace detail {
struct GraphData;
}

// Immutable value. Copies are cheap and share state; every mutation goes
// through GraphEditor (or the free functions below) and yields a new graph.
class TemporalGraph {
 public:
  using WorkMap = std::map<NodeId, std::shared_ptr<const WorkNode>>;
  using ExpressionMap = std::map<NodeId, std::shared_ptr<const ExpressionNode>>;
  using EventMap = std::map<NodeId, std::shared_ptr<const LegislativeEvent>>;

  TemporalGraph();

  bool empty() const;
  const WorkMap& works() const;
  const ExpressionMap& expressions() const;
  const EventMap& events() const;
  const std::set<Edge>& edges() const;

  NodeCategory category(const NodeId& id) const;
  const WorkNode* find_work(const NodeId& id) const;
  const ExpressionNode* find_expression(const NodeId& id) const;
  const LegislativeEvent* find_event(const NodeId& id) const;

  // Outgoing edges of `from`, in canonical order.
  std::vector<Edge> edges_from(const NodeId& from) const;
  std::vector<Edge> edges_from(const NodeId& from, EdgeKind kind) const;

  // Versions linked by MemberOf, ascending by validity start.
  std::span<const NodeId> versions_of(const NodeId& concept_urn) const;
  // The version whose validity contains `at`, or nullptr.
  const WorkNode* version_at(const NodeId& concept_urn, Date at) const;
  // HasPart children, ascending by ordinal.
  std::span<const Part> parts_of(const NodeId& parent) const;
  std::optional<NodeId> part_parent(const NodeId& child) const;
  std::optional<NodeId> concept_of(const NodeId& version) const;
  std::span<const NodeId> creators_of(const NodeId& work) const;
  // Expressions realising `work`, keyed by language.
  const std::map<std::string, NodeId>& realisations_of(const NodeId& work) const;
  std::optional<NodeId> predecessor(const NodeId& version) const;
  std::optional<NodeId> successor(const NodeId& version) const;
  std::optional<NodeId> parent_event(const NodeId& event) const;

  friend bool operator==(const TemporalGraph& a, const TemporalGraph& b);

 private:
  friend class GraphEditor;
  std::shared_ptr<detail::GraphData> data_;
};

// Batch mutation over a private copy of a graph. The copy shares node
// storage with the base graph until a node is replaced.
class GraphEditor {
 public:
  GraphEditor();
  explicit GraphEditor(const TemporalGraph& base);

  // Throw DuplicateUrn / InvalidArgument. Works and expressions are checked
  // against their kind/urn shape invariants.
  void add_work(WorkNode work);
  void add_expression(ExpressionNode expr);
  // Registers the event and adds the edges implied by its reference lists.
  void add_event(LegislativeEvent event);
  // Throws UnknownEndpoint or IllegalEdgeKind. Identical edges are idempotent.
  void add_edge(Edge edge);
  // Closes an open validity interval at `end` and updates the status.
  void close_version(const NodeId& version, Date end, VersionStatus status);

  // Structural removal, used for mutation testing. Removing a node also
  // removes its incident edges.
  void remove_node(const NodeId& id);
  void remove_edge(const Edge& edge);

  const TemporalGraph& view() const noexcept { return graph_; }
  TemporalGraph commit() &&;

 private:
  void index_edge(const Edge& e);
  void rebuild_indexes();

  TemporalGraph graph_;
};

TemporalGraph add_work(const TemporalGraph& g, WorkNode w);
TemporalGraph add_expression(const TemporalGraph& g, ExpressionNode e);
TemporalGraph add_event(const TemporalGraph& g, LegislativeEvent ev);
TemporalGraph add_edge(const TemporalGraph& g, const NodeId& from, EdgeKind kind, const NodeId& to,
                       std::string qualifier = {}, unsigned ordinal = 0);

struct Violation {
  std::string rule;
  std::vector<NodeId> subjects;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Empty iff every structural invariant holds. Violations are returned in a
// deterministic order.
std::vector<Violation> validate(const TemporalGraph& g);

}  // namespace normgraph
