#include "normgraph/model.hpp"

#include <algorithm>
#include <utility>

#include "normgraph/error.hpp"

namespace normgraph {

namespace detail {

struct GraphData {
  TemporalGraph::WorkMap works;
  TemporalGraph::ExpressionMap expressions;
  TemporalGraph::EventMap events;
  std::set<Edge> edges;

  std::map<NodeId, std::vector<NodeId>> versions;
  std::map<NodeId, NodeId> member_of;
  std::map<NodeId, std::vector<Part>> parts;
  std::map<NodeId, NodeId> part_parent;
  std::map<NodeId, std::vector<NodeId>> creators;
  std::map<NodeId, std::map<std::string, NodeId>> realisations;
  std::map<NodeId, NodeId> predecessor;
  std::map<NodeId, NodeId> successor;
  std::map<NodeId, NodeId> parent_event;
};

}  // namespace detail

namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(std::string_view s, const Enum (&values)[N]) {
  for (Enum v : values) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

const std::map<std::string, NodeId>& empty_realisations() {
  static const std::map<std::string, NodeId> empty;
  return empty;
}

void insert_sorted(std::vector<NodeId>& v, const NodeId& id) {
  auto it = std::lower_bound(v.begin(), v.end(), id);
  if (it == v.end() || *it != id) v.insert(it, id);
}

}  // namespace

std::string_view to_string(WorkKind k) {
  switch (k) {
    case WorkKind::NormConcept: return "NormConcept";
    case WorkKind::TemporalVersion: return "TemporalVersion";
    case WorkKind::ComponentConcept: return "ComponentConcept";
    case WorkKind::ComponentTemporalVersion: return "ComponentTemporalVersion";
    case WorkKind::AmendmentInstrument: return "AmendmentInstrument";
  }
  return "?";
}

std::string_view to_string(VersionStatus s) {
  switch (s) {
    case VersionStatus::InForce: return "InForce";
    case VersionStatus::Superseded: return "Superseded";
    case VersionStatus::Repealed: return "Repealed";
  }
  return "?";
}

std::string_view to_string(ExpressionKind k) {
  switch (k) {
    case ExpressionKind::LanguageVersion: return "LanguageVersion";
    case ExpressionKind::ComponentLanguageVersion: return "ComponentLanguageVersion";
  }
  return "?";
}

std::string_view to_string(EventLevel l) { return l == EventLevel::Macro ? "Macro" : "Micro"; }

std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::MemberOf: return "MemberOf";
    case EdgeKind::DerivativeOf: return "DerivativeOf";
    case EdgeKind::RealisedIn: return "RealisedIn";
    case EdgeKind::HasPart: return "HasPart";
    case EdgeKind::HasComponent: return "HasComponent";
    case EdgeKind::TranslationDerivativeOf: return "TranslationDerivativeOf";
    case EdgeKind::Modified: return "Modified";
    case EdgeKind::Created: return "Created";
    case EdgeKind::ConsistsOf: return "ConsistsOf";
    case EdgeKind::Used: return "Used";
  }
  return "?";
}

std::optional<WorkKind> work_kind_from_string(std::string_view s) {
  constexpr WorkKind all[] = {WorkKind::NormConcept, WorkKind::TemporalVersion,
                              WorkKind::ComponentConcept, WorkKind::ComponentTemporalVersion,
                              WorkKind::AmendmentInstrument};
  return lookup(s, all);
}

std::optional<VersionStatus> version_status_from_string(std::string_view s) {
  constexpr VersionStatus all[] = {VersionStatus::InForce, VersionStatus::Superseded,
                                   VersionStatus::Repealed};
  return lookup(s, all);
}

std::optional<ExpressionKind> expression_kind_from_string(std::string_view s) {
  constexpr ExpressionKind all[] = {ExpressionKind::LanguageVersion,
                                    ExpressionKind::ComponentLanguageVersion};
  return lookup(s, all);
}

std::optional<EventLevel> event_level_from_string(std::string_view s) {
  constexpr EventLevel all[] = {EventLevel::Macro, EventLevel::Micro};
  return lookup(s, all);
}

bool urn_matches_kind(const Urn& u, WorkKind k) {
  if (u.language) return false;
  switch (k) {
    case WorkKind::NormConcept: return !u.version_date && !u.component_path;
    case WorkKind::ComponentConcept: return !u.version_date && u.component_path;
    case WorkKind::TemporalVersion: return u.version_date && !u.component_path;
    case WorkKind::ComponentTemporalVersion: return u.version_date && u.component_path;
    case WorkKind::AmendmentInstrument: return u.version_date || !u.component_path;
  }
  return false;
}

bool urn_matches_kind(const Urn& u, ExpressionKind k) {
  if (!u.language || !u.version_date) return false;
  return (k == ExpressionKind::ComponentLanguageVersion) == u.component_path.has_value();
}

bool is_version_kind(WorkKind k) {
  return k == WorkKind::TemporalVersion || k == WorkKind::ComponentTemporalVersion;
}

// ---------------------------------------------------------------------------
// TemporalGraph

TemporalGraph::TemporalGraph() : data_(std::make_shared<detail::GraphData>()) {}

bool TemporalGraph::empty() const {
  return data_->works.empty() && data_->expressions.empty() && data_->events.empty();
}
const TemporalGraph::WorkMap& TemporalGraph::works() const { return data_->works; }
const TemporalGraph::ExpressionMap& TemporalGraph::expressions() const { return data_->expressions; }
const TemporalGraph::EventMap& TemporalGraph::events() const { return data_->events; }
const std::set<Edge>& TemporalGraph::edges() const { return data_->edges; }

NodeCategory TemporalGraph::category(const NodeId& id) const {
  if (data_->works.count(id)) return NodeCategory::Work;
  if (data_->expressions.count(id)) return NodeCategory::Expression;
  if (data_->events.count(id)) return NodeCategory::Event;
  return NodeCategory::None;
}

const WorkNode* TemporalGraph::find_work(const NodeId& id) const {
  auto it = data_->works.find(id);
  return it == data_->works.end() ? nullptr : it->second.get();
}

const ExpressionNode* TemporalGraph::find_expression(const NodeId& id) const {
  auto it = data_->expressions.find(id);
  return it == data_->expressions.end() ? nullptr : it->second.get();
}

const LegislativeEvent* TemporalGraph::find_event(const NodeId& id) const {
  auto it = data_->events.find(id);
  return it == data_->events.end() ? nullptr : it->second.get();
}

std::vector<Edge> TemporalGraph::edges_from(const NodeId& from) const {
  std::vector<Edge> out;
  Edge probe{from, EdgeKind::MemberOf, {}, {}, 0};
  for (auto it = data_->edges.lower_bound(probe); it != data_->edges.end() && it->from == from; ++it) {
    out.push_back(*it);
  }
  return out;
}

std::vector<Edge> TemporalGraph::edges_from(const NodeId& from, EdgeKind kind) const {
  std::vector<Edge> out;
  Edge probe{from, kind, {}, {}, 0};
  for (auto it = data_->edges.lower_bound(probe);
       it != data_->edges.end() && it->from == from && it->kind == kind; ++it) {
    out.push_back(*it);
  }
  return out;
}

std::span<const NodeId> TemporalGraph::versions_of(const NodeId& concept_urn) const {
  auto it = data_->versions.find(concept_urn);
  if (it == data_->versions.end()) return {};
  return it->second;
}

const WorkNode* TemporalGraph::version_at(const NodeId& concept_urn, Date at) const {
  auto versions = versions_of(concept_urn);
  // Last version starting on or before `at`.
  const WorkNode* best = nullptr;
  std::size_t lo = 0, hi = versions.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    const WorkNode* w = find_work(versions[mid]);
    if (w && w->validity && w->validity->start <= at) {
      best = w;
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (best && best->validity->contains(at)) return best;
  return nullptr;
}

std::span<const Part> TemporalGraph::parts_of(const NodeId& parent) const {
  auto it = data_->parts.find(parent);
  if (it == data_->parts.end()) return {};
  return it->second;
}

std::optional<NodeId> TemporalGraph::part_parent(const NodeId& child) const {
  auto it = data_->part_parent.find(child);
  if (it == data_->part_parent.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeId> TemporalGraph::concept_of(const NodeId& version) const {
  auto it = data_->member_of.find(version);
  if (it == data_->member_of.end()) return std::nullopt;
  return it->second;
}

std::span<const NodeId> TemporalGraph::creators_of(const NodeId& work) const {
  auto it = data_->creators.find(work);
  if (it == data_->creators.end()) return {};
  return it->second;
}

const std::map<std::string, NodeId>& TemporalGraph::realisations_of(const NodeId& work) const {
  auto it = data_->realisations.find(work);
  if (it == data_->realisations.end()) return empty_realisations();
  return it->second;
}

std::optional<NodeId> TemporalGraph::predecessor(const NodeId& version) const {
  auto it = data_->predecessor.find(version);
  if (it == data_->predecessor.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeId> TemporalGraph::successor(const NodeId& version) const {
  auto it = data_->successor.find(version);
  if (it == data_->successor.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeId> TemporalGraph::parent_event(const NodeId& event) const {
  auto it = data_->parent_event.find(event);
  if (it == data_->parent_event.end()) return std::nullopt;
  return it->second;
}

bool operator==(const TemporalGraph& a, const TemporalGraph& b) {
  if (a.data_ == b.data_) return true;
  auto same = [](const auto& x, const auto& y) {
    return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const auto& p, const auto& q) {
      return p.first == q.first && *p.second == *q.second;
    });
  };
  return same(a.data_->works, b.data_->works) && same(a.data_->expressions, b.data_->expressions) &&
         same(a.data_->events, b.data_->events) && a.data_->edges == b.data_->edges;
}

// ---------------------------------------------------------------------------
// GraphEditor

GraphEditor::GraphEditor() = default;

GraphEditor::GraphEditor(const TemporalGraph& base) {
  graph_.data_ = std::make_shared<detail::GraphData>(*base.data_);
}

void GraphEditor::add_work(WorkNode work) {
  check_urn(work.urn);
  NodeId id = work.id();
  if (!urn_matches_kind(work.urn, work.kind)) {
    throw Error(ErrorCode::InvalidArgument, id + " cannot identify a " + std::string(to_string(work.kind)));
  }
  if (graph_.category(id) != NodeCategory::None) {
    throw Error(ErrorCode::DuplicateUrn, "node already exists: " + id);
  }
  graph_.data_->works.emplace(std::move(id), std::make_shared<const WorkNode>(std::move(work)));
}

void GraphEditor::add_expression(ExpressionNode expr) {
  check_urn(expr.urn);
  NodeId id = expr.id();
  if (!urn_matches_kind(expr.urn, expr.kind) || *expr.urn.language != expr.language) {
    throw Error(ErrorCode::InvalidArgument, id + " cannot identify a " + std::string(to_string(expr.kind)) +
                                                " in '" + expr.language + "'");
  }
  if (graph_.category(id) != NodeCategory::None) {
    throw Error(ErrorCode::DuplicateUrn, "node already exists: " + id);
  }
  graph_.data_->expressions.emplace(std::move(id),
                                    std::make_shared<const ExpressionNode>(std::move(expr)));
}

void GraphEditor::add_event(LegislativeEvent event) {
  if (event.id.empty()) throw Error(ErrorCode::InvalidArgument, "event id must not be empty");
  if (event.id.find(':') == std::string::npos ||
      event.id.find_first_of(" \t\r\n<>\"{}|^`\\") != std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "event id is not an absolute IRI: " + event.id);
  }
  if (graph_.category(event.id) != NodeCategory::None) {
    throw Error(ErrorCode::DuplicateUrn, "node already exists: " + event.id);
  }
  auto modified = std::move(event.modified);
  auto created = std::move(event.created);
  auto children = std::move(event.children);
  auto instruction = std::move(event.instruction);
  event.modified.clear();
  event.created.clear();
  event.children.clear();
  event.instruction.reset();
  NodeId id = event.id;
  graph_.data_->events.emplace(id, std::make_shared<const LegislativeEvent>(std::move(event)));
  for (const auto& t : modified) add_edge({id, EdgeKind::Modified, t, {}, 0});
  for (const auto& t : created) add_edge({id, EdgeKind::Created, t, {}, 0});
  for (const auto& t : children) add_edge({id, EdgeKind::ConsistsOf, t, {}, 0});
  if (instruction) add_edge({id, EdgeKind::Used, *instruction, {}, 0});
}

namespace {

std::string describe(const TemporalGraph& g, const NodeId& id) {
  switch (g.category(id)) {
    case NodeCategory::Work: return std::string(to_string(g.find_work(id)->kind));
    case NodeCategory::Expression: return std::string(to_string(g.find_expression(id)->kind));
    case NodeCategory::Event: return "Event";
    case NodeCategory::None: return "None";
  }
  return "?";
}

bool legal_endpoints(const TemporalGraph& g, const Edge& e) {
  auto from_cat = g.category(e.from);
  auto to_cat = g.category(e.to);
  const WorkNode* fw = g.find_work(e.from);
  const WorkNode* tw = g.find_work(e.to);
  auto instrument_concept = [](const WorkNode* w) {
    return w->kind == WorkKind::AmendmentInstrument && !w->urn.version_date;
  };
  auto instrument_version = [](const WorkNode* w) {
    return w->kind == WorkKind::AmendmentInstrument && w->urn.version_date;
  };
  switch (e.kind) {
    case EdgeKind::MemberOf:
      if (!fw || !tw) return false;
      return (fw->kind == WorkKind::TemporalVersion && tw->kind == WorkKind::NormConcept) ||
             (fw->kind == WorkKind::ComponentTemporalVersion &&
              tw->kind == WorkKind::ComponentConcept) ||
             (instrument_version(fw) && instrument_concept(tw));
    case EdgeKind::DerivativeOf:
      if (!fw || !tw) return false;
      return (is_version_kind(fw->kind) && fw->kind == tw->kind) ||
             (instrument_version(fw) && instrument_version(tw));
    case EdgeKind::RealisedIn:
      return fw && to_cat == NodeCategory::Expression &&
             (is_version_kind(fw->kind) || instrument_version(fw));
    case EdgeKind::HasPart:
      if (!fw || !tw) return false;
      return ((fw->kind == WorkKind::NormConcept || fw->kind == WorkKind::ComponentConcept) &&
              tw->kind == WorkKind::ComponentConcept) ||
             (fw->kind == WorkKind::AmendmentInstrument && tw->kind == WorkKind::AmendmentInstrument);
    case EdgeKind::HasComponent:
    case EdgeKind::TranslationDerivativeOf:
      return from_cat == NodeCategory::Expression && to_cat == NodeCategory::Expression;
    case EdgeKind::Modified:
    case EdgeKind::Created:
      return from_cat == NodeCategory::Event && tw &&
             (is_version_kind(tw->kind) || instrument_version(tw));
    case EdgeKind::ConsistsOf:
      return from_cat == NodeCategory::Event && to_cat == NodeCategory::Event;
    case EdgeKind::Used:
      return from_cat == NodeCategory::Event && tw && tw->kind == WorkKind::AmendmentInstrument;
  }
  return false;
}

NodeId version_sort_key_date(const WorkNode* w) {
  if (w && w->validity) return w->validity->start.to_string();
  if (w && w->urn.version_date) return w->urn.version_date->to_string();
  return {};
}

}  // namespace

void GraphEditor::add_edge(Edge edge) {
  if (graph_.category(edge.from) == NodeCategory::None) {
    throw Error(ErrorCode::UnknownEndpoint, "unknown edge source: " + edge.from);
  }
  if (graph_.category(edge.to) == NodeCategory::None) {
    throw Error(ErrorCode::UnknownEndpoint, "unknown edge target: " + edge.to);
  }
  if (!legal_endpoints(graph_, edge)) {
    throw Error(ErrorCode::IllegalEdgeKind, describe(graph_, edge.from) + " -" +
                                                std::string(to_string(edge.kind)) + "-> " +
                                                describe(graph_, edge.to) + " (" + edge.from +
                                                " -> " + edge.to + ")");
  }
  bool qualified = edge.kind == EdgeKind::DerivativeOf;
  bool ordered = edge.kind == EdgeKind::HasPart || edge.kind == EdgeKind::HasComponent;
  if (qualified && edge.qualifier.empty()) {
    throw Error(ErrorCode::InvalidArgument, "DerivativeOf edge requires a qualifier");
  }
  if (!qualified && !edge.qualifier.empty()) {
    throw Error(ErrorCode::InvalidArgument, "only DerivativeOf edges carry a qualifier");
  }
  if (ordered && edge.ordinal == 0) {
    throw Error(ErrorCode::InvalidArgument, "composition edges require a positive ordinal");
  }
  if (!ordered && edge.ordinal != 0) {
    throw Error(ErrorCode::InvalidArgument, "only composition edges carry an ordinal");
  }
  if (graph_.data_->edges.insert(edge).second) index_edge(edge);
}

void GraphEditor::index_edge(const Edge& e) {
  auto& d = *graph_.data_;
  auto touch_event = [&](auto&& fn) {
    auto it = d.events.find(e.from);
    auto copy = std::make_shared<LegislativeEvent>(*it->second);
    fn(*copy);
    it->second = std::move(copy);
  };
  switch (e.kind) {
    case EdgeKind::MemberOf: {
      d.member_of[e.from] = e.to;
      auto& list = d.versions[e.to];
      const WorkNode* w = graph_.find_work(e.from);
      auto key = std::make_pair(version_sort_key_date(w), e.from);
      auto it = std::lower_bound(list.begin(), list.end(), key, [&](const NodeId& a, const auto& k) {
        return std::make_pair(version_sort_key_date(graph_.find_work(a)), a) < k;
      });
      if (it == list.end() || *it != e.from) list.insert(it, e.from);
      break;
    }
    case EdgeKind::DerivativeOf:
      d.predecessor[e.from] = e.to;
      d.successor[e.to] = e.from;
      break;
    case EdgeKind::RealisedIn: {
      const ExpressionNode* x = graph_.find_expression(e.to);
      d.realisations[e.from][x->language] = e.to;
      break;
    }
    case EdgeKind::HasPart: {
      auto& list = d.parts[e.from];
      Part p{e.ordinal, e.to};
      list.insert(std::lower_bound(list.begin(), list.end(), p), p);
      d.part_parent[e.to] = e.from;
      break;
    }
    case EdgeKind::Created:
      insert_sorted(d.creators[e.to], e.from);
      touch_event([&](LegislativeEvent& ev) { insert_sorted(ev.created, e.to); });
      break;
    case EdgeKind::Modified:
      touch_event([&](LegislativeEvent& ev) { insert_sorted(ev.modified, e.to); });
      break;
    case EdgeKind::ConsistsOf:
      d.parent_event[e.to] = e.from;
      touch_event([&](LegislativeEvent& ev) { insert_sorted(ev.children, e.to); });
      break;
    case EdgeKind::Used:
      touch_event([&](LegislativeEvent& ev) {
        if (!ev.instruction || e.to < *ev.instruction) ev.instruction = e.to;
      });
      break;
    case EdgeKind::HasComponent:
    case EdgeKind::TranslationDerivativeOf:
      break;
  }
}

void GraphEditor::close_version(const NodeId& version, Date end, VersionStatus status) {
  auto& works = graph_.data_->works;
  auto it = works.find(version);
  if (it == works.end()) throw Error(ErrorCode::UnknownVersion, "unknown version: " + version);
  const WorkNode& w = *it->second;
  if (!w.validity || w.validity->end) {
    throw Error(ErrorCode::InvalidArgument, "version has no open validity interval: " + version);
  }
  if (!(w.validity->start < end)) {
    throw Error(ErrorCode::InvalidArgument, "closing date must follow validity start: " + version);
  }
  auto copy = std::make_shared<WorkNode>(w);
  copy->validity->end = end;
  copy->status = status;
  it->second = std::move(copy);
}

void GraphEditor::remove_node(const NodeId& id) {
  auto& d = *graph_.data_;
  d.works.erase(id);
  d.expressions.erase(id);
  d.events.erase(id);
  std::erase_if(d.edges, [&](const Edge& e) { return e.from == id || e.to == id; });
  rebuild_indexes();
}

void GraphEditor::remove_edge(const Edge& edge) {
  if (graph_.data_->edges.erase(edge)) rebuild_indexes();
}

void GraphEditor::rebuild_indexes() {
  auto& d = *graph_.data_;
  d.versions.clear();
  d.member_of.clear();
  d.parts.clear();
  d.part_parent.clear();
  d.creators.clear();
  d.realisations.clear();
  d.predecessor.clear();
  d.successor.clear();
  d.parent_event.clear();
  for (auto& [id, ev] : d.events) {
    auto copy = std::make_shared<LegislativeEvent>(*ev);
    copy->modified.clear();
    copy->created.clear();
    copy->children.clear();
    copy->instruction.reset();
    ev = std::move(copy);
  }
  for (const auto& e : d.edges) index_edge(e);
}

TemporalGraph GraphEditor::commit() && { return std::move(graph_); }

// ---------------------------------------------------------------------------
// Single-step mutators

TemporalGraph add_work(const TemporalGraph& g, WorkNode w) {
  GraphEditor ed(g);
  ed.add_work(std::move(w));
  return std::move(ed).commit();
}

TemporalGraph add_expression(const TemporalGraph& g, ExpressionNode e) {
  GraphEditor ed(g);
  ed.add_expression(std::move(e));
  return std::move(ed).commit();
}

TemporalGraph add_event(const TemporalGraph& g, LegislativeEvent ev) {
  GraphEditor ed(g);
  ed.add_event(std::move(ev));
  return std::move(ed).commit();
}

TemporalGraph add_edge(const TemporalGraph& g, const NodeId& from, EdgeKind kind, const NodeId& to,
                       std::string qualifier, unsigned ordinal) {
  GraphEditor ed(g);
  ed.add_edge({from, kind, to, std::move(qualifier), ordinal});
  return std::move(ed).commit();
}

}  // namespace normgraph
