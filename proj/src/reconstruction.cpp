#include "normgraph/reconstruction.hpp"

#include <algorithm>
#include <functional>

#include "normgraph/error.hpp"

namespace normgraph {

namespace {

const WorkNode& concept_node(const TemporalGraph& g, const NodeId& id) {
  const WorkNode* w = g.find_work(id);
  if (!w || (w->kind != WorkKind::NormConcept && w->kind != WorkKind::ComponentConcept)) {
    throw Error(ErrorCode::UnknownConcept, "no norm or component concept " + id);
  }
  return *w;
}

const WorkNode* resolve_or_null(const TemporalGraph& g, const NodeId& concept_urn, Date at) {
  return g.version_at(concept_urn, at);
}

std::optional<Date> first_start(const TemporalGraph& g, const NodeId& concept_urn) {
  auto vs = g.versions_of(concept_urn);
  if (vs.empty()) return std::nullopt;
  return g.find_work(vs.front())->validity->start;
}

// The event that created `version`, and the macro event enclosing it.
std::pair<const LegislativeEvent*, const LegislativeEvent*> creation(const TemporalGraph& g,
                                                                    const NodeId& version) {
  auto creators = g.creators_of(version);
  if (creators.empty()) return {nullptr, nullptr};
  const LegislativeEvent* ev = g.find_event(creators.front());
  const LegislativeEvent* macro = ev;
  if (ev && ev->level == EventLevel::Micro) {
    if (auto p = g.parent_event(ev->id)) macro = g.find_event(*p);
  }
  return {ev, macro};
}

void fill_provenance(const TemporalGraph& g, const NodeId& version, ChangeRecord& rec) {
  auto [ev, macro] = creation(g, version);
  if (!ev) return;
  rec.event = ev->id;
  rec.instruction = ev->instruction;
  rec.date = ev->time_span;
  if (macro) {
    rec.macro_event = macro->id;
    rec.nature = macro->nature;
    rec.actors = macro->actors;
  }
}

void walk_components(const TemporalGraph& g, const NodeId& parent,
                     const std::function<void(const NodeId&)>& fn) {
  for (const auto& part : g.parts_of(parent)) {
    fn(part.child);
    walk_components(g, part.child, fn);
  }
}

}  // namespace

std::string_view to_string(NodeStatus s) { return s == NodeStatus::InForce ? "in-force" : "repealed"; }

std::string_view to_string(ChangeKind k) {
  switch (k) {
    case ChangeKind::Added: return "Added";
    case ChangeKind::TextChanged: return "TextChanged";
    case ChangeKind::Repealed: return "Repealed";
  }
  return "?";
}

const WorkNode& resolve_version(const TemporalGraph& g, const Urn& concept_or_cc, Date at) {
  NodeId id = format_urn(concept_or_cc);
  concept_node(g, id);
  if (const WorkNode* v = resolve_or_null(g, id, at)) return *v;
  auto start = first_start(g, id);
  if (!start || at < *start) {
    throw Error(ErrorCode::NotYetEnacted, id + " has no version on " + at.to_string() +
                                              (start ? " (first version " + start->to_string() + ")" : ""));
  }
  throw Error(ErrorCode::NotYetEnacted, id + " has no version in force on " + at.to_string());
}

DocumentTree reconstruct_text(const TemporalGraph& g, const Urn& concept_or_cc, Date at,
                              const std::string& language) {
  NodeId root_id = format_urn(concept_or_cc);
  const WorkNode& root = concept_node(g, root_id);
  const WorkNode& root_version = resolve_version(g, concept_or_cc, at);

  DocumentTree tree;
  tree.language = language;
  tree.as_of = at;
  tree.tv_urn = root_version.id();

  std::function<DocumentNode(const WorkNode&, const WorkNode&, unsigned)> build =
      [&](const WorkNode& cc, const WorkNode& version, unsigned ordinal) {
        DocumentNode node;
        node.ordinal = ordinal;
        if (cc.kind == WorkKind::ComponentConcept) {
          node.path = cc.urn.component_path;
          if (version.status == VersionStatus::Repealed) {
            node.status = NodeStatus::Repealed;
          } else {
            const auto& real = g.realisations_of(version.id());
            auto it = real.find(language);
            if (it == real.end()) {
              throw Error(ErrorCode::MissingLanguage, "component " + cc.urn.component_path->to_string() +
                                                          " has no '" + language + "' text on " +
                                                          at.to_string());
            }
            node.text = g.find_expression(it->second)->content.value_or("");
          }
        }
        for (const auto& part : g.parts_of(cc.id())) {
          const WorkNode* v = resolve_or_null(g, part.child, at);
          if (!v) continue;  // not yet added
          node.children.push_back(build(*g.find_work(part.child), *v, part.ordinal));
        }
        return node;
      };

  unsigned root_ordinal = 0;
  if (auto parent = g.part_parent(root_id)) {
    for (const auto& p : g.parts_of(*parent)) {
      if (p.child == root_id) root_ordinal = p.ordinal;
    }
  }
  tree.root = build(root, root_version, root_ordinal);
  return tree;
}

std::vector<std::pair<WorkNode, NodeId>> history(const TemporalGraph& g, const Urn& concept_or_cc) {
  NodeId id = format_urn(concept_or_cc);
  concept_node(g, id);
  std::vector<std::pair<WorkNode, NodeId>> out;
  auto versions = g.versions_of(id);
  if (versions.empty()) return out;
  // Walk the succession chain from its head rather than trusting index order.
  NodeId cur = versions.front();
  while (auto pred = g.predecessor(cur)) cur = *pred;
  while (true) {
    auto creators = g.creators_of(cur);
    out.emplace_back(*g.find_work(cur), creators.empty() ? NodeId{} : creators.front());
    auto next = g.successor(cur);
    if (!next) break;
    cur = *next;
  }
  return out;
}

std::vector<ChangeRecord> diff(const TemporalGraph& g, const Urn& concept_urn, Date d1, Date d2) {
  if (!(d1 < d2)) {
    throw Error(ErrorCode::InvalidRange, "diff requires from < to (got " + d1.to_string() + " and " +
                                             d2.to_string() + ")");
  }
  NodeId id = format_urn(concept_urn);
  resolve_version(g, concept_urn, d1);
  std::vector<ChangeRecord> out;
  walk_components(g, id, [&](const NodeId& cc) {
    const WorkNode* a = resolve_or_null(g, cc, d1);
    const WorkNode* b = resolve_or_null(g, cc, d2);
    if (a == b || !b) return;
    ChangeRecord rec;
    rec.path = g.find_work(cc)->urn.component_path;
    if (!a) {
      rec.change = ChangeKind::Added;
    } else if (b->status == VersionStatus::Repealed) {
      rec.change = ChangeKind::Repealed;
    } else {
      rec.change = ChangeKind::TextChanged;
    }
    if (a) rec.from_ctv = a->id();
    rec.to_ctv = b->id();
    fill_provenance(g, b->id(), rec);
    out.push_back(std::move(rec));
  });
  return out;
}

ChangeRecord provenance(const TemporalGraph& g, const Urn& version) {
  NodeId id = format_urn(version);
  const WorkNode* w = g.find_work(id);
  if (!w || !is_version_kind(w->kind)) throw Error(ErrorCode::UnknownVersion, "no temporal version " + id);
  ChangeRecord rec;
  rec.path = w->urn.component_path;
  rec.to_ctv = id;
  rec.from_ctv = g.predecessor(id);
  if (!rec.from_ctv) {
    rec.change = ChangeKind::Added;
  } else if (w->status == VersionStatus::Repealed) {
    rec.change = ChangeKind::Repealed;
  } else {
    rec.change = ChangeKind::TextChanged;
  }
  fill_provenance(g, id, rec);
  return rec;
}

std::string escape_flat(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_flat(const DocumentTree& tree) {
  std::string out;
  std::function<void(const DocumentNode&)> emit = [&](const DocumentNode& n) {
    if (n.path) {
      out += n.path->to_string();
      out += '\t';
      out += to_string(n.status);
      out += '\t';
      out += escape_flat(n.text);
      out += '\n';
    }
    for (const auto& c : n.children) emit(c);
  };
  emit(tree.root);
  return out;
}

std::string render_tree(const DocumentTree& tree) {
  std::string out = tree.tv_urn + " [" + tree.language + ", " + tree.as_of.to_string() + "]\n";
  std::function<void(const DocumentNode&, int)> emit = [&](const DocumentNode& n, int depth) {
    if (n.path) {
      out.append(static_cast<std::size_t>(depth) * 2, ' ');
      out += n.path->to_string();
      if (n.status == NodeStatus::Repealed) {
        out += " (repealed)";
      } else {
        out += ": ";
        out += escape_flat(n.text);
      }
      out += '\n';
      ++depth;
    }
    for (const auto& c : n.children) emit(c, depth);
  };
  emit(tree.root, 1);
  return out;
}

}  // namespace normgraph
