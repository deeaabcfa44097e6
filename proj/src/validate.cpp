#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "normgraph/model.hpp"

namespace normgraph {

namespace {

class Validator {
 public:
  explicit Validator(const TemporalGraph& g) : g_(g) {
    for (const auto& e : g_.edges()) {
      outgoing_[{e.from, e.kind}].push_back(e);
      incoming_[{e.to, e.kind}].push_back(e);
    }
  }

  std::vector<Violation> run() {
    check_edges();
    check_works();
    check_expressions();
    check_chains();
    check_composition();
    check_parallel_hierarchy();
    check_events();
    std::sort(out_.begin(), out_.end(), [](const Violation& a, const Violation& b) {
      return std::tie(a.rule, a.subjects, a.message) < std::tie(b.rule, b.subjects, b.message);
    });
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

 private:
  using Key = std::pair<NodeId, EdgeKind>;

  const std::vector<Edge>& out(const NodeId& id, EdgeKind k) const {
    auto it = outgoing_.find({id, k});
    return it == outgoing_.end() ? none_ : it->second;
  }
  const std::vector<Edge>& in(const NodeId& id, EdgeKind k) const {
    auto it = incoming_.find({id, k});
    return it == incoming_.end() ? none_ : it->second;
  }

  void report(std::string rule, std::vector<NodeId> subjects, std::string message) {
    out_.push_back({std::move(rule), std::move(subjects), std::move(message)});
  }

  static bool is_instrument_version(const WorkNode& w) {
    return w.kind == WorkKind::AmendmentInstrument && w.urn.version_date.has_value();
  }
  static bool needs_realisation(const WorkNode& w) {
    return is_version_kind(w.kind) || is_instrument_version(w);
  }

  void check_edges() {
    for (const auto& e : g_.edges()) {
      if (g_.category(e.from) == NodeCategory::None || g_.category(e.to) == NodeCategory::None) {
        report("DanglingEdge", {e.from, e.to},
               std::string(to_string(e.kind)) + " edge references a missing node");
      }
    }
  }

  void check_works() {
    for (const auto& [id, wp] : g_.works()) {
      const WorkNode& w = *wp;
      const Urn& u = w.urn;
      bool ok = urn_matches_kind(u, w.kind);
      if (!ok) {
        report("KindUrnMismatch", {id},
               "urn shape does not match kind " + std::string(to_string(w.kind)));
      }

      if (is_version_kind(w.kind)) {
        if (!w.validity || !w.status) {
          report("MissingValidity", {id}, "version lacks validity interval or status");
        } else {
          if (u.version_date && w.validity->start != *u.version_date) {
            report("ValidityMismatch", {id}, "validity start differs from urn version date");
          }
          if (w.validity->end && !(w.validity->start < *w.validity->end)) {
            report("InvalidInterval", {id}, "validity end does not follow its start");
          }
          bool open = !w.validity->end;
          bool status_ok = open ? (*w.status == VersionStatus::InForce ||
                                   (*w.status == VersionStatus::Repealed &&
                                    w.kind == WorkKind::ComponentTemporalVersion))
                                : *w.status == VersionStatus::Superseded;
          if (!status_ok) {
            report("StatusMismatch", {id},
                   "status " + std::string(to_string(*w.status)) + " inconsistent with " +
                       (open ? "open" : "closed") + " validity");
          }
        }
      } else if (w.validity || w.status) {
        report("ValidityMismatch", {id}, "only version kinds carry validity or status");
      }

      if (is_version_kind(w.kind) || is_instrument_version(w)) {
        const auto& member = out(id, EdgeKind::MemberOf);
        // Instrument provisions hang off the instrument version via HasPart.
        bool provision = is_instrument_version(w) && u.component_path;
        if (!provision) {
          if (member.empty()) {
            report("MissingMembership", {id}, "version is not a member of any concept");
          } else if (member.size() > 1) {
            report("MultipleMembership", {id}, "version is a member of several concepts");
          } else if (member[0].to != format_urn(without_version(u))) {
            report("MembershipMismatch", {id, member[0].to}, "version is a member of a foreign concept");
          }
        }
      }

      if (needs_realisation(w)) {
        const auto& real = out(id, EdgeKind::RealisedIn);
        if (real.empty()) report("MissingRealisation", {id}, "version has no realising expression");
        std::set<std::string> langs;
        for (const auto& e : real) {
          const ExpressionNode* x = g_.find_expression(e.to);
          if (!x) continue;
          if (!langs.insert(x->language).second) {
            report("DuplicateLanguage", {id, e.to}, "two expressions share language " + x->language);
          }
          if (format_urn(without_language(x->urn)) != id) {
            report("RealisationUrnMismatch", {id, e.to}, "expression urn does not extend its work urn");
          }
          bool component = u.component_path.has_value();
          auto want = component ? ExpressionKind::ComponentLanguageVersion
                                : ExpressionKind::LanguageVersion;
          if (x->kind != want) {
            report("RealisationKindMismatch", {id, e.to}, "expression kind does not match work kind");
          }
        }
      }
    }
  }

  void check_expressions() {
    for (const auto& [id, xp] : g_.expressions()) {
      const ExpressionNode& x = *xp;
      if (!x.urn.language || *x.urn.language != x.language) {
        report("ExpressionLanguageMismatch", {id}, "language field differs from urn language");
      }
      if (!urn_matches_kind(x.urn, x.kind)) {
        report("KindUrnMismatch", {id}, "expression kind does not match urn shape");
      }
      if (x.kind == ExpressionKind::ComponentLanguageVersion && !x.content) {
        report("MissingContent", {id}, "component language version without content");
      }
      const auto& real = in(id, EdgeKind::RealisedIn);
      if (real.size() != 1) {
        report(real.empty() ? "UnrealisedExpression" : "MultipleRealisation", {id},
               "expression realises " + std::to_string(real.size()) + " works");
      }
    }
  }

  // Versions grouped by the concept urn their own urn names.
  std::map<NodeId, std::vector<const WorkNode*>> versions_by_concept() const {
    std::map<NodeId, std::vector<const WorkNode*>> by;
    for (const auto& [id, wp] : g_.works()) {
      if (is_version_kind(wp->kind)) by[format_urn(without_version(wp->urn))].push_back(wp.get());
    }
    for (auto& [c, list] : by) {
      std::sort(list.begin(), list.end(), [](const WorkNode* a, const WorkNode* b) {
        return std::make_pair(a->urn.version_date, a->id()) < std::make_pair(b->urn.version_date, b->id());
      });
    }
    return by;
  }

  void check_chains() {
    for (const auto& [concept_urn, list] : versions_by_concept()) {
      const WorkNode* c = g_.find_work(concept_urn);
      if (!c) {
        for (const auto* v : list) report("MissingConcept", {v->id()}, "version of an absent concept " + concept_urn);
      }
      std::size_t heads = 0;
      for (std::size_t i = 0; i < list.size(); ++i) {
        NodeId id = list[i]->id();
        const auto& deriv = out(id, EdgeKind::DerivativeOf);
        if (i > 0 && list[i - 1]->urn.version_date == list[i]->urn.version_date) {
          report("NonIncreasingVersionDates", {list[i - 1]->id(), id}, "versions share a date");
        }
        if (deriv.empty()) {
          ++heads;
          if (i > 0) report("ChainBroken", {id}, "version has no predecessor but is not the earliest");
          continue;
        }
        if (deriv.size() > 1) report("ChainBroken", {id}, "version derives from several versions");
        for (const auto& e : deriv) {
          if (i == 0 || e.to != list[i - 1]->id()) {
            report("ChainBroken", {id, e.to}, "version derives from a non-adjacent or foreign version");
          }
          if (e.qualifier != kTemporalSuccession) {
            report("MissingSuccessionQualifier", {id, e.to},
                   "succession edge qualified as '" + e.qualifier + "'");
          }
        }
      }
      if (heads != 1) {
        report("ChainHeadCount", {concept_urn}, std::to_string(heads) + " chain heads (expected 1)");
      }

      for (std::size_t i = 0; i < list.size(); ++i) {
        const WorkNode* v = list[i];
        if (!v->validity) continue;
        bool newest = i + 1 == list.size();
        if (!newest) {
          const WorkNode* next = list[i + 1];
          if (!next->validity) continue;
          if (!v->validity->end) {
            report("OverlappingValidity", {v->id(), next->id()}, "open-ended version is not the newest");
          } else if (*v->validity->end > next->validity->start) {
            report("OverlappingValidity", {v->id(), next->id()}, "validity intervals overlap");
          } else if (*v->validity->end < next->validity->start) {
            report("ValidityGap", {v->id(), next->id()}, "validity intervals are not contiguous");
          }
        } else if (v->validity->end) {
          report("NewestVersionClosed", {v->id()}, "newest version is not open-ended");
        }
      }
    }
  }

  void check_composition() {
    for (const auto& [id, wp] : g_.works()) {
      bool component = wp->kind == WorkKind::ComponentConcept ||
                       (wp->kind == WorkKind::AmendmentInstrument && wp->urn.component_path);
      const auto& parents = in(id, EdgeKind::HasPart);
      if (component) {
        if (parents.empty()) report("OrphanComponent", {id}, "component has no HasPart parent");
        if (parents.size() > 1) report("MultipleParents", {id}, "component has several HasPart parents");
        for (const auto& e : parents) {
          const WorkNode* p = g_.find_work(e.from);
          if (p && format_urn(strip_to_concept(p->urn)) != format_urn(strip_to_concept(wp->urn))) {
            report("ForeignComponent", {e.from, id}, "component belongs to a different norm");
          }
        }
      }
      std::map<unsigned, NodeId> seen;
      for (const auto& e : out(id, EdgeKind::HasPart)) {
        auto [it, fresh] = seen.emplace(e.ordinal, e.to);
        if (!fresh) {
          report("DuplicateOrdinal", {id, it->second, e.to},
                 "siblings share ordinal " + std::to_string(e.ordinal));
        }
      }
    }
    // Cycles in the component tree.
    for (const auto& [id, wp] : g_.works()) {
      if (wp->kind != WorkKind::ComponentConcept) continue;
      std::set<NodeId> visited{id};
      NodeId cur = id;
      while (true) {
        const auto& parents = in(cur, EdgeKind::HasPart);
        if (parents.empty()) break;
        cur = parents.front().from;
        if (!visited.insert(cur).second) {
          report("CompositionCycle", {id}, "component is its own ancestor");
          break;
        }
      }
    }
  }

  std::vector<const WorkNode*> sorted_versions(const NodeId& concept_urn) const {
    std::vector<const WorkNode*> vs;
    for (const auto& e : in(concept_urn, EdgeKind::MemberOf)) {
      if (const WorkNode* w = g_.find_work(e.from); w && w->validity) vs.push_back(w);
    }
    std::sort(vs.begin(), vs.end(), [](const WorkNode* a, const WorkNode* b) {
      return a->validity->start < b->validity->start;
    });
    return vs;
  }

  std::map<std::string, NodeId> realisations(const NodeId& work) const {
    std::map<std::string, NodeId> out_map;
    for (const auto& e : out(work, EdgeKind::RealisedIn)) {
      if (const ExpressionNode* x = g_.find_expression(e.to)) out_map.emplace(x->language, e.to);
    }
    return out_map;
  }

  void check_parallel_hierarchy() {
    std::set<Edge> expected;
    for (const auto& e : g_.edges()) {
      if (e.kind != EdgeKind::HasPart) continue;
      const WorkNode* parent = g_.find_work(e.from);
      if (!parent || parent->kind == WorkKind::AmendmentInstrument) continue;
      auto pv = sorted_versions(e.from);
      auto cv = sorted_versions(e.to);
      std::size_t j0 = 0;
      for (const WorkNode* a : pv) {
        while (j0 < cv.size() && cv[j0]->validity->end && *cv[j0]->validity->end <= a->validity->start) ++j0;
        for (std::size_t j = j0; j < cv.size(); ++j) {
          const WorkNode* b = cv[j];
          if (a->validity->end && b->validity->start >= *a->validity->end) break;
          if (!a->validity->overlaps(*b->validity)) continue;
          auto ra = realisations(a->id());
          auto rb = realisations(b->id());
          for (const auto& [lang, xa] : ra) {
            auto it = rb.find(lang);
            if (it == rb.end()) continue;
            Edge want{xa, EdgeKind::HasComponent, it->second, {}, e.ordinal};
            expected.insert(want);
            if (!g_.edges().count(want)) {
              report("ParallelHierarchy", {xa, it->second},
                     "missing HasComponent with ordinal " + std::to_string(e.ordinal) +
                         " mirroring " + e.from + " HasPart " + e.to);
            }
          }
        }
      }
    }
    for (const auto& e : g_.edges()) {
      if (e.kind == EdgeKind::HasComponent && !expected.count(e)) {
        report("SpuriousComponent", {e.from, e.to},
               "HasComponent edge without a matching HasPart at an overlapping date");
      }
    }
  }

  void check_events() {
    for (const auto& [id, evp] : g_.events()) {
      const LegislativeEvent& ev = *evp;
      const auto& created = out(id, EdgeKind::Created);
      const auto& modified = out(id, EdgeKind::Modified);
      const auto& used = out(id, EdgeKind::Used);
      const auto& parents = in(id, EdgeKind::ConsistsOf);
      if (ev.level == EventLevel::Micro) {
        if (created.size() != 1 || modified.size() > 1) {
          report("MicroEventShape", {id},
                 "micro event creates " + std::to_string(created.size()) + " and modifies " +
                     std::to_string(modified.size()) + " works");
        }
        if (used.size() != 1) {
          report("MissingInstruction", {id},
                 "micro event uses " + std::to_string(used.size()) + " instructions");
        }
        if (parents.size() != 1) {
          report("OrphanMicroEvent", {id}, "micro event is not part of exactly one macro event");
        }
        for (const auto& p : parents) {
          const LegislativeEvent* macro = g_.find_event(p.from);
          if (!macro) continue;
          if (macro->level != EventLevel::Macro) {
            report("EventLevelMismatch", {p.from, id}, "parent of a micro event is not a macro event");
          }
          if (macro->time_span != ev.time_span) {
            report("NonConcurrentMicroEvent", {p.from, id}, "micro event date differs from its macro event");
          }
        }
      } else if (!parents.empty()) {
        report("EventLevelMismatch", {id}, "macro event nested in another event");
      }
      for (const auto& c : out(id, EdgeKind::ConsistsOf)) {
        const LegislativeEvent* child = g_.find_event(c.to);
        if (child && child->level != EventLevel::Micro) {
          report("EventLevelMismatch", {id, c.to}, "event consists of a non-micro event");
        }
      }
      for (const auto& e : created) {
        const WorkNode* w = g_.find_work(e.to);
        if (w && w->validity && w->validity->start != ev.time_span) {
          report("CreationDateMismatch", {id, e.to}, "created version does not start on the event date");
        }
      }
      for (const auto& e : modified) {
        const WorkNode* w = g_.find_work(e.to);
        if (w && w->validity && w->validity->end != ev.time_span) {
          report("ModificationDateMismatch", {id, e.to},
                 "modified version's validity does not end on the event date");
        }
      }
    }

    for (const auto& [id, wp] : g_.works()) {
      const WorkNode& w = *wp;
      if (!(is_version_kind(w.kind) || is_instrument_version(w))) continue;
      if (w.kind == WorkKind::AmendmentInstrument && w.urn.component_path) continue;
      const auto& creators = in(id, EdgeKind::Created);
      if (creators.size() != 1) {
        report(creators.empty() ? "MissingCreator" : "MultipleCreators", {id},
               "version created by " + std::to_string(creators.size()) + " events");
        continue;
      }
      if (!is_version_kind(w.kind)) continue;
      const LegislativeEvent* ev = g_.find_event(creators[0].from);
      if (!ev) continue;
      const auto& deriv = out(id, EdgeKind::DerivativeOf);
      std::set<NodeId> mods;
      for (const auto& e : out(ev->id, EdgeKind::Modified)) mods.insert(e.to);
      if (w.kind == WorkKind::ComponentTemporalVersion) {
        if (!deriv.empty() && ev->level != EventLevel::Micro) {
          report("ProvenanceMismatch", {id, ev->id}, "amended component version not created by a micro event");
        }
        if (ev->level == EventLevel::Micro) {
          std::set<NodeId> preds;
          for (const auto& e : deriv) preds.insert(e.to);
          if (preds != mods) {
            report("ProvenanceMismatch", {id, ev->id},
                   "micro event's modified version differs from the derivation predecessor");
          }
        } else if (!mods.empty()) {
          report("ProvenanceMismatch", {id, ev->id}, "initial component version created by a modifying event");
        }
      } else {
        for (const auto& e : deriv) {
          if (!mods.count(e.to)) {
            report("ProvenanceMismatch", {id, ev->id},
                   "creating event does not modify the predecessor version " + e.to);
          }
        }
        if (deriv.empty() && !mods.empty()) {
          report("ProvenanceMismatch", {id, ev->id}, "initial version created by a modifying event");
        }
      }
    }
  }

  const TemporalGraph& g_;
  std::map<Key, std::vector<Edge>> outgoing_;
  std::map<Key, std::vector<Edge>> incoming_;
  const std::vector<Edge> none_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate(const TemporalGraph& g) { return Validator(g).run(); }

}  // namespace normgraph
