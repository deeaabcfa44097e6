#include "normgraph/events.hpp"

#include <algorithm>
#include <set>

#include "normgraph/error.hpp"

namespace normgraph {

namespace {

[[noreturn]] void script_error(const std::string& msg) { throw Error(ErrorCode::InvalidScript, msg); }

Urn version_urn_of(const Urn& concept_urn, Date at, const std::optional<ComponentPath>& path) {
  Urn u = with_version(concept_urn, at);
  if (path) u = with_component(u, *path);
  return u;
}

Urn expression_urn_of(const Urn& work, const std::string& lang) {
  return with_language(work, std::string(kTextForm), lang);
}

void link_expressions(GraphEditor& ed, const NodeId& parent_work, const NodeId& child_work,
                      unsigned ordinal) {
  const auto& pr = ed.view().realisations_of(parent_work);
  const auto& cr = ed.view().realisations_of(child_work);
  std::vector<Edge> edges;
  for (const auto& [lang, px] : pr) {
    auto it = cr.find(lang);
    if (it != cr.end()) edges.push_back({px, EdgeKind::HasComponent, it->second, {}, ordinal});
  }
  for (auto& e : edges) ed.add_edge(std::move(e));
}

void add_version(GraphEditor& ed, const Urn& urn, WorkKind kind, Date start, VersionStatus status,
                 const NodeId& concept_urn) {
  ed.add_work({urn, kind, ValidityInterval{start, std::nullopt}, status});
  ed.add_edge({format_urn(urn), EdgeKind::MemberOf, concept_urn, {}, 0});
}

void add_realisation(GraphEditor& ed, const Urn& work, ExpressionKind kind, const std::string& lang,
                     std::optional<std::string> content) {
  Urn xu = expression_urn_of(work, lang);
  ed.add_expression({xu, kind, lang, std::move(content)});
  ed.add_edge({format_urn(work), EdgeKind::RealisedIn, format_urn(xu), {}, 0});
}

struct Bootstrapper {
  GraphEditor& ed;
  const Urn& concept_urn;
  Date enacted;
  std::vector<NodeId> created;

  void add(const ComponentSpec& spec, const NodeId& parent_concept, const NodeId& parent_version,
           unsigned ordinal) {
    if (spec.text.empty()) {
      throw Error(ErrorCode::InvalidScript, "component " + spec.path.to_string() + " has no text");
    }
    Urn cc = with_component(concept_urn, spec.path);
    NodeId cc_id = format_urn(cc);
    ed.add_work({cc, WorkKind::ComponentConcept, std::nullopt, std::nullopt});
    ed.add_edge({parent_concept, EdgeKind::HasPart, cc_id, {}, ordinal});
    Urn ctv = version_urn_of(concept_urn, enacted, spec.path);
    NodeId ctv_id = format_urn(ctv);
    add_version(ed, ctv, WorkKind::ComponentTemporalVersion, enacted, VersionStatus::InForce, cc_id);
    for (const auto& [lang, text] : spec.text) {
      add_realisation(ed, ctv, ExpressionKind::ComponentLanguageVersion, lang, text);
    }
    link_expressions(ed, parent_version, ctv_id, ordinal);
    created.push_back(ctv_id);
    unsigned child_ordinal = 0;
    for (const auto& child : spec.children) add(child, cc_id, ctv_id, ++child_ordinal);
  }
};

void collect_languages(const std::vector<ComponentSpec>& specs, std::set<std::string>& out) {
  for (const auto& s : specs) {
    for (const auto& [lang, text] : s.text) out.insert(lang);
    collect_languages(s.children, out);
  }
}

}  // namespace

std::string_view to_string(InstructionOp op) {
  switch (op) {
    case InstructionOp::ReplaceText: return "ReplaceText";
    case InstructionOp::AddComponent: return "AddComponent";
    case InstructionOp::Repeal: return "Repeal";
  }
  return "?";
}

std::optional<InstructionOp> instruction_op_from_string(std::string_view s) {
  for (auto op : {InstructionOp::ReplaceText, InstructionOp::AddComponent, InstructionOp::Repeal}) {
    if (to_string(op) == s) return op;
  }
  return std::nullopt;
}

Urn InstrumentDescriptor::concept_urn() const {
  Urn u{jurisdiction, authority, doctype, date, id, {}, {}, {}, {}};
  try {
    check_urn(u);
  } catch (const Error& e) {
    script_error("invalid instrument identifier: " + e.detail());
  }
  return u;
}

NodeId enactment_event_id(const Urn& initial_version) {
  return "event:enactment:" + format_urn(initial_version);
}

NodeId amendment_event_id(const Urn& instrument_version) {
  return "event:amendment:" + format_urn(instrument_version);
}

NodeId instruction_event_id(const Urn& provision) { return "event:instruction:" + format_urn(provision); }

void check_script(const AmendmentScript& script) {
  script.instrument.concept_urn();
  if (script.instructions.empty()) script_error("amendment script has no instructions");
  if (script.effective_date < script.instrument.date) {
    script_error("effective date " + script.effective_date.to_string() + " precedes instrument date " +
                 script.instrument.date.to_string());
  }
  std::set<ComponentPath> targets, provisions;
  for (const auto& ins : script.instructions) {
    std::string where = "instruction " + ins.provision_path.to_string();
    if (ins.target.empty()) script_error(where + ": empty target");
    if (ins.provision_path.empty()) script_error("instruction with empty provision path");
    if (!targets.insert(ins.target).second) {
      script_error(where + ": target " + ins.target.to_string() + " appears twice");
    }
    if (!provisions.insert(ins.provision_path).second) {
      script_error(where + ": provision path appears twice");
    }
    for (const auto& [lang, text] : ins.new_text) {
      if (!is_valid_language(lang)) script_error(where + ": invalid language '" + lang + "'");
    }
    switch (ins.op) {
      case InstructionOp::ReplaceText:
        if (ins.new_text.empty()) script_error(where + ": ReplaceText requires new_text");
        if (ins.position) script_error(where + ": ReplaceText takes no position");
        break;
      case InstructionOp::AddComponent:
        if (ins.new_text.empty()) script_error(where + ": AddComponent requires new_text");
        if (ins.position && ins.position->ordinal && *ins.position->ordinal == 0) {
          script_error(where + ": ordinals are positive");
        }
        break;
      case InstructionOp::Repeal:
        if (!ins.new_text.empty() || ins.position) {
          script_error(where + ": Repeal carries neither new_text nor position");
        }
        break;
    }
  }
}

TemporalGraph bootstrap_norm(const TemporalGraph& g, const NormDocument& doc) {
  const Urn& concept_urn = doc.concept_urn;
  check_urn(concept_urn);
  if (concept_urn != strip_to_concept(concept_urn)) {
    throw Error(ErrorCode::InvalidArgument, "norm concept urn must not carry version, language or component: " +
                                                format_urn(concept_urn));
  }
  NodeId concept_id = format_urn(concept_urn);
  if (g.category(concept_id) != NodeCategory::None) {
    throw Error(ErrorCode::DuplicateUrn, "norm already exists: " + concept_id);
  }
  if (doc.components.empty()) {
    throw Error(ErrorCode::EmptyComponentTree, "norm " + concept_id + " has no components");
  }

  GraphEditor ed(g);
  ed.add_work({concept_urn, WorkKind::NormConcept, std::nullopt, std::nullopt});
  Urn tv0 = with_version(concept_urn, doc.enacted);
  NodeId tv0_id = format_urn(tv0);
  add_version(ed, tv0, WorkKind::TemporalVersion, doc.enacted, VersionStatus::InForce, concept_id);
  std::set<std::string> langs;
  collect_languages(doc.components, langs);
  for (const auto& lang : langs) {
    add_realisation(ed, tv0, ExpressionKind::LanguageVersion, lang, std::nullopt);
  }

  Bootstrapper boot{ed, concept_urn, doc.enacted, {tv0_id}};
  unsigned ordinal = 0;
  for (const auto& spec : doc.components) boot.add(spec, concept_id, tv0_id, ++ordinal);

  LegislativeEvent ev;
  ev.id = enactment_event_id(tv0);
  ev.level = EventLevel::Macro;
  ev.nature = doc.nature;
  ev.actors = doc.actors;
  ev.time_span = doc.enacted;
  ev.created = std::move(boot.created);
  ed.add_event(std::move(ev));
  return std::move(ed).commit();
}

TemporalGraph bootstrap_norm(const TemporalGraph& g, const Urn& concept_urn, Date enacted,
                             std::vector<ComponentSpec> components) {
  NormDocument doc;
  doc.concept_urn = concept_urn;
  doc.enacted = enacted;
  doc.components = std::move(components);
  return bootstrap_norm(g, doc);
}

std::pair<TemporalGraph, AmendmentReport> apply_amendment(const TemporalGraph& g, const Urn& concept_urn,
                                                          const AmendmentScript& script) {
  NodeId concept_id = format_urn(concept_urn);
  const WorkNode* norm = g.find_work(concept_id);
  if (!norm || norm->kind != WorkKind::NormConcept) {
    throw Error(ErrorCode::UnknownConcept, "no norm concept " + concept_id);
  }
  auto tvs = g.versions_of(concept_id);
  if (tvs.empty()) throw Error(ErrorCode::UnknownConcept, "norm " + concept_id + " has no versions");
  const WorkNode* current = g.find_work(tvs.back());
  if (!current->validity || current->validity->end || current->status != VersionStatus::InForce) {
    throw Error(ErrorCode::UnknownConcept, "norm " + concept_id + " has no version in force");
  }
  const Date eff = script.effective_date;
  if (!(current->validity->start < eff)) {
    throw Error(ErrorCode::EffectiveDateNotAfterCurrent,
                "effective date " + eff.to_string() + " is not after current version " + tvs.back());
  }
  check_script(script);

  const auto& ins = script.instrument;
  Urn instrument = ins.concept_urn();
  Urn instrument_version = ins.version_urn();
  NodeId instrument_id = format_urn(instrument);
  NodeId instrument_version_id = format_urn(instrument_version);
  if (g.category(instrument_id) != NodeCategory::None) {
    throw Error(ErrorCode::DuplicateUrn, "amending instrument already recorded: " + instrument_id);
  }

  GraphEditor ed(g);
  const TemporalGraph& view = ed.view();
  const NodeId prior_tv_id = tvs.back();
  std::set<std::string> langs;
  for (const auto& [lang, x] : g.realisations_of(prior_tv_id)) langs.insert(lang);

  // Amending instrument.
  ed.add_work({instrument, WorkKind::AmendmentInstrument, std::nullopt, std::nullopt});
  ed.add_work({instrument_version, WorkKind::AmendmentInstrument, std::nullopt, std::nullopt});
  ed.add_edge({instrument_version_id, EdgeKind::MemberOf, instrument_id, {}, 0});
  for (const auto& lang : langs) {
    add_realisation(ed, instrument_version, ExpressionKind::LanguageVersion, lang, ins.title);
  }

  // New temporal version of the amended norm.
  std::set<std::string> tv_langs = langs;
  for (const auto& i : script.instructions) {
    for (const auto& [lang, text] : i.new_text) tv_langs.insert(lang);
  }
  Urn new_tv = with_version(concept_urn, eff);
  NodeId new_tv_id = format_urn(new_tv);
  ed.close_version(prior_tv_id, eff, VersionStatus::Superseded);
  add_version(ed, new_tv, WorkKind::TemporalVersion, eff, VersionStatus::InForce, concept_id);
  ed.add_edge({new_tv_id, EdgeKind::DerivativeOf, prior_tv_id, std::string(kTemporalSuccession), 0});
  for (const auto& lang : tv_langs) {
    add_realisation(ed, new_tv, ExpressionKind::LanguageVersion, lang, std::nullopt);
  }

  LegislativeEvent macro;
  macro.id = amendment_event_id(instrument_version);
  macro.level = EventLevel::Macro;
  macro.nature = ins.nature;
  macro.actors = ins.actors;
  macro.time_span = eff;
  macro.modified = {prior_tv_id};
  macro.created = {new_tv_id, instrument_version_id};
  ed.add_event(macro);

  AmendmentReport report;
  report.macro_event = macro.id;
  report.new_tv = new_tv_id;

  std::vector<NodeId> new_ctvs;
  unsigned provision_ordinal = 0;
  for (const auto& i : script.instructions) {
    const std::string target_str = i.target.to_string();
    Urn provision = with_component(instrument_version, i.provision_path);
    NodeId provision_id = format_urn(provision);
    ed.add_work({provision, WorkKind::AmendmentInstrument, std::nullopt, std::nullopt});
    ed.add_edge({instrument_version_id, EdgeKind::HasPart, provision_id, {}, ++provision_ordinal});

    Urn cc = with_component(concept_urn, i.target);
    NodeId cc_id = format_urn(cc);
    Urn ctv = version_urn_of(concept_urn, eff, i.target);
    NodeId ctv_id = format_urn(ctv);
    std::optional<NodeId> prior_id;

    if (i.op == InstructionOp::AddComponent) {
      if (view.category(cc_id) != NodeCategory::None) {
        throw Error(ErrorCode::DuplicateComponent, "component " + target_str + " already exists");
      }
      NodeId parent_id = concept_id;
      if (i.position && i.position->parent) {
        parent_id = format_urn(with_component(concept_urn, *i.position->parent));
        const WorkNode* pw = view.find_work(parent_id);
        const WorkNode* pv = pw ? view.version_at(parent_id, eff) : nullptr;
        if (!pv || pv->status == VersionStatus::Repealed) {
          throw Error(ErrorCode::UnknownTarget, "parent component " + i.position->parent->to_string() +
                                                    " is not in force on " + eff.to_string());
        }
      }
      auto siblings = view.parts_of(parent_id);
      unsigned ordinal;
      if (i.position && i.position->ordinal) {
        ordinal = *i.position->ordinal;
        for (const auto& p : siblings) {
          if (p.ordinal == ordinal) {
            throw Error(ErrorCode::DuplicateComponent,
                        "ordinal " + std::to_string(ordinal) + " under " + parent_id + " is taken by " + p.child);
          }
        }
      } else {
        ordinal = siblings.empty() ? 1 : siblings.back().ordinal + 1;
      }
      ed.add_work({cc, WorkKind::ComponentConcept, std::nullopt, std::nullopt});
      ed.add_edge({parent_id, EdgeKind::HasPart, cc_id, {}, ordinal});
      add_version(ed, ctv, WorkKind::ComponentTemporalVersion, eff, VersionStatus::InForce, cc_id);
      for (const auto& [lang, text] : i.new_text) {
        add_realisation(ed, ctv, ExpressionKind::ComponentLanguageVersion, lang, text);
        add_realisation(ed, provision, ExpressionKind::ComponentLanguageVersion, lang, text);
      }
    } else {
      const WorkNode* cw = view.find_work(cc_id);
      const WorkNode* prior = cw && cw->kind == WorkKind::ComponentConcept ? view.version_at(cc_id, eff) : nullptr;
      if (!prior) {
        throw Error(ErrorCode::UnknownTarget,
                    "component " + target_str + " is not in force on " + eff.to_string());
      }
      if (prior->status == VersionStatus::Repealed) {
        throw Error(ErrorCode::UnknownTarget, "component " + target_str + " is repealed");
      }
      prior_id = prior->id();
      std::map<std::string, std::string> texts;
      if (i.op == InstructionOp::ReplaceText) {
        const auto& prior_langs = view.realisations_of(*prior_id);
        for (const auto& [lang, text] : i.new_text) {
          if (!prior_langs.count(lang)) {
            throw Error(ErrorCode::LanguageMismatch, "component " + target_str + " has no '" + lang +
                                                         "' text to replace");
          }
        }
        texts = i.new_text;
      } else {
        for (const auto& [lang, x] : view.realisations_of(*prior_id)) texts.emplace(lang, "");
      }
      ed.close_version(*prior_id, eff, VersionStatus::Superseded);
      auto status = i.op == InstructionOp::Repeal ? VersionStatus::Repealed : VersionStatus::InForce;
      add_version(ed, ctv, WorkKind::ComponentTemporalVersion, eff, status, cc_id);
      ed.add_edge({ctv_id, EdgeKind::DerivativeOf, *prior_id, std::string(kTemporalSuccession), 0});
      for (const auto& [lang, text] : texts) {
        add_realisation(ed, ctv, ExpressionKind::ComponentLanguageVersion, lang, text);
        add_realisation(ed, provision, ExpressionKind::ComponentLanguageVersion, lang, text);
      }
    }

    LegislativeEvent micro;
    micro.id = instruction_event_id(provision);
    micro.level = EventLevel::Micro;
    micro.nature = ins.nature;
    micro.actors = ins.actors;
    micro.time_span = eff;
    if (prior_id) micro.modified = {*prior_id};
    micro.created = {ctv_id};
    micro.instruction = provision_id;
    ed.add_event(micro);
    ed.add_edge({macro.id, EdgeKind::ConsistsOf, micro.id, {}, 0});

    report.micro_events.push_back(micro.id);
    report.created.push_back(ctv_id);
    report.superseded.push_back(prior_id);
    new_ctvs.push_back(ctv_id);
  }

  // Mirror the component tree at the expression level for every pair of
  // versions that now overlap.
  for (const auto& part : view.parts_of(concept_id)) {
    if (const WorkNode* v = view.version_at(part.child, eff)) {
      link_expressions(ed, new_tv_id, v->id(), part.ordinal);
    }
  }
  for (const auto& ctv_id : new_ctvs) {
    NodeId cc_id = *view.concept_of(ctv_id);
    NodeId parent = *view.part_parent(cc_id);
    if (parent != concept_id) {
      unsigned ordinal = 0;
      for (const auto& p : view.parts_of(parent)) {
        if (p.child == cc_id) ordinal = p.ordinal;
      }
      if (const WorkNode* pv = view.version_at(parent, eff)) link_expressions(ed, pv->id(), ctv_id, ordinal);
    }
    for (const auto& part : view.parts_of(cc_id)) {
      if (const WorkNode* v = view.version_at(part.child, eff)) {
        link_expressions(ed, ctv_id, v->id(), part.ordinal);
      }
    }
  }

  return {std::move(ed).commit(), std::move(report)};
}

}  // namespace normgraph
