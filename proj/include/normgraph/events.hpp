#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normgraph/model.hpp"

namespace normgraph {

// Expression form token used for every language version this library mints.
inline constexpr std::string_view kTextForm = "texto";

struct ComponentSpec {
  ComponentPath path;
  std::map<std::string, std::string> text;  // language -> text
  std::vector<ComponentSpec> children;

  friend bool operator==(const ComponentSpec&, const ComponentSpec&) = default;
};

// Input of bootstrap_norm: a norm as promulgated.
struct NormDocument {
  Urn concept_urn;
  Date enacted;
  std::string nature = "Enactment";
  std::vector<std::string> actors;
  std::vector<ComponentSpec> components;

  friend bool operator==(const NormDocument&, const NormDocument&) = default;
};

struct InstrumentDescriptor {
  std::string jurisdiction;
  std::string authority;
  std::string doctype;
  Date date;
  std::string id;
  std::string title;
  std::vector<std::string> actors;
  std::string nature;

  Urn concept_urn() const;
  Urn version_urn() const { return with_version(concept_urn(), date); }

  friend bool operator==(const InstrumentDescriptor&, const InstrumentDescriptor&) = default;
};

enum class InstructionOp { ReplaceText, AddComponent, Repeal };

std::string_view to_string(InstructionOp op);
std::optional<InstructionOp> instruction_op_from_string(std::string_view s);

struct Position {
  std::optional<ComponentPath> parent;  // absent: top level of the norm
  std::optional<unsigned> ordinal;      // absent: after the last sibling

  friend bool operator==(const Position&, const Position&) = default;
};

struct Instruction {
  InstructionOp op = InstructionOp::ReplaceText;
  ComponentPath target;
  std::map<std::string, std::string> new_text;
  std::optional<Position> position;
  ComponentPath provision_path;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct AmendmentScript {
  InstrumentDescriptor instrument;
  Date effective_date;
  std::vector<Instruction> instructions;
  // Amended norm, when the script names it.
  std::optional<Urn> amends;

  friend bool operator==(const AmendmentScript&, const AmendmentScript&) = default;
};

// Throws Error(InvalidScript) on a violated script invariant.
void check_script(const AmendmentScript& script);

struct AmendmentReport {
  NodeId macro_event;
  std::vector<NodeId> micro_events;                // one per instruction, in order
  std::vector<NodeId> created;                     // new component versions
  std::vector<std::optional<NodeId>> superseded;   // closed predecessors; none for additions
  NodeId new_tv;
};

NodeId enactment_event_id(const Urn& initial_version);
NodeId amendment_event_id(const Urn& instrument_version);
NodeId instruction_event_id(const Urn& provision);

TemporalGraph bootstrap_norm(const TemporalGraph& g, const NormDocument& doc);
TemporalGraph bootstrap_norm(const TemporalGraph& g, const Urn& concept_urn, Date enacted,
                             std::vector<ComponentSpec> components);

std::pair<TemporalGraph, AmendmentReport> apply_amendment(const TemporalGraph& g, const Urn& concept_urn,
                                                          const AmendmentScript& script);

}  // namespace normgraph
