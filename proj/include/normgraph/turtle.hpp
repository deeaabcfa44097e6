#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "normgraph/model.hpp"

// RDF Turtle export of a validated graph, and its inverse.
//
// Node subjects are the graph ids (urn:lex: identifiers and event ids).
// Every triple is written on its own line as `subject predicate object .`,
// and lines are sorted, so equal graphs export identical bytes.
//
// Prefix map (fixed):
//   rdf:   http://www.w3.org/1999/02/22-rdf-syntax-ns#
//   rdfs:  http://www.w3.org/2000/01/rdf-schema#
//   xsd:   http://www.w3.org/2001/XMLSchema#
//   crm:   http://www.cidoc-crm.org/cidoc-crm/
//   lrmoo: http://iflastandards.info/ns/lrm/lrmoo/
//   ng:    urn:x-normgraph:vocab#   (library-specific attributes)
//
// Validity intervals and event dates are time-span nodes <id#validity> and
// <id#time-span> linked with crm:P4_has_time-span; P82a carries the start
// and P82b the exclusive end. Ordinals and succession qualifiers sit on
// rdf:Statement nodes reifying the edge.
namespace normgraph {

inline constexpr std::string_view kTurtleHeader = "# normgraph-turtle 1";

// Throws Error(InvalidGraph) if validate(g) reports violations.
std::string export_turtle(const TemporalGraph& g);

// Throws TurtleParse (with line number) or UnknownVocabularyTerm.
TemporalGraph import_turtle(std::string_view text);

struct Triple {
  std::string subject;    // absolute IRI
  std::string predicate;  // absolute IRI
  std::string object;     // absolute IRI, or the lexical form when is_literal
  bool is_literal = false;
  std::string datatype;   // absolute IRI, literals only; empty for plain strings

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Parses the Turtle subset produced by export_turtle (prefix directives,
// IRIs, prefixed names, `a`, string literals with escapes and datatypes,
// integers, and the `;` `,` abbreviations).
std::vector<Triple> parse_turtle(std::string_view text);

}  // namespace normgraph
