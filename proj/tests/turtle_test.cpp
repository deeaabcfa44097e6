#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "normgraph/error.hpp"
#include "normgraph/turtle.hpp"
#include "support/fixture.hpp"
#include "support/history_gen.hpp"

using namespace normgraph;

namespace {

const std::string kCs = fixture::kConstitution;

std::vector<std::string> body_lines(const std::string& ttl) {
  std::vector<std::string> out;
  std::istringstream in(ttl);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("@prefix", 0) == 0) continue;
    out.push_back(line);
  }
  return out;
}

std::size_t count_containing(const std::vector<std::string>& lines, const std::string& needle) {
  std::size_t n = 0;
  for (const auto& l : lines) n += l.find(needle) != std::string::npos;
  return n;
}

// Expected line count derived from the graph's contents.
std::size_t expected_triples(const TemporalGraph& g) {
  std::size_t n = 0;
  for (const auto& [id, w] : g.works()) {
    n += 2;  // typing + kind
    if (w->status) n += 1;
    if (w->validity) n += 3 + (w->validity->end ? 1 : 0);
  }
  for (const auto& [id, x] : g.expressions()) n += 4 + (x->content ? 1 : 0);
  for (const auto& [id, ev] : g.events()) {
    n += 1 + (ev->modified.empty() ? 0 : 1);  // typings
    n += 2;                                    // level, nature
    n += 3;                                    // time-span link, typing, begin
    n += 4 * ev->actors.size();
  }
  for (const auto& e : g.edges()) {
    bool qualified = e.kind == EdgeKind::DerivativeOf || e.kind == EdgeKind::HasPart || e.kind == EdgeKind::HasComponent;
    n += qualified ? 6 : 1;
  }
  return n;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::Io;
}

constexpr const char* kPrefixes =
    "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
    "@prefix lrmoo: <http://iflastandards.info/ns/lrm/lrmoo/> .\n"
    "@prefix ng: <urn:x-normgraph:vocab#> .\n";

}  // namespace

TEST(Turtle, EmptyGraphIsHeaderOnly) {
  std::string ttl = export_turtle(TemporalGraph{});
  EXPECT_EQ(ttl.rfind(std::string(kTurtleHeader) + "\n", 0), 0u);
  EXPECT_TRUE(body_lines(ttl).empty());
  EXPECT_TRUE(import_turtle(ttl).empty());
}

TEST(Turtle, FixtureTriples) {
  TemporalGraph g = fixture::graph();
  std::string ttl = export_turtle(g);
  auto lines = body_lines(ttl);
  EXPECT_EQ(count_containing(lines, "<" + kCs + "@1992-03-31> lrmoo:R2_is_derivative_of <" + kCs + "@1988-10-05> ."),
            1u);
  EXPECT_EQ(count_containing(lines, "<" + kCs + "@2000-02-14!art6_cpt> lrmoo:R10_is_member_of <" + kCs + "!art6_cpt> ."),
            1u);
  EXPECT_EQ(count_containing(lines, " rdf:type lrmoo:F1_Work ."), g.works().size());
  EXPECT_EQ(count_containing(lines, " rdf:type lrmoo:F2_Expression ."), g.expressions().size());
  EXPECT_EQ(count_containing(lines, " rdf:type lrmoo:F27_Work_Creation ."), g.events().size());
  EXPECT_EQ(lines.size(), expected_triples(g));
  EXPECT_TRUE(std::is_sorted(lines.begin(), lines.end()));
  EXPECT_EQ(ttl, fixture::read_text(fixture::golden_path("fixture.ttl")));
}

TEST(Turtle, Deterministic) {
  EXPECT_EQ(export_turtle(fixture::graph()), export_turtle(fixture::graph()));
}

TEST(Turtle, FixtureRoundTrip) {
  TemporalGraph g = fixture::graph();
  TemporalGraph back = import_turtle(export_turtle(g));
  EXPECT_EQ(back, g);
  EXPECT_TRUE(validate(back).empty());
}

TEST(Turtle, GeneratedRoundTrip) {
  std::mt19937_64 rng(2024);
  gen::HistoryParams p;
  p.max_amendments = 12;
  for (int i = 0; i < 40; ++i) {
    auto h = gen::generate(rng, p);
    TemporalGraph g = bootstrap_norm(TemporalGraph{}, h.doc);
    for (const auto& s : h.scripts) g = apply_amendment(g, h.doc.concept_urn, s).first;
    std::string ttl = export_turtle(g);
    EXPECT_EQ(body_lines(ttl).size(), expected_triples(g));
    TemporalGraph back = import_turtle(ttl);
    ASSERT_EQ(back, g) << "history " << i;
    EXPECT_EQ(export_turtle(back), ttl);
  }
}

TEST(Turtle, InvalidGraphRefused) {
  GraphEditor ed(fixture::graph());
  ed.remove_node(kCs + "@1992-03-31");
  EXPECT_EQ(code_of([&] { export_turtle(ed.view()); }), ErrorCode::InvalidGraph);
}

TEST(TurtleParser, Abbreviations) {
  auto t = parse_turtle(std::string(kPrefixes) +
                        "<urn:a> a lrmoo:F1_Work ;\n  ng:workKind \"NormConcept\" , \"x\\ty\\u00e9\" ;\n"
                        "  ng:ordinal 42 .\n# comment\n<urn:b> <urn:p> <urn:c> .\n");
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(t[0].predicate, "http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
  EXPECT_EQ(t[0].object, "http://iflastandards.info/ns/lrm/lrmoo/F1_Work");
  EXPECT_EQ(t[2].object, "x\ty\xc3\xa9");
  EXPECT_TRUE(t[3].is_literal);
  EXPECT_EQ(t[3].datatype, "http://www.w3.org/2001/XMLSchema#integer");
  EXPECT_EQ(t[4].subject, "urn:b");
}

TEST(TurtleParser, ErrorsCarryLine) {
  auto line_of = [](const std::string& text) {
    try {
      parse_turtle(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::TurtleParse);
      return std::string(e.what());
    }
    ADD_FAILURE() << "accepted";
    return std::string();
  };
  EXPECT_NE(line_of("<urn:a> <urn:b> <urn:c> .\n<urn:a> <urn:b> \"open\n").find("line 2"), std::string::npos);
  EXPECT_NE(line_of("\n\nfoo:a <urn:b> <urn:c> .").find("line 3"), std::string::npos);
  EXPECT_NE(line_of("<urn:a> <urn:b> <urn:c>").find("line 1"), std::string::npos);
  EXPECT_NE(line_of("<urn:a> <urn:b> _:x .").find("blank"), std::string::npos);
  EXPECT_NE(line_of("<urn:a b> <urn:b> <urn:c> .").find("IRI"), std::string::npos);
}

TEST(TurtleImport, UnknownVocabulary) {
  EXPECT_EQ(code_of([&] { import_turtle(std::string(kPrefixes) + "<urn:a> lrmoo:R99_unknown <urn:b> .\n"); }),
            ErrorCode::UnknownVocabularyTerm);
  EXPECT_EQ(code_of([&] { import_turtle(std::string(kPrefixes) + "<urn:a> a lrmoo:F99_Thing .\n"); }),
            ErrorCode::UnknownVocabularyTerm);
}

TEST(TurtleImport, StructuralErrors) {
  std::string ttl = export_turtle(fixture::graph());
  // Drop every reification of one ordinal-bearing edge but keep the edge.
  std::istringstream in(ttl);
  std::string line, cut;
  std::string target = "<urn:x-normgraph:statement:HasPart:2:" + kCs + "::" + kCs + "!art6>";
  while (std::getline(in, line)) {
    if (line.rfind(target, 0) != 0) cut += line + "\n";
  }
  ASSERT_LT(cut.size(), ttl.size());
  EXPECT_EQ(code_of([&] { import_turtle(cut); }), ErrorCode::TurtleParse);
}
