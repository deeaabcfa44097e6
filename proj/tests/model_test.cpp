#include <gtest/gtest.h>

#include <random>

#include "normgraph/error.hpp"
#include "normgraph/events.hpp"
#include "normgraph/model.hpp"
#include "support/fixture.hpp"
#include "support/history_gen.hpp"

using namespace normgraph;

namespace {

Date d(const char* s) { return Date::parse_or_throw(s); }

WorkNode work(const std::string& urn, WorkKind kind) { return {parse_urn(urn), kind, std::nullopt, std::nullopt}; }

WorkNode version(const std::string& urn, WorkKind kind, const char* start) {
  return {parse_urn(urn), kind, ValidityInterval{d(start), std::nullopt}, VersionStatus::InForce};
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

bool has_rule(const std::vector<Violation>& vs, const std::string& rule) {
  for (const auto& v : vs) {
    if (v.rule == rule) return true;
  }
  return false;
}

const std::string kC = fixture::kConstitution;
const std::string kTv0 = kC + "@1988-10-05";

}  // namespace

TEST(Interval, HalfOpen) {
  ValidityInterval a{d("2000-01-01"), d("2000-02-01")};
  EXPECT_TRUE(a.contains(d("2000-01-01")));
  EXPECT_TRUE(a.contains(d("2000-01-31")));
  EXPECT_FALSE(a.contains(d("2000-02-01")));
  ValidityInterval b{d("2000-02-01"), std::nullopt};
  EXPECT_FALSE(a.overlaps(b));
  EXPECT_TRUE(b.contains(d("9999-12-31")));
  ValidityInterval c{d("2000-01-15"), std::nullopt};
  EXPECT_TRUE(a.overlaps(c));
}

TEST(Enums, StringRoundTrip) {
  for (auto k : {WorkKind::NormConcept, WorkKind::TemporalVersion, WorkKind::ComponentConcept,
                 WorkKind::ComponentTemporalVersion, WorkKind::AmendmentInstrument}) {
    EXPECT_EQ(work_kind_from_string(to_string(k)), k);
  }
  for (auto s : {VersionStatus::InForce, VersionStatus::Superseded, VersionStatus::Repealed}) {
    EXPECT_EQ(version_status_from_string(to_string(s)), s);
  }
  EXPECT_FALSE(work_kind_from_string("Work"));
}

TEST(Graph, EmptyGraphIsValid) {
  TemporalGraph g;
  EXPECT_TRUE(g.empty());
  EXPECT_TRUE(validate(g).empty());
}

TEST(Graph, AddWorkChecksShape) {
  TemporalGraph g;
  g = add_work(g, work(kC, WorkKind::NormConcept));
  EXPECT_EQ(g.category(kC), NodeCategory::Work);
  EXPECT_EQ(code_of([&] { add_work(g, work(kC, WorkKind::NormConcept)); }), ErrorCode::DuplicateUrn);
  // A concept urn cannot carry a version date, and a version needs one.
  EXPECT_EQ(code_of([&] { add_work(g, work(kTv0, WorkKind::NormConcept)); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { add_work(g, version(kC + "!art1", WorkKind::TemporalVersion, "1988-10-05")); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { add_work(g, work(kTv0 + "~texto;pt", WorkKind::TemporalVersion)); }),
            ErrorCode::InvalidArgument);
  ExpressionNode lv{parse_urn(kTv0 + "~texto;pt"), ExpressionKind::LanguageVersion, "en", std::nullopt};
  EXPECT_EQ(code_of([&] { add_expression(g, lv); }), ErrorCode::InvalidArgument);
  lv.kind = ExpressionKind::ComponentLanguageVersion;
  lv.language = "pt";
  EXPECT_EQ(code_of([&] { add_expression(g, lv); }), ErrorCode::InvalidArgument);
}

TEST(Graph, EdgeEndpointRules) {
  TemporalGraph g;
  g = add_work(g, work(kC, WorkKind::NormConcept));
  g = add_work(g, version(kTv0, WorkKind::TemporalVersion, "1988-10-05"));
  g = add_edge(g, kTv0, EdgeKind::MemberOf, kC);
  EXPECT_EQ(g.concept_of(kTv0), kC);
  EXPECT_EQ(code_of([&] { add_edge(g, kC, EdgeKind::MemberOf, kTv0); }), ErrorCode::IllegalEdgeKind);
  EXPECT_EQ(code_of([&] { add_edge(g, kTv0, EdgeKind::MemberOf, kC + "!art1"); }), ErrorCode::UnknownEndpoint);
  EXPECT_EQ(code_of([&] { add_edge(g, kC, EdgeKind::HasPart, kTv0, {}, 1); }), ErrorCode::IllegalEdgeKind);
  // Idempotent duplicate.
  TemporalGraph again = add_edge(g, kTv0, EdgeKind::MemberOf, kC);
  EXPECT_EQ(again.edges().size(), g.edges().size());
}

TEST(Graph, EditsDoNotLeakIntoBase) {
  TemporalGraph base = fixture::graph();
  TemporalGraph copy = base;
  GraphEditor ed(base);
  ed.remove_node(kTv0);
  TemporalGraph edited = std::move(ed).commit();
  EXPECT_EQ(base, copy);
  EXPECT_EQ(base.category(kTv0), NodeCategory::Work);
  EXPECT_EQ(edited.category(kTv0), NodeCategory::None);
  EXPECT_FALSE(edited == base);
  // Untouched nodes are shared, not copied.
  const std::string cc = kC + "!art6_cpt";
  EXPECT_EQ(base.find_work(cc), edited.find_work(cc));
}

TEST(Graph, FixtureQueries) {
  TemporalGraph g = fixture::graph();
  ASSERT_EQ(g.versions_of(kC).size(), 3u);
  EXPECT_EQ(g.version_at(kC, d("1992-03-30"))->id(), kTv0);
  EXPECT_EQ(g.version_at(kC, d("1992-03-31"))->id(), kC + "@1992-03-31");
  EXPECT_EQ(g.version_at(kC, d("1988-10-04")), nullptr);
  EXPECT_EQ(g.successor(kTv0), kC + "@1992-03-31");
  EXPECT_EQ(g.predecessor(kC + "@2000-02-14"), kC + "@1992-03-31");
  auto parts = g.parts_of(kC);
  ASSERT_EQ(parts.size(), 4u);
  EXPECT_EQ(parts[1].child, kC + "!art6");
  EXPECT_EQ(g.part_parent(kC + "!art6_cpt"), kC + "!art6");
  const auto& real = g.realisations_of(kC + "@2000-02-14!art6_cpt");
  ASSERT_EQ(real.size(), 1u);
  EXPECT_EQ(real.at("pt"), kC + "@2000-02-14~texto;pt!art6_cpt");
}

TEST(Validate, FixtureIsClean) {
  auto vs = validate(fixture::graph());
  for (const auto& v : vs) ADD_FAILURE() << v.rule << ": " << v.message;
}

TEST(Validate, DetectsBrokenPartition) {
  GraphEditor ed(fixture::graph());
  ed.close_version(kC + "@2000-02-14", d("2010-01-01"), VersionStatus::Superseded);
  EXPECT_TRUE(has_rule(validate(ed.view()), "NewestVersionClosed"));
}

TEST(Validate, DetectsMissingParallelEdge) {
  TemporalGraph g = fixture::graph();
  GraphEditor ed(g);
  for (const auto& e : g.edges()) {
    if (e.kind == EdgeKind::HasComponent && e.to == kC + "@2000-02-14~texto;pt!art6_cpt") {
      ed.remove_edge(e);
      break;
    }
  }
  EXPECT_TRUE(has_rule(validate(ed.view()), "ParallelHierarchy"));
}

TEST(Validate, DetectsSpuriousComponent) {
  GraphEditor ed(fixture::graph());
  ed.add_edge({kTv0 + "~texto;pt", EdgeKind::HasComponent, kC + "@2000-02-14~texto;pt!art6_cpt", {}, 2});
  EXPECT_FALSE(validate(ed.view()).empty());
}

// Every single node or edge deletion from a valid single-language graph must
// be reported.
namespace {

void expect_every_deletion_detected(const TemporalGraph& g, const std::string& label) {
  ASSERT_TRUE(validate(g).empty()) << label;
  for (const auto& e : g.edges()) {
    GraphEditor ed(g);
    ed.remove_edge(e);
    EXPECT_FALSE(validate(ed.view()).empty())
        << label << ": undetected removal of " << e.from << " " << to_string(e.kind) << " " << e.to;
  }
  std::vector<NodeId> ids;
  for (const auto& [id, w] : g.works()) ids.push_back(id);
  for (const auto& [id, x] : g.expressions()) ids.push_back(id);
  for (const auto& [id, ev] : g.events()) ids.push_back(id);
  for (const auto& id : ids) {
    GraphEditor ed(g);
    ed.remove_node(id);
    EXPECT_FALSE(validate(ed.view()).empty()) << label << ": undetected removal of node " << id;
  }
}

}  // namespace

TEST(Mutation, FixtureDeletionsDetected) { expect_every_deletion_detected(fixture::graph(), "fixture"); }

TEST(Mutation, GeneratedDeletionsDetected) {
  std::mt19937_64 rng(77);
  gen::HistoryParams p;
  p.min_components = 2;
  p.max_components = 5;
  p.min_amendments = 1;
  p.max_amendments = 4;
  p.second_language = 0;
  for (int i = 0; i < 6; ++i) {
    auto h = gen::generate(rng, p);
    TemporalGraph g = bootstrap_norm(TemporalGraph{}, h.doc);
    for (const auto& s : h.scripts) g = apply_amendment(g, h.doc.concept_urn, s).first;
    expect_every_deletion_detected(g, "history " + std::to_string(i));
  }
}
