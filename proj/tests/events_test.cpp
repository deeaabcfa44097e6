#include <gtest/gtest.h>

#include <random>

#include "normgraph/error.hpp"
#include "normgraph/events.hpp"
#include "normgraph/script_io.hpp"
#include "support/fixture.hpp"
#include "support/history_gen.hpp"

using namespace normgraph;

namespace {

Date d(const char* s) { return Date::parse_or_throw(s); }
const Urn kC = parse_urn(fixture::kConstitution);
const std::string kCs = fixture::kConstitution;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::Io;
}

TemporalGraph booted() { return bootstrap_norm(TemporalGraph{}, fixture::constitution()); }

Instruction replace(const std::string& target, const std::string& text, const std::string& provision) {
  Instruction i;
  i.op = InstructionOp::ReplaceText;
  i.target = ComponentPath::parse(target);
  i.new_text = {{"pt", text}};
  i.provision_path = ComponentPath::parse(provision);
  return i;
}

AmendmentScript script(const char* date, const std::string& id, std::vector<Instruction> ins) {
  AmendmentScript s;
  s.instrument = {"br", "federal", "emenda.constitucional", d(date), id, "t", {"Mesa"}, "Amendment"};
  s.effective_date = d(date);
  s.instructions = std::move(ins);
  return s;
}

}  // namespace

TEST(Bootstrap, CreatesInitialVersions) {
  TemporalGraph g = booted();
  EXPECT_TRUE(validate(g).empty());
  const WorkNode* tv0 = g.find_work(kCs + "@1988-10-05");
  ASSERT_TRUE(tv0);
  EXPECT_EQ(tv0->kind, WorkKind::TemporalVersion);
  EXPECT_EQ(tv0->status, VersionStatus::InForce);
  EXPECT_FALSE(tv0->validity->end);
  EXPECT_TRUE(g.find_expression(kCs + "@1988-10-05~texto;pt"));
  const ExpressionNode* clv = g.find_expression(kCs + "@1988-10-05~texto;pt!art6_cpt");
  ASSERT_TRUE(clv);
  EXPECT_NE(clv->content->find("o trabalho, o lazer"), std::string::npos);
  const LegislativeEvent* ev = g.find_event(enactment_event_id(with_version(kC, d("1988-10-05"))));
  ASSERT_TRUE(ev);
  EXPECT_EQ(ev->level, EventLevel::Macro);
  // TV0 plus one CTV0 per component.
  EXPECT_EQ(ev->created.size(), 1u + 10u);
}

TEST(Bootstrap, Errors) {
  TemporalGraph g = booted();
  EXPECT_EQ(code_of([&] { bootstrap_norm(g, fixture::constitution()); }), ErrorCode::DuplicateUrn);
  NormDocument empty = fixture::constitution();
  empty.components.clear();
  EXPECT_EQ(code_of([&] { bootstrap_norm(TemporalGraph{}, empty); }), ErrorCode::EmptyComponentTree);
  NormDocument versioned = fixture::constitution();
  versioned.concept_urn = with_version(versioned.concept_urn, d("1990-01-01"));
  EXPECT_EQ(code_of([&] { bootstrap_norm(TemporalGraph{}, versioned); }), ErrorCode::InvalidArgument);
}

TEST(Bootstrap, IsPure) {
  TemporalGraph a = booted();
  TemporalGraph b = booted();
  EXPECT_EQ(a, b);
}

TEST(Amendment, Ec26Report) {
  TemporalGraph g = apply_amendment(booted(), kC, fixture::ec1()).first;
  auto [g2, report] = apply_amendment(g, kC, fixture::ec26());
  EXPECT_EQ(report.new_tv, kCs + "@2000-02-14");
  ASSERT_EQ(report.created.size(), 1u);
  EXPECT_EQ(report.created[0], kCs + "@2000-02-14!art6_cpt");
  EXPECT_EQ(report.superseded[0], kCs + "@1988-10-05!art6_cpt");
  EXPECT_EQ(report.micro_events[0],
            "event:instruction:urn:lex:br:federal:emenda.constitucional:2000-02-14;26@2000-02-14!art1_cpt_alt1_art6");
  const LegislativeEvent* micro = g2.find_event(report.micro_events[0]);
  ASSERT_TRUE(micro);
  EXPECT_EQ(micro->level, EventLevel::Micro);
  EXPECT_EQ(micro->modified, std::vector<NodeId>{kCs + "@1988-10-05!art6_cpt"});
  EXPECT_EQ(micro->instruction, "urn:lex:br:federal:emenda.constitucional:2000-02-14;26@2000-02-14!art1_cpt_alt1_art6");
  EXPECT_EQ(g2.parent_event(micro->id), report.macro_event);
  const WorkNode* old = g2.find_work(kCs + "@1988-10-05!art6_cpt");
  EXPECT_EQ(old->status, VersionStatus::Superseded);
  EXPECT_EQ(old->validity->end, d("2000-02-14"));
  EXPECT_TRUE(validate(g2).empty());
  // The input graph is untouched.
  EXPECT_EQ(g.find_work(kCs + "@1988-10-05!art6_cpt")->status, VersionStatus::InForce);
}

TEST(Amendment, FixtureContainsPrintedUrns) {
  TemporalGraph g = fixture::graph();
  for (const auto& s : fixture::printed_urns()) {
    EXPECT_NE(g.category(s), NodeCategory::None) << s;
  }
}

TEST(Amendment, Errors) {
  TemporalGraph g = booted();
  Urn other = parse_urn("urn:lex:br:federal:lei:1990-01-01;1");
  EXPECT_EQ(code_of([&] { apply_amendment(g, other, fixture::ec26()); }), ErrorCode::UnknownConcept);
  EXPECT_EQ(code_of([&] { apply_amendment(g, kC, script("1988-10-05", "9", {replace("art6_cpt", "x", "art1")})); }),
            ErrorCode::EffectiveDateNotAfterCurrent);
  EXPECT_EQ(code_of([&] { apply_amendment(g, kC, script("1990-01-01", "9", {replace("art99", "x", "art1")})); }),
            ErrorCode::UnknownTarget);
  Instruction en = replace("art6_cpt", "x", "art1");
  en.new_text = {{"en", "social rights"}};
  EXPECT_EQ(code_of([&] { apply_amendment(g, kC, script("1990-01-01", "9", {en})); }), ErrorCode::LanguageMismatch);

  Instruction add;
  add.op = InstructionOp::AddComponent;
  add.target = ComponentPath::parse("art6");
  add.new_text = {{"pt", "dup"}};
  add.provision_path = ComponentPath::parse("art1");
  EXPECT_EQ(code_of([&] { apply_amendment(g, kC, script("1990-01-01", "9", {add})); }), ErrorCode::DuplicateComponent);
  add.target = ComponentPath::parse("art7");
  add.position = Position{std::nullopt, 2u};
  EXPECT_EQ(code_of([&] { apply_amendment(g, kC, script("1990-01-01", "9", {add})); }), ErrorCode::DuplicateComponent);

  TemporalGraph g1 = apply_amendment(g, kC, fixture::ec1()).first;
  AmendmentScript again = fixture::ec1();
  again.effective_date = d("1995-01-01");
  EXPECT_EQ(code_of([&] { apply_amendment(g1, kC, again); }), ErrorCode::DuplicateUrn);
}

TEST(Amendment, RepealAndAdd) {
  TemporalGraph g = booted();
  Instruction rep;
  rep.op = InstructionOp::Repeal;
  rep.target = ComponentPath::parse("art27_par2");
  rep.provision_path = ComponentPath::parse("art1");
  Instruction add;
  add.op = InstructionOp::AddComponent;
  add.target = ComponentPath::parse("art6_par1");
  add.position = Position{ComponentPath::parse("art6"), std::nullopt};
  add.new_text = {{"pt", "Parágrafo único."}};
  add.provision_path = ComponentPath::parse("art2");
  auto [g2, report] = apply_amendment(g, kC, script("1995-05-05", "5", {rep, add}));
  EXPECT_TRUE(validate(g2).empty());
  EXPECT_EQ(g2.find_work(kCs + "@1995-05-05!art27_par2")->status, VersionStatus::Repealed);
  EXPECT_EQ(report.superseded[1], std::nullopt);
  auto parts = g2.parts_of(kCs + "!art6");
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[1].ordinal, 2u);
  EXPECT_EQ(parts[1].child, kCs + "!art6_par1");

  Instruction again = replace("art27_par2", "back", "art1");
  EXPECT_EQ(code_of([&] { apply_amendment(g2, kC, script("1996-01-01", "6", {again})); }), ErrorCode::UnknownTarget);
  Instruction under;
  under.op = InstructionOp::AddComponent;
  under.target = ComponentPath::parse("art27_par2_inc1");
  under.position = Position{ComponentPath::parse("art27_par2"), std::nullopt};
  under.new_text = {{"pt", "x"}};
  under.provision_path = ComponentPath::parse("art1");
  EXPECT_EQ(code_of([&] { apply_amendment(g2, kC, script("1996-01-01", "6", {under})); }), ErrorCode::UnknownTarget);
}

TEST(Script, Checks) {
  auto bad = [](AmendmentScript s) { return code_of([&] { check_script(s); }); };
  EXPECT_EQ(bad(script("1990-01-01", "1", {})), ErrorCode::InvalidScript);
  EXPECT_EQ(bad(script("1990-01-01", "1", {replace("art1", "a", "art1"), replace("art1", "b", "art2")})),
            ErrorCode::InvalidScript);
  EXPECT_EQ(bad(script("1990-01-01", "1", {replace("art1", "a", "art1"), replace("art2", "b", "art1")})),
            ErrorCode::InvalidScript);
  AmendmentScript early = script("1990-01-01", "1", {replace("art1", "a", "art1")});
  early.effective_date = d("1989-12-31");
  EXPECT_EQ(bad(early), ErrorCode::InvalidScript);
  Instruction rep;
  rep.op = InstructionOp::Repeal;
  rep.target = ComponentPath::parse("art1");
  rep.provision_path = ComponentPath::parse("art1");
  rep.new_text = {{"pt", "x"}};
  EXPECT_EQ(bad(script("1990-01-01", "1", {rep})), ErrorCode::InvalidScript);
  Instruction empty = replace("art1", "a", "art1");
  empty.new_text.clear();
  EXPECT_EQ(bad(script("1990-01-01", "1", {empty})), ErrorCode::InvalidScript);
  EXPECT_NO_THROW(check_script(fixture::ec26()));
}

TEST(ScriptIo, JsonRoundTrip) {
  NormDocument doc = fixture::constitution();
  EXPECT_EQ(norm_document_from_json(to_json(doc)), doc);
  for (const auto& s : {fixture::ec1(), fixture::ec26()}) {
    EXPECT_EQ(amendment_script_from_json(to_json(s)), s);
  }
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto h = gen::generate(rng, gen::HistoryParams{});
    EXPECT_EQ(parse_norm_document(to_json(h.doc).dump()), h.doc);
    for (const auto& s : h.scripts) EXPECT_EQ(parse_amendment_script(to_json(s).dump()), s);
  }
}

TEST(ScriptIo, StrictDecoding) {
  auto bad_norm = [](const std::string& text) { return code_of([&] { parse_norm_document(text); }); };
  EXPECT_EQ(bad_norm("{"), ErrorCode::InvalidScript);
  EXPECT_EQ(bad_norm("[]"), ErrorCode::InvalidScript);
  EXPECT_EQ(bad_norm(R"({"concept":"urn:lex:br:federal:lei:2000-01-01;1","enacted":"2000-01-01","components":[],"extra":1})"),
            ErrorCode::InvalidScript);
  EXPECT_EQ(bad_norm(R"({"concept":"urn:lex:br:federal:lei:2000-01-01;1","enacted":"01/01/2000","components":[]})"),
            ErrorCode::InvalidScript);
  EXPECT_EQ(bad_norm(R"({"concept":"nope","enacted":"2000-01-01","components":[]})"), ErrorCode::InvalidScript);
  auto bad_script = [](const std::string& text) { return code_of([&] { parse_amendment_script(text); }); };
  EXPECT_EQ(bad_script(R"({"instrument":{},"effective_date":"2000-01-01","instructions":[]})"), ErrorCode::InvalidScript);
  std::string ok = fixture::read_text(fixture::path("ec26.json"));
  std::string wrong_op = ok;
  wrong_op.replace(wrong_op.find("ReplaceText"), 11, "Rewrite");
  EXPECT_EQ(bad_script(wrong_op), ErrorCode::InvalidScript);
}
