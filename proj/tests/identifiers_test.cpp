#include <gtest/gtest.h>

#include <random>

#include "normgraph/error.hpp"
#include "normgraph/urn.hpp"
#include "support/fixture.hpp"
#include "support/history_gen.hpp"

using namespace normgraph;

namespace {

size_t malformed_at(const std::string& text) {
  try {
    parse_urn(text);
  } catch (const MalformedUrn& e) {
    return e.position();
  }
  ADD_FAILURE() << "accepted " << text;
  return std::string::npos;
}

}  // namespace

TEST(Date, ParsesStrictIso) {
  auto d = Date::parse("2000-02-29");
  ASSERT_TRUE(d);
  EXPECT_EQ(d->to_string(), "2000-02-29");
  EXPECT_FALSE(Date::parse("1999-02-29"));
  EXPECT_FALSE(Date::parse("2000-2-14"));
  EXPECT_FALSE(Date::parse("2000-02-14T00"));
  EXPECT_FALSE(Date::parse("20000-02-14"));
  EXPECT_FALSE(Date::parse("2000/02/14"));
  EXPECT_FALSE(Date::parse(""));
  EXPECT_THROW(Date::parse_or_throw("yesterday"), Error);
}

TEST(Date, ArithmeticAndOrder) {
  Date a = Date::from_ymd(1999, 12, 31);
  EXPECT_EQ(a.plus_days(1).to_string(), "2000-01-01");
  EXPECT_EQ(a.plus_days(-365).to_string(), "1998-12-31");
  EXPECT_LT(a, a.plus_days(1));
  EXPECT_EQ(Date::from_ymd(1970, 1, 1).days_since_epoch(), 0);
}

TEST(Urn, ParsesFullForm) {
  Urn u = parse_urn("urn:lex:br:federal:constituicao:1988-10-05;1988@2000-02-14~texto;pt!art6_cpt");
  EXPECT_EQ(u.jurisdiction, "br");
  EXPECT_EQ(u.authority, "federal");
  EXPECT_EQ(u.doctype, "constituicao");
  EXPECT_EQ(u.base_date.to_string(), "1988-10-05");
  EXPECT_EQ(u.base_id, "1988");
  ASSERT_TRUE(u.version_date);
  EXPECT_EQ(u.version_date->to_string(), "2000-02-14");
  EXPECT_EQ(u.form, "texto");
  EXPECT_EQ(u.language, "pt");
  ASSERT_TRUE(u.component_path);
  ASSERT_EQ(u.component_path->segments().size(), 2u);
  EXPECT_EQ(u.component_path->segments()[0].kind, "art");
  EXPECT_EQ(u.component_path->segments()[0].index, 6u);
  EXPECT_EQ(u.component_path->segments()[1].kind, "cpt");
  EXPECT_FALSE(u.component_path->segments()[1].index);
}

TEST(Urn, DottedDoctype) {
  Urn u = parse_urn("urn:lex:br:federal:emenda.constitucional:2000-02-14;26@2000-02-14!art1_cpt_alt1_art6");
  EXPECT_EQ(u.doctype, "emenda.constitucional");
  EXPECT_EQ(u.component_path->to_string(), "art1_cpt_alt1_art6");
  EXPECT_FALSE(u.language);
}

TEST(Urn, PrintedIdentifiersRoundTrip) {
  for (const auto& s : fixture::printed_urns()) {
    EXPECT_EQ(format_urn(parse_urn(s)), s);
  }
}

TEST(Urn, Builders) {
  Urn c = parse_urn(fixture::kConstitution);
  Urn v = with_version(c, Date::from_ymd(1992, 3, 31));
  EXPECT_EQ(format_urn(v), "urn:lex:br:federal:constituicao:1988-10-05;1988@1992-03-31");
  Urn l = with_language(v, "texto", "pt");
  EXPECT_EQ(format_urn(l), "urn:lex:br:federal:constituicao:1988-10-05;1988@1992-03-31~texto;pt");
  Urn p = with_component(l, ComponentPath::parse("art6_cpt"));
  EXPECT_EQ(format_urn(p), "urn:lex:br:federal:constituicao:1988-10-05;1988@1992-03-31~texto;pt!art6_cpt");
  EXPECT_EQ(format_urn(without_language(p)), "urn:lex:br:federal:constituicao:1988-10-05;1988@1992-03-31!art6_cpt");
  EXPECT_EQ(format_urn(without_version(without_language(p))), "urn:lex:br:federal:constituicao:1988-10-05;1988!art6_cpt");
  EXPECT_EQ(without_component(v), v);
  EXPECT_EQ(strip_to_concept(p), c);
}

TEST(Urn, VersionBeforeBaseRejected) {
  Urn c = parse_urn(fixture::kConstitution);
  EXPECT_THROW(with_version(c, Date::from_ymd(1988, 10, 4)), Error);
  EXPECT_NO_THROW(with_version(c, Date::from_ymd(1988, 10, 5)));
  EXPECT_GT(malformed_at("urn:lex:br:federal:constituicao:1988-10-05;1988@1988-10-04"), 0u);
}

TEST(Urn, RejectsWithPosition) {
  EXPECT_EQ(malformed_at("urx:lex:br"), 0u);
  EXPECT_EQ(malformed_at("urn:lex:BR:federal:lei:2000-01-01;1"), 8u);
  EXPECT_EQ(malformed_at("urn:lex:br:federal:lei:2000-13-01;1"), 23u);
  EXPECT_EQ(malformed_at("urn:lex:br:federal:lei:2000-01-01;"), 34u);
  EXPECT_EQ(malformed_at("urn:lex:br:federal:lei:2000-01-01;1!art06"), 36u);
  EXPECT_EQ(malformed_at("urn:lex:br:federal:lei:2000-01-01;1!art0"), 36u);
  malformed_at("urn:lex:br:federal:lei:2000-01-01;1!");
  malformed_at("urn:lex:br:federal:lei:2000-01-01;1!art1__cpt");
  malformed_at("urn:lex:br:federal:lei:2000-01-01;1~texto");
  malformed_at("urn:lex:br:federal:lei:2000-01-01;1~texto;p");
  malformed_at("urn:lex:br:federal:lei:2000-01-01;1!art1@2000-01-02");
  malformed_at("urn:lex:br:federal:lei:2000-01-01;1!art1~texto;pt");
  malformed_at("urn:lex:br:federal:lei:2000-01-01;1 ");
  malformed_at("urn:lex:br:federal:lei..x:2000-01-01;1");
  malformed_at("urn:lex:br:federal:-lei:2000-01-01;1");
}

TEST(Urn, ErrorCodeIsMalformedUrn) {
  try {
    parse_urn("urn:lex:br");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedUrn);
    EXPECT_NE(std::string(e.what()).find("MalformedUrn"), std::string::npos);
  }
}

TEST(ComponentPath, ParseAndOrder) {
  auto p = ComponentPath::parse("art27_par2");
  EXPECT_EQ(p.to_string(), "art27_par2");
  EXPECT_LT(ComponentPath::parse("art2"), ComponentPath::parse("art10"));
  EXPECT_THROW(ComponentPath::parse("Art1"), MalformedUrn);
  EXPECT_THROW(ComponentPath::parse(""), MalformedUrn);
  EXPECT_THROW(ComponentPath(std::vector<PathSegment>{}), Error);
  EXPECT_THROW(ComponentPath({PathSegment{"art", 0}}), Error);
}

TEST(Urn, Validators) {
  EXPECT_TRUE(is_valid_token("a-b-c"));
  EXPECT_FALSE(is_valid_token("a--b"));
  EXPECT_FALSE(is_valid_token("-a"));
  EXPECT_TRUE(is_valid_doctype("emenda.constitucional"));
  EXPECT_FALSE(is_valid_doctype("emenda."));
  EXPECT_TRUE(is_valid_language("pt"));
  EXPECT_TRUE(is_valid_language("pt-br"));
  EXPECT_FALSE(is_valid_language("p"));
  EXPECT_FALSE(is_valid_language("PT"));
}

TEST(Urn, GeneratedRoundTrip) {
  std::mt19937_64 rng(20240501);
  for (int i = 0; i < 2000; ++i) {
    std::string s = gen::random_urn(rng);
    Urn u;
    ASSERT_NO_THROW(u = parse_urn(s)) << s;
    EXPECT_EQ(format_urn(u), s);
    EXPECT_EQ(parse_urn(format_urn(u)), u);
  }
}
