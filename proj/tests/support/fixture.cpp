#include "support/fixture.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "normgraph/script_io.hpp"

namespace fixture {

using namespace normgraph;

std::string path(const std::string& name) { return std::string(NORMGRAPH_FIXTURE_DIR) + "/" + name; }
std::string golden_path(const std::string& name) { return std::string(NORMGRAPH_GOLDEN_DIR) + "/" + name; }

std::string read_text(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

NormDocument constitution() { return parse_norm_document(read_text(path("constitution.json"))); }
AmendmentScript ec1() { return parse_amendment_script(read_text(path("ec1.json"))); }
AmendmentScript ec26() { return parse_amendment_script(read_text(path("ec26.json"))); }

TemporalGraph graph() {
  Urn c = parse_urn(kConstitution);
  TemporalGraph g = bootstrap_norm(TemporalGraph{}, constitution());
  g = apply_amendment(g, c, ec1()).first;
  return apply_amendment(g, c, ec26()).first;
}

EventLog log() {
  Urn c = parse_urn(kConstitution);
  EventLog l;
  l.append(EntryKind::Bootstrap, bootstrap_payload(constitution()), "2024-01-01T00:00:00Z");
  l.append(EntryKind::Amendment, amendment_payload(c, ec1()), "2024-01-01T00:00:01Z");
  l.append(EntryKind::Amendment, amendment_payload(c, ec26()), "2024-01-01T00:00:02Z");
  return l;
}

const std::vector<std::string>& printed_urns() {
  static const std::vector<std::string> urns = {
      "urn:lex:br:federal:constituicao:1988-10-05;1988",
      "urn:lex:br:federal:constituicao:1988-10-05;1988@1988-10-05",
      "urn:lex:br:federal:constituicao:1988-10-05;1988@1988-10-05~texto;pt",
      "urn:lex:br:federal:constituicao:1988-10-05;1988@1992-03-31",
      "urn:lex:br:federal:constituicao:1988-10-05;1988@1992-03-31~texto;pt",
      "urn:lex:br:federal:constituicao:1988-10-05;1988!art6_cpt",
      "urn:lex:br:federal:constituicao:1988-10-05;1988@1988-10-05!art6_cpt",
      "urn:lex:br:federal:constituicao:1988-10-05;1988@1988-10-05~texto;pt!art6_cpt",
      "urn:lex:br:federal:emenda.constitucional:2000-02-14;26@2000-02-14!art1_cpt_alt1_art6",
      "urn:lex:br:federal:constituicao:1988-10-05;1988@2000-02-14!art6_cpt",
      "urn:lex:br:federal:constituicao:1988-10-05;1988@2000-02-14~texto;pt!art6_cpt",
  };
  return urns;
}

}  // namespace fixture
