#include "normgraph/script_io.hpp"

#include <initializer_list>
#include <set>

#include "normgraph/error.hpp"

namespace normgraph {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw Error(ErrorCode::InvalidScript, where + ": " + msg);
}

void only_keys(const json& j, const std::string& where, std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) fail(where, "expected an object");
  std::set<std::string_view> allowed(keys);
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) fail(where, "unknown key '" + k + "'");
  }
}

const json& required(const json& j, const std::string& where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing key '") + key + "'");
  return *it;
}

std::string string_at(const json& j, const std::string& where, const char* key) {
  const json& v = required(j, where, key);
  if (!v.is_string()) fail(where, std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::string optional_string(const json& j, const std::string& where, const char* key, std::string dflt) {
  if (!j.contains(key)) return dflt;
  return string_at(j, where, key);
}

Date date_at(const json& j, const std::string& where, const char* key) {
  auto s = string_at(j, where, key);
  auto d = Date::parse(s);
  if (!d) fail(where, std::string("'") + key + "' is not an ISO date: '" + s + "'");
  return *d;
}

std::vector<std::string> strings_at(const json& j, const std::string& where, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  const json& v = j.at(key);
  if (!v.is_array()) fail(where, std::string("'") + key + "' must be a list");
  for (const auto& s : v) {
    if (!s.is_string()) fail(where, std::string("'") + key + "' must contain strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

ComponentPath path_from(const std::string& text, const std::string& where) {
  try {
    return ComponentPath::parse(text);
  } catch (const Error& e) {
    fail(where, "invalid component path '" + text + "': " + e.detail());
  }
}

std::map<std::string, std::string> texts_at(const json& j, const std::string& where, const char* key) {
  std::map<std::string, std::string> out;
  if (!j.contains(key)) return out;
  const json& v = j.at(key);
  if (!v.is_object()) fail(where, std::string("'") + key + "' must map language codes to text");
  for (const auto& [lang, text] : v.items()) {
    if (!text.is_string()) fail(where, "text for '" + lang + "' must be a string");
    if (!is_valid_language(lang)) fail(where, "invalid language code '" + lang + "'");
    out.emplace(lang, text.get<std::string>());
  }
  return out;
}

json component_to_json(const ComponentSpec& c) {
  json j = {{"path", c.path.to_string()}, {"text", c.text}};
  if (!c.children.empty()) {
    json kids = json::array();
    for (const auto& k : c.children) kids.push_back(component_to_json(k));
    j["children"] = std::move(kids);
  }
  return j;
}

ComponentSpec component_from_json(const json& j, const std::string& where) {
  only_keys(j, where, {"path", "text", "children"});
  ComponentSpec c;
  auto path = string_at(j, where, "path");
  std::string here = where + " '" + path + "'";
  c.path = path_from(path, here);
  c.text = texts_at(j, here, "text");
  if (j.contains("children")) {
    const json& kids = j.at("children");
    if (!kids.is_array()) fail(here, "'children' must be a list");
    for (const auto& k : kids) c.children.push_back(component_from_json(k, "component"));
  }
  return c;
}

}  // namespace

json to_json(const NormDocument& doc) {
  json comps = json::array();
  for (const auto& c : doc.components) comps.push_back(component_to_json(c));
  return {{"concept", format_urn(doc.concept_urn)},
          {"enacted", doc.enacted.to_string()},
          {"nature", doc.nature},
          {"actors", doc.actors},
          {"components", std::move(comps)}};
}

json to_json(const AmendmentScript& s) {
  const auto& ins = s.instrument;
  json instrument = {{"jurisdiction", ins.jurisdiction}, {"authority", ins.authority},
                     {"doctype", ins.doctype},           {"date", ins.date.to_string()},
                     {"id", ins.id},                     {"title", ins.title},
                     {"actors", ins.actors},             {"nature", ins.nature}};
  json list = json::array();
  for (const auto& i : s.instructions) {
    json ji = {{"op", std::string(to_string(i.op))},
               {"target", i.target.to_string()},
               {"provision_path", i.provision_path.to_string()}};
    if (!i.new_text.empty()) ji["new_text"] = i.new_text;
    if (i.position) {
      json pos = json::object();
      if (i.position->parent) pos["parent"] = i.position->parent->to_string();
      if (i.position->ordinal) pos["ordinal"] = *i.position->ordinal;
      ji["position"] = std::move(pos);
    }
    list.push_back(std::move(ji));
  }
  json j = {{"instrument", std::move(instrument)},
            {"effective_date", s.effective_date.to_string()},
            {"instructions", std::move(list)}};
  if (s.amends) j["amends"] = format_urn(*s.amends);
  return j;
}

NormDocument norm_document_from_json(const json& j) {
  const std::string where = "norm document";
  only_keys(j, where, {"concept", "enacted", "nature", "actors", "components"});
  NormDocument doc;
  auto concept_urn = string_at(j, where, "concept");
  try {
    doc.concept_urn = parse_urn(concept_urn);
  } catch (const Error& e) {
    fail(where, "invalid concept urn: " + e.detail());
  }
  doc.enacted = date_at(j, where, "enacted");
  doc.nature = optional_string(j, where, "nature", "Enactment");
  doc.actors = strings_at(j, where, "actors");
  const json& comps = required(j, where, "components");
  if (!comps.is_array()) fail(where, "'components' must be a list");
  for (const auto& c : comps) doc.components.push_back(component_from_json(c, "component"));
  return doc;
}

AmendmentScript amendment_script_from_json(const json& j) {
  const std::string where = "amendment script";
  only_keys(j, where, {"amends", "instrument", "effective_date", "instructions"});
  AmendmentScript s;
  if (j.contains("amends")) {
    try {
      s.amends = parse_urn(string_at(j, where, "amends"));
    } catch (const MalformedUrn& e) {
      fail(where, "invalid 'amends' urn: " + e.detail());
    }
  }
  const json& ji = required(j, where, "instrument");
  const std::string iw = "instrument";
  only_keys(ji, iw, {"jurisdiction", "authority", "doctype", "date", "id", "title", "actors", "nature"});
  auto& ins = s.instrument;
  ins.jurisdiction = string_at(ji, iw, "jurisdiction");
  ins.authority = string_at(ji, iw, "authority");
  ins.doctype = string_at(ji, iw, "doctype");
  ins.date = date_at(ji, iw, "date");
  ins.id = string_at(ji, iw, "id");
  ins.title = optional_string(ji, iw, "title", "");
  ins.actors = strings_at(ji, iw, "actors");
  ins.nature = optional_string(ji, iw, "nature", "Amendment");
  s.effective_date = date_at(j, where, "effective_date");

  const json& list = required(j, where, "instructions");
  if (!list.is_array()) fail(where, "'instructions' must be a list");
  std::size_t n = 0;
  for (const auto& x : list) {
    std::string w = "instruction #" + std::to_string(++n);
    only_keys(x, w, {"op", "target", "provision_path", "new_text", "position"});
    Instruction i;
    auto op = string_at(x, w, "op");
    auto parsed = instruction_op_from_string(op);
    if (!parsed) fail(w, "unknown op '" + op + "'");
    i.op = *parsed;
    i.target = path_from(string_at(x, w, "target"), w);
    i.provision_path = path_from(string_at(x, w, "provision_path"), w);
    i.new_text = texts_at(x, w, "new_text");
    if (x.contains("position")) {
      const json& p = x.at("position");
      only_keys(p, w + " position", {"parent", "ordinal"});
      Position pos;
      if (p.contains("parent")) pos.parent = path_from(string_at(p, w, "parent"), w);
      if (p.contains("ordinal")) {
        const json& o = p.at("ordinal");
        if (!o.is_number_unsigned() || o.get<unsigned>() == 0) fail(w, "ordinal must be a positive integer");
        pos.ordinal = o.get<unsigned>();
      }
      i.position = pos;
    }
    s.instructions.push_back(std::move(i));
  }
  return s;
}

NormDocument parse_norm_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidScript, std::string("norm document is not valid JSON: ") + e.what());
  }
  return norm_document_from_json(j);
}

AmendmentScript parse_amendment_script(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidScript, std::string("amendment script is not valid JSON: ") + e.what());
  }
  return amendment_script_from_json(j);
}

}  // namespace normgraph
