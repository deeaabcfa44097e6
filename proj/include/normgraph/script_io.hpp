#pragma once

#include <string_view>

#include <json.hpp>

#include "normgraph/events.hpp"

// JSON encodings of the two input documents: a norm as enacted and an
// amendment script. Decoding is strict: unknown keys, wrong types and
// non-ISO dates raise Error(InvalidScript). Texts are kept verbatim.
namespace normgraph {

nlohmann::json to_json(const NormDocument& doc);
nlohmann::json to_json(const AmendmentScript& script);

NormDocument norm_document_from_json(const nlohmann::json& j);
AmendmentScript amendment_script_from_json(const nlohmann::json& j);

// Parse text then decode; JSON syntax errors become Error(InvalidScript).
NormDocument parse_norm_document(std::string_view text);
AmendmentScript parse_amendment_script(std::string_view text);

}  // namespace normgraph
