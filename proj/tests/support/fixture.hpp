#pragma once

#include <string>
#include <vector>

#include "normgraph/events.hpp"
#include "normgraph/model.hpp"
#include "normgraph/store.hpp"

namespace fixture {

inline constexpr const char* kConstitution = "urn:lex:br:federal:constituicao:1988-10-05;1988";

std::string path(const std::string& name);
std::string golden_path(const std::string& name);
std::string read_text(const std::string& file);

normgraph::NormDocument constitution();
normgraph::AmendmentScript ec1();
normgraph::AmendmentScript ec26();

// Bootstrap + EC1 + EC26.
normgraph::TemporalGraph graph();
normgraph::EventLog log();

// Identifiers printed in the source material, typed out by hand.
const std::vector<std::string>& printed_urns();

}  // namespace fixture
