#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "bicover/code.hpp"
#include "bicover/graph.hpp"
#include "bicover/homomorphism.hpp"
#include "bicover/shift.hpp"

namespace bicover {

// Key order is preserved so canonical dumps are byte-stable.
using Json = nlohmann::ordered_json;

Json parse_text(const std::string& text);
Json parse_file(const std::string& path);
void write_file(const std::string& path, const Json& document);

// Fixed key order, two-space indent, trailing newline.
std::string canonical_dump(const Json& document);

// Words are arrays of symbols; plain strings are accepted on input and
// read one symbol per character.
Json word_to_json(const Word& w);
Word word_from_json(const Json& j);

Json graph_to_json(const DirectedMultigraph& g);
DirectedMultigraph graph_from_json(const Json& j);

Json matrix_to_json(const Eigen::MatrixXi& m,
                    const std::vector<std::string>& row_order = {},
                    const std::vector<std::string>& column_order = {});
Eigen::MatrixXi matrix_from_json(const Json& j);

// The full artifact embeds both graphs; the maps-only form is for files
// accompanying separately given graphs.
Json homomorphism_to_json(const GraphHomomorphism& phi);
GraphHomomorphism homomorphism_from_json(const Json& j);
GraphHomomorphism homomorphism_from_json(const DirectedMultigraph& domain,
                                         const DirectedMultigraph& codomain,
                                         const Json& j);

Json subshift_to_json(const SubshiftPresentation& x);
SubshiftPresentation subshift_from_json(const Json& j);

Json code_to_json(const SlidingBlockCode& code);
SlidingBlockCode code_from_json(const Json& j);

}  // namespace bicover
