#include "bicover/io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "bicover/errors.hpp"

namespace bicover {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw FormatError("expected an object");
  const auto it = j.find(key);
  if (it == j.end())
    throw FormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string())
    throw FormatError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer())
    throw FormatError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array())
    throw FormatError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const Json& v : j) {
    if (!v.is_string())
      throw FormatError(std::string(what) + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::map<std::string, std::string> string_map(const Json& j, const char* what) {
  if (!j.is_object())
    throw FormatError(std::string(what) + " must be an object of strings");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string())
      throw FormatError(std::string(what) + " must map strings to strings");
    out[k] = v.get<std::string>();
  }
  return out;
}

}  // namespace

Json parse_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw FormatError("document is not valid JSON");
  return j;
}

Json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str());
}

void write_file(const std::string& path, const Json& document) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write \"" + path + "\"");
  out << canonical_dump(document);
}

std::string canonical_dump(const Json& document) {
  return document.dump(2) + "\n";
}

Json word_to_json(const Word& w) {
  Json out = Json::array();
  for (const auto& s : w) out.push_back(s);
  return out;
}

Word word_from_json(const Json& j) {
  if (j.is_string()) {
    Word out;
    for (char c : j.get<std::string>()) out.push_back(std::string(1, c));
    return out;
  }
  if (j.is_array()) {
    Word out;
    for (const Json& v : j) {
      if (!v.is_string())
        throw FormatError("a word must be a string or an array of symbols");
      out.push_back(v.get<std::string>());
    }
    return out;
  }
  throw FormatError("a word must be a string or an array of symbols");
}

Json graph_to_json(const DirectedMultigraph& g) {
  Json out;
  out["vertices"] = g.vertices();
  Json edges = Json::array();
  for (const Edge& e : g.edges())
    edges.push_back(Json{{"id", e.id}, {"src", e.src}, {"dst", e.dst}});
  out["edges"] = edges;
  return out;
}

DirectedMultigraph graph_from_json(const Json& j) {
  const std::vector<std::string> vertices =
      string_list(field(j, "vertices"), "\"vertices\"");
  const Json& edges = field(j, "edges");
  if (!edges.is_array()) throw FormatError("\"edges\" must be an array");
  std::vector<Edge> parsed;
  parsed.reserve(edges.size());
  for (const Json& e : edges)
    parsed.push_back(
        {string_field(e, "id"), string_field(e, "src"), string_field(e, "dst")});
  return DirectedMultigraph(vertices, parsed);
}

Json matrix_to_json(const Eigen::MatrixXi& m,
                    const std::vector<std::string>& row_order,
                    const std::vector<std::string>& column_order) {
  Json out;
  if (!row_order.empty()) out["row_order"] = row_order;
  if (!column_order.empty()) out["column_order"] = column_order;
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  out["rows"] = rows;
  return out;
}

Eigen::MatrixXi matrix_from_json(const Json& j) {
  const Json& rows = field(j, "rows");
  if (!rows.is_array() || rows.empty())
    throw FormatError("\"rows\" must be a nonempty array of integer rows");
  const size_t width = rows[0].is_array() ? rows[0].size() : 0;
  Eigen::MatrixXi out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(width));
  for (size_t i = 0; i < rows.size(); ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || row.size() != width)
      throw FormatError("matrix rows must all have the same length");
    for (size_t k = 0; k < width; ++k) {
      if (!row[k].is_number_integer())
        throw FormatError("matrix entries must be integers");
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          row[k].get<int>();
    }
  }
  return out;
}

Json homomorphism_to_json(const GraphHomomorphism& phi) {
  Json out;
  out["domain"] = graph_to_json(phi.domain);
  out["codomain"] = graph_to_json(phi.codomain);
  out["vertex_map"] = phi.vertex_map;
  out["edge_map"] = phi.edge_map;
  return out;
}

GraphHomomorphism homomorphism_from_json(const Json& j) {
  return homomorphism_from_json(graph_from_json(field(j, "domain")),
                                graph_from_json(field(j, "codomain")), j);
}

GraphHomomorphism homomorphism_from_json(const DirectedMultigraph& domain,
                                         const DirectedMultigraph& codomain,
                                         const Json& j) {
  return validate_homomorphism(
      domain, codomain, string_map(field(j, "vertex_map"), "\"vertex_map\""),
      string_map(field(j, "edge_map"), "\"edge_map\""));
}

Json subshift_to_json(const SubshiftPresentation& x) {
  Json out;
  switch (x.kind) {
    case SubshiftKind::edge:
      out["kind"] = "edge";
      out["graph"] = graph_to_json(x.graph);
      break;
    case SubshiftKind::forbidden: {
      out["kind"] = "forbidden";
      out["alphabet"] = x.alphabet;
      Json forbidden = Json::array();
      for (const Word& w : x.forbidden) forbidden.push_back(word_to_json(w));
      out["forbidden"] = forbidden;
      break;
    }
    case SubshiftKind::sofic:
      out["kind"] = "sofic";
      out["graph"] = graph_to_json(x.graph);
      out["labels"] = x.labels;
      out["alphabet"] = x.alphabet;
      break;
  }
  return out;
}

SubshiftPresentation subshift_from_json(const Json& j) {
  const std::string kind = string_field(j, "kind");
  if (kind == "edge") return edge_shift(graph_from_json(field(j, "graph")));
  if (kind == "forbidden") {
    const Json& ws = field(j, "forbidden");
    if (!ws.is_array()) throw FormatError("\"forbidden\" must be an array");
    std::vector<Word> forbidden;
    forbidden.reserve(ws.size());
    for (const Json& w : ws) forbidden.push_back(word_from_json(w));
    return forbidden_words_shift(
        string_list(field(j, "alphabet"), "\"alphabet\""), forbidden);
  }
  if (kind == "sofic") {
    std::vector<std::string> alphabet;
    if (j.contains("alphabet"))
      alphabet = string_list(j["alphabet"], "\"alphabet\"");
    return sofic_shift(graph_from_json(field(j, "graph")),
                       string_map(field(j, "labels"), "\"labels\""), alphabet);
  }
  throw FormatError("unknown subshift kind \"" + kind + "\"");
}

Json code_to_json(const SlidingBlockCode& code) {
  Json out;
  out["domain"] = subshift_to_json(code.domain);
  out["codomain"] = subshift_to_json(code.codomain);
  out["memory"] = code.memory;
  out["anticipation"] = code.anticipation;
  Json blocks = Json::array();
  for (const auto& [w, s] : code.blocks)
    blocks.push_back(Json::array({word_to_json(w), s}));
  out["blocks"] = blocks;
  return out;
}

SlidingBlockCode code_from_json(const Json& j) {
  const Json& entries = field(j, "blocks");
  if (!entries.is_array())
    throw FormatError("\"blocks\" must be an array of [word, symbol] pairs");
  std::map<Word, std::string> blocks;
  for (const Json& entry : entries) {
    if (!entry.is_array() || entry.size() != 2 || !entry[1].is_string())
      throw FormatError("\"blocks\" must be an array of [word, symbol] pairs");
    blocks[word_from_json(entry[0])] = entry[1].get<std::string>();
  }
  return make_code(subshift_from_json(field(j, "domain")),
                   subshift_from_json(field(j, "codomain")),
                   int_field(j, "memory"), int_field(j, "anticipation"),
                   std::move(blocks));
}

}  // namespace bicover
