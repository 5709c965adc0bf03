#include <CLI11.hpp>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bicover/errors.hpp"
#include "bicover/extension.hpp"
#include "bicover/graph.hpp"
#include "bicover/homomorphism.hpp"
#include "bicover/io.hpp"
#include "bicover/pipeline.hpp"
#include "bicover/shift.hpp"
#include "bicover/synthesis.hpp"

namespace {

using bicover::Json;

struct Args {
  std::string first, second, third;
  std::string mode = "eq";
  std::string degree;
  std::string connectivity = "irreducible";
  int n = 0;
  int period_cap = 6;
  int n_cap = 12;
  int word_cap = 12;
  long timeout_ms = 10000;
};

struct Output {
  bool json = false;
  std::string command;
  std::string status = "ok";
  Json payload = Json::object();
  Json checks = Json::array();
  std::vector<std::string> lines;

  void check(const std::string& name, bool pass,
             const std::string& detail = "") {
    checks.push_back(Json{{"name", name}, {"pass", pass}, {"detail", detail}});
  }
  void line(const std::string& text) { lines.push_back(text); }
  bool checks_pass() const {
    for (const Json& c : checks)
      if (!c.at("pass").get<bool>()) return false;
    return true;
  }
  int emit() {
    int code = 0;
    if (!checks_pass() && status == "ok") {
      status = "error";
      code = 2;
    }
    if (json) {
      const Json report{{"command", command},
                        {"status", status},
                        {"payload", payload},
                        {"checks", checks}};
      std::cout << bicover::canonical_dump(report);
    } else {
      std::cout << "command: " << command << "\n";
      std::cout << "status: " << status << "\n";
      for (const auto& text : lines) std::cout << text << "\n";
      for (const Json& c : checks) {
        std::cout << "check " << c.at("name").get<std::string>() << ": "
                  << (c.at("pass").get<bool>() ? "pass" : "FAIL");
        const std::string detail = c.at("detail").get<std::string>();
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
      }
    }
    return code;
  }
};

int fail(Output& out, const std::string& kind, const std::string& what,
         int code) {
  out.status = "error";
  out.payload = Json::object();
  out.checks = Json::array();
  out.check(kind, false, what);
  if (out.json)
    out.emit();
  else
    std::cerr << "error (" << kind << "): " << what << "\n";
  return code;
}

int guarded(Output& out, const std::function<int()>& body) {
  try {
    return body();
  } catch (const bicover::FormatError& e) {
    return fail(out, "format error", e.what(), 3);
  } catch (const bicover::PreconditionError& e) {
    return fail(out, "precondition error", e.what(), 2);
  } catch (const bicover::CapError& e) {
    return fail(out, "cap reached", e.what(), 4);
  } catch (const std::exception& e) {
    return fail(out, "internal error", e.what(), 1);
  }
}

std::string fmt(double value) {
  std::ostringstream s;
  s << std::setprecision(12) << value;
  return s.str();
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

bicover::RelationMode parse_relation_mode(const std::string& mode) {
  if (mode == "eq") return bicover::RelationMode::equality;
  if (mode == "le") return bicover::RelationMode::inequality;
  throw bicover::FormatError("mode must be eq or le");
}

bicover::ConnectivityMode parse_connectivity_mode(const std::string& mode) {
  if (mode == "irreducible") return bicover::ConnectivityMode::irreducible;
  if (mode == "weak") return bicover::ConnectivityMode::weakly_connected;
  throw bicover::FormatError("mode must be irreducible or weak");
}

bicover::PipelineOptions pipeline_options(const Args& a) {
  bicover::PipelineOptions opts;
  opts.period_cap = a.period_cap;
  opts.n_cap = a.n_cap;
  opts.word_cap = a.word_cap;
  return opts;
}

Json witness_json(const std::optional<bicover::ProfileWitness>& w) {
  if (!w) return nullptr;
  return Json{{"vertex", w->vertex}, {"edges", w->edges}};
}

Json profile_json(const bicover::ResolvingProfile& p) {
  return Json{{"right_resolving", p.right_resolving},
              {"left_resolving", p.left_resolving},
              {"right_covering", p.right_covering},
              {"left_covering", p.left_covering},
              {"bi_resolving", p.bi_resolving},
              {"bi_covering", p.bi_covering},
              {"right_resolving_witness", witness_json(p.right_resolving_witness)},
              {"left_resolving_witness", witness_json(p.left_resolving_witness)},
              {"right_covering_witness", witness_json(p.right_covering_witness)},
              {"left_covering_witness", witness_json(p.left_covering_witness)}};
}

Json connectivity_json(const bicover::ConnectivityReport& r) {
  return Json{{"irreducible", r.irreducible},
              {"weakly_connected", r.weakly_connected},
              {"irreducible_components", r.irreducible_components},
              {"weak_components", r.weak_components}};
}

Json extension_json(const bicover::ExtensionResult& r) {
  return Json{{"extended_graph", bicover::graph_to_json(r.extended_graph)},
              {"extension", bicover::homomorphism_to_json(r.extension)},
              {"new_edges", r.new_edges},
              {"degree", r.degree}};
}

Json point_json(const bicover::EventuallyPeriodicPoint& p) {
  return Json{{"left_cycle", bicover::word_to_json(p.left_cycle)},
              {"left_tail", bicover::word_to_json(p.left_tail)},
              {"right_tail", bicover::word_to_json(p.right_tail)},
              {"right_cycle", bicover::word_to_json(p.right_cycle)}};
}

Json closing_witness_json(const std::optional<bicover::ClosingWitness>& w) {
  if (!w) return nullptr;
  return Json{{"first", point_json(w->first)}, {"second", point_json(w->second)}};
}

Json closing_json(const bicover::ClosingProfile& p) {
  return Json{{"right_closing", p.right_closing},
              {"left_closing", p.left_closing},
              {"bi_closing", p.bi_closing},
              {"recoded", p.recoded},
              {"right_witness", closing_witness_json(p.right_witness)},
              {"left_witness", closing_witness_json(p.left_witness)}};
}

Json biclosing_json(const bicover::BiclosingExtension& b) {
  return Json{{"extended_domain", bicover::subshift_to_json(b.extended_domain)},
              {"extended_code", bicover::code_to_json(b.extended_code)},
              {"graph_extension", extension_json(b.graph_extension)},
              {"n", b.n},
              {"degree", b.degree},
              {"witness_n", b.witness_n},
              {"fresh_symbols", b.fresh_symbols}};
}

// Emitted artifacts must reload and reserialize to the same bytes.
void revalidate(Output& out, const std::string& name, const Json& artifact,
                const std::function<Json(const Json&)>& reload) {
  try {
    const Json again = reload(artifact);
    const bool same =
        bicover::canonical_dump(again) == bicover::canonical_dump(artifact);
    out.check(name + " revalidates", same,
              same ? "" : "reserialization differs");
  } catch (const std::exception& e) {
    out.check(name + " revalidates", false, e.what());
  }
}

void revalidate_graph(Output& out, const std::string& name, const Json& j) {
  revalidate(out, name, j, [](const Json& doc) {
    return bicover::graph_to_json(bicover::graph_from_json(doc));
  });
}

void revalidate_homomorphism(Output& out, const std::string& name,
                             const Json& j) {
  revalidate(out, name, j, [](const Json& doc) {
    return bicover::homomorphism_to_json(bicover::homomorphism_from_json(doc));
  });
}

void revalidate_code(Output& out, const std::string& name, const Json& j) {
  revalidate(out, name, j, [](const Json& doc) {
    return bicover::code_to_json(bicover::code_from_json(doc));
  });
}

bicover::GraphHomomorphism load_homomorphism(const Args& a,
                                             bicover::DirectedMultigraph& g,
                                             bicover::DirectedMultigraph& h) {
  g = bicover::graph_from_json(bicover::parse_file(a.first));
  h = bicover::graph_from_json(bicover::parse_file(a.second));
  return bicover::homomorphism_from_json(g, h,
                                         bicover::parse_file(a.third));
}

int run_graph_info(const Args& a, bool json) {
  Output out;
  out.json = json;
  out.command = "graph info";
  return guarded(out, [&] {
    const auto g = bicover::graph_from_json(bicover::parse_file(a.first));
    const auto report = bicover::connectivity(g);
    const double radius = bicover::spectral_radius(g);
    out.payload = Json{
        {"order", g.order()},
        {"size", g.size()},
        {"essential", bicover::is_essential(g)},
        {"connectivity", connectivity_json(report)},
        {"spectral_radius", radius},
        {"adjacency", bicover::matrix_to_json(bicover::adjacency_matrix(g),
                                              g.vertices(), g.vertices())}};
    out.line("order: " + std::to_string(g.order()));
    out.line("size: " + std::to_string(g.size()));
    out.line("essential: " + yesno(bicover::is_essential(g)));
    out.line("irreducible: " + yesno(report.irreducible));
    out.line("weakly connected: " + yesno(report.weakly_connected));
    out.line("irreducible components: " +
             std::to_string(report.irreducible_components.size()));
    out.line("spectral radius: " + fmt(radius));
    revalidate_graph(out, "graph", bicover::graph_to_json(g));
    return out.emit();
  });
}

int run_hom_check(const Args& a, bool json) {
  Output out;
  out.json = json;
  out.command = "hom check";
  return guarded(out, [&] {
    bicover::DirectedMultigraph g, h;
    const auto phi = load_homomorphism(a, g, h);
    const auto profile = bicover::resolving_profile(phi);
    const auto s = bicover::matrix_from_vertex_map(g, h, phi.vertex_map);
    const auto rel = bicover::matrix_relations(g, h, s);
    out.payload = Json{
        {"profile", profile_json(profile)},
        {"vertex_degree", bicover::vertex_degree(phi)},
        {"matrix", bicover::matrix_to_json(s, g.vertices(), h.vertices())},
        {"relations", Json{{"ag_s", bicover::matrix_to_json(rel.ag_s)},
                           {"s_ah", bicover::matrix_to_json(rel.s_ah)},
                           {"st_ag", bicover::matrix_to_json(rel.st_ag)},
                           {"ah_st", bicover::matrix_to_json(rel.ah_st)},
                           {"eq_right", rel.eq_right},
                           {"le_right", rel.le_right},
                           {"eq_left", rel.eq_left},
                           {"le_left", rel.le_left}}}};
    out.line("right-resolving: " + yesno(profile.right_resolving));
    out.line("left-resolving: " + yesno(profile.left_resolving));
    out.line("right-covering: " + yesno(profile.right_covering));
    out.line("left-covering: " + yesno(profile.left_covering));
    out.line("bi-resolving: " + yesno(profile.bi_resolving));
    out.line("bi-covering: " + yesno(profile.bi_covering));
    out.line("vertex degree: " +
             std::to_string(bicover::vertex_degree(phi)));
    out.line("relations: eq_right " + yesno(rel.eq_right) + ", le_right " +
             yesno(rel.le_right) + ", eq_left " + yesno(rel.eq_left) +
             ", le_left " + yesno(rel.le_left));
    revalidate_homomorphism(out, "homomorphism",
                            bicover::homomorphism_to_json(phi));
    return out.emit();
  });
}

int run_exists(const Args& a, bool json) {
  Output out;
  out.json = json;
  out.command = "exists";
  return guarded(out, [&] {
    const auto g = bicover::graph_from_json(bicover::parse_file(a.first));
    const auto h = bicover::graph_from_json(bicover::parse_file(a.second));
    const auto mode = parse_relation_mode(a.mode);
    const std::optional<long> timeout =
        a.timeout_ms > 0 ? std::optional<long>(a.timeout_ms) : std::nullopt;
    const auto witness = bicover::find_subamalgamation(g, h, mode, timeout);
    if (!witness) {
      out.status = "none";
      out.line("witness: none");
      return out.emit();
    }
    out.payload = Json{{"matrix", bicover::matrix_to_json(
                                      *witness, g.vertices(), h.vertices())}};
    for (int i = 0; i < g.order(); ++i) {
      std::string row = "S " + g.vertices()[i] + ":";
      for (int j = 0; j < h.order(); ++j)
        row += " " + std::to_string((*witness)(i, j));
      out.line(row);
    }
    return out.emit();
  });
}

int run_synthesize(const Args& a, bool json) {
  Output out;
  out.json = json;
  out.command = "synthesize";
  return guarded(out, [&] {
    const auto g = bicover::graph_from_json(bicover::parse_file(a.first));
    const auto h = bicover::graph_from_json(bicover::parse_file(a.second));
    const auto s = bicover::matrix_from_json(bicover::parse_file(a.third));
    const auto mode = parse_relation_mode(a.mode);
    if (s.rows() != g.order() || s.cols() != h.order())
      throw bicover::PreconditionError(
          "matrix shape does not match the graphs");
    if (mode == bicover::RelationMode::equality) {
      const auto phi = bicover::build_bicovering(g, h, s);
      const auto profile = bicover::resolving_profile(phi);
      const Json artifact = bicover::homomorphism_to_json(phi);
      out.payload =
          Json{{"homomorphism", artifact}, {"profile", profile_json(profile)}};
      out.check("bi-covering", profile.bi_covering);
      out.check("matrix realized",
                bicover::matrix_from_vertex_map(g, h, phi.vertex_map) == s);
      revalidate_homomorphism(out, "homomorphism", artifact);
      out.line("bi-covering homomorphism with " +
               std::to_string(phi.edge_map.size()) + " edge assignments");
      return out.emit();
    }
    const auto result = bicover::build_biresolving(g, h, s);
    const auto profile = bicover::resolving_profile(result.resolving);
    const auto cover_profile = bicover::resolving_profile(result.covering);
    const Json artifact = bicover::homomorphism_to_json(result.resolving);
    const Json cover_artifact = bicover::homomorphism_to_json(result.covering);
    out.payload = Json{{"homomorphism", artifact},
                       {"profile", profile_json(profile)},
                       {"covering",
                        Json{{"homomorphism", cover_artifact},
                             {"profile", profile_json(cover_profile)}}}};
    out.check("bi-resolving", profile.bi_resolving);
    out.check("padded map bi-covering", cover_profile.bi_covering);
    out.check("matrix realized",
              bicover::matrix_from_vertex_map(
                  g, h, result.resolving.vertex_map) == s);
    revalidate_homomorphism(out, "homomorphism", artifact);
    revalidate_homomorphism(out, "covering homomorphism", cover_artifact);
    out.line("bi-resolving homomorphism; padded bi-covering on " +
             std::to_string(result.covering.domain.order()) + " vertices");
    return out.emit();
  });
}

int run_extend(const Args& a, bool json) {
  Output out;
  out.json = json;
  out.command = "extend";
  return guarded(out, [&] {
    bicover::DirectedMultigraph g, h;
    const auto phi = load_homomorphism(a, g, h);
    const auto mode = parse_connectivity_mode(a.connectivity);
    bicover::ExtensionResult result;
    if (a.degree == "same") {
      result = bicover::irreducible_extension_same_degree(phi, mode);
    } else {
      int n = 0;
      try {
        size_t used = 0;
        n = std::stoi(a.degree, &used);
        if (used != a.degree.size()) throw std::invalid_argument(a.degree);
      } catch (const std::exception&) {
        throw bicover::FormatError("--degree takes an integer or \"same\"");
      }
      result = bicover::irreducible_extension_degree_n(phi, n, mode);
    }
    const auto profile = bicover::resolving_profile(result.extension);
    out.payload = extension_json(result);
    out.payload["profile"] = profile_json(profile);
    out.check("bi-covering", profile.bi_covering);
    bool restricts = true;
    for (const auto& [e, image] : phi.edge_map)
      restricts = restricts && result.extension.edge_map.at(e) == image;
    for (const auto& [v, image] : phi.vertex_map)
      restricts = restricts && result.extension.vertex_map.at(v) == image;
    out.check("restricts to the input", restricts);
    const auto report = bicover::connectivity(result.extended_graph);
    out.check(mode == bicover::ConnectivityMode::irreducible
                  ? "irreducible"
                  : "weakly connected",
              mode == bicover::ConnectivityMode::irreducible
                  ? report.irreducible
                  : report.weakly_connected);
    revalidate_homomorphism(out, "extension",
                            bicover::homomorphism_to_json(result.extension));
    out.line("degree: " + std::to_string(result.degree));
    out.line("new edges: " + std::to_string(result.new_edges.size()));
    return out.emit();
  });
}

int run_degree(const Args& a, bool json) {
  Output out;
  out.json = json;
  out.command = "degree";
  return guarded(out, [&] {
    bicover::DirectedMultigraph g, h;
    const auto phi = load_homomorphism(a, g, h);
    const auto pd = bicover::point_degree(phi, pipeline_options(a));
    if (pd.indeterminate) out.status = "indeterminate";
    out.payload = Json{{"degree", pd.degree},
                       {"witness_n", pd.witness_n},
                       {"indeterminate", pd.indeterminate},
                       {"periodic_max", pd.periodic_max},
                       {"vertex_degrees", pd.vertex_degrees}};
    out.line("degree: " + std::to_string(pd.degree) +
             (pd.indeterminate ? " (upper bound only)" : ""));
    out.line("stabilizes at level: " + std::to_string(pd.witness_n));
    out.line("periodic maximum: " + std::to_string(pd.periodic_max));
    return out.emit();
  });
}

int run_closing(const Args& a, bool json) {
  Output out;
  out.json = json;
  out.command = "closing";
  return guarded(out, [&] {
    const auto code = bicover::code_from_json(bicover::parse_file(a.first));
    const auto profile = bicover::closing_profile(code);
    out.payload = closing_json(profile);
    out.line("right-closing: " + yesno(profile.right_closing));
    out.line("left-closing: " + yesno(profile.left_closing));
    out.line("bi-closing: " + yesno(profile.bi_closing));
    out.line("analyzed on a recoding: " + yesno(profile.recoded));
    return out.emit();
  });
}

int run_extend_code(const Args& a, bool json) {
  Output out;
  out.json = json;
  out.command = "extend-code";
  return guarded(out, [&] {
    bicover::DirectedMultigraph g, h;
    const auto phi = load_homomorphism(a, g, h);
    const auto result =
        bicover::extend_biclosing_code(phi, a.n, pipeline_options(a));
    out.payload = biclosing_json(result);
    out.check("exact multiplicity requested", result.n == a.n);
    revalidate_code(out, "extended code",
                    bicover::code_to_json(result.extended_code));
    out.line("multiplicity: " + std::to_string(result.n));
    out.line("input degree: " + std::to_string(result.degree) +
             " at level " + std::to_string(result.witness_n));
    out.line("fresh symbols: " + std::to_string(result.fresh_symbols.size()));
    return out.emit();
  });
}

int run_approx_extend(const Args& a, bool json) {
  Output out;
  out.json = json;
  out.command = "approx-extend";
  return guarded(out, [&] {
    const auto x = bicover::subshift_from_json(bicover::parse_file(a.first));
    const auto given = bicover::code_from_json(bicover::parse_file(a.second));
    const auto code = bicover::make_code(x, given.codomain, given.memory,
                                         given.anticipation, given.blocks,
                                         a.word_cap);
    bicover::ApproximateOptions opts;
    opts.k_cap = a.n_cap;
    opts.pipeline = pipeline_options(a);
    opts.pipeline.n_cap = 12;
    const auto result = bicover::approximate_and_extend(code, a.n, opts);
    Json obstructions = Json::array();
    for (const auto& [k, why] : result.obstructions)
      obstructions.push_back(Json{{"k", k}, {"reason", why}});
    out.payload =
        Json{{"k", result.k},
             {"obstructions", obstructions},
             {"extension", biclosing_json(result.extension)},
             {"recoded",
              Json{{"one_block", bicover::code_to_json(result.recoded.one_block)},
                   {"beta", bicover::code_to_json(result.recoded.beta)}}}};
    revalidate_code(
        out, "extended code",
        bicover::code_to_json(result.extension.extended_code));
    out.line("accepted approximation step: " + std::to_string(result.k));
    out.line("rejected steps: " + std::to_string(result.obstructions.size()));
    out.line("multiplicity: " + std::to_string(result.extension.n));
    return out.emit();
  });
}

bool looks_like_graph(const Json& j) {
  return j.is_object() && j.contains("vertices") && j.contains("edges");
}
bool looks_like_subshift(const Json& j) {
  return j.is_object() && j.contains("kind");
}
bool looks_like_code(const Json& j) {
  return j.is_object() && j.contains("blocks") && j.contains("domain");
}
bool looks_like_homomorphism(const Json& j) {
  return j.is_object() && j.contains("vertex_map") && j.contains("edge_map");
}
bool looks_like_matrix(const Json& j) {
  return j.is_object() && j.contains("rows");
}

void verify_node(Output& out, const std::string& path, const Json& j,
                 int& found) {
  if (looks_like_code(j)) {
    ++found;
    try {
      const auto code = bicover::code_from_json(j);
      out.check(path + " loads", true);
      const Json again = bicover::code_to_json(code);
      out.check(path + " round-trips",
                bicover::canonical_dump(bicover::code_to_json(
                    bicover::code_from_json(again))) ==
                    bicover::canonical_dump(again));
    } catch (const std::exception& e) {
      out.check(path + " loads", false, e.what());
    }
    return;
  }
  if (looks_like_subshift(j)) {
    ++found;
    try {
      const auto x = bicover::subshift_from_json(j);
      out.check(path + " loads", true);
      const Json again = bicover::subshift_to_json(x);
      out.check(path + " round-trips",
                bicover::canonical_dump(bicover::subshift_to_json(
                    bicover::subshift_from_json(again))) ==
                    bicover::canonical_dump(again));
    } catch (const std::exception& e) {
      out.check(path + " loads", false, e.what());
    }
    return;
  }
  if (looks_like_homomorphism(j)) {
    ++found;
    if (j.contains("domain") && j.contains("codomain")) {
      try {
        const auto phi = bicover::homomorphism_from_json(j);
        out.check(path + " loads", true);
        const Json again = bicover::homomorphism_to_json(phi);
        out.check(path + " round-trips",
                  bicover::canonical_dump(bicover::homomorphism_to_json(
                      bicover::homomorphism_from_json(again))) ==
                      bicover::canonical_dump(again));
      } catch (const std::exception& e) {
        out.check(path + " loads", false, e.what());
      }
    } else {
      out.check(path + " loads", true, "maps only; graphs not embedded");
    }
    return;
  }
  if (looks_like_graph(j)) {
    ++found;
    try {
      const auto g = bicover::graph_from_json(j);
      out.check(path + " loads", true);
      const Json again = bicover::graph_to_json(g);
      out.check(path + " round-trips",
                bicover::canonical_dump(bicover::graph_to_json(
                    bicover::graph_from_json(again))) ==
                    bicover::canonical_dump(again));
    } catch (const std::exception& e) {
      out.check(path + " loads", false, e.what());
    }
    return;
  }
  if (looks_like_matrix(j)) {
    ++found;
    try {
      const auto m = bicover::matrix_from_json(j);
      out.check(path + " loads", true);
      out.check(path + " round-trips",
                bicover::matrix_to_json(m).at("rows") == j.at("rows"));
    } catch (const std::exception& e) {
      out.check(path + " loads", false, e.what());
    }
    return;
  }
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      verify_node(out, path + "." + key, value, found);
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i)
      verify_node(out, path + "[" + std::to_string(i) + "]", j[i], found);
  }
}

int run_verify(const Args& a, bool json) {
  Output out;
  out.json = json;
  out.command = "verify";
  return guarded(out, [&] {
    const Json j = bicover::parse_file(a.first);
    int found = 0;
    verify_node(out, "artifact", j, found);
    if (found == 0)
      throw bicover::FormatError("no recognizable artifact in the document");
    out.payload = Json{{"artifacts", found}};
    out.line("artifacts verified: " + std::to_string(found));
    return out.emit();
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-resolving and bi-covering homomorphism toolkit"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit a machine-readable report");
  Args args;
  int exit_code = 0;

  auto* graph_cmd = app.add_subcommand("graph", "graph inspection");
  graph_cmd->require_subcommand(1);
  graph_cmd->fallthrough();
  auto* info = graph_cmd->add_subcommand("info",
                                         "connectivity and spectral report");
  info->fallthrough();
  info->add_option("graph", args.first, "graph file")->required();
  info->callback([&] { exit_code = run_graph_info(args, json); });

  auto* hom_cmd = app.add_subcommand("hom", "homomorphism inspection");
  hom_cmd->require_subcommand(1);
  hom_cmd->fallthrough();
  auto* check = hom_cmd->add_subcommand(
      "check", "resolving profile and matrix relations");
  check->fallthrough();
  check->add_option("domain", args.first, "domain graph file")->required();
  check->add_option("codomain", args.second, "codomain graph file")->required();
  check->add_option("homomorphism", args.third, "vertex and edge maps file")
      ->required();
  check->callback([&] { exit_code = run_hom_check(args, json); });

  auto* exists = app.add_subcommand(
      "exists", "search for a subamalgamation matrix witness");
  exists->fallthrough();
  exists->add_option("domain", args.first, "domain graph file")->required();
  exists->add_option("codomain", args.second, "codomain graph file")
      ->required();
  exists->add_option("--mode", args.mode, "eq for bi-covering, le for bi-resolving");
  exists->add_option("--timeout-ms", args.timeout_ms,
                     "search budget in milliseconds, 0 for none");
  exists->callback([&] { exit_code = run_exists(args, json); });

  auto* synthesize = app.add_subcommand(
      "synthesize", "build a homomorphism from a subamalgamation matrix");
  synthesize->fallthrough();
  synthesize->add_option("domain", args.first, "domain graph file")->required();
  synthesize->add_option("codomain", args.second, "codomain graph file")
      ->required();
  synthesize->add_option("matrix", args.third, "subamalgamation matrix file")
      ->required();
  synthesize->add_option("--mode", args.mode,
                         "eq for bi-covering, le for bi-resolving");
  synthesize->callback([&] { exit_code = run_synthesize(args, json); });

  auto* extend = app.add_subcommand(
      "extend", "extend a bi-resolving homomorphism to a bi-covering one");
  extend->fallthrough();
  extend->add_option("domain", args.first, "domain graph file")->required();
  extend->add_option("codomain", args.second, "codomain graph file")
      ->required();
  extend->add_option("homomorphism", args.third, "vertex and edge maps file")
      ->required();
  extend->add_option("--degree", args.degree, "target degree, or \"same\"")
      ->required();
  extend->add_option("--mode", args.connectivity,
                     "required connectivity: irreducible or weak");
  extend->callback([&] { exit_code = run_extend(args, json); });

  auto* degree = app.add_subcommand(
      "degree", "maximal preimage count of the induced code");
  degree->fallthrough();
  degree->add_option("domain", args.first, "domain graph file")->required();
  degree->add_option("codomain", args.second, "codomain graph file")
      ->required();
  degree->add_option("homomorphism", args.third, "vertex and edge maps file")
      ->required();
  degree->add_option("--period-cap", args.period_cap,
                     "longest sampled periodic word");
  degree->add_option("--n-cap", args.n_cap, "highest level tried");
  degree->callback([&] { exit_code = run_degree(args, json); });

  auto* closing = app.add_subcommand("closing",
                                     "closing profile of a sliding block code");
  closing->fallthrough();
  closing->add_option("code", args.first, "code file")->required();
  closing->callback([&] { exit_code = run_closing(args, json); });

  auto* extend_code = app.add_subcommand(
      "extend-code", "extend the induced code to an exactly-n-to-1 code");
  extend_code->fallthrough();
  extend_code->add_option("domain", args.first, "domain graph file")
      ->required();
  extend_code->add_option("codomain", args.second, "codomain graph file")
      ->required();
  extend_code->add_option("homomorphism", args.third,
                          "vertex and edge maps file")
      ->required();
  extend_code->add_option("--n", args.n, "target multiplicity")->required();
  extend_code->add_option("--period-cap", args.period_cap,
                          "longest sampled periodic word");
  extend_code->add_option("--n-cap", args.n_cap, "highest level tried");
  extend_code->add_option("--word-cap", args.word_cap,
                          "verification word length");
  extend_code->callback([&] { exit_code = run_extend_code(args, json); });

  auto* approx = app.add_subcommand(
      "approx-extend",
      "approximate the domain by Markov steps, then extend the code");
  approx->fallthrough();
  approx->add_option("subshift", args.first, "domain subshift file")
      ->required();
  approx->add_option("code", args.second, "code file")->required();
  approx->add_option("--n", args.n, "target multiplicity")->required();
  approx->add_option("--n-cap", args.n_cap, "largest approximation step");
  approx->add_option("--period-cap", args.period_cap,
                     "longest sampled periodic word");
  approx->add_option("--word-cap", args.word_cap,
                     "verification word length");
  approx->callback([&] { exit_code = run_approx_extend(args, json); });

  auto* verify = app.add_subcommand("verify",
                                    "re-run the invariants of an artifact");
  verify->fallthrough();
  verify->add_option("artifact", args.first, "artifact or report file")
      ->required();
  verify->callback([&] { exit_code = run_verify(args, json); });

  CLI11_PARSE(app, argc, argv);
  return exit_code;
}
