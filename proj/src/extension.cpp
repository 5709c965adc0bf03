#include "bicover/extension.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace bicover {

namespace {

constexpr double kRadiusTolerance = 1e-9;

std::string unique_id(std::unordered_set<std::string>& used, std::string base) {
  std::string id = base;
  for (int k = 1; used.count(id) > 0; ++k) id = base + "~" + std::to_string(k);
  used.insert(id);
  return id;
}

DirectedMultigraph induced_subgraph(const DirectedMultigraph& g,
                                    const std::vector<Edge>& edges,
                                    const std::set<std::string>& keep) {
  std::vector<std::string> vs;
  for (const auto& v : g.vertices())
    if (keep.count(v)) vs.push_back(v);
  std::vector<Edge> es;
  for (const Edge& e : edges)
    if (keep.count(e.src) && keep.count(e.dst)) es.push_back(e);
  return DirectedMultigraph(vs, es);
}

}  // namespace

ExtensionResult bicovering_completion(const GraphHomomorphism& phi,
                                      int target_fiber_size) {
  const DirectedMultigraph& g = phi.domain;
  const DirectedMultigraph& h = phi.codomain;
  if (!resolving_profile(phi).bi_resolving)
    throw PreconditionError("homomorphism is not bi-resolving");
  if (h.size() == 0) throw PreconditionError("codomain has no edges");
  if (target_fiber_size < vertex_degree(phi))
    throw PreconditionError("target fiber size is below the vertex degree");

  std::unordered_set<std::string> used_v, used_e;
  for (const auto& v : g.vertices()) used_v.insert(v);
  for (const auto& e : g.edges()) used_e.insert(e.id);

  std::vector<std::vector<std::string>> fiber(h.order());
  for (const auto& v : g.vertices())
    fiber[h.vertex_index(phi.vertex_map.at(v))].push_back(v);

  std::vector<std::string> vertices = g.vertices();
  std::map<std::string, std::string> vm = phi.vertex_map;
  for (int I = 0; I < h.order(); ++I) {
    for (int k = 0; static_cast<int>(fiber[I].size()) < target_fiber_size; ++k) {
      std::string id =
          unique_id(used_v, "pad:" + h.vertices()[I] + "#" + std::to_string(k));
      fiber[I].push_back(id);
      vertices.push_back(id);
      vm[id] = h.vertices()[I];
    }
  }

  std::vector<Edge> edges = g.edges();
  std::map<std::string, std::string> em = phi.edge_map;
  std::vector<std::string> new_edges;
  for (const Edge& b : h.edges()) {
    const auto& fi = fiber[h.vertex_index(b.src)];
    const auto& fj = fiber[h.vertex_index(b.dst)];
    std::set<std::string> src_used, dst_used;
    for (const Edge& e : g.edges()) {
      if (phi.edge_map.at(e.id) != b.id) continue;
      src_used.insert(e.src);
      dst_used.insert(e.dst);
    }
    std::vector<std::string> srcs, dsts;
    for (const auto& u : fi)
      if (!src_used.count(u)) srcs.push_back(u);
    for (const auto& v : fj)
      if (!dst_used.count(v)) dsts.push_back(v);
    if (srcs.size() != dsts.size())
      throw std::logic_error("internal: unmatched counts differ across a fiber pair");
    for (size_t k = 0; k < srcs.size(); ++k) {
      std::string id =
          unique_id(used_e, "new:" + b.id + "#" + std::to_string(k));
      edges.push_back({id, srcs[k], dsts[k]});
      em[id] = b.id;
      new_edges.push_back(id);
    }
  }

  ExtensionResult result;
  result.extended_graph = DirectedMultigraph(vertices, edges);
  result.extension = validate_homomorphism(result.extended_graph, h, vm, em);
  if (!resolving_profile(result.extension).bi_covering)
    throw std::logic_error("internal: completed map is not bi-covering");
  result.new_edges = std::move(new_edges);
  result.degree = target_fiber_size;
  return result;
}

ExtensionResult irreducible_extension_same_degree(const GraphHomomorphism& phi,
                                                  ConnectivityMode mode) {
  if (!connectivity(phi.codomain).irreducible)
    throw PreconditionError("codomain is not irreducible");
  if (!connectivity(phi.domain).weakly_connected)
    throw PreconditionError(
        "weakly connected hypothesis fails: the domain is not weakly "
        "connected");
  ExtensionResult result = bicovering_completion(phi, vertex_degree(phi));
  ConnectivityReport report = connectivity(result.extended_graph);
  bool ok = mode == ConnectivityMode::irreducible ? report.irreducible
                                                  : report.weakly_connected;
  if (!ok)
    throw std::logic_error("internal: completion of a weakly connected domain "
                           "is not connected");
  return result;
}

PerronDiagnosis perron_obstruction_check(const GraphHomomorphism& phi) {
  PerronDiagnosis d;
  d.codomain_irreducible = connectivity(phi.codomain).irreducible;
  d.domain_irreducible = connectivity(phi.domain).irreducible;
  d.domain_radius = spectral_radius(phi.domain);
  d.codomain_radius = spectral_radius(phi.codomain);
  d.radii_equal = std::abs(d.domain_radius - d.codomain_radius) <= kRadiusTolerance;
  d.obstruction = d.codomain_irreducible && !d.domain_irreducible && d.radii_equal;
  return d;
}

ExtensionResult irreducible_extension_degree_n(const GraphHomomorphism& phi,
                                               int n, ConnectivityMode mode) {
  const DirectedMultigraph& h = phi.codomain;
  if (!connectivity(h).irreducible)
    throw PreconditionError("codomain is not irreducible");
  if (!resolving_profile(phi).bi_resolving)
    throw PreconditionError("homomorphism is not bi-resolving");
  PerronDiagnosis perron = perron_obstruction_check(phi);
  if (perron.codomain_radius - perron.domain_radius <= kRadiusTolerance) {
    if (perron.obstruction)
      throw PreconditionError(
          "spectral radii are equal and the domain is not irreducible; no "
          "bi-covering extension has an irreducible domain");
    throw PreconditionError(
        "entropy hypothesis fails: the codomain spectral radius does not "
        "exceed the domain's");
  }
  const int d = vertex_degree(phi);
  if (n <= d)
    throw PreconditionError("requested degree does not exceed the vertex degree");

  ExtensionResult comp = bicovering_completion(phi, n - 1);
  std::unordered_set<std::string> fresh(comp.new_edges.begin(),
                                        comp.new_edges.end());

  ConnectivityReport report = connectivity(comp.extended_graph);
  size_t covered = 0;
  for (const auto& c : report.irreducible_components) covered += c.size();
  if (covered != static_cast<size_t>(comp.extended_graph.order()))
    throw std::logic_error("internal: completion left vertices outside every "
                           "irreducible component");
  for (const auto& component : report.irreducible_components) {
    std::set<std::string> members(component.begin(), component.end());
    bool has_new = false;
    for (const Edge& e : comp.extended_graph.edges())
      if (fresh.count(e.id) && members.count(e.src)) has_new = true;
    if (!has_new)
      throw PreconditionError(
          "a component of the completion has no new edge; the spectral "
          "radius gap does not hold");
  }

  std::unordered_set<std::string> used_v, used_e;
  for (const auto& v : comp.extended_graph.vertices()) used_v.insert(v);
  for (const auto& e : comp.extended_graph.edges()) used_e.insert(e.id);

  std::vector<std::string> vertices = comp.extended_graph.vertices();
  std::vector<Edge> edges = comp.extended_graph.edges();
  std::map<std::string, std::string> vm = comp.extension.vertex_map;
  std::map<std::string, std::string> em = comp.extension.edge_map;
  std::vector<std::string> new_edges = comp.new_edges;

  std::set<std::string> running;
  for (const auto& hv : h.vertices()) {
    std::string id = unique_id(used_v, "copy:" + hv);
    vertices.push_back(id);
    vm[id] = hv;
    running.insert(id);
  }
  auto copy_vertex = [&vm, &running](const std::string& hv) {
    for (const auto& v : running)
      if (vm.at(v) == hv) return v;
    throw std::logic_error("internal: codomain copy lost a vertex");
  };
  for (const Edge& b : h.edges()) {
    std::string id = unique_id(used_e, "copy:" + b.id);
    edges.push_back({id, copy_vertex(b.src), copy_vertex(b.dst)});
    em[id] = b.id;
    fresh.insert(id);
    new_edges.push_back(id);
  }

  std::vector<DirectedMultigraph> fold_steps;
  auto check_running = [&](const std::set<std::string>& members) {
    DirectedMultigraph sub =
        induced_subgraph(DirectedMultigraph(vertices, {}), edges, members);
    ConnectivityReport r = connectivity(sub);
    bool ok = mode == ConnectivityMode::irreducible ? r.irreducible
                                                    : r.weakly_connected;
    if (!ok)
      throw std::logic_error("internal: running graph lost connectivity "
                             "during a fold step");
    for (const Edge& b : h.edges()) {
      bool found = false;
      for (const Edge& e : edges)
        if (fresh.count(e.id) && members.count(e.src) && em.at(e.id) == b.id)
          found = true;
      if (!found)
        throw std::logic_error("internal: running graph lost a new edge over "
                               "a codomain edge");
    }
    fold_steps.push_back(std::move(sub));
  };
  check_running(running);

  for (const auto& component : report.irreducible_components) {
    std::set<std::string> members(component.begin(), component.end());
    int pick = -1;
    for (size_t i = 0; i < edges.size() && pick < 0; ++i) {
      const Edge& e = edges[i];
      if (!fresh.count(e.id) || !members.count(e.src)) continue;
      for (size_t j = 0; j < edges.size(); ++j) {
        const Edge& f = edges[j];
        if (fresh.count(f.id) && running.count(f.src) && em.at(f.id) == em.at(e.id)) {
          pick = static_cast<int>(i);
          break;
        }
      }
    }
    if (pick < 0)
      throw std::logic_error("internal: no new edge shared between component "
                             "and running graph");
    int partner = -1;
    for (size_t j = 0; j < edges.size() && partner < 0; ++j) {
      const Edge& f = edges[j];
      if (fresh.count(f.id) && running.count(f.src) &&
          em.at(f.id) == em.at(edges[pick].id))
        partner = static_cast<int>(j);
    }
    std::swap(edges[pick].dst, edges[partner].dst);
    running.insert(members.begin(), members.end());
    check_running(running);
  }

  ExtensionResult result;
  result.extended_graph = DirectedMultigraph(vertices, edges);
  result.extension = validate_homomorphism(result.extended_graph, h, vm, em);
  result.new_edges = std::move(new_edges);
  result.degree = n;
  result.fold_steps = std::move(fold_steps);

  if (!resolving_profile(result.extension).bi_covering)
    throw std::logic_error("internal: folded map is not bi-covering");
  if (vertex_degree(result.extension) != n)
    throw std::logic_error("internal: folded map has the wrong degree");
  ConnectivityReport final_report = connectivity(result.extended_graph);
  bool ok = mode == ConnectivityMode::irreducible ? final_report.irreducible
                                                  : final_report.weakly_connected;
  if (!ok)
    throw std::logic_error("internal: folded graph is not connected");
  for (const Edge& e : phi.domain.edges())
    if (result.extension.edge_map.at(e.id) != phi.edge_map.at(e.id))
      throw std::logic_error("internal: extension moved an original edge");
  return result;
}

}  // namespace bicover
