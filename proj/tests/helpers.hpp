#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bicover/graph.hpp"
#include "bicover/homomorphism.hpp"

namespace testutil {

inline std::vector<std::string> vertex_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  return names;
}

inline bicover::DirectedMultigraph graph_of(
    const std::vector<std::vector<int>>& counts) {
  const int n = static_cast<int>(counts.size());
  Eigen::MatrixXi m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = counts[i][j];
  return bicover::DirectedMultigraph::from_matrix(vertex_names(n), m);
}

// All n-by-n count matrices with entries in {0..max_entry}, as an odometer.
struct MatrixFamily {
  int n;
  int max_entry;
  std::vector<int> cells;
  bool first = true;

  explicit MatrixFamily(int order, int cap)
      : n(order), max_entry(cap), cells(order * order, 0) {}

  std::optional<bicover::DirectedMultigraph> next() {
    if (!first) {
      size_t i = 0;
      for (; i < cells.size(); ++i) {
        if (++cells[i] <= max_entry) break;
        cells[i] = 0;
      }
      if (i == cells.size()) return std::nullopt;
    }
    first = false;
    Eigen::MatrixXi m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = cells[r * n + c];
    return bicover::DirectedMultigraph::from_matrix(vertex_names(n), m);
  }
};

inline bicover::DirectedMultigraph random_graph(std::mt19937& rng, int order,
                                                int max_entry) {
  std::uniform_int_distribution<int> cell(0, max_entry);
  Eigen::MatrixXi m(order, order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) m(i, j) = cell(rng);
  return bicover::DirectedMultigraph::from_matrix(vertex_names(order), m);
}

inline bicover::DirectedMultigraph random_irreducible_graph(std::mt19937& rng,
                                                            int order,
                                                            int max_entry) {
  while (true) {
    auto g = random_graph(rng, order, max_entry);
    if (g.size() > 0 && bicover::connectivity(g).irreducible) return g;
  }
}

// A bi-resolving homomorphism onto h: take the depth-fold cover driven by a
// random permutation per codomain edge, delete a few cover edges, and keep
// the essential part. The projection of what survives is injective on the
// in- and out-edges of every vertex.
inline std::optional<bicover::GraphHomomorphism> random_biresolving_fixture(
    std::mt19937& rng, const bicover::DirectedMultigraph& h, int depth,
    int deletions) {
  std::vector<std::string> names;
  for (int i = 0; i < h.order(); ++i)
    for (int s = 0; s < depth; ++s)
      names.push_back(h.vertices()[i] + "." + std::to_string(s));
  std::map<std::string, std::string> vmap, emap;
  for (int i = 0; i < h.order(); ++i)
    for (int s = 0; s < depth; ++s)
      vmap[h.vertices()[i] + "." + std::to_string(s)] = h.vertices()[i];

  std::vector<bicover::Edge> lifted;
  std::vector<int> perm(depth);
  for (int e = 0; e < h.size(); ++e) {
    const auto& edge = h.edge(e);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int s = 0; s < depth; ++s) {
      const std::string id = edge.id + "." + std::to_string(s);
      lifted.push_back(
          bicover::Edge{id, edge.src + "." + std::to_string(s),
                        edge.dst + "." + std::to_string(perm[s])});
      emap[id] = edge.id;
    }
  }

  std::vector<int> order(lifted.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> keep(lifted.size(), 1);
  for (int i = 0; i < deletions && i < static_cast<int>(lifted.size()); ++i)
    keep[order[i]] = 0;
  std::vector<bicover::Edge> kept;
  for (size_t e = 0; e < lifted.size(); ++e)
    if (keep[e]) kept.push_back(lifted[e]);

  const auto domain =
      bicover::essentialize(bicover::DirectedMultigraph(names, kept));
  if (domain.order() == 0 || domain.size() == 0) return std::nullopt;
  std::map<std::string, std::string> vkeep, ekeep;
  for (const auto& v : domain.vertices()) vkeep[v] = vmap.at(v);
  for (int e = 0; e < domain.size(); ++e)
    ekeep[domain.edge(e).id] = emap.at(domain.edge(e).id);
  return bicover::validate_homomorphism(domain, h, vkeep, ekeep);
}

}  // namespace testutil
