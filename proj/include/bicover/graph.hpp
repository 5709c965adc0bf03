#pragma once

#include <Eigen/Dense>
#include <string>
#include <unordered_map>
#include <vector>

#include "bicover/errors.hpp"

namespace bicover {

struct Edge {
  std::string id;
  std::string src;
  std::string dst;
};

// Finite directed multigraph over string identifiers. Vertex and edge order
// is declaration order; every algorithm in this library iterates in that
// order, so results are deterministic.
class DirectedMultigraph {
 public:
  DirectedMultigraph() = default;
  DirectedMultigraph(std::vector<std::string> vertices, std::vector<Edge> edges);

  // Builds a graph whose edges realize the given count matrix. The k-th
  // parallel edge from vertex i to vertex j is named "i>j#k".
  static DirectedMultigraph from_matrix(const std::vector<std::string>& order,
                                        const Eigen::MatrixXi& counts);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_vertex(const std::string& id) const { return vindex_.count(id) > 0; }
  bool has_edge(const std::string& id) const { return eindex_.count(id) > 0; }
  int vertex_index(const std::string& id) const;
  int edge_index(const std::string& id) const;
  const Edge& edge(int index) const { return edges_[index]; }

  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_[v]; }

  int order() const { return static_cast<int>(vertices_.size()); }
  int size() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return vertices_.empty(); }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> vindex_;
  std::unordered_map<std::string, int> eindex_;
  std::vector<std::vector<int>> out_, in_;
};

struct ConnectivityReport {
  bool irreducible = false;
  bool weakly_connected = false;
  // Strongly connected components restricted to vertices lying on cycles;
  // a loop-free single vertex is not a component. Components and their
  // members are listed in declaration order.
  std::vector<std::vector<std::string>> irreducible_components;
  std::vector<std::vector<std::string>> weak_components;
};

Eigen::MatrixXi adjacency_matrix(const DirectedMultigraph& g);

ConnectivityReport connectivity(const DirectedMultigraph& g);

// Repeatedly removes vertices with no incoming or no outgoing edges, with
// their incident edges, until the result is essential. May be empty.
DirectedMultigraph essentialize(const DirectedMultigraph& g);

bool is_essential(const DirectedMultigraph& g);

// Perron root of a square nonnegative integer matrix, computed by power
// iteration on M + I (tolerance 1e-10 on successive Rayleigh quotients,
// iteration cap 100000). Throws on an empty matrix.
double spectral_radius(const Eigen::MatrixXi& m);

// Convenience overload: Perron root of the adjacency matrix, 0 for the
// empty graph.
double spectral_radius(const DirectedMultigraph& g);

struct HigherGraph {
  DirectedMultigraph graph;
  // Underlying base paths, as base edge-id sequences, per new vertex (length
  // n-1) and per new edge (length n). For n = 1 vertex paths are empty and
  // edge paths are singletons.
  std::vector<std::vector<std::string>> vertex_paths;
  std::vector<std::vector<std::string>> edge_paths;
};

// Higher graph of order n >= 1: vertices are paths of length n-1, edges are
// paths of length n. n = 1 returns the graph itself. New identifiers join
// base edge ids with '|'.
HigherGraph higher_graph(const DirectedMultigraph& g, int n);

}  // namespace bicover
