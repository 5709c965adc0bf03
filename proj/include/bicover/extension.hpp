#pragma once

#include <string>
#include <vector>

#include "bicover/graph.hpp"
#include "bicover/homomorphism.hpp"

namespace bicover {

// A bi-covering homomorphism built on top of an existing bi-resolving one.
// The extended graph contains the original domain as a subgraph and the
// extension restricted to that subgraph equals the original map.
struct ExtensionResult {
  DirectedMultigraph extended_graph;
  GraphHomomorphism extension;
  std::vector<std::string> new_edges;
  int degree = 0;
  // Degree-n builds only: the running subgraph after the codomain copy is
  // adjoined and after each fold, for auditing the merge invariant.
  std::vector<DirectedMultigraph> fold_steps;
};

enum class ConnectivityMode { irreducible, weakly_connected };

struct PerronDiagnosis {
  bool codomain_irreducible = false;
  bool domain_irreducible = false;
  double domain_radius = 0.0;
  double codomain_radius = 0.0;
  bool radii_equal = false;
  bool obstruction = false;
};

// Pads every vertex fiber to the target size with isolated vertices, then
// completes the preimages of each codomain edge to a perfect matching
// between its endpoint fibers. The old preimages of an edge are already a
// partial matching because the input is bi-resolving; unmatched sources and
// targets are paired in fiber order. New edges are named "new:<edge>#<k>".
ExtensionResult bicovering_completion(const GraphHomomorphism& phi,
                                      int target_fiber_size);

// Completion at the current vertex degree. Requires an irreducible codomain
// and a weakly connected domain; the completed domain is then a single
// irreducible graph and the degree does not grow.
ExtensionResult irreducible_extension_same_degree(
    const GraphHomomorphism& phi,
    ConnectivityMode mode = ConnectivityMode::irreducible);

// Degree-n bi-covering extension with irreducible domain, for n strictly
// above the vertex degree and a codomain of strictly larger spectral
// radius. Completes to degree n-1, adjoins a disjoint copy of the codomain
// ("copy:" vertices and edges), and folds the completion's components into
// it one at a time by exchanging terminal vertices of two new edges with
// the same image.
ExtensionResult irreducible_extension_degree_n(
    const GraphHomomorphism& phi, int n,
    ConnectivityMode mode = ConnectivityMode::irreducible);

// Detects the configuration that rules out every irreducible bi-covering
// extension: irreducible codomain, reducible domain, equal spectral radii.
PerronDiagnosis perron_obstruction_check(const GraphHomomorphism& phi);

}  // namespace bicover
