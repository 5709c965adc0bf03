#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bicover/graph.hpp"

namespace bicover {

// A graph homomorphism: vertex map plus edge map respecting adjacency.
// Holds copies of both graphs; values are immutable once validated.
struct GraphHomomorphism {
  DirectedMultigraph domain, codomain;
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, std::string> edge_map;

  // Index-level maps, filled by validate_homomorphism.
  std::vector<int> vmap, emap;

  std::string vertex_image(const std::string& v) const { return vertex_map.at(v); }
  std::string edge_image(const std::string& e) const { return edge_map.at(e); }
};

// Validates totality and adjacency; the error message identifies the first
// violating vertex or edge in declaration order.
GraphHomomorphism validate_homomorphism(const DirectedMultigraph& domain,
                                        const DirectedMultigraph& codomain,
                                        const std::map<std::string, std::string>& vertex_map,
                                        const std::map<std::string, std::string>& edge_map);

struct ProfileWitness {
  std::string vertex;  // domain vertex where the failure shows
  // Two domain edges sharing an image, or a single uncovered codomain edge.
  std::vector<std::string> edges;
};

struct ResolvingProfile {
  bool right_resolving = true, left_resolving = true;
  bool right_covering = true, left_covering = true;
  bool bi_resolving = true, bi_covering = true;
  std::optional<ProfileWitness> right_resolving_witness, left_resolving_witness;
  std::optional<ProfileWitness> right_covering_witness, left_covering_witness;
};

// Flags are vacuously true on vertices with no outgoing (resp. incoming)
// edges; covering flags require bijectivity onto the image vertex's edges.
// Witnesses are the first violations in declaration order.
ResolvingProfile resolving_profile(const GraphHomomorphism& phi);

// Largest vertex fiber size.
int vertex_degree(const GraphHomomorphism& phi);

// True when every row of s has exactly one 1 and all entries are 0 or 1.
bool is_subamalgamation(const Eigen::MatrixXi& s);
void validate_subamalgamation(const Eigen::MatrixXi& s);
// True when additionally every column has at least one 1.
bool is_amalgamation(const Eigen::MatrixXi& s);

struct MatrixRelations {
  Eigen::MatrixXi ag_s, s_ah;    // A_G S and S A_H
  Eigen::MatrixXi st_ag, ah_st;  // S^T A_G and A_H S^T
  bool eq_right = false, le_right = false;  // A_G S = / <= S A_H
  bool eq_left = false, le_left = false;    // S^T A_G = / <= A_H S^T
};

MatrixRelations matrix_relations(const DirectedMultigraph& domain,
                                 const DirectedMultigraph& codomain,
                                 const Eigen::MatrixXi& s);

Eigen::MatrixXi matrix_from_vertex_map(const DirectedMultigraph& domain,
                                       const DirectedMultigraph& codomain,
                                       const std::map<std::string, std::string>& vertex_map);

std::map<std::string, std::string> vertex_map_from_matrix(const DirectedMultigraph& domain,
                                                          const DirectedMultigraph& codomain,
                                                          const Eigen::MatrixXi& s);

struct HigherHomomorphism {
  HigherGraph domain, codomain;
  GraphHomomorphism hom;
};

// Induced homomorphism between higher graphs of order n.
HigherHomomorphism higher_homomorphism(const GraphHomomorphism& phi, int n);

}  // namespace bicover
