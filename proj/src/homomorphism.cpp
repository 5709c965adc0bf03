#include "bicover/homomorphism.hpp"

#include <algorithm>

namespace bicover {

GraphHomomorphism validate_homomorphism(const DirectedMultigraph& domain,
                                        const DirectedMultigraph& codomain,
                                        const std::map<std::string, std::string>& vertex_map,
                                        const std::map<std::string, std::string>& edge_map) {
  GraphHomomorphism phi;
  phi.domain = domain;
  phi.codomain = codomain;
  phi.vertex_map = vertex_map;
  phi.edge_map = edge_map;
  phi.vmap.assign(domain.order(), -1);
  phi.emap.assign(domain.size(), -1);

  for (int v = 0; v < domain.order(); ++v) {
    const std::string& id = domain.vertices()[v];
    auto it = vertex_map.find(id);
    if (it == vertex_map.end())
      throw FormatError("vertex map is missing vertex " + id);
    if (!codomain.has_vertex(it->second))
      throw FormatError("vertex " + id + " maps to undeclared vertex " + it->second);
    phi.vmap[v] = codomain.vertex_index(it->second);
  }
  for (int e = 0; e < domain.size(); ++e) {
    const Edge& edge = domain.edges()[e];
    auto it = edge_map.find(edge.id);
    if (it == edge_map.end())
      throw FormatError("edge map is missing edge " + edge.id);
    if (!codomain.has_edge(it->second))
      throw FormatError("edge " + edge.id + " maps to undeclared edge " + it->second);
    int img = codomain.edge_index(it->second);
    const Edge& image = codomain.edges()[img];
    if (image.src != phi.vertex_map.at(edge.src) ||
        image.dst != phi.vertex_map.at(edge.dst))
      throw FormatError("edge " + edge.id + " breaks adjacency: image " +
                        image.id + " does not join the image vertices");
    phi.emap[e] = img;
  }
  return phi;
}

ResolvingProfile resolving_profile(const GraphHomomorphism& phi) {
  ResolvingProfile p;
  const DirectedMultigraph& g = phi.domain;
  const DirectedMultigraph& h = phi.codomain;

  auto scan = [&](bool right) {
    bool resolving = true, covering = true;
    std::optional<ProfileWitness> rw, cw;
    for (int v = 0; v < g.order() && (resolving || covering); ++v) {
      const auto& own = right ? g.out_edges(v) : g.in_edges(v);
      const auto& target = right ? h.out_edges(phi.vmap[v]) : h.in_edges(phi.vmap[v]);
      std::vector<int> seen_by;  // image edge index -> first domain edge
      seen_by.assign(h.size(), -1);
      bool collided = false;
      for (int ei : own) {
        int img = phi.emap[ei];
        if (seen_by[img] >= 0) {
          if (resolving) {
            resolving = false;
            rw = ProfileWitness{g.vertices()[v],
                                {g.edges()[seen_by[img]].id, g.edges()[ei].id}};
          }
          if (covering) {
            covering = false;
            cw = ProfileWitness{g.vertices()[v],
                                {g.edges()[seen_by[img]].id, g.edges()[ei].id}};
          }
          collided = true;
          break;
        }
        seen_by[img] = ei;
      }
      if (covering && !collided && own.size() != target.size()) {
        covering = false;
        std::string missing;
        for (int hi : target)
          if (seen_by[hi] < 0) { missing = h.edges()[hi].id; break; }
        cw = ProfileWitness{g.vertices()[v], {missing}};
      }
    }
    return std::make_tuple(resolving, covering, rw, cw);
  };

  std::tie(p.right_resolving, p.right_covering, p.right_resolving_witness,
           p.right_covering_witness) = scan(true);
  std::tie(p.left_resolving, p.left_covering, p.left_resolving_witness,
           p.left_covering_witness) = scan(false);
  p.bi_resolving = p.right_resolving && p.left_resolving;
  p.bi_covering = p.right_covering && p.left_covering;
  return p;
}

int vertex_degree(const GraphHomomorphism& phi) {
  std::vector<int> fiber(phi.codomain.order(), 0);
  for (int v = 0; v < phi.domain.order(); ++v) fiber[phi.vmap[v]]++;
  int d = 0;
  for (int c : fiber) d = std::max(d, c);
  return d;
}

bool is_subamalgamation(const Eigen::MatrixXi& s) {
  for (int i = 0; i < s.rows(); ++i) {
    int ones = 0;
    for (int j = 0; j < s.cols(); ++j) {
      if (s(i, j) != 0 && s(i, j) != 1) return false;
      ones += s(i, j);
    }
    if (ones != 1) return false;
  }
  return true;
}

void validate_subamalgamation(const Eigen::MatrixXi& s) {
  if (!is_subamalgamation(s))
    throw FormatError("matrix is not a subamalgamation matrix "
                      "(every row needs exactly one 1)");
}

bool is_amalgamation(const Eigen::MatrixXi& s) {
  if (!is_subamalgamation(s)) return false;
  for (int j = 0; j < s.cols(); ++j) {
    if (s.rows() == 0 || s.col(j).sum() < 1) return false;
  }
  return true;
}

MatrixRelations matrix_relations(const DirectedMultigraph& domain,
                                 const DirectedMultigraph& codomain,
                                 const Eigen::MatrixXi& s) {
  if (s.rows() != domain.order() || s.cols() != codomain.order())
    throw PreconditionError("subamalgamation matrix has mismatched dimensions");
  validate_subamalgamation(s);
  Eigen::MatrixXi ag = adjacency_matrix(domain);
  Eigen::MatrixXi ah = adjacency_matrix(codomain);
  MatrixRelations r;
  r.ag_s = ag * s;
  r.s_ah = s * ah;
  r.st_ag = s.transpose() * ag;
  r.ah_st = ah * s.transpose();
  r.eq_right = r.ag_s == r.s_ah;
  r.le_right = (r.ag_s.array() <= r.s_ah.array()).all();
  r.eq_left = r.st_ag == r.ah_st;
  r.le_left = (r.st_ag.array() <= r.ah_st.array()).all();
  return r;
}

Eigen::MatrixXi matrix_from_vertex_map(const DirectedMultigraph& domain,
                                       const DirectedMultigraph& codomain,
                                       const std::map<std::string, std::string>& vertex_map) {
  Eigen::MatrixXi s = Eigen::MatrixXi::Zero(domain.order(), codomain.order());
  for (int v = 0; v < domain.order(); ++v) {
    auto it = vertex_map.find(domain.vertices()[v]);
    if (it == vertex_map.end())
      throw FormatError("vertex map is missing vertex " + domain.vertices()[v]);
    s(v, codomain.vertex_index(it->second)) = 1;
  }
  return s;
}

std::map<std::string, std::string> vertex_map_from_matrix(const DirectedMultigraph& domain,
                                                          const DirectedMultigraph& codomain,
                                                          const Eigen::MatrixXi& s) {
  if (s.rows() != domain.order() || s.cols() != codomain.order())
    throw PreconditionError("subamalgamation matrix has mismatched dimensions");
  validate_subamalgamation(s);
  std::map<std::string, std::string> vm;
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j)
      if (s(i, j) == 1) vm[domain.vertices()[i]] = codomain.vertices()[j];
  return vm;
}

HigherHomomorphism higher_homomorphism(const GraphHomomorphism& phi, int n) {
  HigherHomomorphism result;
  result.domain = higher_graph(phi.domain, n);
  result.codomain = higher_graph(phi.codomain, n);
  if (n == 1) {
    result.hom = phi;
    return result;
  }

  auto image_id = [&](const std::vector<std::string>& base_path) {
    std::string id;
    for (size_t i = 0; i < base_path.size(); ++i) {
      if (i > 0) id += '|';
      id += phi.edge_map.at(base_path[i]);
    }
    return id;
  };

  std::map<std::string, std::string> vm, em;
  const auto& dom = result.domain;
  for (size_t i = 0; i < dom.vertex_paths.size(); ++i)
    vm[dom.graph.vertices()[i]] = image_id(dom.vertex_paths[i]);
  for (size_t i = 0; i < dom.edge_paths.size(); ++i)
    em[dom.graph.edges()[i].id] = image_id(dom.edge_paths[i]);
  result.hom = validate_homomorphism(dom.graph, result.codomain.graph, vm, em);
  return result;
}

}  // namespace bicover
