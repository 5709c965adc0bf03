#include "bicover/synthesis.hpp"

#include <chrono>
#include <stdexcept>
#include <unordered_set>

namespace bicover {

namespace {

std::string unique_id(std::unordered_set<std::string>& used, std::string base) {
  std::string id = base;
  for (int k = 1; used.count(id) > 0; ++k) id = base + "~" + std::to_string(k);
  used.insert(id);
  return id;
}

struct Search {
  const Eigen::MatrixXi ag, ah;
  const int ng, nh;
  const RelationMode mode;
  std::vector<int> phi;
  std::vector<int> max_out_nb, max_in_nb;
  long nodes = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  Search(const DirectedMultigraph& g, const DirectedMultigraph& h, RelationMode m)
      : ag(adjacency_matrix(g)), ah(adjacency_matrix(h)),
        ng(g.order()), nh(h.order()), mode(m), phi(g.order(), -1),
        max_out_nb(g.order(), -1), max_in_nb(g.order(), -1) {
    for (int i = 0; i < ng; ++i)
      for (int j = 0; j < ng; ++j) {
        if (ag(i, j) > 0) max_out_nb[i] = std::max(max_out_nb[i], j);
        if (ag(j, i) > 0) max_in_nb[i] = std::max(max_in_nb[i], j);
      }
  }

  bool partial_ok(int k) const {
    // Row and column sums toward each fiber, over the assigned prefix.
    for (int i = 0; i <= k; ++i) {
      for (int J = 0; J < nh; ++J) {
        int out = 0, in = 0;
        for (int j = 0; j <= k; ++j) {
          if (phi[j] == J) {
            out += ag(i, j);
            in += ag(j, i);
          }
        }
        if (out > ah(phi[i], J)) return false;
        if (in > ah(J, phi[i])) return false;
        if (mode == RelationMode::equality) {
          if (max_out_nb[i] <= k && out != ah(phi[i], J)) return false;
          if (max_in_nb[i] <= k && in != ah(J, phi[i])) return false;
        }
      }
    }
    if (mode == RelationMode::equality) {
      // Nonzero b_{I,J} forces equal fiber sizes.
      int remaining = ng - (k + 1);
      std::vector<int> size(nh, 0);
      for (int j = 0; j <= k; ++j) size[phi[j]]++;
      for (int I = 0; I < nh; ++I)
        for (int J = 0; J < nh; ++J)
          if (ah(I, J) != 0 && std::abs(size[I] - size[J]) > remaining)
            return false;
    }
    return true;
  }

  bool leaf_ok(const DirectedMultigraph& g, const DirectedMultigraph& h) const {
    Eigen::MatrixXi s = Eigen::MatrixXi::Zero(ng, nh);
    for (int i = 0; i < ng; ++i) s(i, phi[i]) = 1;
    MatrixRelations rel = matrix_relations(g, h, s);
    return mode == RelationMode::equality ? (rel.eq_right && rel.eq_left)
                                          : (rel.le_right && rel.le_left);
  }

  bool run(const DirectedMultigraph& g, const DirectedMultigraph& h, int k) {
    if (deadline && (++nodes & 1023) == 0 &&
        std::chrono::steady_clock::now() > *deadline)
      throw CapError("subamalgamation search timeout");
    if (k == ng) return leaf_ok(g, h);
    for (int J = 0; J < nh; ++J) {
      phi[k] = J;
      if (partial_ok(k) && run(g, h, k + 1)) return true;
    }
    phi[k] = -1;
    return false;
  }
};

}  // namespace

std::optional<Eigen::MatrixXi> find_subamalgamation(
    const DirectedMultigraph& domain, const DirectedMultigraph& codomain,
    RelationMode mode, std::optional<long> timeout_ms) {
  if (domain.order() > 0 && codomain.order() == 0) return std::nullopt;
  Search search(domain, codomain, mode);
  if (timeout_ms)
    search.deadline = std::chrono::steady_clock::now() +
                      std::chrono::milliseconds(*timeout_ms);
  if (!search.run(domain, codomain, 0)) return std::nullopt;
  Eigen::MatrixXi s = Eigen::MatrixXi::Zero(domain.order(), codomain.order());
  for (int i = 0; i < domain.order(); ++i) s(i, search.phi[i]) = 1;
  return s;
}

namespace {

// Kuhn's augmenting-path matching, used to keep greedy choices feasible.
bool try_augment(const Eigen::MatrixXi& a, int row, const std::vector<bool>& col_banned,
                 std::vector<int>& col_to_row, std::vector<bool>& visited,
                 int first_row) {
  for (int c = 0; c < a.cols(); ++c) {
    if (col_banned[c] || visited[c] || a(row, c) <= 0) continue;
    visited[c] = true;
    if (col_to_row[c] < 0 ||
        (col_to_row[c] >= first_row &&
         try_augment(a, col_to_row[c], col_banned, col_to_row, visited, first_row)))
    {
      col_to_row[c] = row;
      return true;
    }
  }
  return false;
}

bool rows_matchable(const Eigen::MatrixXi& a, int first_row,
                    const std::vector<bool>& col_banned) {
  std::vector<int> col_to_row(a.cols(), -1);
  for (int r = first_row; r < a.rows(); ++r) {
    std::vector<bool> visited(a.cols(), false);
    if (!try_augment(a, r, col_banned, col_to_row, visited, first_row))
      return false;
  }
  return true;
}

}  // namespace

std::vector<Eigen::MatrixXi> decompose_into_permutations(const Eigen::MatrixXi& a,
                                                         int r) {
  const int d = static_cast<int>(a.rows());
  if (a.cols() != d) throw PreconditionError("matrix is not square");
  if (r < 1) throw PreconditionError("permutation count must be positive");
  if ((a.array() < 0).any())
    throw PreconditionError("matrix has negative entries");
  for (int i = 0; i < d; ++i) {
    if (a.row(i).sum() != r)
      throw PreconditionError("row sums do not all equal the common sum");
    if (a.col(i).sum() != r)
      throw PreconditionError("column sums do not all equal the common sum");
  }

  Eigen::MatrixXi work = a;
  std::vector<Eigen::MatrixXi> result;
  for (int t = 0; t < r; ++t) {
    std::vector<int> match(d, -1);
    std::vector<bool> used(d, false);
    for (int row = 0; row < d; ++row) {
      bool placed = false;
      for (int c = 0; c < d && !placed; ++c) {
        if (used[c] || work(row, c) <= 0) continue;
        used[c] = true;
        if (rows_matchable(work, row + 1, used)) {
          match[row] = c;
          placed = true;
        } else {
          used[c] = false;
        }
      }
      if (!placed)
        throw std::logic_error("internal: balanced matrix lost its matching");
    }
    Eigen::MatrixXi p = Eigen::MatrixXi::Zero(d, d);
    for (int row = 0; row < d; ++row) {
      p(row, match[row]) = 1;
      work(row, match[row]) -= 1;
    }
    result.push_back(std::move(p));
  }
  if (!work.isZero())
    throw std::logic_error("internal: decomposition left a nonzero remainder");
  return result;
}

std::pair<Eigen::MatrixXi, std::vector<std::pair<int, int>>> pad_to_balanced_trace(
    const Eigen::MatrixXi& a, int b) {
  const int d = static_cast<int>(a.rows());
  if (a.cols() != d) throw PreconditionError("matrix is not square");
  if (b < 0) throw PreconditionError("target sum must be nonnegative");
  if ((a.array() < 0).any())
    throw PreconditionError("matrix has negative entries");
  for (int i = 0; i < d; ++i)
    if (a.row(i).sum() > b || a.col(i).sum() > b)
      throw PreconditionError("a row or column sum already exceeds the target");

  Eigen::MatrixXi out = a;
  std::vector<std::pair<int, int>> trace;
  std::vector<int> rs(d, 0), cs(d, 0);
  for (int i = 0; i < d; ++i) {
    rs[i] = out.row(i).sum();
    cs[i] = out.col(i).sum();
  }
  long total = 0;
  for (int i = 0; i < d; ++i) total += rs[i];
  while (total < static_cast<long>(b) * d) {
    bool added = false;
    for (int i = 0; i < d && !added; ++i) {
      if (rs[i] >= b) continue;
      for (int j = 0; j < d && !added; ++j) {
        if (cs[j] >= b) continue;
        out(i, j) += 1;
        rs[i] += 1;
        cs[j] += 1;
        total += 1;
        trace.emplace_back(i, j);
        added = true;
      }
    }
    if (!added)
      throw std::logic_error("internal: no deficient pair although short of balance");
  }
  return {out, trace};
}

Eigen::MatrixXi pad_to_balanced(const Eigen::MatrixXi& a, int b) {
  return pad_to_balanced_trace(a, b).first;
}

GraphHomomorphism build_bicovering(const DirectedMultigraph& domain,
                                   const DirectedMultigraph& codomain,
                                   const Eigen::MatrixXi& s) {
  MatrixRelations rel = matrix_relations(domain, codomain, s);
  if (!rel.eq_right || !rel.eq_left)
    throw PreconditionError("matrix relations do not hold with equality");

  const Eigen::MatrixXi ag = adjacency_matrix(domain);
  const Eigen::MatrixXi ah = adjacency_matrix(codomain);
  auto vm = vertex_map_from_matrix(domain, codomain, s);

  std::vector<std::vector<int>> fiber(codomain.order());
  for (int v = 0; v < domain.order(); ++v)
    fiber[codomain.vertex_index(vm.at(domain.vertices()[v]))].push_back(v);

  // Parallel domain edges per vertex pair, and codomain edges per pair.
  std::map<std::pair<int, int>, std::vector<int>> g_par, h_par;
  for (int e = 0; e < domain.size(); ++e) {
    const Edge& ed = domain.edges()[e];
    g_par[{domain.vertex_index(ed.src), domain.vertex_index(ed.dst)}].push_back(e);
  }
  for (int e = 0; e < codomain.size(); ++e) {
    const Edge& ed = codomain.edges()[e];
    h_par[{codomain.vertex_index(ed.src), codomain.vertex_index(ed.dst)}].push_back(e);
  }

  std::map<std::string, std::string> em;
  for (int I = 0; I < codomain.order(); ++I) {
    for (int J = 0; J < codomain.order(); ++J) {
      const int b = ah(I, J);
      if (b == 0) continue;
      const auto& fi = fiber[I];
      const auto& fj = fiber[J];
      if (fi.empty() && fj.empty()) continue;
      if (fi.size() != fj.size())
        throw std::logic_error("internal: unequal fibers under equality relations");
      const int m = static_cast<int>(fi.size());
      Eigen::MatrixXi block(m, m);
      for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) block(u, v) = ag(fi[u], fj[v]);
      auto perms = decompose_into_permutations(block, b);
      const auto& targets = h_par.at({I, J});
      for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) {
          if (block(u, v) == 0) continue;
          const auto& par = g_par.at({fi[u], fj[v]});
          int slot = 0;
          for (int t = 0; t < b; ++t) {
            if (perms[t](u, v) != 1) continue;
            em[domain.edges()[par[slot]].id] = codomain.edges()[targets[t]].id;
            ++slot;
          }
        }
    }
  }
  GraphHomomorphism phi = validate_homomorphism(domain, codomain, vm, em);
  if (!resolving_profile(phi).bi_covering)
    throw std::logic_error("internal: constructed map is not bi-covering");
  return phi;
}

BiresolvingResult build_biresolving(const DirectedMultigraph& domain,
                                    const DirectedMultigraph& codomain,
                                    const Eigen::MatrixXi& s) {
  MatrixRelations rel = matrix_relations(domain, codomain, s);
  if (!rel.le_right || !rel.le_left)
    throw PreconditionError("matrix relations do not hold with <=");

  const Eigen::MatrixXi ag = adjacency_matrix(domain);
  const Eigen::MatrixXi ah = adjacency_matrix(codomain);
  auto vm = vertex_map_from_matrix(domain, codomain, s);

  std::vector<std::vector<int>> fiber(codomain.order());
  for (int v = 0; v < domain.order(); ++v)
    fiber[codomain.vertex_index(vm.at(domain.vertices()[v]))].push_back(v);
  size_t d = 0;
  for (const auto& f : fiber) d = std::max(d, f.size());

  BiresolvingResult result;
  if (d == 0) {
    result.resolving = validate_homomorphism(domain, codomain, {}, {});
    result.covering = result.resolving;
    return result;
  }

  std::unordered_set<std::string> used_v, used_e;
  for (const auto& v : domain.vertices()) used_v.insert(v);
  for (const auto& e : domain.edges()) used_e.insert(e.id);

  // Fiber vertex ids after padding, per codomain vertex, fiber order.
  std::vector<std::string> vertices = domain.vertices();
  std::vector<std::vector<std::string>> padded(codomain.order());
  std::map<std::string, std::string> vm_hat = vm;
  for (int I = 0; I < codomain.order(); ++I) {
    for (int v : fiber[I]) padded[I].push_back(domain.vertices()[v]);
    for (size_t k = fiber[I].size(); k < d; ++k) {
      std::string id = unique_id(
          used_v, "pad:" + codomain.vertices()[I] + "#" + std::to_string(k - fiber[I].size()));
      padded[I].push_back(id);
      vertices.push_back(id);
      vm_hat[id] = codomain.vertices()[I];
    }
  }

  std::vector<Edge> edges = domain.edges();
  for (int I = 0; I < codomain.order(); ++I) {
    for (int J = 0; J < codomain.order(); ++J) {
      const int b = ah(I, J);
      if (b == 0) continue;
      Eigen::MatrixXi block = Eigen::MatrixXi::Zero(static_cast<int>(d),
                                                    static_cast<int>(d));
      for (size_t u = 0; u < fiber[I].size(); ++u)
        for (size_t v = 0; v < fiber[J].size(); ++v)
          block(static_cast<int>(u), static_cast<int>(v)) =
              ag(fiber[I][u], fiber[J][v]);
      auto [balanced, trace] = pad_to_balanced_trace(block, b);
      (void)balanced;
      for (size_t k = 0; k < trace.size(); ++k) {
        std::string id = unique_id(
            used_e, "pad:" + codomain.vertices()[I] + ">" + codomain.vertices()[J] +
                        "#" + std::to_string(k));
        edges.push_back({id, padded[I][trace[k].first], padded[J][trace[k].second]});
      }
    }
  }

  DirectedMultigraph padded_graph(vertices, edges);
  Eigen::MatrixXi s_hat = matrix_from_vertex_map(padded_graph, codomain, vm_hat);
  result.covering = build_bicovering(padded_graph, codomain, s_hat);

  std::map<std::string, std::string> em;
  for (const Edge& e : domain.edges()) em[e.id] = result.covering.edge_map.at(e.id);
  result.resolving = validate_homomorphism(domain, codomain, vm, em);
  if (!resolving_profile(result.resolving).bi_resolving)
    throw std::logic_error("internal: restriction is not bi-resolving");
  return result;
}

}  // namespace bicover
