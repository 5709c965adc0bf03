#include "bicover/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace bicover {

DirectedMultigraph::DirectedMultigraph(std::vector<std::string> vertices,
                                       std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) {
    if (!vindex_.emplace(vertices_[i], i).second)
      throw FormatError("duplicate vertex id: " + vertices_[i]);
  }
  out_.assign(vertices_.size(), {});
  in_.assign(vertices_.size(), {});
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    const Edge& e = edges_[i];
    if (!eindex_.emplace(e.id, i).second)
      throw FormatError("duplicate edge id: " + e.id);
    auto s = vindex_.find(e.src);
    auto t = vindex_.find(e.dst);
    if (s == vindex_.end())
      throw FormatError("edge " + e.id + " has undeclared source " + e.src);
    if (t == vindex_.end())
      throw FormatError("edge " + e.id + " has undeclared target " + e.dst);
    out_[s->second].push_back(i);
    in_[t->second].push_back(i);
  }
}

DirectedMultigraph DirectedMultigraph::from_matrix(
    const std::vector<std::string>& order, const Eigen::MatrixXi& counts) {
  const int n = static_cast<int>(order.size());
  if (counts.rows() != n || counts.cols() != n)
    throw FormatError("matrix shape does not match vertex order");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (counts(i, j) < 0) throw FormatError("negative edge count");
      for (int k = 0; k < counts(i, j); ++k)
        edges.push_back({order[i] + ">" + order[j] + "#" + std::to_string(k),
                         order[i], order[j]});
    }
  return DirectedMultigraph(order, std::move(edges));
}

int DirectedMultigraph::vertex_index(const std::string& id) const {
  auto it = vindex_.find(id);
  if (it == vindex_.end()) throw FormatError("unknown vertex id: " + id);
  return it->second;
}

int DirectedMultigraph::edge_index(const std::string& id) const {
  auto it = eindex_.find(id);
  if (it == eindex_.end()) throw FormatError("unknown edge id: " + id);
  return it->second;
}

Eigen::MatrixXi adjacency_matrix(const DirectedMultigraph& g) {
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(g.order(), g.order());
  for (const Edge& e : g.edges())
    m(g.vertex_index(e.src), g.vertex_index(e.dst)) += 1;
  return m;
}

namespace {

// Tarjan's algorithm; components come out in reverse topological order and
// are re-sorted by smallest member for a declaration-order report.
struct SccState {
  const DirectedMultigraph& g;
  std::vector<int> index, low, stack;
  std::vector<bool> on_stack;
  std::vector<std::vector<int>> components;
  int counter = 0;

  explicit SccState(const DirectedMultigraph& graph)
      : g(graph),
        index(graph.order(), -1),
        low(graph.order(), 0),
        on_stack(graph.order(), false) {}

  void visit(int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int ei : g.out_edges(v)) {
      int w = g.vertex_index(g.edge(ei).dst);
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      components.push_back(std::move(comp));
    }
  }
};

int find_root(std::vector<int>& parent, int v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

ConnectivityReport connectivity(const DirectedMultigraph& g) {
  ConnectivityReport report;
  const int n = g.order();
  if (n == 0) return report;

  SccState scc(g);
  for (int v = 0; v < n; ++v)
    if (scc.index[v] < 0) scc.visit(v);

  std::vector<std::vector<int>> kept;
  for (auto& comp : scc.components) {
    bool cyclic = comp.size() > 1;
    if (!cyclic) {
      int v = comp[0];
      for (int ei : g.out_edges(v))
        if (g.edge(ei).dst == g.edge(ei).src) cyclic = true;
    }
    if (!cyclic) continue;
    std::sort(comp.begin(), comp.end());
    kept.push_back(comp);
  }
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  for (const auto& comp : kept) {
    std::vector<std::string> ids;
    for (int v : comp) ids.push_back(g.vertices()[v]);
    report.irreducible_components.push_back(std::move(ids));
  }
  report.irreducible = kept.size() == 1 &&
                       static_cast<int>(kept[0].size()) == n;

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const Edge& e : g.edges()) {
    int a = find_root(parent, g.vertex_index(e.src));
    int b = find_root(parent, g.vertex_index(e.dst));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<int>> weak(n);
  for (int v = 0; v < n; ++v) weak[find_root(parent, v)].push_back(v);
  for (const auto& comp : weak) {
    if (comp.empty()) continue;
    std::vector<std::string> ids;
    for (int v : comp) ids.push_back(g.vertices()[v]);
    report.weak_components.push_back(std::move(ids));
  }
  report.weakly_connected = report.weak_components.size() == 1;
  return report;
}

DirectedMultigraph essentialize(const DirectedMultigraph& g) {
  const int n = g.order();
  std::vector<bool> alive(n, true);
  std::vector<int> outdeg(n, 0), indeg(n, 0);
  for (const Edge& e : g.edges()) {
    outdeg[g.vertex_index(e.src)]++;
    indeg[g.vertex_index(e.dst)]++;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (!alive[v] || (outdeg[v] > 0 && indeg[v] > 0)) continue;
      alive[v] = false;
      changed = true;
      for (int ei : g.out_edges(v)) {
        int w = g.vertex_index(g.edge(ei).dst);
        if (alive[w]) indeg[w]--;
      }
      for (int ei : g.in_edges(v)) {
        int w = g.vertex_index(g.edge(ei).src);
        if (alive[w]) outdeg[w]--;
      }
    }
  }
  std::vector<std::string> vertices;
  for (int v = 0; v < n; ++v)
    if (alive[v]) vertices.push_back(g.vertices()[v]);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (alive[g.vertex_index(e.src)] && alive[g.vertex_index(e.dst)])
      edges.push_back(e);
  return DirectedMultigraph(std::move(vertices), std::move(edges));
}

bool is_essential(const DirectedMultigraph& g) {
  std::vector<int> outdeg(g.order(), 0), indeg(g.order(), 0);
  for (const Edge& e : g.edges()) {
    outdeg[g.vertex_index(e.src)]++;
    indeg[g.vertex_index(e.dst)]++;
  }
  for (int v = 0; v < g.order(); ++v)
    if (outdeg[v] == 0 || indeg[v] == 0) return false;
  return true;
}

double spectral_radius(const Eigen::MatrixXi& m) {
  if (m.rows() == 0 || m.cols() == 0)
    throw PreconditionError("spectral radius of an empty matrix");
  if (m.rows() != m.cols()) throw PreconditionError("matrix is not square");
  if ((m.array() < 0).any())
    throw PreconditionError("matrix has negative entries");

  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXd b = m.cast<double>() + Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(double(n));
  double rayleigh = 0.0;
  for (int it = 0; it < 100000; ++it) {
    Eigen::VectorXd w = b * v;
    double r = v.dot(w);
    double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    if (it > 0 && std::abs(r - rayleigh) <= 1e-10) return r - 1.0;
    rayleigh = r;
  }
  return rayleigh - 1.0;
}

double spectral_radius(const DirectedMultigraph& g) {
  if (g.empty()) return 0.0;
  return spectral_radius(adjacency_matrix(g));
}

namespace {

std::string join_path(const DirectedMultigraph& g, const std::vector<int>& path) {
  std::string id;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i > 0) id += '|';
    id += g.edges()[path[i]].id;
  }
  return id;
}

}  // namespace

HigherGraph higher_graph(const DirectedMultigraph& g, int n) {
  if (n < 1) throw PreconditionError("higher graph order must be positive");
  HigherGraph result;
  if (n == 1) {
    result.graph = g;
    result.vertex_paths.assign(g.order(), {});
    for (const Edge& e : g.edges()) result.edge_paths.push_back({e.id});
    return result;
  }

  // Paths of each length, extended in declaration order so that path lists
  // are ordered lexicographically by edge index.
  std::vector<std::vector<int>> paths;
  for (int i = 0; i < g.size(); ++i) paths.push_back({i});
  for (int len = 2; len <= n; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& p : paths) {
      int at = g.vertex_index(g.edge(p.back()).dst);
      for (int ei : g.out_edges(at)) {
        if (next.size() > 5000000u)
          throw CapError("higher graph size cap exceeded");
        auto q = p;
        q.push_back(ei);
        next.push_back(std::move(q));
      }
    }
    if (len < n) paths = std::move(next);
    else {
      // len == n: `paths` holds length n-1, `next` holds length n.
      std::vector<std::string> vertices;
      std::unordered_map<std::string, int> vid;
      for (const auto& p : paths) {
        std::string id = join_path(g, p);
        vid.emplace(id, static_cast<int>(vertices.size()));
        vertices.push_back(id);
        std::vector<std::string> base;
        for (int ei : p) base.push_back(g.edges()[ei].id);
        result.vertex_paths.push_back(std::move(base));
      }
      std::vector<Edge> edges;
      for (const auto& p : next) {
        std::string id = join_path(g, p);
        std::vector<int> prefix(p.begin(), p.end() - 1);
        std::vector<int> suffix(p.begin() + 1, p.end());
        edges.push_back({id, join_path(g, prefix), join_path(g, suffix)});
        std::vector<std::string> base;
        for (int ei : p) base.push_back(g.edges()[ei].id);
        result.edge_paths.push_back(std::move(base));
      }
      result.graph = DirectedMultigraph(std::move(vertices), std::move(edges));
      break;
    }
  }
  return result;
}

}  // namespace bicover
