#include "oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace oracle {

namespace {

// Advance f through all maps {0..gn-1} -> {0..hn-1}; false when exhausted.
bool next_map(std::vector<int>& f, int hn) {
  for (size_t i = 0; i < f.size(); ++i) {
    if (++f[i] < hn) return true;
    f[i] = 0;
  }
  return false;
}

bool counts_admit(const Eigen::MatrixXi& ag, const Eigen::MatrixXi& ah,
                  const std::vector<int>& f, bool equality) {
  const int gn = static_cast<int>(ag.rows());
  const int hn = static_cast<int>(ah.rows());
  for (int u = 0; u < gn; ++u)
    for (int J = 0; J < hn; ++J) {
      int out = 0;
      for (int w = 0; w < gn; ++w)
        if (f[w] == J) out += ag(u, w);
      if (equality ? out != ah(f[u], J) : out > ah(f[u], J)) return false;
    }
  for (int v = 0; v < gn; ++v)
    for (int I = 0; I < hn; ++I) {
      int in = 0;
      for (int u = 0; u < gn; ++u)
        if (f[u] == I) in += ag(u, v);
      if (equality ? in != ah(I, f[v]) : in > ah(I, f[v])) return false;
    }
  return true;
}

struct Assigner {
  const bicover::DirectedMultigraph& g;
  const bicover::DirectedMultigraph& h;
  std::vector<std::vector<int>> candidates;
  std::vector<std::vector<char>> used_out;
  std::vector<std::vector<char>> used_in;

  bool solve(size_t i) {
    if (i == candidates.size()) return true;
    const auto& e = g.edge(static_cast<int>(i));
    const int src = g.vertex_index(e.src);
    const int dst = g.vertex_index(e.dst);
    for (int he : candidates[i]) {
      if (used_out[src][he] || used_in[dst][he]) continue;
      used_out[src][he] = used_in[dst][he] = 1;
      if (solve(i + 1)) return true;
      used_out[src][he] = used_in[dst][he] = 0;
    }
    return false;
  }
};

bool assignment_admits(const bicover::DirectedMultigraph& g,
                       const bicover::DirectedMultigraph& h,
                       const std::vector<int>& f, bool equality) {
  const int gn = g.order();
  if (equality) {
    for (int u = 0; u < gn; ++u) {
      const int fu = f[u];
      if (g.out_edges(u).size() != h.out_edges(fu).size()) return false;
      if (g.in_edges(u).size() != h.in_edges(fu).size()) return false;
    }
  }
  Assigner a{g, h, {}, {}, {}};
  a.candidates.resize(g.size());
  for (int i = 0; i < g.size(); ++i) {
    const auto& e = g.edge(i);
    const int fs = f[g.vertex_index(e.src)];
    const int fd = f[g.vertex_index(e.dst)];
    for (int he = 0; he < h.size(); ++he) {
      const auto& image = h.edge(he);
      if (h.vertex_index(image.src) == fs && h.vertex_index(image.dst) == fd)
        a.candidates[i].push_back(he);
    }
    if (a.candidates[i].empty()) return false;
  }
  a.used_out.assign(gn, std::vector<char>(h.size(), 0));
  a.used_in.assign(gn, std::vector<char>(h.size(), 0));
  return a.solve(0);
}

bicover::Word minimal_rotation(const bicover::Word& w) {
  bicover::Word best = w;
  bicover::Word rot = w;
  for (size_t i = 1; i < w.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

bicover::Word primitive_root(const bicover::Word& w) {
  const size_t p = w.size();
  for (size_t q = 1; q <= p; ++q) {
    if (p % q != 0) continue;
    bool repeats = true;
    for (size_t i = q; repeats && i < p; ++i)
      repeats = w[i] == w[i - q];
    if (repeats) return bicover::Word(w.begin(), w.begin() + q);
  }
  return w;
}

}  // namespace

bool exists_by_counts(const bicover::DirectedMultigraph& g,
                      const bicover::DirectedMultigraph& h, bool equality) {
  const int gn = g.order();
  const int hn = h.order();
  if (gn == 0) return true;
  if (hn == 0) return false;
  const auto ag = bicover::adjacency_matrix(g);
  const auto ah = bicover::adjacency_matrix(h);
  std::vector<int> f(gn, 0);
  do {
    if (counts_admit(ag, ah, f, equality)) return true;
  } while (next_map(f, hn));
  return false;
}

bool exists_by_assignment(const bicover::DirectedMultigraph& g,
                          const bicover::DirectedMultigraph& h,
                          bool equality) {
  const int gn = g.order();
  const int hn = h.order();
  if (gn == 0) return true;
  if (hn == 0) return false;
  const auto ag = bicover::adjacency_matrix(g);
  const auto ah = bicover::adjacency_matrix(h);
  std::vector<int> f(gn, 0);
  do {
    // A bi-covering (bi-resolving) with vertex map f bijects (injects) the
    // edges from u into each destination fiber onto the edges from f(u) to
    // that target, so mismatched counts rule f out before the search.
    if (!counts_admit(ag, ah, f, equality)) continue;
    if (assignment_admits(g, h, f, equality)) return true;
  } while (next_map(f, hn));
  return false;
}

std::vector<bicover::Word> periodic_points(
    const bicover::DirectedMultigraph& h, int period_cap) {
  std::set<bicover::Word> points;
  std::vector<int> stack;
  for (int start = 0; start < h.order(); ++start) {
    std::function<void(int)> walk = [&](int at) {
      if (!stack.empty() && at == start) {
        bicover::Word w;
        for (int e : stack) w.push_back(h.edge(e).id);
        points.insert(minimal_rotation(primitive_root(w)));
      }
      if (static_cast<int>(stack.size()) == period_cap) return;
      for (int e : h.out_edges(at)) {
        stack.push_back(e);
        walk(h.vertex_index(h.edge(e).dst));
        stack.pop_back();
      }
    };
    walk(start);
  }
  return std::vector<bicover::Word>(points.begin(), points.end());
}

long code_preimage_count(const bicover::SlidingBlockCode& code,
                         const bicover::Word& cycle) {
  const int p = static_cast<int>(cycle.size());
  if (p == 0) throw std::logic_error("empty cycle");
  const int span = code.window();
  const auto windows = bicover::words(code.domain, span);
  const auto longer = bicover::words(code.domain, span + 1);

  struct State {
    int phase;
    const bicover::Word* window;
  };
  std::vector<State> states;
  std::map<std::pair<int, const bicover::Word*>, int> index;
  for (int t = 0; t < p; ++t) {
    const std::string& target =
        cycle[((t + code.memory) % p + p) % p];
    for (const auto& w : windows) {
      if (code.blocks.at(w) != target) continue;
      index[{t, &w}] = static_cast<int>(states.size());
      states.push_back(State{t, &w});
    }
  }
  std::vector<std::vector<int>> out(states.size()), in(states.size());
  for (size_t s = 0; s < states.size(); ++s) {
    const auto& w = *states[s].window;
    const int nt = (states[s].phase + 1) % p;
    for (const auto& w2 : windows) {
      const auto it = index.find({nt, &w2});
      if (it == index.end()) continue;
      if (!std::equal(w.begin() + 1, w.end(), w2.begin())) continue;
      bicover::Word joined = w;
      joined.push_back(w2.back());
      if (!longer.count(joined)) continue;
      out[s].push_back(it->second);
      in[it->second].push_back(static_cast<int>(s));
    }
  }

  std::vector<char> alive(states.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t s = 0; s < states.size(); ++s) {
      if (!alive[s]) continue;
      const auto living = [&](const std::vector<int>& xs) {
        return std::any_of(xs.begin(), xs.end(),
                           [&](int t) { return alive[t] != 0; });
      };
      if (!living(out[s]) || !living(in[s])) {
        alive[s] = 0;
        changed = true;
      }
    }
  }

  long at_zero = 0;
  for (size_t s = 0; s < states.size(); ++s) {
    if (!alive[s]) continue;
    long outs = 0, ins = 0;
    for (int t : out[s]) outs += alive[t];
    for (int t : in[s]) ins += alive[t];
    if (outs > 1 || ins > 1) return -1;
    if (states[s].phase == 0) ++at_zero;
  }
  return at_zero;
}

namespace {

bool closing_by_pairs(const bicover::SlidingBlockCode& code, bool forward) {
  if (code.window() != 1 ||
      code.domain.kind != bicover::SubshiftKind::edge)
    throw std::logic_error("pair oracle expects a one-block edge-shift code");
  const auto& g = code.domain.graph;
  std::vector<std::string> label(g.size());
  for (int e = 0; e < g.size(); ++e)
    label[e] = code.blocks.at({g.edge(e).id});

  std::set<std::pair<int, int>> current;
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b) {
      if (a == b || label[a] != label[b]) continue;
      const bool meet = forward ? g.edge(a).src == g.edge(b).src
                                : g.edge(a).dst == g.edge(b).dst;
      if (meet) current.insert({a, b});
    }
  if (current.empty()) return true;

  const long limit = static_cast<long>(g.size()) * g.size() + 1;
  for (long step = 0; step < limit; ++step) {
    std::set<std::pair<int, int>> next;
    for (const auto& [a, b] : current) {
      const auto& as = forward ? g.out_edges(g.vertex_index(g.edge(a).dst))
                               : g.in_edges(g.vertex_index(g.edge(a).src));
      const auto& bs = forward ? g.out_edges(g.vertex_index(g.edge(b).dst))
                               : g.in_edges(g.vertex_index(g.edge(b).src));
      for (int a2 : as)
        for (int b2 : bs)
          if (label[a2] == label[b2]) next.insert({a2, b2});
    }
    if (next.empty()) return true;
    current = std::move(next);
  }
  return false;
}

}  // namespace

bool right_closing_by_pairs(const bicover::SlidingBlockCode& code) {
  return closing_by_pairs(code, true);
}

bool left_closing_by_pairs(const bicover::SlidingBlockCode& code) {
  return closing_by_pairs(code, false);
}

}  // namespace oracle
