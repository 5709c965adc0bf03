#include "bicover/code.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "bicover/errors.hpp"
#include "bicover/graph.hpp"

namespace bicover {

namespace {

std::string render_word(const Word& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += ' ';
    out += w[i];
  }
  return out;
}

std::string join_with(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

SlidingBlockCode make_code(SubshiftPresentation domain,
                           SubshiftPresentation codomain, int memory,
                           int anticipation, std::map<Word, std::string> blocks,
                           int check_length) {
  if (memory < 0 || anticipation < 0)
    throw FormatError("memory and anticipation must be nonnegative");
  SlidingBlockCode code;
  code.domain = std::move(domain);
  code.codomain = std::move(codomain);
  code.memory = memory;
  code.anticipation = anticipation;
  code.blocks = std::move(blocks);

  const int m = code.window();
  const std::set<Word> window_words = words(code.domain, m);
  for (const Word& w : window_words)
    if (code.blocks.find(w) == code.blocks.end())
      throw FormatError("block map is missing the word \"" + render_word(w) +
                        "\"");
  std::set<std::string> target;
  for (const auto& s : alphabet_of(code.codomain)) target.insert(s);
  for (const auto& [w, s] : code.blocks) {
    if (window_words.find(w) == window_words.end())
      throw FormatError("block map defines the word \"" + render_word(w) +
                        "\", which is not admissible in the domain");
    if (target.find(s) == target.end())
      throw FormatError("block map image \"" + s +
                        "\" is not a codomain symbol");
  }

  // Admissible words map into the codomain language. Checking the longest
  // length covers the shorter ones, whose images are factors. Edge and
  // forbidden-word codomains are determined by factors of bounded length,
  // so the check is clamped there and stays conclusive; sofic codomains
  // are checked to the requested depth.
  int image_length = std::max(1, check_length - m + 1);
  if (code.codomain.kind == SubshiftKind::edge) {
    image_length = std::min(image_length, 2);
  } else if (code.codomain.kind == SubshiftKind::forbidden) {
    size_t longest = 1;
    for (const Word& f : code.codomain.forbidden)
      longest = std::max(longest, f.size());
    image_length = std::min(image_length, static_cast<int>(longest));
  }
  const std::set<Word> image_words = words(code.codomain, image_length);
  for (const Word& w : words(code.domain, m - 1 + image_length)) {
    const Word image = apply_block_map(code, w);
    if (image_words.find(image) == image_words.end())
      throw FormatError("the image \"" + render_word(image) +
                        "\" of an admissible word is not admissible in the "
                        "codomain");
  }
  return code;
}

Word apply_block_map(const SlidingBlockCode& code, const Word& w) {
  const int m = code.window();
  if (static_cast<int>(w.size()) < m)
    throw PreconditionError("word is shorter than the code window");
  Word out;
  out.reserve(w.size() - m + 1);
  for (size_t i = 0; i + m <= w.size(); ++i) {
    Word win(w.begin() + i, w.begin() + i + m);
    auto it = code.blocks.find(win);
    if (it == code.blocks.end())
      throw PreconditionError("block map is not defined on \"" +
                              render_word(win) + "\"");
    out.push_back(it->second);
  }
  return out;
}

SlidingBlockCode code_from_homomorphism(const GraphHomomorphism& phi) {
  std::map<Word, std::string> blocks;
  const DirectedMultigraph essential = essentialize(phi.domain);
  for (const Edge& e : essential.edges())
    blocks[{e.id}] = phi.edge_map.at(e.id);
  return make_code(edge_shift(phi.domain), edge_shift(phi.codomain), 0, 0,
                   std::move(blocks), 4);
}

namespace {

// A code presented 1-block on an essential graph: one output symbol per edge.
struct OneBlockView {
  DirectedMultigraph graph;
  std::vector<std::string> labels;
};

OneBlockView one_block_view(const SlidingBlockCode& code) {
  OneBlockView v;
  v.graph = essentialize(code.domain.graph);
  v.labels.reserve(v.graph.size());
  for (const Edge& e : v.graph.edges()) v.labels.push_back(code.blocks.at({e.id}));
  return v;
}

// Ordered pairs of edges with equal output, with the transitions that keep
// both coordinates walking along the graph.
struct PairGraph {
  std::vector<std::pair<int, int>> nodes;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::vector<int>> out, in;
};

PairGraph build_pair_graph(const OneBlockView& v) {
  PairGraph pg;
  const int ne = v.graph.size();
  for (int i = 0; i < ne; ++i)
    for (int j = 0; j < ne; ++j)
      if (v.labels[i] == v.labels[j]) {
        pg.index[{i, j}] = static_cast<int>(pg.nodes.size());
        pg.nodes.emplace_back(i, j);
      }
  pg.out.resize(pg.nodes.size());
  pg.in.resize(pg.nodes.size());
  for (int a = 0; a < static_cast<int>(pg.nodes.size()); ++a) {
    const auto [i, j] = pg.nodes[a];
    const int vi = v.graph.vertex_index(v.graph.edge(i).dst);
    const int vj = v.graph.vertex_index(v.graph.edge(j).dst);
    for (int i2 : v.graph.out_edges(vi))
      for (int j2 : v.graph.out_edges(vj)) {
        auto it = pg.index.find({i2, j2});
        if (it != pg.index.end()) {
          pg.out[a].push_back(it->second);
          pg.in[it->second].push_back(a);
        }
      }
  }
  return pg;
}

// Nodes admitting an infinite continuation: iteratively discard nodes with
// no remaining successor (forward) or predecessor (backward).
std::vector<char> surviving(const PairGraph& pg, bool forward) {
  const auto& ahead = forward ? pg.out : pg.in;
  const auto& behind = forward ? pg.in : pg.out;
  std::vector<int> degree(pg.nodes.size());
  std::vector<char> alive(pg.nodes.size(), 1);
  std::vector<int> dead;
  for (int a = 0; a < static_cast<int>(pg.nodes.size()); ++a) {
    degree[a] = static_cast<int>(ahead[a].size());
    if (degree[a] == 0) {
      alive[a] = 0;
      dead.push_back(a);
    }
  }
  while (!dead.empty()) {
    const int a = dead.back();
    dead.pop_back();
    for (int b : behind[a])
      if (alive[b] && --degree[b] == 0) {
        alive[b] = 0;
        dead.push_back(b);
      }
  }
  return alive;
}

// First-choice walk over graph vertices until a vertex repeats; returns the
// edges split into the part before the repeat and the closing cycle.
std::pair<std::vector<int>, std::vector<int>> vertex_walk(
    const DirectedMultigraph& g, int start, bool forward) {
  std::vector<int> path;
  std::map<int, int> seen;
  int cur = start, step = 0;
  seen[cur] = 0;
  for (;;) {
    const auto& incident = forward ? g.out_edges(cur) : g.in_edges(cur);
    const int e = incident.front();
    path.push_back(e);
    const auto& edge = g.edge(e);
    cur = g.vertex_index(forward ? edge.dst : edge.src);
    ++step;
    auto it = seen.find(cur);
    if (it != seen.end()) {
      const int s = it->second;
      std::vector<int> head(path.begin(), path.begin() + s);
      std::vector<int> cycle(path.begin() + s, path.end());
      return {head, cycle};
    }
    seen[cur] = step;
  }
}

// First-choice walk over surviving pair nodes until a node repeats.
std::pair<std::vector<int>, std::vector<int>> pair_walk(
    const PairGraph& pg, const std::vector<char>& alive, int start,
    bool forward) {
  std::vector<int> path;
  std::map<int, int> seen;
  int cur = start;
  seen[cur] = 0;
  path.push_back(cur);
  for (;;) {
    const auto& ahead = forward ? pg.out[cur] : pg.in[cur];
    int next = -1;
    for (int b : ahead)
      if (alive[b]) {
        next = b;
        break;
      }
    if (next < 0)
      throw std::logic_error("surviving pair node lost its continuation");
    auto it = seen.find(next);
    if (it != seen.end()) {
      const int s = it->second;
      std::vector<int> head(path.begin(), path.begin() + s);
      std::vector<int> cycle(path.begin() + s, path.end());
      return {head, cycle};
    }
    seen[next] = static_cast<int>(path.size());
    path.push_back(next);
    cur = next;
  }
}

Word edge_ids(const DirectedMultigraph& g, const std::vector<int>& edges) {
  Word out;
  out.reserve(edges.size());
  for (int e : edges) out.push_back(g.edge(e).id);
  return out;
}

Word component_ids(const PairGraph& pg, const DirectedMultigraph& g,
                   const std::vector<int>& nodes, bool first) {
  Word out;
  out.reserve(nodes.size());
  for (int a : nodes) {
    const auto [i, j] = pg.nodes[a];
    out.push_back(g.edge(first ? i : j).id);
  }
  return out;
}

ClosingProfile analyze_one_block(const OneBlockView& v) {
  ClosingProfile p;
  if (v.graph.empty()) return p;
  const PairGraph pg = build_pair_graph(v);
  const std::vector<char> ahead_alive = surviving(pg, true);
  const std::vector<char> behind_alive = surviving(pg, false);

  for (int a = 0; a < static_cast<int>(pg.nodes.size()); ++a) {
    if (!ahead_alive[a]) continue;
    const auto [i, j] = pg.nodes[a];
    if (i == j || v.graph.edge(i).src != v.graph.edge(j).src) continue;
    p.right_closing = false;
    // Shared past into the common source, then the two diverging futures.
    const int src = v.graph.vertex_index(v.graph.edge(i).src);
    auto [back_head, back_cycle] = vertex_walk(v.graph, src, false);
    std::reverse(back_head.begin(), back_head.end());
    std::reverse(back_cycle.begin(), back_cycle.end());
    const auto [fore_head, fore_cycle] = pair_walk(pg, ahead_alive, a, true);
    ClosingWitness w;
    w.first.left_cycle = w.second.left_cycle = edge_ids(v.graph, back_cycle);
    w.first.left_tail = w.second.left_tail = edge_ids(v.graph, back_head);
    w.first.right_tail = component_ids(pg, v.graph, fore_head, true);
    w.first.right_cycle = component_ids(pg, v.graph, fore_cycle, true);
    w.second.right_tail = component_ids(pg, v.graph, fore_head, false);
    w.second.right_cycle = component_ids(pg, v.graph, fore_cycle, false);
    p.right_witness = std::move(w);
    break;
  }

  for (int a = 0; a < static_cast<int>(pg.nodes.size()); ++a) {
    if (!behind_alive[a]) continue;
    const auto [i, j] = pg.nodes[a];
    if (i == j || v.graph.edge(i).dst != v.graph.edge(j).dst) continue;
    p.left_closing = false;
    // The two diverging pasts end at the common target, then a shared future.
    const int dst = v.graph.vertex_index(v.graph.edge(i).dst);
    const auto [fore_head, fore_cycle] = vertex_walk(v.graph, dst, true);
    auto [back_head, back_cycle] = pair_walk(pg, behind_alive, a, false);
    std::reverse(back_head.begin(), back_head.end());
    std::reverse(back_cycle.begin(), back_cycle.end());
    ClosingWitness w;
    w.first.left_tail = component_ids(pg, v.graph, back_head, true);
    w.first.left_cycle = component_ids(pg, v.graph, back_cycle, true);
    w.second.left_tail = component_ids(pg, v.graph, back_head, false);
    w.second.left_cycle = component_ids(pg, v.graph, back_cycle, false);
    w.first.right_tail = w.second.right_tail = edge_ids(v.graph, fore_head);
    w.first.right_cycle = w.second.right_cycle = edge_ids(v.graph, fore_cycle);
    p.left_witness = std::move(w);
    break;
  }

  p.bi_closing = p.right_closing && p.left_closing;
  return p;
}

}  // namespace

ClosingProfile closing_profile(const SlidingBlockCode& code) {
  if (code.domain.kind == SubshiftKind::edge && code.window() == 1)
    return analyze_one_block(one_block_view(code));
  const RecodedCode rec = recode_one_block(code);
  ClosingProfile p = analyze_one_block(one_block_view(rec.one_block));
  p.recoded = true;
  return p;
}

RecodedCode recode_one_block(const SlidingBlockCode& code, int check_length) {
  if (code.domain.kind == SubshiftKind::sofic)
    throw PreconditionError(
        "domain presentation is not of finite type; recoding a strictly "
        "sofic presentation is not supported");
  const int m = code.memory, a = code.anticipation;
  const int window = code.window();

  if (code.domain.kind == SubshiftKind::forbidden && window >= 2) {
    // Present the domain on the de Bruijn graph whose edges carry one full
    // window each, so the 1-block image depends on both ends of the edge
    // word and resolving properties can survive the recoding.
    int L = 1;
    for (const Word& f : code.domain.forbidden)
      L = std::max(L, static_cast<int>(f.size()));
    const int N = std::max(L, window);
    std::vector<std::string> vertices;
    for (const Word& w : words(code.domain, N - 1))
      vertices.push_back(join_with(w, kIdSeparator));
    std::vector<Edge> edges;
    std::map<Word, std::string> one, beta_blocks;
    for (const Word& w : words(code.domain, N)) {
      const std::string id = join_with(w, kIdSeparator);
      edges.push_back({id, join_with(Word(w.begin(), w.end() - 1), kIdSeparator),
                       join_with(Word(w.begin() + 1, w.end()), kIdSeparator)});
      const auto it = code.blocks.find(Word(w.begin(), w.begin() + window));
      if (it == code.blocks.end())
        throw std::logic_error("recoding spelled a word outside the domain");
      one[{id}] = it->second;
      beta_blocks[w] = id;
    }
    RecodedCode out;
    const SubshiftPresentation xd =
        edge_shift(DirectedMultigraph(vertices, edges));
    out.one_block =
        make_code(xd, code.codomain, 0, 0, std::move(one), check_length);
    out.beta = make_code(code.domain, xd, m, N - 1 - m,
                         std::move(beta_blocks), check_length);
    return out;
  }

  // An edge presentation spelling the domain symbol-for-symbol: each edge
  // covers the length-L window starting at its position and outputs the
  // window's first symbol, so trips spell points at the same indices.
  DirectedMultigraph d;
  int L = 1;
  std::map<std::string, std::string> spell;
  if (code.domain.kind == SubshiftKind::edge) {
    d = essentialize(code.domain.graph);
    for (const Edge& e : d.edges()) spell[e.id] = e.id;
  } else {
    const LabeledGraph lp = labeled_presentation(code.domain);
    d = lp.graph;
    spell = lp.labels;
    for (const Word& w : code.domain.forbidden)
      L = std::max(L, static_cast<int>(w.size()));
  }

  const SubshiftPresentation xd = edge_shift(d);
  std::map<Word, std::string> chain;
  for (const Word& w : words(xd, window)) {
    Word spelled;
    spelled.reserve(w.size());
    for (const auto& e : w) spelled.push_back(spell.at(e));
    const auto it = code.blocks.find(spelled);
    if (it == code.blocks.end())
      throw std::logic_error("recoding spelled a word outside the domain");
    chain[w] = it->second;
  }

  RecodedCode out;
  if (window == 1) {
    out.one_block =
        make_code(xd, code.codomain, 0, 0, std::move(chain), check_length);
    std::map<Word, std::string> beta_blocks;
    for (const Word& u : words(code.domain, L))
      beta_blocks[u] = join_with(u, kIdSeparator);
    out.beta = make_code(code.domain, xd, 0, L - 1, std::move(beta_blocks),
                         check_length);
    return out;
  }

  const HigherGraph hg = higher_graph(d, window);
  std::map<Word, std::string> one;
  for (int idx = 0; idx < hg.graph.size(); ++idx) {
    const auto it = chain.find(hg.edge_paths[idx]);
    if (it == chain.end())
      throw std::logic_error("higher edge path is not an admissible word");
    one[{hg.graph.edge(idx).id}] = it->second;
  }
  out.one_block = make_code(edge_shift(hg.graph), code.codomain, 0, 0,
                            std::move(one), check_length);

  std::map<Word, std::string> beta_blocks;
  for (const Word& u : words(code.domain, m + a + L)) {
    std::vector<std::string> ids;
    ids.reserve(window);
    for (int t = 0; t < window; ++t)
      ids.push_back(
          join_with(std::vector<std::string>(u.begin() + t, u.begin() + t + L),
                    kIdSeparator));
    beta_blocks[u] = join_with(ids, '|');
  }
  out.beta = make_code(code.domain, edge_shift(hg.graph), m, a + L - 1,
                       std::move(beta_blocks), check_length);
  return out;
}

}  // namespace bicover
