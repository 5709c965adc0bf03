#include "bicover/shift.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bicover {

namespace {

const char kSep = kIdSeparator;

std::string join_word(const Word& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += kSep;
    out += w[i];
  }
  return out;
}

// All words of the given length over the alphabet avoiding every forbidden
// factor; suffixes are pruned as the word grows.
void factor_free_words(const std::vector<std::string>& alphabet,
                       const std::vector<Word>& forbidden, int length,
                       long cap, Word& current, std::vector<Word>& out) {
  if (static_cast<long>(out.size()) > cap)
    throw CapError("factor-free word enumeration exceeded the cap");
  if (static_cast<int>(current.size()) == length) {
    out.push_back(current);
    return;
  }
  for (const auto& s : alphabet) {
    current.push_back(s);
    bool ok = true;
    for (const Word& f : forbidden) {
      if (f.size() > current.size()) continue;
      if (std::equal(f.begin(), f.end(), current.end() - f.size())) {
        ok = false;
        break;
      }
    }
    if (ok) factor_free_words(alphabet, forbidden, length, cap, current, out);
    current.pop_back();
  }
}

}  // namespace

SubshiftPresentation edge_shift(DirectedMultigraph g) {
  SubshiftPresentation x;
  x.kind = SubshiftKind::edge;
  x.graph = std::move(g);
  return x;
}

SubshiftPresentation forbidden_words_shift(std::vector<std::string> alphabet,
                                           std::vector<Word> forbidden) {
  if (alphabet.empty()) throw FormatError("alphabet is empty");
  std::set<std::string> seen;
  for (const auto& s : alphabet) {
    if (s.empty()) throw FormatError("alphabet symbol is empty");
    if (!seen.insert(s).second)
      throw FormatError("alphabet symbol repeats: " + s);
  }
  for (const Word& w : forbidden) {
    if (w.empty()) throw FormatError("forbidden word is empty");
    for (const auto& s : w)
      if (!seen.count(s))
        throw FormatError("forbidden word uses a symbol outside the alphabet: " + s);
  }
  SubshiftPresentation x;
  x.kind = SubshiftKind::forbidden;
  x.alphabet = std::move(alphabet);
  x.forbidden = std::move(forbidden);
  return x;
}

SubshiftPresentation sofic_shift(DirectedMultigraph g,
                                 std::map<std::string, std::string> labels,
                                 std::vector<std::string> alphabet) {
  for (const Edge& e : g.edges())
    if (!labels.count(e.id))
      throw FormatError("label map is missing edge " + e.id);
  for (const auto& [id, s] : labels) {
    if (!g.has_edge(id)) throw FormatError("label map names an unknown edge " + id);
    if (s.empty()) throw FormatError("label of edge " + id + " is empty");
  }
  if (alphabet.empty()) {
    std::set<std::string> seen;
    for (const Edge& e : g.edges())
      if (seen.insert(labels.at(e.id)).second)
        alphabet.push_back(labels.at(e.id));
  } else {
    std::set<std::string> seen;
    for (const auto& s : alphabet) {
      if (s.empty()) throw FormatError("alphabet symbol is empty");
      if (!seen.insert(s).second)
        throw FormatError("alphabet symbol repeats: " + s);
    }
    for (const Edge& e : g.edges())
      if (!seen.count(labels.at(e.id)))
        throw FormatError("label of edge " + e.id + " is outside the alphabet");
  }
  SubshiftPresentation x;
  x.kind = SubshiftKind::sofic;
  x.graph = std::move(g);
  x.labels = std::move(labels);
  x.alphabet = std::move(alphabet);
  return x;
}

std::vector<std::string> alphabet_of(const SubshiftPresentation& x) {
  if (x.kind == SubshiftKind::edge) {
    std::vector<std::string> out;
    for (const Edge& e : x.graph.edges()) out.push_back(e.id);
    return out;
  }
  return x.alphabet;
}

LabeledGraph labeled_presentation(const SubshiftPresentation& x) {
  LabeledGraph lp;
  if (x.kind == SubshiftKind::edge || x.kind == SubshiftKind::sofic) {
    lp.graph = essentialize(x.graph);
    for (const Edge& e : lp.graph.edges())
      lp.labels[e.id] = x.kind == SubshiftKind::edge ? e.id : x.labels.at(e.id);
    return lp;
  }

  size_t window = 1;
  for (const Word& f : x.forbidden) window = std::max(window, f.size());
  const int n = static_cast<int>(window);

  if (n == 1) {
    std::set<Word> banned(x.forbidden.begin(), x.forbidden.end());
    std::vector<std::string> vertices = {"."};
    std::vector<Edge> edges;
    std::map<std::string, std::string> labels;
    for (const auto& s : x.alphabet) {
      if (banned.count({s})) continue;
      edges.push_back({s, ".", "."});
      labels[s] = s;
    }
    lp.graph = essentialize(DirectedMultigraph(vertices, edges));
    for (const Edge& e : lp.graph.edges()) lp.labels[e.id] = labels.at(e.id);
    return lp;
  }

  std::vector<Word> level, scratch_out;
  Word scratch;
  factor_free_words(x.alphabet, x.forbidden, n - 1, 5000000, scratch, level);
  std::vector<std::string> vertices;
  for (const Word& w : level) vertices.push_back(join_word(w));
  scratch_out.clear();
  factor_free_words(x.alphabet, x.forbidden, n, 5000000, scratch, scratch_out);
  std::vector<Edge> edges;
  std::map<std::string, std::string> labels;
  for (const Word& w : scratch_out) {
    Word src(w.begin(), w.end() - 1), dst(w.begin() + 1, w.end());
    edges.push_back({join_word(w), join_word(src), join_word(dst)});
    labels[join_word(w)] = w.front();
  }
  lp.graph = essentialize(DirectedMultigraph(vertices, edges));
  for (const Edge& e : lp.graph.edges()) lp.labels[e.id] = labels.at(e.id);
  return lp;
}

std::set<Word> words(const SubshiftPresentation& x, int n, long state_cap) {
  if (n < 1) throw PreconditionError("word length must be positive");
  LabeledGraph lp = labeled_presentation(x);
  if (lp.graph.size() == 0) return {};

  std::map<Word, std::set<int>> frontier;
  std::set<int> all;
  for (int v = 0; v < lp.graph.order(); ++v) all.insert(v);
  frontier[{}] = all;
  for (int step = 0; step < n; ++step) {
    std::map<Word, std::set<int>> next;
    long states = 0;
    for (const auto& [w, ends] : frontier) {
      for (int v : ends) {
        for (int ei : lp.graph.out_edges(v)) {
          const Edge& e = lp.graph.edge(ei);
          Word grown = w;
          grown.push_back(lp.labels.at(e.id));
          auto& dsts = next[grown];
          if (dsts.insert(lp.graph.vertex_index(e.dst)).second) ++states;
          if (states > state_cap)
            throw CapError("word enumeration exceeded the state cap");
        }
      }
    }
    frontier = std::move(next);
  }
  std::set<Word> out;
  for (const auto& [w, ends] : frontier) out.insert(w);
  return out;
}

double entropy(const SubshiftPresentation& x) {
  LabeledGraph lp = labeled_presentation(x);
  if (lp.graph.size() == 0) return 0.0;
  if (x.kind == SubshiftKind::sofic) {
    for (int v = 0; v < lp.graph.order(); ++v) {
      std::set<std::string> seen;
      for (int ei : lp.graph.out_edges(v))
        if (!seen.insert(lp.labels.at(lp.graph.edge(ei).id)).second)
          throw PreconditionError(
              "labeled presentation is not right-resolving; entropy of such "
              "sofic presentations is not computed");
    }
  }
  return std::log(spectral_radius(lp.graph));
}

SubshiftPresentation markov_approximation(const SubshiftPresentation& x, int k,
                                          long enumeration_cap) {
  if (k < 1) throw PreconditionError("approximation step must be positive");
  std::vector<std::string> alphabet;
  for (const Word& w : words(x, 1)) alphabet.push_back(w.front());
  std::set<Word> allowed = words(x, k);

  double full = std::pow(static_cast<double>(alphabet.size()),
                         static_cast<double>(k));
  if (full > static_cast<double>(enumeration_cap))
    throw CapError("alphabet power enumeration exceeds the cap");

  std::vector<Word> all;
  Word scratch;
  factor_free_words(alphabet, {}, k, enumeration_cap, scratch, all);
  std::vector<Word> forbidden;
  for (const Word& w : all)
    if (!allowed.count(w)) forbidden.push_back(w);
  return forbidden_words_shift(alphabet, forbidden);
}

}  // namespace bicover
