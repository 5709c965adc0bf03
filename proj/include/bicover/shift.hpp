#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bicover/graph.hpp"

namespace bicover {

// Words are symbol sequences; symbols are arbitrary nonempty strings.
using Word = std::vector<std::string>;

// Separator used when a word is flattened into a single identifier, chosen
// to stay out of the way of ordinary symbol spellings.
inline constexpr char kIdSeparator = '\x1f';

enum class SubshiftKind { edge, forbidden, sofic };

// One of three presentations of a subshift:
//   edge      bi-infinite trips on a graph, symbols are edge ids
//   forbidden the points over an alphabet avoiding every listed word
//   sofic     label sequences of bi-infinite trips on a labeled graph
struct SubshiftPresentation {
  SubshiftKind kind = SubshiftKind::edge;
  DirectedMultigraph graph;                 // edge, sofic
  std::vector<std::string> alphabet;        // forbidden, sofic
  std::vector<Word> forbidden;              // forbidden
  std::map<std::string, std::string> labels;  // sofic: edge id -> symbol
};

SubshiftPresentation edge_shift(DirectedMultigraph g);

SubshiftPresentation forbidden_words_shift(std::vector<std::string> alphabet,
                                           std::vector<Word> forbidden);

// Alphabet defaults to the distinct label values in edge declaration order.
SubshiftPresentation sofic_shift(DirectedMultigraph g,
                                 std::map<std::string, std::string> labels,
                                 std::vector<std::string> alphabet = {});

// The declared symbol universe (edge ids for an edge shift). Symbols that
// never occur in a point are included.
std::vector<std::string> alphabet_of(const SubshiftPresentation& x);

// A graph with edge labels whose bi-infinite trips spell exactly the
// presented subshift, one symbol per edge, aligned so that the edge at
// position i carries symbol i.
struct LabeledGraph {
  DirectedMultigraph graph;
  std::map<std::string, std::string> labels;
};

// Edge shifts label each edge by its own id; forbidden-words presentations
// become a de Bruijn graph on factor-free windows; sofic presentations pass
// through. The result is essentialized in every case.
LabeledGraph labeled_presentation(const SubshiftPresentation& x);

// Exactly the admissible words of length n, via path enumeration on the
// essentialized labeled presentation. Throws CapError if the enumeration
// exceeds state_cap intermediate states.
std::set<Word> words(const SubshiftPresentation& x, int n,
                     long state_cap = 5000000);

// Natural-log topological entropy. Strictly sofic presentations are
// supported only when right-resolving as labeled graphs.
double entropy(const SubshiftPresentation& x);

// The shift of finite type over B_1(x) forbidding exactly the length-k
// words that never occur in x.
SubshiftPresentation markov_approximation(const SubshiftPresentation& x, int k,
                                          long enumeration_cap = 5000000);

}  // namespace bicover
