#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bicover/errors.hpp"
#include "bicover/shift.hpp"
#include "helpers.hpp"

using bicover::DirectedMultigraph;
using bicover::Edge;
using bicover::SubshiftKind;
using bicover::Word;

namespace {

Word w(const std::string& symbols) {
  Word out;
  for (char c : symbols) out.push_back(std::string(1, c));
  return out;
}

bicover::SubshiftPresentation full_2_shift() {
  return bicover::forbidden_words_shift({"0", "1"}, {});
}

bicover::SubshiftPresentation golden_mean() {
  return bicover::forbidden_words_shift({"0", "1"}, {w("11")});
}

bicover::SubshiftPresentation even_shift() {
  const DirectedMultigraph g({"A", "B"}, {Edge{"e1", "A", "A"},
                                          Edge{"e0", "A", "B"},
                                          Edge{"f0", "B", "A"}});
  return bicover::sofic_shift(
      g, {{"e1", "1"}, {"e0", "0"}, {"f0", "0"}});
}

}  // namespace

TEST_CASE("presentation constructors validate their inputs") {
  CHECK_THROWS_AS(bicover::forbidden_words_shift({}, {}),
                  bicover::FormatError);
  CHECK_THROWS_AS(bicover::forbidden_words_shift({"0", "0"}, {}),
                  bicover::FormatError);
  CHECK_THROWS_AS(bicover::forbidden_words_shift({"0"}, {Word{}}),
                  bicover::FormatError);
  CHECK_THROWS_AS(bicover::forbidden_words_shift({"0"}, {w("01")}),
                  bicover::FormatError);
  const DirectedMultigraph g({"A"}, {Edge{"e", "A", "A"}});
  CHECK_THROWS_AS(bicover::sofic_shift(g, {}), bicover::FormatError);
}

TEST_CASE("alphabets by presentation kind") {
  const auto golden_graph = testutil::graph_of({{1, 1}, {1, 0}});
  const auto xe = bicover::edge_shift(golden_graph);
  CHECK(bicover::alphabet_of(xe).size() == 3);
  CHECK(bicover::alphabet_of(full_2_shift()) ==
        std::vector<std::string>{"0", "1"});
  CHECK(bicover::alphabet_of(even_shift()) ==
        std::vector<std::string>{"1", "0"});
}

TEST_CASE("word counts on the standard examples") {
  CHECK(bicover::words(full_2_shift(), 3).size() == 8);
  CHECK(bicover::words(golden_mean(), 3).size() == 5);
  CHECK(bicover::words(even_shift(), 3).size() == 7);
  const auto b3 = bicover::words(even_shift(), 3);
  CHECK(b3.count(w("101")) == 0);
  CHECK(b3.count(w("010")) == 1);
  CHECK(b3.count(w("001")) == 1);

  const auto golden_graph = testutil::graph_of({{1, 1}, {1, 0}});
  const auto xe = bicover::edge_shift(golden_graph);
  CHECK(bicover::words(xe, 1).size() == 3);
  CHECK(bicover::words(xe, 2).size() == 5);
  CHECK(bicover::words(xe, 3).size() == 8);
}

TEST_CASE("entropy matches the closed forms") {
  CHECK(bicover::entropy(full_2_shift()) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-6));
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(bicover::entropy(golden_mean()) ==
        doctest::Approx(std::log(phi)).epsilon(1e-6));
  CHECK(bicover::entropy(even_shift()) ==
        doctest::Approx(std::log(phi)).epsilon(1e-6));
}

TEST_CASE("labeled presentation of the golden mean is a de Bruijn graph") {
  const auto lp = bicover::labeled_presentation(golden_mean());
  // vertices are the admissible 1-words, edges the admissible 2-words
  CHECK(lp.graph.order() == 2);
  CHECK(lp.graph.size() == 3);
  for (int e = 0; e < lp.graph.size(); ++e)
    CHECK(lp.labels.count(lp.graph.edge(e).id) == 1);
  // spelled words through the graph reproduce the subshift's words
  const auto direct = bicover::words(golden_mean(), 4);
  const auto relabeled =
      bicover::words(bicover::sofic_shift(lp.graph, lp.labels), 4);
  CHECK(direct == relabeled);
}

TEST_CASE("markov approximation of the even shift at window 3") {
  const auto x3 = bicover::markov_approximation(even_shift(), 3);
  CHECK(x3.kind == SubshiftKind::forbidden);
  REQUIRE(x3.forbidden.size() == 1);
  CHECK(x3.forbidden[0] == w("101"));
  std::vector<std::string> alpha = x3.alphabet;
  std::sort(alpha.begin(), alpha.end());
  CHECK(alpha == std::vector<std::string>{"0", "1"});
  // the approximation contains the original shift
  for (int j = 1; j <= 6; ++j) {
    const auto inner = bicover::words(even_shift(), j);
    const auto outer = bicover::words(x3, j);
    for (const auto& word : inner) CHECK(outer.count(word) == 1);
  }
  // and is strictly larger at length 5: 10001 has an odd zero run
  CHECK(bicover::words(x3, 5).count(w("10001")) == 1);
  CHECK(bicover::words(even_shift(), 5).count(w("10001")) == 0);
}

TEST_CASE("markov approximation is exact for shifts of finite type") {
  const auto x2 = bicover::markov_approximation(golden_mean(), 2);
  for (int j = 1; j <= 6; ++j)
    CHECK(bicover::words(x2, j) == bicover::words(golden_mean(), j));
}

TEST_CASE("markov approximation rejects bad windows") {
  CHECK_THROWS_AS(bicover::markov_approximation(golden_mean(), 0),
                  bicover::PreconditionError);
}
