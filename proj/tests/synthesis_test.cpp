#include <doctest.h>

#include <random>

#include "bicover/errors.hpp"
#include "bicover/synthesis.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using bicover::DirectedMultigraph;
using bicover::Edge;
using bicover::RelationMode;

namespace {

Eigen::MatrixXi random_balanced(std::mt19937& rng, int n, int r) {
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(n, n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int k = 0; k < r; ++k) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < n; ++i) a(i, perm[i]) += 1;
  }
  return a;
}

}  // namespace

TEST_CASE("subamalgamation search finds the canonical fold witness") {
  const DirectedMultigraph g({"u", "v"},
                             {Edge{"a", "u", "v"}, Edge{"b", "v", "u"}});
  const DirectedMultigraph h({"p"}, {Edge{"l", "p", "p"}});
  const auto s = bicover::find_subamalgamation(g, h, RelationMode::equality);
  REQUIRE(s.has_value());
  CHECK(s->rows() == 2);
  CHECK(s->cols() == 1);
  CHECK((*s)(0, 0) == 1);
  CHECK((*s)(1, 0) == 1);
}

TEST_CASE("strict inequality admits a witness where equality has none") {
  const auto g = testutil::graph_of({{1}});
  const auto h = testutil::graph_of({{2}});
  CHECK_FALSE(
      bicover::find_subamalgamation(g, h, RelationMode::equality).has_value());
  const auto s = bicover::find_subamalgamation(g, h, RelationMode::inequality);
  REQUIRE(s.has_value());
  CHECK((*s)(0, 0) == 1);
}

TEST_CASE("no witness in either mode when the domain is too large") {
  const auto g = testutil::graph_of({{2}});
  const auto h = testutil::graph_of({{1}});
  CHECK_FALSE(
      bicover::find_subamalgamation(g, h, RelationMode::equality).has_value());
  CHECK_FALSE(
      bicover::find_subamalgamation(g, h, RelationMode::inequality).has_value());
}

TEST_CASE("search agrees with the literal assignment oracle on small pairs") {
  testutil::MatrixFamily domains(2, 1);
  std::vector<DirectedMultigraph> gs;
  while (auto g = domains.next()) gs.push_back(*g);
  for (const auto& g : gs)
    for (const auto& h : gs) {
      const bool eq_found =
          bicover::find_subamalgamation(g, h, RelationMode::equality)
              .has_value();
      const bool le_found =
          bicover::find_subamalgamation(g, h, RelationMode::inequality)
              .has_value();
      CHECK(eq_found == oracle::exists_by_assignment(g, h, true));
      CHECK(le_found == oracle::exists_by_assignment(g, h, false));
    }
}

TEST_CASE("balanced matrices split into permutation matrices") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int r = 1 + static_cast<int>(rng() % 4);
    const auto a = random_balanced(rng, n, r);
    const auto parts = bicover::decompose_into_permutations(a, r);
    CHECK(parts.size() == static_cast<size_t>(r));
    Eigen::MatrixXi sum = Eigen::MatrixXi::Zero(n, n);
    for (const auto& p : parts) {
      for (int i = 0; i < n; ++i) {
        CHECK(p.row(i).sum() == 1);
        CHECK(p.col(i).sum() == 1);
      }
      sum += p;
    }
    CHECK(sum == a);
  }
}

TEST_CASE("decomposition rejects unbalanced input") {
  Eigen::MatrixXi bad(2, 2);
  bad << 2, 0, 0, 1;
  CHECK_THROWS_AS(bicover::decompose_into_permutations(bad, 2),
                  bicover::PreconditionError);
}

TEST_CASE("padding raises sub-balanced matrices to balanced ones") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int r = 1 + static_cast<int>(rng() % 4);
    auto a = random_balanced(rng, n, r);
    // knock entries down to make it properly sub-balanced
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (a(i, j) > 0 && rng() % 2 == 0) a(i, j) -= 1;
    const auto [b, added] = bicover::pad_to_balanced_trace(a, r);
    for (int i = 0; i < n; ++i) {
      CHECK(b.row(i).sum() == r);
      CHECK(b.col(i).sum() == r);
      for (int j = 0; j < n; ++j) CHECK(b(i, j) >= a(i, j));
    }
    CHECK(static_cast<int>(added.size()) == (b - a).sum());
    CHECK(bicover::pad_to_balanced(a, r) == b);
  }
}

TEST_CASE("padding rejects overfull rows") {
  Eigen::MatrixXi bad(2, 2);
  bad << 2, 1, 0, 0;
  CHECK_THROWS_AS(bicover::pad_to_balanced(bad, 2),
                  bicover::PreconditionError);
}

TEST_CASE("equality witnesses build verified bi-coverings") {
  const DirectedMultigraph g({"u", "v"},
                             {Edge{"a", "u", "v"}, Edge{"b", "v", "u"}});
  const DirectedMultigraph h({"p"}, {Edge{"l", "p", "p"}});
  Eigen::MatrixXi s(2, 1);
  s << 1, 1;
  const auto phi = bicover::build_bicovering(g, h, s);
  const auto p = bicover::resolving_profile(phi);
  CHECK(p.bi_covering);
  CHECK(bicover::matrix_from_vertex_map(g, h, phi.vertex_map) == s);
}

TEST_CASE("building from a matrix that violates the relations fails") {
  const auto g = testutil::graph_of({{1}});
  const auto h = testutil::graph_of({{2}});
  Eigen::MatrixXi s(1, 1);
  s << 1;
  CHECK_THROWS_AS(bicover::build_bicovering(g, h, s),
                  bicover::PreconditionError);
}

TEST_CASE("inequality witnesses build bi-resolvings inside padded coverings") {
  const auto g = testutil::graph_of({{1}});
  const auto h = testutil::graph_of({{2}});
  Eigen::MatrixXi s(1, 1);
  s << 1;
  const auto result = bicover::build_biresolving(g, h, s);
  CHECK(bicover::resolving_profile(result.resolving).bi_resolving);
  CHECK(bicover::resolving_profile(result.covering).bi_covering);
  // the covering restricts to the resolving map on the original domain
  for (const auto& [e, image] : result.resolving.edge_map)
    CHECK(result.covering.edge_map.at(e) == image);
  for (const auto& [v, image] : result.resolving.vertex_map)
    CHECK(result.covering.vertex_map.at(v) == image);
  CHECK(result.covering.domain.order() >= result.resolving.domain.order());
  CHECK(result.covering.domain.size() > result.resolving.domain.size());
}

TEST_CASE("search respects its timeout") {
  // coprime complete uniform graphs: no witness, and every partial
  // assignment keeping fibers singleton survives the pruning
  const auto g = DirectedMultigraph::from_matrix(
      testutil::vertex_names(12), Eigen::MatrixXi::Ones(12, 12));
  const auto h = DirectedMultigraph::from_matrix(
      testutil::vertex_names(11), Eigen::MatrixXi::Ones(11, 11));
  CHECK_THROWS_AS(
      bicover::find_subamalgamation(g, h, RelationMode::equality, 0),
      bicover::CapError);
}
