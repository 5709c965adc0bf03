#include <doctest.h>

#include <random>

#include "bicover/errors.hpp"
#include "bicover/extension.hpp"
#include "bicover/synthesis.hpp"
#include "helpers.hpp"

using bicover::ConnectivityMode;
using bicover::DirectedMultigraph;
using bicover::Edge;

namespace {

const DirectedMultigraph& rose2() {
  static const DirectedMultigraph h({"p"},
                                    {Edge{"x", "p", "p"}, Edge{"y", "p", "p"}});
  return h;
}

bicover::GraphHomomorphism loop_into_rose() {
  static const DirectedMultigraph g({"q"}, {Edge{"e", "q", "q"}});
  return bicover::validate_homomorphism(g, rose2(), {{"q", "p"}},
                                        {{"e", "x"}});
}

bicover::GraphHomomorphism split_loops_onto_loop() {
  static const DirectedMultigraph g(
      {"s", "t"}, {Edge{"e1", "s", "s"}, Edge{"e2", "t", "t"}});
  static const DirectedMultigraph h({"p"}, {Edge{"l", "p", "p"}});
  return bicover::validate_homomorphism(g, h, {{"s", "p"}, {"t", "p"}},
                                        {{"e1", "l"}, {"e2", "l"}});
}

void check_restricts(const bicover::GraphHomomorphism& phi,
                     const bicover::ExtensionResult& r) {
  for (const auto& [v, image] : phi.vertex_map)
    CHECK(r.extension.vertex_map.at(v) == image);
  for (const auto& [e, image] : phi.edge_map)
    CHECK(r.extension.edge_map.at(e) == image);
}

}  // namespace

TEST_CASE("same-degree completion fills the missing lifts") {
  const auto phi = loop_into_rose();
  const auto r = bicover::irreducible_extension_same_degree(phi);
  CHECK(r.degree == 1);
  CHECK(r.new_edges.size() == 1);
  CHECK(r.extended_graph.size() == 2);
  CHECK(bicover::resolving_profile(r.extension).bi_covering);
  CHECK(bicover::connectivity(r.extended_graph).irreducible);
  check_restricts(phi, r);
}

TEST_CASE("same-degree extension needs a weakly connected domain") {
  const auto phi = split_loops_onto_loop();
  CHECK_THROWS_WITH_AS(
      bicover::irreducible_extension_same_degree(phi),
      doctest::Contains("weakly connected hypothesis fails"),
      bicover::PreconditionError);
}

TEST_CASE("degree-n extension through the codomain copy") {
  const auto phi = loop_into_rose();
  for (int n : {2, 3}) {
    const auto r = bicover::irreducible_extension_degree_n(phi, n);
    CHECK(r.degree == n);
    CHECK(bicover::resolving_profile(r.extension).bi_covering);
    CHECK(bicover::connectivity(r.extended_graph).irreducible);
    check_restricts(phi, r);
    // every codomain vertex fiber has exactly n vertices
    std::map<std::string, int> fiber;
    for (const auto& [v, image] : r.extension.vertex_map) fiber[image] += 1;
    for (const auto& [image, count] : fiber) CHECK(count == n);
  }
}

TEST_CASE("degree-n extension rejects non-increasing targets") {
  const auto phi = loop_into_rose();
  CHECK_THROWS_AS(bicover::irreducible_extension_degree_n(phi, 1),
                  bicover::PreconditionError);
  CHECK_THROWS_AS(bicover::irreducible_extension_degree_n(phi, 0),
                  bicover::PreconditionError);
}

TEST_CASE("degree-n extension rejects equal spectral radii") {
  const auto h = rose2();
  bicover::GraphHomomorphism ident = bicover::validate_homomorphism(
      h, h, {{"p", "p"}}, {{"x", "x"}, {"y", "y"}});
  CHECK_THROWS_WITH_AS(
      bicover::irreducible_extension_degree_n(ident, 2),
      doctest::Contains("entropy hypothesis fails"),
      bicover::PreconditionError);
}

TEST_CASE("completion pads fibers and matches preimages") {
  const auto phi = loop_into_rose();
  const auto r = bicover::bicovering_completion(phi, 2);
  CHECK(r.degree == 2);
  CHECK(r.extended_graph.order() == 2);
  CHECK(bicover::resolving_profile(r.extension).bi_covering);
  check_restricts(phi, r);
  CHECK_THROWS_AS(bicover::bicovering_completion(phi, 0),
                  bicover::PreconditionError);
}

TEST_CASE("perron diagnosis flags the blocked configuration") {
  const auto blocked = split_loops_onto_loop();
  const auto d1 = bicover::perron_obstruction_check(blocked);
  CHECK(d1.codomain_irreducible);
  CHECK_FALSE(d1.domain_irreducible);
  CHECK(d1.radii_equal);
  CHECK(d1.obstruction);
  CHECK(d1.domain_radius == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(d1.codomain_radius == doctest::Approx(1.0).epsilon(1e-9));

  const auto open = loop_into_rose();
  const auto d2 = bicover::perron_obstruction_check(open);
  CHECK_FALSE(d2.radii_equal);
  CHECK_FALSE(d2.obstruction);
}

TEST_CASE("random bi-resolving fixtures extend at the same degree") {
  std::mt19937 rng(31);
  int produced = 0;
  while (produced < 15) {
    const auto h = testutil::random_irreducible_graph(rng, 3, 2);
    const auto fixture = testutil::random_biresolving_fixture(rng, h, 3, 3);
    if (!fixture) continue;
    if (!bicover::connectivity(fixture->domain).weakly_connected) continue;
    ++produced;
    const auto r = bicover::irreducible_extension_same_degree(*fixture);
    CHECK(bicover::resolving_profile(r.extension).bi_covering);
    CHECK(bicover::connectivity(r.extended_graph).irreducible);
    check_restricts(*fixture, r);
  }
}
