#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bicover/homomorphism.hpp"

namespace bicover {

enum class RelationMode { equality, inequality };

// Searches for a subamalgamation matrix satisfying both matrix relations
// (with = or <= according to the mode). Vertex assignments are explored in
// declaration order, so the first witness is canonical. Returns nullopt when
// no matrix exists; throws CapError when the timeout is hit.
std::optional<Eigen::MatrixXi> find_subamalgamation(
    const DirectedMultigraph& domain, const DirectedMultigraph& codomain,
    RelationMode mode, std::optional<long> timeout_ms = std::nullopt);

// Writes a square matrix with all row and column sums equal to r as a sum of
// r permutation matrices, repeatedly extracting the lexicographically least
// perfect matching of the support.
std::vector<Eigen::MatrixXi> decompose_into_permutations(const Eigen::MatrixXi& a,
                                                         int r);

// Raises a square matrix with row and column sums at most b to one with all
// sums equal to b, adding 1 at the smallest deficient (row, column) pair in
// index order each step.
Eigen::MatrixXi pad_to_balanced(const Eigen::MatrixXi& a, int b);
// Same, also reporting the positions added, in order.
std::pair<Eigen::MatrixXi, std::vector<std::pair<int, int>>> pad_to_balanced_trace(
    const Eigen::MatrixXi& a, int b);

// Builds a bi-covering homomorphism realizing a subamalgamation matrix whose
// relations hold with equality.
GraphHomomorphism build_bicovering(const DirectedMultigraph& domain,
                                   const DirectedMultigraph& codomain,
                                   const Eigen::MatrixXi& s);

struct BiresolvingResult {
  GraphHomomorphism resolving;  // on the original domain
  GraphHomomorphism covering;   // on the padded domain
};

// Builds a bi-resolving homomorphism realizing a matrix whose relations hold
// with <=, by padding every fiber to the common size, balancing each block
// and restricting the resulting bi-covering map. Padding vertices are named
// "pad:I#k" and padding edges "pad:I>J#k".
BiresolvingResult build_biresolving(const DirectedMultigraph& domain,
                                    const DirectedMultigraph& codomain,
                                    const Eigen::MatrixXi& s);

}  // namespace bicover
