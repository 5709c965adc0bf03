#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bicover/code.hpp"
#include "bicover/extension.hpp"

namespace bicover {

struct PipelineOptions {
  int period_cap = 6;  // longest codomain cycle word sampled for preimage counts
  int n_cap = 12;      // highest higher-block level tried for stabilization
  int word_cap = 12;   // length bound for word-level verification
};

struct PointDegree {
  int degree = 0;
  int witness_n = 0;           // level whose vertex degree meets the bound
  bool indeterminate = false;  // caps reached with the bounds still apart
  int periodic_max = 0;  // largest preimage count over sampled periodic points
  std::vector<int> vertex_degrees;  // vertex degree per level, from level 1
};

// Maximal number of preimages of a codomain point under the 1-block code of
// a bi-resolving homomorphism between essential graphs. Each sampled
// periodic point's preimage count is a lower bound and the vertex degrees
// of the higher-level homomorphisms are a nonincreasing chain of upper
// bounds, so a meeting of the two certifies the value exactly; otherwise
// the result carries the best bounds and is marked indeterminate.
PointDegree point_degree(const GraphHomomorphism& phi,
                         PipelineOptions opts = {});

struct ConjugacyExtension {
  SubshiftPresentation enlarged_image;
  SlidingBlockCode extended;
  std::vector<std::string> fresh_symbols;
  std::map<std::string, Word> symbol_words;  // fresh symbol -> its window
};

// Extends a 1-block conjugacy with a bounded-window inverse to a conjugacy
// defined on an enclosing shift of finite type. Windows staying inside the
// conjugacy's domain keep their image; windows leaving it are named by
// fresh bracketed symbols, one per window.
ConjugacyExtension conjugacy_extension(const SubshiftPresentation& enclosing,
                                       const SlidingBlockCode& phi,
                                       int inverse_window, int word_cap = 12);

struct BiclosingExtension {
  SubshiftPresentation extended_domain;  // contains the domain symbolwise
  SlidingBlockCode extended_code;        // onto the codomain edge shift
  ExtensionResult graph_extension;       // built at the stabilized level
  int n = 0;
  int degree = 0;     // maximal preimage count of the input code
  int witness_n = 1;  // level where the degree stabilizes
  std::vector<std::string> fresh_symbols;
};

// Extends the 1-block code of a bi-resolving homomorphism onto an
// irreducible codomain to an exactly-n-to-1 code whose domain contains the
// original edge shift symbol-for-symbol and restricts to the original code
// there. Requires n at least the maximal preimage count, with a weakly
// connected domain when equal and a strict spectral gap when larger.
BiclosingExtension extend_biclosing_code(const GraphHomomorphism& phi, int n,
                                         PipelineOptions opts = {});

struct ApproximateOptions {
  int k_cap = 12;  // largest approximation step tried
  PipelineOptions pipeline;
};

struct ApproximateExtension {
  BiclosingExtension extension;
  int k = 0;            // accepted approximation step
  RecodedCode recoded;  // 1-block presentation used at the accepted step
  std::vector<std::pair<int, std::string>> obstructions;  // rejected steps
};

// Replaces a general domain by the Markov approximations X_k, keeping the
// block map verbatim, until the approximated code becomes a bi-resolving
// edge homomorphism after recoding, and extends that one. Steps whose
// recoding would need a genuine closing-to-resolving transformation are
// reported as obstructions and skipped.
ApproximateExtension approximate_and_extend(const SlidingBlockCode& code,
                                            int n, ApproximateOptions opts = {});

}  // namespace bicover
