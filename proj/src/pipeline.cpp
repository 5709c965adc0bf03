#include "bicover/pipeline.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "bicover/errors.hpp"

namespace bicover {

namespace {

constexpr double kRadiusTolerance = 1e-9;

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

long lcm_up_to(int n) {
  long out = 1;
  for (int i = 2; i <= n; ++i) out = std::lcm(out, static_cast<long>(i));
  return out;
}

Eigen::MatrixXi matrix_power(Eigen::MatrixXi base, long e) {
  Eigen::MatrixXi out = Eigen::MatrixXi::Identity(base.rows(), base.cols());
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

bool is_primitive(const std::vector<int>& seq) {
  const int p = static_cast<int>(seq.size());
  for (int d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    bool repeats = true;
    for (int i = d; i < p && repeats; ++i) repeats = seq[i] == seq[i % d];
    if (repeats) return false;
  }
  return true;
}

bool is_minimal_rotation(const std::vector<int>& seq) {
  const int p = static_cast<int>(seq.size());
  for (int r = 1; r < p; ++r)
    for (int i = 0; i < p; ++i) {
      const int a = seq[(r + i) % p], b = seq[i];
      if (a < b) return false;
      if (a > b) break;
    }
  return true;
}

// Preimage counts over periodic codomain points: the lift matrices of a
// closed codomain word multiply to a partial permutation of the domain
// vertices, and the preimages of the periodic point correspond to the
// vertices on its cycles.
struct PeriodicSampler {
  const DirectedMultigraph& h;
  const std::vector<Eigen::MatrixXi>& lifts;
  long power;
  int cap;
  int best = 0;

  void consider(const std::vector<int>& seq, const Eigen::MatrixXi& product) {
    if (!is_primitive(seq) || !is_minimal_rotation(seq)) return;
    best = std::max(best, static_cast<int>(matrix_power(product, power).trace()));
  }

  void grow(int start, int cur, std::vector<int>& seq,
            const Eigen::MatrixXi& product) {
    if (!seq.empty() && cur == start) consider(seq, product);
    if (static_cast<int>(seq.size()) == cap) return;
    for (int e : h.out_edges(cur)) {
      const Eigen::MatrixXi next = product * lifts[e];
      if (!(next.array() != 0).any()) continue;
      seq.push_back(e);
      grow(start, h.vertex_index(h.edge(e).dst), seq, next);
      seq.pop_back();
    }
  }
};

}  // namespace

PointDegree point_degree(const GraphHomomorphism& phi, PipelineOptions opts) {
  if (!resolving_profile(phi).bi_resolving)
    throw PreconditionError("homomorphism is not bi-resolving");
  if (!is_essential(phi.domain) || !is_essential(phi.codomain))
    throw PreconditionError("graphs must be essential");

  const DirectedMultigraph& g = phi.domain;
  const DirectedMultigraph& h = phi.codomain;
  const int ng = g.order();

  PointDegree out;
  if (ng > 0 && h.size() > 0) {
    std::vector<Eigen::MatrixXi> lifts(h.size(),
                                       Eigen::MatrixXi::Zero(ng, ng));
    for (const Edge& e : g.edges())
      lifts[h.edge_index(phi.edge_map.at(e.id))](g.vertex_index(e.src),
                                                 g.vertex_index(e.dst)) = 1;
    PeriodicSampler sampler{h, lifts, lcm_up_to(ng), opts.period_cap};
    std::vector<int> seq;
    const Eigen::MatrixXi id = Eigen::MatrixXi::Identity(ng, ng);
    for (int v = 0; v < h.order(); ++v) sampler.grow(v, v, seq, id);
    out.periodic_max = sampler.best;
  }

  int prev = std::numeric_limits<int>::max();
  for (int level = 1; level <= opts.n_cap; ++level) {
    const HigherHomomorphism hh = higher_homomorphism(phi, level);
    const int v = vertex_degree(hh.hom);
    if (v > prev)
      throw std::logic_error("higher-level vertex degree increased");
    out.vertex_degrees.push_back(v);
    if (v == out.periodic_max) {
      out.degree = v;
      out.witness_n = level;
      return out;
    }
    prev = v;
  }
  out.degree = out.vertex_degrees.back();
  out.witness_n = opts.n_cap;
  out.indeterminate = true;
  return out;
}

ConjugacyExtension conjugacy_extension(const SubshiftPresentation& enclosing,
                                       const SlidingBlockCode& phi,
                                       int inverse_window, int word_cap) {
  if (phi.memory != 0 || phi.anticipation != 0)
    throw PreconditionError("the conjugacy must be a 1-block code");
  if (inverse_window < 0)
    throw PreconditionError("inverse window must be nonnegative");
  if (enclosing.kind == SubshiftKind::sofic)
    throw PreconditionError("enclosing presentation must be of finite type");
  const SubshiftPresentation& x = phi.domain;
  const SubshiftPresentation& y = phi.codomain;
  const int radius = inverse_window;
  const int span = 2 * radius + 1;

  // The domain must sit inside the enclosing shift symbol-for-symbol;
  // containment at the longest checked length covers the shorter ones.
  {
    const int j = std::max(1, word_cap);
    const std::set<Word> large = words(enclosing, j);
    for (const Word& w : words(x, j))
      if (!large.count(w))
        throw PreconditionError(
            "the domain is not contained in the enclosing shift: \"" +
            render_word(w) + "\" leaves it");
  }

  // The image window must determine the central symbol.
  {
    std::map<Word, std::string> center_of;
    for (const Word& w : words(x, span)) {
      const Word image = apply_block_map(phi, w);
      const auto [it, fresh] = center_of.try_emplace(image, w[radius]);
      if (!fresh && it->second != w[radius])
        throw PreconditionError(
            "the code is not invertible with memory and anticipation " +
            std::to_string(radius));
    }
  }

  const LabeledGraph dl = labeled_presentation(enclosing);
  const HigherGraph hk = higher_graph(dl.graph, span);
  const std::set<Word> inside = words(x, span);

  std::set<std::string> used;
  for (const auto& s : alphabet_of(y)) used.insert(s);
  std::map<std::string, std::string> labels;
  std::map<Word, std::string> window_symbol;
  std::vector<std::string> fresh_order;
  for (int idx = 0; idx < hk.graph.size(); ++idx) {
    Word w;
    w.reserve(span);
    for (const auto& eid : hk.edge_paths[idx]) w.push_back(dl.labels.at(eid));
    std::string sym;
    if (inside.count(w)) {
      sym = phi.blocks.at({w[radius]});
    } else {
      const auto it = window_symbol.find(w);
      if (it != window_symbol.end()) {
        sym = it->second;
      } else {
        const std::string base = "[" + join_with(w, ',') + "]";
        std::string candidate = base;
        int suffix = 2;
        while (used.count(candidate))
          candidate = base + "~" + std::to_string(suffix++);
        used.insert(candidate);
        window_symbol[w] = candidate;
        fresh_order.push_back(candidate);
        sym = candidate;
      }
    }
    labels[hk.graph.edge(idx).id] = sym;
  }

  std::vector<std::string> alphabet = alphabet_of(y);
  alphabet.insert(alphabet.end(), fresh_order.begin(), fresh_order.end());

  ConjugacyExtension out;
  out.enlarged_image = sofic_shift(hk.graph, labels, alphabet);

  std::map<Word, std::string> blocks;
  for (const Word& w : words(enclosing, span)) {
    if (inside.count(w))
      blocks[w] = phi.blocks.at({w[radius]});
    else
      blocks[w] = window_symbol.at(w);
  }
  out.extended = make_code(enclosing, out.enlarged_image, radius, radius,
                           std::move(blocks), word_cap);
  out.fresh_symbols = fresh_order;
  for (const auto& [w, s] : window_symbol) out.symbol_words[s] = w;
  return out;
}

BiclosingExtension extend_biclosing_code(const GraphHomomorphism& phi, int n,
                                         PipelineOptions opts) {
  const DirectedMultigraph& g = phi.domain;
  const DirectedMultigraph& h = phi.codomain;
  if (n < 1) throw PreconditionError("multiplicity must be positive");
  if (!is_essential(g) || !is_essential(h))
    throw PreconditionError("graphs must be essential");
  if (!connectivity(h).irreducible)
    throw PreconditionError("codomain graph is not irreducible");

  const PointDegree pd = point_degree(phi, opts);
  if (pd.indeterminate)
    throw CapError("preimage degree did not stabilize within the caps");
  const int d = pd.degree;
  if (n < d)
    throw PreconditionError("requested multiplicity " + std::to_string(n) +
                            " is below the maximal preimage count " +
                            std::to_string(d));
  if (n == d) {
    if (!connectivity(g).weakly_connected)
      throw PreconditionError(
          "an extension of the same multiplicity needs a weakly connected "
          "domain");
  } else {
    const double lg = spectral_radius(g), lh = spectral_radius(h);
    if (!(lg < lh - kRadiusTolerance)) {
      if (perron_obstruction_check(phi).obstruction)
        throw PreconditionError(
            "spectral radii are equal and the domain is not irreducible; no "
            "bi-covering extension has an irreducible domain");
      throw PreconditionError(
          "entropy hypothesis fails: the domain spectral radius must lie "
          "strictly below the codomain's");
    }
  }

  const int level = pd.witness_n;
  const HigherHomomorphism hh = higher_homomorphism(phi, level);
  if (vertex_degree(hh.hom) != d)
    throw std::logic_error("stabilized level lost the degree");

  BiclosingExtension out;
  out.n = n;
  out.degree = d;
  out.witness_n = level;
  out.graph_extension = (n == d)
                            ? irreducible_extension_same_degree(hh.hom)
                            : irreducible_extension_degree_n(hh.hom, n);

  const int radius = level - 1;
  const int span = 2 * radius + 1;

  // 1-block conjugacy from the level edge shift down to the base one; its
  // inverse reads the level symbol off the next level - 1 base symbols.
  std::map<Word, std::string> first_edge;
  for (int idx = 0; idx < hh.domain.graph.size(); ++idx)
    first_edge[{hh.domain.graph.edge(idx).id}] =
        hh.domain.edge_paths[idx].front();
  const SlidingBlockCode down = make_code(edge_shift(hh.domain.graph),
                                          edge_shift(g), 0, 0,
                                          std::move(first_edge), opts.word_cap);

  const ConjugacyExtension ce = conjugacy_extension(
      edge_shift(out.graph_extension.extended_graph), down, radius,
      opts.word_cap);

  // The extended code, window by window: a bracketed symbol pins down the
  // central extended-level edge directly; an all-plain window spells it.
  const SubshiftPresentation& xt = ce.enlarged_image;
  std::map<Word, std::string> blocks;
  for (const Word& w : words(xt, span)) {
    std::string center;
    bool found = false;
    for (int j = 0; j < span && !found; ++j) {
      const auto it = ce.symbol_words.find(w[j]);
      if (it != ce.symbol_words.end()) {
        center = it->second[span - 1 - j];
        found = true;
      }
    }
    if (!found)
      center = join_with(
          std::vector<std::string>(w.begin() + radius,
                                   w.begin() + radius + level),
          '|');
    if (!out.graph_extension.extended_graph.has_edge(center))
      throw std::logic_error("reconstructed center is not an extended edge");
    const std::string image = out.graph_extension.extension.edge_map.at(center);
    blocks[w] =
        hh.codomain.edge_paths[hh.codomain.graph.edge_index(image)].front();
  }
  out.extended_code =
      make_code(xt, edge_shift(h), radius, radius, std::move(blocks),
                opts.word_cap);
  out.extended_domain = out.extended_code.domain;
  out.fresh_symbols = ce.fresh_symbols;
  return out;
}

ApproximateExtension approximate_and_extend(const SlidingBlockCode& code,
                                            int n, ApproximateOptions opts) {
  const SubshiftPresentation& x = code.domain;
  const SubshiftPresentation& y = code.codomain;
  if (y.kind != SubshiftKind::edge)
    throw PreconditionError("codomain must be presented as an edge shift");
  const DirectedMultigraph& h = y.graph;
  if (!is_essential(h) || !connectivity(h).irreducible)
    throw PreconditionError("codomain graph must be essential and irreducible");
  const double hy = entropy(y);
  const double hx = entropy(x);
  if (hx > hy + kRadiusTolerance)
    throw PreconditionError(
        "entropy hypothesis fails: the domain entropy must not exceed "
        "the codomain's");
  if (x.kind != SubshiftKind::sofic && !closing_profile(code).bi_closing)
    throw PreconditionError("the code is not bi-closing");

  ApproximateExtension out;
  const int start = code.window();
  if (start > opts.k_cap)
    throw CapError("approximation cap is below the first usable step " +
                   std::to_string(start));
  for (int k = start; k <= opts.k_cap; ++k) {
    const SubshiftPresentation xk = markov_approximation(x, k);
    try {
      if (entropy(xk) > hy + kRadiusTolerance)
        throw PreconditionError("approximation entropy exceeds the codomain's");
      const SlidingBlockCode ck = make_code(xk, y, code.memory,
                                            code.anticipation, code.blocks,
                                            opts.pipeline.word_cap);
      if (!closing_profile(ck).bi_closing)
        throw PreconditionError("approximation code is not bi-closing");
      const RecodedCode rec = recode_one_block(ck, opts.pipeline.word_cap);

      // The 1-block presentation is an edge homomorphism exactly when the
      // labeling is consistent at every vertex.
      const DirectedMultigraph& dk = rec.one_block.domain.graph;
      std::map<std::string, std::string> vm, em;
      for (const Edge& e : dk.edges())
        em[e.id] = rec.one_block.blocks.at({e.id});
      bool consistent = true;
      for (int v = 0; v < dk.order() && consistent; ++v) {
        std::string image;
        for (int e : dk.out_edges(v)) {
          const std::string s = h.edge(h.edge_index(em.at(dk.edge(e).id))).src;
          if (image.empty())
            image = s;
          else if (image != s)
            consistent = false;
        }
        for (int e : dk.in_edges(v)) {
          if (!consistent) break;
          const std::string s = h.edge(h.edge_index(em.at(dk.edge(e).id))).dst;
          if (image.empty())
            image = s;
          else if (image != s)
            consistent = false;
        }
        if (consistent) vm[dk.vertices()[v]] = image;
      }
      if (!consistent)
        throw PreconditionError(
            "the 1-block presentation is not vertex-consistent; the "
            "closing-to-resolving recoding it would need is out of scope");
      const GraphHomomorphism psi = validate_homomorphism(dk, h, vm, em);
      if (!resolving_profile(psi).bi_resolving)
        throw PreconditionError(
            "the recoded homomorphism is not bi-resolving; the "
            "closing-to-resolving recoding it would need is out of scope");
      out.extension = extend_biclosing_code(psi, n, opts.pipeline);
      out.k = k;
      out.recoded = rec;
      return out;
    } catch (const PreconditionError& err) {
      out.obstructions.emplace_back(k, err.what());
    } catch (const FormatError& err) {
      out.obstructions.emplace_back(
          k, std::string("the approximate code leaves the codomain: ") +
                 err.what());
    }
  }
  std::string message =
      "no admissible approximation step up to " + std::to_string(opts.k_cap);
  for (const auto& [k, why] : out.obstructions)
    message += "; step " + std::to_string(k) + ": " + why;
  throw CapError(message);
}

}  // namespace bicover
