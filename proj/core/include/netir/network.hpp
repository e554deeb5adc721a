#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "netir/corpus.hpp"
#include "netir/dag.hpp"

namespace netir {

/// Mutual information (nats) between the presence indicators of two terms
/// over all documents, from maximum-likelihood counts. Throws
/// InvalidArgument when i == k.
double mutual_information(const CorpusIndex& index, TermId i, TermId k);

/// Same quantity from a 2x2 contingency table (both, only first, only
/// second, total). Symmetric in the two marginals.
double mutual_information_from_counts(std::size_t both, std::size_t only_first, std::size_t only_second,
                                      std::size_t total);

struct ForestEdge {
  std::uint32_t a;  // smaller endpoint
  std::uint32_t b;
  double weight;

  friend bool operator==(const ForestEdge&, const ForestEdge&) = default;
};

struct Forest {
  std::size_t vertex_count = 0;
  std::vector<ForestEdge> edges;  // sorted by (a, b)

  double total_weight() const;
};

/// Fills row[v] with the weight of edge (u, v) for every v; row[u] is ignored.
using WeightRowFn = std::function<void(std::size_t u, std::vector<double>& row)>;

/// Maximum-weight spanning forest over the positive-weight edges (dense
/// Prim, restarted per component). Ties between equal weights go to the
/// lexicographically smaller (min endpoint, max endpoint) pair, which makes
/// the result identical to Kruskal under the same total order.
Forest maximum_spanning_forest(std::size_t n, const WeightRowFn& weights);
Forest maximum_spanning_forest(const std::vector<std::vector<double>>& weights);

/// Chow-Liu forest over term presence indicators; zero-MI pairs are never
/// joined.
Forest chow_liu_forest(const CorpusIndex& index);

/// A directed term layer: node id == term id, plus one root per tree.
struct TermLayer {
  Dag dag;
  std::vector<NodeId> roots;
};

/// Roots each tree at its highest-df term (lowest id on ties) and directs
/// arcs away from the root.
TermLayer orient_forest(const Forest& forest, const CorpusIndex& index);

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Full retrieval network: term nodes 0..M-1 followed by one node per
/// rankable document whose parents are exactly its index terms.
struct Network {
  Dag dag;
  std::vector<NodeId> roots;
  std::size_t term_count = 0;
  std::vector<NodeId> doc_nodes;  // by DocIndex; kNoNode for unrankable docs

  /// Copy of the term-to-term part, node id == term id.
  Dag term_layer() const;
};

Network attach_documents(const TermLayer& layer, const CorpusIndex& index);

/// chow_liu_forest -> orient_forest -> attach_documents.
Network learn_network(const CorpusIndex& index);

}  // namespace netir
