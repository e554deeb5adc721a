#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "netir/corpus.hpp"
#include "netir/dag.hpp"
#include "netir/hybrid.hpp"
#include "netir/types.hpp"

namespace netir::testing {

// apple apple banana / banana cherry / apple cherry cherry
inline std::vector<Document> c3_docs() {
  return {{"D1", "apple apple banana"}, {"D2", "banana cherry"}, {"D3", "apple cherry cherry"}};
}

inline CorpusIndex c3_index() { return CorpusIndex::build(c3_docs()); }

struct RandomNetwork {
  Dag dag;
  TableSet tables;
  Evidence evidence;
};

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random singly connected structure over `n` nodes. With `polytree` set the
/// arcs of a random undirected tree get random directions (multi-parent
/// nodes appear); otherwise every node but a random root has one parent.
inline Dag random_structure(std::mt19937_64& rng, std::size_t n, bool polytree) {
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  Dag dag(n);
  for (std::size_t i = 1; i < n; ++i) {
    const NodeId earlier = perm[std::uniform_int_distribution<std::size_t>(0, i - 1)(rng)];
    const NodeId node = perm[i];
    if (polytree && std::bernoulli_distribution(0.5)(rng)) {
      dag.add_arc(node, earlier);
    } else {
      dag.add_arc(earlier, node);
    }
  }
  return dag;
}

/// Probability rows drawn uniformly and clamped into [eps, 1 - eps].
inline TableSet random_cpts(std::mt19937_64& rng, const Dag& dag, double eps = 1e-4) {
  TableSet tables(dag.size());
  for (NodeId x = 0; x < dag.size(); ++x) {
    for (std::size_t r = 0; r < row_count(dag.parent_count(x)); ++r) {
      const double absent = std::clamp(uniform(rng), eps, 1.0 - eps);
      tables[x].rows.push_back({absent, 1.0 - absent});
    }
  }
  return tables;
}

/// Normalized possibility rows: one entry is 1, the other uniform in [0, 1];
/// a few rows are drawn from a small grid so ties occur.
inline TableSet random_poss_tables(std::mt19937_64& rng, const Dag& dag) {
  TableSet tables(dag.size());
  for (NodeId x = 0; x < dag.size(); ++x) {
    for (std::size_t r = 0; r < row_count(dag.parent_count(x)); ++r) {
      double other = uniform(rng);
      if (std::bernoulli_distribution(0.3)(rng)) other = std::uniform_int_distribution<int>(0, 4)(rng) / 4.0;
      tables[x].rows.push_back(std::bernoulli_distribution(0.5)(rng) ? ValuePair{1.0, other} : ValuePair{other, 1.0});
    }
  }
  return tables;
}

inline Evidence random_evidence(std::mt19937_64& rng, std::size_t n, std::size_t max_observed = 3) {
  Evidence evidence;
  const std::size_t count = std::uniform_int_distribution<std::size_t>(0, std::min(max_observed, n))(rng);
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  std::shuffle(nodes.begin(), nodes.end(), rng);
  for (std::size_t i = 0; i < count; ++i) {
    evidence[nodes[i]] = std::bernoulli_distribution(0.5)(rng) ? Value::kRelevant : Value::kNotRelevant;
  }
  return evidence;
}

inline RandomNetwork random_network(std::mt19937_64& rng, std::size_t max_nodes, bool polytree) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_nodes)(rng);
  RandomNetwork net{random_structure(rng, n, polytree), {}, {}};
  net.tables = random_cpts(rng, net.dag);
  net.evidence = random_evidence(rng, n);
  return net;
}

/// Random corpus over `vocab` single-letter-ish terms, every term used.
inline std::vector<Document> random_corpus(std::mt19937_64& rng, std::size_t vocab, std::size_t docs) {
  std::vector<Document> out;
  auto term = [](std::size_t i) { return std::string("t") + static_cast<char>('a' + i); };
  for (std::size_t d = 0; d < docs; ++d) {
    std::string text;
    for (std::size_t t = 0; t < vocab; ++t) {
      const int tf = std::bernoulli_distribution(0.45)(rng) ? std::uniform_int_distribution<int>(1, 3)(rng) : 0;
      for (int k = 0; k < tf; ++k) text += term(t) + " ";
    }
    if (text.empty()) text = term(d % vocab);
    out.push_back({"doc" + std::to_string(d), text});
  }
  // Make sure every term occurs somewhere so M == vocab.
  for (std::size_t t = 0; t < vocab; ++t) out[t % docs].text += " " + term(t);
  return out;
}

}  // namespace netir::testing
