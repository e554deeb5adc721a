#include "netir/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <tuple>

#include "netir/error.hpp"

namespace netir {

namespace {

// c/N * ln(c*N / (mx*my)); exact zero under exact independence.
double mi_cell(std::uint64_t c, std::uint64_t mx, std::uint64_t my, std::uint64_t n) {
  if (c == 0) return 0.0;
  const double ratio = static_cast<double>(c * n) / static_cast<double>(mx * my);
  return static_cast<double>(c) / static_cast<double>(n) * std::log(ratio);
}

struct EdgeKey {
  double weight;
  std::uint32_t lo;
  std::uint32_t hi;
};

// Total order used everywhere a forest is chosen: heavier first, then
// lexicographically smaller endpoint pair.
bool outranks(const EdgeKey& x, const EdgeKey& y) {
  if (x.weight != y.weight) return x.weight > y.weight;
  if (x.lo != y.lo) return x.lo < y.lo;
  return x.hi < y.hi;
}

EdgeKey make_key(double w, std::size_t u, std::size_t v) {
  return {w, static_cast<std::uint32_t>(std::min(u, v)), static_cast<std::uint32_t>(std::max(u, v))};
}

}  // namespace

double mutual_information_from_counts(std::size_t both, std::size_t only_first, std::size_t only_second,
                                      std::size_t total) {
  if (total == 0 || both + only_first + only_second > total) {
    throw Error(ErrorCode::kInvalidArgument, "inconsistent contingency counts");
  }
  const std::uint64_t n11 = both;
  const std::uint64_t n10 = only_first;
  const std::uint64_t n01 = only_second;
  const std::uint64_t n00 = total - both - only_first - only_second;
  const std::uint64_t first = n11 + n10;
  const std::uint64_t second = n11 + n01;
  const std::uint64_t not_first = n01 + n00;
  const std::uint64_t not_second = n10 + n00;
  const double mixed = mi_cell(n10, first, not_second, total) + mi_cell(n01, not_first, second, total);
  const double mi = mi_cell(n11, first, second, total) + mi_cell(n00, not_first, not_second, total) + mixed;
  return std::max(0.0, mi);
}

double mutual_information(const CorpusIndex& index, TermId i, TermId k) {
  if (i == k) throw Error(ErrorCode::kInvalidArgument, "mutual information of a term with itself");
  if (i >= index.vocab_size() || k >= index.vocab_size()) {
    throw Error(ErrorCode::kInvalidArgument, "term id out of range");
  }
  const auto a = index.postings(i);
  const auto b = index.postings(k);
  std::size_t both = 0;
  for (std::size_t x = 0, y = 0; x < a.size() && y < b.size();) {
    if (a[x].doc == b[y].doc) {
      ++both;
      ++x;
      ++y;
    } else if (a[x].doc < b[y].doc) {
      ++x;
    } else {
      ++y;
    }
  }
  return mutual_information_from_counts(both, a.size() - both, b.size() - both, index.doc_count());
}

double Forest::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges) total += e.weight;
  return total;
}

Forest maximum_spanning_forest(std::size_t n, const WeightRowFn& weights) {
  Forest forest;
  forest.vertex_count = n;
  std::vector<bool> in_tree(n, false);
  std::vector<bool> has_candidate(n, false);
  std::vector<EdgeKey> candidate(n);
  std::vector<std::size_t> candidate_from(n, 0);
  std::vector<double> row(n, 0.0);

  auto relax = [&](std::size_t u) {
    std::fill(row.begin(), row.end(), 0.0);
    weights(u, row);
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v] || v == u || !(row[v] > 0.0)) continue;
      const EdgeKey key = make_key(row[v], u, v);
      if (!has_candidate[v] || outranks(key, candidate[v])) {
        candidate[v] = key;
        candidate_from[v] = u;
        has_candidate[v] = true;
      }
    }
  };

  for (std::size_t start = 0; start < n; ++start) {
    if (in_tree[start]) continue;
    in_tree[start] = true;
    relax(start);
    for (;;) {
      std::size_t next = n;
      for (std::size_t v = 0; v < n; ++v) {
        if (in_tree[v] || !has_candidate[v]) continue;
        if (next == n || outranks(candidate[v], candidate[next])) next = v;
      }
      if (next == n) break;
      forest.edges.push_back({candidate[next].lo, candidate[next].hi, candidate[next].weight});
      in_tree[next] = true;
      relax(next);
    }
  }
  std::sort(forest.edges.begin(), forest.edges.end(),
            [](const ForestEdge& x, const ForestEdge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  return forest;
}

Forest maximum_spanning_forest(const std::vector<std::vector<double>>& weights) {
  const std::size_t n = weights.size();
  for (const auto& r : weights) {
    if (r.size() != n) throw Error(ErrorCode::kInvalidArgument, "weight matrix must be square");
  }
  return maximum_spanning_forest(n, [&](std::size_t u, std::vector<double>& row) {
    for (std::size_t v = 0; v < n; ++v) row[v] = weights[std::min(u, v)][std::max(u, v)];
  });
}

Forest chow_liu_forest(const CorpusIndex& index) {
  const std::size_t m = index.vocab_size();
  std::vector<std::size_t> co(m, 0);
  return maximum_spanning_forest(m, [&](std::size_t u, std::vector<double>& row) {
    std::fill(co.begin(), co.end(), 0);
    for (const auto& p : index.postings(static_cast<TermId>(u))) {
      for (const auto& tc : index.doc_terms(p.doc)) ++co[tc.term];
    }
    const std::size_t df_u = index.df(static_cast<TermId>(u));
    for (std::size_t v = 0; v < m; ++v) {
      if (v == u) continue;
      const std::size_t df_v = index.df(static_cast<TermId>(v));
      row[v] = u < v ? mutual_information_from_counts(co[v], df_u - co[v], df_v - co[v], index.doc_count())
                     : mutual_information_from_counts(co[v], df_v - co[v], df_u - co[v], index.doc_count());
    }
  });
}

TermLayer orient_forest(const Forest& forest, const CorpusIndex& index) {
  const std::size_t m = forest.vertex_count;
  if (m != index.vocab_size()) {
    throw Error(ErrorCode::kInvalidArgument, "forest does not cover the vocabulary");
  }
  std::vector<std::vector<NodeId>> adjacent(m);
  for (const auto& e : forest.edges) {
    adjacent.at(e.a).push_back(e.b);
    adjacent.at(e.b).push_back(e.a);
  }
  for (auto& list : adjacent) std::sort(list.begin(), list.end());

  TermLayer layer{Dag(m), {}};
  std::vector<bool> seen(m, false);
  std::vector<NodeId> component;
  for (NodeId start = 0; start < m; ++start) {
    if (seen[start]) continue;
    component.clear();
    std::deque<NodeId> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      component.push_back(u);
      for (NodeId v : adjacent[u]) {
        if (!seen[v]) {
          seen[v] = true;
          queue.push_back(v);
        }
      }
    }
    NodeId root = component.front();
    for (NodeId t : component) {
      if (index.df(t) > index.df(root) || (index.df(t) == index.df(root) && t < root)) root = t;
    }
    layer.roots.push_back(root);

    std::vector<bool> placed(m, false);
    placed[root] = true;
    queue.assign(1, root);
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (NodeId v : adjacent[u]) {
        if (placed[v]) continue;
        placed[v] = true;
        layer.dag.add_arc(u, v);
        queue.push_back(v);
      }
    }
  }
  if (layer.dag.arcs().size() != forest.edges.size()) {
    throw Error(ErrorCode::kNotSinglyConnected, "input edges contain a cycle");
  }
  return layer;
}

Dag Network::term_layer() const {
  Dag layer(term_count);
  for (const auto& arc : dag.arcs()) {
    if (arc.parent < term_count && arc.child < term_count) layer.add_arc(arc.parent, arc.child);
  }
  return layer;
}

Network attach_documents(const TermLayer& layer, const CorpusIndex& index) {
  if (!validate_polytree(layer.dag)) {
    throw Error(ErrorCode::kNotSinglyConnected, "term layer is not a polytree");
  }
  Network net;
  net.dag = layer.dag;
  net.roots = layer.roots;
  net.term_count = layer.dag.size();
  net.doc_nodes.assign(index.doc_count(), kNoNode);
  for (DocIndex d = 0; d < index.doc_count(); ++d) {
    if (!index.rankable(d)) continue;
    const NodeId node = net.dag.add_node({NodeKind::kDocument, d});
    net.doc_nodes[d] = node;
    for (const auto& tc : index.doc_terms(d)) net.dag.add_arc(tc.term, node);
  }
  return net;
}

Network learn_network(const CorpusIndex& index) {
  return attach_documents(orient_forest(chow_liu_forest(index), index), index);
}

}  // namespace netir
