#pragma once

// Pearl-style causal/diagnostic message passing on a singly connected
// network, generic over a commutative semiring (plus, times). Sum-product
// gives probabilistic marginals; max-product and max-min give
// possibilistic max-marginals.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "netir/dag.hpp"
#include "netir/error.hpp"
#include "netir/types.hpp"

namespace netir::detail {

struct SumProduct {
  static double plus(double a, double b) { return a + b; }
  static double times(double a, double b) { return a * b; }
  // Messages may be rescaled freely; only ratios matter.
  static constexpr bool kRescale = true;
};

struct MaxProduct {
  static double plus(double a, double b) { return std::max(a, b); }
  static double times(double a, double b) { return a * b; }
  static constexpr bool kRescale = false;
};

struct MaxMin {
  static double plus(double a, double b) { return std::max(a, b); }
  static double times(double a, double b) { return std::min(a, b); }
  static constexpr bool kRescale = false;
};

inline void check_tables(const Dag& dag, const TableSet& tables) {
  if (tables.size() != dag.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one table per node required");
  }
  for (NodeId x = 0; x < dag.size(); ++x) {
    if (tables[x].rows.size() != row_count(dag.parent_count(x))) {
      throw Error(ErrorCode::kInvalidArgument, "table of node " + std::to_string(x) + " has wrong row count");
    }
  }
}

inline void check_evidence(const Dag& dag, const Evidence& evidence) {
  for (const auto& [node, value] : evidence) {
    if (node >= dag.size()) throw Error(ErrorCode::kInvalidArgument, "evidence on unknown node");
  }
}

template <class Semiring>
class PolytreeMessages {
 public:
  PolytreeMessages(const Dag& dag, const TableSet& tables, const Evidence& evidence)
      : dag_(dag),
        tables_(tables),
        indicator_(dag.size(), ValuePair{1.0, 1.0}),
        pi_(dag.arcs().size(), ValuePair{1.0, 1.0}),
        lambda_(dag.arcs().size(), ValuePair{1.0, 1.0}) {
    for (const auto& [node, value] : evidence) {
      indicator_[node] = ValuePair{0.0, 0.0};
      indicator_[node][value] = 1.0;
    }
  }

  /// Unnormalized beliefs pi(x) * lambda(x) per node. Under max semirings
  /// these are exactly the max-marginals of (x, evidence).
  std::vector<ValuePair> run() {
    schedule();
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      if (via_[*it] != kNone) send(*it, via_[*it]);
    }
    for (NodeId x : order_) {
      for (auto a : dag_.parent_arcs(x)) {
        if (a != via_[x]) send(x, a);
      }
      for (auto a : dag_.child_arcs(x)) {
        if (a != via_[x]) send(x, a);
      }
    }
    std::vector<ValuePair> beliefs(dag_.size());
    for (NodeId x = 0; x < dag_.size(); ++x) {
      const ValuePair causal = causal_support(x);
      const ValuePair diagnostic = diagnostic_support(x, kNone);
      for (Value v : kValues) beliefs[x][v] = Semiring::times(causal[v], diagnostic[v]);
    }
    return beliefs;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void schedule() {
    const std::size_t n = dag_.size();
    via_.assign(n, kNone);
    order_.clear();
    std::vector<bool> visited(n, false);
    for (NodeId start = 0; start < n; ++start) {
      if (visited[start]) continue;
      visited[start] = true;
      const std::size_t begin = order_.size();
      order_.push_back(start);
      for (std::size_t head = begin; head < order_.size(); ++head) {
        const NodeId x = order_[head];
        auto visit = [&](std::size_t arc, NodeId neighbor) {
          if (visited[neighbor]) return;
          visited[neighbor] = true;
          via_[neighbor] = arc;
          order_.push_back(neighbor);
        };
        for (auto a : dag_.parent_arcs(x)) visit(a, dag_.arcs()[a].parent);
        for (auto a : dag_.child_arcs(x)) visit(a, dag_.arcs()[a].child);
      }
    }
  }

  // Product of incoming causal messages for the parent configuration `mask`,
  // skipping parent position `skip`.
  double parent_weight(NodeId x, std::size_t mask, std::size_t skip) const {
    const auto parents = dag_.parent_arcs(x);
    double w = 1.0;
    for (std::size_t k = 0; k < parents.size(); ++k) {
      if (k == skip) continue;
      const Value pv = (mask >> k) & 1U ? Value::kRelevant : Value::kNotRelevant;
      w = Semiring::times(w, pi_[parents[k]][pv]);
    }
    return w;
  }

  ValuePair causal_support(NodeId x) const {
    const auto& rows = tables_[x].rows;
    ValuePair out{0.0, 0.0};
    for (std::size_t mask = 0; mask < rows.size(); ++mask) {
      const double w = parent_weight(x, mask, kNone);
      for (Value v : kValues) out[v] = Semiring::plus(out[v], Semiring::times(rows[mask][v], w));
    }
    return out;
  }

  ValuePair diagnostic_support(NodeId x, std::size_t skip_arc) const {
    ValuePair out = indicator_[x];
    for (auto a : dag_.child_arcs(x)) {
      if (a == skip_arc) continue;
      for (Value v : kValues) out[v] = Semiring::times(out[v], lambda_[a][v]);
    }
    return out;
  }

  void send(NodeId x, std::size_t arc) {
    if (dag_.arcs()[arc].parent == x) {
      send_causal(x, arc);
    } else {
      send_diagnostic(x, arc);
    }
  }

  void send_causal(NodeId x, std::size_t arc) {
    const ValuePair causal = causal_support(x);
    const ValuePair diagnostic = diagnostic_support(x, arc);
    ValuePair msg;
    for (Value v : kValues) msg[v] = Semiring::times(causal[v], diagnostic[v]);
    pi_[arc] = finish(msg);
  }

  void send_diagnostic(NodeId x, std::size_t arc) {
    const auto parents = dag_.parent_arcs(x);
    const auto position = static_cast<std::size_t>(std::find(parents.begin(), parents.end(), arc) - parents.begin());
    const ValuePair diagnostic = diagnostic_support(x, kNone);
    const auto& rows = tables_[x].rows;
    ValuePair msg{0.0, 0.0};
    for (std::size_t mask = 0; mask < rows.size(); ++mask) {
      const Value parent_value = (mask >> position) & 1U ? Value::kRelevant : Value::kNotRelevant;
      const double w = parent_weight(x, mask, position);
      for (Value v : kValues) {
        msg[parent_value] =
            Semiring::plus(msg[parent_value], Semiring::times(diagnostic[v], Semiring::times(rows[mask][v], w)));
      }
    }
    lambda_[arc] = finish(msg);
  }

  ValuePair finish(ValuePair msg) const {
    if constexpr (Semiring::kRescale) {
      const double total = msg.sum();
      if (!(total > 0.0)) throw Error(ErrorCode::kInconsistentEvidence, "evidence has probability zero");
      msg.not_relevant /= total;
      msg.relevant /= total;
    }
    return msg;
  }

  const Dag& dag_;
  const TableSet& tables_;
  std::vector<ValuePair> indicator_;
  std::vector<ValuePair> pi_;      // causal message over the parent's values, per arc
  std::vector<ValuePair> lambda_;  // diagnostic message over the parent's values, per arc
  std::vector<NodeId> order_;
  std::vector<std::size_t> via_;
};

template <class Semiring>
std::vector<ValuePair> polytree_beliefs(const Dag& dag, const TableSet& tables, const Evidence& evidence) {
  if (!is_singly_connected(dag)) {
    throw Error(ErrorCode::kNotSinglyConnected, "propagation requires a polytree");
  }
  check_tables(dag, tables);
  check_evidence(dag, evidence);
  return PolytreeMessages<Semiring>(dag, tables, evidence).run();
}

}  // namespace netir::detail
