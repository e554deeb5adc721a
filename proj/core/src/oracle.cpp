#include "netir/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "netir/error.hpp"

namespace netir::oracle {

namespace {

void guard_network(const Dag& dag, const TableSet& tables, const Evidence& evidence) {
  if (dag.size() > kMaxNodes) throw Error(ErrorCode::kTooLarge, "enumeration limited to 20 nodes");
  if (tables.size() != dag.size()) throw Error(ErrorCode::kInvalidArgument, "one table per node required");
  for (NodeId x = 0; x < dag.size(); ++x) {
    if (tables[x].rows.size() != row_count(dag.parent_count(x))) {
      throw Error(ErrorCode::kInvalidArgument, "table row count mismatch");
    }
  }
  for (const auto& [node, value] : evidence) {
    if (node >= dag.size()) throw Error(ErrorCode::kInvalidArgument, "evidence on unknown node");
  }
}

Value value_in(std::size_t config, NodeId x) { return (config >> x) & 1U ? Value::kRelevant : Value::kNotRelevant; }

bool consistent(std::size_t config, const Evidence& evidence) {
  return std::all_of(evidence.begin(), evidence.end(),
                     [&](const auto& e) { return value_in(config, e.first) == e.second; });
}

// Table entry of node x under a full configuration.
double entry(const Dag& dag, const TableSet& tables, std::size_t config, NodeId x) {
  const auto parents = dag.parents(x);
  std::size_t row = 0;
  for (std::size_t k = 0; k < parents.size(); ++k) {
    if (value_in(config, parents[k]) == Value::kRelevant) row |= std::size_t{1} << k;
  }
  return tables[x].rows[row][value_in(config, x)];
}

// Possibility of every evidence-consistent configuration; -1 marks the rest.
std::vector<double> poss_joint(const Dag& dag, const TableSet& tables, const Evidence& evidence, PossOperator op) {
  const std::size_t total = std::size_t{1} << dag.size();
  std::vector<double> joint(total, -1.0);
  for (std::size_t config = 0; config < total; ++config) {
    if (!consistent(config, evidence)) continue;
    double pi = 1.0;
    for (NodeId x = 0; x < dag.size(); ++x) pi = combine(op, pi, entry(dag, tables, config, x));
    joint[config] = pi;
  }
  return joint;
}

}  // namespace

Posteriors enum_prob_posteriors(const Dag& dag, const TableSet& cpts, const Evidence& evidence) {
  guard_network(dag, cpts, evidence);
  const std::size_t total = std::size_t{1} << dag.size();
  std::vector<double> relevant_mass(dag.size(), 0.0);
  double evidence_mass = 0.0;
  for (std::size_t config = 0; config < total; ++config) {
    if (!consistent(config, evidence)) continue;
    double p = 1.0;
    for (NodeId x = 0; x < dag.size(); ++x) p *= entry(dag, cpts, config, x);
    evidence_mass += p;
    for (NodeId x = 0; x < dag.size(); ++x) {
      if (value_in(config, x) == Value::kRelevant) relevant_mass[x] += p;
    }
  }
  if (!(evidence_mass > 0.0)) throw Error(ErrorCode::kZeroEvidence, "evidence has probability zero");
  Posteriors out(dag.size());
  for (NodeId x = 0; x < dag.size(); ++x) out[x] = relevant_mass[x] / evidence_mass;
  return out;
}

std::vector<ValuePair> enum_poss_marginals(const Dag& dag, const TableSet& tables, const Evidence& evidence,
                                           PossOperator op) {
  guard_network(dag, tables, evidence);
  const auto joint = poss_joint(dag, tables, evidence, op);
  std::vector<ValuePair> out(dag.size(), ValuePair{0.0, 0.0});
  for (std::size_t config = 0; config < joint.size(); ++config) {
    if (joint[config] < 0.0) continue;
    for (NodeId x = 0; x < dag.size(); ++x) {
      double& slot = out[x][value_in(config, x)];
      slot = std::max(slot, joint[config]);
    }
  }
  return out;
}

ValuePair enum_pir_joint(std::span<const TermId> query, const PirTables& tables, std::span<const ValuePair> term_priors,
                         QuerySemantics semantics) {
  if (query.size() > kMaxQueryParents) throw Error(ErrorCode::kTooLarge, "enumeration limited to 20 query parents");
  const std::size_t instances = std::size_t{1} << query.size();
  ValuePair joints{0.0, 0.0};
  for (Value doc_value : kValues) {
    for (std::size_t theta = 0; theta < instances; ++theta) {
      const auto relevant_count = static_cast<std::size_t>(std::popcount(theta));
      const bool gate = semantics == QuerySemantics::kConjunctive ? relevant_count == query.size() : relevant_count > 0;
      double product = gate ? 1.0 : 0.0;
      double shared = 1.0;
      double missing = 1.0;
      for (std::size_t i = 0; i < query.size(); ++i) {
        const Value v = (theta >> i) & 1U ? Value::kRelevant : Value::kNotRelevant;
        if (const auto* given = tables.find(query[i])) {
          shared *= (doc_value == Value::kRelevant ? given->given_relevant : given->given_not_relevant)[v];
        } else {
          missing *= term_priors[query[i]][v];
        }
      }
      product *= shared * tables.doc_prior[doc_value] * missing;
      joints[doc_value] = std::max(joints[doc_value], product);
    }
  }
  return joints;
}

double enum_hybrid_possibility(const Dag& dag, const TableSet& tables, const Evidence& evidence, PossOperator op,
                               std::span<const TermWeight> weights) {
  guard_network(dag, tables, evidence);
  for (const auto& w : weights) {
    if (w.term >= dag.size()) throw Error(ErrorCode::kInvalidArgument, "weight on unknown node");
  }
  const auto joint = poss_joint(dag, tables, evidence, op);
  const double query_possibility = *std::max_element(joint.begin(), joint.end());
  if (!(query_possibility > 0.0)) throw Error(ErrorCode::kZeroEvidence, "evidence has possibility zero");
  double best = 0.0;
  for (std::size_t config = 0; config < joint.size(); ++config) {
    if (joint[config] < 0.0) continue;
    double conditioned = joint[config] == query_possibility ? 1.0 : joint[config];
    if (op == PossOperator::kProduct && conditioned != 1.0) conditioned /= query_possibility;
    double doc = 0.0;
    for (const auto& w : weights) {
      if (value_in(config, w.term) == Value::kRelevant) doc = std::max(doc, w.weight);
    }
    best = std::max(best, combine(op, doc, conditioned));
  }
  return best;
}

Forest best_spanning_forest(const std::vector<std::vector<double>>& weights) {
  const std::size_t n = weights.size();
  if (n > kMaxForestVertices) throw Error(ErrorCode::kTooLarge, "exhaustive forest search limited to 6 vertices");
  std::vector<ForestEdge> candidates;
  for (std::uint32_t a = 0; a < n; ++a) {
    if (weights[a].size() != n) throw Error(ErrorCode::kInvalidArgument, "weight matrix must be square");
    for (std::uint32_t b = a + 1; b < n; ++b) {
      if (weights[a][b] > 0.0) candidates.push_back({a, b, weights[a][b]});
    }
  }
  Forest best{n, {}};
  double best_total = 0.0;
  const std::size_t subsets = std::size_t{1} << candidates.size();
  for (std::size_t subset = 1; subset < subsets; ++subset) {
    std::vector<std::size_t> root(n);
    std::iota(root.begin(), root.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (root[x] != x) x = root[x];
      return x;
    };
    bool acyclic = true;
    double total = 0.0;
    for (std::size_t e = 0; e < candidates.size() && acyclic; ++e) {
      if (!((subset >> e) & 1U)) continue;
      const auto ra = find(candidates[e].a);
      const auto rb = find(candidates[e].b);
      if (ra == rb) acyclic = false;
      root[rb] = ra;
      total += candidates[e].weight;
    }
    if (acyclic && total > best_total) {
      best_total = total;
      best.edges.clear();
      for (std::size_t e = 0; e < candidates.size(); ++e) {
        if ((subset >> e) & 1U) best.edges.push_back(candidates[e]);
      }
    }
  }
  return best;
}

}  // namespace netir::oracle
