#pragma once

// Brute-force reference semantics. Every function enumerates the full
// configuration space and is only meant for small instances.

#include <cstddef>
#include <span>
#include <vector>

#include "netir/bnr.hpp"
#include "netir/dag.hpp"
#include "netir/hybrid.hpp"
#include "netir/network.hpp"
#include "netir/pir.hpp"
#include "netir/types.hpp"

namespace netir::oracle {

inline constexpr std::size_t kMaxNodes = 20;
inline constexpr std::size_t kMaxQueryParents = 20;
inline constexpr std::size_t kMaxForestVertices = 6;

/// Posterior p(relevant | evidence) of every node from the factorized joint.
/// Any DAG is accepted. Throws TooLarge or ZeroEvidence.
Posteriors enum_prob_posteriors(const Dag& dag, const TableSet& cpts, const Evidence& evidence);

/// Unnormalized max-marginals under the (max, op) combination of all table
/// entries. Throws TooLarge.
std::vector<ValuePair> enum_poss_marginals(const Dag& dag, const TableSet& tables, const Evidence& evidence,
                                           PossOperator op);

/// Literal max over all instances of the query's parents of
/// Pi(q | theta) * prod Pi(theta_i | D) * Pi(D) * prod Pi(theta_k).
ValuePair enum_pir_joint(std::span<const TermId> query, const PirTables& tables, std::span<const ValuePair> term_priors,
                         QuerySemantics semantics = QuerySemantics::kConjunctive);

/// max over term-layer configurations theta of pi(d | theta) (op) Pi(theta | Q),
/// with pi(d | theta) the max of the weights of relevant parents and
/// Pi(theta | Q) the conditioned joint. Throws TooLarge or ZeroEvidence.
double enum_hybrid_possibility(const Dag& dag, const TableSet& tables, const Evidence& evidence, PossOperator op,
                               std::span<const TermWeight> weights);

/// Exhaustive maximum-total-weight forest over the positive-weight edges of
/// a symmetric weight matrix. Throws TooLarge.
Forest best_spanning_forest(const std::vector<std::vector<double>>& weights);

}  // namespace netir::oracle
