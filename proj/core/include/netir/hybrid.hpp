#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "netir/bnr.hpp"
#include "netir/corpus.hpp"
#include "netir/dag.hpp"
#include "netir/ranking.hpp"
#include "netir/types.hpp"

namespace netir {

/// Combination operator of possibilistic conditioning: min is the
/// qualitative reading, product the quantitative one.
enum class PossOperator { kMin, kProduct };

double combine(PossOperator op, double a, double b);

/// Ratio transform pi(x) = p(x) / max p. Keeps the order of the values and
/// maps the more probable one to 1.
ValuePair prob_to_poss(ValuePair row);
TableSet prob_to_poss(const TableSet& cpts);

/// Per node, the normalized pair (Pi(not t_i | Q), Pi(t_i | Q)).
using PossPosteriors = std::vector<ValuePair>;

/// Unnormalized max-marginals Pi(T_i = v and evidence) by (max, op) message
/// passing. Throws NotSinglyConnected.
std::vector<ValuePair> poss_max_marginals(const Dag& dag, const TableSet& tables, const Evidence& evidence,
                                          PossOperator op);

/// Conditions one max-marginal pair on the evidence: product divides by the
/// pair maximum; min lifts the maximal entries to 1 and keeps the others.
/// Throws InconsistentEvidence when the pair maximum is zero.
ValuePair condition(ValuePair max_marginal, PossOperator op);

PossPosteriors poss_propagate(const Dag& dag, const TableSet& tables, const Evidence& evidence, PossOperator op);

/// Document table pi(d | theta) = max of w' over the relevant parents, so
///   possibility = max_i w'_i (op) Pi(t_i | Q)
/// exactly, and necessity = max_i w'_i (op) N(t_i | Q), N = 1 - Pi(not t_i | Q).
/// The necessity aggregate is a heuristic upper-bounded by the possibility.
ScorePair hybrid_score(std::span<const TermWeight> weights, const PossPosteriors& posteriors, PossOperator op);

/// BNR topology with possibilistic tables.
class HybridModel {
 public:
  static HybridModel from_bnr(const BnrModel& bnr);

  /// Throws InvalidArgument when tables do not match the structure or a row
  /// is not max-normalized.
  HybridModel(Dag term_layer, TableSet tables);

  const Dag& term_layer() const { return dag_; }
  const TableSet& tables() const { return tables_; }

  PossPosteriors propagate(const Evidence& evidence, PossOperator op) const {
    return poss_propagate(dag_, tables_, evidence, op);
  }

 private:
  Dag dag_;
  TableSet tables_;
};

/// Same ranking rule as pir_retrieve over hybrid score pairs.
RankedList hybrid_retrieve(const CorpusIndex& index, const HybridModel& model, const QueryTerms& query, std::size_t k,
                           PossOperator op = PossOperator::kProduct);

}  // namespace netir
