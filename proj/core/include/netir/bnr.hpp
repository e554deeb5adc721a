#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "netir/corpus.hpp"
#include "netir/dag.hpp"
#include "netir/ranking.hpp"
#include "netir/types.hpp"

namespace netir {

/// p(relevant | evidence) per node of the propagated network.
using Posteriors = std::vector<double>;

/// Prior of a root term: relevant with probability 1/M.
ValuePair root_prior(std::size_t vocab_size);

/// Clamps p(not-relevant) into [eps, 1 - eps] and rebuilds p(relevant) as
/// its complement.
ValuePair clamp_row(ValuePair row, double eps);

/// Jaccard-estimated table of `node` given `parents` (row bit k set when
/// parents[k] is present). For each configuration c:
///   p(absent | c) = n(absent, c) / (n(absent) + n(c) - n(absent, c))
/// counted over all documents, then clamped. A zero denominator falls back
/// to the clamped root prior.
NodeTable term_cpt_jaccard(const CorpusIndex& index, TermId node, std::span<const TermId> parents);

/// Additive document table: sum of the weights of the parents set to
/// relevant. `config` is aligned with `weights`.
double doc_prob(std::span<const TermWeight> weights, std::span<const Value> config);

/// Exact posterior marginals on a singly connected network.
/// Throws NotSinglyConnected or InconsistentEvidence.
Posteriors pearl_propagate(const Dag& dag, const TableSet& cpts, const Evidence& evidence);

/// sum_i w_ij * p(t_i | Q).
double bnr_score(std::span<const TermWeight> weights, const Posteriors& posteriors);

/// Term-layer network with estimated probability tables.
class BnrModel {
 public:
  /// Root priors 1/M and Jaccard tables for every node with parents.
  static BnrModel estimate(const CorpusIndex& index, const Dag& term_layer);

  /// Takes a previously estimated (e.g. deserialized) model. Throws
  /// InvalidArgument when tables do not match the structure or a row does
  /// not sum to one.
  BnrModel(Dag term_layer, TableSet cpts);

  const Dag& term_layer() const { return dag_; }
  const TableSet& cpts() const { return cpts_; }

  Posteriors propagate(const Evidence& evidence) const { return pearl_propagate(dag_, cpts_, evidence); }

 private:
  Dag dag_;
  TableSet cpts_;
};

/// Instantiates the query terms to relevant, propagates, scores every
/// rankable document and sorts by descending probability.
RankedList bnr_retrieve(const CorpusIndex& index, const BnrModel& model, const QueryTerms& query, std::size_t k);

}  // namespace netir
