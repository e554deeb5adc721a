#include "netir/hybrid.hpp"

#include <algorithm>
#include <string>

#include "netir/error.hpp"
#include "polytree_messages.hpp"

namespace netir {

double combine(PossOperator op, double a, double b) { return op == PossOperator::kMin ? std::min(a, b) : a * b; }

ValuePair prob_to_poss(ValuePair row) {
  const double top = row.max();
  if (!(top > 0.0)) throw Error(ErrorCode::kInvalidArgument, "probability row has no mass");
  // Divide only the non-maximal entry so the maximal one is exactly 1.
  return {row.not_relevant == top ? 1.0 : row.not_relevant / top, row.relevant == top ? 1.0 : row.relevant / top};
}

TableSet prob_to_poss(const TableSet& cpts) {
  TableSet out(cpts.size());
  for (std::size_t x = 0; x < cpts.size(); ++x) {
    for (const auto& row : cpts[x].rows) out[x].rows.push_back(prob_to_poss(row));
  }
  return out;
}

std::vector<ValuePair> poss_max_marginals(const Dag& dag, const TableSet& tables, const Evidence& evidence,
                                          PossOperator op) {
  return op == PossOperator::kMin ? detail::polytree_beliefs<detail::MaxMin>(dag, tables, evidence)
                                  : detail::polytree_beliefs<detail::MaxProduct>(dag, tables, evidence);
}

ValuePair condition(ValuePair max_marginal, PossOperator op) {
  const double top = max_marginal.max();
  if (!(top > 0.0)) throw Error(ErrorCode::kInconsistentEvidence, "evidence has possibility zero");
  ValuePair out;
  for (Value v : kValues) {
    if (max_marginal[v] == top) {
      out[v] = 1.0;
    } else {
      out[v] = op == PossOperator::kMin ? max_marginal[v] : max_marginal[v] / top;
    }
  }
  return out;
}

PossPosteriors poss_propagate(const Dag& dag, const TableSet& tables, const Evidence& evidence, PossOperator op) {
  const auto marginals = poss_max_marginals(dag, tables, evidence, op);
  PossPosteriors out;
  out.reserve(marginals.size());
  for (const auto& m : marginals) out.push_back(condition(m, op));
  return out;
}

ScorePair hybrid_score(std::span<const TermWeight> weights, const PossPosteriors& posteriors, PossOperator op) {
  ScorePair score;
  for (const auto& w : weights) {
    const ValuePair& post = posteriors.at(w.term);
    score.possibility = std::max(score.possibility, combine(op, w.weight, post.relevant));
    score.necessity = std::max(score.necessity, combine(op, w.weight, 1.0 - post.not_relevant));
  }
  return score;
}

HybridModel HybridModel::from_bnr(const BnrModel& bnr) { return HybridModel(bnr.term_layer(), prob_to_poss(bnr.cpts())); }

HybridModel::HybridModel(Dag term_layer, TableSet tables) : dag_(std::move(term_layer)), tables_(std::move(tables)) {
  if (!validate_polytree(dag_)) throw Error(ErrorCode::kNotSinglyConnected, "term layer is not a polytree");
  detail::check_tables(dag_, tables_);
  for (NodeId x = 0; x < dag_.size(); ++x) {
    for (const auto& row : tables_[x].rows) {
      if (row.not_relevant < 0.0 || row.relevant < 0.0 || row.not_relevant > 1.0 || row.relevant > 1.0 ||
          row.max() != 1.0) {
        throw Error(ErrorCode::kInvalidArgument, "table row of node " + std::to_string(x) + " is not normalized");
      }
    }
  }
}

RankedList hybrid_retrieve(const CorpusIndex& index, const HybridModel& model, const QueryTerms& query, std::size_t k,
                           PossOperator op) {
  if (query.terms.empty()) throw Error(ErrorCode::kEmptyQuery, "no query term is in the vocabulary");
  Evidence evidence;
  for (TermId t : query.terms) evidence[t] = Value::kRelevant;
  const PossPosteriors posteriors = model.propagate(evidence, op);

  std::vector<std::pair<DocIndex, ScorePair>> scores;
  for (DocIndex d : index.rankable_docs()) {
    scores.emplace_back(d, hybrid_score(index.hybrid_weights(d), posteriors, op));
  }
  return rank_by_necessity(index, std::move(scores), k);
}

}  // namespace netir
