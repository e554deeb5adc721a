#include "netir/bnr.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "netir/error.hpp"
#include "polytree_messages.hpp"

namespace netir {

namespace {

constexpr std::size_t kMaxTableParents = 20;

}  // namespace

ValuePair root_prior(std::size_t vocab_size) {
  if (vocab_size == 0) throw Error(ErrorCode::kInvalidArgument, "vocabulary is empty");
  const double p = 1.0 / static_cast<double>(vocab_size);
  return {1.0 - p, p};
}

ValuePair clamp_row(ValuePair row, double eps) {
  const double absent = std::clamp(row.not_relevant, eps, 1.0 - eps);
  return {absent, 1.0 - absent};
}

NodeTable term_cpt_jaccard(const CorpusIndex& index, TermId node, std::span<const TermId> parents) {
  if (parents.empty()) throw Error(ErrorCode::kInvalidArgument, "Jaccard table needs at least one parent");
  if (parents.size() > kMaxTableParents) throw Error(ErrorCode::kTooLarge, "too many parents for a dense table");
  const double eps = index.options().clamp_epsilon;
  const std::size_t rows = row_count(parents.size());

  std::unordered_map<DocIndex, std::size_t> pattern;
  for (std::size_t k = 0; k < parents.size(); ++k) {
    for (const auto& p : index.postings(parents[k])) pattern[p.doc] |= std::size_t{1} << k;
  }
  std::vector<std::size_t> n_config(rows, 0);
  std::vector<std::size_t> n_absent_config(rows, 0);
  std::size_t absent_in_pattern = 0;
  for (const auto& [doc, mask] : pattern) {
    ++n_config[mask];
    if (!index.contains(doc, node)) {
      ++n_absent_config[mask];
      ++absent_in_pattern;
    }
  }
  const std::size_t n_absent = index.doc_count() - index.df(node);
  // Documents containing none of the parents fall in configuration 0.
  n_config[0] += index.doc_count() - pattern.size();
  n_absent_config[0] += n_absent - absent_in_pattern;

  NodeTable table;
  table.rows.reserve(rows);
  for (std::size_t mask = 0; mask < rows; ++mask) {
    const std::size_t denom = n_absent + n_config[mask] - n_absent_config[mask];
    if (denom == 0) {
      table.rows.push_back(clamp_row(root_prior(index.vocab_size()), eps));
      continue;
    }
    const double absent = static_cast<double>(n_absent_config[mask]) / static_cast<double>(denom);
    table.rows.push_back(clamp_row({absent, 1.0 - absent}, eps));
  }
  return table;
}

double doc_prob(std::span<const TermWeight> weights, std::span<const Value> config) {
  if (weights.size() != config.size()) throw Error(ErrorCode::kInvalidArgument, "config does not match weights");
  double p = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (config[i] == Value::kRelevant) p += weights[i].weight;
  }
  return std::clamp(p, 0.0, 1.0);
}

Posteriors pearl_propagate(const Dag& dag, const TableSet& cpts, const Evidence& evidence) {
  const auto beliefs = detail::polytree_beliefs<detail::SumProduct>(dag, cpts, evidence);
  Posteriors out(dag.size());
  for (NodeId x = 0; x < dag.size(); ++x) {
    const double total = beliefs[x].sum();
    if (!(total > 0.0)) throw Error(ErrorCode::kInconsistentEvidence, "evidence has probability zero");
    out[x] = beliefs[x].relevant / total;
  }
  return out;
}

double bnr_score(std::span<const TermWeight> weights, const Posteriors& posteriors) {
  double score = 0.0;
  for (const auto& w : weights) score += w.weight * posteriors.at(w.term);
  return score;
}

BnrModel BnrModel::estimate(const CorpusIndex& index, const Dag& term_layer) {
  if (term_layer.size() != index.vocab_size()) {
    throw Error(ErrorCode::kInvalidArgument, "term layer does not match the vocabulary");
  }
  TableSet cpts(term_layer.size());
  const ValuePair prior = root_prior(index.vocab_size());
  for (NodeId x = 0; x < term_layer.size(); ++x) {
    const auto parents = term_layer.parents(x);
    if (parents.empty()) {
      cpts[x].rows = {prior};
    } else {
      cpts[x] = term_cpt_jaccard(index, x, parents);
    }
  }
  return BnrModel(term_layer, std::move(cpts));
}

BnrModel::BnrModel(Dag term_layer, TableSet cpts) : dag_(std::move(term_layer)), cpts_(std::move(cpts)) {
  for (NodeId x = 0; x < dag_.size(); ++x) {
    if (dag_.variable(x).kind != NodeKind::kTerm) {
      throw Error(ErrorCode::kInvalidArgument, "term layer contains a document node");
    }
  }
  if (!validate_polytree(dag_)) throw Error(ErrorCode::kNotSinglyConnected, "term layer is not a polytree");
  detail::check_tables(dag_, cpts_);
  for (NodeId x = 0; x < dag_.size(); ++x) {
    for (const auto& row : cpts_[x].rows) {
      if (row.not_relevant < 0.0 || row.relevant < 0.0 || std::abs(row.sum() - 1.0) > 1e-9) {
        throw Error(ErrorCode::kInvalidArgument, "table row of node " + std::to_string(x) + " is not a distribution");
      }
    }
  }
}

RankedList bnr_retrieve(const CorpusIndex& index, const BnrModel& model, const QueryTerms& query, std::size_t k) {
  if (query.terms.empty()) throw Error(ErrorCode::kEmptyQuery, "no query term is in the vocabulary");
  Evidence evidence;
  for (TermId t : query.terms) evidence[t] = Value::kRelevant;
  const Posteriors posteriors = model.propagate(evidence);

  std::vector<std::pair<DocIndex, double>> scores;
  for (DocIndex d : index.rankable_docs()) scores.emplace_back(d, bnr_score(index.bnr_weights(d), posteriors));
  return rank_by_probability(index, std::move(scores), k);
}

}  // namespace netir
