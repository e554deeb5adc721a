#include "netir/pir.hpp"

#include <algorithm>

#include "netir/error.hpp"

namespace netir {

const TermGivenDoc* PirTables::find(TermId t) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), t,
                             [](const TermGivenDoc& tg, TermId key) { return tg.term < key; });
  return it != terms.end() && it->term == t ? &*it : nullptr;
}

std::vector<ValuePair> pir_term_priors(const CorpusIndex& index) {
  std::vector<ValuePair> priors(index.vocab_size());
  for (TermId t = 0; t < index.vocab_size(); ++t) priors[t] = {1.0, 1.0 - index.nidf(t)};
  return priors;
}

PirTables pir_tables(const CorpusIndex& index, DocIndex doc) {
  if (doc >= index.doc_count()) throw Error(ErrorCode::kUnknownDoc, "doc index " + std::to_string(doc));
  if (!index.rankable(doc)) {
    throw Error(ErrorCode::kInvalidArgument, "document has no indexed terms: " + index.doc_id(doc));
  }
  PirTables tables;
  tables.doc = doc;
  for (const auto& tc : index.doc_terms(doc)) {
    tables.terms.push_back({tc.term, {1.0, index.ntf(doc, tc.term)}, {1.0, 1.0 - index.nidf(tc.term)}});
  }
  return tables;
}

ValuePair pir_joint(std::span<const TermId> query, const PirTables& tables, std::span<const ValuePair> term_priors,
                    QuerySemantics semantics) {
  struct Factor {
    ValuePair pi;  // Pi(T_i | D = v) for document terms, Pi(T_i) otherwise
    bool in_doc;
  };
  ValuePair joints;
  std::vector<Factor> factors(query.size());
  for (Value doc_value : kValues) {
    for (std::size_t i = 0; i < query.size(); ++i) {
      if (const auto* given = tables.find(query[i])) {
        factors[i] = {doc_value == Value::kRelevant ? given->given_relevant : given->given_not_relevant, true};
      } else {
        factors[i] = {term_priors[query[i]], false};
      }
    }
    // Joint of one parent instance; grouped as document terms, document
    // prior, other terms so the result is reproducible term by term.
    auto instance = [&](auto value_of) {
      double shared = 1.0;
      double missing = 1.0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        (factors[i].in_doc ? shared : missing) *= factors[i].pi[value_of(i)];
      }
      return shared * tables.doc_prior[doc_value] * missing;
    };
    double best = 0.0;
    if (semantics == QuerySemantics::kConjunctive) {
      best = instance([](std::size_t) { return Value::kRelevant; });
    } else {
      // At least one parent relevant; every other parent takes its best value.
      for (std::size_t forced = 0; forced < factors.size(); ++forced) {
        best = std::max(best, instance([&](std::size_t i) {
          if (i == forced || factors[i].pi.relevant >= factors[i].pi.not_relevant) return Value::kRelevant;
          return Value::kNotRelevant;
        }));
      }
    }
    joints[doc_value] = best;
  }
  return joints;
}

ScorePair pir_score(ValuePair joints) {
  const double query_possibility = joints.max();
  if (!(query_possibility > 0.0)) return {0.0, 0.0, true};
  return {joints.relevant / query_possibility, 1.0 - joints.not_relevant / query_possibility, false};
}

RankedList pir_retrieve(const CorpusIndex& index, const QueryTerms& query, std::size_t k, QuerySemantics semantics) {
  if (query.terms.empty()) throw Error(ErrorCode::kEmptyQuery, "no query term is in the vocabulary");
  const auto priors = pir_term_priors(index);
  std::vector<std::pair<DocIndex, ScorePair>> scores;
  for (DocIndex d : index.rankable_docs()) {
    scores.emplace_back(d, pir_score(pir_joint(query.terms, pir_tables(index, d), priors, semantics)));
  }
  return rank_by_necessity(index, std::move(scores), k);
}

}  // namespace netir
