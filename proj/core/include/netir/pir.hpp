#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "netir/corpus.hpp"
#include "netir/ranking.hpp"
#include "netir/types.hpp"

namespace netir {

/// How the query node combines its term parents: Pi(q | theta) is 1 iff all
/// (conjunctive) or at least one (disjunctive) query term is relevant in theta.
enum class QuerySemantics { kConjunctive, kDisjunctive };

/// Pi(T_i | D_j = v) for one index term of a document.
struct TermGivenDoc {
  TermId term;
  ValuePair given_relevant;      // Pi(t_i | d_j) = ntf, Pi(not t_i | d_j) = 1
  ValuePair given_not_relevant;  // Pi(t_i | not d_j) = 1 - nidf, Pi(not t_i | not d_j) = 1
};

/// The possibilistic fragment document -> terms of one document.
struct PirTables {
  DocIndex doc = 0;
  ValuePair doc_prior{1.0, 1.0};
  std::vector<TermGivenDoc> terms;  // ascending term id

  const TermGivenDoc* find(TermId t) const;
};

/// Pi(T_k) for every term: (Pi(not t_k), Pi(t_k)) = (1, 1 - nidf_k).
std::vector<ValuePair> pir_term_priors(const CorpusIndex& index);

/// Throws UnknownDoc for an unknown id, InvalidArgument for an unrankable doc.
PirTables pir_tables(const CorpusIndex& index, DocIndex doc);

/// (Pi(Q and not d_j), Pi(Q and d_j)), closed form of the max over query
/// parent instances. Document terms outside the query do not contribute;
/// query terms outside the document contribute their prior.
ValuePair pir_joint(std::span<const TermId> query, const PirTables& tables, std::span<const ValuePair> term_priors,
                    QuerySemantics semantics = QuerySemantics::kConjunctive);

/// Product-based conditioning of the two joints. Both zero yields (0, 0)
/// flagged undefined.
ScorePair pir_score(ValuePair joints);

RankedList pir_retrieve(const CorpusIndex& index, const QueryTerms& query, std::size_t k,
                        QuerySemantics semantics = QuerySemantics::kConjunctive);

}  // namespace netir
