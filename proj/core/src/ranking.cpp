#include "netir/ranking.hpp"

#include <algorithm>

#include "netir/error.hpp"

namespace netir {

QueryTerms resolve_query(const CorpusIndex& index, std::span<const std::string> tokens) {
  QueryTerms q;
  for (const auto& tok : tokens) {
    if (auto t = index.find_term(tok)) {
      if (std::find(q.terms.begin(), q.terms.end(), *t) == q.terms.end()) q.terms.push_back(*t);
    } else {
      ++q.dropped;
    }
  }
  if (q.terms.empty()) throw Error(ErrorCode::kEmptyQuery, "no query term is in the vocabulary");
  return q;
}

QueryTerms parse_query(const CorpusIndex& index, std::string_view text) {
  const auto tokens = tokenize(text, index.options());
  return resolve_query(index, tokens);
}

RankedList rank_by_probability(const CorpusIndex& index, std::vector<std::pair<DocIndex, double>> scores,
                               std::size_t k) {
  std::sort(scores.begin(), scores.end(), [&](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    return index.doc_id(x.first) < index.doc_id(y.first);
  });
  RankedList out;
  for (std::size_t i = 0; i < scores.size() && i < k; ++i) {
    out.push_back({scores[i].first, index.doc_id(scores[i].first), scores[i].second});
  }
  return out;
}

RankedList rank_by_necessity(const CorpusIndex& index, std::vector<std::pair<DocIndex, ScorePair>> scores,
                             std::size_t k) {
  std::sort(scores.begin(), scores.end(), [&](const auto& x, const auto& y) {
    const ScorePair& a = x.second;
    const ScorePair& b = y.second;
    const bool a_certain = a.necessity > 0.0;
    const bool b_certain = b.necessity > 0.0;
    if (a_certain != b_certain) return a_certain;
    if (a_certain && a.necessity != b.necessity) return a.necessity > b.necessity;
    if (a.possibility != b.possibility) return a.possibility > b.possibility;
    if (a.undefined != b.undefined) return b.undefined;
    return index.doc_id(x.first) < index.doc_id(y.first);
  });
  RankedList out;
  for (std::size_t i = 0; i < scores.size() && i < k; ++i) {
    out.push_back({scores[i].first, index.doc_id(scores[i].first), scores[i].second});
  }
  return out;
}

}  // namespace netir
