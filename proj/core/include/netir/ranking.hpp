#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "netir/corpus.hpp"

namespace netir {

/// Possibility and necessity of relevance for one document.
struct ScorePair {
  double possibility = 0.0;
  double necessity = 0.0;
  // Set when both joints were zero: conditioning is undefined and the
  // document is ranked last.
  bool undefined = false;
};

struct RankedEntry {
  DocIndex doc;
  std::string doc_id;
  std::variant<double, ScorePair> score;
};

using RankedList = std::vector<RankedEntry>;

/// Query terms mapped to vocabulary ids, duplicates removed, first
/// occurrence order kept.
struct QueryTerms {
  std::vector<TermId> terms;
  std::size_t dropped = 0;  // tokens not in the vocabulary
};

/// Throws EmptyQuery when no token is in the vocabulary.
QueryTerms resolve_query(const CorpusIndex& index, std::span<const std::string> tokens);
/// Tokenizes with the index options, then resolve_query.
QueryTerms parse_query(const CorpusIndex& index, std::string_view text);

/// Descending score, ties by ascending doc id, truncated to k.
RankedList rank_by_probability(const CorpusIndex& index, std::vector<std::pair<DocIndex, double>> scores,
                               std::size_t k);

/// Documents with positive necessity first (necessity descending), then the
/// rest by possibility descending; ties by ascending doc id; truncated to k.
RankedList rank_by_necessity(const CorpusIndex& index, std::vector<std::pair<DocIndex, ScorePair>> scores,
                             std::size_t k);

}  // namespace netir
