#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "netir/types.hpp"

namespace netir {

struct Document {
  std::string id;
  std::string text;
};

struct IndexOptions {
  std::unordered_set<std::string> stopwords;
  std::size_t min_token_length = 2;
  // Clamp applied to estimated probability tables; must lie in [0, 0.5).
  double clamp_epsilon = 1e-4;
};

/// Lowercases ASCII letters and splits on every byte that is neither an
/// ASCII letter/digit nor part of a multi-byte UTF-8 sequence. Tokens
/// shorter than opts.min_token_length code points and stopwords are dropped.
std::vector<std::string> tokenize(std::string_view text, const IndexOptions& opts);

struct Posting {
  DocIndex doc;
  std::uint32_t tf;
};

struct TermCount {
  TermId term;
  std::uint32_t tf;
};

struct TermWeight {
  TermId term;
  double weight;
};

/// A document as a bag of already tokenized terms. Used to rebuild an
/// index from a persisted bundle without re-tokenizing.
struct TokenizedDocument {
  std::string id;
  std::vector<std::pair<std::string, std::uint32_t>> term_counts;
};

/// Immutable inverted index with all term/document statistics the ranking
/// models read. Term ids follow first appearance in corpus order.
class CorpusIndex {
 public:
  static CorpusIndex build(std::span<const Document> docs, IndexOptions opts = {});
  static CorpusIndex from_tokenized(std::span<const TokenizedDocument> docs, IndexOptions opts = {});

  std::size_t doc_count() const { return doc_ids_.size(); }
  std::size_t vocab_size() const { return terms_.size(); }
  const IndexOptions& options() const { return opts_; }

  const std::string& term(TermId t) const { return terms_.at(t); }
  std::optional<TermId> find_term(std::string_view term) const;

  const std::string& doc_id(DocIndex d) const { return doc_ids_.at(d); }
  std::optional<DocIndex> find_doc(std::string_view id) const;
  /// Throws UnknownDoc.
  DocIndex doc_index(std::string_view id) const;

  std::span<const Posting> postings(TermId t) const { return postings_.at(t); }
  /// (term, tf) pairs of a document, ascending by term id.
  std::span<const TermCount> doc_terms(DocIndex d) const { return doc_terms_.at(d); }
  bool contains(DocIndex d, TermId t) const;
  std::uint32_t tf(DocIndex d, TermId t) const;

  std::size_t df(TermId t) const { return postings_.at(t).size(); }
  double idf(TermId t) const { return idf_.at(t); }
  double nidf(TermId t) const { return nidf_.at(t); }
  std::uint32_t max_tf(DocIndex d) const { return max_tf_.at(d); }
  /// tf / max tf of the document; 0 when the term does not occur.
  double ntf(DocIndex d, TermId t) const;

  /// A document is rankable when at least one token survived indexing.
  bool rankable(DocIndex d) const { return !doc_terms_.at(d).empty(); }
  std::vector<DocIndex> rankable_docs() const;

  /// Sum-normalized tf-idf; uniform 1/m when every term has idf 0.
  const std::vector<TermWeight>& bnr_weights(DocIndex d) const;
  const std::vector<TermWeight>& bnr_weights(std::string_view id) const;
  /// Max-normalized tf-idf; all ones when every term has idf 0.
  const std::vector<TermWeight>& hybrid_weights(DocIndex d) const;
  const std::vector<TermWeight>& hybrid_weights(std::string_view id) const;

 private:
  CorpusIndex() = default;
  static CorpusIndex assemble(std::vector<std::string> doc_ids,
                              std::vector<std::vector<std::pair<std::string, std::uint32_t>>> bags,
                              IndexOptions opts);
  void compute_statistics();
  void check_rankable(DocIndex d) const;

  IndexOptions opts_;
  std::vector<std::string> terms_;
  std::unordered_map<std::string, TermId> term_lookup_;
  std::vector<std::string> doc_ids_;
  std::unordered_map<std::string, DocIndex> doc_lookup_;
  std::vector<std::vector<Posting>> postings_;
  std::vector<std::vector<TermCount>> doc_terms_;
  std::vector<double> idf_;
  std::vector<double> nidf_;
  std::vector<std::uint32_t> max_tf_;
  std::vector<std::vector<TermWeight>> bnr_weights_;
  std::vector<std::vector<TermWeight>> hybrid_weights_;
};

}  // namespace netir
