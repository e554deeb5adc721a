#include "netir/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "netir/error.hpp"

namespace netir {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

std::size_t code_points(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const IndexOptions& opts) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty() && code_points(current) >= opts.min_token_length && !opts.stopwords.contains(current)) {
      tokens.push_back(current);
    }
    current.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : ch);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

CorpusIndex CorpusIndex::build(std::span<const Document> docs, IndexOptions opts) {
  std::vector<std::string> ids;
  std::vector<std::vector<std::pair<std::string, std::uint32_t>>> bags;
  ids.reserve(docs.size());
  bags.reserve(docs.size());
  for (const auto& doc : docs) {
    ids.push_back(doc.id);
    std::vector<std::pair<std::string, std::uint32_t>> bag;
    std::unordered_map<std::string, std::size_t> slot;
    for (auto& tok : tokenize(doc.text, opts)) {
      auto [it, inserted] = slot.try_emplace(tok, bag.size());
      if (inserted) {
        bag.emplace_back(std::move(tok), 1);
      } else {
        ++bag[it->second].second;
      }
    }
    bags.push_back(std::move(bag));
  }
  return assemble(std::move(ids), std::move(bags), std::move(opts));
}

CorpusIndex CorpusIndex::from_tokenized(std::span<const TokenizedDocument> docs, IndexOptions opts) {
  std::vector<std::string> ids;
  std::vector<std::vector<std::pair<std::string, std::uint32_t>>> bags;
  for (const auto& doc : docs) {
    ids.push_back(doc.id);
    bags.push_back(doc.term_counts);
  }
  return assemble(std::move(ids), std::move(bags), std::move(opts));
}

CorpusIndex CorpusIndex::assemble(std::vector<std::string> doc_ids,
                                  std::vector<std::vector<std::pair<std::string, std::uint32_t>>> bags,
                                  IndexOptions opts) {
  if (opts.clamp_epsilon < 0.0 || opts.clamp_epsilon >= 0.5) {
    throw Error(ErrorCode::kInvalidArgument, "clamp epsilon must lie in [0, 0.5)");
  }
  CorpusIndex index;
  index.opts_ = std::move(opts);
  for (DocIndex d = 0; d < doc_ids.size(); ++d) {
    if (doc_ids[d].empty()) {
      throw Error(ErrorCode::kInvalidArgument, "document id must be nonempty");
    }
    if (!index.doc_lookup_.try_emplace(doc_ids[d], d).second) {
      throw Error(ErrorCode::kDuplicateDocId, doc_ids[d]);
    }
  }
  index.doc_ids_ = std::move(doc_ids);
  index.doc_terms_.resize(index.doc_ids_.size());

  for (DocIndex d = 0; d < bags.size(); ++d) {
    auto& terms = index.doc_terms_[d];
    for (auto& [text, tf] : bags[d]) {
      if (tf == 0) continue;
      auto [it, inserted] = index.term_lookup_.try_emplace(text, static_cast<TermId>(index.terms_.size()));
      if (inserted) {
        index.terms_.push_back(text);
        index.postings_.emplace_back();
      }
      const TermId t = it->second;
      auto existing = std::find_if(terms.begin(), terms.end(), [t](const TermCount& tc) { return tc.term == t; });
      if (existing != terms.end()) {
        existing->tf += tf;
      } else {
        terms.push_back({t, tf});
      }
    }
    std::sort(terms.begin(), terms.end(), [](const TermCount& a, const TermCount& b) { return a.term < b.term; });
    for (const auto& tc : terms) index.postings_[tc.term].push_back({d, tc.tf});
  }
  if (index.terms_.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no document yields a token");
  }
  index.compute_statistics();
  return index;
}

void CorpusIndex::compute_statistics() {
  const auto n = static_cast<double>(doc_count());
  const double log_n = std::log(n);
  idf_.resize(vocab_size());
  nidf_.resize(vocab_size());
  for (TermId t = 0; t < vocab_size(); ++t) {
    const auto df_t = postings_[t].size();
    idf_[t] = df_t == doc_count() ? 0.0 : std::log(n / static_cast<double>(df_t));
    nidf_[t] = doc_count() > 1 ? idf_[t] / log_n : 0.0;
  }

  max_tf_.assign(doc_count(), 0);
  bnr_weights_.resize(doc_count());
  hybrid_weights_.resize(doc_count());
  for (DocIndex d = 0; d < doc_count(); ++d) {
    const auto& terms = doc_terms_[d];
    if (terms.empty()) continue;
    double total = 0.0;
    double largest = 0.0;
    for (const auto& tc : terms) {
      max_tf_[d] = std::max(max_tf_[d], tc.tf);
      const double tfidf = tc.tf * idf_[tc.term];
      total += tfidf;
      largest = std::max(largest, tfidf);
    }
    auto& w = bnr_weights_[d];
    auto& wh = hybrid_weights_[d];
    const double uniform = 1.0 / static_cast<double>(terms.size());
    for (const auto& tc : terms) {
      const double tfidf = tc.tf * idf_[tc.term];
      w.push_back({tc.term, total > 0.0 ? tfidf / total : uniform});
      wh.push_back({tc.term, largest > 0.0 ? tfidf / largest : 1.0});
    }
  }
}

std::optional<TermId> CorpusIndex::find_term(std::string_view term) const {
  auto it = term_lookup_.find(std::string(term));
  if (it == term_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<DocIndex> CorpusIndex::find_doc(std::string_view id) const {
  auto it = doc_lookup_.find(std::string(id));
  if (it == doc_lookup_.end()) return std::nullopt;
  return it->second;
}

DocIndex CorpusIndex::doc_index(std::string_view id) const {
  auto d = find_doc(id);
  if (!d) throw Error(ErrorCode::kUnknownDoc, std::string(id));
  return *d;
}

bool CorpusIndex::contains(DocIndex d, TermId t) const { return tf(d, t) > 0; }

std::uint32_t CorpusIndex::tf(DocIndex d, TermId t) const {
  const auto& terms = doc_terms_.at(d);
  auto it = std::lower_bound(terms.begin(), terms.end(), t,
                             [](const TermCount& tc, TermId key) { return tc.term < key; });
  return it != terms.end() && it->term == t ? it->tf : 0;
}

double CorpusIndex::ntf(DocIndex d, TermId t) const {
  const auto count = tf(d, t);
  return count == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(max_tf_[d]);
}

std::vector<DocIndex> CorpusIndex::rankable_docs() const {
  std::vector<DocIndex> out;
  for (DocIndex d = 0; d < doc_count(); ++d) {
    if (rankable(d)) out.push_back(d);
  }
  return out;
}

void CorpusIndex::check_rankable(DocIndex d) const {
  if (d >= doc_count()) throw Error(ErrorCode::kUnknownDoc, "doc index " + std::to_string(d));
  if (!rankable(d)) throw Error(ErrorCode::kInvalidArgument, "document has no indexed terms: " + doc_ids_[d]);
}

const std::vector<TermWeight>& CorpusIndex::bnr_weights(DocIndex d) const {
  check_rankable(d);
  return bnr_weights_[d];
}

const std::vector<TermWeight>& CorpusIndex::bnr_weights(std::string_view id) const {
  return bnr_weights(doc_index(id));
}

const std::vector<TermWeight>& CorpusIndex::hybrid_weights(DocIndex d) const {
  check_rankable(d);
  return hybrid_weights_[d];
}

const std::vector<TermWeight>& CorpusIndex::hybrid_weights(std::string_view id) const {
  return hybrid_weights(doc_index(id));
}

}  // namespace netir
