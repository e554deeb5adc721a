#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "netir/bnr.hpp"
#include "netir/corpus.hpp"
#include "netir/hybrid.hpp"
#include "netir/network.hpp"
#include "netir/pir.hpp"
#include "netir/ranking.hpp"

namespace netir {

/// Everything the query side needs, learned once from a corpus.
struct Bundle {
  CorpusIndex index;
  Network network;
  BnrModel bnr;
  HybridModel hybrid;
};

Bundle build_bundle(std::span<const Document> docs, IndexOptions opts = {});

/// Writes corpus.json, network.json, cpts.json and poss_tables.json into
/// `dir` (created if missing). Output is byte-deterministic.
void write_bundle(const Bundle& bundle, const std::filesystem::path& dir);

/// Throws IoError or ParseError.
Bundle read_bundle(const std::filesystem::path& dir);

/// One {"id", "text"} object per line. Throws ParseError.
std::vector<Document> read_corpus_jsonl(std::istream& in);

/// One word per line; blank lines ignored; lowercased.
std::unordered_set<std::string> read_stopwords(std::istream& in);

struct QueryRecord {
  std::string id;
  std::string text;
};

std::vector<QueryRecord> read_queries_jsonl(std::istream& in);

enum class ModelKind { kBnr, kPir, kHybrid };

std::string_view model_name(ModelKind model);

struct QueryRequest {
  ModelKind model = ModelKind::kBnr;
  PossOperator op = PossOperator::kProduct;
  QuerySemantics semantics = QuerySemantics::kConjunctive;
  std::size_t k = 10;
};

/// Tokenizes, resolves and ranks with the requested model. Throws EmptyQuery.
RankedList run_query(const Bundle& bundle, std::string_view text, const QueryRequest& request,
                     std::size_t* dropped_terms = nullptr);

/// One JSON object per entry: {"qid"?, "rank", "doc", "score", "model"},
/// newline terminated. Probabilistic scores are numbers; possibilistic ones
/// are {"pi", "n"}.
std::string ranked_to_jsonl(const RankedList& ranking, ModelKind model, const std::optional<std::string>& qid = {});

/// Structure summary used by `inspect`: nodes, arcs and roots.
std::string network_to_json(const Network& network, const CorpusIndex& index, int indent = 2);

/// Table rows (probabilistic and possibilistic) of one term node.
std::string term_tables_to_json(const Bundle& bundle, TermId term, int indent = 2);

/// Weights and PIR tables of one document.
std::string doc_tables_to_json(const Bundle& bundle, DocIndex doc, int indent = 2);

}  // namespace netir
