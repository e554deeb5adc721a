#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace netir {

/// (query id, doc id) -> relevance in {0, 1}; absent pairs are 0.
using Qrels = std::map<std::string, std::map<std::string, int>>;

/// Ranked doc ids per query id, best first.
using Run = std::map<std::string, std::vector<std::string>>;

/// Mean over the relevant documents of precision at their rank; documents
/// never retrieved contribute 0. Returns 0 when `relevant` is empty.
double average_precision(std::span<const std::string> ranking, const std::set<std::string>& relevant);

/// Relevant documents among the top k, divided by k (k > 0).
double precision_at(std::span<const std::string> ranking, const std::set<std::string>& relevant, std::size_t k);

/// Relevant documents among the top k over all relevant; 0 when none exist.
double recall_at(std::span<const std::string> ranking, const std::set<std::string>& relevant, std::size_t k);

/// Tab-separated "qid docid rel" lines. Throws ParseError.
Qrels parse_qrels(std::istream& in);

/// JSON lines with "qid", "rank" and "doc"; lines carrying "error" register
/// the query with an empty ranking. Throws ParseError.
Run parse_run(std::istream& in);

struct QueryEval {
  std::string qid;
  std::vector<double> precision;  // one per cutoff
  std::vector<double> recall;
  double average_precision = 0.0;
  std::size_t relevant = 0;
};

struct EvalReport {
  std::vector<std::size_t> cutoffs;
  std::vector<QueryEval> queries;  // ascending qid
  double mean_average_precision = 0.0;
  std::size_t evaluated = 0;  // queries with at least one relevant document
  std::vector<std::string> warnings;
};

EvalReport evaluate(const Run& run, const Qrels& qrels, std::span<const std::size_t> cutoffs);

/// Header row, one row per query, then an "all" row; values to 4 decimals.
std::string format_eval_tsv(const EvalReport& report);

}  // namespace netir
