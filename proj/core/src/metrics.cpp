#include "netir/metrics.hpp"

#include <cstdio>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "netir/error.hpp"

namespace netir {

namespace {

std::size_t hits_in_top(std::span<const std::string> ranking, const std::set<std::string>& relevant,
                        std::size_t k) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranking.size() && i < k; ++i) {
    if (relevant.contains(ranking[i])) ++hits;
  }
  return hits;
}

std::string fixed4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

}  // namespace

double average_precision(std::span<const std::string> ranking, const std::set<std::string>& relevant) {
  if (relevant.empty()) return 0.0;
  double sum = 0.0;
  std::size_t hits = 0;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (relevant.contains(ranking[i]) && seen.insert(ranking[i]).second) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(relevant.size());
}

double precision_at(std::span<const std::string> ranking, const std::set<std::string>& relevant, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "precision cutoff must be positive");
  return static_cast<double>(hits_in_top(ranking, relevant, k)) / static_cast<double>(k);
}

double recall_at(std::span<const std::string> ranking, const std::set<std::string>& relevant, std::size_t k) {
  if (relevant.empty()) return 0.0;
  return static_cast<double>(hits_in_top(ranking, relevant, k)) / static_cast<double>(relevant.size());
}

Qrels parse_qrels(std::istream& in) {
  Qrels qrels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string qid, doc, rel;
    if (!std::getline(fields, qid, '\t') || !std::getline(fields, doc, '\t') || !std::getline(fields, rel, '\t') ||
        qid.empty() || doc.empty()) {
      throw Error(ErrorCode::kParse, "qrels line " + std::to_string(line_no) + ": expected qid<TAB>docid<TAB>rel");
    }
    if (rel != "0" && rel != "1") {
      throw Error(ErrorCode::kParse, "qrels line " + std::to_string(line_no) + ": relevance must be 0 or 1");
    }
    qrels[qid][doc] = rel == "1" ? 1 : 0;
  }
  return qrels;
}

Run parse_run(std::istream& in) {
  std::map<std::string, std::vector<std::pair<long long, std::string>>> ranked;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto obj = nlohmann::json::parse(line);
      const auto qid = obj.at("qid").get<std::string>();
      auto& list = ranked[qid];
      if (obj.contains("error")) continue;
      list.emplace_back(obj.at("rank").get<long long>(), obj.at("doc").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "run line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  Run run;
  for (auto& [qid, list] : ranked) {
    std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    auto& docs = run[qid];
    for (auto& [rank, doc] : list) docs.push_back(std::move(doc));
  }
  return run;
}

EvalReport evaluate(const Run& run, const Qrels& qrels, std::span<const std::size_t> cutoffs) {
  EvalReport report;
  report.cutoffs.assign(cutoffs.begin(), cutoffs.end());
  for (auto k : report.cutoffs) {
    if (k == 0) throw Error(ErrorCode::kInvalidArgument, "cutoffs must be positive");
  }
  if (run.empty()) report.warnings.push_back("run is empty; MAP is 0");

  double ap_sum = 0.0;
  std::size_t excluded = 0;
  for (const auto& [qid, ranking] : run) {
    std::set<std::string> relevant;
    if (auto it = qrels.find(qid); it != qrels.end()) {
      for (const auto& [doc, rel] : it->second) {
        if (rel > 0) relevant.insert(doc);
      }
    }
    QueryEval q;
    q.qid = qid;
    q.relevant = relevant.size();
    for (auto k : report.cutoffs) {
      q.precision.push_back(precision_at(ranking, relevant, k));
      q.recall.push_back(recall_at(ranking, relevant, k));
    }
    q.average_precision = average_precision(ranking, relevant);
    if (relevant.empty()) {
      ++excluded;
    } else {
      ap_sum += q.average_precision;
      ++report.evaluated;
    }
    report.queries.push_back(std::move(q));
  }
  if (excluded > 0) {
    report.warnings.push_back(std::to_string(excluded) + " queries without relevant documents excluded from MAP");
  }
  report.mean_average_precision = report.evaluated > 0 ? ap_sum / static_cast<double>(report.evaluated) : 0.0;
  return report;
}

std::string format_eval_tsv(const EvalReport& report) {
  std::string out = "qid";
  for (auto k : report.cutoffs) out += "\tP@" + std::to_string(k);
  for (auto k : report.cutoffs) out += "\tR@" + std::to_string(k);
  out += "\tAP\n";

  std::vector<double> mean_p(report.cutoffs.size(), 0.0);
  std::vector<double> mean_r(report.cutoffs.size(), 0.0);
  for (const auto& q : report.queries) {
    out += q.qid;
    for (double p : q.precision) out += "\t" + fixed4(p);
    for (double r : q.recall) out += "\t" + fixed4(r);
    out += "\t" + fixed4(q.average_precision) + "\n";
    if (q.relevant == 0) continue;
    for (std::size_t i = 0; i < report.cutoffs.size(); ++i) {
      mean_p[i] += q.precision[i];
      mean_r[i] += q.recall[i];
    }
  }
  const double denom = report.evaluated > 0 ? static_cast<double>(report.evaluated) : 1.0;
  out += "all";
  for (double p : mean_p) out += "\t" + fixed4(p / denom);
  for (double r : mean_r) out += "\t" + fixed4(r / denom);
  out += "\t" + fixed4(report.mean_average_precision) + "\n";
  return out;
}

}  // namespace netir
