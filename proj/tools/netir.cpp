// netir: index a corpus, rank documents with the BNR, PIR or hybrid model,
// run query batches, evaluate runs against qrels and inspect bundles.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netir/bundle.hpp"
#include "netir/error.hpp"
#include "netir/metrics.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 2;

struct IndexArgs {
  std::string corpus;
  std::string stopwords;
  std::string bundle;
  std::size_t min_length = 2;
  double epsilon = 1e-4;
};

struct QueryArgs {
  std::string bundle;
  std::string model = "bnr";
  std::string op = "product";
  bool disjunctive = false;
  std::size_t k = 10;
  std::vector<std::string> text;
};

struct BatchArgs {
  std::string bundle;
  std::string queries;
  std::string model = "bnr";
  std::string op = "product";
  bool disjunctive = false;
  std::size_t k = 10;
  std::string out;
  unsigned jobs = 0;
};

struct EvalArgs {
  std::string run;
  std::string qrels;
  std::vector<std::size_t> cutoffs{1, 5, 10};
  std::string bundle;
  std::string out;
};

struct InspectArgs {
  std::string bundle;
  std::string term;
  std::string doc;
};

const std::map<std::string, netir::ModelKind> kModels{
    {"bnr", netir::ModelKind::kBnr}, {"pir", netir::ModelKind::kPir}, {"hybrid", netir::ModelKind::kHybrid}};
const std::map<std::string, netir::PossOperator> kOperators{{"min", netir::PossOperator::kMin},
                                                            {"product", netir::PossOperator::kProduct}};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw netir::Error(netir::ErrorCode::kIo, "cannot open " + path);
  return in;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw netir::Error(netir::ErrorCode::kIo, "cannot write " + path);
  out << content;
}

netir::QueryRequest make_request(const std::string& model, const std::string& op, bool disjunctive, std::size_t k) {
  netir::QueryRequest req;
  req.model = kModels.at(model);
  req.op = kOperators.at(op);
  req.semantics = disjunctive ? netir::QuerySemantics::kDisjunctive : netir::QuerySemantics::kConjunctive;
  req.k = k;
  return req;
}

int cmd_index(const IndexArgs& args) {
  netir::IndexOptions opts;
  opts.min_token_length = args.min_length;
  opts.clamp_epsilon = args.epsilon;
  if (!args.stopwords.empty()) {
    auto in = open_input(args.stopwords);
    opts.stopwords = netir::read_stopwords(in);
  }
  auto in = open_input(args.corpus);
  const auto docs = netir::read_corpus_jsonl(in);
  const auto bundle = netir::build_bundle(docs, std::move(opts));
  netir::write_bundle(bundle, args.bundle);

  const auto& index = bundle.index;
  const std::size_t unrankable = index.doc_count() - index.rankable_docs().size();
  std::cout << "N=" << index.doc_count() << " M=" << index.vocab_size()
            << " edges=" << bundle.bnr.term_layer().arcs().size() << '\n';
  if (unrankable > 0) std::cerr << "warning: " << unrankable << " documents have no indexed terms\n";
  return kExitOk;
}

int cmd_query(const QueryArgs& args) {
  const auto bundle = netir::read_bundle(args.bundle);
  std::string text;
  for (const auto& part : args.text) {
    if (!text.empty()) text += ' ';
    text += part;
  }
  std::size_t dropped = 0;
  const auto request = make_request(args.model, args.op, args.disjunctive, args.k);
  const auto ranking = netir::run_query(bundle, text, request, &dropped);
  if (dropped > 0) std::cerr << "warning: " << dropped << " query terms not in the vocabulary\n";
  std::cout << netir::ranked_to_jsonl(ranking, request.model);
  return kExitOk;
}

int cmd_batch(const BatchArgs& args) {
  const auto bundle = netir::read_bundle(args.bundle);
  auto in = open_input(args.queries);
  const auto queries = netir::read_queries_jsonl(in);
  const auto request = make_request(args.model, args.op, args.disjunctive, args.k);

  // Each query renders into its own slot; output order is input order.
  std::vector<std::string> blocks(queries.size());
  std::vector<std::string> notes(queries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < queries.size(); i = next++) {
      try {
        std::size_t dropped = 0;
        const auto ranking = netir::run_query(bundle, queries[i].text, request, &dropped);
        blocks[i] = netir::ranked_to_jsonl(ranking, request.model, queries[i].id);
        if (dropped > 0) notes[i] = std::to_string(dropped) + " query terms not in the vocabulary";
      } catch (const netir::Error& e) {
        if (e.code() != netir::ErrorCode::kEmptyQuery) throw;
        nlohmann::ordered_json flag = {{"qid", queries[i].id},
                                       {"model", netir::model_name(request.model)},
                                       {"error", "EmptyQuery"},
                                       {"results", 0}};
        blocks[i] = flag.dump() + "\n";
        notes[i] = "EmptyQuery";
      }
    }
  };
  unsigned jobs = args.jobs == 0 ? std::max(1U, std::thread::hardware_concurrency()) : args.jobs;
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, queries.size())));
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      try {
        worker();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::string output;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    output += blocks[i];
    if (!notes[i].empty()) std::cerr << "warning: query " << queries[i].id << ": " << notes[i] << '\n';
  }
  write_output(args.out, output);
  return kExitOk;
}

int cmd_eval(const EvalArgs& args) {
  auto run_in = open_input(args.run);
  const auto run = netir::parse_run(run_in);
  auto qrels_in = open_input(args.qrels);
  auto qrels = netir::parse_qrels(qrels_in);

  if (!args.bundle.empty()) {
    const auto bundle = netir::read_bundle(args.bundle);
    std::size_t unknown = 0;
    for (auto& [qid, judged] : qrels) {
      std::erase_if(judged, [&](const auto& entry) {
        const bool missing = !bundle.index.find_doc(entry.first).has_value();
        unknown += missing ? 1 : 0;
        return missing;
      });
    }
    if (unknown > 0) std::cerr << "warning: " << unknown << " qrels entries name unknown documents; ignored\n";
  }

  const auto report = netir::evaluate(run, qrels, args.cutoffs);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  write_output(args.out, netir::format_eval_tsv(report));
  return kExitOk;
}

int cmd_inspect(const InspectArgs& args) {
  const auto bundle = netir::read_bundle(args.bundle);
  if (!args.term.empty()) {
    const auto t = bundle.index.find_term(args.term);
    if (!t) throw netir::Error(netir::ErrorCode::kInvalidArgument, "unknown term: " + args.term);
    std::cout << netir::term_tables_to_json(bundle, *t) << '\n';
    return kExitOk;
  }
  if (!args.doc.empty()) {
    std::cout << netir::doc_tables_to_json(bundle, bundle.index.doc_index(args.doc)) << '\n';
    return kExitOk;
  }
  std::cout << netir::network_to_json(bundle.network, bundle.index) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian-network and possibilistic document retrieval"};
  app.require_subcommand(1);

  IndexArgs index_args;
  auto* index_cmd = app.add_subcommand("index", "Build a model bundle from a JSONL corpus");
  index_cmd->add_option("corpus", index_args.corpus, "Corpus file, one {\"id\",\"text\"} object per line")
      ->required();
  index_cmd->add_option("--bundle,-o", index_args.bundle, "Output bundle directory")->required();
  index_cmd->add_option("--stopwords", index_args.stopwords, "Stopword list, one word per line");
  index_cmd->add_option("--min-length", index_args.min_length, "Minimum token length")->capture_default_str();
  index_cmd->add_option("--epsilon", index_args.epsilon, "Clamp for estimated probabilities")
      ->check(CLI::Range(0.0, 0.4999999))
      ->capture_default_str();

  QueryArgs query_args;
  auto* query_cmd = app.add_subcommand("query", "Rank documents for one query");
  query_cmd->add_option("--bundle", query_args.bundle, "Bundle directory")->required();
  query_cmd->add_option("--model", query_args.model)->check(CLI::IsMember({"bnr", "pir", "hybrid"}))
      ->capture_default_str();
  query_cmd->add_option("--op", query_args.op, "Hybrid combination operator")
      ->check(CLI::IsMember({"min", "product"}))
      ->capture_default_str();
  query_cmd->add_flag("--disjunctive", query_args.disjunctive, "PIR: any query term suffices");
  query_cmd->add_option("--k", query_args.k, "Number of results")->capture_default_str();
  query_cmd->add_option("text", query_args.text, "Query text")->required();

  BatchArgs batch_args;
  auto* batch_cmd = app.add_subcommand("batch", "Rank documents for every query of a JSONL file");
  batch_cmd->add_option("--bundle", batch_args.bundle, "Bundle directory")->required();
  batch_cmd->add_option("--queries", batch_args.queries, "Queries, one {\"id\",\"text\"} object per line")
      ->required();
  batch_cmd->add_option("--model", batch_args.model)->check(CLI::IsMember({"bnr", "pir", "hybrid"}))
      ->capture_default_str();
  batch_cmd->add_option("--op", batch_args.op)->check(CLI::IsMember({"min", "product"}))->capture_default_str();
  batch_cmd->add_flag("--disjunctive", batch_args.disjunctive, "PIR: any query term suffices");
  batch_cmd->add_option("--k", batch_args.k)->capture_default_str();
  batch_cmd->add_option("--out", batch_args.out, "Run file (default: standard output)");
  batch_cmd->add_option("--jobs", batch_args.jobs, "Worker threads (0: hardware concurrency)");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Precision, recall and MAP of a run file");
  eval_cmd->add_option("--run", eval_args.run, "Run file from `batch`")->required();
  eval_cmd->add_option("--qrels", eval_args.qrels, "Judgments, qid<TAB>docid<TAB>rel")->required();
  eval_cmd->add_option("--k", eval_args.cutoffs, "Cutoffs")->delimiter(',')->capture_default_str();
  eval_cmd->add_option("--bundle", eval_args.bundle, "Bundle used to flag unknown doc ids");
  eval_cmd->add_option("--out", eval_args.out, "TSV output (default: standard output)");

  InspectArgs inspect_args;
  auto* inspect_cmd = app.add_subcommand("inspect", "Print the network or the tables of a term/document");
  inspect_cmd->add_option("--bundle", inspect_args.bundle, "Bundle directory")->required();
  inspect_cmd->add_option("--term", inspect_args.term, "Show tables of this term");
  inspect_cmd->add_option("--doc", inspect_args.doc, "Show weights and tables of this document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*index_cmd) return cmd_index(index_args);
    if (*query_cmd) return cmd_query(query_args);
    if (*batch_cmd) return cmd_batch(batch_args);
    if (*eval_cmd) return cmd_eval(eval_args);
    if (*inspect_cmd) return cmd_inspect(inspect_args);
  } catch (const netir::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
