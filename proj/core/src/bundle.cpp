#include "netir/bundle.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "netir/error.hpp"

namespace netir {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kCorpusFile = "corpus.json";
constexpr const char* kNetworkFile = "network.json";
constexpr const char* kCptFile = "cpts.json";
constexpr const char* kPossFile = "poss_tables.json";

ojson pair_json(const ValuePair& p) { return ojson::array({p.not_relevant, p.relevant}); }

ValuePair pair_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kParse, "expected [not_relevant, relevant] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

ojson tables_json(const Dag& dag, const TableSet& tables, const CorpusIndex& index) {
  ojson nodes = ojson::array();
  for (NodeId x = 0; x < dag.size(); ++x) {
    ojson rows = ojson::array();
    for (const auto& row : tables[x].rows) rows.push_back(pair_json(row));
    nodes.push_back({{"node", x}, {"term", index.term(x)}, {"parents", dag.parents(x)}, {"rows", std::move(rows)}});
  }
  return nodes;
}

TableSet tables_from(const nlohmann::json& nodes, const Dag& dag) {
  if (!nodes.is_array() || nodes.size() != dag.size()) throw Error(ErrorCode::kParse, "table count mismatch");
  TableSet tables(dag.size());
  for (const auto& node : nodes) {
    const auto x = node.at("node").get<NodeId>();
    if (x >= dag.size() || node.at("parents").get<std::vector<NodeId>>() != dag.parents(x)) {
      throw Error(ErrorCode::kParse, "table parents do not match the network");
    }
    for (const auto& row : node.at("rows")) tables[x].rows.push_back(pair_from(row));
  }
  return tables;
}

void write_file(const std::filesystem::path& path, const ojson& doc) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << doc.dump(1) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

nlohmann::json read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

ojson score_json(const RankedEntry& entry) {
  if (const auto* p = std::get_if<double>(&entry.score)) return *p;
  const auto& pair = std::get<ScorePair>(entry.score);
  return {{"pi", pair.possibility}, {"n", pair.necessity}};
}

}  // namespace

Bundle build_bundle(std::span<const Document> docs, IndexOptions opts) {
  CorpusIndex index = CorpusIndex::build(docs, std::move(opts));
  Network network = learn_network(index);
  BnrModel bnr = BnrModel::estimate(index, network.term_layer());
  HybridModel hybrid = HybridModel::from_bnr(bnr);
  return Bundle{std::move(index), std::move(network), std::move(bnr), std::move(hybrid)};
}

void write_bundle(const Bundle& bundle, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  const auto& index = bundle.index;

  std::vector<std::string> stopwords(index.options().stopwords.begin(), index.options().stopwords.end());
  std::sort(stopwords.begin(), stopwords.end());
  ojson vocabulary = ojson::array();
  ojson df = ojson::array();
  ojson idf = ojson::array();
  ojson nidf = ojson::array();
  for (TermId t = 0; t < index.vocab_size(); ++t) {
    vocabulary.push_back(index.term(t));
    df.push_back(index.df(t));
    idf.push_back(index.idf(t));
    nidf.push_back(index.nidf(t));
  }
  ojson documents = ojson::array();
  for (DocIndex d = 0; d < index.doc_count(); ++d) {
    ojson terms = ojson::array();
    for (const auto& tc : index.doc_terms(d)) terms.push_back(ojson::array({tc.term, tc.tf}));
    documents.push_back({{"id", index.doc_id(d)}, {"terms", std::move(terms)}});
  }
  write_file(dir / kCorpusFile,
             {{"format", "netir-corpus/1"},
              {"options",
               {{"min_token_length", index.options().min_token_length},
                {"clamp_epsilon", index.options().clamp_epsilon},
                {"stopwords", stopwords}}},
              {"doc_count", index.doc_count()},
              {"vocab_size", index.vocab_size()},
              {"vocabulary", std::move(vocabulary)},
              {"df", std::move(df)},
              {"idf", std::move(idf)},
              {"nidf", std::move(nidf)},
              {"documents", std::move(documents)}});

  write_file(dir / kNetworkFile, ojson::parse(network_to_json(bundle.network, index, -1)));

  const Dag& layer = bundle.bnr.term_layer();
  write_file(dir / kCptFile, {{"format", "netir-cpts/1"},
                              {"epsilon", index.options().clamp_epsilon},
                              {"nodes", tables_json(layer, bundle.bnr.cpts(), index)}});

  ojson priors = ojson::array();
  for (const auto& p : pir_term_priors(index)) priors.push_back(pair_json(p));
  write_file(dir / kPossFile, {{"format", "netir-poss/1"},
                               {"hybrid", {{"transform", "ratio"}, {"nodes", tables_json(layer, bundle.hybrid.tables(), index)}}},
                               {"pir", {{"term_priors", std::move(priors)}}}});
}

Bundle read_bundle(const std::filesystem::path& dir) {
  const auto corpus = read_file(dir / kCorpusFile);
  const auto net_json = read_file(dir / kNetworkFile);
  const auto cpt_json = read_file(dir / kCptFile);
  const auto poss_json = read_file(dir / kPossFile);
  try {
    IndexOptions opts;
    const auto& o = corpus.at("options");
    opts.min_token_length = o.at("min_token_length").get<std::size_t>();
    opts.clamp_epsilon = o.at("clamp_epsilon").get<double>();
    for (const auto& w : o.at("stopwords")) opts.stopwords.insert(w.get<std::string>());

    const auto vocabulary = corpus.at("vocabulary").get<std::vector<std::string>>();
    std::vector<TokenizedDocument> docs;
    for (const auto& d : corpus.at("documents")) {
      TokenizedDocument doc{d.at("id").get<std::string>(), {}};
      for (const auto& tc : d.at("terms")) {
        doc.term_counts.emplace_back(vocabulary.at(tc.at(0).get<TermId>()), tc.at(1).get<std::uint32_t>());
      }
      docs.push_back(std::move(doc));
    }
    CorpusIndex index = CorpusIndex::from_tokenized(docs, std::move(opts));
    for (TermId t = 0; t < index.vocab_size(); ++t) {
      if (index.term(t) != vocabulary.at(t)) throw Error(ErrorCode::kParse, "vocabulary order mismatch");
    }

    Network network;
    network.term_count = net_json.at("term_count").get<std::size_t>();
    network.doc_nodes.assign(index.doc_count(), kNoNode);
    for (const auto& node : net_json.at("nodes")) {
      const bool is_term = node.at("kind").get<std::string>() == "term";
      const auto ref = is_term ? index.find_term(node.at("label").get<std::string>())
                               : index.find_doc(node.at("label").get<std::string>());
      if (!ref) throw Error(ErrorCode::kParse, "network node refers to unknown label");
      const NodeId id = network.dag.add_node({is_term ? NodeKind::kTerm : NodeKind::kDocument, *ref});
      if (id != node.at("id").get<NodeId>()) throw Error(ErrorCode::kParse, "network node ids must be dense");
      if (!is_term) network.doc_nodes[*ref] = id;
    }
    for (const auto& arc : net_json.at("arcs")) network.dag.add_arc(arc.at(0).get<NodeId>(), arc.at(1).get<NodeId>());
    network.roots = net_json.at("roots").get<std::vector<NodeId>>();
    if (network.term_count != index.vocab_size() || !validate_polytree(network.dag)) {
      throw Error(ErrorCode::kParse, "network does not match the corpus");
    }

    Dag layer = network.term_layer();
    BnrModel bnr(layer, tables_from(cpt_json.at("nodes"), layer));
    HybridModel hybrid(layer, tables_from(poss_json.at("hybrid").at("nodes"), layer));
    return Bundle{std::move(index), std::move(network), std::move(bnr), std::move(hybrid)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bundle: ") + e.what());
  }
}

std::vector<Document> read_corpus_jsonl(std::istream& in) {
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto obj = nlohmann::json::parse(line);
      docs.push_back({obj.at("id").get<std::string>(), obj.at("text").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return docs;
}

std::unordered_set<std::string> read_stopwords(std::istream& in) {
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    std::string word = line.substr(begin, end - begin + 1);
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c; });
    words.insert(std::move(word));
  }
  return words;
}

std::vector<QueryRecord> read_queries_jsonl(std::istream& in) {
  std::vector<QueryRecord> queries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto obj = nlohmann::json::parse(line);
      queries.push_back({obj.at("id").get<std::string>(), obj.at("text").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "queries line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return queries;
}

std::string_view model_name(ModelKind model) {
  switch (model) {
    case ModelKind::kBnr: return "bnr";
    case ModelKind::kPir: return "pir";
    case ModelKind::kHybrid: return "hybrid";
  }
  return "unknown";
}

RankedList run_query(const Bundle& bundle, std::string_view text, const QueryRequest& request,
                     std::size_t* dropped_terms) {
  const QueryTerms query = parse_query(bundle.index, text);
  if (dropped_terms) *dropped_terms = query.dropped;
  switch (request.model) {
    case ModelKind::kBnr: return bnr_retrieve(bundle.index, bundle.bnr, query, request.k);
    case ModelKind::kPir: return pir_retrieve(bundle.index, query, request.k, request.semantics);
    case ModelKind::kHybrid: return hybrid_retrieve(bundle.index, bundle.hybrid, query, request.k, request.op);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown model");
}

std::string ranked_to_jsonl(const RankedList& ranking, ModelKind model, const std::optional<std::string>& qid) {
  std::string out;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    ojson line;
    if (qid) line["qid"] = *qid;
    line["rank"] = i + 1;
    line["doc"] = ranking[i].doc_id;
    line["score"] = score_json(ranking[i]);
    line["model"] = model_name(model);
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::string network_to_json(const Network& network, const CorpusIndex& index, int indent) {
  ojson nodes = ojson::array();
  for (NodeId x = 0; x < network.dag.size(); ++x) {
    const auto& v = network.dag.variable(x);
    const bool is_term = v.kind == NodeKind::kTerm;
    nodes.push_back({{"id", x},
                     {"kind", is_term ? "term" : "document"},
                     {"label", is_term ? index.term(v.index) : index.doc_id(v.index)}});
  }
  ojson arcs = ojson::array();
  std::size_t term_arcs = 0;
  for (const auto& arc : network.dag.arcs()) {
    arcs.push_back(ojson::array({arc.parent, arc.child}));
    if (arc.child < network.term_count) ++term_arcs;
  }
  const ojson doc = {{"format", "netir-network/1"},
                     {"term_count", network.term_count},
                     {"term_arcs", term_arcs},
                     {"roots", network.roots},
                     {"nodes", std::move(nodes)},
                     {"arcs", std::move(arcs)}};
  return doc.dump(indent);
}

std::string term_tables_to_json(const Bundle& bundle, TermId term, int indent) {
  if (term >= bundle.index.vocab_size()) throw Error(ErrorCode::kInvalidArgument, "unknown term id");
  const Dag& layer = bundle.bnr.term_layer();
  ojson parents = ojson::array();
  for (NodeId p : layer.parents(term)) parents.push_back(bundle.index.term(p));
  ojson cpt = ojson::array();
  for (const auto& row : bundle.bnr.cpts()[term].rows) cpt.push_back(pair_json(row));
  ojson poss = ojson::array();
  for (const auto& row : bundle.hybrid.tables()[term].rows) poss.push_back(pair_json(row));
  const ojson doc = {{"term", bundle.index.term(term)},
                     {"df", bundle.index.df(term)},
                     {"idf", bundle.index.idf(term)},
                     {"nidf", bundle.index.nidf(term)},
                     {"parents", std::move(parents)},
                     {"cpt", std::move(cpt)},
                     {"poss", std::move(poss)}};
  return doc.dump(indent);
}

std::string doc_tables_to_json(const Bundle& bundle, DocIndex doc, int indent) {
  const auto& index = bundle.index;
  const PirTables pir = pir_tables(index, doc);
  const auto& w = index.bnr_weights(doc);
  const auto& wh = index.hybrid_weights(doc);
  ojson terms = ojson::array();
  for (std::size_t i = 0; i < w.size(); ++i) {
    terms.push_back({{"term", index.term(w[i].term)},
                     {"tf", index.tf(doc, w[i].term)},
                     {"w", w[i].weight},
                     {"w_hybrid", wh[i].weight},
                     {"pi_given_d", pair_json(pir.terms[i].given_relevant)},
                     {"pi_given_not_d", pair_json(pir.terms[i].given_not_relevant)}});
  }
  const ojson out = {{"doc", index.doc_id(doc)}, {"terms", std::move(terms)}};
  return out.dump(indent);
}

}  // namespace netir
