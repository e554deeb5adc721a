#include "netir/dag.hpp"

#include <numeric>
#include <string>

#include "netir/error.hpp"

namespace netir {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // False when a and b were already joined.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Dag::Dag(std::size_t term_nodes) {
  for (std::size_t t = 0; t < term_nodes; ++t) add_node({NodeKind::kTerm, static_cast<std::uint32_t>(t)});
}

NodeId Dag::add_node(Variable v) {
  nodes_.push_back(v);
  in_.emplace_back();
  out_.emplace_back();
  return static_cast<NodeId>(nodes_.size() - 1);
}

void Dag::add_arc(NodeId parent, NodeId child) {
  if (parent >= size() || child >= size()) {
    throw Error(ErrorCode::kInvalidArgument, "arc endpoint out of range");
  }
  if (parent == child) {
    throw Error(ErrorCode::kInvalidArgument, "self loop on node " + std::to_string(parent));
  }
  in_[child].push_back(arcs_.size());
  out_[parent].push_back(arcs_.size());
  arcs_.push_back({parent, child});
}

std::vector<NodeId> Dag::parents(NodeId n) const {
  std::vector<NodeId> out;
  for (auto a : in_.at(n)) out.push_back(arcs_[a].parent);
  return out;
}

std::vector<NodeId> Dag::children(NodeId n) const {
  std::vector<NodeId> out;
  for (auto a : out_.at(n)) out.push_back(arcs_[a].child);
  return out;
}

bool is_singly_connected(const Dag& dag) {
  DisjointSets sets(dag.size());
  for (const auto& arc : dag.arcs()) {
    if (!sets.unite(arc.parent, arc.child)) return false;
  }
  return true;
}

bool validate_polytree(const Dag& dag) {
  DisjointSets sets(dag.size());
  for (const auto& arc : dag.arcs()) {
    const bool parent_is_term = dag.variable(arc.parent).kind == NodeKind::kTerm;
    const bool child_is_term = dag.variable(arc.child).kind == NodeKind::kTerm;
    if (!parent_is_term) return false;  // document nodes are sinks
    if (child_is_term && !sets.unite(arc.parent, arc.child)) return false;
  }
  return true;
}

}  // namespace netir
