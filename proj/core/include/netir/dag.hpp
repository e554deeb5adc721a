#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "netir/types.hpp"

namespace netir {

enum class NodeKind : std::uint8_t { kTerm, kDocument };

/// A binary network variable: a term id or a document index.
struct Variable {
  NodeKind kind = NodeKind::kTerm;
  std::uint32_t index = 0;

  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Arc {
  NodeId parent;
  NodeId child;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Directed graph over binary variables. Parent order of a node is the
/// order in which its incoming arcs were added; conditional tables index
/// their rows by that order.
class Dag {
 public:
  Dag() = default;
  explicit Dag(std::size_t term_nodes);

  NodeId add_node(Variable v);
  /// Throws InvalidArgument on out-of-range ids or a self loop.
  void add_arc(NodeId parent, NodeId child);

  std::size_t size() const { return nodes_.size(); }
  const Variable& variable(NodeId n) const { return nodes_.at(n); }
  std::span<const Arc> arcs() const { return arcs_; }
  /// Indices into arcs() of the arcs entering / leaving a node.
  std::span<const std::size_t> parent_arcs(NodeId n) const { return in_.at(n); }
  std::span<const std::size_t> child_arcs(NodeId n) const { return out_.at(n); }

  std::vector<NodeId> parents(NodeId n) const;
  std::vector<NodeId> children(NodeId n) const;
  std::size_t parent_count(NodeId n) const { return in_.at(n).size(); }

 private:
  std::vector<Variable> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
};

/// True when the underlying undirected multigraph of all arcs is a forest.
bool is_singly_connected(const Dag& dag);

/// Term-layer polytree check: term-to-term arcs form an undirected forest,
/// document nodes have only term parents and no children.
bool validate_polytree(const Dag& dag);

/// Rows of a conditional table for a node with the given parent count.
inline std::size_t row_count(std::size_t parent_count) { return std::size_t{1} << parent_count; }

}  // namespace netir
