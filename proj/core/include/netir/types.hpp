#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace netir {

using TermId = std::uint32_t;
using DocIndex = std::uint32_t;
using NodeId = std::uint32_t;

/// Binary domain shared by term, document and query variables.
enum class Value : std::uint8_t { kNotRelevant = 0, kRelevant = 1 };

inline constexpr std::array<Value, 2> kValues = {Value::kNotRelevant, Value::kRelevant};

inline constexpr std::size_t index_of(Value v) { return static_cast<std::size_t>(v); }

/// A pair of numbers over {not-relevant, relevant}: a probability or a
/// possibility row, a message, or a marginal.
struct ValuePair {
  double not_relevant = 0.0;
  double relevant = 0.0;

  double& operator[](Value v) { return v == Value::kRelevant ? relevant : not_relevant; }
  double operator[](Value v) const { return v == Value::kRelevant ? relevant : not_relevant; }

  double sum() const { return not_relevant + relevant; }
  double max() const { return relevant > not_relevant ? relevant : not_relevant; }

  friend bool operator==(const ValuePair&, const ValuePair&) = default;
};

/// Rows of one node's conditional table, indexed by parent configuration.
/// Bit k of the row index is set when the k-th parent (in Dag::parents
/// order) is relevant. A root node has exactly one row.
struct NodeTable {
  std::vector<ValuePair> rows;
};

using TableSet = std::vector<NodeTable>;

/// Observed values; keys must be nodes of the network being queried.
using Evidence = std::map<NodeId, Value>;

}  // namespace netir
