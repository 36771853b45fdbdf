#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace jtree {

using NodeId = int;

/// Sentinel for the subjoined root; never carries a coefficient.
inline constexpr NodeId kRoot = 0;

/// A chain [top, bottom] in the tree order; `nodes` lists the full chain,
/// strictly increasing in label.
struct Segment {
  std::vector<NodeId> nodes;

  NodeId top() const { return nodes.front(); }
  NodeId bottom() const { return nodes.back(); }
  bool operator==(const Segment& o) const { return nodes == o.nodes; }
};

/// Root-to-leaf chain of a prefix (a maximal segment).
struct Branch {
  std::vector<NodeId> nodes;

  NodeId leaf() const { return nodes.back(); }
  bool contains(NodeId v) const;
  bool operator==(const Branch& o) const { return nodes == o.nodes; }
};

/// Finite, ancestor-closed prefix of the infinitely branching tree on the
/// positive integers, with parent(n) < n. Immutable after build.
class TreePrefix {
 public:
  /// Builds from (node, parent) pairs; parents must appear before children
  /// or be kRoot. Rejects duplicate labels and order-incompatible links.
  static TreePrefix build(const std::vector<std::pair<NodeId, NodeId>>& spec);

  const std::vector<NodeId>& node_list() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool contains(NodeId v) const { return index_.count(v) != 0; }

  NodeId parent(NodeId v) const;
  const std::vector<NodeId>& children(NodeId v) const;  // v may be kRoot
  int depth(NodeId v) const;                            // root children have depth 0

  /// a ⪯ b in the tree partial order (reflexive).
  bool is_ancestor(NodeId a, NodeId b) const;
  bool is_comparable(NodeId a, NodeId b) const;

  /// The chain {k : m ⪯ k ⪯ n}; requires m ⪯ n.
  Segment segment_between(NodeId m, NodeId n) const;

  /// Path kRoot → v, excluding the root sentinel.
  std::vector<NodeId> path_from_root(NodeId v) const;

  /// All root-to-leaf chains, ordered lexicographically by labels.
  std::vector<Branch> leaf_branches() const;

  /// Extends v downward to a leaf, taking the smallest child at each step.
  /// Returns the full branch through that leaf.
  Branch branch_through(NodeId v) const;

  /// Dense index of a node (0-based, by sorted label order).
  int dense_index(NodeId v) const;

 private:
  void require_node(NodeId v) const;

  std::vector<NodeId> nodes_;                   // sorted
  std::map<NodeId, int> index_;                 // label -> dense index
  std::vector<NodeId> parent_;                  // by dense index
  std::vector<int> depth_;                      // by dense index
  std::map<NodeId, std::vector<NodeId>> children_;
  std::vector<NodeId> empty_children_;
};

bool segments_disjoint(const Segment& a, const Segment& b);

}  // namespace jtree
