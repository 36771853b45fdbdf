#include "jtree/tree.hpp"

#include <algorithm>
#include <string>

#include "jtree/errors.hpp"

namespace jtree {

namespace {
std::string node_str(NodeId v) { return v == kRoot ? "ROOT" : std::to_string(v); }
}  // namespace

bool Branch::contains(NodeId v) const {
  return std::binary_search(nodes.begin(), nodes.end(), v);
}

TreePrefix TreePrefix::build(const std::vector<std::pair<NodeId, NodeId>>& spec) {
  TreePrefix t;
  for (const auto& [node, parent] : spec) {
    if (node <= 0) fail(Errc::schema, "node labels must be positive, got " + node_str(node));
    if (t.index_.count(node)) fail(Errc::duplicate_node, "node " + node_str(node) + " listed twice");
    if (parent != kRoot) {
      if (!t.index_.count(parent))
        // A parent referencing a later (larger) label is an order violation;
        // anything else that is absent would be a forward reference, i.e. a cycle.
        fail(parent >= node ? Errc::parent_ge_child : Errc::cycle,
             "parent " + node_str(parent) + " of node " + node_str(node) + " not seen yet");
      if (parent >= node)
        fail(Errc::parent_ge_child,
             "parent " + node_str(parent) + " >= child " + node_str(node));
    }
    t.index_[node] = 0;  // placeholder; reassigned below
    t.nodes_.push_back(node);
    t.children_[parent].push_back(node);
    if (!t.children_.count(node)) t.children_[node] = {};
  }
  std::sort(t.nodes_.begin(), t.nodes_.end());
  int idx = 0;
  for (NodeId v : t.nodes_) t.index_[v] = idx++;
  t.parent_.assign(t.nodes_.size(), kRoot);
  for (const auto& [node, parent] : spec) t.parent_[t.index_[node]] = parent;
  t.depth_.assign(t.nodes_.size(), 0);
  for (NodeId v : t.nodes_) {
    NodeId p = t.parent_[t.index_[v]];
    t.depth_[t.index_[v]] = (p == kRoot) ? 0 : t.depth_[t.index_[p]] + 1;
  }
  for (auto& [v, ch] : t.children_) std::sort(ch.begin(), ch.end());
  return t;
}

void TreePrefix::require_node(NodeId v) const {
  if (!contains(v)) fail(Errc::unknown_node, "node " + node_str(v) + " not in the prefix");
}

NodeId TreePrefix::parent(NodeId v) const {
  require_node(v);
  return parent_[index_.at(v)];
}

const std::vector<NodeId>& TreePrefix::children(NodeId v) const {
  if (v != kRoot) require_node(v);
  auto it = children_.find(v);
  return it == children_.end() ? empty_children_ : it->second;
}

int TreePrefix::depth(NodeId v) const {
  require_node(v);
  return depth_[index_.at(v)];
}

int TreePrefix::dense_index(NodeId v) const {
  require_node(v);
  return index_.at(v);
}

bool TreePrefix::is_ancestor(NodeId a, NodeId b) const {
  require_node(a);
  require_node(b);
  // parent(v) < v, so walk b upward until we pass below a.
  NodeId cur = b;
  while (cur != kRoot && cur > a) cur = parent_[index_.at(cur)];
  return cur == a;
}

bool TreePrefix::is_comparable(NodeId a, NodeId b) const {
  if (a == b) {
    require_node(a);
    return true;
  }
  return a < b ? is_ancestor(a, b) : is_ancestor(b, a);
}

Segment TreePrefix::segment_between(NodeId m, NodeId n) const {
  require_node(m);
  require_node(n);
  if (!is_ancestor(m, n))
    fail(Errc::not_comparable, node_str(m) + " is not an ancestor of " + node_str(n));
  Segment s;
  NodeId cur = n;
  while (cur != m) {
    s.nodes.push_back(cur);
    cur = parent_[index_.at(cur)];
  }
  s.nodes.push_back(m);
  std::reverse(s.nodes.begin(), s.nodes.end());
  return s;
}

std::vector<NodeId> TreePrefix::path_from_root(NodeId v) const {
  require_node(v);
  std::vector<NodeId> path;
  for (NodeId cur = v; cur != kRoot; cur = parent_[index_.at(cur)]) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Branch> TreePrefix::leaf_branches() const {
  std::vector<Branch> out;
  std::vector<NodeId> stack;
  // Children lists are sorted, so a DFS taking them in order emits branches
  // in lexicographic order of their label sequences.
  auto dfs = [&](auto&& self, NodeId v) -> void {
    stack.push_back(v);
    const auto& ch = children(v);
    if (ch.empty()) {
      out.push_back(Branch{stack});
    } else {
      for (NodeId c : ch) self(self, c);
    }
    stack.pop_back();
  };
  for (NodeId top : children(kRoot)) dfs(dfs, top);
  return out;
}

Branch TreePrefix::branch_through(NodeId v) const {
  require_node(v);
  std::vector<NodeId> nodes = path_from_root(v);
  NodeId cur = v;
  while (!children(cur).empty()) {
    cur = children(cur).front();
    nodes.push_back(cur);
  }
  return Branch{nodes};
}

bool segments_disjoint(const Segment& a, const Segment& b) {
  // Chains are strictly increasing; a merge-style scan suffices.
  std::size_t i = 0, j = 0;
  while (i < a.nodes.size() && j < b.nodes.size()) {
    if (a.nodes[i] == b.nodes[j]) return false;
    if (a.nodes[i] < b.nodes[j])
      ++i;
    else
      ++j;
  }
  return true;
}

}  // namespace jtree
