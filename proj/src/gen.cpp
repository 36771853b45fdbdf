#include "jtree/gen.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace jtree {

TreePrefix make_chain(int nodes, NodeId start, int step) {
  std::vector<std::pair<NodeId, NodeId>> spec;
  NodeId prev = kRoot;
  NodeId label = start;
  for (int i = 0; i < nodes; ++i, label += step) {
    spec.emplace_back(label, prev);
    prev = label;
  }
  return TreePrefix::build(spec);
}

TreePrefix make_star(int nodes, NodeId start) {
  std::vector<std::pair<NodeId, NodeId>> spec;
  for (int i = 0; i < nodes; ++i) spec.emplace_back(start + i, i == 0 ? kRoot : start);
  return TreePrefix::build(spec);
}

TreePrefix make_binary(int nodes, NodeId start) {
  std::vector<std::pair<NodeId, NodeId>> spec;
  for (int i = 0; i < nodes; ++i)
    spec.emplace_back(start + i, i == 0 ? kRoot : start + (i - 1) / 2);
  return TreePrefix::build(spec);
}

TreePrefix make_random_tree(int nodes, std::uint64_t seed, NodeId start) {
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> spec;
  std::vector<NodeId> labels;
  NodeId label = start;
  for (int i = 0; i < nodes; ++i) {
    label += rng.below(3);  // occasionally skip labels
    NodeId parent = labels.empty() ? kRoot : labels[rng.below(static_cast<int>(labels.size()))];
    spec.emplace_back(label, parent);
    labels.push_back(label);
    ++label;
  }
  return TreePrefix::build(spec);
}

namespace {

// Canonical shape = sorted list of children's canonical strings, wrapped in
// parentheses. Generating multisets in non-decreasing (size, encoding) order
// yields each unlabeled rooted tree exactly once.
struct Shape {
  int size = 1;
  std::string enc = "()";
  std::vector<int> preorder_parents;  // parent index (0-based) per node, -1 for the root
};

std::vector<std::vector<Shape>> shapes_by_size(int max_nodes) {
  std::vector<std::vector<Shape>> by_size(max_nodes + 1);
  if (max_nodes < 1) return by_size;
  by_size[1].push_back(Shape{1, "()", {-1}});
  for (int n = 2; n <= max_nodes; ++n) {
    // Choose child shapes with total size n-1, non-decreasing by (size, enc).
    std::vector<Shape> current;
    std::vector<const Shape*> chosen;
    auto rec = [&](auto&& self, int remaining, int min_size, const std::string& min_enc) -> void {
      if (remaining == 0) {
        Shape s;
        s.size = n;
        s.enc = "(";
        s.preorder_parents = {-1};
        for (const Shape* c : chosen) {
          s.enc += c->enc;
          int offset = static_cast<int>(s.preorder_parents.size());
          for (std::size_t i = 0; i < c->preorder_parents.size(); ++i)
            s.preorder_parents.push_back(c->preorder_parents[i] < 0
                                             ? 0
                                             : c->preorder_parents[i] + offset);
        }
        s.enc += ")";
        current.push_back(std::move(s));
        return;
      }
      for (int sz = min_size; sz <= remaining; ++sz)
        for (const Shape& c : by_size[sz]) {
          if (sz == min_size && c.enc < min_enc) continue;
          chosen.push_back(&c);
          self(self, remaining - sz, sz, c.enc);
          chosen.pop_back();
        }
    };
    rec(rec, n - 1, 1, "");
    by_size[n] = std::move(current);
  }
  return by_size;
}

}  // namespace

std::vector<TreePrefix> all_tree_shapes(int nodes) {
  if (nodes < 1) throw std::invalid_argument("tree shapes need at least one node");
  auto by_size = shapes_by_size(nodes);
  std::vector<TreePrefix> out;
  for (const Shape& s : by_size[nodes]) {
    std::vector<std::pair<NodeId, NodeId>> spec;
    for (int i = 0; i < s.size; ++i) {
      int parent = s.preorder_parents[i];
      spec.emplace_back(i + 1, parent < 0 ? kRoot : parent + 1);
    }
    out.push_back(TreePrefix::build(spec));
  }
  return out;
}

double random_rational_coeff(Rng& rng) {
  int num = rng.below(49) - 24;  // [-24, 24]
  int den = 1 << rng.below(4);   // {1, 2, 4, 8}
  return static_cast<double>(num) / static_cast<double>(den);
}

SparseVector random_vector(Rng& rng, const TreePrefix& t, double density) {
  SparseVector x;
  for (NodeId v : t.node_list())
    if (rng.uniform() < density) x.set(v, random_rational_coeff(rng));
  if (x.empty() && t.size() > 0) {
    NodeId v = t.node_list()[rng.below(static_cast<int>(t.size()))];
    int num = rng.below(48) - 24;
    x.set(v, (num >= 0 ? num + 1 : num) / 8.0);
  }
  return x;
}

}  // namespace jtree
