#include "jtree/fixtures.hpp"

#include <algorithm>

namespace jtree {

JtgFixture jtg_fixture_order1() {
  std::vector<std::pair<NodeId, NodeId>> spec;
  auto chain = [&spec](std::vector<NodeId> labels, NodeId parent) {
    for (NodeId v : labels) {
      spec.emplace_back(v, parent);
      parent = v;
    }
  };
  // Branch A: block 1 = {10,12,...,28} (10 nodes, flagged), partial tail.
  chain({10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30, 32, 34, 36}, kRoot);
  // Branch B: block 1 = {11,13,...,31} (11 nodes, flagged), partial tail.
  chain({11, 13, 15, 17, 19, 21, 23, 25, 27, 29, 31, 33, 35}, kRoot);
  // Shared stem 6,7,8 diverging inside the 6-node first block.
  chain({6, 7, 8}, kRoot);
  chain({9, 37, 38, 39, 41}, 8);   // C1: block 1 = {6,7,8,9,37,38}
  chain({50, 51, 52, 53}, 8);      // C2: block 1 = {6,7,8,50,51,52}

  JtgFixture fx;
  fx.tree = TreePrefix::build(spec);
  fx.params.m = {1, 2, 3};
  fx.params.n = {1, 2, 3};
  fx.params.gamma_root = 0;
  fx.params.gamma = {{28, 1}, {31, 2}, {38, 3}, {52, 4}};
  fx.flagged_leaves = {36, 35};
  return fx;
}

JtgFixture jtg_fixture_order2() {
  std::vector<std::pair<NodeId, NodeId>> spec;
  NodeId parent = kRoot;
  for (NodeId v = 3; v <= 14; ++v) {  // shared stem into the third S_1 sub-block
    spec.emplace_back(v, parent);
    parent = v;
  }
  NodeId p1 = 14;
  for (NodeId v = 15; v <= 23; ++v) {  // D1 completes {3..23}
    spec.emplace_back(v, p1);
    p1 = v;
  }
  NodeId p2 = 14;
  for (NodeId v = 24; v <= 32; ++v) {  // D2 completes {3..14} ∪ {24..32}
    spec.emplace_back(v, p2);
    p2 = v;
  }
  JtgFixture fx;
  fx.tree = TreePrefix::build(spec);
  fx.params.m = {1, 2};
  fx.params.n = {2, 3};
  fx.params.gamma_root = 0;
  fx.params.gamma = {{23, 1}, {32, 2}};
  // min block = 3 <= 9, so the spec growth flag fails; the direct sup-norm
  // flag holds (m_1 = 1), which is what the norm-1 lemma uses.
  return fx;
}

JtgFixture jtg_fixture_parallel(int count) {
  std::vector<std::pair<NodeId, NodeId>> spec;
  std::vector<NodeId> leaves;
  NodeId next_free = 100;
  for (int i = 0; i < count; ++i) {
    NodeId start = 10 + i;
    // Block 1 needs `start` nodes: start itself plus start-1 from the high range.
    std::vector<NodeId> labels = {start};
    for (int j = 1; j < start; ++j) labels.push_back(next_free++);
    labels.push_back(next_free++);  // one node past the block, kept partial
    NodeId parent = kRoot;
    for (NodeId v : labels) {
      spec.emplace_back(v, parent);
      parent = v;
    }
    leaves.push_back(labels.back());
  }
  JtgFixture fx;
  fx.tree = TreePrefix::build(spec);
  fx.params.m = {1, 2, 3};
  fx.params.n = {1, 2, 3};
  fx.params.gamma_root = 0;
  // gamma at each first-block maximum (the second-to-last label of a branch);
  // the maxima are ascending across branches by construction.
  std::vector<NodeId> maxima;
  for (NodeId leaf : leaves) {
    Branch sigma = fx.tree.branch_through(leaf);
    maxima.push_back(sigma.nodes[sigma.nodes.size() - 2]);
  }
  std::sort(maxima.begin(), maxima.end());
  int g = 1;
  for (NodeId v : maxima) fx.params.gamma[v] = g++;
  fx.flagged_leaves = leaves;
  return fx;
}

}  // namespace jtree
