#pragma once

#include <functional>
#include <vector>

#include "jtree/tree.hpp"

namespace jtree {

struct PackingOptions {
  /// Maximum number of segments in the family; 0 means unbounded.
  int max_segments = 0;
  /// Segments may only start (top end) at labels >= this.
  NodeId min_top_label = 0;
};

struct Packing {
  double total = 0.0;
  std::vector<Segment> family;  // sorted by (top, bottom)
};

/// Maximizes Σ_k seg_value(top_k, bottom_k) over families of pairwise disjoint
/// segments of the prefix. seg_value(u, v) is the transformed value of the
/// whole chain [u..v] and must be >= 0.
///
/// DP state is (node, start of the open segment), the start ranging over the
/// node's ancestor chain; an open segment either extends into exactly one
/// child or closes at the current node. With a segment cap, per-state values
/// are arrays over "at most c segments closed".
Packing max_disjoint_segment_sum(const TreePrefix& t,
                                 const std::function<double(NodeId, NodeId)>& seg_value,
                                 const PackingOptions& opt = {});

/// Exhaustively enumerates families of pairwise disjoint segments whose
/// endpoints both lie in `anchors` (every optimizing family can be trimmed to
/// this form). Invokes `visit` on every family, including the empty one.
/// Requires the prefix to have at most 64 nodes.
void for_each_disjoint_family(const TreePrefix& t, const std::vector<NodeId>& anchors,
                              const std::function<void(const std::vector<Segment>&)>& visit);

}  // namespace jtree
