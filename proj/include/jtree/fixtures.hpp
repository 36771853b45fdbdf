#pragma once

#include "jtree/jtg.hpp"
#include "jtree/tree.hpp"

namespace jtree {

/// Desk-scale JT_G instances. Branch labels are chosen so that first blocks
/// complete and (where stated) pass the growth flags; later blocks run into
/// the finite window and are reported partial or unpartitioned.
struct JtgFixture {
  TreePrefix tree;
  JTGParams params;
  std::vector<NodeId> flagged_leaves;  // leaves whose first block passes both flags
};

/// Order-1 first blocks: two incomparable branches rooted at 10 and 11 (both
/// flagged), plus a shared-stem pair diverging inside its first block (roots
/// at 6) for tree-compatibility checks.
JtgFixture jtg_fixture_order1();

/// Order-2 first block (maximal S_2 set, non-uniform weights): a shared stem
/// 3..14 diverging into two branches, both completing the 21-node block.
JtgFixture jtg_fixture_order2();

/// Many incomparable flagged branches (roots 10..10+count-1), each a chain
/// long enough for its first block; used for the multi-branch ℓ2 identity.
JtgFixture jtg_fixture_parallel(int count);

}  // namespace jtree
