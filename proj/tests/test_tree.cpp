#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jtree/errors.hpp"
#include "jtree/gen.hpp"
#include "jtree/tree.hpp"

using namespace jtree;

namespace {
Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected an error");
}
}  // namespace

TEST_CASE("build_tree basics") {
  TreePrefix single = TreePrefix::build({{1, kRoot}});
  CHECK(single.size() == 1);
  CHECK(single.contains(1));

  TreePrefix fork = TreePrefix::build({{1, kRoot}, {2, 1}, {3, 1}});
  CHECK(fork.children(1) == std::vector<NodeId>{2, 3});
  CHECK(fork.parent(2) == 1);
  CHECK(fork.parent(1) == kRoot);
}

TEST_CASE("build_tree rejections") {
  CHECK(code_of([] { TreePrefix::build({{2, kRoot}, {1, 2}}); }) == Errc::parent_ge_child);
  CHECK(code_of([] { TreePrefix::build({{1, kRoot}, {1, 1}}); }) == Errc::duplicate_node);
  CHECK(code_of([] { TreePrefix::build({{1, kRoot}, {3, 2}, {2, 1}}); }) == Errc::cycle);
  CHECK(code_of([] { TreePrefix::build({{2, 2}}); }) == Errc::parent_ge_child);
}

TEST_CASE("comparability") {
  TreePrefix fork = TreePrefix::build({{1, kRoot}, {2, 1}, {3, 1}});
  CHECK_FALSE(fork.is_comparable(2, 3));
  CHECK(fork.is_comparable(1, 3));
  CHECK(fork.is_comparable(3, 3));
  CHECK(code_of([&] { fork.is_comparable(1, 9); }) == Errc::unknown_node);
}

TEST_CASE("segment_between") {
  TreePrefix chain = TreePrefix::build({{1, kRoot}, {2, 1}, {4, 2}});
  CHECK(chain.segment_between(1, 4).nodes == std::vector<NodeId>{1, 2, 4});
  CHECK(chain.segment_between(2, 2).nodes == std::vector<NodeId>{2});

  TreePrefix fork = TreePrefix::build({{1, kRoot}, {2, 1}, {3, 1}});
  CHECK(code_of([&] { fork.segment_between(2, 3); }) == Errc::not_comparable);
}

TEST_CASE("leaf_branches") {
  CHECK(TreePrefix::build({{1, kRoot}}).leaf_branches().size() == 1);

  TreePrefix fork = TreePrefix::build({{1, kRoot}, {2, 1}, {3, 1}});
  auto branches = fork.leaf_branches();
  REQUIRE(branches.size() == 2);
  CHECK(branches[0].nodes == std::vector<NodeId>{1, 2});
  CHECK(branches[1].nodes == std::vector<NodeId>{1, 3});

  TreePrefix chain = TreePrefix::build({{1, kRoot}, {2, 1}, {3, 2}});
  CHECK(chain.leaf_branches().size() == 1);
  CHECK(chain.leaf_branches()[0].nodes == std::vector<NodeId>{1, 2, 3});
}

TEST_CASE("segment intersections on a branch are segments") {
  TreePrefix t = make_random_tree(14, 7);
  for (const Branch& sigma : t.leaf_branches()) {
    const auto& bn = sigma.nodes;
    for (std::size_t i = 0; i < bn.size(); ++i)
      for (std::size_t j = i; j < bn.size(); ++j)
        for (std::size_t k = 0; k < bn.size(); ++k)
          for (std::size_t l = k; l < bn.size(); ++l) {
            Segment s1 = t.segment_between(bn[i], bn[j]);
            Segment s2 = t.segment_between(bn[k], bn[l]);
            std::vector<NodeId> inter;
            std::set_intersection(s1.nodes.begin(), s1.nodes.end(), s2.nodes.begin(),
                                  s2.nodes.end(), std::back_inserter(inter));
            std::size_t lo = std::max(i, k), hi = std::min(j, l);
            if (lo > hi)
              CHECK(inter.empty());
            else
              CHECK(inter == t.segment_between(bn[lo], bn[hi]).nodes);
          }
  }
}

TEST_CASE("tree shape enumeration counts") {
  const int expected[] = {0, 1, 1, 2, 4, 9, 20, 48, 115};
  for (int n = 1; n <= 8; ++n) CHECK(all_tree_shapes(n).size() == std::size_t(expected[n]));
}

TEST_CASE("branch_through extends to a leaf") {
  TreePrefix t = TreePrefix::build({{1, kRoot}, {2, 1}, {3, 1}, {4, 2}, {5, 2}});
  Branch b = t.branch_through(2);
  CHECK(b.nodes == std::vector<NodeId>{1, 2, 4});
  CHECK(t.branch_through(3).nodes == std::vector<NodeId>{1, 3});
}
