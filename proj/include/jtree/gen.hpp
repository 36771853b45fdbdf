#pragma once

#include <cstdint>
#include <vector>

#include "jtree/tree.hpp"
#include "jtree/vector.hpp"

namespace jtree {

/// Deterministic splitmix64 stream; identical across platforms and standard
/// libraries, which keeps seeded CLI output byte-stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * uniform() - 1.0; }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

 private:
  std::uint64_t state_;
};

TreePrefix make_chain(int nodes, NodeId start = 1, int step = 1);
TreePrefix make_star(int nodes, NodeId start = 1);
TreePrefix make_binary(int nodes, NodeId start = 1);
TreePrefix make_random_tree(int nodes, std::uint64_t seed, NodeId start = 1);

/// All rooted tree shapes with exactly `nodes` nodes, canonically labeled
/// 1..n in preorder (order-compatible by construction).
std::vector<TreePrefix> all_tree_shapes(int nodes);

/// Dyadic rational in [-3, 3]: numerator in [-24, 24], denominator in
/// {1, 2, 4, 8}; exact as a double.
double random_rational_coeff(Rng& rng);

/// Random vector on the prefix; each node carries a coefficient with the
/// given density (never all-zero unless the tree is empty).
SparseVector random_vector(Rng& rng, const TreePrefix& t, double density = 0.7);

}  // namespace jtree
