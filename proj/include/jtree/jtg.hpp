#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jtree/rational.hpp"
#include "jtree/schreier.hpp"
#include "jtree/tree.hpp"
#include "jtree/vector.hpp"

namespace jtree {

/// Parameters of a JT_G space: strictly increasing (m_j), (n_j) with
/// m_j <= n_j, and a map gamma on nodes (plus the root) that is strictly
/// increasing in the node label, with gamma(ROOT) minimal. Block k of a branch
/// has order index j_k and uses n_{2 j_k + 1} and m_{2 j_k + 1}.
struct JTGParams {
  std::vector<int> m;
  std::vector<int> n;
  int gamma_root = 0;
  std::map<NodeId, int> gamma;
  /// Claim that the tree satisfies the immediate-successor growth condition;
  /// desk-scale instances set this false and rely on per-block flags.
  bool strict_growth = false;

  void validate() const;  // throws params_invalid
  bool has_order(int j) const;
  int order(int j) const { return n.at(2 * j); }       // n_{2j+1}, sequences 1-based
  int multiplier(int j) const { return m.at(2 * j); }  // m_{2j+1}
  std::optional<int> gamma_at(NodeId v) const;
};

/// One block s_k^σ of a branch partition with its (2,n)-average weights.
struct BlockData {
  Segment seg;
  int j = 0;           // j_k
  int order = 0;       // n_{2j_k+1}
  int multiplier = 1;  // m_{2j_k+1}
  bool complete = false;
  bool growth_flag = false;    // min seg > 9·multiplier^4
  bool sup_norm_flag = false;  // max beta² · multiplier^4 <= 1 (what the norm-1 proof uses)
  std::vector<Rational> beta_sq;  // by position in seg; Σ = 1 iff complete
  std::vector<double> beta;
};

enum class TailReason { none, branch_exhausted, params_exhausted, gamma_missing };

/// Partition of a single branch into successive maximal Schreier blocks,
/// with materialized biorthogonal pairs on the complete blocks.
struct BranchData {
  Branch branch;
  std::vector<BlockData> blocks;  // last one may be partial
  TailReason tail_reason = TailReason::none;

  int block_count() const { return static_cast<int>(blocks.size()); }
  int block_of(NodeId v) const;  // 1-based block index, 0 when off all blocks
  bool materialized = false;

  // Blocks are 1-based, matching s_k^σ. Pairs exist for complete blocks only.
  const BlockData& block(int k) const { return blocks.at(k - 1); }
  SparseVector node_vector(int k) const;      // x_k^σ = m² Σ β_l e_l
  SparseVector node_functional(int k) const;  // φ_k^σ = m^-2 Σ β_l e_l
  double functional_eval(int k, const SparseVector& x) const;
};

/// Successive maximal blocks with the j_k recurrence (j_1 = gamma(ROOT),
/// j_k = gamma(max s_{k-1})). Throws branch_too_short when not even the first
/// block completes; a trailing partial block is kept and flagged instead.
BranchData branch_partition(const Branch& sigma, const JTGParams& params);

/// Fills the average weights on every block (partial blocks get the
/// well-defined weights of their prefix) and enables pair evaluation.
void materialize_pairs(BranchData& bd);

struct WSigmaResult {
  double value = 0.0;
  Segment interval;  // optimal E (trimmed to support); empty when value is 0
  std::vector<std::pair<int, Rational>> lambda;  // (block k, weight), Σλ² <= 1
};

/// ‖x‖_σ = sup{f(x) : f ∈ W(σ)} = max over intervals E of the ℓ2 norm of
/// (φ_i|_E(x))_i. Requires materialized BranchData.
WSigmaResult w_sigma_seminorm(const SparseVector& x, const BranchData& bd);

struct NodeGrowthCheck {
  NodeId node = kRoot;
  long long bound = 0;  // (3 m²)²
  NodeId min_child = 0;
  bool pass = false;
  bool vacuous = false;  // no children below, or gamma/m out of range
};
struct BlockGrowthCheck {
  NodeId leaf = 0;
  int k = 0;
  bool growth_flag = false;
  bool sup_norm_flag = false;
};
struct ValidationReport {
  bool params_ok = false;
  std::string params_error;
  bool strict_growth = false;
  std::vector<NodeGrowthCheck> nodes;
  std::vector<BlockGrowthCheck> blocks;
};

/// Report-only checks: per-node immediate-successor bound and the per-block
/// inequalities used by the norm-1 lemma.
ValidationReport validate_params(const JTGParams& params, const TreePrefix& t);

/// Binds a tree and parameters; caches per-branch data keyed by leaf.
class JtgSpace {
 public:
  JtgSpace(const TreePrefix& t, JTGParams params);

  const TreePrefix& tree() const { return *tree_; }
  const JTGParams& params() const { return params_; }

  const BranchData& branch_data(NodeId leaf) const;
  /// Data of any branch containing v (tree compatibility makes the choice
  /// irrelevant for segment evaluation; the smallest-label extension is used).
  const BranchData& covering_branch_data(NodeId v) const;

  /// ‖x‖_{[u..v]}: W(σ)-seminorm of the restriction of x to the chain.
  double segment_value(const SparseVector& x, NodeId u, NodeId v) const;
  WSigmaResult segment_seminorm(const SparseVector& x, NodeId u, NodeId v) const;

 private:
  const TreePrefix* tree_;
  JTGParams params_;
  mutable std::map<NodeId, BranchData> cache_;
};

struct GNormSegment {
  Segment segment;
  double value = 0.0;
  Segment interval;
  std::vector<std::pair<int, Rational>> lambda;
};
struct GNormResult {
  double value = 0.0;
  bool sup_norm_attained = false;
  std::vector<GNormSegment> per_segment;
};

/// ‖x‖_G: max of ‖x‖_∞ and the sup over S_1-admissible disjoint segment
/// families of (Σ ‖x‖_{s_i}²)^{1/2}. The search fixes the minimal top m of
/// the family, restricts tops to labels >= m, caps the family size at m, and
/// runs the chain-packing DP on the squared seminorms.
GNormResult jtg_norm(const SparseVector& x, const JtgSpace& space);

/// Exhaustive admissible-family oracle; |supp(x)| <= 10.
double jtg_norm_bruteforce(const SparseVector& x, const JtgSpace& space);

/// P_σ(x) = Σ_n φ_n^σ(x) x_n^σ over complete blocks.
SparseVector project_branch(const SparseVector& x, const BranchData& bd);

/// P_{σ,>cut}: only blocks whose minimum is >= cut.
SparseVector project_branch_truncated(const SparseVector& x, const BranchData& bd, NodeId cut);

/// P_{B_F,>cut} = Σ_i P_{σ_i,>cut}; requires the truncated finals pairwise
/// incomparable and (for >= 2 branches) |branches| <= cut.
SparseVector project_family(const SparseVector& x, const std::vector<const BranchData*>& branches,
                            int cut, const TreePrefix& t);

}  // namespace jtree
