#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "jtree/jtg.hpp"
#include "jtree/rational.hpp"
#include "jtree/tree.hpp"
#include "jtree/vector.hpp"

namespace jtree {

// Finite diagnostics mirroring the paper's limit tools: per-branch profiles,
// trailing-window ℓ_p/ℓ_2-vector estimation, and equivalence-constant bounds.
// Limits are replaced by trailing-window statistics with explicit
// non-convergence flags; nothing here claims a limit exists.

enum class SpaceKind { jt2p, jtg };

/// Binds a space to a tree for analysis: norm evaluation plus the per-branch
/// profile value (ℓ2 restriction norm for JT_{2,p}, ‖P_σ(x)‖_G for JT_G).
class SpaceHandle {
 public:
  static SpaceHandle make_jt2p(const TreePrefix& t, const Rational& p);
  static SpaceHandle make_jtg(const JtgSpace& space);

  SpaceKind kind() const { return kind_; }
  const TreePrefix& tree() const;
  const Rational& p() const { return p_; }

  double norm(const SparseVector& x) const;
  double branch_value(const SparseVector& x, const Branch& sigma) const;

 private:
  SpaceKind kind_ = SpaceKind::jt2p;
  const TreePrefix* tree_ = nullptr;
  Rational p_ = 0;
  const JtgSpace* jtg_ = nullptr;
};

struct BranchProfileEntry {
  Branch branch;
  double value = 0.0;
};
struct BranchProfile {
  int vector_index = 0;
  std::vector<BranchProfileEntry> values;  // only branches meeting supp(x)
};

std::vector<BranchProfile> branch_profile(const std::vector<SparseVector>& xs,
                                          const SpaceHandle& space);

struct LpVectorCandidate {
  Branch branch;
  double c = 0.0;       // trailing mean of the profile
  bool converged = true;  // trailing oscillation <= eps/2
};

/// Branches whose profile stays >= eps over the trailing `tail` fraction of
/// xs, sorted by decreasing c (ties keep input branch order). |xs| >= 4.
std::vector<LpVectorCandidate> lp_vector_estimate(const std::vector<SparseVector>& xs,
                                                  const SpaceHandle& space, double eps,
                                                  double tail);

enum class SequenceModel { ell_p, ell_2, c0 };

struct EquivalenceReport {
  SequenceModel model = SequenceModel::ell_2;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> lower_witness;
  std::vector<double> upper_witness;
};

/// min/max of ‖Σ a_i x_i‖ / ‖a‖_model over the sampler (unit vectors, ±1
/// patterns up to length 8, conjugate-weight profiles, 200 seeded random
/// directions). xs must be normalized within 1e-9 (not_normalized).
EquivalenceReport equivalence_bounds(const std::vector<SparseVector>& xs,
                                     const SpaceHandle& space, SequenceModel model,
                                     std::uint64_t seed);

}  // namespace jtree
