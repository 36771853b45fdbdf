#pragma once

#include "jtree/jtg.hpp"
#include "jtree/rational.hpp"
#include "jtree/tree.hpp"
#include "jtree/vector.hpp"

namespace jtree {

// Generalized JT space: ‖x‖ = max{‖x‖_∞, sup ‖Σ_i ‖x‖_{s_i} e_{min s_i}‖_*}
// over families of pairwise disjoint segments, for a tree-compatible branch
// seminorm and a 1-unconditional external norm. JT^∞ is (SUMMING, ELL2),
// JT_{2,p} is (ELL2, ELLP(p)), JT_G is (W_SIGMA, S2) with S_1-admissibility
// and the sup-norm term.

enum class BranchSeminormKind { summing, ell2, w_sigma };
enum class ExternalNormKind { ell2, ellp, s2 };
enum class AdmissibilityKind { none, s1_minima };

struct SpaceSpec {
  BranchSeminormKind branch_seminorm = BranchSeminormKind::ell2;
  ExternalNormKind external_norm = ExternalNormKind::ell2;
  Rational p = 0;  // used by ellp
  AdmissibilityKind admissibility = AdmissibilityKind::none;
  bool include_sup_norm = false;

  static SpaceSpec jt2p(const Rational& p);
  static SpaceSpec jt_inf();
  static SpaceSpec jtg();
};

struct FamilyTerm {
  Segment segment;
  double value = 0.0;  // untransformed branch-seminorm value on the segment
};

struct GeneralizedNormResult {
  double value = 0.0;
  bool sup_norm_attained = false;
  std::vector<FamilyTerm> family;
};

/// Exact sup via the chain-packing DP (per-minimum capped when admissibility
/// or the S^(2) external norm requires it). W_SIGMA needs a bound JtgSpace.
GeneralizedNormResult generalized_norm(const SparseVector& x, const TreePrefix& t,
                                       const SpaceSpec& spec, const JtgSpace* jtg = nullptr);

/// Exhaustive oracle over disjoint segment families; |supp(x)| <= 12.
double generalized_norm_bruteforce(const SparseVector& x, const TreePrefix& t,
                                   const SpaceSpec& spec, const JtgSpace* jtg = nullptr);

/// Re-evaluates the certificate family on x (seminorms recomputed, external
/// norm applied, sup-norm folded in per the spec) — certificate consistency.
double eval_family_aggregation(const std::vector<FamilyTerm>& family, const SparseVector& x,
                               const TreePrefix& t, const SpaceSpec& spec,
                               const JtgSpace* jtg = nullptr);

}  // namespace jtree
