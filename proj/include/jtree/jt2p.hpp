#pragma once

#include <vector>

#include "jtree/rational.hpp"
#include "jtree/tree.hpp"
#include "jtree/vector.hpp"

namespace jtree {

// JT_{2,p} (2 < p < ∞): ‖x‖ = sup{(Σ_k ‖x‖_{s_k}^p)^{1/p}} over families of
// pairwise disjoint segments, ‖x‖_s = (Σ_{i∈s} x(i)²)^{1/2}. The sup is exact
// on finitely supported vectors and is realized by a chain-packing DP.

/// One term b_k·φ_k of a norming functional: φ_k lives on a segment and has a
/// unit-ℓ2 coefficient profile there.
struct CertificateTerm {
  Segment segment;
  std::vector<std::pair<NodeId, double>> profile;
  double weight = 0.0;
};

/// Element of the norming set W: Σ b_k φ_k with Σ|b_k|^q <= 1 and the φ_k
/// supported by pairwise disjoint segments (q conjugate to p).
struct Jt2pCertificate {
  double q = 0.0;
  std::vector<CertificateTerm> terms;
};

struct NormResult {
  double value = 0.0;
  std::vector<Segment> family;
  Jt2pCertificate functional;
};

/// Exact JT_{2,p} norm with optimizing family and dual certificate.
/// Requires p > 2 (throws p_out_of_range).
NormResult jt2p_norm(const SparseVector& x, const TreePrefix& t, const Rational& p);

/// Independent oracle: exhaustive enumeration over all disjoint segment
/// families touching supp(x). Requires |supp(x)| <= 12 (throws too_large).
double jt2p_norm_bruteforce(const SparseVector& x, const TreePrefix& t, const Rational& p);

/// Oracle variant that also returns the lexicographically smallest optimal family.
std::pair<double, std::vector<Segment>> jt2p_bruteforce_with_family(const SparseVector& x,
                                                                    const TreePrefix& t,
                                                                    const Rational& p);

/// Evaluates Σ_k b_k (profile_k · x|_{s_k}) after validating the certificate
/// structurally (weight bound, unit profiles, disjoint valid segments).
double eval_certificate(const Jt2pCertificate& c, const SparseVector& x, const TreePrefix& t);

}  // namespace jtree
