#pragma once

#include <vector>

#include "jtree/rational.hpp"
#include "jtree/vector.hpp"

namespace jtree {

// Schreier families over the positive integers:
//   S_0 = singletons and the empty set,
//   S_1 = {F : #F <= min F},
//   S_{n+1} = {F_1 ∪ … ∪ F_d : F_1 < … < F_d in S_n, d <= min F_1}.
// All families are hereditary and spreading; the empty set belongs to every S_n.

/// Membership of a finite set (strictly increasing) in S_n.
bool schreier_member(const std::vector<int>& f, int n);

/// True iff f is in S_n and f ∪ {m} is not, for any (equivalently every) m > max f.
bool schreier_maximal(const std::vector<int>& f, int n);

/// The unique initial segment of L that is maximal in S_n. Throws
/// window_too_short when L is exhausted before maximality can be certified.
std::vector<int> maximal_initial_segment(const std::vector<int>& window, int n);

/// ℓ1-normalized repeated average a_k(n, L) on a finite increasing window.
struct RepeatedAverage {
  int order = 0;
  int index = 1;
  // (node, weight), increasing nodes, weights positive rationals summing to 1.
  std::vector<std::pair<int, Rational>> coeffs;

  std::vector<int> support() const;
  Rational weight(int node) const;  // 0 when node is off the support
};

/// a_k(n, L): base a_k(0, L) = e_{l_k}; a_1(n+1, L) = (1/l_1) Σ_{i<=l_1} a_i(n, L),
/// and a_k(n+1, L) = a_1(n+1, L minus the first k-1 supports).
RepeatedAverage repeated_average(int order, const std::vector<int>& window, int index);

/// Weights of a_1(order, L) on an initial segment of L: they depend only on
/// the segment itself. `block_is_complete` asserts the segment is a genuinely
/// maximal S_order set (then the weights sum to 1 exactly).
std::vector<Rational> average_weights_on_prefix(int order, const std::vector<int>& block,
                                                bool block_is_complete);

/// Coefficients (a_i) of a (2,n)-average over blocks with the given minima:
/// a_i = sqrt of the repeated-average weight at the i-th minimum, zero past the
/// support of a_1(n, minima).
std::vector<double> make_2n_average(const std::vector<int>& block_minima, int order);

/// Exact squared coefficients of the same (2,n)-average.
std::vector<Rational> make_2n_average_squares(const std::vector<int>& block_minima, int order);

/// S^(2) norm: sup{(Σ_{i∈F} x(i)²)^{1/2} : F ∈ S_1}.
double s2_norm(const SparseVector& x);

/// Brute-force oracle for s2_norm; |supp(x)| <= 12.
double s2_norm_bruteforce(const SparseVector& x);

}  // namespace jtree
