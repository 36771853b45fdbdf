#include "jtree/schreier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jtree/errors.hpp"

namespace jtree {

namespace {

// Longest initial segment of `rest` that belongs to S_n. Membership of
// prefixes is monotone (hereditary family), so a forward scan suffices.
std::size_t longest_prefix_in(const std::vector<int>& rest, int n) {
  std::size_t best = 0;
  for (std::size_t len = 1; len <= rest.size(); ++len) {
    std::vector<int> prefix(rest.begin(), rest.begin() + len);
    if (schreier_member(prefix, n))
      best = len;
    else
      break;
  }
  return best;
}

}  // namespace

bool schreier_member(const std::vector<int>& f, int n) {
  if (n < 0) throw std::invalid_argument("negative Schreier index");
  if (f.empty()) return true;
  if (f.front() < 1 || !std::is_sorted(f.begin(), f.end()) ||
      std::adjacent_find(f.begin(), f.end()) != f.end())
    throw std::invalid_argument("Schreier sets must be strictly increasing positive integers");
  if (n == 0) return f.size() <= 1;
  if (n == 1) return static_cast<int>(f.size()) <= f.front();
  // Greedy maximal-block decomposition: F is in S_n iff it splits into at
  // most min(F) successive blocks, each the longest possible member of S_{n-1}.
  const int d_max = f.front();
  std::vector<int> rest = f;
  int blocks = 0;
  while (!rest.empty()) {
    if (++blocks > d_max) return false;
    std::size_t len = longest_prefix_in(rest, n - 1);
    if (len == 0) return false;  // unreachable: singletons are in every S_{n-1}, n>=1
    rest.erase(rest.begin(), rest.begin() + len);
  }
  return true;
}

bool schreier_maximal(const std::vector<int>& f, int n) {
  if (f.empty()) return false;
  if (!schreier_member(f, n)) return false;
  std::vector<int> extended = f;
  extended.push_back(f.back() + 1);
  // Extending by any single element beyond max(f) is equivalent: spreading
  // moves the last element up, and lowering it back above the second-largest
  // keeps membership.
  return !schreier_member(extended, n);
}

std::vector<int> maximal_initial_segment(const std::vector<int>& window, int n) {
  if (window.empty()) fail(Errc::window_too_short, "empty window");
  std::size_t len = longest_prefix_in(window, n);
  std::vector<int> prefix(window.begin(), window.begin() + len);
  if (len == window.size()) {
    std::vector<int> extended = prefix;
    extended.push_back(window.back() + 1);
    if (schreier_member(extended, n))
      fail(Errc::window_too_short,
           "window exhausted before a maximal S_" + std::to_string(n) + " block");
  }
  return prefix;
}

std::vector<int> RepeatedAverage::support() const {
  std::vector<int> s;
  s.reserve(coeffs.size());
  for (const auto& [node, w] : coeffs) s.push_back(node);
  return s;
}

Rational RepeatedAverage::weight(int node) const {
  for (const auto& [v, w] : coeffs)
    if (v == node) return w;
  return Rational(0);
}

namespace {

// a_1(order, window) where the window is treated as the head of an infinite
// set; maximality of inner blocks is certified by maximal_initial_segment.
RepeatedAverage first_average(int order, const std::vector<int>& window) {
  if (window.empty()) fail(Errc::window_too_short, "window exhausted");
  RepeatedAverage out;
  out.order = order;
  out.index = 1;
  if (order == 0) {
    out.coeffs.emplace_back(window.front(), Rational(1));
    return out;
  }
  const int l1 = window.front();
  const Rational scale(1, l1);
  std::vector<int> rest = window;
  for (int i = 0; i < l1; ++i) {
    RepeatedAverage sub = first_average(order - 1, rest);
    std::vector<int> supp = sub.support();
    // The recursion consumes exactly the maximal S_{order-1} prefix.
    std::vector<int> block = maximal_initial_segment(rest, order - 1);
    if (block != supp) throw std::logic_error("repeated-average support mismatch");
    for (const auto& [node, w] : sub.coeffs) out.coeffs.emplace_back(node, scale * w);
    rest.erase(rest.begin(), rest.begin() + supp.size());
  }
  return out;
}

}  // namespace

RepeatedAverage repeated_average(int order, const std::vector<int>& window, int index) {
  if (index < 1) throw std::invalid_argument("average index must be >= 1");
  if (!std::is_sorted(window.begin(), window.end()) ||
      std::adjacent_find(window.begin(), window.end()) != window.end() ||
      (!window.empty() && window.front() < 1))
    throw std::invalid_argument("window must be strictly increasing positive integers");
  std::vector<int> rest = window;
  for (int k = 1; k < index; ++k) {
    RepeatedAverage prev = first_average(order, rest);
    rest.erase(rest.begin(), rest.begin() + prev.coeffs.size());
  }
  RepeatedAverage out = first_average(order, rest);
  out.index = index;
  return out;
}

std::vector<Rational> average_weights_on_prefix(int order, const std::vector<int>& block,
                                                bool block_is_complete) {
  if (block.empty()) return {};
  if (order == 0) {
    if (block.size() > 1)
      throw std::logic_error("order-0 block prefixes have at most one element");
    return {Rational(1)};
  }
  // Weights of a_1(order, L) on an initial segment of L depend only on that
  // segment: inner sub-blocks are fully visible (and genuinely maximal, since
  // the next element of the prefix fails to extend them), and the trailing
  // sub-block recurses on its own prefix, complete only if the block is.
  std::vector<Rational> weights;
  weights.reserve(block.size());
  const Rational scale(1, block.front());
  std::vector<int> rest = block;
  int subs = 0;
  while (!rest.empty()) {
    if (++subs > block.front())
      throw std::logic_error("prefix extends past the block it claims to start");
    std::size_t len = longest_prefix_in(rest, order - 1);
    std::vector<int> sub(rest.begin(), rest.begin() + len);
    bool sub_complete = (len < rest.size()) || block_is_complete;
    for (const Rational& w : average_weights_on_prefix(order - 1, sub, sub_complete))
      weights.push_back(scale * w);
    rest.erase(rest.begin(), rest.begin() + len);
  }
  if (block_is_complete) {
    Rational total(0);
    for (const Rational& w : weights) total += w;
    if (total != 1) throw std::logic_error("complete block weights do not sum to 1");
  }
  return weights;
}

std::vector<Rational> make_2n_average_squares(const std::vector<int>& block_minima, int order) {
  if (!std::is_sorted(block_minima.begin(), block_minima.end()) ||
      std::adjacent_find(block_minima.begin(), block_minima.end()) != block_minima.end())
    throw std::invalid_argument("block minima must be strictly increasing");
  RepeatedAverage avg = repeated_average(order, block_minima, 1);
  std::vector<Rational> squares(block_minima.size(), Rational(0));
  for (std::size_t i = 0; i < block_minima.size(); ++i) squares[i] = avg.weight(block_minima[i]);
  return squares;
}

std::vector<double> make_2n_average(const std::vector<int>& block_minima, int order) {
  std::vector<Rational> squares = make_2n_average_squares(block_minima, order);
  std::vector<double> coeffs(squares.size());
  for (std::size_t i = 0; i < squares.size(); ++i) coeffs[i] = std::sqrt(to_double(squares[i]));
  return coeffs;
}

double s2_norm(const SparseVector& x) {
  std::vector<NodeId> supp = x.support();
  double best = 0.0;
  for (std::size_t i = 0; i < supp.size(); ++i) {
    const int m = supp[i];
    double am = x[m];
    // F = {m} plus the m-1 largest squares strictly above m.
    std::vector<double> tail_sq;
    for (std::size_t j = i + 1; j < supp.size(); ++j) {
      double a = x[supp[j]];
      tail_sq.push_back(a * a);
    }
    std::sort(tail_sq.rbegin(), tail_sq.rend());
    double ss = am * am;
    for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(m) && j < tail_sq.size(); ++j)
      ss += tail_sq[j];
    best = std::max(best, ss);
  }
  return std::sqrt(best);
}

double s2_norm_bruteforce(const SparseVector& x) {
  std::vector<NodeId> supp = x.support();
  if (supp.size() > 12) fail(Errc::too_large, "brute-force s2 norm capped at 12 support nodes");
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << supp.size()); ++mask) {
    std::vector<int> f;
    double ss = 0.0;
    for (std::size_t i = 0; i < supp.size(); ++i)
      if (mask & (1u << i)) {
        f.push_back(supp[i]);
        ss += x[supp[i]] * x[supp[i]];
      }
    if (schreier_member(f, 1)) best = std::max(best, ss);
  }
  return std::sqrt(best);
}

}  // namespace jtree
