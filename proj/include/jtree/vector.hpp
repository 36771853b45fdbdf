#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "jtree/tree.hpp"

namespace jtree {

/// Finitely supported coefficient vector (an element of c_00), keyed by node
/// label. Zero entries are never stored.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::map<NodeId, double> entries);

  static SparseVector unit(NodeId v) { return SparseVector({{v, 1.0}}); }

  double operator[](NodeId v) const {
    auto it = entries_.find(v);
    return it == entries_.end() ? 0.0 : it->second;
  }
  void set(NodeId v, double value);
  void add(NodeId v, double value) { set(v, (*this)[v] + value); }

  const std::map<NodeId, double>& entries() const { return entries_; }
  std::vector<NodeId> support() const;
  bool empty() const { return entries_.empty(); }
  NodeId min_support() const { return entries_.begin()->first; }

  double linf() const;
  double l2() const;

  SparseVector restricted(const Segment& s) const;
  SparseVector restricted(const Branch& b) const;
  SparseVector negated() const;
  SparseVector scaled(double a) const;

  /// this += a * y
  void axpy(double a, const SparseVector& y);

  bool operator==(const SparseVector& o) const { return entries_ == o.entries_; }

 private:
  std::map<NodeId, double> entries_;
};

/// ℓ2 norm of x restricted to a branch: (Σ_{i∈σ} x(i)²)^{1/2}.
double branch_restriction_norm(const SparseVector& x, const Branch& sigma);

/// Restriction of x to a segment (spec op `restrict`).
SparseVector restrict_to(const SparseVector& x, const Segment& s);

}  // namespace jtree
