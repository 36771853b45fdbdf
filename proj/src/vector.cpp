#include "jtree/vector.hpp"

#include <algorithm>
#include <cmath>

namespace jtree {

SparseVector::SparseVector(std::map<NodeId, double> entries) : entries_(std::move(entries)) {
  for (auto it = entries_.begin(); it != entries_.end();)
    it = (it->second == 0.0) ? entries_.erase(it) : std::next(it);
}

void SparseVector::set(NodeId v, double value) {
  if (value == 0.0)
    entries_.erase(v);
  else
    entries_[v] = value;
}

std::vector<NodeId> SparseVector::support() const {
  std::vector<NodeId> s;
  s.reserve(entries_.size());
  for (const auto& [v, a] : entries_) s.push_back(v);
  return s;
}

double SparseVector::linf() const {
  double m = 0.0;
  for (const auto& [v, a] : entries_) m = std::max(m, std::fabs(a));
  return m;
}

double SparseVector::l2() const {
  double ss = 0.0;
  for (const auto& [v, a] : entries_) ss += a * a;
  return std::sqrt(ss);
}

SparseVector SparseVector::restricted(const Segment& s) const {
  SparseVector out;
  for (NodeId v : s.nodes) {
    auto it = entries_.find(v);
    if (it != entries_.end()) out.set(v, it->second);
  }
  return out;
}

SparseVector SparseVector::restricted(const Branch& b) const {
  SparseVector out;
  for (NodeId v : b.nodes) {
    auto it = entries_.find(v);
    if (it != entries_.end()) out.set(v, it->second);
  }
  return out;
}

SparseVector SparseVector::negated() const {
  SparseVector out;
  for (const auto& [v, a] : entries_) out.set(v, -a);
  return out;
}

SparseVector SparseVector::scaled(double a) const {
  SparseVector out;
  for (const auto& [v, c] : entries_) out.set(v, a * c);
  return out;
}

void SparseVector::axpy(double a, const SparseVector& y) {
  for (const auto& [v, c] : y.entries()) add(v, a * c);
}

double branch_restriction_norm(const SparseVector& x, const Branch& sigma) {
  double ss = 0.0;
  for (NodeId v : sigma.nodes) {
    double a = x[v];
    ss += a * a;
  }
  return std::sqrt(ss);
}

SparseVector restrict_to(const SparseVector& x, const Segment& s) { return x.restricted(s); }

}  // namespace jtree
