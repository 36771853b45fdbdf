#include "jtree/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jtree/errors.hpp"
#include "jtree/gen.hpp"
#include "jtree/jt2p.hpp"

namespace jtree {

SpaceHandle SpaceHandle::make_jt2p(const TreePrefix& t, const Rational& p) {
  SpaceHandle h;
  h.kind_ = SpaceKind::jt2p;
  h.tree_ = &t;
  h.p_ = p;
  return h;
}

SpaceHandle SpaceHandle::make_jtg(const JtgSpace& space) {
  SpaceHandle h;
  h.kind_ = SpaceKind::jtg;
  h.tree_ = &space.tree();
  h.jtg_ = &space;
  return h;
}

const TreePrefix& SpaceHandle::tree() const { return *tree_; }

double SpaceHandle::norm(const SparseVector& x) const {
  if (kind_ == SpaceKind::jt2p) return jt2p_norm(x, *tree_, p_).value;
  return jtg_norm(x, *jtg_).value;
}

double SpaceHandle::branch_value(const SparseVector& x, const Branch& sigma) const {
  if (kind_ == SpaceKind::jt2p) return branch_restriction_norm(x, sigma);
  const BranchData& bd = jtg_->branch_data(sigma.leaf());
  SparseVector projected = project_branch(x, bd);
  if (projected.empty()) return 0.0;
  return jtg_norm(projected, *jtg_).value;
}

std::vector<BranchProfile> branch_profile(const std::vector<SparseVector>& xs,
                                          const SpaceHandle& space) {
  std::vector<Branch> branches = space.tree().leaf_branches();
  std::vector<BranchProfile> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    BranchProfile profile;
    profile.vector_index = static_cast<int>(i);
    for (const Branch& sigma : branches) {
      bool meets = std::any_of(sigma.nodes.begin(), sigma.nodes.end(),
                               [&](NodeId v) { return xs[i][v] != 0.0; });
      if (!meets) continue;
      profile.values.push_back({sigma, space.branch_value(xs[i], sigma)});
    }
    out.push_back(std::move(profile));
  }
  return out;
}

std::vector<LpVectorCandidate> lp_vector_estimate(const std::vector<SparseVector>& xs,
                                                  const SpaceHandle& space, double eps,
                                                  double tail) {
  if (xs.size() < 4) throw std::invalid_argument("lp_vector_estimate needs at least 4 vectors");
  if (!(tail > 0.0 && tail <= 1.0)) throw std::invalid_argument("tail fraction must be in (0,1]");
  const std::size_t n = xs.size();
  const std::size_t window = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(tail * n)));
  const std::size_t start = n - window;

  std::vector<LpVectorCandidate> out;
  for (const Branch& sigma : space.tree().leaf_branches()) {
    double lo = 0.0, hi = 0.0, sum = 0.0;
    bool first = true;
    for (std::size_t i = start; i < n; ++i) {
      double v = space.branch_value(xs[i], sigma);
      lo = first ? v : std::min(lo, v);
      hi = first ? v : std::max(hi, v);
      sum += v;
      first = false;
    }
    if (lo < eps) continue;  // the profile must stay >= eps on the window
    LpVectorCandidate cand;
    cand.branch = sigma;
    cand.c = sum / static_cast<double>(window);
    cand.converged = (hi - lo) <= eps / 2.0;
    out.push_back(std::move(cand));
  }
  // Decreasing c; ties keep the input branch order (no canonical tie order is claimed).
  std::stable_sort(out.begin(), out.end(),
                   [](const LpVectorCandidate& a, const LpVectorCandidate& b) { return a.c > b.c; });
  return out;
}

namespace {

double model_norm(const std::vector<double>& a, SequenceModel model, double p) {
  double out = 0.0;
  switch (model) {
    case SequenceModel::ell_p:
      for (double v : a) out += std::pow(std::fabs(v), p);
      return std::pow(out, 1.0 / p);
    case SequenceModel::ell_2:
      for (double v : a) out += v * v;
      return std::sqrt(out);
    case SequenceModel::c0:
      for (double v : a) out = std::max(out, std::fabs(v));
      return out;
  }
  return 0.0;
}

}  // namespace

EquivalenceReport equivalence_bounds(const std::vector<SparseVector>& xs,
                                     const SpaceHandle& space, SequenceModel model,
                                     std::uint64_t seed) {
  if (xs.empty()) throw std::invalid_argument("equivalence_bounds needs vectors");
  double p = 2.0;
  if (model == SequenceModel::ell_p) {
    if (space.kind() != SpaceKind::jt2p)
      fail(Errc::unsupported_combination, "ELL_P model needs a JT_{2,p} space handle");
    p = to_double(space.p());
  }
  for (const SparseVector& x : xs)
    if (std::fabs(space.norm(x) - 1.0) > 1e-9)
      fail(Errc::not_normalized, "input vectors must have norm 1 (within 1e-9)");

  const std::size_t n = xs.size();
  std::vector<std::vector<double>> samples;

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> a(n, 0.0);
    a[i] = 1.0;
    samples.push_back(std::move(a));
  }
  const std::size_t k = std::min<std::size_t>(n, 8);
  for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
    std::vector<double> a(n, 0.0);
    for (std::size_t i = 0; i < k; ++i) a[i] = (mask & (1ull << i)) ? -1.0 : 1.0;
    samples.push_back(std::move(a));
  }
  // Decreasing profiles and their conjugates: the certificate families that
  // attain the paper's extremal bounds.
  const double q = (model == SequenceModel::ell_p && p > 1.0) ? p / (p - 1.0) : 2.0;
  for (double theta : {0.5, 1.0}) {
    std::vector<double> a(n, 0.0), conj(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = std::pow(static_cast<double>(i + 1), -theta);
      conj[i] = std::pow(a[i], q - 1.0);
    }
    samples.push_back(std::move(a));
    samples.push_back(std::move(conj));
  }
  Rng rng(seed);
  for (int r = 0; r < 200; ++r) {
    std::vector<double> a(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) a[i] = rng.symmetric();
    samples.push_back(std::move(a));
  }

  EquivalenceReport report;
  report.model = model;
  bool first = true;
  for (const std::vector<double>& a : samples) {
    double denom = model_norm(a, model, p);
    if (denom == 0.0) continue;
    SparseVector combo;
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != 0.0) combo.axpy(a[i], xs[i]);
    double ratio = space.norm(combo) / denom;
    if (first || ratio < report.lower) {
      report.lower = ratio;
      report.lower_witness = a;
    }
    if (first || ratio > report.upper) {
      report.upper = ratio;
      report.upper_witness = a;
    }
    first = false;
  }
  return report;
}

}  // namespace jtree
