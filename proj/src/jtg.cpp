#include "jtree/jtg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jtree/errors.hpp"
#include "jtree/packing.hpp"

namespace jtree {

void JTGParams::validate() const {
  auto strictly_increasing = [](const std::vector<int>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] <= v[i - 1]) return false;
    return true;
  };
  if (m.empty() || n.empty()) fail(Errc::params_invalid, "(m_j) and (n_j) must be nonempty");
  if (m.front() < 1 || n.front() < 1)
    fail(Errc::params_invalid, "(m_j) and (n_j) must be positive");
  if (!strictly_increasing(m)) fail(Errc::params_invalid, "(m_j) must be strictly increasing");
  if (!strictly_increasing(n)) fail(Errc::params_invalid, "(n_j) must be strictly increasing");
  for (std::size_t i = 0; i < std::min(m.size(), n.size()); ++i)
    if (m[i] > n[i]) fail(Errc::params_invalid, "m_j <= n_j violated at j=" + std::to_string(i + 1));
  if (gamma_root < 0) fail(Errc::params_invalid, "gamma(ROOT) must be >= 0");
  bool first = true;
  int prev = 0;
  for (const auto& [node, g] : gamma) {  // map iterates in label order
    if (node <= 0) fail(Errc::params_invalid, "gamma keys must be positive node labels");
    if (g <= gamma_root) fail(Errc::params_invalid, "gamma(ROOT) must be strictly minimal");
    if (!first && g <= prev)
      fail(Errc::params_invalid, "gamma must be strictly increasing in the node label");
    prev = g;
    first = false;
  }
}

bool JTGParams::has_order(int j) const {
  return j >= 0 && 2 * j < static_cast<int>(m.size()) && 2 * j < static_cast<int>(n.size());
}

std::optional<int> JTGParams::gamma_at(NodeId v) const {
  if (v == kRoot) return gamma_root;
  auto it = gamma.find(v);
  if (it == gamma.end()) return std::nullopt;
  return it->second;
}

int BranchData::block_of(NodeId v) const {
  for (int k = 1; k <= block_count(); ++k)
    if (std::binary_search(blocks[k - 1].seg.nodes.begin(), blocks[k - 1].seg.nodes.end(), v))
      return k;
  return 0;
}

namespace {

const BlockData& complete_block(const BranchData& bd, int k, const char* what) {
  if (!bd.materialized) throw std::logic_error("branch data not materialized");
  if (k < 1 || k > bd.block_count())
    fail(Errc::branch_too_short, std::string(what) + ": no block " + std::to_string(k));
  const BlockData& b = bd.block(k);
  if (!b.complete)
    fail(Errc::branch_too_short,
         std::string(what) + ": block " + std::to_string(k) + " is a partial terminal block");
  return b;
}

}  // namespace

SparseVector BranchData::node_vector(int k) const {
  const BlockData& b = complete_block(*this, k, "node_vector");
  const double scale = static_cast<double>(b.multiplier) * b.multiplier;
  SparseVector out;
  for (std::size_t i = 0; i < b.seg.nodes.size(); ++i) out.set(b.seg.nodes[i], scale * b.beta[i]);
  return out;
}

SparseVector BranchData::node_functional(int k) const {
  const BlockData& b = complete_block(*this, k, "node_functional");
  const double scale = 1.0 / (static_cast<double>(b.multiplier) * b.multiplier);
  SparseVector out;
  for (std::size_t i = 0; i < b.seg.nodes.size(); ++i) out.set(b.seg.nodes[i], scale * b.beta[i]);
  return out;
}

double BranchData::functional_eval(int k, const SparseVector& x) const {
  const BlockData& b = complete_block(*this, k, "functional_eval");
  double inner = 0.0;
  for (std::size_t i = 0; i < b.seg.nodes.size(); ++i) inner += b.beta[i] * x[b.seg.nodes[i]];
  return inner / (static_cast<double>(b.multiplier) * b.multiplier);
}

BranchData branch_partition(const Branch& sigma, const JTGParams& params) {
  params.validate();
  if (sigma.nodes.empty()) fail(Errc::branch_too_short, "empty branch");
  BranchData bd;
  bd.branch = sigma;
  std::vector<int> rest = sigma.nodes;
  int j = params.gamma_root;
  while (!rest.empty()) {
    if (!params.has_order(j)) {
      bd.tail_reason = TailReason::params_exhausted;
      break;
    }
    BlockData block;
    block.j = j;
    block.order = params.order(j);
    block.multiplier = params.multiplier(j);
    std::vector<int> seg;
    try {
      seg = maximal_initial_segment(rest, block.order);
      block.complete = true;
    } catch (const Error& e) {
      if (e.code() != Errc::window_too_short) throw;
      seg = rest;  // branch exhausted mid-block
      block.complete = false;
    }
    const long long mult = block.multiplier;
    block.growth_flag = seg.front() > 9 * mult * mult * mult * mult;
    block.seg = Segment{seg};
    rest.erase(rest.begin(), rest.begin() + seg.size());
    bool complete = block.complete;
    NodeId block_max = block.seg.bottom();
    bd.blocks.push_back(std::move(block));
    if (!complete) {
      bd.tail_reason = TailReason::branch_exhausted;
      break;
    }
    if (rest.empty()) break;
    std::optional<int> next = params.gamma_at(block_max);
    if (!next) {
      bd.tail_reason = TailReason::gamma_missing;
      break;
    }
    j = *next;
  }
  bool any_complete = std::any_of(bd.blocks.begin(), bd.blocks.end(),
                                  [](const BlockData& b) { return b.complete; });
  if (!any_complete)
    fail(Errc::branch_too_short, "branch ends before its first maximal block completes");
  return bd;
}

void materialize_pairs(BranchData& bd) {
  for (BlockData& b : bd.blocks) {
    b.beta_sq = average_weights_on_prefix(b.order, b.seg.nodes, b.complete);
    b.beta.resize(b.beta_sq.size());
    Rational max_sq(0);
    for (std::size_t i = 0; i < b.beta_sq.size(); ++i) {
      b.beta[i] = std::sqrt(to_double(b.beta_sq[i]));
      max_sq = std::max(max_sq, b.beta_sq[i]);
    }
    // ‖x_k‖_∞ = m² max β <= 1, exactly: max β²· m⁴ <= 1.
    Rational m4 = Rational(b.multiplier) * b.multiplier * b.multiplier * b.multiplier;
    b.sup_norm_flag = b.complete && max_sq * m4 <= 1;
  }
  bd.materialized = true;
}

WSigmaResult w_sigma_seminorm(const SparseVector& x, const BranchData& bd) {
  if (!bd.materialized) throw std::logic_error("branch data not materialized");
  WSigmaResult best;

  // Support points on the branch, each with its block and in-block position.
  struct Point {
    std::size_t pos;  // position along the branch
    int block;        // 1-based; 0 if past the partition
    std::size_t offset;
    double coeff;
  };
  std::vector<Point> pts;
  for (std::size_t pos = 0; pos < bd.branch.nodes.size(); ++pos) {
    NodeId v = bd.branch.nodes[pos];
    double a = x[v];
    if (a == 0.0) continue;
    int k = bd.block_of(v);
    std::size_t offset = 0;
    if (k > 0) {
      const auto& seg = bd.block(k).seg.nodes;
      offset = std::lower_bound(seg.begin(), seg.end(), v) - seg.begin();
    }
    pts.push_back({pos, k, offset, a});
  }
  if (pts.empty()) return best;

  // The functional value depends on an interval E only through the support
  // points it contains, so intervals with support endpoints are exhaustive.
  std::vector<double> inner(bd.block_count() + 1, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::fill(inner.begin(), inner.end(), 0.0);
    for (std::size_t j = i; j < pts.size(); ++j) {
      const Point& q = pts[j];
      if (q.block > 0) inner[q.block] += bd.block(q.block).beta[q.offset] * q.coeff;
      double ss = 0.0;
      for (int k = 1; k <= bd.block_count(); ++k) {
        if (inner[k] == 0.0) continue;
        double mult = static_cast<double>(bd.block(k).multiplier);
        double vk = inner[k] / (mult * mult);
        ss += vk * vk;
      }
      double val = std::sqrt(ss);
      if (val > best.value) {
        best.value = val;
        best.interval.nodes.assign(bd.branch.nodes.begin() + pts[i].pos,
                                   bd.branch.nodes.begin() + q.pos + 1);
      }
    }
  }

  // Recompute the winning profile and rationalize λ with Σλ² <= 1 (truncation
  // toward zero at 24 fractional bits).
  if (best.value > 0.0) {
    std::fill(inner.begin(), inner.end(), 0.0);
    for (const Point& q : pts) {
      NodeId v = bd.branch.nodes[q.pos];
      if (v < best.interval.top() || v > best.interval.bottom()) continue;
      if (q.block > 0) inner[q.block] += bd.block(q.block).beta[q.offset] * q.coeff;
    }
    const long long scale = 1ll << 24;
    for (int k = 1; k <= bd.block_count(); ++k) {
      if (inner[k] == 0.0) continue;
      double mult = static_cast<double>(bd.block(k).multiplier);
      double lam = std::fabs(inner[k] / (mult * mult)) / best.value;
      auto scaled = static_cast<long long>(std::floor(lam * static_cast<double>(scale)));
      best.lambda.emplace_back(k, Rational(scaled, scale));
    }
  }
  return best;
}

ValidationReport validate_params(const JTGParams& params, const TreePrefix& t) {
  ValidationReport report;
  try {
    params.validate();
    report.params_ok = true;
  } catch (const Error& e) {
    report.params_ok = false;
    report.params_error = e.what();
    return report;
  }

  auto check_node = [&](NodeId v) {
    NodeGrowthCheck c;
    c.node = v;
    const auto& ch = t.children(v);
    if (ch.empty()) {
      c.vacuous = true;
      c.pass = true;  // nothing below to violate the bound
      return c;
    }
    c.min_child = ch.front();
    std::optional<int> g = params.gamma_at(v);
    if (!g || !params.has_order(*g)) {
      c.vacuous = true;
      c.pass = false;  // bound not evaluable
      return c;
    }
    long long mm = params.multiplier(*g);
    c.bound = 9 * mm * mm * mm * mm;  // (3m²)²
    c.pass = c.min_child > c.bound;
    return c;
  };
  report.nodes.push_back(check_node(kRoot));
  for (NodeId v : t.node_list()) report.nodes.push_back(check_node(v));
  report.strict_growth = std::all_of(report.nodes.begin(), report.nodes.end(),
                                     [](const NodeGrowthCheck& c) { return c.pass; });

  for (const Branch& sigma : t.leaf_branches()) {
    BranchData bd;
    try {
      bd = branch_partition(sigma, params);
    } catch (const Error& e) {
      if (e.code() == Errc::branch_too_short) continue;
      throw;
    }
    materialize_pairs(bd);
    for (int k = 1; k <= bd.block_count(); ++k) {
      if (!bd.block(k).complete) continue;
      report.blocks.push_back(
          {sigma.leaf(), k, bd.block(k).growth_flag, bd.block(k).sup_norm_flag});
    }
  }
  return report;
}

JtgSpace::JtgSpace(const TreePrefix& t, JTGParams params) : tree_(&t), params_(std::move(params)) {
  params_.validate();
}

const BranchData& JtgSpace::branch_data(NodeId leaf) const {
  auto it = cache_.find(leaf);
  if (it != cache_.end()) return it->second;
  Branch sigma = tree_->branch_through(leaf);
  if (sigma.leaf() != leaf) fail(Errc::unknown_node, "node is not a leaf of the prefix");
  BranchData bd = branch_partition(sigma, params_);
  materialize_pairs(bd);
  return cache_.emplace(leaf, std::move(bd)).first->second;
}

const BranchData& JtgSpace::covering_branch_data(NodeId v) const {
  return branch_data(tree_->branch_through(v).leaf());
}

WSigmaResult JtgSpace::segment_seminorm(const SparseVector& x, NodeId u, NodeId v) const {
  Segment s = tree_->segment_between(u, v);
  return w_sigma_seminorm(x.restricted(s), covering_branch_data(v));
}

double JtgSpace::segment_value(const SparseVector& x, NodeId u, NodeId v) const {
  return segment_seminorm(x, u, v).value;
}

GNormResult jtg_norm(const SparseVector& x, const JtgSpace& space) {
  GNormResult result;
  if (x.empty()) return result;
  const std::vector<NodeId> supp = x.support();

  std::map<std::pair<NodeId, NodeId>, double> cache;
  auto seg_value_sq = [&](NodeId u, NodeId v) {
    auto it = cache.find({u, v});
    double val = (it != cache.end()) ? it->second : space.segment_value(x, u, v);
    if (it == cache.end()) cache.emplace(std::pair(u, v), val);
    return val * val;
  };

  // Fix the minimal top m of the family: tops are then >= m and the
  // S_1-admissibility cap is exactly m segments.
  double best_sq = 0.0;
  std::vector<Segment> best_family;
  for (NodeId m : supp) {
    PackingOptions opt;
    opt.min_top_label = m;
    opt.max_segments = std::min<int>(m, static_cast<int>(supp.size()));
    Packing packed = max_disjoint_segment_sum(space.tree(), seg_value_sq, opt);
    if (packed.total > best_sq) {
      best_sq = packed.total;
      best_family = std::move(packed.family);
    }
  }

  double family_value = std::sqrt(best_sq);
  double sup = x.linf();
  result.value = std::max(sup, family_value);
  result.sup_norm_attained = sup >= family_value;
  for (const Segment& s : best_family) {
    WSigmaResult w = space.segment_seminorm(x, s.top(), s.bottom());
    if (w.value == 0.0) continue;
    result.per_segment.push_back({s, w.value, w.interval, std::move(w.lambda)});
  }
  return result;
}

double jtg_norm_bruteforce(const SparseVector& x, const JtgSpace& space) {
  const std::vector<NodeId> supp = x.support();
  if (supp.size() > 10) fail(Errc::too_large, "brute-force JT_G norm capped at 10 support nodes");
  if (supp.empty()) return 0.0;

  std::map<std::pair<NodeId, NodeId>, double> cache;
  auto seg_value = [&](NodeId u, NodeId v) {
    auto key = std::pair(u, v);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    double val = space.segment_value(x, u, v);
    cache.emplace(key, val);
    return val;
  };

  double best = x.linf();
  for_each_disjoint_family(space.tree(), supp, [&](const std::vector<Segment>& family) {
    if (family.empty()) return;
    std::vector<int> minima;
    minima.reserve(family.size());
    for (const Segment& s : family) minima.push_back(s.top());
    std::sort(minima.begin(), minima.end());
    if (!schreier_member(minima, 1)) return;
    double ss = 0.0;
    for (const Segment& s : family) {
      double v = seg_value(s.top(), s.bottom());
      ss += v * v;
    }
    best = std::max(best, std::sqrt(ss));
  });
  return best;
}

SparseVector project_branch(const SparseVector& x, const BranchData& bd) {
  return project_branch_truncated(x, bd, 0);
}

SparseVector project_branch_truncated(const SparseVector& x, const BranchData& bd, NodeId cut) {
  if (!bd.materialized) throw std::logic_error("branch data not materialized");
  SparseVector out;
  for (int k = 1; k <= bd.block_count(); ++k) {
    const BlockData& b = bd.block(k);
    if (!b.complete || b.seg.top() < cut) continue;
    double c = bd.functional_eval(k, x);
    if (c == 0.0) continue;
    out.axpy(c, bd.node_vector(k));
  }
  return out;
}

SparseVector project_family(const SparseVector& x, const std::vector<const BranchData*>& branches,
                            int cut, const TreePrefix& t) {
  // The Pythagorean lemma needs #F <= cut; a single projection is always fine.
  if (branches.size() >= 2 && static_cast<int>(branches.size()) > cut)
    fail(Errc::too_many_branches, "family of " + std::to_string(branches.size()) +
                                      " branches exceeds the cutoff " + std::to_string(cut));
  std::vector<NodeId> finals;
  for (const BranchData* bd : branches) {
    for (int k = 1; k <= bd->block_count(); ++k)
      if (bd->block(k).complete && bd->block(k).seg.top() >= cut) {
        finals.push_back(bd->block(k).seg.top());
        break;
      }
  }
  for (std::size_t i = 0; i < finals.size(); ++i)
    for (std::size_t j = i + 1; j < finals.size(); ++j)
      if (t.is_comparable(finals[i], finals[j]))
        fail(Errc::segments_comparable, "truncated finals share a node: " +
                                            std::to_string(finals[i]) + " vs " +
                                            std::to_string(finals[j]));
  SparseVector out;
  for (const BranchData* bd : branches) {
    SparseVector part = project_branch_truncated(x, *bd, cut);
    out.axpy(1.0, part);
  }
  return out;
}

}  // namespace jtree
