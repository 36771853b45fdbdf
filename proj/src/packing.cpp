#include "jtree/packing.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

#include "jtree/errors.hpp"

namespace jtree {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Per-state values are "at most c closed segments" arrays (nondecreasing in
// c); an unbounded run uses single-cell arrays. Combining independent regions
// is a max-plus convolution, which stays nondecreasing.
class Solver {
 public:
  Solver(const TreePrefix& t, const std::function<double(NodeId, NodeId)>& seg_value,
         const PackingOptions& opt)
      : tree_(t), seg_value_(seg_value), opt_(opt) {
    n_ = static_cast<int>(t.size());
    cap_ = opt.max_segments;
    free_.resize(n_);
    open_.resize(n_);
    others_.resize(n_);
    path_.resize(n_);
    for (NodeId v : tree_.node_list()) {
      int i = tree_.dense_index(v);
      path_[i] = tree_.path_from_root(v);
      open_[i].assign(path_[i].size(), {});
      others_[i].assign(tree_.children(v).size(), {});
    }
  }

  Packing solve() {
    // Labels are parent-increasing, so descending label order visits children
    // before parents.
    const auto& nodes = tree_.node_list();
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) compute_node(*it);
    compute_root();
    Packing out;
    out.total = root_pref_.back().back();
    reconstruct_children(kRoot, budget_of(root_pref_.back()));
    std::sort(out_family_.begin(), out_family_.end(), [](const Segment& a, const Segment& b) {
      return std::pair(a.top(), a.bottom()) < std::pair(b.top(), b.bottom());
    });
    out.family = std::move(out_family_);
    return out;
  }

 private:
  using Arr = std::vector<double>;

  std::size_t asize() const { return cap_ > 0 ? static_cast<std::size_t>(cap_) + 1 : 1; }
  int budget_of(const Arr& a) const { return static_cast<int>(a.size()) - 1; }

  Arr identity() const { return Arr(asize(), 0.0); }

  Arr combine(const Arr& a, const Arr& b) const {
    if (cap_ == 0) return Arr{a[0] + b[0]};
    Arr c(asize(), kNegInf);
    for (std::size_t i = 0; i < asize(); ++i)
      for (std::size_t j = 0; i + j < asize(); ++j)
        c[i + j] = std::max(c[i + j], a[i] + b[j]);
    return c;
  }

  Arr close_option(const Arr& children, double value) const {
    if (cap_ == 0) return Arr{children[0] + value};
    Arr c(asize(), kNegInf);
    for (std::size_t i = 0; i + 1 < asize(); ++i) c[i + 1] = children[i] + value;
    return c;
  }

  static void max_into(Arr& dst, const Arr& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = std::max(dst[i], src[i]);
  }

  double value_of(NodeId u, NodeId v) {
    auto key = std::pair(u, v);
    auto it = value_cache_.find(key);
    if (it != value_cache_.end()) return it->second;
    double val = seg_value_(u, v);
    if (!(val >= 0.0)) throw std::logic_error("segment values must be nonnegative");
    value_cache_.emplace(key, val);
    return val;
  }

  bool top_allowed(NodeId u) const { return u >= opt_.min_top_label; }

  // pref/suf of free() over a child list; pref has size nch+1 with pref[0]=id.
  void child_tables(NodeId v, std::vector<Arr>& pref, std::vector<Arr>& suf) const {
    const auto& ch = tree_.children(v);
    pref.assign(ch.size() + 1, {});
    suf.assign(ch.size() + 1, {});
    pref[0] = identity();
    for (std::size_t i = 0; i < ch.size(); ++i)
      pref[i + 1] = combine(pref[i], free_[tree_.dense_index(ch[i])]);
    suf[ch.size()] = identity();
    for (std::size_t i = ch.size(); i-- > 0;)
      suf[i] = combine(free_[tree_.dense_index(ch[i])], suf[i + 1]);
  }

  void compute_node(NodeId v) {
    const int vi = tree_.dense_index(v);
    const auto& ch = tree_.children(v);
    child_tables(v, node_pref_[vi], node_suf_[vi]);
    const Arr& allch = node_pref_[vi].back();
    for (std::size_t i = 0; i < ch.size(); ++i)
      others_[vi][i] = combine(node_pref_[vi][i], node_suf_[vi][i + 1]);

    // Open states, one per ancestor-or-self start.
    for (std::size_t d = 0; d < path_[vi].size(); ++d) {
      NodeId u = path_[vi][d];
      if (!top_allowed(u)) continue;
      Arr state = close_option(allch, value_of(u, v));
      for (std::size_t i = 0; i < ch.size(); ++i) {
        const Arr& child_open = open_[tree_.dense_index(ch[i])][d];
        max_into(state, combine(others_[vi][i], child_open));
      }
      open_[vi][d] = std::move(state);
    }

    Arr f = allch;
    if (top_allowed(v)) max_into(f, open_[vi][path_[vi].size() - 1]);
    free_[vi] = std::move(f);
  }

  void compute_root() {
    std::vector<Arr> suf_unused;
    child_tables(kRoot, root_pref_, suf_unused);
  }

  // --- reconstruction ------------------------------------------------------
  // Options are re-derived from the memoized child arrays; scanning in a fixed
  // order (open early, close early, smaller children first) keeps the family
  // deterministic and lexicographically small in the common ties.

  std::pair<int, int> find_split(const Arr& a, const Arr& b, int budget, double target) const {
    if (cap_ == 0) return {0, 0};
    for (int i = 0; i <= budget; ++i)
      if (a[i] + b[budget - i] == target) return {i, budget - i};
    throw std::logic_error("packing backtrack lost a split");
  }

  void reconstruct_children(NodeId v, int budget) {
    const auto& ch = tree_.children(v);
    const auto& pref = (v == kRoot) ? root_pref_ : node_pref_[tree_.dense_index(v)];
    for (std::size_t i = ch.size(); i-- > 0;) {
      const Arr& child_free = free_[tree_.dense_index(ch[i])];
      double target = pref[i + 1][budget];
      auto [a, b] = cap_ == 0 ? std::pair(0, 0) : find_split(pref[i], child_free, budget, target);
      reconstruct_free(ch[i], b);
      budget = a;
    }
  }

  void reconstruct_free(NodeId v, int budget) {
    const int vi = tree_.dense_index(v);
    double target = free_[vi][budget];
    if (top_allowed(v) && open_[vi][path_[vi].size() - 1][budget] == target) {
      reconstruct_open(v, static_cast<int>(path_[vi].size()) - 1, budget);
      return;
    }
    reconstruct_children(v, budget);
  }

  void reconstruct_open(NodeId v, int d, int budget) {
    const int vi = tree_.dense_index(v);
    const auto& ch = tree_.children(v);
    const NodeId u = path_[vi][d];
    const double target = open_[vi][d][budget];
    const Arr closed = close_option(node_pref_[vi].back(), value_of(u, v));
    if (closed[budget] == target) {
      out_family_.push_back(tree_.segment_between(u, v));
      reconstruct_children(v, cap_ == 0 ? 0 : budget - 1);
      return;
    }
    for (std::size_t i = 0; i < ch.size(); ++i) {
      const Arr& child_open = open_[tree_.dense_index(ch[i])][d];
      Arr option = combine(others_[vi][i], child_open);
      if (option[budget] != target) continue;
      auto [a, b] = find_split(others_[vi][i], child_open, budget, target);
      reconstruct_open(ch[i], d, b);
      // others_i = pref[i] ⊗ suf[i+1]; unwind that pair as well.
      double others_target = others_[vi][i][a];
      auto [ap, as] = find_split(node_pref_[vi][i], node_suf_[vi][i + 1], a, others_target);
      reconstruct_children_prefix(v, static_cast<int>(i), ap);
      reconstruct_children_suffix(v, static_cast<int>(i) + 1, as);
      return;
    }
    throw std::logic_error("packing backtrack lost an open state");
  }

  void reconstruct_children_prefix(NodeId v, int count, int budget) {
    const int vi = tree_.dense_index(v);
    const auto& ch = tree_.children(v);
    const auto& pref = node_pref_[vi];
    for (int i = count; i-- > 0;) {
      const Arr& child_free = free_[tree_.dense_index(ch[i])];
      auto [a, b] = find_split(pref[i], child_free, budget, pref[i + 1][budget]);
      reconstruct_free(ch[i], b);
      budget = a;
    }
  }

  void reconstruct_children_suffix(NodeId v, int from, int budget) {
    const int vi = tree_.dense_index(v);
    const auto& ch = tree_.children(v);
    const auto& suf = node_suf_[vi];
    for (std::size_t i = from; i < ch.size(); ++i) {
      const Arr& child_free = free_[tree_.dense_index(ch[i])];
      auto [b, a] = find_split(child_free, suf[i + 1], budget, suf[i][budget]);
      reconstruct_free(ch[i], b);
      budget = a;
    }
  }

  const TreePrefix& tree_;
  const std::function<double(NodeId, NodeId)>& seg_value_;
  PackingOptions opt_;
  int n_ = 0;
  int cap_ = 0;

  std::vector<Arr> free_;
  std::vector<std::vector<Arr>> open_;  // [node][start depth]
  std::map<int, std::vector<Arr>> node_pref_, node_suf_;
  std::vector<std::vector<Arr>> others_;
  std::vector<std::vector<NodeId>> path_;
  std::vector<Arr> root_pref_;
  std::map<std::pair<NodeId, NodeId>, double> value_cache_;
  std::vector<Segment> out_family_;
};

}  // namespace

Packing max_disjoint_segment_sum(const TreePrefix& t,
                                 const std::function<double(NodeId, NodeId)>& seg_value,
                                 const PackingOptions& opt) {
  if (t.size() == 0) return {};
  if (opt.max_segments < 0) throw std::invalid_argument("negative segment cap");
  Solver solver(t, seg_value, opt);
  return solver.solve();
}

void for_each_disjoint_family(const TreePrefix& t, const std::vector<NodeId>& anchors,
                              const std::function<void(const std::vector<Segment>&)>& visit) {
  if (t.size() > 64) fail(Errc::too_large, "family enumeration requires <= 64 tree nodes");
  struct Candidate {
    Segment seg;
    std::uint64_t mask;
  };
  std::vector<Candidate> cands;
  for (NodeId a : anchors)
    for (NodeId b : anchors) {
      if (!t.is_ancestor(a, b)) continue;
      Segment s = t.segment_between(a, b);
      std::uint64_t mask = 0;
      for (NodeId v : s.nodes) mask |= std::uint64_t{1} << t.dense_index(v);
      cands.push_back({std::move(s), mask});
    }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return std::pair(a.seg.top(), a.seg.bottom()) < std::pair(b.seg.top(), b.seg.bottom());
  });
  std::vector<Segment> family;
  auto rec = [&](auto&& self, std::size_t from, std::uint64_t used) -> void {
    visit(family);
    for (std::size_t i = from; i < cands.size(); ++i) {
      if (cands[i].mask & used) continue;
      family.push_back(cands[i].seg);
      self(self, i + 1, used | cands[i].mask);
      family.pop_back();
    }
  };
  rec(rec, 0, 0);
}

}  // namespace jtree
