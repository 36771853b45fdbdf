#include "jtree/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "jtree/analysis.hpp"
#include "jtree/errors.hpp"
#include "jtree/fixtures.hpp"
#include "jtree/framework.hpp"
#include "jtree/gen.hpp"
#include "jtree/jt2p.hpp"
#include "jtree/jtg.hpp"
#include "jtree/packing.hpp"
#include "jtree/schreier.hpp"

namespace jtree {

int SuiteResult::failures() const {
  int n = 0;
  for (const CheckResult& c : checks)
    if (!c.pass) ++n;
  return n;
}

namespace {

class Checker {
 public:
  explicit Checker(std::string suite) { result_.suite = std::move(suite); }

  void check(const std::string& name, bool pass, const std::string& detail = "") {
    result_.checks.push_back({name, pass, detail});
  }

  // Accumulating form: call add() many times, then close() once.
  void add(bool pass, const std::string& detail = "") {
    ++total_;
    if (!pass) {
      ++failed_;
      if (first_failure_.empty()) first_failure_ = detail;
    }
  }
  void close(const std::string& name) {
    std::ostringstream os;
    os << (total_ - failed_) << "/" << total_ << " cases";
    if (!first_failure_.empty()) os << "; first failure: " << first_failure_;
    result_.checks.push_back({name, failed_ == 0, os.str()});
    total_ = failed_ = 0;
    first_failure_.clear();
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
  int total_ = 0;
  int failed_ = 0;
  std::string first_failure_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::vector<TreePrefix> fixture_trees(std::uint64_t seed) {
  std::vector<TreePrefix> trees;
  trees.push_back(make_chain(8));
  trees.push_back(make_star(7));
  trees.push_back(make_binary(15));
  trees.push_back(make_random_tree(12, seed ^ 0x51u));
  trees.push_back(make_random_tree(10, seed ^ 0x52u, 3));
  return trees;
}

// ---------------------------------------------------------------- tree suite

SuiteResult suite_tree(std::uint64_t seed) {
  Checker c("tree");

  for (const TreePrefix& t : fixture_trees(seed)) {
    // Intersections of segments of a common branch are segments or empty.
    for (const Branch& sigma : t.leaf_branches()) {
      const auto& bn = sigma.nodes;
      for (std::size_t i = 0; i < bn.size(); ++i)
        for (std::size_t j = i; j < bn.size(); ++j)
          for (std::size_t k = 0; k < bn.size(); ++k)
            for (std::size_t l = k; l < bn.size(); ++l) {
              std::size_t lo = std::max(i, k), hi = std::min(j, l);
              Segment s1 = t.segment_between(bn[i], bn[j]);
              Segment s2 = t.segment_between(bn[k], bn[l]);
              std::vector<NodeId> inter;
              std::set_intersection(s1.nodes.begin(), s1.nodes.end(), s2.nodes.begin(),
                                    s2.nodes.end(), std::back_inserter(inter));
              bool ok = lo > hi ? inter.empty()
                                : inter == t.segment_between(bn[lo], bn[hi]).nodes;
              c.add(ok, "segment intersection on a branch");
            }
    }
  }
  c.close("segment-intersection-is-segment");

  for (const TreePrefix& t : fixture_trees(seed)) {
    // There is a level k past which all leaf-branch finals are incomparable.
    auto branches = t.leaf_branches();
    NodeId k = 0;
    for (std::size_t i = 0; i < branches.size(); ++i)
      for (std::size_t j = i + 1; j < branches.size(); ++j) {
        const auto& a = branches[i].nodes;
        const auto& b = branches[j].nodes;
        for (std::size_t d = 0; d < std::min(a.size(), b.size()); ++d)
          if (a[d] == b[d]) k = std::max(k, a[d]);
      }
    for (std::size_t i = 0; i < branches.size(); ++i)
      for (std::size_t j = i + 1; j < branches.size(); ++j) {
        auto first_after = [&](const Branch& br) -> NodeId {
          for (NodeId v : br.nodes)
            if (v > k) return v;
          return 0;
        };
        NodeId fi = first_after(branches[i]), fj = first_after(branches[j]);
        // A branch exhausted at level k has an empty final segment, which is
        // vacuously incomparable with everything.
        if (fi == 0 || fj == 0) {
          c.add(true);
          continue;
        }
        c.add(!t.is_comparable(fi, fj), "finals comparable past k");
      }
  }
  c.close("distinct-branches-have-incomparable-finals");

  for (const TreePrefix& t : fixture_trees(seed)) {
    for (NodeId a : t.node_list())
      for (NodeId b : t.node_list()) {
        if (!t.is_ancestor(a, b)) continue;
        Segment s = t.segment_between(a, b);
        c.add(std::is_sorted(s.nodes.begin(), s.nodes.end()) &&
                  std::adjacent_find(s.nodes.begin(), s.nodes.end()) == s.nodes.end(),
              "segment nodes not strictly increasing");
      }
  }
  c.close("segments-numerically-increasing");

  return c.take();
}

// ------------------------------------------------------------ schreier suite

SuiteResult suite_schreier(std::uint64_t seed) {
  Checker c("schreier");
  Rng rng(seed ^ 0x5c427e1eull);

  // Hereditary, exhaustively on the ground set {1..12} for n = 1, 2.
  for (int n : {1, 2}) {
    std::vector<bool> member(1u << 12);
    for (std::uint32_t mask = 0; mask < member.size(); ++mask) {
      std::vector<int> f;
      for (int i = 0; i < 12; ++i)
        if (mask & (1u << i)) f.push_back(i + 1);
      member[mask] = schreier_member(f, n);
    }
    bool ok = true;
    for (std::uint32_t mask = 0; mask < member.size() && ok; ++mask) {
      if (!member[mask]) continue;
      for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask)
        if (!member[sub]) {
          ok = false;
          break;
        }
    }
    c.check("hereditary-n" + std::to_string(n), ok);
  }

  // Spreading, sampled.
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + rng.below(2);
    std::vector<int> f;
    int v = 1 + rng.below(5);
    while (f.size() < 6 && rng.below(3) != 0) {
      f.push_back(v);
      v += 1 + rng.below(4);
    }
    if (!schreier_member(f, n)) continue;
    std::vector<int> g = f;
    int bump = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      bump += rng.below(3);
      g[i] += bump;
    }
    c.add(schreier_member(g, n), "spread of a member left the family");
  }
  c.close("spreading-sampled");

  // Repeated-average lemma items: convexity, monotone coefficients, support
  // maximality, the S_{n-1} tail bound, and the partition property. Windows
  // are chosen so the first block completes within them (order-2 blocks from
  // larger minima outgrow any desk-size window).
  auto consecutive = [](int start, int len) {
    std::vector<int> w;
    for (int i = 0; i < len; ++i) w.push_back(start + i);
    return w;
  };
  const std::vector<int> sparse = {2, 5, 6, 9, 11, 14, 17, 18, 20, 23, 26, 29, 30,
                                   31, 33, 36, 39, 40, 41, 45, 47, 52, 53, 55, 58, 60};
  std::vector<std::pair<int, std::vector<int>>> cases;
  for (int start : {2, 3, 4, 7}) cases.emplace_back(1, consecutive(start, 40));
  cases.emplace_back(1, sparse);
  for (int start : {2, 3}) cases.emplace_back(2, consecutive(start, 40));
  cases.emplace_back(2, sparse);
  {
    for (const auto& [n, w] : cases) {
      RepeatedAverage a;
      try {
        a = repeated_average(n, w, 1);
      } catch (const Error& e) {
        c.add(false, std::string("window rejected: ") + e.what());
        continue;
      }
      Rational sum(0);
      bool monotone = true;
      for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        sum += a.coeffs[i].second;
        if (i > 0 && a.coeffs[i].second > a.coeffs[i - 1].second) monotone = false;
      }
      c.add(sum == 1, "coefficients do not sum to 1");
      c.add(monotone, "coefficients increase along the support");
      c.add(a.support() == maximal_initial_segment(w, n), "support is not the maximal block");

      // Tail bound: the extremal S_{n-1} subset takes the largest weights, so
      // checking it is exhaustive over S_{n-1}.
      Rational tail_max(0);
      if (n == 1) {
        for (const auto& [node, wt] : a.coeffs) tail_max = std::max(tail_max, wt);
      } else {
        for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
          Rational s = a.coeffs[i].second;  // min element of the subset
          std::vector<Rational> rest;
          for (std::size_t j = i + 1; j < a.coeffs.size(); ++j) rest.push_back(a.coeffs[j].second);
          std::sort(rest.rbegin(), rest.rend());
          for (int j = 0; j + 1 < a.coeffs[i].first && j < static_cast<int>(rest.size()); ++j)
            s += rest[j];
          tail_max = std::max(tail_max, s);
        }
      }
      c.add(tail_max < Rational(3, w.front()), "S_{n-1} tail bound violated");
    }
  }
  c.close("repeated-average-lemma");

  // True exhaustive S_1 tail check on short windows (n = 2).
  for (int start : {2, 3}) {
    std::vector<int> w;
    for (int i = 0; i < 24; ++i) w.push_back(start + i);
    RepeatedAverage a = repeated_average(2, w, 1);
    std::vector<int> supp = a.support();
    bool ok = true;
    for (std::uint32_t mask = 0; mask < (1u << supp.size()); ++mask) {
      std::vector<int> g;
      Rational sum(0);
      for (std::size_t i = 0; i < supp.size(); ++i)
        if (mask & (1u << i)) {
          g.push_back(supp[i]);
          sum += a.weight(supp[i]);
        }
      if (schreier_member(g, 1) && !(sum < Rational(3, w.front()))) ok = false;
    }
    c.add(ok, "exhaustive S_1 tail bound, window at " + std::to_string(start));
  }
  c.close("tail-bound-exhaustive");

  // Window independence: equal supports force equal coefficients. Order-2
  // averages past the first block outgrow desk windows, so k > 1 runs at
  // order 1 only.
  {
    std::vector<int> base;
    for (int i = 0; i < 30; ++i) base.push_back(2 + i);
    for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {1, 3}, {2, 1}}) {
      RepeatedAverage a = repeated_average(n, base, k);
      std::vector<int> consumed;
      for (int i = 1; i <= k; ++i) {
        auto s = repeated_average(n, base, i).support();
        consumed.insert(consumed.end(), s.begin(), s.end());
      }
      int last = consumed.back();
      std::vector<int> other = base;
      other.erase(std::remove_if(other.begin(), other.end(), [&](int v) { return v > last; }),
                  other.end());
      for (int v = last + 5; v < last + 40; v += 2) other.push_back(v);
      RepeatedAverage b = repeated_average(n, other, k);
      c.add(a.coeffs == b.coeffs, "coefficients changed with the tail of the window");
    }
    c.close("window-independence");
  }

  // S^(2) fast norm equals subset enumeration.
  for (int trial = 0; trial < 120; ++trial) {
    TreePrefix chain = make_chain(8 + rng.below(5), 1 + rng.below(4));
    SparseVector x = random_vector(rng, chain, 0.8);
    double fast = s2_norm(x);
    double brute = s2_norm_bruteforce(x);
    c.add(std::fabs(fast - brute) <= 1e-12,
          "s2 fast=" + fmt(fast) + " brute=" + fmt(brute));
  }
  c.close("s2-norm-vs-bruteforce");

  // Membership via greedy decomposition vs exhaustive split search (n = 2, 3).
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + rng.below(2);
    std::vector<int> f;
    int v = 1 + rng.below(4);
    int len = 1 + rng.below(7);
    for (int i = 0; i < len; ++i) {
      f.push_back(v);
      v += 1 + rng.below(3);
    }
    // Exhaustive: try all ways to cut f into consecutive blocks.
    auto exhaustive = [&](auto&& self, const std::vector<int>& rest, int d_left, int nn) -> bool {
      if (rest.empty()) return true;
      if (d_left == 0) return false;
      for (std::size_t cut = 1; cut <= rest.size(); ++cut) {
        std::vector<int> head(rest.begin(), rest.begin() + cut);
        bool head_ok = nn - 1 == 1 ? static_cast<int>(head.size()) <= head.front()
                                   : self(self, head, head.front(), nn - 1);
        if (!head_ok) continue;
        std::vector<int> tail(rest.begin() + cut, rest.end());
        if (self(self, tail, d_left - 1, nn)) return true;
      }
      return false;
    };
    bool expect = f.empty() || exhaustive(exhaustive, f, f.front(), n);
    c.add(schreier_member(f, n) == expect, "greedy membership mismatch");
  }
  c.close("membership-greedy-vs-exhaustive");

  return c.take();
}

// --------------------------------------------------------------- jt2p suite

SuiteResult suite_jt2p(std::uint64_t seed) {
  Checker c("jt2p");
  Rng rng(seed ^ 0x2b7e151628ull);
  const std::vector<Rational> ps = {Rational(5, 2), Rational(3), Rational(4)};

  // DP equals the exhaustive oracle: every tree shape with <= 8 nodes, 200
  // random rational vectors each, all three exponents. One enumeration pass
  // scores all exponents at once.
  for (int size = 1; size <= 8; ++size) {
    for (const TreePrefix& t : all_tree_shapes(size)) {
      for (int trial = 0; trial < 200; ++trial) {
        SparseVector x = random_vector(rng, t);
        double best[3] = {0.0, 0.0, 0.0};
        const double pd[3] = {2.5, 3.0, 4.0};
        for_each_disjoint_family(t, x.support(), [&](const std::vector<Segment>& family) {
          double totals[3] = {0.0, 0.0, 0.0};
          for (const Segment& s : family) {
            double ss = 0.0;
            for (NodeId v : s.nodes) ss += x[v] * x[v];
            for (int i = 0; i < 3; ++i) totals[i] += std::pow(ss, pd[i] / 2.0);
          }
          for (int i = 0; i < 3; ++i)
            if (totals[i] > best[i]) best[i] = totals[i];
        });
        for (int i = 0; i < 3; ++i) {
          double oracle = std::pow(best[i], 1.0 / pd[i]);
          double dp = jt2p_norm(x, t, ps[i]).value;
          c.add(std::fabs(dp - oracle) <= 1e-9, "dp=" + fmt(dp) + " oracle=" + fmt(oracle));
        }
      }
    }
  }
  c.close("dp-equals-oracle");

  // 1-unconditionality: sign flips exact, dominance within tolerance.
  for (int trial = 0; trial < 80; ++trial) {
    TreePrefix t = make_random_tree(9, rng.next());
    SparseVector x = random_vector(rng, t);
    const Rational& p = ps[rng.below(3)];
    double base = jt2p_norm(x, t, p).value;
    SparseVector flipped;
    for (const auto& [v, a] : x.entries()) flipped.set(v, rng.below(2) ? -a : a);
    c.add(jt2p_norm(flipped, t, p).value == base, "sign flip changed the norm");
    SparseVector dominated;
    for (const auto& [v, a] : x.entries())
      if (rng.below(4)) dominated.set(v, a * (rng.below(2) ? 0.5 : 1.0));
    c.add(jt2p_norm(dominated, t, p).value <= base + 1e-12, "dominated vector has larger norm");
  }
  c.close("unconditionality");

  // Remark-style lower bound and heavy-segment counting over explicit families.
  for (int trial = 0; trial < 60; ++trial) {
    TreePrefix t = make_random_tree(8, rng.next());
    SparseVector x = random_vector(rng, t);
    if (x.empty()) continue;
    const Rational& p = ps[rng.below(3)];
    const double p_d = to_double(p);
    double norm = jt2p_norm(x, t, p).value;
    if (norm == 0.0) continue;
    SparseVector unit = x.scaled(1.0 / norm);
    for (double eps : {0.3, 0.5}) {
      std::size_t heaviest = 0;
      bool lower_ok = true;
      for_each_disjoint_family(t, x.support(), [&](const std::vector<Segment>& family) {
        double total = 0.0;
        std::size_t heavy = 0;
        for (const Segment& s : family) {
          double ss = 0.0;
          for (NodeId v : s.nodes) ss += unit[v] * unit[v];
          total += std::pow(ss, p_d / 2.0);
          if (std::sqrt(ss) >= eps) ++heavy;
        }
        if (total > 1.0 + 1e-9) lower_ok = false;  // ‖unit‖ = 1 bounds every family
        heaviest = std::max(heaviest, heavy);
      });
      c.add(lower_ok, "disjoint family beats the norm");
      c.add(static_cast<double>(heaviest) <= 1.0 / std::pow(eps, p_d) + 1e-9,
            "heavy count " + std::to_string(heaviest) + " at eps " + fmt(eps));
    }
  }
  c.close("lower-bound-and-heavy-count");

  // Lower ℓ_p estimate for disjointly supported blocks under incomparable roots.
  for (int trial = 0; trial < 40; ++trial) {
    int blocks = 2 + rng.below(4);
    std::vector<std::pair<NodeId, NodeId>> spec;
    NodeId label = 1;
    std::vector<std::vector<NodeId>> groups;
    for (int b = 0; b < blocks; ++b) {
      NodeId root = label++;
      spec.emplace_back(root, kRoot);
      std::vector<NodeId> group = {root};
      int extra = rng.below(3);
      for (int e = 0; e < extra; ++e) {
        spec.emplace_back(label, group[rng.below(static_cast<int>(group.size()))]);
        group.push_back(label++);
      }
      groups.push_back(std::move(group));
    }
    TreePrefix t = TreePrefix::build(spec);
    const Rational& p = ps[rng.below(3)];
    SparseVector total;
    double lp = 0.0;
    for (const auto& group : groups) {
      SparseVector xi;
      for (NodeId v : group)
        if (rng.below(3)) xi.set(v, random_rational_coeff(rng));
      if (xi.empty()) xi.set(group[0], 1.0);
      double ni = jt2p_norm(xi, t, p).value;
      double a = random_rational_coeff(rng);
      total.axpy(a / ni, xi);
      lp += std::pow(std::fabs(a), to_double(p));
    }
    double norm = jt2p_norm(total, t, p).value;
    c.add(norm >= std::pow(lp, 1.0 / to_double(p)) - 1e-9,
          "norm=" + fmt(norm) + " lp=" + fmt(std::pow(lp, 1.0 / to_double(p))));
  }
  c.close("lower-lp-estimate");

  // Certificates: duality attained, structurally valid, and norming.
  for (int trial = 0; trial < 80; ++trial) {
    TreePrefix t = make_random_tree(9, rng.next());
    SparseVector x = random_vector(rng, t);
    const Rational& p = ps[rng.below(3)];
    NormResult r = jt2p_norm(x, t, p);
    try {
      double replay = eval_certificate(r.functional, x, t);
      c.add(std::fabs(replay - r.value) <= 1e-10,
            "replay=" + fmt(replay) + " value=" + fmt(r.value));
      SparseVector y = random_vector(rng, t);
      double other = eval_certificate(r.functional, y, t);
      c.add(other <= jt2p_norm(y, t, p).value + 1e-10, "certificate beats the norm on y");
    } catch (const Error& e) {
      c.add(false, std::string("certificate rejected: ") + e.what());
    }
  }
  c.close("certificate-duality");

  // Splitting at a zero node never helps: (a+b)^{p/2} >= a^{p/2} + b^{p/2}.
  for (int trial = 0; trial < 200; ++trial) {
    double a = rng.uniform() * 9, b = rng.uniform() * 9;
    double p_half = to_double(ps[rng.below(3)]) / 2.0;
    c.add(std::pow(a + b, p_half) >= std::pow(a, p_half) + std::pow(b, p_half) - 1e-12,
          "superadditivity failed");
  }
  c.close("segment-merge-superadditivity");

  return c.take();
}

// ----------------------------------------------------------- framework suite

SuiteResult suite_framework(std::uint64_t seed) {
  Checker c("framework");
  Rng rng(seed ^ 0x1f83d9abull);
  const Rational p4(4);

  // Cross-implementation equality with the jt2p module.
  for (int trial = 0; trial < 60; ++trial) {
    TreePrefix t = make_random_tree(9, rng.next());
    SparseVector x = random_vector(rng, t);
    Rational p = trial % 2 ? Rational(5, 2) : p4;
    double direct = jt2p_norm(x, t, p).value;
    double generic = generalized_norm(x, t, SpaceSpec::jt2p(p)).value;
    c.add(std::fabs(direct - generic) <= 1e-9, "jt2p=" + fmt(direct) + " generic=" + fmt(generic));
  }
  c.close("generalized-matches-jt2p");

  // Certificate consistency: re-aggregating the family reproduces the value.
  for (int trial = 0; trial < 60; ++trial) {
    TreePrefix t = make_random_tree(8, rng.next());
    SparseVector x = random_vector(rng, t);
    SpaceSpec spec = trial % 2 ? SpaceSpec::jt_inf() : SpaceSpec::jt2p(p4);
    GeneralizedNormResult r = generalized_norm(x, t, spec);
    double replay = eval_family_aggregation(r.family, x, t, spec);
    c.add(std::fabs(replay - r.value) <= 1e-12, "replay=" + fmt(replay) + " value=" + fmt(r.value));
  }
  c.close("certificate-consistency");

  // Monotonicity under restriction to segments (bimonotone branch bases).
  for (int trial = 0; trial < 40; ++trial) {
    TreePrefix t = make_random_tree(8, rng.next());
    SparseVector x = random_vector(rng, t);
    SpaceSpec spec = trial % 2 ? SpaceSpec::jt_inf() : SpaceSpec::jt2p(p4);
    double full = generalized_norm(x, t, spec).value;
    for (NodeId a : t.node_list())
      for (NodeId b : t.node_list()) {
        if (!t.is_ancestor(a, b)) continue;
        double part = generalized_norm(x.restricted(t.segment_between(a, b)), t, spec).value;
        c.add(part <= full + 1e-12, "restriction grew the norm");
      }
  }
  c.close("restriction-monotonicity");

  // External-norm unconditionality for the sign-invariant ELL2 seminorm.
  for (int trial = 0; trial < 40; ++trial) {
    TreePrefix t = make_random_tree(8, rng.next());
    SparseVector x = random_vector(rng, t);
    SparseVector flipped;
    for (const auto& [v, a] : x.entries()) flipped.set(v, rng.below(2) ? -a : a);
    double base = generalized_norm(x, t, SpaceSpec::jt2p(p4)).value;
    double flip = generalized_norm(flipped, t, SpaceSpec::jt2p(p4)).value;
    c.add(base == flip, "sign flip changed an ELL2-seminorm space norm");
  }
  c.close("ell2-sign-invariance");

  // Part-II Eq. vs Part-I JT_{2,p}: the sup-norm term is dominated.
  for (int trial = 0; trial < 40; ++trial) {
    TreePrefix t = make_random_tree(8, rng.next());
    SparseVector x = random_vector(rng, t);
    SpaceSpec with_sup = SpaceSpec::jt2p(p4);
    with_sup.include_sup_norm = true;
    double a = generalized_norm(x, t, SpaceSpec::jt2p(p4)).value;
    double b = generalized_norm(x, t, with_sup).value;
    c.add(a == b, "sup-norm term changed the JT_{2,p} value");
  }
  c.close("sup-norm-term-dominated");

  // JT^∞ oracle agreement.
  for (int trial = 0; trial < 50; ++trial) {
    TreePrefix t = make_random_tree(8, rng.next());
    SparseVector x = random_vector(rng, t);
    double dp = generalized_norm(x, t, SpaceSpec::jt_inf()).value;
    double oracle = generalized_norm_bruteforce(x, t, SpaceSpec::jt_inf());
    c.add(std::fabs(dp - oracle) <= 1e-9, "dp=" + fmt(dp) + " oracle=" + fmt(oracle));
  }
  c.close("jtinf-dp-equals-oracle");

  return c.take();
}

// ----------------------------------------------------------------- jtg suite

SuiteResult suite_jtg(std::uint64_t seed) {
  Checker c("jtg");
  Rng rng(seed ^ 0xa5a5a5a5ull);

  JtgFixture fx1 = jtg_fixture_order1();
  JtgSpace space1(fx1.tree, fx1.params);
  JtgFixture fx2 = jtg_fixture_order2();
  JtgSpace space2(fx2.tree, fx2.params);

  // Partition invariants: successive cover, maximality, order recurrence.
  for (const JtgSpace* space : {&space1, &space2}) {
    for (const Branch& sigma : space->tree().leaf_branches()) {
      const BranchData& bd = space->branch_data(sigma.leaf());
      std::size_t covered = 0;
      int prev_j = -1;
      for (int k = 1; k <= bd.block_count(); ++k) {
        const BlockData& b = bd.block(k);
        for (std::size_t i = 0; i < b.seg.nodes.size(); ++i)
          c.add(b.seg.nodes[i] == sigma.nodes[covered + i], "block is not the next chunk");
        covered += b.seg.nodes.size();
        if (b.complete) c.add(schreier_maximal(b.seg.nodes, b.order), "block not maximal");
        c.add(b.j > prev_j, "order indices not increasing");
        prev_j = b.j;
        if (k == 1)
          c.add(b.j == space->params().gamma_root, "first order index is not gamma(ROOT)");
        else if (bd.block(k - 1).complete) {
          auto g = space->params().gamma_at(bd.block(k - 1).seg.bottom());
          c.add(g && *g == b.j, "j_k recurrence broken");
        }
      }
      c.add(covered <= sigma.nodes.size(), "blocks overflow the branch");
    }
  }
  c.close("branch-partition-structure");

  // Materialized pairs: exact normalization and biorthogonality.
  for (const JtgSpace* space : {&space1, &space2}) {
    for (const Branch& sigma : space->tree().leaf_branches()) {
      const BranchData& bd = space->branch_data(sigma.leaf());
      for (int k = 1; k <= bd.block_count(); ++k) {
        if (!bd.block(k).complete) continue;
        Rational sum(0);
        for (const Rational& w : bd.block(k).beta_sq) sum += w;
        c.add(sum == 1, "beta squares do not sum to 1");
        for (int j = 1; j <= bd.block_count(); ++j) {
          if (!bd.block(j).complete) continue;
          double val = bd.functional_eval(k, bd.node_vector(j));
          double want = k == j ? 1.0 : 0.0;
          c.add(std::fabs(val - want) <= 1e-12, "phi_k(x_j) != delta");
        }
      }
    }
  }
  c.close("pair-biorthogonality");

  // Flags: sup-norm bound holds whenever the growth flag passes.
  {
    ValidationReport report = validate_params(fx1.params, fx1.tree);
    c.check("validate-params-ok", report.params_ok, report.params_error);
    bool flags_consistent = true;
    for (const BlockGrowthCheck& b : report.blocks)
      if (b.growth_flag && !b.sup_norm_flag) flags_consistent = false;
    c.check("growth-flag-implies-sup-flag", flags_consistent);
    for (NodeId leaf : fx1.flagged_leaves) {
      const BranchData& bd = space1.branch_data(leaf);
      c.add(bd.block(1).growth_flag && bd.block(1).sup_norm_flag, "fixture block not flagged");
      c.add(bd.node_vector(1).linf() <= 1.0 + 1e-15, "x_1 sup norm exceeds 1");
    }
    c.close("fixture-flags");
  }

  // Norm-1 lemma on flagged blocks, plus the order-2 fixture via the direct flag.
  {
    for (NodeId leaf : fx1.flagged_leaves) {
      double norm = jtg_norm(space1.branch_data(leaf).node_vector(1), space1).value;
      c.add(std::fabs(norm - 1.0) <= 1e-9, "order-1 x_1 norm " + fmt(norm));
    }
    for (const Branch& sigma : fx2.tree.leaf_branches()) {
      const BranchData& bd = space2.branch_data(sigma.leaf());
      c.add(bd.block(1).sup_norm_flag, "order-2 block lost the direct flag");
      double norm = jtg_norm(bd.node_vector(1), space2).value;
      c.add(std::fabs(norm - 1.0) <= 1e-9, "order-2 x_1 norm " + fmt(norm));
    }
    c.close("node-vector-norm-1");
  }

  // DP equals the admissible-family oracle on random small-support vectors.
  for (int trial = 0; trial < 25; ++trial) {
    const JtgSpace& space = trial % 2 ? space2 : space1;
    SparseVector x;
    const auto& nodes = space.tree().node_list();
    int count = 1 + rng.below(6);
    for (int i = 0; i < count; ++i)
      x.set(nodes[rng.below(static_cast<int>(nodes.size()))], random_rational_coeff(rng));
    if (x.empty()) continue;
    double dp = jtg_norm(x, space).value;
    double oracle = jtg_norm_bruteforce(x, space);
    c.add(std::fabs(dp - oracle) <= 1e-9, "dp=" + fmt(dp) + " oracle=" + fmt(oracle));
  }
  c.close("dp-equals-oracle");

  // Projections: contraction, equality at x_j, and the Pythagorean identity.
  {
    for (int trial = 0; trial < 60; ++trial) {
      const JtgSpace& space = trial % 2 ? space2 : space1;
      SparseVector x;
      const auto& nodes = space.tree().node_list();
      int count = 1 + rng.below(6);
      for (int i = 0; i < count; ++i)
        x.set(nodes[rng.below(static_cast<int>(nodes.size()))], random_rational_coeff(rng));
      if (x.empty()) continue;
      double norm = jtg_norm(x, space).value;
      for (const Branch& sigma : space.tree().leaf_branches()) {
        SparseVector proj = project_branch(x, space.branch_data(sigma.leaf()));
        double pn = proj.empty() ? 0.0 : jtg_norm(proj, space).value;
        c.add(pn <= norm + 1e-9, "projection grew the norm");
      }
    }
    for (NodeId leaf : fx1.flagged_leaves) {
      const BranchData& bd = space1.branch_data(leaf);
      SparseVector xj = bd.node_vector(1);
      SparseVector proj = project_branch(xj, bd);
      double pn = jtg_norm(proj, space1).value;
      c.add(std::fabs(pn - jtg_norm(xj, space1).value) <= 1e-9, "projection not attained at x_j");
    }
    c.close("projection-contraction");
  }

  // Heavy-segment counting: ⌊2/ε²⌋ + 1.
  for (int trial = 0; trial < 25; ++trial) {
    const JtgSpace& space = trial % 2 ? space2 : space1;
    SparseVector x;
    const auto& nodes = space.tree().node_list();
    for (int i = 0; i < 8; ++i)
      x.set(nodes[rng.below(static_cast<int>(nodes.size()))], random_rational_coeff(rng));
    if (x.empty()) continue;
    double norm = jtg_norm(x, space).value;
    if (norm == 0.0) continue;
    SparseVector unit = x.scaled(1.0 / norm);
    for (double eps : {0.3, 0.5}) {
      std::size_t heaviest = 0;
      for_each_disjoint_family(space.tree(), unit.support(),
                               [&](const std::vector<Segment>& family) {
                                 std::size_t heavy = 0;
                                 for (const Segment& s : family)
                                   if (space.segment_value(unit, s.top(), s.bottom()) >= eps)
                                     ++heavy;
                                 heaviest = std::max(heaviest, heavy);
                               });
      double bound = std::floor(2.0 / (eps * eps)) + 1.0;
      c.add(static_cast<double>(heaviest) <= bound,
            "heavy count " + std::to_string(heaviest) + " at eps " + fmt(eps));
    }
  }
  c.close("heavy-count");

  // ℓ2 identity for families of flagged node vectors on incomparable branches
  // (the desk-scale form of the unit-vector-basis equivalence).
  {
    JtgFixture fxp = jtg_fixture_parallel(4);
    JtgSpace spacep(fxp.tree, fxp.params);
    std::vector<SparseVector> xs;
    for (NodeId leaf : fxp.flagged_leaves) xs.push_back(spacep.branch_data(leaf).node_vector(1));
    for (int trial = 0; trial < 100; ++trial) {
      SparseVector combo;
      double ss = 0.0;
      for (const SparseVector& x : xs) {
        double a = 2.0 * rng.symmetric();
        combo.axpy(a, x);
        ss += a * a;
      }
      double norm = jtg_norm(combo, spacep).value;
      c.add(std::fabs(norm - std::sqrt(ss)) <= 1e-9,
            "norm=" + fmt(norm) + " l2=" + fmt(std::sqrt(ss)));
    }
    c.close("node-vector-l2-identity");
  }

  // Tree compatibility: shared segments give bitwise-equal seminorms.
  {
    auto compat = [&](const JtgSpace& space, NodeId leaf_a, NodeId leaf_b) {
      const BranchData& ba = space.branch_data(leaf_a);
      const BranchData& bb = space.branch_data(leaf_b);
      std::vector<NodeId> shared;
      for (std::size_t i = 0;
           i < std::min(ba.branch.nodes.size(), bb.branch.nodes.size()) &&
           ba.branch.nodes[i] == bb.branch.nodes[i];
           ++i)
        shared.push_back(ba.branch.nodes[i]);
      for (int trial = 0; trial < 20; ++trial) {
        SparseVector x;
        for (NodeId v : shared)
          if (rng.below(2)) x.set(v, random_rational_coeff(rng));
        if (x.empty()) continue;
        WSigmaResult va = w_sigma_seminorm(x, ba);
        WSigmaResult vb = w_sigma_seminorm(x, bb);
        c.add(va.value == vb.value, "shared-segment seminorms differ");
      }
    };
    compat(space1, 41, 53);  // diverge inside block 1 (order 1)
    compat(space2, 23, 32);  // diverge inside the third S_1 sub-block (order 2)
    c.close("tree-compatibility");
  }

  // W(σ) interval enumeration vs raw all-intervals oracle.
  for (int trial = 0; trial < 30; ++trial) {
    const JtgSpace& space = trial % 2 ? space2 : space1;
    const auto branches = space.tree().leaf_branches();
    const Branch& sigma = branches[rng.below(static_cast<int>(branches.size()))];
    const BranchData& bd = space.branch_data(sigma.leaf());
    SparseVector x;
    for (NodeId v : sigma.nodes)
      if (rng.below(2)) x.set(v, random_rational_coeff(rng));
    if (x.empty()) continue;
    double fast = w_sigma_seminorm(x, bd).value;
    double brute = 0.0;
    NodeId max_label = sigma.nodes.back();
    for (NodeId a = 1; a <= max_label; ++a)
      for (NodeId b = a; b <= max_label; ++b) {
        // f = E Σ λ_i φ_i with E = [a, b]; optimal λ gives the ℓ2 of the block evals.
        std::vector<double> inner(bd.block_count() + 1, 0.0);
        for (std::size_t pos = 0; pos < sigma.nodes.size(); ++pos) {
          NodeId v = sigma.nodes[pos];
          if (v < a || v > b || x[v] == 0.0) continue;
          int k = bd.block_of(v);
          if (k == 0) continue;
          const auto& seg = bd.block(k).seg.nodes;
          std::size_t off = std::lower_bound(seg.begin(), seg.end(), v) - seg.begin();
          inner[k] += bd.block(k).beta[off] * x[v];
        }
        double ss = 0.0;
        for (int k = 1; k <= bd.block_count(); ++k) {
          double mult = static_cast<double>(bd.block(k).multiplier);
          double vk = inner[k] / (mult * mult);
          ss += vk * vk;
        }
        brute = std::max(brute, std::sqrt(ss));
      }
    c.add(std::fabs(fast - brute) <= 1e-12, "w_sigma fast=" + fmt(fast) + " raw=" + fmt(brute));
  }
  c.close("w-sigma-interval-oracle");

  return c.take();
}

// ------------------------------------------------------------ analysis suite

SuiteResult suite_analysis(std::uint64_t seed) {
  Checker c("analysis");
  Rng rng(seed ^ 0x9216d5d9ull);
  const Rational p4(4);

  // Incomparable unit vectors are 1-isometric to ℓ_p: the bound 1 is attained
  // exactly at unit coefficient vectors, and no sampled direction moves the
  // ratio beyond floating-point noise.
  {
    TreePrefix star = make_star(6);
    SpaceHandle h = SpaceHandle::make_jt2p(star, p4);
    std::vector<SparseVector> xs;
    for (NodeId v : star.children(star.node_list().front()))
      xs.push_back(SparseVector::unit(v));
    bool attained = true;
    for (const SparseVector& x : xs)
      if (h.norm(x) != 1.0) attained = false;
    c.check("incomparable-units-lp-attained", attained);
    EquivalenceReport rep = equivalence_bounds(xs, h, SequenceModel::ell_p, seed);
    c.check("incomparable-units-lp-bounds",
            std::fabs(rep.lower - 1.0) <= 1e-12 && std::fabs(rep.upper - 1.0) <= 1e-12,
            "lower=" + fmt(rep.lower) + " upper=" + fmt(rep.upper));
  }

  // A block sequence on one branch is 1-equivalent to ℓ_2 (Remark 1.3 iv).
  {
    TreePrefix chain = make_chain(12);
    SpaceHandle h = SpaceHandle::make_jt2p(chain, p4);
    std::vector<SparseVector> xs;
    for (int b = 0; b < 4; ++b) {
      SparseVector x;
      for (int i = 0; i < 3; ++i) x.set(1 + 3 * b + i, random_rational_coeff(rng));
      if (x.empty()) x.set(1 + 3 * b, 1.0);
      xs.push_back(x.scaled(1.0 / jt2p_norm(x, chain, p4).value));
    }
    EquivalenceReport rep = equivalence_bounds(xs, h, SequenceModel::ell_2, seed);
    c.check("single-branch-blocks-ell2",
            std::fabs(rep.lower - 1.0) <= 1e-9 && std::fabs(rep.upper - 1.0) <= 1e-9,
            "lower=" + fmt(rep.lower) + " upper=" + fmt(rep.upper));
  }

  // Profiles: only meeting branches appear; values are restriction norms.
  {
    TreePrefix t = make_binary(7);
    SpaceHandle h = SpaceHandle::make_jt2p(t, p4);
    SparseVector x;
    x.set(2, 3.0);
    x.set(4, 4.0);  // 4 sits below 2 in the heap labeling
    auto profiles = branch_profile({x}, h);
    bool ok = !profiles.empty();
    for (const auto& entry : profiles[0].values) {
      bool has2 = entry.branch.contains(2);
      if (!has2) ok = false;
      double want = entry.branch.contains(4) ? 5.0 : 3.0;
      if (std::fabs(entry.value - want) > 1e-12) ok = false;
    }
    c.check("profile-pythagorean", ok);
  }

  // ℓ_p-vector estimation on a genuine block sequence: two disjoint chains,
  // each vector putting fixed mass on both (the lemma's ℓ_p ball bound needs
  // successive supports and incomparable finals).
  {
    std::vector<std::pair<NodeId, NodeId>> spec;
    NodeId p1 = kRoot, p2 = kRoot;
    for (int i = 0; i < 12; ++i) {
      spec.emplace_back(1 + 2 * i, p1);
      p1 = 1 + 2 * i;
      spec.emplace_back(2 + 2 * i, p2);
      p2 = 2 + 2 * i;
    }
    TreePrefix t = TreePrefix::build(spec);
    SpaceHandle h = SpaceHandle::make_jt2p(t, p4);
    std::vector<SparseVector> xs;
    for (int n = 0; n < 6; ++n) {
      SparseVector x;
      x.set(1 + 4 * n, 0.6);
      x.set(3 + 4 * n, 0.3);
      x.set(2 + 4 * n, 0.8);
      xs.push_back(x.scaled(1.0 / jt2p_norm(x, t, p4).value));
    }
    auto cands = lp_vector_estimate(xs, h, 0.1, 0.5);
    bool sorted = std::is_sorted(cands.begin(), cands.end(),
                                 [](const auto& a, const auto& b) { return a.c > b.c; });
    bool converged = std::all_of(cands.begin(), cands.end(),
                                 [](const auto& e) { return e.converged; });
    c.check("lp-vector-block-sequence", cands.size() == 2 && sorted && converged,
            std::to_string(cands.size()) + " branches");
    double cp_sum = 0.0;
    for (const auto& e : cands) cp_sum += std::pow(e.c, to_double(p4));
    c.check("lp-vector-cp-bound", cp_sum <= 1.0 + 1e-9, "sum c^p = " + fmt(cp_sum));
    c.check("lp-vector-count-bound",
            static_cast<double>(cands.size()) <= std::pow(0.1, -to_double(p4)));

    std::vector<SparseVector> fading;
    for (std::size_t i = 0; i < xs.size(); ++i)
      fading.push_back(xs[i].scaled(std::pow(0.25, i + 1)));
    auto zero = lp_vector_estimate(fading, h, 0.5, 0.5);
    c.check("lp-vector-zero-case", zero.empty());
  }

  // JT_G: (x_1^{σ_i}) across incomparable flagged branches vs ℓ_2.
  {
    JtgFixture fx = jtg_fixture_parallel(4);
    JtgSpace space(fx.tree, fx.params);
    SpaceHandle h = SpaceHandle::make_jtg(space);
    std::vector<SparseVector> xs;
    for (NodeId leaf : fx.flagged_leaves) xs.push_back(space.branch_data(leaf).node_vector(1));
    EquivalenceReport rep = equivalence_bounds(xs, h, SequenceModel::ell_2, seed);
    c.check("jtg-node-vectors-ell2",
            std::fabs(rep.lower - 1.0) <= 1e-9 && std::fabs(rep.upper - 1.0) <= 1e-9,
            "lower=" + fmt(rep.lower) + " upper=" + fmt(rep.upper));
    c.check("equivalence-lower-le-upper", rep.lower <= rep.upper);

    // Reported branch count obeys the JT_G counting bound.
    for (double eps : {0.3, 0.5}) {
      auto cands = lp_vector_estimate(xs, h, eps, 0.5);
      double bound = std::floor(2.0 / (eps * eps)) + 1.0;
      c.add(static_cast<double>(cands.size()) <= bound,
            std::to_string(cands.size()) + " branches at eps " + fmt(eps));
    }
    c.close("jtg-branch-count-bound");
  }

  return c.take();
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"tree",      "schreier", "jt2p",
                                                 "framework", "jtg",      "analysis"};
  return names;
}

SuiteResult run_verify_suite(const std::string& name, std::uint64_t seed) {
  if (name == "tree") return suite_tree(seed);
  if (name == "schreier") return suite_schreier(seed);
  if (name == "jt2p") return suite_jt2p(seed);
  if (name == "framework") return suite_framework(seed);
  if (name == "jtg") return suite_jtg(seed);
  if (name == "analysis") return suite_analysis(seed);
  fail(Errc::schema, "unknown verify suite '" + name + "'");
}

std::vector<SuiteResult> run_all_verify_suites(std::uint64_t seed) {
  std::vector<SuiteResult> out;
  for (const std::string& name : verify_suite_names()) out.push_back(run_verify_suite(name, seed));
  return out;
}

}  // namespace jtree
