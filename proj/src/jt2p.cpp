#include "jtree/jt2p.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "jtree/errors.hpp"
#include "jtree/packing.hpp"

namespace jtree {

namespace {

void require_p(const Rational& p) {
  if (p <= 2) fail(Errc::p_out_of_range, "JT_{2,p} requires p > 2, got " + rational_to_string(p));
}

// Exact squared prefix sums along root paths; SS(u..v) = pref(v) - pref(parent(u)).
struct SquaredPrefix {
  SquaredPrefix(const SparseVector& x, const TreePrefix& t) : tree(t) {
    pref[kRoot] = Rational(0);
    for (NodeId v : t.node_list()) {
      Rational a = rational_from_double(x[v]);
      pref[v] = pref.at(t.parent(v)) + a * a;
    }
  }
  Rational chain_ss(NodeId u, NodeId v) const {
    return pref.at(v) - pref.at(tree.parent(u));
  }
  const TreePrefix& tree;
  std::map<NodeId, Rational> pref;
};

bool family_less(const std::vector<Segment>& a, const std::vector<Segment>& b) {
  auto key = [](const std::vector<Segment>& f) {
    std::vector<std::pair<NodeId, NodeId>> k;
    k.reserve(f.size());
    for (const Segment& s : f) k.emplace_back(s.top(), s.bottom());
    std::sort(k.begin(), k.end());
    return k;
  };
  return key(a) < key(b);
}

}  // namespace

NormResult jt2p_norm(const SparseVector& x, const TreePrefix& t, const Rational& p) {
  require_p(p);
  NormResult result;
  result.functional.q = to_double(p / (p - 1));
  if (x.empty()) return result;

  const double p_d = to_double(p);
  SquaredPrefix ss(x, t);
  auto seg_value = [&](NodeId u, NodeId v) {
    return std::pow(to_double(ss.chain_ss(u, v)), p_d / 2.0);
  };
  Packing best = max_disjoint_segment_sum(t, seg_value);
  result.value = std::pow(best.total, 1.0 / p_d);

  for (Segment& s : best.family) {
    if (ss.chain_ss(s.top(), s.bottom()) == 0) continue;  // contributes nothing
    result.family.push_back(std::move(s));
  }
  for (const Segment& s : result.family) {
    CertificateTerm term;
    double seg_norm = std::sqrt(to_double(ss.chain_ss(s.top(), s.bottom())));
    term.weight = std::pow(seg_norm / result.value, p_d - 1.0);
    for (NodeId v : s.nodes)
      if (x[v] != 0.0) term.profile.emplace_back(v, x[v] / seg_norm);
    term.segment = s;
    result.functional.terms.push_back(std::move(term));
  }
  return result;
}

std::pair<double, std::vector<Segment>> jt2p_bruteforce_with_family(const SparseVector& x,
                                                                    const TreePrefix& t,
                                                                    const Rational& p) {
  require_p(p);
  if (x.support().size() > 12)
    fail(Errc::too_large, "brute-force JT_{2,p} norm capped at 12 support nodes");
  const double p_d = to_double(p);
  double best = 0.0;
  std::vector<Segment> best_family;
  for_each_disjoint_family(t, x.support(), [&](const std::vector<Segment>& family) {
    double total = 0.0;
    for (const Segment& s : family) {
      double seg_ss = 0.0;
      for (NodeId v : s.nodes) seg_ss += x[v] * x[v];
      total += std::pow(seg_ss, p_d / 2.0);
    }
    if (total > best || (total == best && family_less(family, best_family))) {
      best = total;
      best_family = family;
    }
  });
  return {std::pow(best, 1.0 / p_d), std::move(best_family)};
}

double jt2p_norm_bruteforce(const SparseVector& x, const TreePrefix& t, const Rational& p) {
  return jt2p_bruteforce_with_family(x, t, p).first;
}

double eval_certificate(const Jt2pCertificate& c, const SparseVector& x, const TreePrefix& t) {
  constexpr double kSlack = 1e-12;
  if (c.q < 1.0) fail(Errc::invalid_certificate, "conjugate exponent q must be >= 1");
  double weight_sum = 0.0;
  for (const CertificateTerm& term : c.terms)
    weight_sum += std::pow(std::fabs(term.weight), c.q);
  if (weight_sum > 1.0 + kSlack)
    fail(Errc::invalid_certificate, "outer weights violate the ℓ_q ball bound");

  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    const CertificateTerm& term = c.terms[i];
    if (term.segment.nodes.empty()) fail(Errc::invalid_certificate, "empty segment");
    Segment expect = t.segment_between(term.segment.top(), term.segment.bottom());
    if (!(expect == term.segment))
      fail(Errc::invalid_certificate, "segment is not a chain of the prefix");
    double profile_ss = 0.0;
    for (const auto& [v, a] : term.profile) {
      if (!std::binary_search(term.segment.nodes.begin(), term.segment.nodes.end(), v))
        fail(Errc::invalid_certificate, "profile node outside its segment");
      profile_ss += a * a;
    }
    if (profile_ss > 1.0 + kSlack)
      fail(Errc::invalid_certificate, "profile exceeds the unit ℓ_2 ball");
    for (std::size_t j = i + 1; j < c.terms.size(); ++j)
      if (!segments_disjoint(term.segment, c.terms[j].segment))
        fail(Errc::invalid_certificate, "segments overlap");
  }

  double value = 0.0;
  for (const CertificateTerm& term : c.terms) {
    double inner = 0.0;
    for (const auto& [v, a] : term.profile) inner += a * x[v];
    value += term.weight * inner;
  }
  return value;
}

}  // namespace jtree
