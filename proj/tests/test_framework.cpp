#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jtree/errors.hpp"
#include "jtree/fixtures.hpp"
#include "jtree/framework.hpp"
#include "jtree/gen.hpp"
#include "jtree/jt2p.hpp"

using namespace jtree;

TEST_CASE("restrict") {
  TreePrefix chain = TreePrefix::build({{1, kRoot}, {2, 1}, {4, 2}});
  SparseVector x(std::map<NodeId, double>{{2, 1.0}, {4, 3.0}, {1, 1.0}});

  Segment s2 = chain.segment_between(2, 2);
  SparseVector r = restrict_to(x, s2);
  CHECK(r.entries().size() == 1);
  CHECK(r[2] == 1.0);

  SparseVector y(std::map<NodeId, double>{{1, 5.0}});
  CHECK(restrict_to(y, chain.segment_between(2, 4)).empty());

  SparseVector z(std::map<NodeId, double>{{1, 1.0}, {2, 2.0}, {4, 3.0}});
  SparseVector rz = restrict_to(z, chain.segment_between(2, 4));
  CHECK(rz[2] == 2.0);
  CHECK(rz[4] == 3.0);
  CHECK(rz[1] == 0.0);
}

TEST_CASE("JT-infinity on a chain") {
  TreePrefix chain = make_chain(4);
  SpaceSpec spec = SpaceSpec::jt_inf();

  SparseVector plus(std::map<NodeId, double>{{2, 1.0}, {3, 1.0}});
  CHECK(generalized_norm(plus, chain, spec).value == doctest::Approx(2.0).epsilon(1e-15));

  SparseVector minus(std::map<NodeId, double>{{2, 1.0}, {3, -1.0}});
  CHECK(generalized_norm(minus, chain, spec).value ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  CHECK(generalized_norm(SparseVector::unit(3), chain, spec).value == 1.0);
}

TEST_CASE("unit vectors have norm 1 in every preset") {
  TreePrefix t = make_binary(7);
  for (NodeId v : t.node_list()) {
    CHECK(generalized_norm(SparseVector::unit(v), t, SpaceSpec::jt_inf()).value == 1.0);
    CHECK(generalized_norm(SparseVector::unit(v), t, SpaceSpec::jt2p(Rational(4))).value == 1.0);
  }
}

TEST_CASE("unsupported combinations") {
  TreePrefix t = make_chain(3);
  SparseVector x = SparseVector::unit(1);
  CHECK_THROWS_AS(generalized_norm(x, t, SpaceSpec::jtg()), Error);  // no JT_G context
  SpaceSpec bad = SpaceSpec::jt2p(Rational(1, 2));
  CHECK_THROWS_AS(generalized_norm(x, t, bad), Error);
}

TEST_CASE("generalized norm equals jt2p on random instances") {
  Rng rng(314);
  for (int trial = 0; trial < 120; ++trial) {
    TreePrefix t = make_random_tree(5 + rng.below(5), rng.next());
    SparseVector x = random_vector(rng, t);
    Rational p = trial % 2 ? Rational(5, 2) : Rational(4);
    CHECK(std::fabs(generalized_norm(x, t, SpaceSpec::jt2p(p)).value -
                    jt2p_norm(x, t, p).value) <= 1e-9);
  }
}

TEST_CASE("certificate aggregation reproduces the value") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    TreePrefix t = make_random_tree(8, rng.next());
    SparseVector x = random_vector(rng, t);
    for (const SpaceSpec& spec : {SpaceSpec::jt_inf(), SpaceSpec::jt2p(Rational(3))}) {
      GeneralizedNormResult r = generalized_norm(x, t, spec);
      CHECK(std::fabs(eval_family_aggregation(r.family, x, t, spec) - r.value) <= 1e-12);
    }
  }
}

TEST_CASE("monotone under segment restriction") {
  Rng rng(4711);
  TreePrefix t = make_random_tree(9, 4);
  for (int trial = 0; trial < 30; ++trial) {
    SparseVector x = random_vector(rng, t);
    double full = generalized_norm(x, t, SpaceSpec::jt_inf()).value;
    for (NodeId a : t.node_list())
      for (NodeId b : t.node_list()) {
        if (!t.is_ancestor(a, b)) continue;
        SparseVector part = x.restricted(t.segment_between(a, b));
        CHECK(generalized_norm(part, t, SpaceSpec::jt_inf()).value <= full + 1e-12);
      }
  }
}

TEST_CASE("S2 external norm: admissibility reduction") {
  // Free S^(2) aggregation equals the per-minimum capped ℓ2 search.
  JtgFixture fx = jtg_fixture_order1();
  JtgSpace space(fx.tree, fx.params);
  SpaceSpec with_adm = SpaceSpec::jtg();
  SpaceSpec without_adm = with_adm;
  without_adm.admissibility = AdmissibilityKind::none;

  Rng rng(31337);
  const auto& nodes = fx.tree.node_list();
  for (int trial = 0; trial < 20; ++trial) {
    SparseVector x;
    for (int i = 0; i < 6; ++i)
      x.set(nodes[rng.below(static_cast<int>(nodes.size()))], random_rational_coeff(rng));
    if (x.empty()) continue;
    double dp = generalized_norm(x, fx.tree, with_adm, &space).value;
    double brute_free = generalized_norm_bruteforce(x, fx.tree, without_adm, &space);
    double brute_adm = generalized_norm_bruteforce(x, fx.tree, with_adm, &space);
    CHECK(std::fabs(dp - brute_free) <= 1e-9);
    CHECK(std::fabs(dp - brute_adm) <= 1e-9);
  }
}

TEST_CASE("sup norm term is dominated in JT_2p") {
  Rng rng(5);
  TreePrefix t = make_random_tree(8, 77);
  SpaceSpec plain = SpaceSpec::jt2p(Rational(4));
  SpaceSpec with_sup = plain;
  with_sup.include_sup_norm = true;
  for (int trial = 0; trial < 40; ++trial) {
    SparseVector x = random_vector(rng, t);
    CHECK(generalized_norm(x, t, plain).value == generalized_norm(x, t, with_sup).value);
  }
}
