#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsact/actions.hpp"
#include "helpers.hpp"

using namespace gsact;
using gsact::testing::Rng;

namespace {

// alpha_p^r actions assembled by hand, for the decision-procedure examples.
ModuleAlgebraAction alpha_power_action(const ContextPtr& ctx,
                                       const std::vector<DiffOp>& ops) {
  ModuleAlgebraAction act;
  act.ctx = ctx;
  act.group = GroupDescriptor::height_one(
      ctx->p(), YoungDiagram{std::vector<int>(ops.size(), 1)}, 0);
  act.dual = dual_presentation(act.group);
  for (size_t i = 0; i < ops.size(); ++i)
    act.assignment.emplace("U" + std::to_string(i + 1), ops[i]);
  return act;
}

}  // namespace

TEST_CASE("canonical_block_derivation") {
  auto c2 = testing::ctx1(2);
  CHECK(canonical_block_derivation(c2, {0}) == DiffOp::derivation(c2, 0));

  auto cxy2 = testing::ctx2(2, "x1", "x2");
  auto d2 = canonical_block_derivation(cxy2, {0, 1});
  CHECK(d2 == DiffOp::derivation(cxy2, 0) +
                  DiffOp::derivation(cxy2, 1).scaled(parse_rational(cxy2, "x1")));
  CHECK(d2.derivation_order() == 4);

  auto cxy3 = testing::ctx2(3, "x1", "x2");
  auto d3 = canonical_block_derivation(cxy3, {0, 1});
  CHECK(d3 == DiffOp::derivation(cxy3, 0) +
                  DiffOp::derivation(cxy3, 1).scaled(parse_rational(cxy3, "x1^2")));
  CHECK(d3.derivation_order() == 9);
}

TEST_CASE("height_one_action examples") {
  auto cx = testing::ctx1(2);
  auto a1 = height_one_action(cx, YoungDiagram::make({1}), 0);
  CHECK(a1.op("U1") == DiffOp::derivation(cx, 0));
  CHECK(a1.verified == ModuleAlgebraAction::Verified::Passed);
  CHECK(is_generically_free(a1));

  auto cxy = testing::ctx2(2);
  auto a2 = height_one_action(cxy, YoungDiagram::make({1, 1}), 0);
  CHECK(a2.op("U1") == DiffOp::derivation(cxy, 0));
  CHECK(a2.op("U2") == DiffOp::derivation(cxy, 1));
  CHECK(derivations_k_independent({a2.op("U1"), a2.op("U2")}));

  auto a3 = height_one_action(cxy, YoungDiagram::make({1}), 1);
  CHECK(a3.op("U1") == DiffOp::derivation(cxy, 0));
  auto e = a3.op("e1");
  CHECK(e == DiffOp::derivation(cxy, 1).scaled(RationalFunction::variable(cxy, 1)));
  CHECK(e.power(2) == e);  // e^p = e
  CHECK(a3.verified == ModuleAlgebraAction::Verified::Passed);
  CHECK(is_generically_free(a3));

  CHECK_THROWS_AS(height_one_action(cx, YoungDiagram::make({1, 1}), 0), GsactError);
  try {
    height_one_action(cxy, YoungDiagram::make({3, 2}), 0);
    FAIL("expected DimensionTooSmall");
  } catch (const GsactError& e2) {
    CHECK(e2.kind() == Errc::DimensionTooSmall);
  }
}

TEST_CASE("extend_action: ptorsion tower") {
  auto ctx = testing::ctx1(2, "t");
  auto base = height_one_action(ctx, YoungDiagram::make({1}), 0);
  auto act = extend_action(base, GroupDescriptor::ker_f_minus_v(2, 2));
  CHECK(act.verified == ModuleAlgebraAction::Verified::Passed);
  // extension restricts to the base
  CHECK(act.op("U1") == base.op("U1"));
  // canonical output d_{t^2} + t^2 d_t, up to an element killed by D_1 and d_{t^2}
  auto expected = DiffOp::divided_power(ctx, 0, 2) +
                  DiffOp::derivation(ctx, 0).scaled(parse_rational(ctx, "t^2"));
  auto diff = act.op("U2") - expected;
  if (!diff.is_zero()) {
    REQUIRE(diff.is_derivation());
    REQUIRE(diff.terms().size() == 1);
    auto delta = diff.terms().begin()->second;
    CHECK(DiffOp::derivation(ctx, 0).apply(delta).is_zero());
    CHECK(DiffOp::divided_power(ctx, 0, 2).apply(delta).is_zero());
  }
  CHECK(act.op("U2").power(2) == act.op("U1"));
  CHECK(act.op("U2").commutator(act.op("U1")).is_zero());

  // base == target: unchanged
  auto same = extend_action(act, GroupDescriptor::ker_f_minus_v(2, 2));
  CHECK(same.op("U1") == act.op("U1"));
  CHECK(same.op("U2") == act.op("U2"));
}

TEST_CASE("extend_action: the one-dimensional order-p^3 group with F^2 = V") {
  auto ctx = testing::ctx1(2, "t");
  auto base = height_one_action(ctx, YoungDiagram::make({1}), 0);
  auto act = extend_action(base, GroupDescriptor::ker_f2_minus_v(2));
  CHECK(act.verified == ModuleAlgebraAction::Verified::Passed);
  CHECK(act.report->generically_free);
  // relations of the dual tower: U1^p = 0, U2^p = 0, U3^p = U1
  CHECK(act.op("U1").power(2).is_zero());
  CHECK(act.op("U2").power(2).is_zero());
  CHECK(act.op("U3").power(2) == act.op("U1"));
  CHECK(act.op("U3").power(4).is_zero());
  // the three operators commute pairwise and are built over one variable
  CHECK(act.op("U3").commutator(act.op("U2")).is_zero());
  CHECK(act.op("U3").commutator(act.op("U1")).is_zero());
}

TEST_CASE("Verschiebung seed law for extended generators") {
  auto ctx = testing::ctx1(2, "t");
  auto act = example_ptorsion(2, 3, ctx);
  Rng rng(91);
  for (int gi = 0; gi < static_cast<int>(act.dual.gens.size()); ++gi) {
    GenPoly v = act.dual.verschiebung(gi);
    const DiffOp& d = act.op(act.dual.gens[gi].name);
    for (int i = 0; i < 10; ++i) {
      auto f = rng.rational(ctx, 2, 3);
      RationalFunction lhs = d.apply(f.frobenius(1));
      RationalFunction rhs = v.is_zero()
                                 ? RationalFunction::zero(ctx)
                                 : eval_genpoly(act, v).apply(f).frobenius(1);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("example_ptorsion") {
  auto ctx = testing::ctx1(2, "t");
  auto a1 = example_ptorsion(2, 1, ctx);
  CHECK(a1.op("U1") == DiffOp::derivation(ctx, 0));

  auto a2 = example_ptorsion(2, 2, ctx);
  CHECK(a2.op("U2") == DiffOp::divided_power(ctx, 0, 2) +
                           DiffOp::derivation(ctx, 0).scaled(parse_rational(ctx, "t^2")));

  auto a3 = example_ptorsion(2, 3, ctx);
  CHECK(a3.verified == ModuleAlgebraAction::Verified::Passed);
  CHECK(a3.op("U1").power(2).is_zero());
  CHECK(a3.op("U2").power(2) == a3.op("U1"));
  CHECK(a3.op("U3").power(2) == a3.op("U2"));
  for (auto& [na, oa] : a3.assignment)
    for (auto& [nb, ob] : a3.assignment) CHECK(oa.commutator(ob).is_zero());
  CHECK(is_generically_free(a3));
  CHECK(is_faithful(a3));
}

TEST_CASE("example_noncommutative") {
  auto ctx = testing::ctx1(2, "t");
  auto act = example_noncommutative(2, 2, ctx);
  CHECK(act.verified == ModuleAlgebraAction::Verified::Passed);
  auto d0 = act.op("U0");
  auto d1 = act.op("U1");
  auto d2 = act.op("U2");
  CHECK(d0 == DiffOp::derivation(ctx, 0));
  CHECK(d1 == DiffOp::divided_power(ctx, 0, 2));
  CHECK(d2 == DiffOp::divided_power(ctx, 0, 4) -
                  DiffOp::derivation(ctx, 0).scaled(parse_rational(ctx, "t^2")));
  // the non-commutative relation of the family
  CHECK(d2.commutator(d1) == d0);
  CHECK(d2.commutator(d0).is_zero());
  CHECK(d1.commutator(d0).is_zero());
  CHECK(d0.power(2).is_zero());
  CHECK(d1.power(2).is_zero());
  // the honest dual relation: D_n^p equals v(U_0^{p-1} U_{n-1}), not zero;
  // the stated vanishing fails on the nose (see the acceptance suite)
  CHECK(d2.power(2) == d0.compose(d1));
  CHECK_FALSE(d2.power(2).is_zero());
  CHECK(act.report->generically_free);
}

TEST_CASE("example_counterexample_surface") {
  for (int p : {2, 3}) {
    auto ctx = testing::ctx2(p);
    auto act = example_counterexample_surface(p, ctx);
    CHECK(act.verified == ModuleAlgebraAction::Verified::Passed);
    CHECK(act.op("T1").power(p) == act.op("U0"));
    CHECK(act.op("U1").power(p) == act.op("T0"));
    CHECK(act.op("T0").power(p).is_zero());
    CHECK(act.op("U0").power(p).is_zero());
    std::vector<std::string> names{"T0", "T1", "U0", "U1"};
    for (size_t i = 0; i < names.size(); ++i)
      for (size_t j = i + 1; j < names.size(); ++j)
        CHECK(act.op(names[i]).commutator(act.op(names[j])).is_zero());
    // the group has a two-dimensional Lie algebra
    CHECK(invariants(act.group).lie_dim == 2);
    CHECK(is_faithful(act));
    CHECK(is_generically_free(act));
  }
}

TEST_CASE("verify_action flags corrupted actions with a witness") {
  auto ctx = testing::ctx1(2, "t");
  auto act = example_ptorsion(2, 2, ctx);
  // drop the t^2 d_t part of D_2: the relation D_2^2 = D_1 must fail
  act.assignment["U2"] = DiffOp::divided_power(ctx, 0, 2);
  auto rep = verify_action(act);
  CHECK(act.verified == ModuleAlgebraAction::Verified::Failed);
  bool found = false;
  for (auto& c : rep.checks)
    if (c.kind == "relation" && c.subject == "U2" && !c.passed) {
      found = true;
      CHECK(!c.witness.empty());
    }
  CHECK(found);
}

TEST_CASE("verify_action: trivial group passes vacuously") {
  auto ctx = testing::ctx1(2, "t");
  ModuleAlgebraAction act;
  act.ctx = ctx;
  act.dual.p = 2;
  act.group = GroupDescriptor::explicit_group(2, act.dual);
  auto rep = verify_action(act);
  CHECK(rep.all_passed());
}

TEST_CASE("is_faithful examples") {
  auto cx = testing::ctx1(2);
  auto dx = DiffOp::derivation(cx, 0);
  auto x2dx = dx.scaled(parse_rational(cx, "x^2"));

  CHECK(is_faithful(alpha_power_action(cx, {dx, x2dx})));
  CHECK_FALSE(is_faithful(alpha_power_action(cx, {dx, dx})));
  CHECK(is_faithful(alpha_power_action(cx, {dx})));
}

TEST_CASE("is_generically_free examples") {
  auto cx = testing::ctx1(2);
  auto dx = DiffOp::derivation(cx, 0);
  auto x2dx = dx.scaled(parse_rational(cx, "x^2"));
  CHECK_FALSE(is_generically_free(alpha_power_action(cx, {dx, x2dx})));

  auto cxy = testing::ctx2(2);
  CHECK(is_generically_free(alpha_power_action(
      cxy, {DiffOp::derivation(cxy, 0), DiffOp::derivation(cxy, 1)})));

  auto ctx = testing::ctx1(2, "t");
  CHECK(is_generically_free(example_ptorsion(2, 2, ctx)));

  auto nc = example_noncommutative(2, 2, ctx);
  CHECK_THROWS_AS(is_generically_free(nc), GsactError);
  CHECK_THROWS_AS(is_faithful(nc), GsactError);
}

TEST_CASE("socle reductions agree with restrictions") {
  auto ctx = testing::ctx1(2, "t");
  auto act = example_ptorsion(2, 3, ctx);
  std::vector<DiffOp> w, m;
  socle_operators(act, w, m);
  REQUIRE(w.size() == 1);
  CHECK(m.empty());
  // the socle action is the restriction to alpha_p = soc(G)
  auto restricted = alpha_power_action(ctx, w);
  CHECK(is_faithful(act) == is_faithful(restricted));
  CHECK(is_generically_free(act) == is_generically_free(restricted));

  auto cxy = testing::ctx2(2);
  auto h = height_one_action(cxy, YoungDiagram::make({2}), 0);
  std::vector<DiffOp> w2, m2;
  socle_operators(h, w2, m2);
  REQUIRE(w2.size() == 1);
  CHECK(w2[0] == h.op("U1").power(2));  // U^{p^{m-1}}
}

TEST_CASE("dimension bound: DimensionTooSmall exactly when lie_dim > nvars") {
  Rng rng(97);
  for (int iter = 0; iter < 30; ++iter) {
    int p = rng.uniform(0, 1) ? 2 : 3;
    int nvars = rng.uniform(1, 3);
    std::vector<std::string> vars;
    for (int i = 0; i < nvars; ++i) vars.push_back("x" + std::to_string(i + 1));
    auto ctx = FieldContext::make(p, vars);
    std::vector<int> rows;
    int nrows = rng.uniform(1, 2);
    int prev = rng.uniform(1, 2);
    for (int i = 0; i < nrows; ++i) {
      rows.push_back(prev);
      prev = rng.uniform(1, prev);
    }
    int mu = rng.uniform(0, 1);
    auto diagram = YoungDiagram::make(rows);
    int lie = diagram.boxes() + mu;
    if (lie > nvars) {
      CHECK_THROWS_AS(height_one_action(ctx, diagram, mu), GsactError);
    } else {
      auto act = height_one_action(ctx, diagram, mu);
      CHECK(act.verified == ModuleAlgebraAction::Verified::Passed);
      CHECK(is_generically_free(act));
    }
  }
}

TEST_CASE("p-basis normalization for canonical height-one actions") {
  auto ctx = FieldContext::make(2, {"x1", "x2", "x3"});
  auto act = height_one_action(ctx, YoungDiagram::make({2, 1}), 0);
  // E-family: ascending p-powers per row, then the row order
  std::vector<DiffOp> es{act.op("U1"), act.op("U1").power(2), act.op("U2")};
  REQUIRE(act.pbasis.size() == 3);
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      auto v = es[i].apply(act.pbasis[j]);
      if (i == j)
        CHECK(v.is_one());
      else
        CHECK(v.is_zero());
    }
}

TEST_CASE("power_faithful_action: alpha_p squared on the line") {
  auto cx = testing::ctx1(2);
  auto g = GroupDescriptor::height_one(2, YoungDiagram::make({1}), 0);
  auto act = power_faithful_action(g, 2, cx,
                                   {{RationalFunction::one(cx)},
                                    {parse_rational(cx, "x^2")}});
  CHECK(act.verified == ModuleAlgebraAction::Verified::Passed);
  CHECK(act.op("U1_c1") == DiffOp::derivation(cx, 0));
  CHECK(act.op("U1_c2") == DiffOp::derivation(cx, 0).scaled(parse_rational(cx, "x^2")));
  CHECK(is_faithful(act));
  CHECK_FALSE(is_generically_free(act));
  // each factor alone is generically free
  CHECK(is_generically_free(alpha_power_action(cx, {act.op("U1_c1")})));
  CHECK(is_generically_free(alpha_power_action(cx, {act.op("U1_c2")})));

  // dependent multipliers are rejected
  CHECK_THROWS_AS(power_faithful_action(g, 2, cx,
                                        {{RationalFunction::one(cx)},
                                         {RationalFunction::one(cx)}}),
                  GsactError);
  // multipliers must lie in kK^p
  CHECK_THROWS_AS(power_faithful_action(g, 2, cx,
                                        {{RationalFunction::one(cx)},
                                         {parse_rational(cx, "x")}}),
                  GsactError);
}

TEST_CASE("power_faithful_action: ell = 1 reduces to the plain construction") {
  auto cxy = testing::ctx2(2);
  auto g = GroupDescriptor::height_one(2, YoungDiagram::make({2}), 0);
  auto act = power_faithful_action(g, 1, cxy, {{RationalFunction::one(cxy)}});
  auto plain = height_one_action(cxy, YoungDiagram::make({2}), 0);
  CHECK(act.op("U1_c1") == plain.op("U1"));
  CHECK(is_faithful(act));
  CHECK(is_generically_free(act));
}

TEST_CASE("power_faithful_action: W_2^1 squared on the plane") {
  auto cxy = testing::ctx2(2);
  auto g = GroupDescriptor::height_one(2, YoungDiagram::make({2}), 0);
  auto act = power_faithful_action(
      g, 2, cxy, {{RationalFunction::one(cxy)}, {parse_rational(cxy, "x^2 + y^2")}});
  CHECK(act.verified == ModuleAlgebraAction::Verified::Passed);
  CHECK(is_faithful(act));
  // factor restrictions are each generically free
  for (auto suffix : {"_c1", "_c2"}) {
    ModuleAlgebraAction factor;
    factor.ctx = cxy;
    factor.group = g;
    factor.dual = dual_presentation(g);
    factor.assignment.emplace("U1", act.op(std::string("U1") + suffix));
    CHECK(is_generically_free(factor));
  }
}

TEST_CASE("join_greedy") {
  // two height-one actions on five shared variables, restricted from a
  // (3,2)-structure so they commute
  auto ctx = FieldContext::make(2, {"x1", "x2", "x3", "x4", "x5"});
  auto full = height_one_action(ctx, YoungDiagram::make({3, 2}), 0);
  auto e1 = full.op("U1");
  auto e2 = full.op("U2");

  ModuleAlgebraAction g1;  // diagram (3,1): rows E1 and E2^p
  g1.ctx = ctx;
  g1.group = GroupDescriptor::height_one(2, YoungDiagram::make({3, 1}), 0);
  g1.dual = dual_presentation(g1.group);
  g1.assignment.emplace("U1", e1);
  g1.assignment.emplace("U2", e2.power(2));
  verify_action(g1);
  REQUIRE(g1.verified == ModuleAlgebraAction::Verified::Passed);
  REQUIRE(is_generically_free(g1));

  ModuleAlgebraAction g2;  // diagram (2,2): rows E1^p and E2
  g2.ctx = ctx;
  g2.group = GroupDescriptor::height_one(2, YoungDiagram::make({2, 2}), 0);
  g2.dual = dual_presentation(g2.group);
  g2.assignment.emplace("U1", e1.power(2));
  g2.assignment.emplace("U2", e2);
  verify_action(g2);
  REQUIRE(is_generically_free(g2));

  auto joined = join_greedy({g1, g2});
  CHECK(joined.group.diagram == YoungDiagram::make({3, 2}));
  CHECK(joined.verified == ModuleAlgebraAction::Verified::Passed);
  CHECK(is_generically_free(joined));
  CHECK(joined.op("U1").derivation_order() == 8);
  CHECK(joined.op("U2").derivation_order() == 4);

  // single input: itself
  auto alone = join_greedy({g1});
  CHECK(alone.group.diagram == g1.group.diagram);
  CHECK(alone.op("U1") == g1.op("U1"));

  // two copies of the same alpha_p action
  auto cx = testing::ctx1(2);
  auto a = height_one_action(cx, YoungDiagram::make({1}), 0);
  auto j2 = join_greedy({a, a});
  CHECK(j2.group.diagram == YoungDiagram::make({1}));
  CHECK(j2.op("U1") == a.op("U1"));
}

TEST_CASE("every constructed action passes verification") {
  auto cx = testing::ctx1(2);
  auto cxy = testing::ctx2(2);
  auto ct = testing::ctx1(2, "t");
  std::vector<ModuleAlgebraAction> acts;
  acts.push_back(height_one_action(cxy, YoungDiagram::make({2}), 0));
  acts.push_back(height_one_action(cxy, YoungDiagram::make({1}), 1));
  acts.push_back(example_ptorsion(2, 2, ct));
  acts.push_back(example_counterexample_surface(2, cxy));
  acts.push_back(example_noncommutative(2, 2, ct));
  for (auto& a : acts) {
    CHECK(a.verified == ModuleAlgebraAction::Verified::Passed);
    CHECK(a.report->all_passed());
  }
}
