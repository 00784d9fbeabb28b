#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsact/solver.hpp"
#include "helpers.hpp"

using namespace gsact;
using gsact::testing::Rng;

namespace {

// The ptorsion pair over F_2(t): D_1 = d_t, D_2 = d_{t^2} + t^2 d_t with
// D_2^2 = D_1; orders p on the successive subfields.
struct PtorsionPair {
  ContextPtr ctx = testing::ctx1(2, "t");
  DiffOp d1 = DiffOp::derivation(ctx, 0);
  DiffOp d2 = DiffOp::divided_power(ctx, 0, 2) +
              DiffOp::derivation(ctx, 0).scaled(parse_rational(ctx, "t^2"));

  DiffSystem system_for(const RationalFunction& z) const {
    auto rctx = reduction_context(2, 2);
    return make_system({d1, d2}, {d1.apply(z), d2.apply(z)}, {1, 1},
                       {Polynomial::zero(rctx), Polynomial::variable(rctx, 0)});
  }
};

}  // namespace

TEST_CASE("ftilde examples") {
  auto ctx = testing::ctx1(2, "t");
  auto d1 = DiffOp::derivation(ctx, 0);
  auto d2 = DiffOp::divided_power(ctx, 0, 2);
  auto rctx = reduction_context(2, 2);
  auto a1 = parse_rational(ctx, "t^2 + t");
  auto a2 = parse_rational(ctx, "t");

  // F = X1 -> a1
  CHECK(ftilde(Polynomial::variable(rctx, 0), {a1, a2}, {d1, d2}) == a1);
  // F = 0 -> 0
  CHECK(ftilde(Polynomial::zero(rctx), {a1, a2}, {d1, d2}).is_zero());

  // F = X1*X2 with the canonical decomposition X1*(X2) gives D2(a1); the
  // alternative decomposition gives D1(a2), equal when the symmetry holds
  auto f = Polynomial::variable(rctx, 0) * Polynomial::variable(rctx, 1);
  auto z = parse_rational(ctx, "t^3 + t^2");
  auto b1 = d1.apply(z);
  auto b2 = d2.apply(z);
  REQUIRE(d1.apply(b2) == d2.apply(b1));  // symmetry from the common source z
  CHECK(ftilde(f, {b1, b2}, {d1, d2}) == d2.apply(b1));
  CHECK(ftilde(f, {b1, b2}, {d1, d2}) == d1.apply(b2));
}

TEST_CASE("check_compatibility examples") {
  PtorsionPair pt;
  Rng rng(71);
  for (int i = 0; i < 20; ++i) {
    auto z = rng.rational(pt.ctx, 3, 4);
    CHECK(check_compatibility(pt.system_for(z)));
  }

  // D = d_x over F_2(x), a = x, l = 1, F = 0: d_x(x) = 1 != 0
  auto cx = testing::ctx1(2);
  auto rctx = reduction_context(2, 1);
  auto bad = make_system({DiffOp::derivation(cx, 0)}, {parse_rational(cx, "x")}, {1},
                         {Polynomial::zero(rctx)});
  CHECK_FALSE(check_compatibility(bad));

  // empty system is vacuously compatible
  DiffSystem empty;
  CHECK(check_compatibility(empty));
}

TEST_CASE("solve_single examples") {
  auto c2 = testing::ctx1(2);
  auto dx2 = DiffOp::derivation(c2, 0);
  auto s = solve_single(dx2, RationalFunction::one(c2), 1);
  REQUIRE(s.has_value());
  CHECK(*s == RationalFunction::variable(c2, 0));  // canonical representative

  CHECK_FALSE(solve_single(dx2, parse_rational(c2, "x"), 1).has_value());

  auto c3 = testing::ctx1(3);
  auto dx3 = DiffOp::derivation(c3, 0);
  auto s3 = solve_single(dx3, parse_rational(c3, "x"), 1);
  REQUIRE(s3.has_value());
  CHECK(*s3 == parse_rational(c3, "2*x^2"));
  CHECK(dx3.apply(*s3) == parse_rational(c3, "x"));

  // constraints: a solution of d_x(x) = 1 annihilated by d_y
  auto cxy = testing::ctx2(2);
  auto sol = solve_single(DiffOp::derivation(cxy, 0), RationalFunction::one(cxy), 1,
                          {DiffOp::derivation(cxy, 1)});
  REQUIRE(sol.has_value());
  CHECK(DiffOp::derivation(cxy, 1).apply(*sol).is_zero());

  // level too low for the operator order
  CHECK_THROWS_AS(solve_single(DiffOp::divided_power(c2, 0, 2),
                               RationalFunction::one(c2), 1),
                  GsactError);
}

TEST_CASE("solve_system examples") {
  // D_1 = d_t, D_2 = d_{t^2} over F_2(t), rhs (0, 1) -> x = t^2 mod F_2(t^4)
  auto ctx = testing::ctx1(2, "t");
  auto rctx = reduction_context(2, 2);
  auto sys = make_system({DiffOp::derivation(ctx, 0), DiffOp::divided_power(ctx, 0, 2)},
                         {RationalFunction::zero(ctx), RationalFunction::one(ctx)},
                         {1, 1}, {Polynomial::zero(rctx), Polynomial::zero(rctx)});
  auto sol = solve_system(sys, 2);
  REQUIRE(sol.status == SystemSolution::Status::Solved);
  CHECK(sol.x == parse_rational(ctx, "t^2"));

  // all-zero right-hand sides: canonical solution 0
  auto zsys = make_system({DiffOp::derivation(ctx, 0)}, {RationalFunction::zero(ctx)},
                          {1}, {Polynomial::zero(reduction_context(2, 1))});
  auto zsol = solve_system(zsys, 1);
  REQUIRE(zsol.status == SystemSolution::Status::Solved);
  CHECK(zsol.x.is_zero());
}

TEST_CASE("round trip: systems seeded from a known solution") {
  PtorsionPair pt;
  Rng rng(73);
  for (int i = 0; i < 40; ++i) {
    auto z = rng.rational(pt.ctx, 3, 5);
    auto sys = pt.system_for(z);
    REQUIRE(check_compatibility(sys));
    auto sol = solve_system(sys, level_for(sys.ops));
    REQUIRE(sol.status == SystemSolution::Status::Solved);
    for (int k = 0; k < sys.size(); ++k) CHECK(sys.ops[k].apply(sol.x) == sys.rhs[k]);
    // uniqueness mod K_m: the difference lies in the joint kernel
    auto diff = sol.x - z;
    for (auto& d : sys.ops) CHECK(d.apply(diff).is_zero());
  }
}

TEST_CASE("rejection of perturbed systems") {
  PtorsionPair pt;
  Rng rng(79);
  int rejected = 0;
  for (int i = 0; i < 40; ++i) {
    auto z = rng.rational(pt.ctx, 3, 4);
    auto a1 = pt.d1.apply(z);
    // perturb a_2 by t^2: keeps D_1(a_2) = D_2(a_1) (the perturbation is
    // killed by D_1) but breaks D_2(a_2) = a_1 since D_2(t^2) = 1
    auto a2 = pt.d2.apply(z) + parse_rational(pt.ctx, "t^2");
    auto rctx = reduction_context(2, 2);
    auto sys = make_system({pt.d1, pt.d2}, {a1, a2}, {1, 1},
                           {Polynomial::zero(rctx), Polynomial::variable(rctx, 0)});
    CHECK_FALSE(check_compatibility(sys));
    auto sol = solve_system(sys, level_for(sys.ops));
    CHECK(sol.status == SystemSolution::Status::Incompatible);
    ++rejected;
  }
  CHECK(rejected == 40);
}

TEST_CASE("solve_single agrees with the rank criterion") {
  auto ctx = testing::ctx2(2);
  Rng rng(83);
  auto d = DiffOp::derivation(ctx, 0) +
           DiffOp::derivation(ctx, 1).scaled(parse_rational(ctx, "x"));
  auto constraint = DiffOp::derivation(ctx, 1);
  for (int i = 0; i < 30; ++i) {
    auto a = rng.rational(ctx, 2, 2);
    auto sol = solve_single(d, a, 2, {constraint});
    // rank criterion on the stacked matrix: a solution exists iff appending
    // the right-hand side does not raise the rank
    auto m = d.matrix_over_subfield(2).stacked(constraint.matrix_over_subfield(2));
    std::vector<Exp> basis = subfield_basis_exponents(ctx, 2);
    std::map<Exp, int> index;
    for (size_t k = 0; k < basis.size(); ++k) index[basis[k]] = static_cast<int>(k);
    RFMatrix rhs(ctx, m.rows(), 1);
    auto coords = pbasis_decompose(a, 2);
    for (auto& [e, c] : coords.coords) rhs.at(index.at(e), 0) = c;
    bool rank_says = m.rank() == m.augmented(rhs).rank();
    CHECK(sol.has_value() == rank_says);
    if (sol) {
      CHECK(d.apply(*sol) == a);
      CHECK(constraint.apply(*sol).is_zero());
    }
  }
}

TEST_CASE("degree law: kernel of d_x at level 1 has dimension p^{nr}/p") {
  for (int p : {2, 3}) {
    for (int n : {1, 2}) {
      std::vector<std::string> vars;
      for (int i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i + 1));
      auto ctx = FieldContext::make(p, vars);
      auto m = DiffOp::derivation(ctx, 0).matrix_over_subfield(1);
      int nullity = m.rows() - m.rank();
      CHECK(nullity == ipow(p, n) / p);
    }
  }
}
