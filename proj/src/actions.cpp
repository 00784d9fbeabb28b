#include "gsact/actions.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <sstream>

namespace gsact {

bool VerificationReport::all_passed() const { return failures() == 0; }

int VerificationReport::failures() const {
  int n = 0;
  for (auto& c : checks)
    if (!c.passed) ++n;
  return n;
}

const DiffOp& ModuleAlgebraAction::op(const std::string& gen_name) const {
  auto it = assignment.find(gen_name);
  if (it == assignment.end()) fail(Errc::BadInput, "no operator assigned to " + gen_name);
  return it->second;
}

DiffOp eval_genpoly(const ModuleAlgebraAction& action, const GenPoly& poly) {
  DiffOp acc = DiffOp::zero(action.ctx);
  for (auto& [m, c] : poly.t) {
    if (m.is_unit()) fail(Errc::BadInput, "operator polynomial with constant term");
    DiffOp term;
    bool have = false;
    for (auto& [gi, e] : m.e) {
      DiffOp powed = action.op(action.dual.gens[gi].name).power(e);
      term = have ? term.compose(powed) : powed;
      have = true;
    }
    acc = acc + term.scaled(RationalFunction::constant(action.ctx, c));
  }
  return acc;
}

// ---- canonical blocks and height-one actions ---------------------------------

DiffOp canonical_block_derivation(const ContextPtr& ctx,
                                  const std::vector<int>& block_vars) {
  int s = static_cast<int>(block_vars.size());
  if (s < 1) fail(Errc::BadInput, "empty variable block");
  if (s > ctx->height_budget())
    fail(Errc::HeightBudgetExceeded, "block longer than the height budget");
  int p = ctx->p();
  DiffOp d = DiffOp::zero(ctx);
  RationalFunction prefix = RationalFunction::one(ctx);
  for (int i = 0; i < s; ++i) {
    d = d + DiffOp::derivation(ctx, block_vars[i]).scaled(prefix);
    prefix = prefix * RationalFunction::variable(ctx, block_vars[i]).pow(p - 1);
  }
  if (d.derivation_order() != ipow(p, s))
    fail(Errc::OrderAssertionFailed, "canonical block derivation has the wrong order");
  return d;
}

ModuleAlgebraAction height_one_action(const ContextPtr& ctx, const YoungDiagram& diagram,
                                      int mu_count) {
  GroupDescriptor group = GroupDescriptor::height_one(ctx->p(), diagram, mu_count);
  GroupInvariants inv = invariants(group);
  if (inv.lie_dim > ctx->nvars())
    fail(Errc::DimensionTooSmall, "Lie dimension " + std::to_string(inv.lie_dim) +
                                      " exceeds " + std::to_string(ctx->nvars()) +
                                      " variables");
  ModuleAlgebraAction act;
  act.ctx = ctx;
  act.group = group;
  act.dual = dual_presentation(group, ctx->height_budget());
  int next_var = 0;
  for (int row = 0; row < diagram.row_count(); ++row) {
    std::vector<int> block;
    for (int j = 0; j < diagram.rows[row]; ++j) block.push_back(next_var++);
    act.assignment.emplace("U" + std::to_string(row + 1),
                           canonical_block_derivation(ctx, block));
    for (int v : block) act.pbasis.push_back(RationalFunction::variable(ctx, v));
  }
  for (int m = 0; m < mu_count; ++m) {
    int v = next_var++;
    act.assignment.emplace(
        "e" + std::to_string(m + 1),
        DiffOp::derivation(ctx, v).scaled(RationalFunction::variable(ctx, v)));
    act.pbasis.push_back(RationalFunction::variable(ctx, v));
  }
  for (; next_var < ctx->nvars(); ++next_var)
    act.pbasis.push_back(RationalFunction::variable(ctx, next_var));
  verify_action(act);
  return act;
}

// ---- extension machinery ------------------------------------------------------

namespace {

std::vector<bool> used_variables(const ModuleAlgebraAction& act) {
  std::vector<bool> used(act.ctx->nvars(), false);
  auto mark_rf = [&](const RationalFunction& f) {
    for (int v = 0; v < act.ctx->nvars(); ++v)
      if (f.num().uses_var(v) || f.den().uses_var(v)) used[v] = true;
  };
  for (auto& [name, op] : act.assignment)
    for (auto& [mono, coeff] : op.terms()) {
      for (auto& [v, o] : mono.orders) used[v] = true;
      mark_rf(coeff);
    }
  return used;
}

// The triangular p-basis attached to a verified generically free action of
// ker(F^r): ascending p-powers of the level-one derivations, completed by the
// mu-factor variables and the untouched coordinates.
struct EBasis {
  ContextPtr ctx;
  std::vector<DiffOp> e_ops;                // the E_i, ascending powers per generator
  std::vector<DiffOp> mu_ops;               // operators of the multiplicative factors
  std::vector<int> mu_vars;                 // their variables
  std::vector<int> leftover_vars;           // untouched coordinates
  std::vector<RationalFunction> t;          // full p-basis, |t| == nvars
  int e_count = 0;                          // positions 0..e_count-1 solved

  RFMatrix transition;                      // t-monomials in x-monomial coordinates
  std::vector<Exp> exps;                    // exponent vectors < p, shared indexing
  std::map<Exp, int> exp_index;

  RationalFunction t_monomial(const Exp& m) const {
    RationalFunction r = RationalFunction::one(ctx);
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) r = r * t[i].pow(m[i]);
    return r;
  }

  // f = sum coords[m] * t^m with coords in K^p.
  std::map<Exp, RationalFunction> decompose(const RationalFunction& f) const {
    std::map<Exp, RationalFunction> out;
    if (f.is_zero()) return out;
    PBasisCoordinates cx = pbasis_decompose(f, 1);
    std::vector<RationalFunction> b(exps.size(), RationalFunction::zero(ctx));
    for (auto& [e, c] : cx.coords) b[exp_index.at(e)] = c;
    auto sol = solve_linear(transition, b);
    if (!sol) fail(Errc::Internal, "p-basis transition is singular");
    for (size_t i = 0; i < sol->size(); ++i)
      if (!(*sol)[i].is_zero()) out.emplace(exps[i], (*sol)[i]);
    return out;
  }
};

EBasis build_ebasis(const ModuleAlgebraAction& act,
                    const std::vector<DiffOp>& extra_commuting) {
  const ContextPtr& ctx = act.ctx;
  int p = ctx->p();
  EBasis eb;
  eb.ctx = ctx;

  for (int gi : act.dual.gens_at_level(1)) {
    const HopfGenerator& g = act.dual.gens[gi];
    const DiffOp& d = act.op(g.name);
    if (g.multiplicative) {
      if (d.terms().size() != 1 || !d.is_derivation())
        fail(Errc::NotSupported, "mu factor operator is not of the form f*d_v");
      eb.mu_ops.push_back(d);
      eb.mu_vars.push_back(d.terms().begin()->first.orders.begin()->first);
      continue;
    }
    if (d.derivation_order() != ipow(p, g.p_exponent))
      fail(Errc::OrderAssertionFailed,
           "level-one operator order does not match the presentation");
    DiffOp power = d;
    eb.e_ops.push_back(power);
    for (int k = 1; k < g.p_exponent; ++k) {
      power = power.power(p);
      eb.e_ops.push_back(power);
    }
  }
  eb.e_count = static_cast<int>(eb.e_ops.size());

  std::vector<bool> used = used_variables(act);
  for (int v : eb.mu_vars) used[v] = true;
  for (int v = 0; v < ctx->nvars(); ++v)
    if (!used[v]) eb.leftover_vars.push_back(v);
  if (eb.e_count + static_cast<int>(eb.mu_vars.size() + eb.leftover_vars.size()) !=
      ctx->nvars())
    fail(Errc::NotSupported,
         "the base action does not split into level-one blocks plus untouched "
         "coordinates");

  // solve the triangular systems for the E-part of the p-basis
  std::vector<DiffOp> leftover_ops;
  for (int v : eb.leftover_vars) leftover_ops.push_back(DiffOp::derivation(ctx, v));
  for (int h = 0; h < eb.e_count; ++h) {
    std::vector<DiffOp> ops;
    std::vector<RationalFunction> rhs;
    for (int i = h; i < eb.e_count; ++i) {
      ops.push_back(eb.e_ops[i]);
      rhs.push_back(i == h ? RationalFunction::one(ctx) : RationalFunction::zero(ctx));
    }
    for (auto& m : eb.mu_ops) {
      ops.push_back(m);
      rhs.push_back(RationalFunction::zero(ctx));
    }
    for (auto& l : leftover_ops) {
      ops.push_back(l);
      rhs.push_back(RationalFunction::zero(ctx));
    }
    for (auto& x : extra_commuting) {
      ops.push_back(x);
      rhs.push_back(RationalFunction::zero(ctx));
    }
    auto th = solve_stacked(ops, rhs, {}, level_for(ops));
    if (!th)
      fail(Errc::ExtensionObstruction, "no triangular p-basis element at position " +
                                           std::to_string(h + 1));
    eb.t.push_back(*th);
  }
  for (int v : eb.mu_vars) eb.t.push_back(RationalFunction::variable(ctx, v));
  for (int v : eb.leftover_vars) eb.t.push_back(RationalFunction::variable(ctx, v));

  // triangularity: E_i(t_j) = delta_ij for i >= j
  for (int i = 0; i < eb.e_count; ++i)
    for (int j = 0; j <= i; ++j) {
      RationalFunction v = eb.e_ops[i].apply(eb.t[j]);
      bool ok = (i == j) ? v.is_one() : v.is_zero();
      if (!ok) fail(Errc::Internal, "p-basis triangularity failed");
    }

  // transition matrix of the t-monomials in the x-monomial coordinates
  eb.exps = subfield_basis_exponents(ctx, 1);
  for (size_t i = 0; i < eb.exps.size(); ++i) eb.exp_index[eb.exps[i]] = static_cast<int>(i);
  int dim = static_cast<int>(eb.exps.size());
  eb.transition = RFMatrix(ctx, dim, dim);
  for (int col = 0; col < dim; ++col) {
    PBasisCoordinates c = pbasis_decompose(eb.t_monomial(eb.exps[col]), 1);
    for (auto& [e, v] : c.coords) eb.transition.at(eb.exp_index.at(e), col) = v;
  }
  if (eb.transition.rank() != dim)
    fail(Errc::ExtensionObstruction, "computed p-basis does not span K over kK^p");
  return eb;
}

// The operator being defined during the extension: seeded on kK^p by the
// Verschiebung rule, with chosen values on the p-basis, evaluated through the
// compatibility-with-products formula.
struct PartialOperator {
  const ContextPtr& ctx;
  const EBasis& eb;
  DiffOp seed;  // W = v(V(T)): D(f^p) = (W(f))^p
  std::vector<std::pair<DiffOp, DiffOp>> tails;
  std::vector<std::optional<RationalFunction>> tvals;
  std::map<Exp, RationalFunction> mono_cache;

  PartialOperator(const ContextPtr& c, const EBasis& basis, DiffOp w,
                  std::vector<std::pair<DiffOp, DiffOp>> tl)
      : ctx(c), eb(basis), seed(std::move(w)), tails(std::move(tl)) {
    tvals.resize(ctx->nvars());
  }

  void set_value(int h, RationalFunction v) {
    tvals[h] = std::move(v);
    mono_cache.clear();
  }

  RationalFunction on_subfield(const RationalFunction& a) const {
    if (a.is_zero()) return a;
    auto root = a.pth_root(1);
    if (!root) fail(Errc::Internal, "seed argument is not a p-th power");
    if (seed.is_zero()) return RationalFunction::zero(ctx);
    return seed.apply(*root).frobenius(1);
  }

  RationalFunction mono_value(const Exp& m) {
    bool unit = std::all_of(m.begin(), m.end(), [](int x) { return x == 0; });
    if (unit) return RationalFunction::zero(ctx);
    auto it = mono_cache.find(m);
    if (it != mono_cache.end()) return it->second;
    int h = 0;
    while (m[h] == 0) ++h;
    if (!tvals[h])
      fail(Errc::Internal, "value requested beyond the defined subfield");
    Exp rest(m);
    rest[h] -= 1;
    RationalFunction th = eb.t[h];
    RationalFunction trest = eb.t_monomial(rest);
    RationalFunction acc = *tvals[h] * trest + th * mono_value(rest);
    for (auto& [a, b] : tails) acc = acc + a.apply(th) * b.apply(trest);
    mono_cache.emplace(m, acc);
    return acc;
  }

  RationalFunction value(const RationalFunction& f) {
    if (f.is_zero()) return f;
    RationalFunction acc = RationalFunction::zero(ctx);
    for (auto& [m, a] : eb.decompose(f)) {
      RationalFunction tm = eb.t_monomial(m);
      acc = acc + on_subfield(a) * tm + a * mono_value(m);
      for (auto& [ta, tb] : tails) acc = acc + ta.apply(a) * tb.apply(tm);
    }
    return acc;
  }

  RationalFunction value_iterated(RationalFunction x, long long times) {
    for (long long i = 0; i < times; ++i) x = value(x);
    return x;
  }

  // The unique operator with divided-power orders < p^level matching the
  // value function on the monomial basis.
  DiffOp reconstruct(int level) {
    std::vector<Exp> basis = subfield_basis_exponents(ctx, level);
    std::sort(basis.begin(), basis.end(), [](const Exp& a, const Exp& b) {
      int ta = 0, tb = 0;
      for (int x : a) ta += x;
      for (int x : b) tb += x;
      return ta != tb ? ta < tb : a < b;
    });
    int p = ctx->p();
    std::map<Exp, RationalFunction> coeff;
    for (auto& e : basis) {
      RationalFunction acc = value(RationalFunction(Polynomial::monomial(ctx, e, 1)));
      for (auto& [m, cm] : coeff) {
        int binom = 1;
        bool le = true;
        Exp diff(e.size());
        for (size_t v = 0; v < e.size(); ++v) {
          if (m[v] > e[v]) {
            le = false;
            break;
          }
          diff[v] = e[v] - m[v];
          binom = fp_mul(binom, binom_mod_p(e[v], m[v], p), p);
        }
        if (!le || binom == 0) continue;
        acc = acc - cm * RationalFunction(Polynomial::monomial(ctx, diff, binom));
      }
      if (!acc.is_zero()) coeff.emplace(e, acc);
    }
    Exp zero(ctx->nvars(), 0);
    if (coeff.count(zero))
      fail(Errc::Internal, "reconstructed operator has a multiplication term");
    DiffOp out(ctx);
    for (auto& [e, c] : coeff) {
      DPMonomial mono;
      for (size_t v = 0; v < e.size(); ++v)
        if (e[v] > 0) mono.orders[static_cast<int>(v)] = e[v];
      out.add_term(mono, c);
    }
    return out;
  }
};

struct ExtraPrior {
  DiffOp op;
  DiffOp seed;  // v(V(T)) of the prior, zero for derivations
};

ModuleAlgebraAction extend_action_impl(const ModuleAlgebraAction& base,
                                       const GroupDescriptor& target,
                                       const std::vector<ExtraPrior>& extra) {
  const ContextPtr& ctx = base.ctx;
  int p = ctx->p();
  if (target.p != p) fail(Errc::BadInput, "characteristic mismatch");
  if (!target.commutative())
    fail(Errc::NotSupported, "extension targets must be commutative");
  HopfPresentation tdual = dual_presentation(target, ctx->height_budget());
  int height = tdual.max_level();
  int r = base.dual.max_level();
  if (r > height) fail(Errc::BadInput, "base has more levels than the target");
  if (!tdual.truncated_to_level(r).structurally_equal(base.dual))
    fail(Errc::BadInput,
         "the target's Frobenius kernel at the base height does not match the base");

  GroupInvariants inv = invariants(target);
  if (inv.lie_dim > ctx->nvars())
    fail(Errc::DimensionTooSmall, "Lie dimension exceeds the variable count");

  ModuleAlgebraAction cur = base;
  cur.group = target;
  cur.dual = tdual;
  if (r == height) {
    if (cur.verified == ModuleAlgebraAction::Verified::Unchecked) verify_action(cur);
    return cur;
  }

  if (cur.verified == ModuleAlgebraAction::Verified::Unchecked) {
    ModuleAlgebraAction check = base;
    verify_action(check);
    if (check.verified != ModuleAlgebraAction::Verified::Passed)
      fail(Errc::BadInput, "base action fails verification");
    if (base.group.commutative() && !is_generically_free(check))
      fail(Errc::BadInput, "base action is not generically free");
  }

  std::vector<DiffOp> extra_ops;
  for (auto& e : extra) extra_ops.push_back(e.op);
  EBasis eb = build_ebasis(base, extra_ops);

  std::vector<DiffOp> leftover_ops;
  for (int v : eb.leftover_vars) leftover_ops.push_back(DiffOp::derivation(ctx, v));

  // priors in (level, index) order; mirrors the recursion of the construction
  std::vector<int> priors;
  for (int lvl = 1; lvl <= r; ++lvl)
    for (int gi : tdual.gens_at_level(lvl)) priors.push_back(gi);

  for (int lvl = r + 1; lvl <= height; ++lvl) {
    for (int gi : tdual.gens_at_level(lvl)) {
      const HopfGenerator& g = tdual.gens[gi];
      if (g.multiplicative)
        fail(Errc::NotSupported, "multiplicative factors above height one");
      GenPoly vimage = tdual.verschiebung(gi);
      DiffOp w = vimage.is_zero() ? DiffOp::zero(ctx) : eval_genpoly(cur, vimage);
      std::vector<std::pair<DiffOp, DiffOp>> tails;
      for (auto& [k, c] : g.comul_tail.t) {
        GenPoly left;
        left.add(k.first, c, p);
        GenPoly right;
        right.add(k.second, 1, p);
        tails.emplace_back(eval_genpoly(cur, left), eval_genpoly(cur, right));
      }
      PartialOperator po(ctx, eb, w, std::move(tails));

      DiffOp vq = g.relation_q.is_zero() ? DiffOp::zero(ctx)
                                         : eval_genpoly(cur, g.relation_q);
      long long rel_power = ipow(p, g.p_exponent);

      for (int h = 0; h < ctx->nvars(); ++h) {
        if (h >= eb.e_count) {
          // mu-factor or untouched coordinate: value 0, consistency asserted
          for (int pi : priors) {
            const DiffOp& pop = cur.op(tdual.gens[pi].name);
            if (tdual.gens[pi].multiplicative) continue;  // handled by x_v d_v(0)=0
            if (!pop.apply(eb.t[h]).is_zero())
              fail(Errc::NotSupported,
                   "prior operators do not annihilate an untouched coordinate");
          }
          if (!vq.is_zero() && !vq.apply(eb.t[h]).is_zero())
            fail(Errc::NotSupported, "relation image on an untouched coordinate");
          po.set_value(h, RationalFunction::zero(ctx));
          continue;
        }
        // commutation system S_h: P(x) = D(P(t_h)) for every prior P
        std::vector<DiffOp> ops;
        std::vector<RationalFunction> rhs;
        for (int pi : priors) {
          const DiffOp& pop = cur.op(tdual.gens[pi].name);
          ops.push_back(pop);
          rhs.push_back(po.value(pop.apply(eb.t[h])));
        }
        for (auto& e : extra) {
          ops.push_back(e.op);
          rhs.push_back(po.value(e.op.apply(eb.t[h])));
        }
        for (auto& l : leftover_ops) {
          ops.push_back(l);
          rhs.push_back(RationalFunction::zero(ctx));
        }
        auto x0 = solve_stacked(ops, rhs, {}, level_for(ops));
        if (!x0)
          fail(Errc::ExtensionObstruction,
               "commutation system has no solution at " + g.name + ", basis position " +
                   std::to_string(h + 1));

        // relation correction: D^{p^m - 1}(x0 + y) = v(Q)(t_h) with y = z^p in
        // the joint kernel of the priors
        RationalFunction want =
            vq.is_zero() ? RationalFunction::zero(ctx) : vq.apply(eb.t[h]);
        RationalFunction have = po.value_iterated(*x0, rel_power - 1);
        RationalFunction residue = want - have;
        RationalFunction x = *x0;
        if (!residue.is_zero()) {
          auto root = residue.pth_root(1);
          if (!root)
            fail(Errc::ExtensionObstruction,
                 "relation residue is not a p-th power at " + g.name);
          if (w.is_zero()) {
            fail(Errc::ExtensionObstruction,
                 "relation residue with a trivial Verschiebung seed");
          } else {
            std::vector<DiffOp> zcons;
            for (int pi : priors) {
              if (tdual.gens[pi].level < 2) continue;
              GenPoly pv = tdual.verschiebung(pi);
              if (!pv.is_zero()) zcons.push_back(eval_genpoly(cur, pv));
            }
            for (auto& e : extra)
              if (!e.seed.is_zero()) zcons.push_back(e.seed);
            DiffOp wpow = rel_power - 1 >= 1 ? w.power(rel_power - 1) : w;
            std::vector<DiffOp> all = zcons;
            all.push_back(wpow);
            auto z = solve_single(wpow, *root, level_for(all), zcons);
            if (!z)
              fail(Errc::ExtensionObstruction,
                   "relation correction has no solution at " + g.name);
            x = x + z->frobenius(1);
          }
        }
        po.set_value(h, x);
      }

      DiffOp d = po.reconstruct(lvl);
      // tripwires from the construction: commutator defects and the relation
      // defect must be derivations, and in fact vanish
      for (int pi : priors) {
        DiffOp defect = d.commutator(cur.op(tdual.gens[pi].name));
        if (!defect.is_derivation())
          fail(Errc::Internal, "commutator defect is not a derivation");
        if (!defect.is_zero()) fail(Errc::Internal, "commutator defect is nonzero");
      }
      for (auto& e : extra) {
        DiffOp defect = d.commutator(e.op);
        if (!defect.is_zero()) fail(Errc::Internal, "cross-copy commutator is nonzero");
      }
      DiffOp rel_defect = d.power(rel_power) - vq;
      if (!rel_defect.is_derivation())
        fail(Errc::Internal, "relation defect is not a derivation");
      if (!rel_defect.is_zero()) fail(Errc::Internal, "relation defect is nonzero");

      cur.assignment.emplace(g.name, std::move(d));
      priors.push_back(gi);
    }
  }
  cur.pbasis = eb.t;
  cur.verified = ModuleAlgebraAction::Verified::Unchecked;
  cur.report.reset();
  verify_action(cur);
  return cur;
}

}  // namespace

ModuleAlgebraAction extend_action(const ModuleAlgebraAction& base,
                                  const GroupDescriptor& target) {
  return extend_action_impl(base, target, {});
}

// ---- verification -------------------------------------------------------------

namespace {

std::vector<std::pair<RationalFunction, std::string>> spanning_monomials(
    const ContextPtr& ctx, int max_exp) {
  std::vector<std::pair<RationalFunction, std::string>> out;
  Exp cur(ctx->nvars(), 0);
  while (true) {
    Polynomial m = Polynomial::monomial(ctx, cur, 1);
    out.emplace_back(RationalFunction(m), m.str());
    int i = ctx->nvars() - 1;
    while (i >= 0) {
      if (++cur[i] < max_exp) break;
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace

VerificationReport verify_action(ModuleAlgebraAction& action, unsigned rng_seed) {
  const ContextPtr& ctx = action.ctx;
  int p = ctx->p();
  VerificationReport rep;

  for (auto& g : action.dual.gens)
    if (!action.assignment.count(g.name))
      fail(Errc::BadInput, "generator " + g.name + " has no assigned operator");

  int max_order = 1;
  for (auto& [name, op] : action.assignment) max_order = std::max(max_order, op.max_order());
  int k = 0;
  while (ipow(p, k) < max_order) ++k;
  int n_exp = k + 1;
  rep.spanning_exponent = n_exp;
  long long span = ipow(p, n_exp);

  auto monos = spanning_monomials(ctx, static_cast<int>(span));
  std::mt19937 gen(rng_seed);
  std::uniform_int_distribution<int> coeff(0, p - 1);
  std::uniform_int_distribution<int> expd(0, 2);
  auto random_rational = [&]() {
    Polynomial num(ctx);
    Polynomial den(ctx);
    for (int t = 0; t < 2; ++t) {
      Exp e(ctx->nvars());
      for (int& x : e) x = expd(gen);
      num.add_term(e, coeff(gen));
    }
    Exp f(ctx->nvars());
    for (int& x : f) x = expd(gen);
    den.add_term(f, 1);
    den.add_term(Exp(ctx->nvars(), 0), coeff(gen));
    if (den.is_zero()) den = Polynomial::constant(ctx, 1);
    return RationalFunction(num, den);
  };

  for (size_t gi = 0; gi < action.dual.gens.size(); ++gi) {
    const HopfGenerator& g = action.dual.gens[gi];
    const DiffOp& op = action.op(g.name);

    // (d) Diff+: the operator annihilates 1
    {
      bool ok = op.apply(RationalFunction::one(ctx)).is_zero();
      rep.checks.push_back({"unit", g.name, ok, ok ? "" : "v(T)(1) != 0"});
    }

    // (a) relation
    {
      DiffOp lhs = op.power(g.multiplicative ? p : ipow(p, g.p_exponent));
      DiffOp rhs = g.multiplicative
                       ? op
                       : (g.relation_q.is_zero() ? DiffOp::zero(ctx)
                                                 : eval_genpoly(action, g.relation_q));
      bool ok = lhs == rhs;
      std::string witness;
      if (!ok)
        witness = "v(T)^{p^m} = " + lhs.str() + " but v(Q) = " + rhs.str();
      rep.checks.push_back({"relation", g.name, ok, witness});
    }

    // (c) product compatibility on the spanning monomials plus random pairs
    {
      std::vector<std::pair<DiffOp, DiffOp>> tails;
      for (auto& [key, c] : g.comul_tail.t) {
        GenPoly left;
        left.add(key.first, c, p);
        GenPoly right;
        right.add(key.second, 1, p);
        tails.emplace_back(eval_genpoly(action, left), eval_genpoly(action, right));
      }
      auto compatible = [&](const RationalFunction& f, const RationalFunction& h) {
        RationalFunction lhs = op.apply(f * h);
        RationalFunction rhs = op.apply(f) * h + f * op.apply(h);
        for (auto& [a, b] : tails) rhs = rhs + a.apply(f) * b.apply(h);
        return lhs == rhs;
      };
      bool ok = true;
      std::string witness;
      for (auto& [f, fs] : monos) {
        for (auto& [h, hs] : monos) {
          if (!compatible(f, h)) {
            ok = false;
            witness = "pair (" + fs + ", " + hs + ")";
            break;
          }
        }
        if (!ok) break;
      }
      for (int t = 0; ok && t < 100; ++t) {
        RationalFunction f = random_rational();
        RationalFunction h = random_rational();
        if (!compatible(f, h)) {
          ok = false;
          witness = "pair (" + f.str() + ", " + h.str() + ")";
        }
      }
      rep.checks.push_back({"compatibility", g.name, ok, witness});
    }
  }

  // (b) commutation, with declared commutators for non-commutative inputs
  for (size_t i = 0; i < action.dual.gens.size(); ++i) {
    for (size_t j = i + 1; j < action.dual.gens.size(); ++j) {
      const std::string& a = action.dual.gens[i].name;
      const std::string& b = action.dual.gens[j].name;
      // declared (d1, d2, rel) means [op_{d1}, op_{d2}] = v(rel); we test
      // [op_j, op_i] with j > i
      DiffOp expected = DiffOp::zero(ctx);
      for (auto& [d1, d2, rel] : action.dual.extra_commutators) {
        if (d1 == static_cast<int>(j) && d2 == static_cast<int>(i))
          expected = eval_genpoly(action, rel);
        else if (d1 == static_cast<int>(i) && d2 == static_cast<int>(j))
          expected = -eval_genpoly(action, rel);
      }
      DiffOp got = action.op(b).commutator(action.op(a));
      bool ok = got == expected;
      std::string witness;
      if (!ok) witness = "[" + b + ", " + a + "] = " + got.str();
      rep.checks.push_back({"commutation", "[" + b + ", " + a + "]", ok, witness});
    }
  }

  // faithfulness and generic freeness
  if (action.dual.commutative) {
    std::vector<DiffOp> w, m;
    socle_operators(action, w, m);
    bool u_fp = operators_fp_independent(w);
    bool m_fp = operators_fp_independent(m);
    rep.faithful = u_fp && m_fp;
    rep.generically_free = derivations_k_independent(w) && m_fp;
    rep.freeness_criterion = "socle";
  } else {
    std::vector<DiffOp> level1;
    for (int gi : action.dual.gens_at_level(1))
      level1.push_back(action.op(action.dual.gens[gi].name));
    rep.generically_free = derivations_k_independent(level1);
    rep.faithful = rep.generically_free;
    rep.freeness_criterion = "ker(F) level";
  }

  action.report = rep;
  action.verified = rep.all_passed() ? ModuleAlgebraAction::Verified::Passed
                                     : ModuleAlgebraAction::Verified::Failed;
  return rep;
}

// ---- socle operators and decision procedures -----------------------------------

void socle_operators(const ModuleAlgebraAction& action, std::vector<DiffOp>& unipotent,
                     std::vector<DiffOp>& multiplicative) {
  if (!action.dual.commutative)
    fail(Errc::NotSupported, "socle operators need a commutative presentation");
  std::vector<GenPoly> w, m;
  action.dual.socle_split(w, m);
  for (auto& e : w) {
    DiffOp d = eval_genpoly(action, e);
    if (!d.is_derivation())
      fail(Errc::Internal, "unipotent socle operator is not a derivation");
    unipotent.push_back(std::move(d));
  }
  for (auto& e : m) multiplicative.push_back(eval_genpoly(action, e));
}

bool derivations_k_independent(const std::vector<DiffOp>& ops) {
  if (ops.empty()) return true;
  const ContextPtr& ctx = ops[0].ctx();
  RFMatrix m(ctx, static_cast<int>(ops.size()), ctx->nvars());
  for (size_t i = 0; i < ops.size(); ++i) {
    if (!ops[i].is_derivation())
      fail(Errc::NotADerivation, "K-independence test needs derivations");
    for (auto& [mono, c] : ops[i].terms())
      m.at(static_cast<int>(i), mono.orders.begin()->first) = c;
  }
  return m.rank() == static_cast<int>(ops.size());
}

bool operators_fp_independent(const std::vector<DiffOp>& ops) {
  if (ops.empty()) return true;
  const ContextPtr& ctx = ops[0].ctx();
  int p = ctx->p();
  long long total = ipow(p, static_cast<int>(ops.size()));
  for (long long mask = 1; mask < total; ++mask) {
    DiffOp acc = DiffOp::zero(ctx);
    long long m = mask;
    for (size_t i = 0; i < ops.size(); ++i) {
      int c = static_cast<int>(m % p);
      m /= p;
      if (c != 0) acc = acc + ops[i].scaled(RationalFunction::constant(ctx, c));
    }
    if (acc.is_zero()) return false;
  }
  return true;
}

bool is_faithful(const ModuleAlgebraAction& action) {
  if (!action.dual.commutative)
    fail(Errc::NotSupported, "faithfulness test supports commutative inputs");
  std::vector<DiffOp> w, m;
  socle_operators(action, w, m);
  return operators_fp_independent(w) && operators_fp_independent(m);
}

bool is_generically_free(const ModuleAlgebraAction& action) {
  if (!action.dual.commutative)
    fail(Errc::NotSupported, "generic-freeness test supports commutative inputs");
  std::vector<DiffOp> w, m;
  socle_operators(action, w, m);
  return derivations_k_independent(w) && operators_fp_independent(m);
}

// ---- products and joins ---------------------------------------------------------

ModuleAlgebraAction power_faithful_action(
    const GroupDescriptor& group, int ell, const ContextPtr& ctx,
    const std::vector<std::vector<RationalFunction>>& multipliers) {
  if (ell < 1) fail(Errc::BadInput, "ell must be positive");
  if (!group.commutative()) fail(Errc::NotSupported, "commutative groups only");
  GroupInvariants inv = invariants(group);
  if (inv.lie_dim > ctx->nvars())
    fail(Errc::DimensionTooSmall, "Lie dimension exceeds the variable count");

  GroupDescriptor kerf = ker_frobenius_power(group, 1);
  if (kerf.kind != GroupDescriptor::Kind::HeightOne || kerf.mu != 0)
    fail(Errc::NotSupported, "unipotent Frobenius kernels only");
  int h = kerf.diagram.row_count();
  if (static_cast<int>(multipliers.size()) != ell)
    fail(Errc::BadInput, "need one multiplier row per copy");
  for (auto& row : multipliers)
    if (static_cast<int>(row.size()) != h)
      fail(Errc::BadInput, "need one multiplier per Frobenius-kernel row");
  for (auto& row : multipliers)
    for (auto& f : row)
      if (!member_subfield(f, 1))
        fail(Errc::BadInput, "multipliers must lie in kK^p");
  // each column must be F_p-independent across the copies, otherwise a
  // diagonal copy of alpha_p acts trivially
  int p = ctx->p();
  for (int j = 0; j < h; ++j) {
    long long total = ipow(p, ell);
    for (long long mask = 1; mask < total; ++mask) {
      RationalFunction acc = RationalFunction::zero(ctx);
      long long m = mask;
      for (int i = 0; i < ell; ++i) {
        int c = static_cast<int>(m % p);
        m /= p;
        if (c != 0)
          acc = acc + RationalFunction::constant(ctx, c) * multipliers[i][j];
      }
      if (acc.is_zero())
        fail(Errc::DependentMultipliers,
             "multiplier column " + std::to_string(j + 1) + " is F_p-dependent");
    }
  }

  // shared blocks for the Frobenius-kernel rows
  std::vector<std::vector<int>> blocks;
  int next_var = 0;
  for (int row = 0; row < h; ++row) {
    std::vector<int> block;
    for (int j = 0; j < kerf.diagram.rows[row]; ++j) block.push_back(next_var++);
    blocks.push_back(std::move(block));
  }

  std::vector<ModuleAlgebraAction> copies;
  std::vector<ExtraPrior> priors_so_far;
  for (int c = 0; c < ell; ++c) {
    ModuleAlgebraAction base;
    base.ctx = ctx;
    base.group = kerf;
    base.dual = dual_presentation(kerf, ctx->height_budget());
    for (int row = 0; row < h; ++row) {
      DiffOp d = canonical_block_derivation(ctx, blocks[row]).scaled(multipliers[c][row]);
      if (d.derivation_order() != ipow(p, kerf.diagram.rows[row]))
        fail(Errc::OrderAssertionFailed, "scaled block has the wrong order");
      base.assignment.emplace("U" + std::to_string(row + 1), std::move(d));
    }
    for (auto& b : blocks)
      for (int v : b) base.pbasis.push_back(RationalFunction::variable(ctx, v));
    for (int v = next_var; v < ctx->nvars(); ++v)
      base.pbasis.push_back(RationalFunction::variable(ctx, v));
    verify_action(base);
    ModuleAlgebraAction full = extend_action_impl(base, group, priors_so_far);
    for (auto& g : full.dual.gens) {
      GenPoly v = full.dual.verschiebung(full.dual.gen_index(g.name));
      priors_so_far.push_back(
          {full.op(g.name),
           v.is_zero() ? DiffOp::zero(ctx) : eval_genpoly(full, v)});
    }
    copies.push_back(std::move(full));
  }

  std::vector<HopfPresentation> factors;
  std::vector<std::string> suffixes;
  for (int c = 0; c < ell; ++c) {
    factors.push_back(copies[c].dual);
    suffixes.push_back("_c" + std::to_string(c + 1));
  }
  HopfPresentation prod = HopfPresentation::product(factors, suffixes);
  ModuleAlgebraAction out;
  out.ctx = ctx;
  out.dual = prod;
  out.group = GroupDescriptor::explicit_group(ctx->p(), prod);
  for (int c = 0; c < ell; ++c)
    for (auto& [name, op] : copies[c].assignment)
      out.assignment.emplace(name + suffixes[c], op);
  out.pbasis = copies[0].pbasis;
  verify_action(out);
  return out;
}

ModuleAlgebraAction join_greedy(const std::vector<ModuleAlgebraAction>& actions) {
  if (actions.empty()) fail(Errc::BadInput, "join of an empty list");
  const ContextPtr& ctx = actions[0].ctx;
  int p = ctx->p();
  std::vector<YoungDiagram> diagrams;
  for (auto& a : actions) {
    require_same_ctx(ctx, a.ctx);
    if (a.group.kind != GroupDescriptor::Kind::HeightOne || a.group.mu != 0)
      fail(Errc::NotSupported, "join supports height-one unipotent actions");
    diagrams.push_back(a.group.diagram);
  }
  // operators across the list must commute pairwise
  for (size_t i = 0; i < actions.size(); ++i)
    for (size_t j = i + 1; j < actions.size(); ++j)
      for (auto& [na, oa] : actions[i].assignment)
        for (auto& [nb, ob] : actions[j].assignment)
          if (!oa.commutator(ob).is_zero())
            fail(Errc::BadInput, "input actions do not commute pairwise");

  YoungDiagram join = young_join(diagrams);
  int s = join.row_count();
  std::vector<int> choose;  // f(r): input whose r-th row realizes the join row
  for (int r = 0; r < s; ++r) {
    int pick = -1;
    for (size_t i = 0; i < diagrams.size(); ++i)
      if (diagrams[i].row_count() > r && diagrams[i].rows[r] == join.rows[r]) {
        pick = static_cast<int>(i);
        break;
      }
    if (pick < 0) fail(Errc::Internal, "join selection failed");
    choose.push_back(pick);
  }

  std::vector<DiffOp> es;
  std::vector<DiffOp> tops;  // E_k^{p^{n_k}-1}
  for (int r = 0; r < s; ++r) {
    int src = choose[r];
    const YoungDiagram& tau = diagrams[src];
    int target_order = join.rows[r];
    DiffOp picked;
    bool found = false;
    for (int k = 0; k < tau.row_count() && k <= r; ++k) {
      if (tau.rows[k] < target_order) continue;
      DiffOp d = actions[src].op("U" + std::to_string(k + 1));
      DiffOp top = d.power(ipow(p, tau.rows[k]) - 1);
      std::vector<DiffOp> test = tops;
      test.push_back(top);
      if (!derivations_k_independent(test)) continue;
      int drop = tau.rows[k] - target_order;
      picked = drop == 0 ? d : d.power(ipow(p, drop));
      found = true;
      break;
    }
    if (!found)
      fail(Errc::JoinInfeasible,
           "no candidate derivation escapes the span at row " + std::to_string(r + 1));
    if (picked.derivation_order() != ipow(p, target_order))
      fail(Errc::OrderAssertionFailed, "joined derivation has the wrong order");
    tops.push_back(picked.power(ipow(p, target_order) - 1));
    es.push_back(std::move(picked));
  }

  ModuleAlgebraAction out;
  out.ctx = ctx;
  out.group = GroupDescriptor::height_one(p, join, 0);
  out.dual = dual_presentation(out.group, ctx->height_budget());
  for (int r = 0; r < s; ++r)
    out.assignment.emplace("U" + std::to_string(r + 1), es[r]);
  verify_action(out);
  return out;
}

// ---- worked examples -------------------------------------------------------------

ModuleAlgebraAction example_ptorsion(int p, int n, const ContextPtr& ctx) {
  if (n > ctx->height_budget())
    fail(Errc::HeightBudgetExceeded, "tower length exceeds the height budget");
  ModuleAlgebraAction act = height_one_action(ctx, YoungDiagram::make({1}), 0);
  if (n == 1) return act;
  return extend_action(act, GroupDescriptor::ker_f_minus_v(p, n));
}

ModuleAlgebraAction example_noncommutative(int p, int n, const ContextPtr& ctx) {
  if (n < 2) fail(Errc::BadInput, "the family needs n >= 2");
  if (n + 1 > ctx->height_budget())
    fail(Errc::HeightBudgetExceeded, "order p^{n+1} exceeds the height budget");

  // k[G] = k[T0,T1]/(T0^{p^n}, T1^p - T0) with Delta(T0) primitive and
  // Delta(T1) = T1(x)1 + 1(x)T1 + T0^{p^{n-1}} (x) T0^{p^{n-2}}.
  HopfPresentation kg;
  kg.p = p;
  {
    HopfGenerator t0;
    t0.name = "T0";
    t0.level = 1;
    t0.p_exponent = n;
    kg.gens.push_back(std::move(t0));
    HopfGenerator t1;
    t1.name = "T1";
    t1.level = 2;
    t1.p_exponent = 1;
    t1.relation_q = GenPoly::gen(0, 1);
    GenMonomial left, right;
    left.e[0] = static_cast<int>(ipow(p, n - 1));
    right.e[0] = static_cast<int>(ipow(p, n - 2));
    t1.comul_tail.add(left, right, 1, p);
    kg.gens.push_back(std::move(t1));
  }

  // The dual relations and tails are extracted from the finite dual, with the
  // classical pairing U_0(T1) = 1 and U_i(T0^{p^{i-1}}) = 1.
  FiniteDual fd(kg);
  std::vector<FiniteDual::Fun> u;
  {
    GenMonomial t1m;
    t1m.e[1] = 1;
    u.push_back(fd.delta_fun(t1m));
    for (int i = 1; i <= n; ++i) {
      GenMonomial t0m;
      t0m.e[0] = static_cast<int>(ipow(p, i - 1));
      u.push_back(fd.delta_fun(t0m));
    }
  }

  // monomial functionals U_0^{a_0} ... U_n^{a_n}, a_i < p, in ascending order
  std::vector<GenMonomial> umonos;
  std::vector<FiniteDual::Fun> ufuns;
  {
    std::vector<int> a(n + 1, 0);
    while (true) {
      FiniteDual::Fun f = fd.unit();
      GenMonomial m;
      for (int i = 0; i <= n; ++i)
        if (a[i] > 0) {
          m.e[i] = a[i];
          f = fd.conv(f, fd.conv_pow(u[i], a[i]));
        }
      umonos.push_back(m);
      ufuns.push_back(std::move(f));
      int i = 0;
      while (i <= n) {
        if (++a[i] < p) break;
        a[i] = 0;
        ++i;
      }
      if (i > n) break;
    }
  }
  FpMat bmat(p, fd.dim, static_cast<int>(ufuns.size()));
  for (size_t j = 0; j < ufuns.size(); ++j)
    for (int i = 0; i < fd.dim; ++i) bmat.at(i, static_cast<int>(j)) = ufuns[j][i];
  if (bmat.rank() != fd.dim)
    fail(Errc::Internal, "dual monomials do not span the dual algebra");

  auto in_basis = [&](const FiniteDual::Fun& f) {
    auto sol = bmat.solve(f);
    if (!sol) fail(Errc::Internal, "functional outside the dual monomial span");
    GenPoly out;
    for (size_t j = 0; j < umonos.size(); ++j)
      if ((*sol)[j] != 0) out.add(umonos[j], (*sol)[j], p);
    return out;
  };

  HopfPresentation pres;
  pres.p = p;
  pres.commutative = false;
  for (int i = 0; i <= n; ++i) {
    HopfGenerator g;
    g.name = "U" + std::to_string(i);
    g.level = i + 1;
    g.p_exponent = 1;
    g.relation_q = in_basis(fd.conv_pow(u[i], p));
    pres.gens.push_back(std::move(g));
  }
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < i; ++j) {
      FiniteDual::Fun lhs = fd.conv(u[i], u[j]);
      FiniteDual::Fun rhs = fd.conv(u[j], u[i]);
      for (int k = 0; k < fd.dim; ++k) lhs[k] = fp_sub(lhs[k], rhs[k], p);
      if (fd.is_zero(lhs)) continue;
      pres.extra_commutators.emplace_back(i, j, in_basis(lhs));
    }
  // comultiplication tails in the dual monomial basis
  {
    // solve bmat * C * bmat^T = comult(u_i) leg by leg
    auto express2 = [&](const std::vector<std::vector<int>>& d) {
      int nm = static_cast<int>(ufuns.size());
      FpMat x(p, nm, fd.dim);
      for (int c = 0; c < fd.dim; ++c) {
        std::vector<int> col(fd.dim);
        for (int r = 0; r < fd.dim; ++r) col[r] = d[r][c];
        auto sol = bmat.solve(col);
        if (!sol) fail(Errc::Internal, "dual comultiplication outside the span");
        for (int r = 0; r < nm; ++r) x.at(r, c) = (*sol)[r];
      }
      FpMat cm(p, nm, nm);
      for (int r = 0; r < nm; ++r) {
        std::vector<int> row(fd.dim);
        for (int c = 0; c < fd.dim; ++c) row[c] = x.at(r, c);
        auto sol = bmat.solve(row);
        if (!sol) fail(Errc::Internal, "dual comultiplication outside the span");
        for (int c = 0; c < nm; ++c) cm.at(r, c) = (*sol)[c];
      }
      return cm;
    };
    for (int i = 0; i <= n; ++i) {
      FpMat cm = express2(fd.comult(u[i]));
      Tensor2 tail;
      GenMonomial self;
      self.e[i] = 1;
      for (size_t r = 0; r < umonos.size(); ++r)
        for (size_t c = 0; c < umonos.size(); ++c) {
          int v = cm.at(static_cast<int>(r), static_cast<int>(c));
          if (v == 0) continue;
          if ((umonos[r] == self && umonos[c].is_unit()) ||
              (umonos[r].is_unit() && umonos[c] == self))
            continue;
          tail.add(umonos[r], umonos[c], v, p);
        }
      pres.gens[i].comul_tail = std::move(tail);
    }
  }

  ModuleAlgebraAction act;
  act.ctx = ctx;
  act.group = GroupDescriptor::explicit_group(p, pres, kg);
  act.dual = pres;
  for (int i = 0; i < n; ++i)
    act.assignment.emplace("U" + std::to_string(i),
                           DiffOp::divided_power(ctx, 0, static_cast<int>(ipow(p, i))));
  DiffOp dn = DiffOp::divided_power(ctx, 0, static_cast<int>(ipow(p, n))) -
              DiffOp::derivation(ctx, 0).scaled(
                  RationalFunction::variable(ctx, 0).pow(ipow(p, n - 1)));
  act.assignment.emplace("U" + std::to_string(n), std::move(dn));
  verify_action(act);
  return act;
}

ModuleAlgebraAction example_counterexample_surface(int p, const ContextPtr& ctx) {
  if (ctx->nvars() < 2) fail(Errc::BadInput, "the surface example needs two variables");
  HopfPresentation pres;
  pres.p = p;
  WittSumData witt = witt_sum_polynomials(p, 2, ctx->height_budget());
  auto add_block = [&](const std::string& a, const std::string& b, int qidx) {
    // block (a, b) with a^p = 0, b^p = relation_q, Witt S_1 tail for b
    HopfGenerator g0;
    g0.name = a;
    g0.level = 1;
    g0.p_exponent = 1;
    int ia = static_cast<int>(pres.gens.size());
    pres.gens.push_back(std::move(g0));
    HopfGenerator g1;
    g1.name = b;
    g1.level = 2;
    g1.p_exponent = 1;
    g1.relation_q = GenPoly::gen(qidx, 1);
    Tensor2 tail;
    for (auto& [e, c] : witt.polys[1].terms()) {
      if (e[0] == 0 || e[2] == 0) continue;  // only the mixed X_0^i Y_0^j part
      GenMonomial left, right;
      left.e[ia] = e[0];
      right.e[ia] = e[2];
      tail.add(left, right, c, p);
    }
    g1.comul_tail = tail;
    pres.gens.push_back(std::move(g1));
  };
  // k[T0,T1,U0,U1]/(T0^p, U0^p, T1^p - U0, U1^p - T0)
  add_block("T0", "T1", 2);  // T1^p = U0 (index 2)
  add_block("U0", "U1", 0);  // U1^p = T0 (index 0)
  for (auto& g : pres.gens) {
    GenPoly reduced;
    for (auto& [m, c] : g.relation_q.t) reduced.add(m, c, p);
    g.relation_q = reduced;
    g.comul_tail = pres.reduce(g.comul_tail);
  }

  ModuleAlgebraAction act;
  act.ctx = ctx;
  act.group = GroupDescriptor::explicit_group(p, pres);
  act.dual = pres;
  long long pp1 = static_cast<long long>(p) * (p - 1);
  act.assignment.emplace("T0", DiffOp::derivation(ctx, 0));
  act.assignment.emplace("U0", DiffOp::derivation(ctx, 1));
  act.assignment.emplace(
      "T1", DiffOp::divided_power(ctx, 0, p) -
                DiffOp::derivation(ctx, 1).scaled(
                    RationalFunction::variable(ctx, 0).pow(pp1)));
  act.assignment.emplace(
      "U1", DiffOp::divided_power(ctx, 1, p) -
                DiffOp::derivation(ctx, 0).scaled(
                    RationalFunction::variable(ctx, 1).pow(pp1)));
  verify_action(act);
  return act;
}

}  // namespace gsact
