#include "gsact/solver.hpp"

#include <cassert>

namespace gsact {

ContextPtr reduction_context(int p, int m) {
  std::vector<std::string> vars;
  for (int i = 1; i <= std::max(m, 1); ++i) vars.push_back("X" + std::to_string(i));
  Budgets b;
  b.max_prime = std::max(p, b.max_prime);
  return FieldContext::make(p, vars);
}

DiffSystem make_system(std::vector<DiffOp> ops, std::vector<RationalFunction> rhs,
                       std::vector<int> order_exponents,
                       std::vector<Polynomial> reductions) {
  size_t m = ops.size();
  if (rhs.size() != m || order_exponents.size() != m || reductions.size() != m)
    fail(Errc::BadInput, "system component lists must have equal length");
  for (size_t i = 0; i < m; ++i) {
    if (order_exponents[i] < 1) fail(Errc::BadInput, "order exponents must be positive");
    if (reductions[i].ctx()->nvars() < static_cast<int>(m) && !reductions[i].is_zero())
      fail(Errc::BadInput, "reduction polynomial context too small");
    if (!reductions[i].is_zero() && reductions[i].terms().count(Exp(reductions[i].ctx()->nvars(), 0)))
      fail(Errc::BadInput, "reduction polynomial must have zero constant term");
  }
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      if (!ops[i].commutator(ops[j]).is_zero())
        fail(Errc::BadInput, "system operators must commute pairwise");
      if (ops[i].apply(rhs[j]) != ops[j].apply(rhs[i]))
        fail(Errc::BadInput, "system violates D_i(a_j) = D_j(a_i)");
    }
  DiffSystem sys;
  sys.ops = std::move(ops);
  sys.rhs = std::move(rhs);
  sys.order_exponents = std::move(order_exponents);
  sys.reduction_ctx = sys.ops.empty()
                          ? nullptr
                          : reduction_context(sys.ops[0].ctx()->p(), static_cast<int>(m));
  sys.reductions = std::move(reductions);
  return sys;
}

DiffOp operator_poly(const Polynomial& f, const std::vector<DiffOp>& ops) {
  if (ops.empty()) fail(Errc::BadInput, "operator_poly without operators");
  const ContextPtr& kctx = ops[0].ctx();
  DiffOp acc = DiffOp::zero(kctx);
  for (auto& [e, c] : f.terms()) {
    DiffOp term;
    bool have = false;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (i >= ops.size()) fail(Errc::BadInput, "polynomial references a missing operator");
      DiffOp powed = ops[i].power(e[i]);
      term = have ? term.compose(powed) : powed;
      have = true;
    }
    if (!have) fail(Errc::BadInput, "operator polynomial has a constant term");
    acc = acc + term.scaled(RationalFunction::constant(kctx, c));
  }
  return acc;
}

RationalFunction ftilde(const Polynomial& f, const std::vector<RationalFunction>& rhs,
                        const std::vector<DiffOp>& ops) {
  if (ops.empty() || rhs.size() != ops.size())
    fail(Errc::BadInput, "ftilde needs matching operators and right-hand sides");
  const ContextPtr& kctx = ops[0].ctx();
  // F = sum X_i Q_i: each monomial goes to its smallest-index variable
  std::vector<Polynomial> q(ops.size(), Polynomial::zero(f.ctx()));
  for (auto& [e, c] : f.terms()) {
    int first = -1;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) {
        first = static_cast<int>(i);
        break;
      }
    if (first < 0) fail(Errc::BadInput, "ftilde polynomial has a constant term");
    Exp rest(e);
    rest[first] -= 1;
    q[first].add_term(rest, c);
  }
  RationalFunction acc = RationalFunction::zero(kctx);
  for (size_t i = 0; i < ops.size(); ++i) {
    if (q[i].is_zero()) continue;
    RationalFunction term = rhs[i];
    // Q_i may have a constant part: Q_i(D)(a_i) = c*a_i + (operator part)(a_i)
    Exp zero(q[i].ctx()->nvars(), 0);
    Polynomial op_part = q[i];
    auto it = op_part.terms().find(zero);
    int cpart = it == op_part.terms().end() ? 0 : it->second;
    if (cpart != 0) op_part.add_term(zero, -cpart);
    RationalFunction v = RationalFunction::constant(kctx, cpart) * rhs[i];
    if (!op_part.is_zero()) v = v + operator_poly(op_part, ops).apply(rhs[i]);
    acc = acc + v;
  }
  return acc;
}

bool check_compatibility(const DiffSystem& sys) {
  for (int i = 0; i < sys.size(); ++i) {
    long long e = ipow(sys.ops[i].ctx()->p(), sys.order_exponents[i]) - 1;
    RationalFunction lhs =
        e == 0 ? sys.rhs[i] : sys.ops[i].power(e).apply(sys.rhs[i]);
    RationalFunction rhs = sys.reductions[i].is_zero()
                               ? RationalFunction::zero(sys.ops[i].ctx())
                               : ftilde(sys.reductions[i], sys.rhs, sys.ops);
    if (lhs != rhs) return false;
  }
  return true;
}

int level_for(const std::vector<DiffOp>& ops, int extra) {
  int p = ops.empty() ? 2 : ops[0].ctx()->p();
  int maxo = extra;
  for (auto& d : ops) maxo = std::max(maxo, d.max_order());
  int r = 1;
  long long q = p;
  while (q <= maxo) {
    q *= p;
    ++r;
  }
  return r;
}

// Stack the operator matrices (plus constraints with zero right-hand side)
// and solve one linear system over K^{p^r}.
std::optional<RationalFunction> solve_stacked(const std::vector<DiffOp>& ops,
                                              const std::vector<RationalFunction>& rhs,
                                              const std::vector<DiffOp>& constraints,
                                              int level) {
  const ContextPtr& ctx = ops.at(0).ctx();
  std::vector<Exp> basis = subfield_basis_exponents(ctx, level);
  std::map<Exp, int> index;
  for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
  int dim = static_cast<int>(basis.size());

  RFMatrix big(ctx, 0, dim);
  std::vector<RationalFunction> b;
  auto append = [&](const DiffOp& d, const RationalFunction& a) {
    big = big.stacked(d.matrix_over_subfield(level));
    PBasisCoordinates coords = pbasis_decompose(a, level);
    std::vector<RationalFunction> col(dim, RationalFunction::zero(ctx));
    for (auto& [e, c] : coords.coords) col[index.at(e)] = c;
    b.insert(b.end(), col.begin(), col.end());
  };
  for (size_t i = 0; i < ops.size(); ++i) append(ops[i], rhs[i]);
  for (auto& c : constraints) append(c, RationalFunction::zero(ctx));

  auto sol = solve_linear(big, b);
  if (!sol) return std::nullopt;
  PBasisCoordinates out;
  out.level = level;
  for (int i = 0; i < dim; ++i)
    if (!(*sol)[i].is_zero()) out.coords.emplace(basis[i], (*sol)[i]);
  return pbasis_reconstruct(ctx, out);
}

std::optional<RationalFunction> solve_single(const DiffOp& d, const RationalFunction& a,
                                             int level,
                                             const std::vector<DiffOp>& constraints) {
  auto x = solve_stacked({d}, {a}, constraints, level);
  if (!x) return std::nullopt;
  if (d.apply(*x) != a) fail(Errc::Internal, "solve_single produced a bad solution");
  return x;
}

SystemSolution solve_system(const DiffSystem& sys, int level) {
  if (sys.size() == 0)
    fail(Errc::BadInput, "empty system");
  if (!check_compatibility(sys))
    return SystemSolution{SystemSolution::Status::Incompatible, RationalFunction()};
  auto x = solve_stacked(sys.ops, sys.rhs, {}, level);
  if (!x) return SystemSolution{SystemSolution::Status::Incompatible, RationalFunction()};
  for (int i = 0; i < sys.size(); ++i)
    if (sys.ops[i].apply(*x) != sys.rhs[i])
      fail(Errc::Internal, "solve_system produced a bad solution");
  return SystemSolution{SystemSolution::Status::Solved, *x};
}

}  // namespace gsact
