#pragma once

// Decision and solution procedures for systems of derivation equations
// D_i(x) = a_i with p-power reductions D_i^{p^{l_i}} = F_i(D_1,...,D_m),
// via exact linear algebra over K^{p^r}.

#include <optional>
#include <vector>

#include "gsact/diffop.hpp"

namespace gsact {

struct DiffSystem {
  std::vector<DiffOp> ops;
  std::vector<RationalFunction> rhs;
  std::vector<int> order_exponents;     // l_i
  std::vector<Polynomial> reductions;   // F_i over variables X1..Xm (own context)
  ContextPtr reduction_ctx;             // context of the F_i

  int size() const { return static_cast<int>(ops.size()); }
};

// Context with variables X1..Xm for the reduction polynomials of an
// m-equation system in characteristic p.
ContextPtr reduction_context(int p, int m);

// Builds the system and checks its invariants: pairwise commutation and the
// symmetry D_i(a_j) = D_j(a_i).
DiffSystem make_system(std::vector<DiffOp> ops, std::vector<RationalFunction> rhs,
                       std::vector<int> order_exponents,
                       std::vector<Polynomial> reductions);

// Substitutes the operators into a polynomial with zero constant term.
DiffOp operator_poly(const Polynomial& f, const std::vector<DiffOp>& ops);

// F = sum X_i Q_i (monomials assigned to their smallest-index variable);
// returns sum Q_i(D_1,...,D_m)(a_i).
RationalFunction ftilde(const Polynomial& f, const std::vector<RationalFunction>& rhs,
                        const std::vector<DiffOp>& ops);

// D_i^{p^{l_i}-1}(a_i) = ftilde(F_i)(a) for all i.
bool check_compatibility(const DiffSystem& sys);

// One linear solve over K^{p^r} for D(x) = a with C(x) = 0 for each constraint.
std::optional<RationalFunction> solve_single(const DiffOp& d, const RationalFunction& a,
                                             int level,
                                             const std::vector<DiffOp>& constraints = {});

// Canonical solution of the stacked system ops[i](x) = rhs[i], constraints
// homogeneous, as one linear solve over K^{p^r}.
std::optional<RationalFunction> solve_stacked(const std::vector<DiffOp>& ops,
                                              const std::vector<RationalFunction>& rhs,
                                              const std::vector<DiffOp>& constraints,
                                              int level);

struct SystemSolution {
  enum class Status { Solved, Incompatible } status;
  RationalFunction x;  // valid when Solved
};

SystemSolution solve_system(const DiffSystem& sys, int level);

// Smallest level r with every operator order < p^r.
int level_for(const std::vector<DiffOp>& ops, int extra = 0);

}  // namespace gsact
