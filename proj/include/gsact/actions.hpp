#pragma once

// Module-algebra actions of the supported group schemes on K = F_p(x_1..x_n):
// height-one constructions from canonical block derivations, the extension
// recursion lifting a ker(F^r)-action to the full group, products, joins,
// the worked examples, and the verification / faithfulness / generic-freeness
// decision procedures.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsact/diffop.hpp"
#include "gsact/groupscheme.hpp"
#include "gsact/solver.hpp"

namespace gsact {

struct CheckRecord {
  std::string kind;     // "relation" | "commutation" | "compatibility" | "unit"
  std::string subject;  // generator or pair involved
  bool passed = false;
  std::string witness;  // failing input or mismatch, empty when passed
};

struct VerificationReport {
  std::vector<CheckRecord> checks;
  int spanning_exponent = 0;  // monomial pairs below p^N were checked
  bool faithful = false;
  bool generically_free = false;
  std::string freeness_criterion;

  bool all_passed() const;
  int failures() const;
};

struct ModuleAlgebraAction {
  ContextPtr ctx;
  GroupDescriptor group;
  HopfPresentation dual;  // presentation of k[G^v]; generators carry operators
  std::map<std::string, DiffOp> assignment;
  std::vector<RationalFunction> pbasis;  // triangular p-basis when constructed

  enum class Verified { Unchecked, Passed, Failed } verified = Verified::Unchecked;
  std::optional<VerificationReport> report;

  const DiffOp& op(const std::string& gen_name) const;
};

// v on a polynomial in the dual generators (zero constant term).
DiffOp eval_genpoly(const ModuleAlgebraAction& action, const GenPoly& poly);

// D = sum_i (x_1...x_{i-1})^{p-1} d_i on the given block of variables; the
// order p^s is recomputed and asserted.
DiffOp canonical_block_derivation(const ContextPtr& ctx, const std::vector<int>& block_vars);

ModuleAlgebraAction height_one_action(const ContextPtr& ctx, const YoungDiagram& diagram,
                                      int mu_count);

// Main extension: lifts a verified generically free action of ker(F_G^r) to G,
// level by level, seeding each new operator on kK^p through the Verschiebung
// and solving the commutation/relation systems on a triangular p-basis.
ModuleAlgebraAction extend_action(const ModuleAlgebraAction& base,
                                  const GroupDescriptor& target);

// Faithful G^ell-action from multiplier-scaled copies of the height-one part,
// each extended to the full group.
ModuleAlgebraAction power_faithful_action(
    const GroupDescriptor& group, int ell, const ContextPtr& ctx,
    const std::vector<std::vector<RationalFunction>>& multipliers);

// Greedy join of height-one actions on a shared field, following the
// p-power selection of the product construction.
ModuleAlgebraAction join_greedy(const std::vector<ModuleAlgebraAction>& actions);

ModuleAlgebraAction example_ptorsion(int p, int n, const ContextPtr& ctx);
ModuleAlgebraAction example_noncommutative(int p, int n, const ContextPtr& ctx);
ModuleAlgebraAction example_counterexample_surface(int p, const ContextPtr& ctx);

VerificationReport verify_action(ModuleAlgebraAction& action, unsigned rng_seed = 2024);

// Socle-level operators: unipotent part (primitives with e^p = 0) and
// multiplicative part (e^p = e).
void socle_operators(const ModuleAlgebraAction& action, std::vector<DiffOp>& unipotent,
                     std::vector<DiffOp>& multiplicative);

bool is_faithful(const ModuleAlgebraAction& action);
bool is_generically_free(const ModuleAlgebraAction& action);

// K-linear independence of derivations, decided by the rank of the
// coefficient matrix in the d_{x_i} basis.
bool derivations_k_independent(const std::vector<DiffOp>& ops);
// No nonzero F_p-combination is the zero operator.
bool operators_fp_independent(const std::vector<DiffOp>& ops);

}  // namespace gsact
