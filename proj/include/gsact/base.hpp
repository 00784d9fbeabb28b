#pragma once

// Shared basics: prime-field arithmetic, budgets, variable contexts, errors.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsact {

enum class Errc {
  ZeroDenominator,
  OrderBudgetExceeded,
  ZeroOperator,
  NotNilpotentWithinBudget,
  NotADerivation,
  OrderTooHighForLevel,
  HeightBudgetExceeded,
  UnsupportedDual,
  NotCommutative,
  UnsupportedDescriptor,
  DimensionTooSmall,
  DependentMultipliers,
  JoinInfeasible,
  ExtensionObstruction,
  OrderAssertionFailed,
  NotSupported,
  BadInput,
  Internal,
};

class GsactError : public std::runtime_error {
 public:
  GsactError(Errc kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  Errc kind() const { return kind_; }

 private:
  Errc kind_;
};

class ParseError : public GsactError {
 public:
  ParseError(int line, int col, const std::string& msg)
      : GsactError(Errc::BadInput, "parse error at line " + std::to_string(line) +
                                       ", column " + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

[[noreturn]] inline void fail(Errc kind, const std::string& msg) {
  throw GsactError(kind, msg);
}

inline const char* errc_name(Errc k) {
  switch (k) {
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::OrderBudgetExceeded: return "OrderBudgetExceeded";
    case Errc::ZeroOperator: return "ZeroOperator";
    case Errc::NotNilpotentWithinBudget: return "NotNilpotentWithinBudget";
    case Errc::NotADerivation: return "NotADerivation";
    case Errc::OrderTooHighForLevel: return "OrderTooHighForLevel";
    case Errc::HeightBudgetExceeded: return "HeightBudgetExceeded";
    case Errc::UnsupportedDual: return "UnsupportedDual";
    case Errc::NotCommutative: return "NotCommutative";
    case Errc::UnsupportedDescriptor: return "UnsupportedDescriptor";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::DependentMultipliers: return "DependentMultipliers";
    case Errc::JoinInfeasible: return "JoinInfeasible";
    case Errc::ExtensionObstruction: return "ExtensionObstruction";
    case Errc::OrderAssertionFailed: return "OrderAssertionFailed";
    case Errc::NotSupported: return "NotSupported";
    case Errc::BadInput: return "BadInput";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

// ---- F_p arithmetic -------------------------------------------------------

bool is_prime(int p);

inline int fp_norm(long long a, int p) {
  long long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}
inline int fp_add(int a, int b, int p) { return (a + b) % p; }
inline int fp_sub(int a, int b, int p) { return fp_norm(a - b, p); }
inline int fp_mul(int a, int b, int p) { return static_cast<int>((1LL * a * b) % p); }
int fp_pow(int a, long long e, int p);
int fp_inv(int a, int p);

// Binomial coefficient mod p via base-p digits (Lucas).
int binom_mod_p(long long n, long long k, int p);

// ---- budgets and field contexts -------------------------------------------

struct Budgets {
  int max_prime = 7;   // primes above this are rejected
  int height = 4;      // divided-power orders and nilpotency searches capped at p^height
  int max_vars = 4;    // soft cap, enforced by the CLI
};

class FieldContext;
using ContextPtr = std::shared_ptr<const FieldContext>;

// Fixes K = F_p(x_1,...,x_n): the characteristic, the ordered variable list and
// the operator budgets. Immutable; all values referencing it share a pointer.
class FieldContext {
 public:
  static ContextPtr make(int p, std::vector<std::string> vars, Budgets budgets = {});

  int p() const { return p_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& var(int i) const { return vars_[i]; }
  int var_index(const std::string& name) const;  // -1 when absent
  const Budgets& budgets() const { return budgets_; }
  int height_budget() const { return budgets_.height; }
  long long order_cap() const { return order_cap_; }  // p^height

  bool same(const FieldContext& other) const;

 private:
  FieldContext(int p, std::vector<std::string> vars, Budgets budgets);
  int p_;
  std::vector<std::string> vars_;
  Budgets budgets_;
  long long order_cap_;
};

inline void require_same_ctx(const ContextPtr& a, const ContextPtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !a->same(*b)) fail(Errc::BadInput, "mixed field contexts");
}

long long ipow(long long base, int exp);

}  // namespace gsact
