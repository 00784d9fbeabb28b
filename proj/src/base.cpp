#include "gsact/base.hpp"

#include <algorithm>

namespace gsact {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; 1LL * d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int fp_pow(int a, long long e, int p) {
  a = fp_norm(a, p);
  int r = 1 % p;
  while (e > 0) {
    if (e & 1) r = fp_mul(r, a, p);
    a = fp_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

int fp_inv(int a, int p) {
  a = fp_norm(a, p);
  if (a == 0) fail(Errc::ZeroDenominator, "inverse of 0 mod p");
  return fp_pow(a, p - 2, p);
}

int binom_mod_p(long long n, long long k, int p) {
  if (k < 0 || n < 0 || k > n) return 0;
  long long r = 1;
  while (n > 0 || k > 0) {
    int nd = static_cast<int>(n % p);
    int kd = static_cast<int>(k % p);
    if (kd > nd) return 0;
    // digit binomial, nd < p <= 7 so plain products stay tiny
    long long c = 1;
    for (int i = 0; i < kd; ++i) c = c * (nd - i) / (i + 1);
    r = (r * (c % p)) % p;
    n /= p;
    k /= p;
  }
  return static_cast<int>(r);
}

long long ipow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

FieldContext::FieldContext(int p, std::vector<std::string> vars, Budgets budgets)
    : p_(p), vars_(std::move(vars)), budgets_(budgets) {
  order_cap_ = ipow(p_, budgets_.height);
}

ContextPtr FieldContext::make(int p, std::vector<std::string> vars, Budgets budgets) {
  if (!is_prime(p)) fail(Errc::BadInput, "characteristic must be prime, got " + std::to_string(p));
  if (p > budgets.max_prime)
    fail(Errc::BadInput, "prime " + std::to_string(p) + " exceeds budget " +
                             std::to_string(budgets.max_prime));
  if (vars.empty()) fail(Errc::BadInput, "at least one variable required");
  for (size_t i = 0; i < vars.size(); ++i)
    for (size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) fail(Errc::BadInput, "duplicate variable " + vars[i]);
  return ContextPtr(new FieldContext(p, std::move(vars), budgets));
}

int FieldContext::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

bool FieldContext::same(const FieldContext& other) const {
  return p_ == other.p_ && vars_ == other.vars_;
}

}  // namespace gsact
