#pragma once

// Diff_k^+(K): finite K-linear combinations of divided-power monomials, in
// the normal form "multiplications left of divided powers". Houses exact
// application (with the quotient-rule recursion), composition via the
// straightening rules, commutators, p-power nilpotency orders and matrices
// over the subfields K^{p^r}.

#include <map>
#include <string>

#include "gsact/field.hpp"
#include "gsact/linalg.hpp"

namespace gsact {

// prod_v d/dv^[i_v]; no zero orders stored. The empty monomial (pure
// multiplication) is not a valid DiffOp term.
struct DPMonomial {
  std::map<int, int> orders;  // variable index -> order >= 1

  bool empty() const { return orders.empty(); }
  int order_in(int var) const {
    auto it = orders.find(var);
    return it == orders.end() ? 0 : it->second;
  }
  int max_order() const;
  int total_order() const;
  auto operator<=>(const DPMonomial&) const = default;
};

class DiffOp {
 public:
  DiffOp() = default;  // invalid placeholder
  explicit DiffOp(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static DiffOp zero(const ContextPtr& ctx) { return DiffOp(ctx); }
  // c * prod d/dv^[i]; rejects the empty monomial and orders beyond p^height.
  static DiffOp term(const ContextPtr& ctx, const DPMonomial& m,
                     const RationalFunction& c);
  static DiffOp divided_power(const ContextPtr& ctx, int var, int order);
  static DiffOp derivation(const ContextPtr& ctx, int var) {
    return divided_power(ctx, var, 1);
  }

  const ContextPtr& ctx() const { return ctx_; }
  const std::map<DPMonomial, RationalFunction>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_order() const;

  DiffOp operator+(const DiffOp& o) const;
  DiffOp operator-(const DiffOp& o) const;
  DiffOp operator-() const;
  DiffOp scaled(const RationalFunction& c) const;  // m_c . D
  bool operator==(const DiffOp& o) const { return terms_ == o.terms_; }
  bool operator!=(const DiffOp& o) const { return !(*this == o); }

  RationalFunction apply(const RationalFunction& f) const;

  // Normal form of this . o as maps on K.
  DiffOp compose(const DiffOp& o) const;
  DiffOp commutator(const DiffOp& o) const;
  DiffOp power(long long e) const;  // e >= 1

  bool is_derivation() const;
  // Smallest p^t with D^{p^t} = 0; D must be a nonzero derivation.
  long long derivation_order() const;

  // Matrix of the K^{p^r}-linear action on the x^m basis, m < p^r; requires
  // every monomial order < p^r.
  RFMatrix matrix_over_subfield(int r) const;

  std::string str() const;

  void add_term(const DPMonomial& m, const RationalFunction& c);

 private:
  ContextPtr ctx_;
  std::map<DPMonomial, RationalFunction> terms_;
};

// Operator text format: sum of "coeff * d[v]^[i] * d[w]^[j]" terms; bit-exact
// round trip with DiffOp::str().
DiffOp parse_operator(const ContextPtr& ctx, const std::string& text);

}  // namespace gsact
