#pragma once

// Exact arithmetic in K = F_p(x_1,...,x_n): sparse multivariate polynomials
// over F_p, canonical reduced rational functions, Frobenius powers, p-th
// roots and p-basis coordinate decomposition over the subfields K^{p^r}.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsact/base.hpp"

namespace gsact {

using Exp = std::vector<int>;  // one exponent per context variable

class Polynomial {
 public:
  Polynomial() = default;  // invalid placeholder, ctx() == nullptr
  explicit Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static Polynomial zero(const ContextPtr& ctx) { return Polynomial(ctx); }
  static Polynomial constant(const ContextPtr& ctx, long long c);
  static Polynomial variable(const ContextPtr& ctx, int var_index);
  static Polynomial monomial(const ContextPtr& ctx, Exp e, long long c);

  const ContextPtr& ctx() const { return ctx_; }
  const std::map<Exp, int>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int constant_value() const;  // 0 when zero
  bool is_one() const { return is_constant() && constant_value() == 1; }

  int degree_in(int var) const;
  bool uses_var(int var) const;
  int total_degree() const;

  // Largest term in lexicographic exponent order.
  const std::pair<const Exp, int>& lex_lead() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(int c) const;
  Polynomial pow(long long e) const;
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  int eval(const std::vector<int>& point) const;

  // x^e -> x^{e*p^r}; coefficients are fixed by Frobenius over F_p.
  Polynomial frobenius(int r) const;
  // Inverse of frobenius when every exponent is divisible by p^r.
  std::optional<Polynomial> pth_root(int r) const;

  // Exact division; the quotient must exist.
  Polynomial div_exact(const Polynomial& divisor) const;
  // Monic (lex-leading coefficient 1) gcd.
  static Polynomial gcd(const Polynomial& a, const Polynomial& b);

  void add_term(const Exp& e, long long c);  // accumulate, drops zeros

  std::string str() const;

 private:
  ContextPtr ctx_;
  std::map<Exp, int> terms_;  // exponent vector -> coefficient in (0, p)
};

class RationalFunction {
 public:
  RationalFunction() = default;  // invalid placeholder
  // normalize(num, den): canonical reduced form, den lex-monic, gcd = 1.
  RationalFunction(Polynomial num, Polynomial den);
  explicit RationalFunction(Polynomial num);

  static RationalFunction zero(const ContextPtr& ctx);
  static RationalFunction one(const ContextPtr& ctx);
  static RationalFunction constant(const ContextPtr& ctx, long long c);
  static RationalFunction variable(const ContextPtr& ctx, int var_index);

  const ContextPtr& ctx() const { return num_.ctx(); }
  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction operator-() const;
  RationalFunction inverse() const;
  RationalFunction pow(long long e) const;  // e may be negative
  bool operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  RationalFunction frobenius(int r) const;            // f^{p^r}
  std::optional<RationalFunction> pth_root(int r) const;  // g with g^{p^r} = f

  std::string str() const;

 private:
  Polynomial num_, den_;
  void normalize();
};

// Coordinates of f over K^{p^r} in the monomial basis x^m, 0 <= m_i < p^r.
struct PBasisCoordinates {
  int level = 1;
  std::map<Exp, RationalFunction> coords;  // only nonzero entries
};

PBasisCoordinates pbasis_decompose(const RationalFunction& f, int r);
RationalFunction pbasis_reconstruct(const ContextPtr& ctx, const PBasisCoordinates& c);
bool member_subfield(const RationalFunction& f, int r);

// Enumerates the p^{n*r} exponent vectors with entries < p^r, lex ascending.
std::vector<Exp> subfield_basis_exponents(const ContextPtr& ctx, int r);

// ---- text grammar ----------------------------------------------------------
// Integer coefficients reduced mod p, identifiers from the context variable
// list, operators + - * ^ and one top-level /. Division below the top level
// is rejected with a line/column diagnostic.
RationalFunction parse_rational(const ContextPtr& ctx, const std::string& text);
Polynomial parse_polynomial(const ContextPtr& ctx, const std::string& text);

}  // namespace gsact
