#include "gsact/witt.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <map>

namespace gsact {

namespace {

using Int = boost::multiprecision::cpp_int;

// Sparse integer polynomial in 2n variables X0..X{n-1}, Y0..Y{n-1}.
struct IntPoly {
  int nvars = 0;
  std::map<Exp, Int> terms;

  static IntPoly zero(int nvars) { return IntPoly{nvars, {}}; }
  static IntPoly monomial(int nvars, const Exp& e, Int c) {
    IntPoly p{nvars, {}};
    p.add(e, std::move(c));
    return p;
  }
  static IntPoly variable(int nvars, int idx) {
    Exp e(nvars, 0);
    e[idx] = 1;
    return monomial(nvars, e, 1);
  }

  void add(const Exp& e, Int c) {
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(e, std::move(c));
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  IntPoly operator+(const IntPoly& o) const {
    IntPoly r = *this;
    for (auto& [e, c] : o.terms) r.add(e, c);
    return r;
  }
  IntPoly operator-(const IntPoly& o) const {
    IntPoly r = *this;
    for (auto& [e, c] : o.terms) r.add(e, -c);
    return r;
  }
  IntPoly operator*(const IntPoly& o) const {
    IntPoly r = zero(nvars);
    for (auto& [ea, ca] : terms)
      for (auto& [eb, cb] : o.terms) {
        Exp e(nvars);
        for (int i = 0; i < nvars; ++i) e[i] = ea[i] + eb[i];
        r.add(e, ca * cb);
      }
    return r;
  }
  IntPoly pow(long long e) const {
    IntPoly r = monomial(nvars, Exp(nvars, 0), 1);
    IntPoly b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  IntPoly div_exact_int(const Int& d) const {
    IntPoly r = zero(nvars);
    for (auto& [e, c] : terms) {
      if (c % d != 0) fail(Errc::Internal, "Witt lift: inexact division by p^i");
      r.terms.emplace(e, c / d);
    }
    return r;
  }
};

Polynomial reduce_mod_p(const IntPoly& a, const ContextPtr& ctx) {
  Polynomial out(ctx);
  for (auto& [e, c] : a.terms) {
    Int r = c % ctx->p();
    if (r < 0) r += ctx->p();
    out.add_term(e, static_cast<long long>(r));
  }
  return out;
}

}  // namespace

WittSumData witt_sum_polynomials(int p, int n, int height_budget) {
  if (!is_prime(p)) fail(Errc::BadInput, "p must be prime");
  if (n < 1) fail(Errc::BadInput, "length must be positive");
  if (n > height_budget)
    fail(Errc::HeightBudgetExceeded, "Witt length exceeds the height budget");

  int nv = 2 * n;
  std::vector<std::string> vars;
  for (int i = 0; i < n; ++i) vars.push_back("X" + std::to_string(i));
  for (int i = 0; i < n; ++i) vars.push_back("Y" + std::to_string(i));
  Budgets b;
  b.max_prime = std::max(p, b.max_prime);
  b.height = height_budget;
  ContextPtr ctx = FieldContext::make(p, vars, b);

  // ghost components of a list of coordinate polynomials
  auto ghost = [&](const std::vector<IntPoly>& z, int i) {
    IntPoly acc = IntPoly::zero(nv);
    Int pj = 1;
    for (int j = 0; j <= i; ++j) {
      acc = acc + IntPoly::monomial(nv, Exp(nv, 0), pj) * z[j].pow(ipow(p, i - j));
      pj *= p;
    }
    return acc;
  };

  std::vector<IntPoly> xs, ys;
  for (int i = 0; i < n; ++i) xs.push_back(IntPoly::variable(nv, i));
  for (int i = 0; i < n; ++i) ys.push_back(IntPoly::variable(nv, n + i));

  std::vector<IntPoly> s;
  std::vector<Polynomial> reduced;
  for (int i = 0; i < n; ++i) {
    // p^i S_i = w_i(X) + w_i(Y) - sum_{j<i} p^j S_j^{p^{i-j}}
    IntPoly rhs = ghost(xs, i) + ghost(ys, i);
    Int pj = 1;
    for (int j = 0; j < i; ++j) {
      rhs = rhs - IntPoly::monomial(nv, Exp(nv, 0), pj) * s[j].pow(ipow(p, i - j));
      pj *= p;
    }
    Int pi = 1;
    for (int j = 0; j < i; ++j) pi *= p;
    s.push_back(rhs.div_exact_int(pi));
    reduced.push_back(reduce_mod_p(s.back(), ctx));
  }
  return WittSumData{p, n, ctx, std::move(reduced)};
}

std::vector<int> witt_add(const WittSumData& w, const std::vector<int>& a,
                          const std::vector<int>& b) {
  if (static_cast<int>(a.size()) != w.length || static_cast<int>(b.size()) != w.length)
    fail(Errc::BadInput, "witt_add: length mismatch");
  std::vector<int> point;
  for (int x : a) point.push_back(fp_norm(x, w.p));
  for (int y : b) point.push_back(fp_norm(y, w.p));
  std::vector<int> out(w.length);
  for (int i = 0; i < w.length; ++i) out[i] = w.polys[i].eval(point);
  return out;
}

}  // namespace gsact
