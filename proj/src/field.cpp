#include "gsact/field.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace gsact {

// ---- Polynomial -------------------------------------------------------------

Polynomial Polynomial::constant(const ContextPtr& ctx, long long c) {
  Polynomial r(ctx);
  r.add_term(Exp(ctx->nvars(), 0), c);
  return r;
}

Polynomial Polynomial::variable(const ContextPtr& ctx, int var_index) {
  if (var_index < 0 || var_index >= ctx->nvars())
    fail(Errc::BadInput, "variable index out of range");
  Exp e(ctx->nvars(), 0);
  e[var_index] = 1;
  return monomial(ctx, e, 1);
}

Polynomial Polynomial::monomial(const ContextPtr& ctx, Exp e, long long c) {
  Polynomial r(ctx);
  r.add_term(e, c);
  return r;
}

void Polynomial::add_term(const Exp& e, long long c) {
  int p = ctx_->p();
  int cc = fp_norm(c, p);
  if (cc == 0) return;
  auto [it, inserted] = terms_.emplace(e, cc);
  if (!inserted) {
    it->second = fp_add(it->second, cc, p);
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Exp& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

int Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  return terms_.begin()->second;
}

int Polynomial::degree_in(int var) const {
  int d = 0;
  for (auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

bool Polynomial::uses_var(int var) const {
  for (auto& [e, c] : terms_)
    if (e[var] > 0) return true;
  return false;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

const std::pair<const Exp, int>& Polynomial::lex_lead() const {
  assert(!terms_.empty());
  return *terms_.rbegin();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_ctx(ctx_, o.ctx_);
  Polynomial r = *this;
  for (auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  require_same_ctx(ctx_, o.ctx_);
  Polynomial r = *this;
  for (auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ctx_);
  for (auto& [e, c] : terms_) r.add_term(e, -c);
  return r;
}

Polynomial Polynomial::scaled(int c) const {
  Polynomial r(ctx_);
  for (auto& [e, cc] : terms_) r.add_term(e, 1LL * cc * c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_ctx(ctx_, o.ctx_);
  Polynomial r(ctx_);
  int n = ctx_->nvars();
  for (auto& [ea, ca] : terms_)
    for (auto& [eb, cb] : o.terms_) {
      Exp e(n);
      for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, 1LL * ca * cb);
    }
  return r;
}

Polynomial Polynomial::pow(long long e) const {
  assert(e >= 0);
  Polynomial r = constant(ctx_, 1);
  Polynomial b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

int Polynomial::eval(const std::vector<int>& point) const {
  int p = ctx_->p();
  int acc = 0;
  for (auto& [e, c] : terms_) {
    int t = c;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t = fp_mul(t, fp_pow(point[i], e[i], p), p);
    acc = fp_add(acc, t, p);
  }
  return acc;
}

Polynomial Polynomial::frobenius(int r) const {
  long long q = ipow(ctx_->p(), r);
  Polynomial out(ctx_);
  for (auto& [e, c] : terms_) {
    Exp ee(e);
    for (int& x : ee) x = static_cast<int>(x * q);
    out.add_term(ee, c);
  }
  return out;
}

std::optional<Polynomial> Polynomial::pth_root(int r) const {
  long long q = ipow(ctx_->p(), r);
  Polynomial out(ctx_);
  for (auto& [e, c] : terms_) {
    Exp ee(e);
    for (int& x : ee) {
      if (x % q != 0) return std::nullopt;
      x = static_cast<int>(x / q);
    }
    out.add_term(ee, c);  // c^{p^r} = c in F_p
  }
  return out;
}

Polynomial Polynomial::div_exact(const Polynomial& divisor) const {
  require_same_ctx(ctx_, divisor.ctx_);
  if (divisor.is_zero()) fail(Errc::ZeroDenominator, "division by zero polynomial");
  int p = ctx_->p();
  int n = ctx_->nvars();
  Polynomial rem = *this;
  Polynomial quo(ctx_);
  const auto& dl = divisor.lex_lead();
  int dlc_inv = fp_inv(dl.second, p);
  while (!rem.is_zero()) {
    const auto& rl = rem.lex_lead();
    Exp e(n);
    for (int i = 0; i < n; ++i) {
      e[i] = rl.first[i] - dl.first[i];
      if (e[i] < 0) fail(Errc::Internal, "div_exact: not divisible");
    }
    int c = fp_mul(rl.second, dlc_inv, p);
    Polynomial t = monomial(ctx_, e, c);
    quo = quo + t;
    rem = rem - t * divisor;
  }
  return quo;
}

namespace {

// Coefficients of `a` viewed as a univariate polynomial in variable v; the
// returned polynomials do not use v.
std::map<int, Polynomial> coeffs_in(const Polynomial& a, int v) {
  std::map<int, Polynomial> out;
  for (auto& [e, c] : a.terms()) {
    Exp ee(e);
    int d = ee[v];
    ee[v] = 0;
    auto [it, inserted] = out.emplace(d, Polynomial(a.ctx()));
    it->second.add_term(ee, c);
  }
  return out;
}

Polynomial content_in(const Polynomial& a, int v) {
  Polynomial g(a.ctx());
  for (auto& [d, coeff] : coeffs_in(a, v)) {
    g = Polynomial::gcd(g, coeff);
    if (g.is_one()) break;
  }
  return g;
}

Polynomial pseudo_rem(const Polynomial& a, const Polynomial& b, int v) {
  int db = b.degree_in(v);
  auto bc = coeffs_in(b, v);
  Polynomial lb = bc.rbegin()->second;  // leading coefficient of b in v
  Polynomial r = a;
  while (!r.is_zero() && r.degree_in(v) >= db) {
    int dr = r.degree_in(v);
    auto rc = coeffs_in(r, v);
    Polynomial lr = rc.rbegin()->second;
    Exp shift(a.ctx()->nvars(), 0);
    shift[v] = dr - db;
    Polynomial t = lr * Polynomial::monomial(a.ctx(), shift, 1);
    r = r * lb - t * b;  // any associate works, primitive part follows
  }
  return r;
}

Polynomial monic(const Polynomial& a) {
  if (a.is_zero()) return a;
  return a.scaled(fp_inv(a.lex_lead().second, a.ctx()->p()));
}

}  // namespace

namespace {

// componentwise minimum exponent over all terms
Exp monomial_content(const Polynomial& a) {
  Exp m;
  bool first = true;
  for (auto& [e, c] : a.terms()) {
    if (first) {
      m = e;
      first = false;
      continue;
    }
    for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
  }
  return m;
}

Polynomial shift_down(const Polynomial& a, const Exp& m) {
  Polynomial out(a.ctx());
  for (auto& [e, c] : a.terms()) {
    Exp f(e);
    for (size_t i = 0; i < f.size(); ++i) f[i] -= m[i];
    out.add_term(f, c);
  }
  return out;
}

}  // namespace

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  require_same_ctx(a.ctx(), b.ctx());
  if (a.is_constant() || b.is_constant()) return constant(a.ctx(), 1);
  if (a.terms() == b.terms()) return monic(a);

  // pull out the common monomial factor first
  Exp ma = monomial_content(a);
  Exp mb = monomial_content(b);
  Exp shared(ma.size());
  bool any = false, a_has = false, b_has = false;
  for (size_t i = 0; i < ma.size(); ++i) {
    shared[i] = std::min(ma[i], mb[i]);
    if (shared[i] > 0) any = true;
    if (ma[i] > 0) a_has = true;
    if (mb[i] > 0) b_has = true;
  }
  if (a_has || b_has) {
    Polynomial core = gcd(a_has ? shift_down(a, ma) : a, b_has ? shift_down(b, mb) : b);
    if (any) core = core * monomial(a.ctx(), shared, 1);
    return monic(core);
  }
  if (a.terms().size() == 1 || b.terms().size() == 1)
    return constant(a.ctx(), 1);  // a monomial with no shared factor

  int top = -1;
  for (int v = a.ctx()->nvars() - 1; v >= 0; --v)
    if (a.uses_var(v) || b.uses_var(v)) {
      top = v;
      break;
    }
  if (top < 0) return constant(a.ctx(), 1);  // both nonzero constants

  if (!a.uses_var(top)) return gcd(content_in(b, top), a);
  if (!b.uses_var(top)) return gcd(content_in(a, top), b);

  Polynomial ca = content_in(a, top);
  Polynomial cb = content_in(b, top);
  Polynomial c = gcd(ca, cb);
  Polynomial pa = a.div_exact(ca);
  Polynomial pb = b.div_exact(cb);
  while (!pb.is_zero()) {
    Polynomial r = pseudo_rem(pa, pb, top);
    pa = pb;
    if (r.is_zero()) {
      pb = Polynomial(a.ctx());
    } else {
      pb = r.div_exact(content_in(r, top));
    }
  }
  return monic(c * pa);
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // descending lex, leading term first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    const Exp& e = it->first;
    int c = it->second;
    bool any_var = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
    bool printed = false;
    if (!any_var || c != 1) {
      os << c;
      printed = true;
    }
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << ctx_->var(static_cast<int>(i));
      if (e[i] > 1) os << "^" << e[i];
      printed = true;
    }
  }
  return os.str();
}

// ---- RationalFunction -------------------------------------------------------

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  require_same_ctx(num_.ctx(), den_.ctx());
  if (den_.is_zero()) fail(Errc::ZeroDenominator, "zero denominator");
  normalize();
}

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(num_.ctx(), 1)) {}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(num_.ctx(), 1);
    return;
  }
  Polynomial g = Polynomial::gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_.div_exact(g);
    den_ = den_.div_exact(g);
  }
  int lc = den_.lex_lead().second;
  if (lc != 1) {
    int inv = fp_inv(lc, num_.ctx()->p());
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RationalFunction RationalFunction::zero(const ContextPtr& ctx) {
  return RationalFunction(Polynomial::zero(ctx));
}
RationalFunction RationalFunction::one(const ContextPtr& ctx) {
  return RationalFunction(Polynomial::constant(ctx, 1));
}
RationalFunction RationalFunction::constant(const ContextPtr& ctx, long long c) {
  return RationalFunction(Polynomial::constant(ctx, c));
}
RationalFunction RationalFunction::variable(const ContextPtr& ctx, int var_index) {
  return RationalFunction(Polynomial::variable(ctx, var_index));
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return -o;
  if (den_ == o.den_) return RationalFunction(num_ - o.num_, den_);
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}
RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) fail(Errc::ZeroDenominator, "division by zero");
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}
RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}
RationalFunction RationalFunction::inverse() const {
  if (is_zero()) fail(Errc::ZeroDenominator, "inverse of zero");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  RationalFunction r = one(ctx());
  RationalFunction b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

RationalFunction RationalFunction::frobenius(int r) const {
  // gcd(num,den)=1 implies gcd of the powers is 1 and den stays lex-monic, so
  // the termwise image is already canonical.
  RationalFunction out;
  out.num_ = num_.frobenius(r);
  out.den_ = den_.frobenius(r);
  return out;
}

std::optional<RationalFunction> RationalFunction::pth_root(int r) const {
  auto n = num_.pth_root(r);
  if (!n) return std::nullopt;
  auto d = den_.pth_root(r);
  if (!d) return std::nullopt;
  return RationalFunction(std::move(*n), std::move(*d));
}

std::string RationalFunction::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

// ---- p-basis decomposition --------------------------------------------------

std::vector<Exp> subfield_basis_exponents(const ContextPtr& ctx, int r) {
  long long q = ipow(ctx->p(), r);
  int n = ctx->nvars();
  std::vector<Exp> out;
  Exp cur(n, 0);
  while (true) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0) {
      if (++cur[i] < q) break;
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

PBasisCoordinates pbasis_decompose(const RationalFunction& f, int r) {
  const ContextPtr& ctx = f.ctx();
  if (r < 1 || r > ctx->height_budget())
    fail(Errc::OrderTooHighForLevel, "level outside budget");
  long long q = ipow(ctx->p(), r);
  int n = ctx->nvars();
  // f = num/den = num*den^{q-1} / den^q with den^q in K^{p^r}; bucket the
  // numerator terms by exponents mod q.
  Polynomial top = f.num() * f.den().pow(q - 1);
  Polynomial den_q = f.den().pow(q);
  std::map<Exp, Polynomial> buckets;
  for (auto& [e, c] : top.terms()) {
    Exp m(n), rest(n);
    for (int i = 0; i < n; ++i) {
      m[i] = static_cast<int>(e[i] % q);
      rest[i] = static_cast<int>(e[i] - m[i]);
    }
    auto [it, inserted] = buckets.emplace(m, Polynomial(ctx));
    it->second.add_term(rest, c);
  }
  PBasisCoordinates out;
  out.level = r;
  for (auto& [m, poly] : buckets) {
    RationalFunction coord(poly, den_q);
    if (!coord.is_zero()) out.coords.emplace(m, std::move(coord));
  }
  return out;
}

RationalFunction pbasis_reconstruct(const ContextPtr& ctx, const PBasisCoordinates& c) {
  RationalFunction acc = RationalFunction::zero(ctx);
  for (auto& [m, coeff] : c.coords)
    acc = acc + coeff * RationalFunction(Polynomial::monomial(ctx, m, 1));
  return acc;
}

bool member_subfield(const RationalFunction& f, int r) {
  return f.pth_root(r).has_value();
}

// ---- parser -----------------------------------------------------------------

namespace {

struct Lexer {
  const std::string& s;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& text) : s(text) {}

  void advance() {
    if (pos < s.size()) {
      if (s[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) advance();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }
  [[noreturn]] void error(const std::string& msg) { throw ParseError(line, col, msg); }
};

class RationalParser {
 public:
  RationalParser(const ContextPtr& ctx, Lexer& lx) : ctx_(ctx), lx_(lx) {}

  // polyExpr [ '/' polyExpr ]; '/' legal only here.
  RationalFunction parse_top() {
    Polynomial num = parse_poly();
    if (lx_.peek() == '/') {
      lx_.advance();
      Polynomial den = parse_poly();
      if (lx_.peek() == '/') lx_.error("only a single top-level '/' is allowed");
      end();
      if (den.is_zero()) fail(Errc::ZeroDenominator, "denominator is zero");
      return RationalFunction(std::move(num), std::move(den));
    }
    end();
    return RationalFunction(std::move(num));
  }

  Polynomial parse_poly_top() {
    Polynomial r = parse_poly();
    if (lx_.peek() == '/') lx_.error("division is not allowed in a polynomial");
    end();
    return r;
  }

 private:
  void end() {
    if (lx_.peek() != '\0') lx_.error("unexpected trailing input");
  }

  Polynomial parse_poly() {
    Polynomial acc(ctx_);
    bool neg = false;
    if (lx_.peek() == '-') {
      lx_.advance();
      neg = true;
    } else if (lx_.peek() == '+') {
      lx_.advance();
    }
    acc = acc + term(neg);
    while (true) {
      char c = lx_.peek();
      if (c == '+' || c == '-') {
        lx_.advance();
        acc = acc + term(c == '-');
      } else {
        break;
      }
    }
    return acc;
  }

  // A '/' simply terminates a polynomial; the callers decide whether it is
  // the single legal top-level division or an error.
  Polynomial term(bool neg) {
    Polynomial acc = factor();
    while (lx_.peek() == '*') {
      lx_.advance();
      acc = acc * factor();
    }
    return neg ? -acc : acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (lx_.peek() == '^') {
      lx_.advance();
      long long e = integer();
      if (e < 0) lx_.error("negative exponent");
      return base.pow(e);
    }
    return base;
  }

  Polynomial atom() {
    char c = lx_.peek();
    if (c == '(') {
      lx_.advance();
      Polynomial inner = parse_poly();
      if (lx_.peek() == '/') lx_.error("division below the top level is not allowed");
      if (!lx_.eat(')')) lx_.error("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Polynomial::constant(ctx_, integer());
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = identifier();
      int idx = ctx_->var_index(name);
      if (idx < 0) lx_.error("unknown variable '" + name + "'");
      return Polynomial::variable(ctx_, idx);
    }
    lx_.error("expected a number, variable or '('");
  }

  long long integer() {
    lx_.skip_ws();
    if (lx_.pos >= lx_.s.size() || !std::isdigit(static_cast<unsigned char>(lx_.s[lx_.pos])))
      lx_.error("expected an integer");
    long long v = 0;
    while (lx_.pos < lx_.s.size() && std::isdigit(static_cast<unsigned char>(lx_.s[lx_.pos]))) {
      v = v * 10 + (lx_.s[lx_.pos] - '0');
      if (v > (1LL << 40)) lx_.error("integer literal too large");
      lx_.advance();
    }
    return v;
  }

  std::string identifier() {
    lx_.skip_ws();
    std::string name;
    while (lx_.pos < lx_.s.size()) {
      char c = lx_.s[lx_.pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        name.push_back(c);
        lx_.advance();
      } else {
        break;
      }
    }
    return name;
  }

  const ContextPtr& ctx_;
  Lexer& lx_;
};

}  // namespace

RationalFunction parse_rational(const ContextPtr& ctx, const std::string& text) {
  Lexer lx(text);
  return RationalParser(ctx, lx).parse_top();
}

Polynomial parse_polynomial(const ContextPtr& ctx, const std::string& text) {
  Lexer lx(text);
  return RationalParser(ctx, lx).parse_poly_top();
}

}  // namespace gsact
