#include "gsact/diffop.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace gsact {

int DPMonomial::max_order() const {
  int m = 0;
  for (auto& [v, o] : orders) m = std::max(m, o);
  return m;
}

int DPMonomial::total_order() const {
  int s = 0;
  for (auto& [v, o] : orders) s += o;
  return s;
}

DiffOp DiffOp::term(const ContextPtr& ctx, const DPMonomial& m,
                    const RationalFunction& c) {
  if (m.empty()) fail(Errc::BadInput, "pure multiplication term is not in Diff+");
  DiffOp d(ctx);
  d.add_term(m, c);
  return d;
}

DiffOp DiffOp::divided_power(const ContextPtr& ctx, int var, int order) {
  if (var < 0 || var >= ctx->nvars()) fail(Errc::BadInput, "variable index out of range");
  if (order < 1) fail(Errc::BadInput, "divided-power order must be positive");
  DPMonomial m;
  m.orders[var] = order;
  return term(ctx, m, RationalFunction::one(ctx));
}

void DiffOp::add_term(const DPMonomial& m, const RationalFunction& c) {
  if (c.is_zero()) return;
  if (m.empty()) fail(Errc::Internal, "empty monomial in Diff+ operator");
  if (m.max_order() > ctx_->order_cap())
    fail(Errc::OrderBudgetExceeded,
         "divided-power order " + std::to_string(m.max_order()) + " exceeds p^H = " +
             std::to_string(ctx_->order_cap()));
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int DiffOp::max_order() const {
  int m = 0;
  for (auto& [mono, c] : terms_) m = std::max(m, mono.max_order());
  return m;
}

DiffOp DiffOp::operator+(const DiffOp& o) const {
  require_same_ctx(ctx_, o.ctx_);
  DiffOp r = *this;
  for (auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

DiffOp DiffOp::operator-(const DiffOp& o) const {
  require_same_ctx(ctx_, o.ctx_);
  DiffOp r = *this;
  for (auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

DiffOp DiffOp::operator-() const {
  DiffOp r(ctx_);
  for (auto& [m, c] : terms_) r.add_term(m, -c);
  return r;
}

DiffOp DiffOp::scaled(const RationalFunction& c) const {
  DiffOp r(ctx_);
  if (c.is_zero()) return r;
  for (auto& [m, cc] : terms_) r.add_term(m, cc * c);
  return r;
}

namespace {

// d/dv^[order] applied to f, with the quotient recursion
//   d^[i](num) = sum_{a+b=i} d^[a](f) d^[b](den).
RationalFunction apply_dp_var(const ContextPtr& ctx, int var, int order,
                              const RationalFunction& f) {
  int p = ctx->p();
  if (f.is_polynomial()) {
    Polynomial out(ctx);
    for (auto& [e, c] : f.num().terms()) {
      int b = binom_mod_p(e[var], order, p);
      if (b == 0) continue;
      Exp ee(e);
      ee[var] -= order;
      out.add_term(ee, 1LL * c * b);
    }
    return RationalFunction(std::move(out));
  }
  std::vector<RationalFunction> df;  // df[a] = d^[a](f)
  df.reserve(order + 1);
  df.push_back(f);
  RationalFunction den(f.den());
  for (int i = 1; i <= order; ++i) {
    RationalFunction acc = apply_dp_var(ctx, var, i, RationalFunction(f.num()));
    for (int a = 0; a < i; ++a) {
      RationalFunction db = apply_dp_var(ctx, var, i - a, den);
      if (!db.is_zero() && !df[a].is_zero()) acc = acc - df[a] * db;
    }
    df.push_back(acc / den);
  }
  return df[order];
}

RationalFunction apply_monomial(const ContextPtr& ctx, const DPMonomial& m,
                                const RationalFunction& f) {
  RationalFunction r = f;
  for (auto& [v, o] : m.orders) {
    if (r.is_zero()) break;
    r = apply_dp_var(ctx, v, o, r);
  }
  return r;
}

// Iterate all componentwise splits a <= m.
template <typename F>
void for_each_split(const DPMonomial& m, F&& fn) {
  std::vector<std::pair<int, int>> vars(m.orders.begin(), m.orders.end());
  std::vector<int> a(vars.size(), 0);
  while (true) {
    DPMonomial lo, hi;
    for (size_t i = 0; i < vars.size(); ++i) {
      if (a[i] > 0) lo.orders[vars[i].first] = a[i];
      if (vars[i].second - a[i] > 0) hi.orders[vars[i].first] = vars[i].second - a[i];
    }
    fn(lo, hi);
    size_t i = 0;
    while (i < vars.size()) {
      if (++a[i] <= vars[i].second) break;
      a[i] = 0;
      ++i;
    }
    if (i == vars.size()) break;
  }
}

}  // namespace

RationalFunction DiffOp::apply(const RationalFunction& f) const {
  require_same_ctx(ctx_, f.ctx());
  RationalFunction acc = RationalFunction::zero(ctx_);
  for (auto& [m, c] : terms_) {
    RationalFunction v = apply_monomial(ctx_, m, f);
    if (!v.is_zero()) acc = acc + c * v;
  }
  return acc;
}

DiffOp DiffOp::compose(const DiffOp& o) const {
  require_same_ctx(ctx_, o.ctx_);
  int p = ctx_->p();
  DiffOp out(ctx_);
  for (auto& [m, cm] : terms_) {
    for (auto& [n, cn] : o.terms_) {
      // straightening: d^[m] . m_g = sum_{a+b=m} m_{d^[a](g)} . d^[b],
      // then per variable d^[b] . d^[n] = C(b+n, b) d^[b+n].
      for_each_split(m, [&](const DPMonomial& a, const DPMonomial& b) {
        RationalFunction g = apply_monomial(ctx_, a, cn);
        if (g.is_zero()) return;
        int binom = 1;
        DPMonomial target = n;
        for (auto& [v, bo] : b.orders) {
          int no = n.order_in(v);
          binom = fp_mul(binom, binom_mod_p(bo + no, bo, p), p);
          if (binom == 0) return;
          target.orders[v] = bo + no;
        }
        if (target.empty()) {
          // cannot happen for Diff+ factors; guard the invariant anyway
          if (!(cm * g).is_zero())
            fail(Errc::Internal, "composition produced a multiplication term");
          return;
        }
        if (target.max_order() > ctx_->order_cap())
          fail(Errc::OrderBudgetExceeded, "composition exceeds the order budget p^H");
        out.add_term(target, cm * g * RationalFunction::constant(ctx_, binom));
      });
    }
  }
  return out;
}

DiffOp DiffOp::commutator(const DiffOp& o) const {
  return compose(o) - o.compose(*this);
}

DiffOp DiffOp::power(long long e) const {
  if (e < 1) fail(Errc::BadInput, "operator power must be >= 1");
  DiffOp base = *this;
  DiffOp acc;
  bool have = false;
  while (e > 0) {
    if (e & 1) {
      acc = have ? acc.compose(base) : base;
      have = true;
    }
    e >>= 1;
    if (e > 0) base = base.compose(base);
  }
  return acc;
}

bool DiffOp::is_derivation() const {
  for (auto& [m, c] : terms_)
    if (m.orders.size() != 1 || m.orders.begin()->second != 1) return false;
  return true;
}

long long DiffOp::derivation_order() const {
  if (is_zero()) fail(Errc::ZeroOperator, "the zero operator has no order");
  if (!is_derivation()) fail(Errc::NotADerivation, "derivation_order needs a derivation");
  int p = ctx_->p();
  DiffOp e = *this;
  for (int t = 1; t <= ctx_->height_budget(); ++t) {
    e = e.power(p);
    if (e.is_zero()) return ipow(p, t);
  }
  fail(Errc::NotNilpotentWithinBudget,
       "no vanishing p-power within the height budget");
}

RFMatrix DiffOp::matrix_over_subfield(int r) const {
  if (r < 1 || r > ctx_->height_budget())
    fail(Errc::OrderTooHighForLevel, "level outside budget");
  long long q = ipow(ctx_->p(), r);
  if (max_order() >= q)
    fail(Errc::OrderTooHighForLevel,
         "operator order " + std::to_string(max_order()) + " is not below p^r = " +
             std::to_string(q));
  std::vector<Exp> basis = subfield_basis_exponents(ctx_, r);
  std::map<Exp, int> index;
  for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
  int n = static_cast<int>(basis.size());
  RFMatrix m(ctx_, n, n);
  for (int j = 0; j < n; ++j) {
    RationalFunction img =
        apply(RationalFunction(Polynomial::monomial(ctx_, basis[j], 1)));
    if (img.is_zero()) continue;
    PBasisCoordinates coords = pbasis_decompose(img, r);
    for (auto& [e, c] : coords.coords) m.at(index.at(e), j) = c;
  }
  return m;
}

std::string DiffOp::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // higher monomials first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    const RationalFunction& c = it->second;
    if (c.is_polynomial() && c.num().is_constant()) {
      os << c.num().constant_value();
    } else if (c.is_polynomial()) {
      os << "(" << c.num().str() << ")";
    } else {
      os << "(" << c.num().str() << ")/(" << c.den().str() << ")";
    }
    for (auto& [v, o] : it->first.orders)
      os << " * d[" << ctx_->var(v) << "]^[" << o << "]";
  }
  return os.str();
}

// ---- operator text parsing --------------------------------------------------

namespace {

struct OpLexer {
  const std::string& s;
  size_t pos = 0;
  int line = 1, col = 1;
  explicit OpLexer(const std::string& text) : s(text) {}
  void advance() {
    if (pos < s.size()) {
      if (s[pos] == '\n') { ++line; col = 1; } else { ++col; }
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
    if (peek() == c) { advance(); return true; }
    return false;
  }
  [[noreturn]] void error(const std::string& msg) { throw ParseError(line, col, msg); }

  // scans a balanced-paren chunk up to the next top-level '+', '-' or '*'
  std::string chunk() {
    skip_ws();
    std::string out;
    int depth = 0;
    while (pos < s.size()) {
      char c = s[pos];
      if (depth == 0 && (c == '+' || c == '*') ) break;
      if (depth == 0 && c == '-' && !out.empty()) break;
      if (c == '(') ++depth;
      if (c == ')') --depth;
      out.push_back(c);
      advance();
    }
    return out;
  }
};

}  // namespace

DiffOp parse_operator(const ContextPtr& ctx, const std::string& text) {
  OpLexer lx(text);
  DiffOp out(ctx);
  if (lx.peek() == '\0') lx.error("empty operator");
  {
    // allow a literal zero operator
    size_t save = lx.pos;
    if (lx.peek() == '0') {
      lx.advance();
      if (lx.peek() == '\0') return out;
      lx.pos = save;
      lx.line = 1;
      lx.col = 1;
    }
  }
  bool more = true;
  bool negate = false;
  if (lx.peek() == '-') { lx.advance(); negate = true; }
  while (more) {
    RationalFunction coeff = RationalFunction::one(ctx);
    DPMonomial mono;
    bool first_factor = true;
    while (true) {
      lx.skip_ws();
      if (lx.pos < lx.s.size() && lx.s[lx.pos] == 'd' && lx.pos + 1 < lx.s.size() &&
          lx.s[lx.pos + 1] == '[') {
        lx.advance();  // d
        lx.advance();  // [
        std::string name;
        while (lx.pos < lx.s.size() && lx.s[lx.pos] != ']') {
          name.push_back(lx.s[lx.pos]);
          lx.advance();
        }
        if (!lx.eat(']')) lx.error("expected ']'");
        int var = ctx->var_index(name);
        if (var < 0) lx.error("unknown variable '" + name + "'");
        int order = 1;
        if (lx.peek() == '^') {
          lx.advance();
          if (!lx.eat('[')) lx.error("expected '[' after '^'");
          std::string digits;
          while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos]))) {
            digits.push_back(lx.s[lx.pos]);
            lx.advance();
          }
          if (digits.empty()) lx.error("expected an order");
          if (!lx.eat(']')) lx.error("expected ']'");
          order = std::stoi(digits);
          if (order < 1) lx.error("order must be positive");
        }
        mono.orders[var] += order;
      } else {
        std::string chunk = lx.chunk();
        if (chunk.empty()) lx.error("expected a factor");
        RationalFunction f;
        try {
          f = parse_rational(ctx, chunk);
        } catch (const ParseError& e) {
          throw ParseError(lx.line, lx.col, std::string("bad coefficient: ") + e.what());
        }
        coeff = coeff * f;
      }
      first_factor = false;
      if (lx.peek() == '*') {
        lx.advance();
        continue;
      }
      break;
    }
    (void)first_factor;
    if (mono.empty()) lx.error("term without a divided-power factor");
    if (negate) coeff = -coeff;
    out.add_term(mono, coeff);
    char c = lx.peek();
    if (c == '+' || c == '-') {
      negate = (c == '-');
      lx.advance();
    } else if (c == '\0') {
      more = false;
    } else {
      lx.error("unexpected input");
    }
  }
  return out;
}

}  // namespace gsact
