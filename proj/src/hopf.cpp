#include "gsact/hopf.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace gsact {

// ---- GenPoly / Tensor2 ------------------------------------------------------

int GenMonomial::degree() const {
  int d = 0;
  for (auto& [g, k] : e) d += k;
  return d;
}

GenPoly GenPoly::unit(int c) {
  GenPoly r;
  if (c != 0) r.t.emplace(GenMonomial{}, c);
  return r;
}

GenPoly GenPoly::gen(int index, int exp, int c) {
  GenPoly r;
  GenMonomial m;
  if (exp > 0) m.e[index] = exp;
  if (c != 0) r.t.emplace(m, c);
  return r;
}

void GenPoly::add(const GenMonomial& m, int c, int p) {
  c = fp_norm(c, p);
  if (c == 0) return;
  auto [it, inserted] = t.emplace(m, c);
  if (!inserted) {
    it->second = fp_add(it->second, c, p);
    if (it->second == 0) t.erase(it);
  }
}

GenPoly GenPoly::plus(const GenPoly& o, int p) const {
  GenPoly r = *this;
  for (auto& [m, c] : o.t) r.add(m, c, p);
  return r;
}

GenPoly GenPoly::minus(const GenPoly& o, int p) const {
  GenPoly r = *this;
  for (auto& [m, c] : o.t) r.add(m, -c, p);
  return r;
}

GenPoly GenPoly::times(const GenPoly& o, int p) const {
  GenPoly r;
  for (auto& [ma, ca] : t)
    for (auto& [mb, cb] : o.t) {
      GenMonomial m = ma;
      for (auto& [g, k] : mb.e) m.e[g] += k;
      r.add(m, fp_mul(ca, cb, p), p);
    }
  return r;
}

GenPoly GenPoly::pow(long long k, int p) const {
  GenPoly r = unit(1);
  GenPoly b = *this;
  while (k > 0) {
    if (k & 1) r = r.times(b, p);
    b = b.times(b, p);
    k >>= 1;
  }
  return r;
}

bool GenPoly::has_constant_term() const {
  return t.count(GenMonomial{}) > 0;
}

void Tensor2::add(const GenMonomial& a, const GenMonomial& b, int c, int p) {
  c = fp_norm(c, p);
  if (c == 0) return;
  auto key = std::make_pair(a, b);
  auto [it, inserted] = t.emplace(key, c);
  if (!inserted) {
    it->second = fp_add(it->second, c, p);
    if (it->second == 0) t.erase(it);
  }
}

Tensor2 Tensor2::plus(const Tensor2& o, int p) const {
  Tensor2 r = *this;
  for (auto& [k, c] : o.t) r.add(k.first, k.second, c, p);
  return r;
}

Tensor2 Tensor2::minus(const Tensor2& o, int p) const {
  Tensor2 r = *this;
  for (auto& [k, c] : o.t) r.add(k.first, k.second, -c, p);
  return r;
}

Tensor2 Tensor2::times(const Tensor2& o, int p) const {
  Tensor2 r;
  for (auto& [ka, ca] : t)
    for (auto& [kb, cb] : o.t) {
      GenMonomial left = ka.first, right = ka.second;
      for (auto& [g, k] : kb.first.e) left.e[g] += k;
      for (auto& [g, k] : kb.second.e) right.e[g] += k;
      r.add(left, right, fp_mul(ca, cb, p), p);
    }
  return r;
}

Tensor2 Tensor2::pow(long long k, int p) const {
  Tensor2 r;
  r.add(GenMonomial{}, GenMonomial{}, 1, p);
  Tensor2 b = *this;
  while (k > 0) {
    if (k & 1) r = r.times(b, p);
    b = b.times(b, p);
    k >>= 1;
  }
  return r;
}

// ---- HopfPresentation -------------------------------------------------------

int HopfPresentation::gen_index(const std::string& name) const {
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return static_cast<int>(i);
  return -1;
}

int HopfPresentation::max_level() const {
  int m = 0;
  for (auto& g : gens) m = std::max(m, g.level);
  return m;
}

std::vector<int> HopfPresentation::gens_at_level(int level) const {
  std::vector<int> out;
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i].level == level) out.push_back(static_cast<int>(i));
  return out;
}

GenPoly HopfPresentation::reduce(const GenPoly& a, int level_cap) const {
  GenPoly work = a;
  GenPoly done;
  while (!work.t.empty()) {
    auto it = work.t.begin();
    GenMonomial m = it->first;
    int c = it->second;
    work.t.erase(it);
    // find a generator whose exponent breaks its bound
    int gi = -1;
    for (auto& [g, k] : m.e) {
      const HopfGenerator& gen = gens[g];
      if (level_cap >= 0 && gen.level >= level_cap) continue;
      long long bound = gen.multiplicative ? p : ipow(p, gen.p_exponent);
      if (k >= bound) {
        gi = g;
        break;
      }
    }
    if (gi < 0) {
      done.add(m, c, p);
      continue;
    }
    const HopfGenerator& gen = gens[gi];
    GenMonomial rest = m;
    GenPoly replaced;
    if (gen.multiplicative) {
      rest.e[gi] -= p - 1;  // e^p = e
      GenPoly base;
      base.add(rest, c, p);
      replaced = std::move(base);
    } else {
      long long bound = ipow(p, gen.p_exponent);
      rest.e[gi] -= static_cast<int>(bound);
      if (rest.e[gi] == 0) rest.e.erase(gi);
      GenPoly base;
      base.add(rest, c, p);
      replaced = base.times(gen.relation_q, p);
    }
    for (auto& [mm, cc] : replaced.t) work.add(mm, cc, p);
  }
  return done;
}

Tensor2 HopfPresentation::reduce(const Tensor2& a, int level_cap) const {
  Tensor2 out;
  for (auto& [k, c] : a.t) {
    GenPoly left;
    left.add(k.first, 1, p);
    GenPoly right;
    right.add(k.second, 1, p);
    GenPoly lr = reduce(left, level_cap);
    GenPoly rr = reduce(right, level_cap);
    for (auto& [ml, cl] : lr.t)
      for (auto& [mr, cr] : rr.t)
        out.add(ml, mr, fp_mul(c, fp_mul(cl, cr, p), p), p);
  }
  return out;
}

Tensor2 HopfPresentation::delta_gen(int index) const {
  Tensor2 d = gens[index].comul_tail;
  GenMonomial tm;
  tm.e[index] = 1;
  d.add(tm, GenMonomial{}, 1, p);
  d.add(GenMonomial{}, tm, 1, p);
  return d;
}

Tensor2 HopfPresentation::delta(const GenPoly& a, int level_cap) const {
  Tensor2 out;
  for (auto& [m, c] : a.t) {
    Tensor2 acc;
    acc.add(GenMonomial{}, GenMonomial{}, c, p);
    for (auto& [g, k] : m.e) acc = acc.times(delta_gen(g).pow(k, p), p);
    out = out.plus(reduce(acc, level_cap), p);
  }
  return out;
}

bool HopfPresentation::relation_is_primitive(int index) const {
  const HopfGenerator& g = gens[index];
  // compute in the algebra where this level and later levels are free and
  // strictly earlier relations are imposed; tails that reference their own
  // level (the shifted mu_p coordinate, T1 of the F^2-V family) are checked
  // with all relations imposed instead
  int level_cap = g.level;
  for (auto& [k, c] : g.comul_tail.t)
    for (const GenMonomial* side : {&k.first, &k.second})
      for (auto& [gi, e] : side->e)
        if (gens[gi].level >= g.level) level_cap = -1;
  long long e = g.multiplicative ? p : ipow(p, g.p_exponent);
  Tensor2 dp = delta_gen(index).pow(e, p);
  GenPoly rel = GenPoly::gen(index, static_cast<int>(e));
  GenPoly q = g.multiplicative ? GenPoly::gen(index, 1) : g.relation_q;
  rel = rel.minus(q, p);
  Tensor2 dq = delta(q, level_cap);
  Tensor2 lhs = reduce(dp.minus(dq, p), level_cap);
  Tensor2 rhs;
  for (auto& [m, c] : reduce(rel, level_cap).t) {
    rhs.add(m, GenMonomial{}, c, p);
    rhs.add(GenMonomial{}, m, c, p);
  }
  return lhs == rhs;
}

long long HopfPresentation::dimension() const {
  long long d = 1;
  for (auto& g : gens) d *= g.multiplicative ? p : ipow(p, g.p_exponent);
  return d;
}

std::vector<GenMonomial> HopfPresentation::basis_monomials() const {
  std::vector<GenMonomial> out{GenMonomial{}};
  for (size_t gi = 0; gi < gens.size(); ++gi) {
    long long bound = gens[gi].multiplicative ? p : ipow(p, gens[gi].p_exponent);
    std::vector<GenMonomial> next;
    for (auto& m : out)
      for (long long k = 0; k < bound; ++k) {
        GenMonomial mm = m;
        if (k > 0) mm.e[static_cast<int>(gi)] = static_cast<int>(k);
        next.push_back(mm);
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<int> HopfPresentation::algebra_height() const {
  for (auto& g : gens)
    if (g.multiplicative) return std::nullopt;
  int h = 0;
  for (size_t gi = 0; gi < gens.size(); ++gi) {
    GenPoly x = reduce(GenPoly::gen(static_cast<int>(gi), 1));
    int steps = 0;
    while (!x.is_zero()) {
      x = reduce(x.pow(p, p));
      if (++steps > 16) fail(Errc::Internal, "algebra height exceeds 16");
    }
    h = std::max(h, steps);
  }
  return h;
}

std::vector<GenPoly> HopfPresentation::primitive_space() const {
  std::vector<GenMonomial> basis = basis_monomials();
  std::map<GenMonomial, int> index;
  for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
  // unknowns: coefficients over non-unit basis monomials
  std::vector<GenMonomial> unknowns;
  for (auto& m : basis)
    if (!m.is_unit()) unknowns.push_back(m);
  std::map<std::pair<GenMonomial, GenMonomial>, int> row_index;
  std::vector<Tensor2> defects;
  for (auto& m : unknowns) {
    GenPoly x;
    x.add(m, 1, p);
    Tensor2 d = delta(x);
    for (auto& [mm, c] : x.t) {
      d.add(mm, GenMonomial{}, -c, p);
      d.add(GenMonomial{}, mm, -c, p);
    }
    for (auto& [k, c] : d.t)
      if (!row_index.count(k)) {
        int r = static_cast<int>(row_index.size());
        row_index[k] = r;
      }
    defects.push_back(std::move(d));
  }
  FpMat mat(p, static_cast<int>(row_index.size()), static_cast<int>(unknowns.size()));
  for (size_t j = 0; j < defects.size(); ++j)
    for (auto& [k, c] : defects[j].t) mat.at(row_index.at(k), static_cast<int>(j)) = c;
  std::vector<GenPoly> out;
  for (auto& v : mat.nullspace()) {
    GenPoly x;
    for (size_t j = 0; j < unknowns.size(); ++j)
      if (v[j] != 0) x.add(unknowns[j], v[j], p);
    out.push_back(std::move(x));
  }
  return out;
}

void HopfPresentation::socle_split(std::vector<GenPoly>& unipotent,
                                   std::vector<GenPoly>& mult) const {
  std::vector<GenPoly> prim = primitive_space();
  int s = static_cast<int>(prim.size());
  if (s == 0) return;
  // coordinates of x^p for x in the primitive space, in the primitive basis
  std::vector<GenMonomial> monos;
  std::map<GenMonomial, int> mono_index;
  auto touch = [&](const GenPoly& x) {
    for (auto& [m, c] : x.t)
      if (!mono_index.count(m)) {
        mono_index[m] = static_cast<int>(monos.size());
        monos.push_back(m);
      }
  };
  std::vector<GenPoly> pth(s);
  for (int i = 0; i < s; ++i) {
    pth[i] = reduce(prim[i].pow(p, p));
    touch(prim[i]);
    touch(pth[i]);
  }
  int rows = static_cast<int>(monos.size());
  FpMat basis_mat(p, rows, s);
  for (int j = 0; j < s; ++j)
    for (auto& [m, c] : prim[j].t) basis_mat.at(mono_index.at(m), j) = c;
  // express x_i^p in the primitive basis (Frobenius maps primitives to
  // primitives for these Hopf algebras)
  FpMat frob(p, s, s);
  for (int i = 0; i < s; ++i) {
    std::vector<int> rhs(rows, 0);
    for (auto& [m, c] : pth[i].t) rhs[mono_index.at(m)] = c;
    auto sol = basis_mat.solve(rhs);
    if (!sol) fail(Errc::Internal, "p-th power left the primitive space");
    for (int j = 0; j < s; ++j) frob.at(j, i) = (*sol)[j];
  }
  auto combine = [&](const std::vector<int>& coeffs) {
    GenPoly x;
    for (int i = 0; i < s; ++i)
      if (coeffs[i] != 0) x = x.plus(prim[i].times(GenPoly::unit(coeffs[i]), p), p);
    return x;
  };
  for (auto& v : frob.nullspace()) unipotent.push_back(combine(v));
  // multiplicative part: kernel of (frob - id)
  FpMat fm = frob;
  for (int i = 0; i < s; ++i) fm.at(i, i) = fp_sub(fm.at(i, i), 1, p);
  for (auto& v : fm.nullspace()) mult.push_back(combine(v));
}

GenPoly HopfPresentation::verschiebung(int index) const {
  // iterate Delta to p legs, reduced; extract the diagonal coefficients
  using Legs = std::vector<GenMonomial>;
  std::map<Legs, int> cur;
  {
    GenPoly x = GenPoly::gen(index, 1);
    for (auto& [k, c] : delta(x).t) cur[{k.first, k.second}] = c;
  }
  for (int leg = 2; leg < p; ++leg) {
    std::map<Legs, int> next;
    for (auto& [legs, c] : cur) {
      GenPoly first;
      first.add(legs[0], 1, p);
      for (auto& [k, cc] : delta(first).t) {
        Legs nl;
        nl.push_back(k.first);
        nl.push_back(k.second);
        for (size_t i = 1; i < legs.size(); ++i) nl.push_back(legs[i]);
        int v = fp_mul(c, cc, p);
        auto [it, ins] = next.emplace(nl, v);
        if (!ins) {
          it->second = fp_add(it->second, v, p);
          if (it->second == 0) next.erase(it);
        }
      }
    }
    cur = std::move(next);
  }
  GenPoly out;
  for (auto& [legs, c] : cur) {
    bool diag = true;
    for (size_t i = 1; i < legs.size(); ++i)
      if (!(legs[i] == legs[0])) {
        diag = false;
        break;
      }
    if (diag && !legs[0].is_unit()) out.add(legs[0], c, p);
  }
  int lvl = gens[index].level;
  for (auto& [m, c] : out.t)
    for (auto& [g, k] : m.e)
      if (gens[g].level >= lvl)
        fail(Errc::Internal, "Verschiebung image not in lower levels");
  return out;
}

HopfPresentation HopfPresentation::truncated_to_level(int level) const {
  HopfPresentation out;
  out.p = p;
  out.commutative = commutative;
  std::map<int, int> remap;
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i].level <= level) {
      remap[static_cast<int>(i)] = static_cast<int>(out.gens.size());
      out.gens.push_back(gens[i]);
    }
  auto remap_mono = [&](const GenMonomial& m) {
    GenMonomial r;
    for (auto& [g, k] : m.e) {
      auto it = remap.find(g);
      if (it == remap.end())
        fail(Errc::Internal, "truncation drops a referenced generator");
      r.e[it->second] = k;
    }
    return r;
  };
  for (auto& g : out.gens) {
    GenPoly q;
    for (auto& [m, c] : g.relation_q.t) q.t.emplace(remap_mono(m), c);
    g.relation_q = std::move(q);
    Tensor2 tail;
    for (auto& [k, c] : g.comul_tail.t)
      tail.t.emplace(std::make_pair(remap_mono(k.first), remap_mono(k.second)), c);
    g.comul_tail = std::move(tail);
  }
  for (auto& [i, j, rel] : extra_commutators) {
    if (!remap.count(i) || !remap.count(j)) continue;
    GenPoly r;
    for (auto& [m, c] : rel.t) r.t.emplace(remap_mono(m), c);
    out.extra_commutators.emplace_back(remap.at(i), remap.at(j), std::move(r));
  }
  return out;
}

HopfPresentation HopfPresentation::product(const std::vector<HopfPresentation>& factors,
                                           const std::vector<std::string>& suffixes) {
  if (factors.empty()) fail(Errc::BadInput, "empty product");
  HopfPresentation out;
  out.p = factors[0].p;
  out.commutative = true;
  std::vector<std::map<int, int>> remaps(factors.size());
  for (size_t f = 0; f < factors.size(); ++f) {
    if (factors[f].p != out.p) fail(Errc::BadInput, "mixed characteristics in product");
    if (!factors[f].commutative) fail(Errc::NotCommutative, "product of non-commutative factors");
    for (size_t i = 0; i < factors[f].gens.size(); ++i) {
      remaps[f][static_cast<int>(i)] = static_cast<int>(out.gens.size());
      HopfGenerator g = factors[f].gens[i];
      g.name += suffixes[f];
      out.gens.push_back(std::move(g));
    }
  }
  for (size_t f = 0; f < factors.size(); ++f) {
    auto remap_mono = [&](const GenMonomial& m) {
      GenMonomial r;
      for (auto& [g, k] : m.e) r.e[remaps[f].at(g)] = k;
      return r;
    };
    for (size_t i = 0; i < factors[f].gens.size(); ++i) {
      HopfGenerator& g = out.gens[remaps[f].at(static_cast<int>(i))];
      GenPoly q;
      for (auto& [m, c] : g.relation_q.t) q.t.emplace(remap_mono(m), c);
      g.relation_q = std::move(q);
      Tensor2 tail;
      for (auto& [k, c] : g.comul_tail.t)
        tail.t.emplace(std::make_pair(remap_mono(k.first), remap_mono(k.second)), c);
      g.comul_tail = std::move(tail);
    }
  }
  return out;
}

bool HopfPresentation::structurally_equal(const HopfPresentation& o) const {
  if (p != o.p || gens.size() != o.gens.size() || commutative != o.commutative)
    return false;
  for (size_t i = 0; i < gens.size(); ++i) {
    const HopfGenerator& a = gens[i];
    const HopfGenerator& b = o.gens[i];
    if (a.name != b.name || a.level != b.level || a.p_exponent != b.p_exponent ||
        a.multiplicative != b.multiplicative || !(a.relation_q == b.relation_q) ||
        !(a.comul_tail == b.comul_tail))
      return false;
  }
  return extra_commutators == o.extra_commutators;
}

std::string HopfPresentation::poly_str(const GenPoly& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = a.t.rbegin(); it != a.t.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    bool printed = false;
    if (it->first.is_unit() || it->second != 1) {
      os << it->second;
      printed = true;
    }
    for (auto& [g, k] : it->first.e) {
      if (printed) os << "*";
      os << gens[g].name;
      if (k > 1) os << "^" << k;
      printed = true;
    }
  }
  return os.str();
}

std::string HopfPresentation::tensor_str(const Tensor2& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : a.t) {
    if (!first) os << " + ";
    first = false;
    GenPoly l, r;
    l.add(k.first, 1, p);
    r.add(k.second, 1, p);
    if (c != 1) os << c << "*";
    os << "(" << poly_str(l) << ")(x)(" << poly_str(r) << ")";
  }
  return os.str();
}

// ---- FiniteDual ---------------------------------------------------------------

FiniteDual::FiniteDual(const HopfPresentation& pres) : a(pres), p(pres.p) {
  basis = a.basis_monomials();
  dim = static_cast<int>(basis.size());
  for (int i = 0; i < dim; ++i) index[basis[i]] = i;
  for (int i = 0; i < dim; ++i) {
    GenPoly x;
    x.add(basis[i], 1, p);
    delta_of_basis.push_back(a.delta(x));
  }
}

FiniteDual::Fun FiniteDual::delta_fun(const GenMonomial& m) const {
  Fun f(dim, 0);
  f[index.at(m)] = 1;
  return f;
}

FiniteDual::Fun FiniteDual::unit() const { return delta_fun(GenMonomial{}); }

FiniteDual::Fun FiniteDual::conv(const Fun& x, const Fun& y) const {
  Fun out(dim, 0);
  for (int i = 0; i < dim; ++i) {
    int acc = 0;
    for (auto& [k, c] : delta_of_basis[i].t) {
      int xv = x[index.at(k.first)];
      if (xv == 0) continue;
      int yv = y[index.at(k.second)];
      if (yv == 0) continue;
      acc = fp_add(acc, fp_mul(c, fp_mul(xv, yv, p), p), p);
    }
    out[i] = acc;
  }
  return out;
}

FiniteDual::Fun FiniteDual::conv_pow(const Fun& x, long long e) const {
  Fun r = unit();
  Fun b = x;
  while (e > 0) {
    if (e & 1) r = conv(r, b);
    b = conv(b, b);
    e >>= 1;
  }
  return r;
}

bool FiniteDual::is_zero(const Fun& x) const {
  return std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
}

std::vector<std::vector<int>> FiniteDual::comult(const Fun& f) const {
  std::vector<std::vector<int>> m(dim, std::vector<int>(dim, 0));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      GenPoly x;
      x.add(basis[i], 1, p);
      GenPoly y;
      y.add(basis[j], 1, p);
      GenPoly prod = a.reduce(x.times(y, p));
      int acc = 0;
      for (auto& [mm, c] : prod.t) acc = fp_add(acc, fp_mul(c, f[index.at(mm)], p), p);
      m[i][j] = acc;
    }
  return m;
}

// ---- FpMat ------------------------------------------------------------------

namespace {
std::vector<int> fp_rref(FpMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int pr = -1;
    for (int r = row; r < m.rows; ++r)
      if (m.at(r, col) != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int c = 0; c < m.cols; ++c) std::swap(m.at(pr, c), m.at(row, c));
    int inv = fp_inv(m.at(row, col), m.p);
    for (int c = col; c < m.cols; ++c) m.at(row, c) = fp_mul(m.at(row, c), inv, m.p);
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      int f = m.at(r, col);
      for (int c = col; c < m.cols; ++c)
        m.at(r, c) = fp_sub(m.at(r, c), fp_mul(f, m.at(row, c), m.p), m.p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}
}  // namespace

int FpMat::rank() const {
  FpMat m = *this;
  return static_cast<int>(fp_rref(m).size());
}

std::vector<std::vector<int>> FpMat::nullspace() const {
  FpMat m = *this;
  std::vector<int> pivots = fp_rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<int>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<int> v(cols, 0);
    v[free] = 1;
    for (size_t pi = 0; pi < pivots.size(); ++pi)
      v[pivots[pi]] = fp_norm(-m.at(static_cast<int>(pi), free), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<int>> FpMat::solve(const std::vector<int>& b) const {
  FpMat aug(p, rows, cols + 1);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) aug.at(r, c) = at(r, c);
    aug.at(r, cols) = fp_norm(b[r], p);
  }
  std::vector<int> pivots = fp_rref(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  std::vector<int> x(cols, 0);
  for (size_t pi = 0; pi < pivots.size(); ++pi)
    x[pivots[pi]] = aug.at(static_cast<int>(pi), cols);
  return x;
}

}  // namespace gsact
