#include "gsact/groupscheme.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace gsact {

// ---- YoungDiagram -----------------------------------------------------------

YoungDiagram YoungDiagram::make(std::vector<int> rows) {
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 1) fail(Errc::BadInput, "Young diagram rows must be positive");
    if (i > 0 && rows[i] > rows[i - 1])
      fail(Errc::BadInput, "Young diagram rows must be weakly decreasing");
  }
  return YoungDiagram{std::move(rows)};
}

int YoungDiagram::boxes() const {
  int b = 0;
  for (int r : rows) b += r;
  return b;
}

std::string YoungDiagram::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i) os << ",";
    os << rows[i];
  }
  os << ")";
  return os.str();
}

// ---- descriptors ------------------------------------------------------------

GroupDescriptor GroupDescriptor::height_one(int p, YoungDiagram d, int mu) {
  GroupDescriptor g;
  g.kind = Kind::HeightOne;
  g.p = p;
  g.diagram = std::move(d);
  g.mu = mu;
  if (mu < 0) fail(Errc::BadInput, "negative mu count");
  if (g.diagram.rows.empty() && mu == 0)
    fail(Errc::BadInput, "trivial group: empty diagram and no mu factors");
  return g;
}

GroupDescriptor GroupDescriptor::ker_f_minus_v(int p, int n) {
  if (n < 1) fail(Errc::BadInput, "Witt length must be positive");
  GroupDescriptor g;
  g.kind = Kind::KerFMinusV;
  g.p = p;
  g.n = n;
  return g;
}

GroupDescriptor GroupDescriptor::ker_f2_minus_v(int p) {
  GroupDescriptor g;
  g.kind = Kind::KerF2MinusV;
  g.p = p;
  return g;
}

GroupDescriptor GroupDescriptor::explicit_group(int p, HopfPresentation dual,
                                                std::optional<HopfPresentation> expand) {
  GroupDescriptor g;
  g.kind = Kind::Explicit;
  g.p = p;
  g.explicit_dual = std::move(dual);
  g.declared_expand = std::move(expand);
  return g;
}

bool GroupDescriptor::commutative() const {
  if (kind == Kind::Explicit) return explicit_dual->commutative;
  return true;
}

std::string GroupDescriptor::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::HeightOne:
      os << "W^1 product " << diagram.str();
      if (mu > 0) os << " x mu_p^" << mu;
      break;
    case Kind::KerFMinusV:
      os << "ker(F-V: W_" << n << "^" << n << ")";
      break;
    case Kind::KerF2MinusV:
      os << "ker(F^2-V: W_3^3)";
      break;
    case Kind::Explicit:
      os << "explicit presentation (" << explicit_dual->gens.size() << " dual generators)";
      break;
  }
  return os.str();
}

// ---- presentation builders --------------------------------------------------

namespace {

// Tail of the j-th Witt coordinate (0-based) as a Tensor2 over the generator
// indices block[0..j]; reduced by the presentation so far.
Tensor2 witt_tail(const HopfPresentation& pres, const WittSumData& witt, int j,
                  const std::vector<int>& block) {
  Tensor2 tail;
  int p = pres.p;
  int n = witt.length;
  for (auto& [e, c] : witt.polys[j].terms()) {
    GenMonomial left, right;
    int xdeg = 0, ydeg = 0;
    for (int v = 0; v < n; ++v) {
      if (e[v] > 0) {
        left.e[block[v]] = e[v];
        xdeg += e[v];
      }
      if (e[n + v] > 0) {
        right.e[block[v]] = e[n + v];
        ydeg += e[n + v];
      }
    }
    if (xdeg == 0 || ydeg == 0) continue;  // the primitive part X_j + Y_j
    tail.add(left, right, c, p);
  }
  return pres.reduce(tail);
}

HopfPresentation expand_height_one(const GroupDescriptor& d, int height_budget) {
  HopfPresentation pres;
  pres.p = d.p;
  int max_len = 1;
  for (int r : d.diagram.rows) max_len = std::max(max_len, r);
  WittSumData witt = witt_sum_polynomials(d.p, max_len, height_budget);
  for (size_t row = 0; row < d.diagram.rows.size(); ++row) {
    std::vector<int> block;
    for (int j = 0; j < d.diagram.rows[row]; ++j) {
      HopfGenerator g;
      g.name = "T" + std::to_string(row + 1) + "_" + std::to_string(j + 1);
      g.level = j + 1;
      g.p_exponent = 1;
      int idx = static_cast<int>(pres.gens.size());
      block.push_back(idx);
      pres.gens.push_back(g);
      pres.gens.back().comul_tail = witt_tail(pres, witt, j, block);
    }
  }
  for (int m = 0; m < d.mu; ++m) {
    // k[mu_p] = k[M]/((1+M)^p - 1): shifted coordinate with Delta(M) =
    // M(x)1 + 1(x)M + M(x)M and M^p = 0.
    HopfGenerator g;
    g.name = "M" + std::to_string(m + 1);
    g.level = 1;
    g.p_exponent = 1;
    int idx = static_cast<int>(pres.gens.size());
    GenMonomial self;
    self.e[idx] = 1;
    g.comul_tail.add(self, self, 1, d.p);
    pres.gens.push_back(std::move(g));
  }
  return pres;
}

HopfPresentation dual_height_one(const GroupDescriptor& d) {
  HopfPresentation pres;
  pres.p = d.p;
  for (size_t row = 0; row < d.diagram.rows.size(); ++row) {
    HopfGenerator g;
    g.name = "U" + std::to_string(row + 1);
    g.level = 1;
    g.p_exponent = d.diagram.rows[row];
    pres.gens.push_back(std::move(g));  // primitive: alpha_{p^{n_row}}
  }
  for (int m = 0; m < d.mu; ++m) {
    HopfGenerator g;
    g.name = "e" + std::to_string(m + 1);
    g.level = 1;
    g.p_exponent = 1;
    g.multiplicative = true;  // e^p = e, primitive (functions on Z/p)
    pres.gens.push_back(std::move(g));
  }
  return pres;
}

// ker(F-V: W_n^n -> W_n^n): autodual tower U_1,...,U_n with U_i^p = U_{i-1}
// and Witt comultiplication tails.
HopfPresentation witt_tower(int p, int n, const std::string& base_name,
                            int height_budget) {
  HopfPresentation pres;
  pres.p = p;
  WittSumData witt = witt_sum_polynomials(p, n, height_budget);
  std::vector<int> block;
  for (int i = 0; i < n; ++i) {
    HopfGenerator g;
    g.name = base_name + std::to_string(i + 1);
    g.level = i + 1;
    g.p_exponent = 1;
    if (i > 0) g.relation_q = GenPoly::gen(i - 1, 1);
    int idx = static_cast<int>(pres.gens.size());
    block.push_back(idx);
    pres.gens.push_back(std::move(g));
    pres.gens.back().comul_tail = witt_tail(pres, witt, i, block);
  }
  return pres;
}

// k[ker(F - V^2)] as a subgroup of W_3 cut out by z0^p = 0, z1^p = 0,
// z2^p = z0; this is the Cartier dual of ker(F^2 - V: W_3^3 -> W_3^3).
HopfPresentation kerf2v_dual(int p, int height_budget) {
  HopfPresentation pres;
  pres.p = p;
  WittSumData witt = witt_sum_polynomials(p, 3, height_budget);
  std::vector<int> block;
  for (int i = 0; i < 3; ++i) {
    HopfGenerator g;
    g.name = "U" + std::to_string(i + 1);
    g.level = i + 1;
    g.p_exponent = 1;
    if (i == 2) g.relation_q = GenPoly::gen(0, 1);  // U3^p = U1
    int idx = static_cast<int>(pres.gens.size());
    block.push_back(idx);
    pres.gens.push_back(std::move(g));
    pres.gens.back().comul_tail = witt_tail(pres, witt, i, block);
  }
  return pres;
}

// Presentation of k[ker(F^2-V)] = k[T0,T1]/(T0^p, T1^{p^2}-T0), extracted from
// the finite dual of the U-tower.
HopfPresentation kerf2v_expand(int p, int height_budget) {
  HopfPresentation dual = kerf2v_dual(p, height_budget);
  FiniteDual fd(dual);
  int dim = fd.dim;

  // T1: a monomial functional with T1^{p^2} != 0 and T1^{p^3} = 0
  FiniteDual::Fun t1, t0;
  bool found = false;
  for (auto& m : fd.basis) {
    if (m.is_unit()) continue;
    FiniteDual::Fun cand = fd.delta_fun(m);
    FiniteDual::Fun sq = fd.conv_pow(cand, ipow(p, 2));
    if (fd.is_zero(sq)) continue;
    if (!fd.is_zero(fd.conv_pow(cand, ipow(p, 3)))) continue;
    t1 = cand;
    t0 = sq;
    found = true;
    break;
  }
  if (!found) fail(Errc::Internal, "no tower generator found in the finite dual");
  if (!fd.is_zero(fd.conv_pow(t0, p))) fail(Errc::Internal, "T0^p != 0 in the finite dual");

  // monomial basis T0^a T1^b, a < p, b < p^2, as functionals
  long long q2 = ipow(p, 2);
  std::vector<FiniteDual::Fun> tmonos;
  std::vector<std::pair<int, int>> texps;
  for (int a = 0; a < p; ++a)
    for (long long b = 0; b < q2; ++b) {
      FiniteDual::Fun f = fd.conv(fd.conv_pow(t0, a), fd.conv_pow(t1, b));
      tmonos.push_back(std::move(f));
      texps.emplace_back(a, static_cast<int>(b));
    }
  FpMat bmat(p, dim, static_cast<int>(tmonos.size()));
  for (size_t j = 0; j < tmonos.size(); ++j)
    for (int i = 0; i < dim; ++i) bmat.at(i, static_cast<int>(j)) = tmonos[j][i];
  if (bmat.rank() != dim) fail(Errc::Internal, "T-monomials do not span the dual");

  // express Delta'(T1) and Delta'(T0) in the T-monomial basis on both legs
  auto express = [&](const FpMat& d) {
    // solve bmat * C * bmat^T = d  =>  columns twice
    int nmono = static_cast<int>(tmonos.size());
    // first solve bmat * X = d (column by column)
    FpMat x(p, nmono, dim);
    for (int c = 0; c < dim; ++c) {
      std::vector<int> col(dim);
      for (int r = 0; r < dim; ++r) col[r] = d.at(r, c);
      auto sol = bmat.solve(col);
      if (!sol) fail(Errc::Internal, "dual comultiplication outside the span");
      for (int r = 0; r < nmono; ++r) x.at(r, c) = (*sol)[r];
    }
    // then solve bmat * Y = X^T column by column: C = Y^T
    FpMat cmat(p, nmono, nmono);
    for (int r = 0; r < nmono; ++r) {
      std::vector<int> row(dim);
      for (int c = 0; c < dim; ++c) row[c] = x.at(r, c);
      auto sol = bmat.solve(row);
      if (!sol) fail(Errc::Internal, "dual comultiplication outside the span");
      for (int c = 0; c < nmono; ++c) cmat.at(r, c) = (*sol)[c];
    }
    return cmat;
  };

  auto to_mat = [&](const std::vector<std::vector<int>>& d) {
    FpMat m(p, dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m.at(i, j) = d[i][j];
    return m;
  };
  FpMat c1 = express(to_mat(fd.comult(t1)));
  FpMat c0 = express(to_mat(fd.comult(t0)));

  HopfPresentation out;
  out.p = p;
  HopfGenerator g0;
  g0.name = "T0";
  g0.level = 1;
  g0.p_exponent = 1;
  HopfGenerator g1;
  g1.name = "T1";
  g1.level = 2;
  g1.p_exponent = 2;
  g1.relation_q = GenPoly::gen(0, 1);
  out.gens.push_back(g0);
  out.gens.push_back(g1);

  auto mono_of = [&](int j) {
    GenMonomial m;
    if (texps[j].first > 0) m.e[0] = texps[j].first;
    if (texps[j].second > 0) m.e[1] = texps[j].second;
    return m;
  };
  auto extract_tail = [&](const FpMat& c, int self_index) {
    Tensor2 tail;
    int nmono = static_cast<int>(tmonos.size());
    for (int i = 0; i < nmono; ++i)
      for (int j = 0; j < nmono; ++j) {
        int v = c.at(i, j);
        if (v == 0) continue;
        GenMonomial a = mono_of(i);
        GenMonomial b = mono_of(j);
        // subtract the primitive part T(x)1 + 1(x)T
        GenMonomial self;
        self.e[self_index] = 1;
        if ((a == self && b.is_unit()) || (a.is_unit() && b == self)) continue;
        tail.add(a, b, v, p);
      }
    return tail;
  };
  out.gens[0].comul_tail = extract_tail(c0, 0);
  out.gens[1].comul_tail = extract_tail(c1, 1);
  if (!out.gens[0].comul_tail.is_zero())
    fail(Errc::Internal, "T0 is not primitive in the finite dual");
  return out;
}

}  // namespace

HopfPresentation expand(const GroupDescriptor& desc, int height_budget) {
  switch (desc.kind) {
    case GroupDescriptor::Kind::HeightOne:
      return expand_height_one(desc, height_budget);
    case GroupDescriptor::Kind::KerFMinusV:
      return witt_tower(desc.p, desc.n, "T", height_budget);
    case GroupDescriptor::Kind::KerF2MinusV:
      return kerf2v_expand(desc.p, height_budget);
    case GroupDescriptor::Kind::Explicit:
      if (desc.declared_expand) return *desc.declared_expand;
      fail(Errc::UnsupportedDual,
           "explicit descriptor without a declared coordinate-algebra presentation");
  }
  fail(Errc::Internal, "unreachable");
}

HopfPresentation dual_presentation(const GroupDescriptor& desc, int height_budget) {
  switch (desc.kind) {
    case GroupDescriptor::Kind::HeightOne:
      return dual_height_one(desc);
    case GroupDescriptor::Kind::KerFMinusV:
      return witt_tower(desc.p, desc.n, "U", height_budget);  // autodual
    case GroupDescriptor::Kind::KerF2MinusV:
      return kerf2v_dual(desc.p, height_budget);
    case GroupDescriptor::Kind::Explicit:
      return *desc.explicit_dual;
  }
  fail(Errc::Internal, "unreachable");
}

GroupDescriptor socle(const GroupDescriptor& desc) {
  if (!desc.commutative()) fail(Errc::NotCommutative, "socle needs a commutative group");
  int r = 0, s = 0;
  switch (desc.kind) {
    case GroupDescriptor::Kind::HeightOne:
      r = desc.diagram.row_count();
      s = desc.mu;
      break;
    case GroupDescriptor::Kind::KerFMinusV:
    case GroupDescriptor::Kind::KerF2MinusV:
      r = 1;
      break;
    case GroupDescriptor::Kind::Explicit: {
      std::vector<GenPoly> w, m;
      desc.explicit_dual->socle_split(w, m);
      r = static_cast<int>(w.size());
      s = static_cast<int>(m.size());
      break;
    }
  }
  return GroupDescriptor::height_one(desc.p, YoungDiagram{std::vector<int>(r, 1)}, s);
}

GroupInvariants invariants(const GroupDescriptor& desc) {
  GroupInvariants inv;
  switch (desc.kind) {
    case GroupDescriptor::Kind::HeightOne:
      inv.lie_dim = desc.diagram.boxes() + desc.mu;
      inv.frobenius_height = 1;
      inv.verschiebung_index =
          desc.mu > 0 ? -1 : (desc.diagram.rows.empty() ? 0 : desc.diagram.rows[0]);
      inv.order = ipow(desc.p, desc.diagram.boxes() + desc.mu);
      break;
    case GroupDescriptor::Kind::KerFMinusV:
      inv.lie_dim = 1;
      inv.frobenius_height = desc.n;
      inv.verschiebung_index = desc.n;
      inv.order = ipow(desc.p, desc.n);
      break;
    case GroupDescriptor::Kind::KerF2MinusV:
      inv.lie_dim = 1;
      inv.frobenius_height = 3;
      inv.verschiebung_index = 2;
      inv.order = ipow(desc.p, 3);
      break;
    case GroupDescriptor::Kind::Explicit: {
      const HopfPresentation& a = *desc.explicit_dual;
      inv.lie_dim = static_cast<int>(a.primitive_space().size());
      inv.frobenius_height = a.max_level();
      auto h = a.algebra_height();
      inv.verschiebung_index = h ? *h : -1;
      inv.order = a.dimension();
      break;
    }
  }
  return inv;
}

GroupDescriptor ker_frobenius_power(const GroupDescriptor& desc, int i) {
  GroupInvariants inv = invariants(desc);
  if (i < 1 || i > inv.frobenius_height)
    fail(Errc::BadInput, "Frobenius power outside 1..height");
  if (i == inv.frobenius_height) return desc;
  switch (desc.kind) {
    case GroupDescriptor::Kind::HeightOne:
      return desc;  // height one: i must be 1 = height
    case GroupDescriptor::Kind::KerFMinusV:
      return GroupDescriptor::ker_f_minus_v(desc.p, i);
    case GroupDescriptor::Kind::KerF2MinusV: {
      if (i == 1)
        return GroupDescriptor::height_one(desc.p, YoungDiagram::make({1}), 0);
      return GroupDescriptor::explicit_group(
          desc.p, dual_presentation(desc).truncated_to_level(i));
    }
    case GroupDescriptor::Kind::Explicit:
      return GroupDescriptor::explicit_group(
          desc.p, desc.explicit_dual->truncated_to_level(i));
  }
  fail(Errc::Internal, "unreachable");
}

YoungDiagram young_join(const std::vector<YoungDiagram>& diagrams) {
  if (diagrams.empty()) fail(Errc::BadInput, "young_join of an empty list");
  size_t rows = 0;
  for (auto& d : diagrams) rows = std::max(rows, d.rows.size());
  std::vector<int> out(rows, 0);
  for (auto& d : diagrams)
    for (size_t j = 0; j < d.rows.size(); ++j) out[j] = std::max(out[j], d.rows[j]);
  return YoungDiagram::make(std::move(out));
}

bool necessary_condition(const YoungDiagram& ker_f_diagram, int mu_count, int n) {
  if (mu_count > n) return false;
  if (ker_f_diagram.rows.empty()) return true;
  return ker_f_diagram.rows[0] <= n - mu_count;
}

}  // namespace gsact
