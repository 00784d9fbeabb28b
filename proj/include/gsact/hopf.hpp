#pragma once

// Presentations of the (co)commutative Hopf algebras attached to the
// supported group schemes: leveled generators T with relations T^{p^m} = Q
// (Q in strictly earlier generators) or T^p = T for multiplicative factors,
// and comultiplications Delta(T) = T(x)1 + 1(x)T + tail. Provides symbolic
// reduction, comultiplication, primitivity checks, primitive subspaces,
// Verschiebung images and finite Cartier duals.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsact/base.hpp"

namespace gsact {

// Monomial in the presentation generators, keyed by generator index.
struct GenMonomial {
  std::map<int, int> e;
  bool is_unit() const { return e.empty(); }
  int degree() const;
  auto operator<=>(const GenMonomial&) const = default;
};

// Polynomial over F_p in the generators.
struct GenPoly {
  std::map<GenMonomial, int> t;

  static GenPoly zero() { return {}; }
  static GenPoly unit(int c = 1);
  static GenPoly gen(int index, int exp = 1, int c = 1);

  bool is_zero() const { return t.empty(); }
  void add(const GenMonomial& m, int c, int p);
  GenPoly plus(const GenPoly& o, int p) const;
  GenPoly minus(const GenPoly& o, int p) const;
  GenPoly times(const GenPoly& o, int p) const;
  GenPoly pow(long long k, int p) const;
  bool has_constant_term() const;
  auto operator<=>(const GenPoly&) const = default;
};

// Element of A (x) A over the generator-monomial basis.
struct Tensor2 {
  std::map<std::pair<GenMonomial, GenMonomial>, int> t;

  bool is_zero() const { return t.empty(); }
  void add(const GenMonomial& a, const GenMonomial& b, int c, int p);
  Tensor2 plus(const Tensor2& o, int p) const;
  Tensor2 minus(const Tensor2& o, int p) const;
  Tensor2 times(const Tensor2& o, int p) const;
  Tensor2 pow(long long k, int p) const;
  auto operator<=>(const Tensor2&) const = default;
};

struct HopfGenerator {
  std::string name;
  int level = 1;       // position in the Frobenius-kernel cofiltration
  int p_exponent = 1;  // relation T^{p^m} = Q (unipotent) or m = 1, T^p = T (mult.)
  bool multiplicative = false;
  GenPoly relation_q;  // zero constant term, strictly earlier generators
  Tensor2 comul_tail;  // Delta(T) - T(x)1 - 1(x)T
};

class HopfPresentation {
 public:
  int p = 0;
  std::vector<HopfGenerator> gens;
  bool commutative = true;
  // [g_i, g_j] = poly for the declared non-commuting pairs (i > j).
  std::vector<std::tuple<int, int, GenPoly>> extra_commutators;

  int gen_index(const std::string& name) const;  // -1 when absent
  int max_level() const;
  std::vector<int> gens_at_level(int level) const;

  // Rewrites all exponents below the relation bounds. When level_cap >= 0,
  // generators at level >= level_cap are treated as free.
  GenPoly reduce(const GenPoly& a, int level_cap = -1) const;
  Tensor2 reduce(const Tensor2& a, int level_cap = -1) const;

  Tensor2 delta_gen(int index) const;  // unreduced Delta(T_index)
  Tensor2 delta(const GenPoly& a, int level_cap = -1) const;

  // Delta(P) = P(x)1 + 1(x)P for P = T^{p^m} - Q (resp. T^p - T), computed in
  // the algebra where T itself is free and earlier relations are imposed.
  bool relation_is_primitive(int index) const;

  long long dimension() const;
  std::vector<GenMonomial> basis_monomials() const;

  // F-height of Spec(this): least h with x^{p^h} = 0 for all augmentation
  // elements; nullopt when a multiplicative generator is present.
  std::optional<int> algebra_height() const;

  // Basis of the primitive elements, as reduced GenPolys.
  std::vector<GenPoly> primitive_space() const;
  // Primitives split under x -> x^p: nilpotent part (x^p = 0) and
  // multiplicative part (x^p = x).
  void socle_split(std::vector<GenPoly>& unipotent, std::vector<GenPoly>& mult) const;

  // V(T_index) via the diagonal of the (p-1)-fold comultiplication; lands in
  // generators of strictly lower level.
  GenPoly verschiebung(int index) const;

  HopfPresentation truncated_to_level(int level) const;
  static HopfPresentation product(const std::vector<HopfPresentation>& factors,
                                  const std::vector<std::string>& suffixes);

  bool structurally_equal(const HopfPresentation& o) const;

  std::string poly_str(const GenPoly& a) const;
  std::string tensor_str(const Tensor2& a) const;
};

// ---- finite Cartier dual ----------------------------------------------------

struct FpMat;

// Functionals on the monomial basis of a presentation, with the convolution
// product (the multiplication of the dual Hopf algebra) and the dualized
// comultiplication. Works for non-cocommutative inputs.
struct FiniteDual {
  explicit FiniteDual(const HopfPresentation& pres);

  const HopfPresentation& a;
  int p = 2;
  int dim = 0;
  std::vector<GenMonomial> basis;
  std::map<GenMonomial, int> index;
  std::vector<Tensor2> delta_of_basis;

  using Fun = std::vector<int>;

  Fun delta_fun(const GenMonomial& m) const;
  Fun unit() const;  // the counit of the presentation
  Fun conv(const Fun& x, const Fun& y) const;
  Fun conv_pow(const Fun& x, long long e) const;
  bool is_zero(const Fun& x) const;

  // Delta'(f) as a dim x dim matrix over the monomial basis:
  // entry (i, j) = f(basis_i * basis_j).
  std::vector<std::vector<int>> comult(const Fun& f) const;
};

// ---- small dense F_p linear algebra ----------------------------------------

struct FpMat {
  int p = 2;
  int rows = 0, cols = 0;
  std::vector<int> a;

  FpMat() = default;
  FpMat(int p_, int rows_, int cols_) : p(p_), rows(rows_), cols(cols_), a(rows_ * cols_, 0) {}
  int& at(int r, int c) { return a[r * cols + c]; }
  int at(int r, int c) const { return a[r * cols + c]; }
  int rank() const;
  std::vector<std::vector<int>> nullspace() const;
  // Canonical solution with free coordinates zero, or nullopt.
  std::optional<std::vector<int>> solve(const std::vector<int>& b) const;
};

}  // namespace gsact
