#pragma once

// Shared test utilities: contexts and seeded random value generators.

#include <random>
#include <string>
#include <vector>

#include "gsact/field.hpp"

namespace gsact::testing {

inline ContextPtr ctx1(int p, const std::string& v = "x") {
  return FieldContext::make(p, {v});
}
inline ContextPtr ctx2(int p, const std::string& a = "x", const std::string& b = "y") {
  return FieldContext::make(p, {a, b});
}

struct Rng {
  std::mt19937 gen;
  explicit Rng(unsigned seed) : gen(seed) {}

  int uniform(int lo, int hi) {  // inclusive
    std::uniform_int_distribution<int> d(lo, hi);
    return d(gen);
  }

  Polynomial poly(const ContextPtr& ctx, int max_terms = 3, int max_exp = 3) {
    Polynomial r(ctx);
    int terms = uniform(0, max_terms);
    for (int t = 0; t < terms; ++t) {
      Exp e(ctx->nvars());
      for (int& x : e) x = uniform(0, max_exp);
      r.add_term(e, uniform(0, ctx->p() - 1));
    }
    return r;
  }

  Polynomial nonzero_poly(const ContextPtr& ctx, int max_terms = 3, int max_exp = 3) {
    for (int tries = 0; tries < 64; ++tries) {
      Polynomial r = poly(ctx, max_terms, max_exp);
      if (!r.is_zero()) return r;
    }
    return Polynomial::constant(ctx, 1);
  }

  RationalFunction rational(const ContextPtr& ctx, int max_terms = 3, int max_exp = 3) {
    return RationalFunction(poly(ctx, max_terms, max_exp),
                            nonzero_poly(ctx, 2, 2));
  }

  RationalFunction nonzero_rational(const ContextPtr& ctx, int max_terms = 3,
                                    int max_exp = 3) {
    for (int tries = 0; tries < 64; ++tries) {
      RationalFunction r = rational(ctx, max_terms, max_exp);
      if (!r.is_zero()) return r;
    }
    return RationalFunction::one(ctx);
  }
};

}  // namespace gsact::testing
