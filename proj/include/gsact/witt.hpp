#pragma once

// Witt addition polynomials S_0,...,S_{n-1}: solved over the integers from
// w_i(S_0,...,S_i) = w_i(X) + w_i(Y) with w_i = sum_j p^j Z_j^{p^{i-j}},
// then reduced mod p. The context has variables X0..X{n-1}, Y0..Y{n-1}.

#include <vector>

#include "gsact/field.hpp"

namespace gsact {

struct WittSumData {
  int p = 0;
  int length = 0;
  ContextPtr ctx;                  // X0..X{n-1}, Y0..Y{n-1}
  std::vector<Polynomial> polys;   // S_0,...,S_{n-1} over F_p
};

WittSumData witt_sum_polynomials(int p, int n, int height_budget = 4);

// Addition of length-n Witt vectors over F_p through the reduced polynomials.
std::vector<int> witt_add(const WittSumData& w, const std::vector<int>& a,
                          const std::vector<int>& b);

}  // namespace gsact
