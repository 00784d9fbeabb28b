#pragma once

// Descriptors of the supported infinitesimal group schemes, their numeric
// invariants, coordinate-algebra presentations built from Witt comultiplication
// data, Cartier duals and the Young-diagram combinatorics of the height-one
// classification.

#include <optional>
#include <string>
#include <vector>

#include "gsact/hopf.hpp"
#include "gsact/witt.hpp"

namespace gsact {

struct YoungDiagram {
  std::vector<int> rows;  // weakly decreasing, positive

  static YoungDiagram make(std::vector<int> rows);
  int boxes() const;
  int row_count() const { return static_cast<int>(rows.size()); }
  bool operator==(const YoungDiagram&) const = default;
  std::string str() const;
};

struct GroupDescriptor {
  enum class Kind { HeightOne, KerFMinusV, KerF2MinusV, Explicit };

  Kind kind = Kind::HeightOne;
  int p = 2;
  YoungDiagram diagram;  // HeightOne
  int mu = 0;            // HeightOne: number of mu_p factors
  int n = 1;             // KerFMinusV: Witt length
  // Explicit: the dual presentation k[G^v] (what module-algebra maps consume),
  // optionally with a declared presentation of k[G] itself.
  std::optional<HopfPresentation> explicit_dual;
  std::optional<HopfPresentation> declared_expand;

  static GroupDescriptor height_one(int p, YoungDiagram d, int mu = 0);
  static GroupDescriptor ker_f_minus_v(int p, int n);
  static GroupDescriptor ker_f2_minus_v(int p);
  static GroupDescriptor explicit_group(int p, HopfPresentation dual,
                                        std::optional<HopfPresentation> expand = {});

  bool commutative() const;
  std::string str() const;
};

// Presentation of k[G] with Witt comultiplication tails.
HopfPresentation expand(const GroupDescriptor& desc, int height_budget = 4);
// Presentation of k[G^v]; module-algebra structures are maps out of this.
HopfPresentation dual_presentation(const GroupDescriptor& desc, int height_budget = 4);

// soc(G) = alpha_p^r x mu_p^s as a HeightOne descriptor with r rows of length 1.
GroupDescriptor socle(const GroupDescriptor& desc);

struct GroupInvariants {
  int lie_dim = 0;
  int frobenius_height = 0;
  int verschiebung_index = 0;  // -1 when V is not nilpotent (mu factors)
  long long order = 0;
};
GroupInvariants invariants(const GroupDescriptor& desc);

// ker(F^i), realized by truncating the dual presentation at level i.
GroupDescriptor ker_frobenius_power(const GroupDescriptor& desc, int i);

YoungDiagram young_join(const std::vector<YoungDiagram>& diagrams);

// Necessary condition of a faithful rational action on dimension n:
// s <= n and n_1 <= n - s for the unipotent Frobenius-kernel diagram.
bool necessary_condition(const YoungDiagram& ker_f_diagram, int mu_count, int n);

}  // namespace gsact
