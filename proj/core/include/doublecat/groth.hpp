#pragma once

#include "doublecat/dfib.hpp"

namespace dc {

// ∫∫X. Cells of the total are pairs (base cell, element), stored contiguously per base cell:
// object (x, a) has index obj_off[x] + a, and likewise for hmors (f, b) with b in X(tgt f),
// vmors (u, e) with e in Xu, squares (α, e) with e in X(right α).
struct GrothResult {
  PshRef psh;
  DblRef total;
  DiscreteDoubleFibration projection;
  std::vector<int> obj_off, hmor_off, vmor_off, sq_off;

  int obj(int x, int a) const { return obj_off[x] + a; }
  int hmor(int f, int b) const { return hmor_off[f] + b; }
  int vmor(int u, int e) const { return vmor_off[u] + e; }
  int sq(int a, int e) const { return sq_off[a] + e; }
};

GrothResult groth(const PshRef& x);

// ∫∫F : ∫∫X -> ∫∫Y over the base.
DFunRef groth_morphism(const GrothResult& gx, const GrothResult& gy, const HorizontalTransf& f);
// ∫∫A : ∫∫F => ∫∫G.
VTransRef groth_2morphism(const GrothResult& gx, const GrothResult& gy, const GlobularModification& a);

struct CounitResult {
  GrothResult groth;
  DdelResult ddel;
  HTransRef eps, inverse;  // ∂∂∫∫X => X and back
  ValidationReport checks;
};

CounitResult counit_epsilon(const PshRef& x);

struct UnitResult {
  DdelResult ddel;
  GrothResult groth;
  DFunRef eta, inverse;  // E -> ∫∫∂∂E and back
  ValidationReport checks;
};

UnitResult unit_eta(const DiscreteDoubleFibration& d);

// ε_{∂∂P} ∘ ∂∂(η_P) = 1 and ∫∫(ε_X) ∘ η_{∫∫X} = 1.
ValidationReport check_triangle_identities(const DiscreteDoubleFibration& d);
ValidationReport check_triangle_identities(const PshRef& x);

struct RepresentationEntry {
  int xh = -1, a = -1;
  bool is_represented = false;
  bool is_double_terminal = false;
};

struct RepresentationReport {
  std::vector<RepresentationEntry> entries;
  bool agree = true;
};

RepresentationReport representation_check(const PshRef& x);

}  // namespace dc
