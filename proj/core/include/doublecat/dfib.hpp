#pragma once

#include <map>
#include <optional>

#include "doublecat/presheaf.hpp"

namespace dc {

// P : E -> C with its unique lifts.
// hlift[e * n_hmor(C) + f] is the hmor of E over f with target e (-1 unless htgt f = Pe);
// sqlift[v * n_sq(C) + a] is the square of E over a with right edge v (-1 unless right a = Pv).
struct DiscreteDoubleFibration {
  DFunRef p;
  std::vector<int> hlift, sqlift;

  const DoubleCat& total() const { return *p->source; }
  const DoubleCat& base() const { return *p->target; }
  int lift_h(int e, int f) const { return hlift[static_cast<std::size_t>(e) * base().n_hmor() + f]; }
  int lift_sq(int v, int a) const { return sqlift[static_cast<std::size_t>(v) * base().n_sq() + a]; }
};

struct DFibResult {
  std::optional<DiscreteDoubleFibration> fib;
  ValidationReport failure;
};

// Counts lifts; the failure report lists missing / ambiguous lifts in index order.
DFibResult check_dfib(const DFunRef& p);
// Checks a given lift table against p (for hand-built or corrupted tables).
ValidationReport validate_dfib(const DiscreteDoubleFibration& d, std::size_t cap = 64);

// P^{-1}x: objects over x, morphisms the vmors over e_x. Indices follow E.
struct ObjectFiber {
  CatRef cat;
  std::vector<int> obj_global, mor_global;
};

// P^{-1}u: objects the vmors over u; a morphism u_ -> w_ is a pair (s, s') of fiber
// morphisms with w_•s = s'•u_. `w` carries the projections to P^{-1}x x P^{-1}x'.
struct VerticalFiber {
  CatRef cat;
  std::vector<int> obj_vmor;
  std::map<std::array<int, 4>, int> mor_index;  // (source, target, s, s') -> morphism
  TwoSidedFibWitness w;
};

struct FiberData {
  std::vector<ObjectFiber> obj;
  std::vector<VerticalFiber> vmor;
  std::vector<int> obj_local;   // E object -> index in its fiber
  std::vector<int> vmor_local;  // E vmor -> index among the vmors over the same base vmor
  std::vector<std::vector<int>> over;  // base vmor -> E vmors over it
};

FiberData fibers(const DiscreteDoubleFibration& d);
ObjectFiber fiber_object(const DiscreteDoubleFibration& d, int x);
VerticalFiber fiber_vertical(const DiscreteDoubleFibration& d, int u);

// f* : P^{-1}y -> P^{-1}x and α* : P^{-1}v -> P^{-1}u, read off the lift tables.
FunctorRef hmor_action(const DiscreteDoubleFibration& d, const FiberData& fd, int f);
FunctorRef square_action(const DiscreteDoubleFibration& d, const FiberData& fd, int a);

struct DdelResult {
  PshRef psh;
  FiberData fibers;
};

DdelResult ddel(const DiscreteDoubleFibration& d);
// F : E1 -> E2 over the base.
HTransRef ddel_morphism(const DdelResult& a, const DdelResult& b, const DoubleFunctor& f);
// A : F => G over the base (every component over a vertical identity).
ModRef ddel_2morphism(const DdelResult& a, const DdelResult& b, const VerticalTransformation& t);

// Φ(x̂_) : C/Px̂_ -> E. `slice_base` must be slice(C, Px̂_).
DFunRef phi_fibrational(const DiscreteDoubleFibration& d, const SliceResult& slice_base, int xh_);

struct IsoReport {
  DFunRef comparison;  // P_{/x̂_} : E/x̂_ -> C/Px̂_
  DFunRef inverse;     // built from lifts
  bool ver0_bijective = false;
  bool is_iso = false;
  ValidationReport checks;
};

IsoReport slice_comparison(const DiscreteDoubleFibration& d, int xh_);

}  // namespace dc
