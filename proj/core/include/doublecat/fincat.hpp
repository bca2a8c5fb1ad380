#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "doublecat/report.hpp"

namespace dc {

// Finite category with a dense composition table.
// comp[g * n_mor + f] is g∘f, or -1 when tgt f != src g.
struct FinCat {
  std::vector<std::string> obj_names;
  std::vector<std::string> mor_names;
  std::vector<int> src, tgt;
  std::vector<int> ident;
  std::vector<int> comp;

  int n_obj() const { return static_cast<int>(obj_names.size()); }
  int n_mor() const { return static_cast<int>(mor_names.size()); }
  int compose(int g, int f) const { return comp[static_cast<std::size_t>(g) * mor_names.size() + f]; }
  bool is_identity(int m) const { return ident[src[m]] == m; }
  std::vector<int> hom(int a, int b) const;
  int find_obj(std::string_view name) const;
  int find_mor(std::string_view name) const;

  bool operator==(const FinCat&) const = default;
};
using CatRef = std::shared_ptr<const FinCat>;

bool same_cat(const CatRef& a, const CatRef& b);

// Incremental construction. Each object gets an identity morphism named by
// `identity_name` unless one is supplied; unit composites are filled on build().
class CatBuilder {
 public:
  int object(std::string name, std::string identity_name = {});
  int morphism(std::string name, int s, int t);
  void set_comp(int g, int f, int h);
  int n_obj() const { return static_cast<int>(c_.obj_names.size()); }
  int n_mor() const { return static_cast<int>(c_.mor_names.size()); }
  FinCat build();

 private:
  FinCat c_;
  std::vector<std::array<int, 3>> entries_;
};

FinCat terminal_category();
FinCat discrete_category(int n);
FinCat walking_arrow();
FinCat walking_iso();
FinCat product_category(const FinCat& a, const FinCat& b);
FinCat arrow_category(const FinCat& c);

ValidationReport validate_category(const FinCat& c, std::size_t cap = 64);

struct FinFunctor {
  CatRef source, target;
  std::vector<int> obj_map, mor_map;

  bool operator==(const FinFunctor& o) const;
};
using FunctorRef = std::shared_ptr<const FinFunctor>;

FunctorRef identity_functor(const CatRef& c);
FunctorRef compose_functors(const FunctorRef& g, const FunctorRef& f);  // g∘f
bool same_functor(const FunctorRef& a, const FunctorRef& b);
bool is_isomorphism(const FinFunctor& f);
ValidationReport validate_functor(const FinFunctor& f, std::size_t cap = 64);

struct NatTrans {
  FunctorRef source, target;
  std::vector<int> comp;  // object of source category -> morphism of target category
};
using NatTransRef = std::shared_ptr<const NatTrans>;

NatTransRef identity_nat_trans(const FunctorRef& f);
ValidationReport validate_nat_trans(const NatTrans& a, std::size_t cap = 64);

// U : C -/-> C', i.e. a functor C^op x C' -> Set. Elements carry their cell (x, x').
// lact[f * N + e] is U(f, x')(e) for f : a -> x with e in U(x, x');
// ract[f' * N + e] is U(x, f')(e) for f' : x' -> b.
struct Profunctor {
  CatRef src, tgt;
  std::vector<std::string> elem_names;
  std::vector<int> elem_x, elem_y;
  std::vector<int> lact, ract;
  bool identity = false;
  std::vector<std::vector<int>> cells;  // derived, see index_cells()

  int n_elem() const { return static_cast<int>(elem_names.size()); }
  int left(int f, int e) const { return lact[static_cast<std::size_t>(f) * elem_names.size() + e]; }
  int right(int f, int e) const { return ract[static_cast<std::size_t>(f) * elem_names.size() + e]; }
  int act(int f, int fp, int e) const;
  const std::vector<int>& at(int x, int xp) const { return cells[static_cast<std::size_t>(x) * tgt->n_obj() + xp]; }
  void index_cells();

  bool operator==(const Profunctor& o) const;
};
using ProfRef = std::shared_ptr<const Profunctor>;

bool same_prof(const ProfRef& a, const ProfRef& b);

ProfRef identity_profunctor(const CatRef& c);
// Empty-action skeleton for a profunctor with the given elements; tables are -1.
Profunctor profunctor_shell(CatRef c, CatRef cp, std::vector<std::string> names,
                            std::vector<int> ex, std::vector<int> ey);
ValidationReport validate_profunctor(const Profunctor& u, std::size_t cap = 64);

// A map U(x,x') -> V(Fx, F'x'); plain natural transformations use identity functors.
struct ProfMorphism {
  ProfRef source, target;
  FunctorRef F, Fp;
  std::vector<int> map;

  bool operator==(const ProfMorphism& o) const;
};
using ProfMorRef = std::shared_ptr<const ProfMorphism>;

ProfMorRef identity_prof_morphism(const ProfRef& u);
ValidationReport validate_prof_morphism(const ProfMorphism& m, std::size_t cap = 64);
bool is_componentwise_bijection(const ProfMorphism& m);

struct CoendResult {
  std::vector<std::pair<int, int>> section;  // class -> (object, element)
  std::vector<int> project;                  // element -> class, -1 off the diagonal
  int n_classes() const { return static_cast<int>(section.size()); }
};

CoendResult coend(const FinCat& c, const Profunctor& u);

// V ∙ U for U : C -/-> C' and V : C' -/-> C''. Elements of `result` are classes of
// pairs (v, u); `rep` is the smallest (x', v, u) in each class.
struct Composite {
  enum class Unit { None, First, Second };
  ProfRef first, second, result;
  Unit unit = Unit::None;
  std::vector<std::array<int, 2>> rep;
  std::unordered_map<std::int64_t, int> cls;

  int class_of(int ve, int ue) const;
};
using CompositeRef = std::shared_ptr<const Composite>;

CompositeRef compose(const ProfRef& u, const ProfRef& v);
ProfRef compose_profunctors(const ProfRef& u, const ProfRef& v);

// Both bracketings of W ∙ V ∙ U against the quotient of the un-bracketed triples.
ValidationReport check_composite_associativity(const ProfRef& u, const ProfRef& v, const ProfRef& w);

// Two-sided discrete fibrations (P, Q) : E -> C x C'.
struct TwoSidedFibWitness {
  FunctorRef p, q;
  std::vector<int> liftP;  // [e * |mor C| + f], f : a -> Pe; lift has target e and Q-image 1
  std::vector<int> liftQ;  // [e * |mor C'| + f'], f' : Qe -> b; lift has source e and P-image 1

  const FinCat& total() const { return *p->source; }
  int lift_p(int e, int f) const { return liftP[static_cast<std::size_t>(e) * p->target->n_mor() + f]; }
  int lift_q(int e, int f) const { return liftQ[static_cast<std::size_t>(e) * q->target->n_mor() + f]; }
};

struct TSFibResult {
  std::optional<TwoSidedFibWitness> witness;
  ValidationReport failure;
};

// Throws std::invalid_argument when p and q have different sources.
TSFibResult check_two_sided_fibration(const FunctorRef& p, const FunctorRef& q);
ProfRef fib(const TwoSidedFibWitness& w);
// Two-sided category of elements of U with its projections.
TwoSidedFibWitness elements_fibration(const ProfRef& u);
// (s, t) : C^[1] -> C x C.
TwoSidedFibWitness arrow_fibration(const CatRef& c);
TwoSidedFibWitness compose_ts_fibrations(const TwoSidedFibWitness& w1, const TwoSidedFibWitness& w2);

// Canonical comparison fib(w2 ∙ w1) -> fib(w2) ∙ fib(w1); empty report iff it is a natural bijection.
ValidationReport check_fib_composition(const TwoSidedFibWitness& w1, const TwoSidedFibWitness& w2);

}  // namespace dc
