#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "doublecat/fincat.hpp"

namespace dc {

// Finite strict double category.
// A square α : u[f,f']v has left edge u, top f, bottom f', right edge v.
// hcomp_sq[b * ns + a] is b∘a (a to the left of b); vcomp_sq[b * ns + a] is b•a (a above b).
// Every table uses -1 for non-composable pairs.
struct DoubleCat {
  std::vector<std::string> obj_names, hmor_names, vmor_names, sq_names;
  std::vector<int> hsrc, htgt;
  std::vector<int> vsrc, vtgt;
  std::vector<int> sq_left, sq_right, sq_top, sq_bot;
  std::vector<int> hid, vid;  // object -> 1_x, e_x
  std::vector<int> hid_sq;    // vmor -> 1_u
  std::vector<int> vid_sq;    // hmor -> e_f
  std::vector<int> hcomp, vcomp, hcomp_sq, vcomp_sq;

  int n_obj() const { return static_cast<int>(obj_names.size()); }
  int n_hmor() const { return static_cast<int>(hmor_names.size()); }
  int n_vmor() const { return static_cast<int>(vmor_names.size()); }
  int n_sq() const { return static_cast<int>(sq_names.size()); }

  int hc(int g, int f) const { return hcomp[static_cast<std::size_t>(g) * hmor_names.size() + f]; }
  int vc(int v, int u) const { return vcomp[static_cast<std::size_t>(v) * vmor_names.size() + u]; }
  int hc_sq(int b, int a) const { return hcomp_sq[static_cast<std::size_t>(b) * sq_names.size() + a]; }
  int vc_sq(int b, int a) const { return vcomp_sq[static_cast<std::size_t>(b) * sq_names.size() + a]; }

  bool is_hid(int f) const { return hid[hsrc[f]] == f; }
  bool is_vid(int u) const { return vid[vsrc[u]] == u; }

  // Allocates every composition table at the current sizes, filled with -1.
  void reset_tables();

  int find_obj(std::string_view n) const;
  int find_hmor(std::string_view n) const;
  int find_vmor(std::string_view n) const;
  int find_sq(std::string_view n) const;

  bool operator==(const DoubleCat&) const = default;
};
using DblRef = std::shared_ptr<const DoubleCat>;

// Identity cells are created with each object / morphism: 1_x, e_x and the shared square
// 1_e_x for an object; e_f for an hmor; 1_u for a vmor. Unit composites are filled on
// build(), as are e_g∘e_f and 1_v•1_u wherever no entry was given explicitly.
class DoubleCatBuilder {
 public:
  int object(std::string name);
  int hmor(std::string name, int s, int t);
  int vmor(std::string name, int s, int t);
  int square(std::string name, int left, int top, int bottom, int right);

  void set_hcomp(int g, int f, int h) { hc_.push_back({g, f, h}); }
  void set_vcomp(int v, int u, int w) { vc_.push_back({v, u, w}); }
  void set_hcomp_sq(int b, int a, int c) { hs_.push_back({b, a, c}); }
  void set_vcomp_sq(int b, int a, int c) { vs_.push_back({b, a, c}); }

  const DoubleCat& peek() const { return d_; }
  DoubleCat build() const;

 private:
  DoubleCat d_;
  std::vector<std::array<int, 3>> hc_, vc_, hs_, vs_;
};

ValidationReport validate_double_category(const DoubleCat& d, std::size_t cap = 64);

enum class Which { Ver0, Ver1, Hor0 };
FinCat underlying(const DoubleCat& d, Which which);

// Squares as horizontal morphisms between vertical morphisms (composition ∘).
FinCat square_category_horizontal(const DoubleCat& d);

DoubleCat horizontal_opposite(const DoubleCat& d);

enum class Direction { Vertical, Horizontal };
DoubleCat embed(const FinCat& c, Direction dir);

struct DoubleFunctor {
  DblRef source, target;
  std::vector<int> obj, hmor, vmor, sq;

  bool operator==(const DoubleFunctor& o) const;
};
using DFunRef = std::shared_ptr<const DoubleFunctor>;

DFunRef identity_double_functor(const DblRef& d);
DFunRef compose_double_functors(const DFunRef& g, const DFunRef& f);  // g after f
ValidationReport validate_double_functor(const DoubleFunctor& f, std::size_t cap = 64);
bool is_double_isomorphism(const DoubleFunctor& f);

// A : F => G. obj_vmor[x] : Fx -> Gx; hmor_sq[f] : A_x[Ff, Gf]A_y.
struct VerticalTransformation {
  DFunRef source, target;
  std::vector<int> obj_vmor, hmor_sq;
};
using VTransRef = std::shared_ptr<const VerticalTransformation>;

VTransRef identity_vertical_transformation(const DFunRef& f);
ValidationReport validate_vertical_transformation(const VerticalTransformation& a, std::size_t cap = 64);

// ℂ(x, x̂): hmors x -> x̂ and globular squares between them under vertical composition.
struct HomCat {
  CatRef cat;
  int x = -1, xh = -1;
  std::vector<int> obj_hmor, mor_sq;  // local -> global
  std::vector<int> hmor_obj, sq_mor;  // global -> local or -1
};

HomCat hom_category(const DoubleCat& d, int x, int xh);

// Squares with the given vertical edges, in index order.
std::vector<int> squares_between(const DoubleCat& d, int left, int right);

// ℂ(u, û) : ℂ(x, x̂) -/-> ℂ(x', x̂'). Elements are the squares u[g,g']û.
ProfRef hom_profunctor(const DoubleCat& d, int u, int uh, const HomCat& s, const HomCat& t);
ProfRef hom_profunctor(const DoubleCat& d, int u, int uh);

// ℂ(f, f̂) : ℂ(y, ẑ) -> ℂ(x, ŵ) for f : x -> y, f̂ : ẑ -> ŵ; g |-> f̂∘g∘f.
FunctorRef hom_functor(const DoubleCat& d, int f, int fh, const HomCat& s, const HomCat& t);

// ℂ(α, α̂) : ℂ(v, û) => ℂ(u, v̂) over ℂ(f, f̂) and ℂ(f', f̂'), η |-> α̂∘η∘α.
ProfMorRef hom_action(const DoubleCat& d, int a, int ah, const ProfRef& source, const ProfRef& target,
                      const FunctorRef& F, const FunctorRef& Fp);
ProfMorRef hom_action(const DoubleCat& d, int a, int ah);

// ℂ/x̂ with its projection; cell names are "(x,g)", "(f,h)", "(u,η)", "(α,θ)".
struct SliceResult {
  DblRef total;
  DFunRef proj;
  int xh = -1;
  std::vector<int> obj_g;                    // slice object -> hmor g into x̂
  std::vector<std::array<int, 2>> hmor_fh;   // (f, h)
  std::vector<std::array<int, 2>> vmor_ueta; // (u, η)
  std::vector<std::array<int, 2>> sq_atheta; // (α, θ)
};

SliceResult slice(const DblRef& d, int xh);

struct TerminalWitness {
  int obj = -1;
  std::vector<int> t;    // object -> t_x
  std::vector<int> tau;  // vmor -> τ_u
};

std::optional<TerminalWitness> double_terminal_at(const DoubleCat& d, int xh);
std::vector<TerminalWitness> double_terminal_objects(const DoubleCat& d);

// Backtracking isomorphism searches for desk-scale comparisons.
std::optional<FinFunctor> find_cat_isomorphism(const CatRef& a, const CatRef& b);
std::optional<DoubleFunctor> find_double_isomorphism(const DblRef& a, const DblRef& b);
// The bijection matching every cell of `a` with the same-named cell of `b`, if it is an
// isomorphism of double categories.
std::optional<DoubleFunctor> match_by_names(const DblRef& a, const DblRef& b);

}  // namespace dc
