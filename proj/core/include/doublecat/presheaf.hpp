#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "doublecat/dblcat.hpp"

namespace dc {

// μ_{u,u'} : Xu' ∙ Xu => X(u'•u). `map` sends elements of comp->result to elements of X(u'•u).
struct MuEntry {
  CompositeRef comp;
  std::vector<int> map;
};

// Normal lax double presheaf on `base`, i.e. a normal lax double functor base^op -> Cat.
// hmor[f] : X(tgt f) -> X(src f); vmor[u] : X(src u) -/-> X(tgt u);
// sq[α] for α : u[f,f']v is a morphism Xv => Xu over (Xf, Xf'); mu is indexed u * n_vmor + u'.
struct LaxDoublePresheaf {
  DblRef base;
  std::vector<CatRef> obj;
  std::vector<FunctorRef> hmor;
  std::vector<ProfRef> vmor;
  std::vector<ProfMorRef> sq;
  std::vector<std::optional<MuEntry>> mu;

  const MuEntry* mu_at(int u, int up) const;
  // μ_{u,u'}[ve, ue] for ve in Xu', ue in Xu; -1 when the pair is not composable.
  int mu_apply(int u, int up, int ve, int ue) const;
};
using PshRef = std::shared_ptr<const LaxDoublePresheaf>;

ValidationReport validate_presheaf(const LaxDoublePresheaf& x, std::size_t cap = 64);

// Builds μ at every composable pair from a rule on representatives; pairs involving an
// identity vmor get identities. `rule(u, u', ve, ue)` returns the element of X(u'•u).
template <class Rule>
void fill_mu(LaxDoublePresheaf& x, Rule&& rule);

struct HorizontalTransf {
  PshRef source, target;
  std::vector<FunctorRef> obj;
  std::vector<ProfMorRef> vmor;
};
using HTransRef = std::shared_ptr<const HorizontalTransf>;

ValidationReport validate_horizontal_transformation(const HorizontalTransf& f, std::size_t cap = 64);
HTransRef identity_transformation(const PshRef& x);
HTransRef compose_transformations(const HTransRef& g, const HTransRef& f);  // g after f
bool transformations_equal(const HorizontalTransf& a, const HorizontalTransf& b);
// Componentwise invertibility: every F_x an isomorphism, every F_u a componentwise bijection.
bool is_invertible(const HorizontalTransf& f);

struct GlobularModification {
  HTransRef source, target;
  std::vector<NatTransRef> obj;
};
using ModRef = std::shared_ptr<const GlobularModification>;

ValidationReport validate_modification(const GlobularModification& a, std::size_t cap = 64);
ModRef identity_modification(const HTransRef& f);
bool modifications_equal(const GlobularModification& a, const GlobularModification& b);
// G ∘ A and A ∘ F for horizontal transformations F, G.
ModRef whisker_left(const HTransRef& g, const ModRef& a);
ModRef whisker_right(const ModRef& a, const HTransRef& f);

// ℂ(−, x̂) together with the square behind every element.
struct Representable {
  PshRef psh;
  int xh = -1;
  std::vector<HomCat> homs;               // object -> ℂ(x, x̂)
  std::vector<std::vector<int>> elem_sq;  // vmor -> element -> square
  // Local object of 1_x̂ in ℂ(x̂, x̂).
  int identity_object() const;
};

Representable representable(const DblRef& d, int xh);
// ℂ(−, f̂) : ℂ(−, x̂) => ℂ(−, ŷ).
HTransRef representable_morphism(const Representable& src, const Representable& tgt, int fh);
// ℂ(−, α̂) for a globular α̂; throws std::invalid_argument otherwise.
ModRef representable_modification(const Representable& src, const Representable& tgt, int ah);

PshRef constant_presheaf(const DblRef& d, const CatRef& k);
PshRef product_presheaf(const PshRef& x, const PshRef& y);
PshRef coproduct_presheaf(const PshRef& x, const PshRef& y);

// Yoneda: Ψ evaluates at 1_x̂, Φ rebuilds the transformation from an object / morphism of Xx̂.
int yoneda_psi(const Representable& r, const HorizontalTransf& phi);
int yoneda_psi(const Representable& r, const GlobularModification& nu);
HTransRef yoneda_phi(const Representable& r, const PshRef& x, int a);
ModRef yoneda_phi(const Representable& r, const PshRef& x, const HTransRef& src, const HTransRef& tgt, int m);

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr long kDefaultBudget = 1'000'000;

std::vector<FinFunctor> enumerate_functors(const CatRef& a, const CatRef& b, long& budget);
std::vector<HTransRef> enumerate_transformations(const PshRef& x, const PshRef& y, long budget = kDefaultBudget);
std::vector<ModRef> enumerate_modifications(const HTransRef& f, const HTransRef& g, long budget = kDefaultBudget);

// Φ(a) is invertible.
bool is_represented_by(const Representable& r, const PshRef& x, int a);

// ---- implementation of the template helper ----

template <class Rule>
void fill_mu(LaxDoublePresheaf& x, Rule&& rule) {
  const DoubleCat& d = *x.base;
  const int nv = d.n_vmor();
  x.mu.assign(static_cast<std::size_t>(nv) * nv, std::nullopt);
  for (int u = 0; u < nv; ++u)
    for (int up = 0; up < nv; ++up) {
      if (d.vtgt[u] != d.vsrc[up]) continue;
      MuEntry m;
      m.comp = compose(x.vmor[u], x.vmor[up]);
      const Profunctor& res = *m.comp->result;
      if (d.is_vid(u) || d.is_vid(up)) {
        for (int e = 0; e < res.n_elem(); ++e) m.map.push_back(e);
      } else if (m.comp->unit == Composite::Unit::First) {
        // Xu is a hom profunctor: e ~ [e, 1]
        for (int e = 0; e < res.n_elem(); ++e) m.map.push_back(rule(u, up, e, x.vmor[u]->src->ident[res.elem_x[e]]));
      } else if (m.comp->unit == Composite::Unit::Second) {
        for (int e = 0; e < res.n_elem(); ++e) m.map.push_back(rule(u, up, x.vmor[up]->tgt->ident[res.elem_y[e]], e));
      } else {
        for (const auto& [ve, ue] : m.comp->rep) m.map.push_back(rule(u, up, ve, ue));
      }
      x.mu[static_cast<std::size_t>(u) * nv + up] = std::move(m);
    }
}

}  // namespace dc
