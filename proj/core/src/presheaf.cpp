#include "doublecat/presheaf.hpp"

#include <functional>

namespace dc {

namespace {

bool same_maps(const FinFunctor& a, const FinFunctor& b) { return a.obj_map == b.obj_map && a.mor_map == b.mor_map; }

bool same_base(const PshRef& x, const PshRef& y) { return x->base == y->base || *x->base == *y->base; }

}  // namespace

const MuEntry* LaxDoublePresheaf::mu_at(int u, int up) const {
  const std::size_t i = static_cast<std::size_t>(u) * base->n_vmor() + up;
  if (i >= mu.size() || !mu[i]) return nullptr;
  return &*mu[i];
}

int LaxDoublePresheaf::mu_apply(int u, int up, int ve, int ue) const {
  const MuEntry* m = mu_at(u, up);
  if (!m) return -1;
  int c = m->comp->class_of(ve, ue);
  return c < 0 ? -1 : m->map[c];
}

ValidationReport validate_presheaf(const LaxDoublePresheaf& X, std::size_t cap) {
  ValidationReport r(cap);
  if (!X.base) {
    r.add("shape", "missing base");
    return r;
  }
  const DoubleCat& d = *X.base;
  const int no = d.n_obj(), nh = d.n_hmor(), nv = d.n_vmor(), ns = d.n_sq();
  if (static_cast<int>(X.obj.size()) != no || static_cast<int>(X.hmor.size()) != nh ||
      static_cast<int>(X.vmor.size()) != nv || static_cast<int>(X.sq.size()) != ns ||
      X.mu.size() != static_cast<std::size_t>(nv) * nv) {
    r.add("shape", "assignment tables do not match the base");
    return r;
  }
  for (int x = 0; x < no; ++x) {
    if (!X.obj[x]) {
      r.add("shape", "no category at " + d.obj_names[x]);
      return r;
    }
    r.merge(validate_category(*X.obj[x], cap), "X(" + d.obj_names[x] + "): ");
  }
  if (!r.ok()) return r;
  for (int f = 0; f < nh; ++f) {
    const auto& F = X.hmor[f];
    if (!F || !same_cat(F->source, X.obj[d.htgt[f]]) || !same_cat(F->target, X.obj[d.hsrc[f]])) {
      r.add("hmor boundary", "X(" + d.hmor_names[f] + ") is not a functor X(tgt) -> X(src)");
      continue;
    }
    r.merge(validate_functor(*F, cap), "X(" + d.hmor_names[f] + "): ");
  }
  for (int u = 0; u < nv; ++u) {
    const auto& U = X.vmor[u];
    if (!U || !same_cat(U->src, X.obj[d.vsrc[u]]) || !same_cat(U->tgt, X.obj[d.vtgt[u]])) {
      r.add("vmor boundary", "X(" + d.vmor_names[u] + ") has the wrong boundary categories");
      continue;
    }
    r.merge(validate_profunctor(*U, cap), "X(" + d.vmor_names[u] + "): ");
  }
  if (!r.ok()) return r;
  for (int x = 0; x < no; ++x) {
    const FinFunctor& F = *X.hmor[d.hid[x]];
    bool id = true;
    for (int i = 0; i < static_cast<int>(F.obj_map.size()); ++i) id = id && F.obj_map[i] == i;
    for (int i = 0; i < static_cast<int>(F.mor_map.size()); ++i) id = id && F.mor_map[i] == i;
    if (!id) r.add("horizontal identity", "X(1_" + d.obj_names[x] + ") is not the identity functor");
    if (!X.vmor[d.vid[x]]->identity) r.add("normality", "X(e_" + d.obj_names[x] + ") is not the identity profunctor");
  }
  for (int g = 0; g < nh; ++g)
    for (int f = 0; f < nh; ++f) {
      int h = d.hc(g, f);
      if (h < 0) continue;
      auto c = compose_functors(X.hmor[f], X.hmor[g]);
      if (!same_maps(*c, *X.hmor[h]))
        r.add("horizontal composition", "X(" + d.hmor_names[g] + "∘" + d.hmor_names[f] + ") != Xf∘Xg");
    }
  if (r.stop()) return r;
  bool sq_ok = true;
  for (int a = 0; a < ns; ++a) {
    const auto& A = X.sq[a];
    if (!A || !same_prof(A->source, X.vmor[d.sq_right[a]]) || !same_prof(A->target, X.vmor[d.sq_left[a]]) ||
        !same_functor(A->F, X.hmor[d.sq_top[a]]) || !same_functor(A->Fp, X.hmor[d.sq_bot[a]])) {
      r.add("square boundary", "X(" + d.sq_names[a] + ") has the wrong boundary");
      sq_ok = false;
      continue;
    }
    auto sub = validate_prof_morphism(*A, cap);
    if (!sub.ok()) sq_ok = false;
    r.merge(sub, "X(" + d.sq_names[a] + "): ");
  }
  if (!sq_ok) return r;
  for (int u = 0; u < nv; ++u) {
    const auto& m = X.sq[d.hid_sq[u]]->map;
    for (int e = 0; e < static_cast<int>(m.size()); ++e)
      if (m[e] != e) {
        r.add("horizontal identity square", "X(1_" + d.vmor_names[u] + ") moves " + X.vmor[u]->elem_names[e]);
        break;
      }
  }
  for (int f = 0; f < nh; ++f)
    if (X.sq[d.vid_sq[f]]->map != X.hmor[f]->mor_map)
      r.add("normality", "X(e_" + d.hmor_names[f] + ") differs from X(" + d.hmor_names[f] + ") on morphisms");
  for (int b = 0; b < ns; ++b)
    for (int a = 0; a < ns; ++a) {
      int c = d.hc_sq(b, a);
      if (c < 0) continue;
      const auto& mb = X.sq[b]->map;
      const auto& ma = X.sq[a]->map;
      const auto& mc = X.sq[c]->map;
      for (int e = 0; e < static_cast<int>(mc.size()); ++e)
        if (mc[e] != ma[mb[e]]) {
          r.add("horizontal square composition", "X(" + d.sq_names[b] + "∘" + d.sq_names[a] + ")");
          break;
        }
      if (r.stop()) return r;
    }
  if (!r.ok()) return r;
  // μ: presence, boundaries, cells, naturality, units
  bool mu_ok = true;
  for (int u = 0; u < nv; ++u)
    for (int up = 0; up < nv; ++up) {
      const std::string pair = "(" + d.vmor_names[u] + "," + d.vmor_names[up] + ")";
      const auto& slot = X.mu[static_cast<std::size_t>(u) * nv + up];
      if (d.vtgt[u] != d.vsrc[up]) {
        if (slot) {
          r.add("μ domain", "μ given at non-composable pair " + pair);
          mu_ok = false;
        }
        continue;
      }
      if (!slot || !slot->comp || !same_prof(slot->comp->first, X.vmor[u]) ||
          !same_prof(slot->comp->second, X.vmor[up])) {
        r.add("μ domain", "μ missing or built from the wrong profunctors at " + pair);
        mu_ok = false;
        continue;
      }
      const Profunctor& C = *slot->comp->result;
      const Profunctor& W = *X.vmor[d.vc(up, u)];
      if (static_cast<int>(slot->map.size()) != C.n_elem()) {
        r.add("μ shape", "wrong size at " + pair);
        mu_ok = false;
        continue;
      }
      bool cells = true;
      for (int e = 0; e < C.n_elem(); ++e) {
        int w = slot->map[e];
        if (w < 0 || w >= W.n_elem() || W.elem_x[w] != C.elem_x[e] || W.elem_y[w] != C.elem_y[e]) {
          r.add("μ cell", "μ" + pair + " sends " + C.elem_names[e] + " to the wrong cell");
          cells = false;
          mu_ok = false;
          break;
        }
      }
      if (!cells) continue;
      const FinCat& A = *C.src;
      const FinCat& B = *C.tgt;
      for (int e = 0; e < C.n_elem() && !r.stop(); ++e) {
        for (int f = 0; f < A.n_mor(); ++f)
          if (A.tgt[f] == C.elem_x[e] && slot->map[C.left(f, e)] != W.left(f, slot->map[e])) {
            r.add("μ naturality", "μ" + pair + " against " + A.mor_names[f] + " at " + C.elem_names[e]);
            mu_ok = false;
          }
        for (int f = 0; f < B.n_mor(); ++f)
          if (B.src[f] == C.elem_y[e] && slot->map[C.right(f, e)] != W.right(f, slot->map[e])) {
            r.add("μ naturality", "μ" + pair + " against " + B.mor_names[f] + " at " + C.elem_names[e]);
            mu_ok = false;
          }
      }
      if (d.is_vid(u) || d.is_vid(up)) {
        // strict unit: the composite is Xu' (resp. Xu) itself and μ must be the identity
        for (int e = 0; e < C.n_elem(); ++e)
          if (slot->map[e] != e) {
            r.add("μ unit", "μ" + pair + " is not the identity");
            mu_ok = false;
            break;
          }
      }
    }
  if (!mu_ok || r.stop()) return r;
  // μ natural in squares: X(α'•α)(μ_{v,v'}[b',b]) = μ_{u,u'}[Xα' b', Xα b]
  for (int a = 0; a < ns; ++a)
    for (int ap = 0; ap < ns; ++ap) {
      int c = d.vc_sq(ap, a);
      if (c < 0) continue;
      const int u = d.sq_left[a], v = d.sq_right[a], up = d.sq_left[ap], vp = d.sq_right[ap];
      const Profunctor& V = *X.vmor[v];
      const Profunctor& Vp = *X.vmor[vp];
      for (int b = 0; b < V.n_elem(); ++b)
        for (int z = 0; z < Vp.tgt->n_obj(); ++z)
          for (int bp : Vp.at(V.elem_y[b], z)) {
            int lhs = X.sq[c]->map[X.mu_apply(v, vp, bp, b)];
            int rhs = X.mu_apply(u, up, X.sq[ap]->map[bp], X.sq[a]->map[b]);
            if (lhs != rhs) {
              r.add("μ naturality in squares",
                    d.sq_names[ap] + "•" + d.sq_names[a] + " at [" + Vp.elem_names[bp] + "," + V.elem_names[b] + "]");
              if (r.stop()) return r;
            }
          }
    }
  // associativity of μ on triples
  for (int u = 0; u < nv; ++u)
    for (int up = 0; up < nv; ++up) {
      if (d.vtgt[u] != d.vsrc[up]) continue;
      for (int upp = 0; upp < nv; ++upp) {
        if (d.vtgt[up] != d.vsrc[upp]) continue;
        const Profunctor& U = *X.vmor[u];
        const Profunctor& Up = *X.vmor[up];
        const Profunctor& Upp = *X.vmor[upp];
        const int w1 = d.vc(up, u), w2 = d.vc(upp, up);
        for (int e = 0; e < U.n_elem(); ++e)
          for (int y = 0; y < Up.tgt->n_obj(); ++y)
            for (int ep : Up.at(U.elem_y[e], y))
              for (int z = 0; z < Upp.tgt->n_obj(); ++z)
                for (int epp : Upp.at(y, z)) {
                  int lhs = X.mu_apply(w1, upp, epp, X.mu_apply(u, up, ep, e));
                  int rhs = X.mu_apply(u, w2, X.mu_apply(up, upp, epp, ep), e);
                  if (lhs != rhs || lhs < 0) {
                    r.add("μ associativity", "(" + d.vmor_names[u] + "," + d.vmor_names[up] + "," +
                                                 d.vmor_names[upp] + ") at [" + Upp.elem_names[epp] + "," +
                                                 Up.elem_names[ep] + "," + U.elem_names[e] + "]");
                    if (r.stop()) return r;
                  }
                }
      }
    }
  return r;
}

ValidationReport validate_horizontal_transformation(const HorizontalTransf& F, std::size_t cap) {
  ValidationReport r(cap);
  if (!F.source || !F.target || !same_base(F.source, F.target)) {
    r.add("boundary", "source and target presheaves live over different bases");
    return r;
  }
  const LaxDoublePresheaf& X = *F.source;
  const LaxDoublePresheaf& Y = *F.target;
  const DoubleCat& d = *X.base;
  if (static_cast<int>(F.obj.size()) != d.n_obj() || static_cast<int>(F.vmor.size()) != d.n_vmor()) {
    r.add("shape", "component tables do not match the base");
    return r;
  }
  for (int x = 0; x < d.n_obj(); ++x) {
    const auto& Fx = F.obj[x];
    if (!Fx || !same_cat(Fx->source, X.obj[x]) || !same_cat(Fx->target, Y.obj[x])) {
      r.add("component boundary", "F_" + d.obj_names[x] + " is not a functor Xx -> Yx");
      return r;
    }
    r.merge(validate_functor(*Fx, cap), "F_" + d.obj_names[x] + ": ");
  }
  if (!r.ok()) return r;
  for (int u = 0; u < d.n_vmor(); ++u) {
    const auto& Fu = F.vmor[u];
    if (!Fu || !same_prof(Fu->source, X.vmor[u]) || !same_prof(Fu->target, Y.vmor[u]) ||
        !same_functor(Fu->F, F.obj[d.vsrc[u]]) || !same_functor(Fu->Fp, F.obj[d.vtgt[u]])) {
      r.add("component boundary", "F_" + d.vmor_names[u] + " has the wrong boundary");
      return r;
    }
    r.merge(validate_prof_morphism(*Fu, cap), "F_" + d.vmor_names[u] + ": ");
  }
  if (!r.ok()) return r;
  // (1)
  for (int f = 0; f < d.n_hmor(); ++f) {
    auto lhs = compose_functors(Y.hmor[f], F.obj[d.htgt[f]]);
    auto rhs = compose_functors(F.obj[d.hsrc[f]], X.hmor[f]);
    if (!same_maps(*lhs, *rhs)) r.add("naturality in x", "Yf∘F_y != F_x∘Xf at " + d.hmor_names[f]);
  }
  // (2)
  for (int a = 0; a < d.n_sq(); ++a) {
    const int u = d.sq_left[a], v = d.sq_right[a];
    for (int e = 0; e < X.vmor[v]->n_elem(); ++e)
      if (Y.sq[a]->map[F.vmor[v]->map[e]] != F.vmor[u]->map[X.sq[a]->map[e]]) {
        r.add("naturality in u", "at " + d.sq_names[a] + ", element " + X.vmor[v]->elem_names[e]);
        break;
      }
  }
  if (r.stop()) return r;
  // (3)
  for (int u = 0; u < d.n_vmor(); ++u)
    for (int up = 0; up < d.n_vmor(); ++up) {
      if (d.vtgt[u] != d.vsrc[up]) continue;
      const Profunctor& U = *X.vmor[u];
      const Profunctor& Up = *X.vmor[up];
      const auto& Fw = *F.vmor[d.vc(up, u)];
      for (int ue = 0; ue < U.n_elem(); ++ue)
        for (int z = 0; z < Up.tgt->n_obj(); ++z)
          for (int ve : Up.at(U.elem_y[ue], z)) {
            int lhs = Fw.map[X.mu_apply(u, up, ve, ue)];
            int rhs = Y.mu_apply(u, up, F.vmor[up]->map[ve], F.vmor[u]->map[ue]);
            if (lhs != rhs) {
              r.add("μ compatibility", "(" + d.vmor_names[u] + "," + d.vmor_names[up] + ") at [" + Up.elem_names[ve] +
                                           "," + U.elem_names[ue] + "]");
              if (r.stop()) return r;
            }
          }
    }
  // (4)
  for (int x = 0; x < d.n_obj(); ++x)
    if (F.vmor[d.vid[x]]->map != F.obj[x]->mor_map)
      r.add("vertical identity", "F_e != F on morphisms at " + d.obj_names[x]);
  return r;
}

HTransRef identity_transformation(const PshRef& x) {
  auto t = std::make_shared<HorizontalTransf>();
  t->source = t->target = x;
  const DoubleCat& d = *x->base;
  for (int i = 0; i < d.n_obj(); ++i) t->obj.push_back(identity_functor(x->obj[i]));
  for (int u = 0; u < d.n_vmor(); ++u) {
    auto m = std::make_shared<ProfMorphism>();
    m->source = m->target = x->vmor[u];
    m->F = t->obj[d.vsrc[u]];
    m->Fp = t->obj[d.vtgt[u]];
    for (int e = 0; e < x->vmor[u]->n_elem(); ++e) m->map.push_back(e);
    t->vmor.push_back(m);
  }
  return t;
}

HTransRef compose_transformations(const HTransRef& g, const HTransRef& f) {
  auto t = std::make_shared<HorizontalTransf>();
  t->source = f->source;
  t->target = g->target;
  const DoubleCat& d = *f->source->base;
  for (int x = 0; x < d.n_obj(); ++x) t->obj.push_back(compose_functors(g->obj[x], f->obj[x]));
  for (int u = 0; u < d.n_vmor(); ++u) {
    auto m = std::make_shared<ProfMorphism>();
    m->source = f->vmor[u]->source;
    m->target = g->vmor[u]->target;
    m->F = t->obj[d.vsrc[u]];
    m->Fp = t->obj[d.vtgt[u]];
    for (int e : f->vmor[u]->map) m->map.push_back(g->vmor[u]->map[e]);
    t->vmor.push_back(m);
  }
  return t;
}

bool transformations_equal(const HorizontalTransf& a, const HorizontalTransf& b) {
  if (a.obj.size() != b.obj.size() || a.vmor.size() != b.vmor.size()) return false;
  for (std::size_t i = 0; i < a.obj.size(); ++i)
    if (!same_maps(*a.obj[i], *b.obj[i])) return false;
  for (std::size_t i = 0; i < a.vmor.size(); ++i)
    if (a.vmor[i]->map != b.vmor[i]->map) return false;
  return true;
}

bool is_invertible(const HorizontalTransf& f) {
  for (const auto& fx : f.obj)
    if (!is_isomorphism(*fx)) return false;
  for (const auto& fu : f.vmor)
    if (!is_componentwise_bijection(*fu)) return false;
  return true;
}

ValidationReport validate_modification(const GlobularModification& A, std::size_t cap) {
  ValidationReport r(cap);
  const HorizontalTransf& F = *A.source;
  const HorizontalTransf& G = *A.target;
  if (F.source != G.source || F.target != G.target) {
    r.add("boundary", "transformations are not parallel");
    return r;
  }
  const LaxDoublePresheaf& X = *F.source;
  const LaxDoublePresheaf& Y = *F.target;
  const DoubleCat& d = *X.base;
  if (static_cast<int>(A.obj.size()) != d.n_obj()) {
    r.add("shape", "component count does not match objects");
    return r;
  }
  for (int x = 0; x < d.n_obj(); ++x) {
    const auto& a = A.obj[x];
    if (!a || !same_functor(a->source, F.obj[x]) || !same_functor(a->target, G.obj[x])) {
      r.add("component boundary", "A_" + d.obj_names[x] + " is not F_x => G_x");
      return r;
    }
    r.merge(validate_nat_trans(*a, cap), "A_" + d.obj_names[x] + ": ");
  }
  if (!r.ok()) return r;
  for (int f = 0; f < d.n_hmor(); ++f) {
    const int x = d.hsrc[f], y = d.htgt[f];
    for (int a = 0; a < X.obj[y]->n_obj(); ++a)
      if (Y.hmor[f]->mor_map[A.obj[y]->comp[a]] != A.obj[x]->comp[X.hmor[f]->obj_map[a]]) {
        r.add("horizontal compatibility", "at " + d.hmor_names[f] + ", object " + X.obj[y]->obj_names[a]);
        break;
      }
  }
  for (int u = 0; u < d.n_vmor(); ++u) {
    const Profunctor& U = *X.vmor[u];
    const Profunctor& V = *Y.vmor[u];
    const int x = d.vsrc[u], xp = d.vtgt[u];
    for (int e = 0; e < U.n_elem(); ++e) {
      int lhs = V.right(A.obj[xp]->comp[U.elem_y[e]], F.vmor[u]->map[e]);
      int rhs = V.left(A.obj[x]->comp[U.elem_x[e]], G.vmor[u]->map[e]);
      if (lhs != rhs) {
        r.add("vertical compatibility", "at " + d.vmor_names[u] + ", element " + U.elem_names[e]);
        break;
      }
    }
  }
  return r;
}

ModRef identity_modification(const HTransRef& f) {
  auto m = std::make_shared<GlobularModification>();
  m->source = m->target = f;
  for (const auto& fx : f->obj) m->obj.push_back(identity_nat_trans(fx));
  return m;
}

bool modifications_equal(const GlobularModification& a, const GlobularModification& b) {
  if (a.obj.size() != b.obj.size()) return false;
  for (std::size_t i = 0; i < a.obj.size(); ++i)
    if (a.obj[i]->comp != b.obj[i]->comp) return false;
  return true;
}

ModRef whisker_left(const HTransRef& g, const ModRef& a) {
  auto m = std::make_shared<GlobularModification>();
  m->source = compose_transformations(g, a->source);
  m->target = compose_transformations(g, a->target);
  for (std::size_t x = 0; x < a->obj.size(); ++x) {
    auto t = std::make_shared<NatTrans>();
    t->source = m->source->obj[x];
    t->target = m->target->obj[x];
    for (int c : a->obj[x]->comp) t->comp.push_back(g->obj[x]->mor_map[c]);
    m->obj.push_back(t);
  }
  return m;
}

ModRef whisker_right(const ModRef& a, const HTransRef& f) {
  auto m = std::make_shared<GlobularModification>();
  m->source = compose_transformations(a->source, f);
  m->target = compose_transformations(a->target, f);
  for (std::size_t x = 0; x < a->obj.size(); ++x) {
    auto t = std::make_shared<NatTrans>();
    t->source = m->source->obj[x];
    t->target = m->target->obj[x];
    for (int w : f->obj[x]->obj_map) t->comp.push_back(a->obj[x]->comp[w]);
    m->obj.push_back(t);
  }
  return m;
}

int Representable::identity_object() const {
  const DoubleCat& d = *psh->base;
  return homs[xh].hmor_obj[d.hid[xh]];
}

Representable representable(const DblRef& dref, int xh) {
  const DoubleCat& d = *dref;
  Representable r;
  r.xh = xh;
  auto X = std::make_shared<LaxDoublePresheaf>();
  X->base = dref;
  for (int x = 0; x < d.n_obj(); ++x) {
    r.homs.push_back(hom_category(d, x, xh));
    X->obj.push_back(r.homs.back().cat);
  }
  const int exh = d.vid[xh];
  for (int f = 0; f < d.n_hmor(); ++f)
    X->hmor.push_back(hom_functor(d, f, d.hid[xh], r.homs[d.htgt[f]], r.homs[d.hsrc[f]]));
  for (int u = 0; u < d.n_vmor(); ++u) {
    X->vmor.push_back(hom_profunctor(d, u, exh, r.homs[d.vsrc[u]], r.homs[d.vtgt[u]]));
    r.elem_sq.push_back(squares_between(d, u, exh));
  }
  const int one = d.hid_sq[exh];
  for (int a = 0; a < d.n_sq(); ++a)
    X->sq.push_back(hom_action(d, a, one, X->vmor[d.sq_right[a]], X->vmor[d.sq_left[a]], X->hmor[d.sq_top[a]],
                               X->hmor[d.sq_bot[a]]));
  std::vector<std::vector<int>> sq_elem(d.n_vmor(), std::vector<int>(d.n_sq(), -1));
  for (int u = 0; u < d.n_vmor(); ++u)
    for (int i = 0; i < static_cast<int>(r.elem_sq[u].size()); ++i) sq_elem[u][r.elem_sq[u][i]] = i;
  fill_mu(*X, [&](int u, int up, int ve, int ue) {
    return sq_elem[d.vc(up, u)][d.vc_sq(r.elem_sq[up][ve], r.elem_sq[u][ue])];
  });
  r.psh = X;
  return r;
}

HTransRef representable_morphism(const Representable& src, const Representable& tgt, int fh) {
  const DoubleCat& d = *src.psh->base;
  if (d.hsrc[fh] != src.xh || d.htgt[fh] != tgt.xh)
    throw std::invalid_argument("representable_morphism: hmor does not connect the representing objects");
  auto t = std::make_shared<HorizontalTransf>();
  t->source = src.psh;
  t->target = tgt.psh;
  for (int x = 0; x < d.n_obj(); ++x) t->obj.push_back(hom_functor(d, d.hid[x], fh, src.homs[x], tgt.homs[x]));
  for (int u = 0; u < d.n_vmor(); ++u)
    t->vmor.push_back(hom_action(d, d.hid_sq[u], d.vid_sq[fh], src.psh->vmor[u], tgt.psh->vmor[u],
                                 t->obj[d.vsrc[u]], t->obj[d.vtgt[u]]));
  return t;
}

ModRef representable_modification(const Representable& src, const Representable& tgt, int ah) {
  const DoubleCat& d = *src.psh->base;
  if (d.sq_left[ah] != d.vid[src.xh] || d.sq_right[ah] != d.vid[tgt.xh])
    throw std::invalid_argument("representable_modification: square is not globular between the representing objects");
  auto m = std::make_shared<GlobularModification>();
  m->source = representable_morphism(src, tgt, d.sq_top[ah]);
  m->target = representable_morphism(src, tgt, d.sq_bot[ah]);
  for (int x = 0; x < d.n_obj(); ++x) {
    auto n = std::make_shared<NatTrans>();
    n->source = m->source->obj[x];
    n->target = m->target->obj[x];
    for (int g : src.homs[x].obj_hmor) n->comp.push_back(tgt.homs[x].sq_mor[d.hc_sq(ah, d.vid_sq[g])]);
    m->obj.push_back(n);
  }
  return m;
}

PshRef constant_presheaf(const DblRef& dref, const CatRef& k) {
  const DoubleCat& d = *dref;
  auto X = std::make_shared<LaxDoublePresheaf>();
  X->base = dref;
  auto idF = identity_functor(k);
  auto idP = identity_profunctor(k);
  auto idM = std::make_shared<ProfMorphism>();
  idM->source = idM->target = idP;
  idM->F = idM->Fp = idF;
  for (int e = 0; e < idP->n_elem(); ++e) idM->map.push_back(e);
  X->obj.assign(d.n_obj(), k);
  X->hmor.assign(d.n_hmor(), idF);
  X->vmor.assign(d.n_vmor(), idP);
  X->sq.assign(d.n_sq(), idM);
  fill_mu(*X, [&](int, int, int ve, int ue) { return k->compose(ve, ue); });
  return X;
}

namespace {

FunctorRef product_functor(const FunctorRef& f, const FunctorRef& g, const CatRef& s, const CatRef& t) {
  auto h = std::make_shared<FinFunctor>();
  h->source = s;
  h->target = t;
  const int nbo = g->target->n_obj(), nbm = g->target->n_mor();
  for (int a : f->obj_map)
    for (int b : g->obj_map) h->obj_map.push_back(a * nbo + b);
  for (int a : f->mor_map)
    for (int b : g->mor_map) h->mor_map.push_back(a * nbm + b);
  return h;
}

ProfRef product_profunctor(const Profunctor& p, const Profunctor& q, const CatRef& s, const CatRef& t) {
  const int np = p.n_elem(), nq = q.n_elem();
  std::vector<std::string> names;
  std::vector<int> ex, ey;
  const int qso = q.src->n_obj(), qto = q.tgt->n_obj();
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < nq; ++b) {
      names.push_back("(" + p.elem_names[a] + "," + q.elem_names[b] + ")");
      ex.push_back(p.elem_x[a] * qso + q.elem_x[b]);
      ey.push_back(p.elem_y[a] * qto + q.elem_y[b]);
    }
  Profunctor w = profunctor_shell(s, t, std::move(names), std::move(ex), std::move(ey));
  const std::size_t n = w.elem_names.size();
  const int qsm = q.src->n_mor(), qtm = q.tgt->n_mor();
  for (int m = 0; m < p.src->n_mor(); ++m)
    for (int k = 0; k < qsm; ++k)
      for (int a = 0; a < np; ++a)
        for (int b = 0; b < nq; ++b) {
          int l1 = p.left(m, a), l2 = q.left(k, b);
          if (l1 >= 0 && l2 >= 0) w.lact[static_cast<std::size_t>(m * qsm + k) * n + a * nq + b] = l1 * nq + l2;
        }
  for (int m = 0; m < p.tgt->n_mor(); ++m)
    for (int k = 0; k < qtm; ++k)
      for (int a = 0; a < np; ++a)
        for (int b = 0; b < nq; ++b) {
          int r1 = p.right(m, a), r2 = q.right(k, b);
          if (r1 >= 0 && r2 >= 0) w.ract[static_cast<std::size_t>(m * qtm + k) * n + a * nq + b] = r1 * nq + r2;
        }
  w.identity = p.identity && q.identity;
  return std::make_shared<Profunctor>(std::move(w));
}

FinCat coproduct_category(const FinCat& a, const FinCat& b) {
  FinCat c;
  const int ao = a.n_obj(), am = a.n_mor(), bm = b.n_mor();
  for (const auto& n : a.obj_names) c.obj_names.push_back("l:" + n);
  for (const auto& n : b.obj_names) c.obj_names.push_back("r:" + n);
  for (const auto& n : a.mor_names) c.mor_names.push_back("l:" + n);
  for (const auto& n : b.mor_names) c.mor_names.push_back("r:" + n);
  c.src = a.src;
  c.tgt = a.tgt;
  for (int m = 0; m < bm; ++m) {
    c.src.push_back(b.src[m] + ao);
    c.tgt.push_back(b.tgt[m] + ao);
  }
  c.ident = a.ident;
  for (int i : b.ident) c.ident.push_back(i + am);
  const std::size_t n = am + bm;
  c.comp.assign(n * n, -1);
  for (int g = 0; g < am; ++g)
    for (int f = 0; f < am; ++f) c.comp[g * n + f] = a.compose(g, f);
  for (int g = 0; g < bm; ++g)
    for (int f = 0; f < bm; ++f) {
      int h = b.compose(g, f);
      c.comp[(g + am) * n + f + am] = h < 0 ? -1 : h + am;
    }
  return c;
}

FunctorRef coproduct_functor(const FunctorRef& f, const FunctorRef& g, const CatRef& s, const CatRef& t) {
  auto h = std::make_shared<FinFunctor>();
  h->source = s;
  h->target = t;
  h->obj_map = f->obj_map;
  h->mor_map = f->mor_map;
  for (int b : g->obj_map) h->obj_map.push_back(b + f->target->n_obj());
  for (int b : g->mor_map) h->mor_map.push_back(b + f->target->n_mor());
  return h;
}

ProfRef coproduct_profunctor(const Profunctor& p, const Profunctor& q, const CatRef& s, const CatRef& t) {
  const int np = p.n_elem();
  std::vector<std::string> names;
  std::vector<int> ex = p.elem_x, ey = p.elem_y;
  for (const auto& n : p.elem_names) names.push_back("l:" + n);
  for (const auto& n : q.elem_names) names.push_back("r:" + n);
  for (int e = 0; e < q.n_elem(); ++e) {
    ex.push_back(q.elem_x[e] + p.src->n_obj());
    ey.push_back(q.elem_y[e] + p.tgt->n_obj());
  }
  Profunctor w = profunctor_shell(s, t, std::move(names), std::move(ex), std::move(ey));
  const std::size_t n = w.elem_names.size();
  const int psm = p.src->n_mor(), ptm = p.tgt->n_mor();
  for (int m = 0; m < psm; ++m)
    for (int e = 0; e < np; ++e) w.lact[m * n + e] = p.left(m, e);
  for (int m = 0; m < q.src->n_mor(); ++m)
    for (int e = 0; e < q.n_elem(); ++e) {
      int l = q.left(m, e);
      w.lact[(m + psm) * n + e + np] = l < 0 ? -1 : l + np;
    }
  for (int m = 0; m < ptm; ++m)
    for (int e = 0; e < np; ++e) w.ract[m * n + e] = p.right(m, e);
  for (int m = 0; m < q.tgt->n_mor(); ++m)
    for (int e = 0; e < q.n_elem(); ++e) {
      int l = q.right(m, e);
      w.ract[(m + ptm) * n + e + np] = l < 0 ? -1 : l + np;
    }
  w.identity = p.identity && q.identity;
  return std::make_shared<Profunctor>(std::move(w));
}

}  // namespace

PshRef product_presheaf(const PshRef& xr, const PshRef& yr) {
  if (!same_base(xr, yr)) throw std::invalid_argument("product_presheaf: different bases");
  const LaxDoublePresheaf& X = *xr;
  const LaxDoublePresheaf& Y = *yr;
  const DoubleCat& d = *X.base;
  auto P = std::make_shared<LaxDoublePresheaf>();
  P->base = X.base;
  for (int x = 0; x < d.n_obj(); ++x) P->obj.push_back(std::make_shared<FinCat>(product_category(*X.obj[x], *Y.obj[x])));
  for (int f = 0; f < d.n_hmor(); ++f)
    P->hmor.push_back(product_functor(X.hmor[f], Y.hmor[f], P->obj[d.htgt[f]], P->obj[d.hsrc[f]]));
  for (int u = 0; u < d.n_vmor(); ++u)
    P->vmor.push_back(product_profunctor(*X.vmor[u], *Y.vmor[u], P->obj[d.vsrc[u]], P->obj[d.vtgt[u]]));
  for (int a = 0; a < d.n_sq(); ++a) {
    auto m = std::make_shared<ProfMorphism>();
    m->source = P->vmor[d.sq_right[a]];
    m->target = P->vmor[d.sq_left[a]];
    m->F = P->hmor[d.sq_top[a]];
    m->Fp = P->hmor[d.sq_bot[a]];
    const int nq = Y.vmor[d.sq_right[a]]->n_elem(), nqt = Y.vmor[d.sq_left[a]]->n_elem();
    for (int e = 0; e < m->source->n_elem(); ++e)
      m->map.push_back(X.sq[a]->map[e / nq] * nqt + Y.sq[a]->map[e % nq]);
    P->sq.push_back(m);
  }
  fill_mu(*P, [&](int u, int up, int ve, int ue) {
    const int nq = Y.vmor[u]->n_elem(), nqp = Y.vmor[up]->n_elem();
    const int nw = Y.vmor[d.vc(up, u)]->n_elem();
    int a = X.mu_apply(u, up, ve / nqp, ue / nq);
    int b = Y.mu_apply(u, up, ve % nqp, ue % nq);
    return a * nw + b;
  });
  return P;
}

PshRef coproduct_presheaf(const PshRef& xr, const PshRef& yr) {
  if (!same_base(xr, yr)) throw std::invalid_argument("coproduct_presheaf: different bases");
  const LaxDoublePresheaf& X = *xr;
  const LaxDoublePresheaf& Y = *yr;
  const DoubleCat& d = *X.base;
  auto P = std::make_shared<LaxDoublePresheaf>();
  P->base = X.base;
  for (int x = 0; x < d.n_obj(); ++x)
    P->obj.push_back(std::make_shared<FinCat>(coproduct_category(*X.obj[x], *Y.obj[x])));
  for (int f = 0; f < d.n_hmor(); ++f)
    P->hmor.push_back(coproduct_functor(X.hmor[f], Y.hmor[f], P->obj[d.htgt[f]], P->obj[d.hsrc[f]]));
  for (int u = 0; u < d.n_vmor(); ++u)
    P->vmor.push_back(coproduct_profunctor(*X.vmor[u], *Y.vmor[u], P->obj[d.vsrc[u]], P->obj[d.vtgt[u]]));
  for (int a = 0; a < d.n_sq(); ++a) {
    auto m = std::make_shared<ProfMorphism>();
    m->source = P->vmor[d.sq_right[a]];
    m->target = P->vmor[d.sq_left[a]];
    m->F = P->hmor[d.sq_top[a]];
    m->Fp = P->hmor[d.sq_bot[a]];
    m->map = X.sq[a]->map;
    const int off = X.vmor[d.sq_left[a]]->n_elem();
    for (int e : Y.sq[a]->map) m->map.push_back(e + off);
    P->sq.push_back(m);
  }
  fill_mu(*P, [&](int u, int up, int ve, int ue) {
    const int np = X.vmor[u]->n_elem(), npp = X.vmor[up]->n_elem();
    const int nw = X.vmor[d.vc(up, u)]->n_elem();
    if (ue < np) return X.mu_apply(u, up, ve, ue);
    return Y.mu_apply(u, up, ve - npp, ue - np) + nw;
  });
  return P;
}

int yoneda_psi(const Representable& r, const HorizontalTransf& phi) {
  return phi.obj[r.xh]->obj_map[r.identity_object()];
}

int yoneda_psi(const Representable& r, const GlobularModification& nu) {
  return nu.obj[r.xh]->comp[r.identity_object()];
}

HTransRef yoneda_phi(const Representable& r, const PshRef& xr, int a) {
  const LaxDoublePresheaf& X = *xr;
  const DoubleCat& d = *X.base;
  const int ida = X.obj[r.xh]->ident[a];
  auto t = std::make_shared<HorizontalTransf>();
  t->source = r.psh;
  t->target = xr;
  for (int x = 0; x < d.n_obj(); ++x) {
    auto F = std::make_shared<FinFunctor>();
    F->source = r.homs[x].cat;
    F->target = X.obj[x];
    for (int g : r.homs[x].obj_hmor) F->obj_map.push_back(X.hmor[g]->obj_map[a]);
    for (int th : r.homs[x].mor_sq) F->mor_map.push_back(X.sq[th]->map[ida]);
    t->obj.push_back(F);
  }
  for (int u = 0; u < d.n_vmor(); ++u) {
    auto m = std::make_shared<ProfMorphism>();
    m->source = r.psh->vmor[u];
    m->target = X.vmor[u];
    m->F = t->obj[d.vsrc[u]];
    m->Fp = t->obj[d.vtgt[u]];
    for (int eta : r.elem_sq[u]) m->map.push_back(X.sq[eta]->map[ida]);
    t->vmor.push_back(m);
  }
  return t;
}

ModRef yoneda_phi(const Representable& r, const PshRef& xr, const HTransRef& src, const HTransRef& tgt, int m) {
  const LaxDoublePresheaf& X = *xr;
  const DoubleCat& d = *X.base;
  auto mod = std::make_shared<GlobularModification>();
  mod->source = src;
  mod->target = tgt;
  for (int x = 0; x < d.n_obj(); ++x) {
    auto n = std::make_shared<NatTrans>();
    n->source = src->obj[x];
    n->target = tgt->obj[x];
    for (int g : r.homs[x].obj_hmor) n->comp.push_back(X.hmor[g]->mor_map[m]);
    mod->obj.push_back(n);
  }
  return mod;
}

namespace {

void spend(long& budget) {
  if (--budget < 0) throw BudgetExceeded("enumeration budget exhausted");
}

// Enumerates maps e -> candidates(e) over indices 0..n-1, with `ok(k)` checking index k
// against the assigned prefix. Calls `emit` for every complete assignment.
void assign_all(int n, const std::function<std::vector<int>(int)>& candidates, std::vector<int>& val,
                const std::function<bool(int)>& ok, const std::function<void()>& emit, long& budget) {
  std::function<void(int)> step = [&](int k) {
    if (k == n) {
      emit();
      return;
    }
    for (int c : candidates(k)) {
      spend(budget);
      val[k] = c;
      if (ok(k)) step(k + 1);
    }
    val[k] = -1;
  };
  val.assign(n, -1);
  step(0);
}

// Natural element maps U -> V over (F, Fp), checked as soon as both ends of an action are set.
std::vector<std::vector<int>> enumerate_prof_maps(const Profunctor& U, const Profunctor& V, const FinFunctor& F,
                                                  const FinFunctor& Fp, long& budget) {
  const int n = U.n_elem();
  struct Edge {
    int from, to, f;
    bool left;
  };
  std::vector<std::vector<Edge>> at(n);
  for (int e = 0; e < n; ++e) {
    for (int f = 0; f < U.src->n_mor(); ++f)
      if (U.src->tgt[f] == U.elem_x[e]) {
        int t = U.left(f, e);
        at[std::max(e, t)].push_back({e, t, f, true});
      }
    for (int f = 0; f < U.tgt->n_mor(); ++f)
      if (U.tgt->src[f] == U.elem_y[e]) {
        int t = U.right(f, e);
        at[std::max(e, t)].push_back({e, t, f, false});
      }
  }
  std::vector<int> val;
  std::vector<std::vector<int>> out;
  assign_all(
      n, [&](int e) { return V.at(F.obj_map[U.elem_x[e]], Fp.obj_map[U.elem_y[e]]); }, val,
      [&](int k) {
        for (const auto& ed : at[k]) {
          int img = ed.left ? V.left(F.mor_map[ed.f], val[ed.from]) : V.right(Fp.mor_map[ed.f], val[ed.from]);
          if (img != val[ed.to]) return false;
        }
        return true;
      },
      [&] { out.push_back(val); }, budget);
  return out;
}

std::vector<std::vector<int>> enumerate_nat_trans(const FinFunctor& F, const FinFunctor& G, long& budget) {
  const FinCat& c = *F.source;
  const FinCat& d = *F.target;
  std::vector<std::vector<int>> at(c.n_obj());
  for (int m = 0; m < c.n_mor(); ++m) at[std::max(c.src[m], c.tgt[m])].push_back(m);
  std::vector<int> val;
  std::vector<std::vector<int>> out;
  assign_all(
      c.n_obj(), [&](int x) { return d.hom(F.obj_map[x], G.obj_map[x]); }, val,
      [&](int k) {
        for (int m : at[k])
          if (d.compose(G.mor_map[m], val[c.src[m]]) != d.compose(val[c.tgt[m]], F.mor_map[m])) return false;
        return true;
      },
      [&] { out.push_back(val); }, budget);
  return out;
}

}  // namespace

std::vector<FinFunctor> enumerate_functors(const CatRef& a, const CatRef& b, long& budget) {
  const int no = a->n_obj(), nm = a->n_mor();
  // variables: objects, then morphisms
  std::vector<std::vector<std::array<int, 3>>> comps(nm);  // at max index: (g, f, g∘f)
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f) {
      int h = a->compose(g, f);
      if (h >= 0) comps[std::max({g, f, h})].push_back({g, f, h});
    }
  std::vector<int> val;
  std::vector<FinFunctor> out;
  assign_all(
      no + nm,
      [&](int k) {
        if (k < no) {
          std::vector<int> all(b->n_obj());
          for (int i = 0; i < b->n_obj(); ++i) all[i] = i;
          return all;
        }
        int m = k - no;
        if (a->is_identity(m)) return std::vector<int>{b->ident[val[a->src[m]]]};
        return b->hom(val[a->src[m]], val[a->tgt[m]]);
      },
      val,
      [&](int k) {
        if (k < no) return true;
        for (const auto& [g, f, h] : comps[k - no])
          if (b->compose(val[no + g], val[no + f]) != val[no + h]) return false;
        return true;
      },
      [&] {
        FinFunctor F;
        F.source = a;
        F.target = b;
        F.obj_map.assign(val.begin(), val.begin() + no);
        F.mor_map.assign(val.begin() + no, val.end());
        out.push_back(std::move(F));
      },
      budget);
  return out;
}

std::vector<HTransRef> enumerate_transformations(const PshRef& xr, const PshRef& yr, long budget) {
  if (!same_base(xr, yr)) throw std::invalid_argument("enumerate_transformations: different bases");
  const LaxDoublePresheaf& X = *xr;
  const LaxDoublePresheaf& Y = *yr;
  const DoubleCat& d = *X.base;
  const int no = d.n_obj(), nv = d.n_vmor();
  std::vector<std::vector<FunctorRef>> funs(no);
  for (int x = 0; x < no; ++x)
    for (auto& f : enumerate_functors(X.obj[x], Y.obj[x], budget))
      funs[x].push_back(std::make_shared<FinFunctor>(std::move(f)));
  std::vector<std::vector<int>> hm_at(no);
  for (int f = 0; f < d.n_hmor(); ++f) hm_at[std::max(d.hsrc[f], d.htgt[f])].push_back(f);
  // vmor-level constraints, attached to the largest vmor index involved
  std::vector<std::vector<int>> sq_at(nv);
  for (int a = 0; a < d.n_sq(); ++a) sq_at[std::max(d.sq_left[a], d.sq_right[a])].push_back(a);
  std::vector<std::vector<std::array<int, 2>>> mu_at(nv);
  for (int u = 0; u < nv; ++u)
    for (int up = 0; up < nv; ++up)
      if (d.vtgt[u] == d.vsrc[up]) mu_at[std::max({u, up, d.vc(up, u)})].push_back({u, up});

  std::vector<HTransRef> out;
  std::vector<FunctorRef> fx(no);
  std::vector<ProfMorRef> fu(nv);

  auto sq_ok = [&](int a) {
    const int u = d.sq_left[a], v = d.sq_right[a];
    for (int e = 0; e < X.vmor[v]->n_elem(); ++e)
      if (Y.sq[a]->map[fu[v]->map[e]] != fu[u]->map[X.sq[a]->map[e]]) return false;
    return true;
  };
  auto mu_ok = [&](int u, int up) {
    const Profunctor& U = *X.vmor[u];
    const Profunctor& Up = *X.vmor[up];
    const auto& Fw = *fu[d.vc(up, u)];
    for (int ue = 0; ue < U.n_elem(); ++ue)
      for (int z = 0; z < Up.tgt->n_obj(); ++z)
        for (int ve : Up.at(U.elem_y[ue], z))
          if (Fw.map[X.mu_apply(u, up, ve, ue)] != Y.mu_apply(u, up, fu[up]->map[ve], fu[u]->map[ue])) return false;
    return true;
  };

  std::function<void(int)> vstep = [&](int u) {
    if (u == nv) {
      auto t = std::make_shared<HorizontalTransf>();
      t->source = xr;
      t->target = yr;
      t->obj = fx;
      t->vmor = fu;
      out.push_back(t);
      return;
    }
    const FunctorRef& F = fx[d.vsrc[u]];
    const FunctorRef& Fp = fx[d.vtgt[u]];
    std::vector<std::vector<int>> maps;
    if (d.is_vid(u)) {
      maps.push_back(F->mor_map);
    } else {
      maps = enumerate_prof_maps(*X.vmor[u], *Y.vmor[u], *F, *Fp, budget);
    }
    for (auto& m : maps) {
      spend(budget);
      auto pm = std::make_shared<ProfMorphism>();
      pm->source = X.vmor[u];
      pm->target = Y.vmor[u];
      pm->F = F;
      pm->Fp = Fp;
      pm->map = std::move(m);
      fu[u] = pm;
      bool ok = true;
      for (int a : sq_at[u]) ok = ok && sq_ok(a);
      for (const auto& [a, b] : mu_at[u]) ok = ok && mu_ok(a, b);
      if (ok) vstep(u + 1);
    }
    fu[u] = nullptr;
  };

  std::function<void(int)> ostep = [&](int x) {
    if (x == no) {
      vstep(0);
      return;
    }
    for (const auto& F : funs[x]) {
      spend(budget);
      fx[x] = F;
      bool ok = true;
      for (int f : hm_at[x]) {
        auto lhs = compose_functors(Y.hmor[f], fx[d.htgt[f]]);
        auto rhs = compose_functors(fx[d.hsrc[f]], X.hmor[f]);
        if (!same_maps(*lhs, *rhs)) {
          ok = false;
          break;
        }
      }
      if (ok) ostep(x + 1);
    }
    fx[x] = nullptr;
  };
  ostep(0);
  return out;
}

std::vector<ModRef> enumerate_modifications(const HTransRef& f, const HTransRef& g, long budget) {
  const LaxDoublePresheaf& X = *f->source;
  const LaxDoublePresheaf& Y = *f->target;
  const DoubleCat& d = *X.base;
  const int no = d.n_obj();
  std::vector<std::vector<std::vector<int>>> comps(no);
  for (int x = 0; x < no; ++x) comps[x] = enumerate_nat_trans(*f->obj[x], *g->obj[x], budget);
  std::vector<std::vector<int>> hm_at(no), vm_at(no);
  for (int h = 0; h < d.n_hmor(); ++h) hm_at[std::max(d.hsrc[h], d.htgt[h])].push_back(h);
  for (int u = 0; u < d.n_vmor(); ++u) vm_at[std::max(d.vsrc[u], d.vtgt[u])].push_back(u);
  std::vector<const std::vector<int>*> cur(no, nullptr);
  std::vector<ModRef> out;
  std::function<void(int)> step = [&](int x) {
    if (x == no) {
      auto m = std::make_shared<GlobularModification>();
      m->source = f;
      m->target = g;
      for (int i = 0; i < no; ++i) {
        auto n = std::make_shared<NatTrans>();
        n->source = f->obj[i];
        n->target = g->obj[i];
        n->comp = *cur[i];
        m->obj.push_back(n);
      }
      out.push_back(m);
      return;
    }
    for (const auto& c : comps[x]) {
      spend(budget);
      cur[x] = &c;
      bool ok = true;
      for (int h : hm_at[x]) {
        const int sx = d.hsrc[h], ty = d.htgt[h];
        for (int a = 0; a < X.obj[ty]->n_obj() && ok; ++a)
          ok = Y.hmor[h]->mor_map[(*cur[ty])[a]] == (*cur[sx])[X.hmor[h]->obj_map[a]];
      }
      for (int u : vm_at[x]) {
        const Profunctor& U = *X.vmor[u];
        const Profunctor& V = *Y.vmor[u];
        const auto& ax = *cur[d.vsrc[u]];
        const auto& axp = *cur[d.vtgt[u]];
        for (int e = 0; e < U.n_elem() && ok; ++e)
          ok = V.right(axp[U.elem_y[e]], f->vmor[u]->map[e]) == V.left(ax[U.elem_x[e]], g->vmor[u]->map[e]);
      }
      if (ok) step(x + 1);
    }
    cur[x] = nullptr;
  };
  step(0);
  return out;
}

bool is_represented_by(const Representable& r, const PshRef& x, int a) {
  return is_invertible(*yoneda_phi(r, x, a));
}

}  // namespace dc
