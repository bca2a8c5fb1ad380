#include "doublecat/groth.hpp"

namespace dc {

namespace {

std::string pair_name(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

}  // namespace

GrothResult groth(const PshRef& xr) {
  const LaxDoublePresheaf& X = *xr;
  const DoubleCat& C = *X.base;
  GrothResult g;
  g.psh = xr;
  auto T = std::make_shared<DoubleCat>();
  for (int x = 0; x < C.n_obj(); ++x) {
    g.obj_off.push_back(T->n_obj());
    for (const auto& a : X.obj[x]->obj_names) T->obj_names.push_back(pair_name(C.obj_names[x], a));
  }
  for (int f = 0; f < C.n_hmor(); ++f) {
    g.hmor_off.push_back(T->n_hmor());
    const FinFunctor& Xf = *X.hmor[f];
    const FinCat& Xy = *X.obj[C.htgt[f]];
    for (int b = 0; b < Xy.n_obj(); ++b) {
      T->hmor_names.push_back(pair_name(C.hmor_names[f], Xy.obj_names[b]));
      T->hsrc.push_back(g.obj(C.hsrc[f], Xf.obj_map[b]));
      T->htgt.push_back(g.obj(C.htgt[f], b));
    }
  }
  for (int u = 0; u < C.n_vmor(); ++u) {
    g.vmor_off.push_back(T->n_vmor());
    const Profunctor& U = *X.vmor[u];
    for (int e = 0; e < U.n_elem(); ++e) {
      T->vmor_names.push_back(pair_name(C.vmor_names[u], U.elem_names[e]));
      T->vsrc.push_back(g.obj(C.vsrc[u], U.elem_x[e]));
      T->vtgt.push_back(g.obj(C.vtgt[u], U.elem_y[e]));
    }
  }
  for (int a = 0; a < C.n_sq(); ++a) {
    g.sq_off.push_back(T->n_sq());
    const Profunctor& V = *X.vmor[C.sq_right[a]];
    const ProfMorphism& Xa = *X.sq[a];
    for (int e = 0; e < V.n_elem(); ++e) {
      T->sq_names.push_back(pair_name(C.sq_names[a], V.elem_names[e]));
      T->sq_left.push_back(g.vmor(C.sq_left[a], Xa.map[e]));
      T->sq_right.push_back(g.vmor(C.sq_right[a], e));
      T->sq_top.push_back(g.hmor(C.sq_top[a], V.elem_x[e]));
      T->sq_bot.push_back(g.hmor(C.sq_bot[a], V.elem_y[e]));
    }
  }
  for (int x = 0; x < C.n_obj(); ++x) {
    const FinCat& Xx = *X.obj[x];
    for (int a = 0; a < Xx.n_obj(); ++a) {
      T->hid.push_back(g.hmor(C.hid[x], a));
      T->vid.push_back(g.vmor(C.vid[x], Xx.ident[a]));
    }
  }
  for (int u = 0; u < C.n_vmor(); ++u)
    for (int e = 0; e < X.vmor[u]->n_elem(); ++e) T->hid_sq.push_back(g.sq(C.hid_sq[u], e));
  for (int f = 0; f < C.n_hmor(); ++f) {
    const FinCat& Xy = *X.obj[C.htgt[f]];
    for (int b = 0; b < Xy.n_obj(); ++b) T->vid_sq.push_back(g.sq(C.vid_sq[f], Xy.ident[b]));
  }
  T->reset_tables();
  const std::size_t nh = T->n_hmor(), nv = T->n_vmor(), ns = T->n_sq();
  for (int gg = 0; gg < C.n_hmor(); ++gg)
    for (int f = 0; f < C.n_hmor(); ++f) {
      const int h = C.hc(gg, f);
      if (h < 0) continue;
      const FinFunctor& Xg = *X.hmor[gg];
      for (int c = 0; c < X.obj[C.htgt[gg]]->n_obj(); ++c)
        T->hcomp[g.hmor(gg, c) * nh + g.hmor(f, Xg.obj_map[c])] = g.hmor(h, c);
    }
  for (int u = 0; u < C.n_vmor(); ++u)
    for (int up = 0; up < C.n_vmor(); ++up) {
      const int w = C.vc(up, u);
      if (w < 0) continue;
      const Profunctor& U = *X.vmor[u];
      const Profunctor& Up = *X.vmor[up];
      for (int e = 0; e < U.n_elem(); ++e)
        for (int z = 0; z < Up.tgt->n_obj(); ++z)
          for (int ep : Up.at(U.elem_y[e], z))
            T->vcomp[g.vmor(up, ep) * nv + g.vmor(u, e)] = g.vmor(w, X.mu_apply(u, up, ep, e));
    }
  for (int b = 0; b < C.n_sq(); ++b)
    for (int a = 0; a < C.n_sq(); ++a) {
      const int c = C.hc_sq(b, a);
      if (c >= 0) {
        const ProfMorphism& Xb = *X.sq[b];
        for (int e2 = 0; e2 < X.vmor[C.sq_right[b]]->n_elem(); ++e2)
          T->hcomp_sq[g.sq(b, e2) * ns + g.sq(a, Xb.map[e2])] = g.sq(c, e2);
      }
      const int cv = C.vc_sq(b, a);
      if (cv >= 0) {
        const int v = C.sq_right[a], vp = C.sq_right[b];
        const Profunctor& V = *X.vmor[v];
        const Profunctor& Vp = *X.vmor[vp];
        for (int e = 0; e < V.n_elem(); ++e)
          for (int z = 0; z < Vp.tgt->n_obj(); ++z)
            for (int ep : Vp.at(V.elem_y[e], z))
              T->vcomp_sq[g.sq(b, ep) * ns + g.sq(a, e)] = g.sq(cv, X.mu_apply(v, vp, ep, e));
      }
    }
  g.total = T;

  auto p = std::make_shared<DoubleFunctor>();
  p->source = T;
  p->target = X.base;
  for (int x = 0; x < C.n_obj(); ++x) p->obj.insert(p->obj.end(), X.obj[x]->n_obj(), x);
  for (int f = 0; f < C.n_hmor(); ++f) p->hmor.insert(p->hmor.end(), X.obj[C.htgt[f]]->n_obj(), f);
  for (int u = 0; u < C.n_vmor(); ++u) p->vmor.insert(p->vmor.end(), X.vmor[u]->n_elem(), u);
  for (int a = 0; a < C.n_sq(); ++a) p->sq.insert(p->sq.end(), X.vmor[C.sq_right[a]]->n_elem(), a);
  DiscreteDoubleFibration& d = g.projection;
  d.p = p;
  d.hlift.assign(static_cast<std::size_t>(T->n_obj()) * C.n_hmor(), -1);
  d.sqlift.assign(static_cast<std::size_t>(T->n_vmor()) * C.n_sq(), -1);
  for (int f = 0; f < C.n_hmor(); ++f)
    for (int b = 0; b < X.obj[C.htgt[f]]->n_obj(); ++b)
      d.hlift[static_cast<std::size_t>(g.obj(C.htgt[f], b)) * C.n_hmor() + f] = g.hmor(f, b);
  for (int a = 0; a < C.n_sq(); ++a)
    for (int e = 0; e < X.vmor[C.sq_right[a]]->n_elem(); ++e)
      d.sqlift[static_cast<std::size_t>(g.vmor(C.sq_right[a], e)) * C.n_sq() + a] = g.sq(a, e);
  return g;
}

DFunRef groth_morphism(const GrothResult& gx, const GrothResult& gy, const HorizontalTransf& f) {
  const DoubleCat& C = *gx.psh->base;
  const LaxDoublePresheaf& X = *gx.psh;
  auto F = std::make_shared<DoubleFunctor>();
  F->source = gx.total;
  F->target = gy.total;
  for (int x = 0; x < C.n_obj(); ++x)
    for (int a : f.obj[x]->obj_map) F->obj.push_back(gy.obj(x, a));
  for (int h = 0; h < C.n_hmor(); ++h)
    for (int b : f.obj[C.htgt[h]]->obj_map) F->hmor.push_back(gy.hmor(h, b));
  for (int u = 0; u < C.n_vmor(); ++u)
    for (int e : f.vmor[u]->map) F->vmor.push_back(gy.vmor(u, e));
  for (int a = 0; a < C.n_sq(); ++a)
    for (int e = 0; e < X.vmor[C.sq_right[a]]->n_elem(); ++e)
      F->sq.push_back(gy.sq(a, f.vmor[C.sq_right[a]]->map[e]));
  return F;
}

VTransRef groth_2morphism(const GrothResult& gx, const GrothResult& gy, const GlobularModification& a) {
  const DoubleCat& C = *gx.psh->base;
  auto t = std::make_shared<VerticalTransformation>();
  t->source = groth_morphism(gx, gy, *a.source);
  t->target = groth_morphism(gx, gy, *a.target);
  for (int x = 0; x < C.n_obj(); ++x)
    for (int m : a.obj[x]->comp) t->obj_vmor.push_back(gy.vmor(C.vid[x], m));
  for (int f = 0; f < C.n_hmor(); ++f)
    for (int m : a.obj[C.htgt[f]]->comp) t->hmor_sq.push_back(gy.sq(C.vid_sq[f], m));
  return t;
}

namespace {

// Index-identity transformation between presheaves with identically indexed values.
HTransRef renaming(const PshRef& s, const PshRef& t) {
  const DoubleCat& C = *s->base;
  auto h = std::make_shared<HorizontalTransf>();
  h->source = s;
  h->target = t;
  for (int x = 0; x < C.n_obj(); ++x) {
    auto F = std::make_shared<FinFunctor>();
    F->source = s->obj[x];
    F->target = t->obj[x];
    for (int a = 0; a < s->obj[x]->n_obj(); ++a) F->obj_map.push_back(a);
    for (int m = 0; m < s->obj[x]->n_mor(); ++m) F->mor_map.push_back(m);
    h->obj.push_back(F);
  }
  for (int u = 0; u < C.n_vmor(); ++u) {
    auto m = std::make_shared<ProfMorphism>();
    m->source = s->vmor[u];
    m->target = t->vmor[u];
    m->F = h->obj[C.vsrc[u]];
    m->Fp = h->obj[C.vtgt[u]];
    for (int e = 0; e < s->vmor[u]->n_elem(); ++e) m->map.push_back(e);
    h->vmor.push_back(m);
  }
  return h;
}

}  // namespace

CounitResult counit_epsilon(const PshRef& x) {
  CounitResult res;
  res.groth = groth(x);
  res.ddel = ddel(res.groth.projection);
  res.eps = renaming(res.ddel.psh, x);
  res.inverse = renaming(x, res.ddel.psh);
  ValidationReport& r = res.checks;
  r.merge(validate_horizontal_transformation(*res.eps), "ε: ");
  r.merge(validate_horizontal_transformation(*res.inverse), "ε⁻¹: ");
  if (!r.ok()) return res;
  if (!is_invertible(*res.eps)) r.add("ε invertible", "a component is not bijective");
  if (!transformations_equal(*compose_transformations(res.inverse, res.eps), *identity_transformation(res.ddel.psh)))
    r.add("ε round trip", "ε⁻¹ ∘ ε is not the identity");
  if (!transformations_equal(*compose_transformations(res.eps, res.inverse), *identity_transformation(x)))
    r.add("ε round trip", "ε ∘ ε⁻¹ is not the identity");
  return res;
}

UnitResult unit_eta(const DiscreteDoubleFibration& d) {
  const DoubleCat& E = d.total();
  const DoubleCat& C = d.base();
  const DoubleFunctor& p = *d.p;
  UnitResult res;
  res.ddel = ddel(d);
  res.groth = groth(res.ddel.psh);
  const FiberData& fd = res.ddel.fibers;
  const GrothResult& g = res.groth;
  auto eta = std::make_shared<DoubleFunctor>();
  eta->source = d.p->source;
  eta->target = g.total;
  for (int e = 0; e < E.n_obj(); ++e) eta->obj.push_back(g.obj(p.obj[e], fd.obj_local[e]));
  for (int h = 0; h < E.n_hmor(); ++h) eta->hmor.push_back(g.hmor(p.hmor[h], fd.obj_local[E.htgt[h]]));
  for (int v = 0; v < E.n_vmor(); ++v) eta->vmor.push_back(g.vmor(p.vmor[v], fd.vmor_local[v]));
  for (int b = 0; b < E.n_sq(); ++b) eta->sq.push_back(g.sq(p.sq[b], fd.vmor_local[E.sq_right[b]]));
  auto inv = std::make_shared<DoubleFunctor>();
  inv->source = g.total;
  inv->target = d.p->source;
  for (int x = 0; x < C.n_obj(); ++x) inv->obj.insert(inv->obj.end(), fd.obj[x].obj_global.begin(), fd.obj[x].obj_global.end());
  for (int f = 0; f < C.n_hmor(); ++f)
    for (int b : fd.obj[C.htgt[f]].obj_global) inv->hmor.push_back(d.lift_h(b, f));
  for (int u = 0; u < C.n_vmor(); ++u) inv->vmor.insert(inv->vmor.end(), fd.over[u].begin(), fd.over[u].end());
  for (int a = 0; a < C.n_sq(); ++a)
    for (int v : fd.over[C.sq_right[a]]) inv->sq.push_back(d.lift_sq(v, a));
  res.eta = eta;
  res.inverse = inv;
  ValidationReport& r = res.checks;
  r.merge(validate_double_functor(*eta), "η: ");
  r.merge(validate_double_functor(*inv), "η⁻¹: ");
  if (!r.ok()) return res;
  if (!(*compose_double_functors(inv, eta) == *identity_double_functor(d.p->source)))
    r.add("η round trip", "η⁻¹ ∘ η is not the identity");
  if (!(*compose_double_functors(eta, inv) == *identity_double_functor(g.total)))
    r.add("η round trip", "η ∘ η⁻¹ is not the identity");
  if (!(*compose_double_functors(g.projection.p, eta) == p)) r.add("η over the base", "π ∘ η != P");
  return res;
}

ValidationReport check_triangle_identities(const DiscreteDoubleFibration& d) {
  ValidationReport r;
  UnitResult u = unit_eta(d);
  DdelResult dd2 = ddel(u.groth.projection);
  HTransRef ddel_eta = ddel_morphism(u.ddel, dd2, *u.eta);
  r.merge(validate_horizontal_transformation(*ddel_eta), "∂∂η: ");
  CounitResult c = counit_epsilon(u.ddel.psh);
  if (!r.ok()) return r;
  if (!transformations_equal(*compose_transformations(c.eps, ddel_eta), *identity_transformation(u.ddel.psh)))
    r.add("triangle", "ε_∂∂P ∘ ∂∂η_P is not the identity");
  return r;
}

ValidationReport check_triangle_identities(const PshRef& x) {
  ValidationReport r;
  CounitResult c = counit_epsilon(x);
  UnitResult u = unit_eta(c.groth.projection);
  DFunRef groth_eps = groth_morphism(u.groth, c.groth, *c.eps);
  r.merge(validate_double_functor(*groth_eps), "∫∫ε: ");
  if (!r.ok()) return r;
  if (!(*compose_double_functors(groth_eps, u.eta) == *identity_double_functor(c.groth.total)))
    r.add("triangle", "∫∫ε_X ∘ η_∫∫X is not the identity");
  return r;
}

RepresentationReport representation_check(const PshRef& xr) {
  const LaxDoublePresheaf& X = *xr;
  const DoubleCat& C = *X.base;
  RepresentationReport rep;
  GrothResult g = groth(xr);
  for (int xh = 0; xh < C.n_obj(); ++xh) {
    Representable r = representable(X.base, xh);
    for (int a = 0; a < X.obj[xh]->n_obj(); ++a) {
      RepresentationEntry e;
      e.xh = xh;
      e.a = a;
      e.is_represented = is_represented_by(r, xr, a);
      e.is_double_terminal = double_terminal_at(*g.total, g.obj(xh, a)).has_value();
      rep.agree = rep.agree && e.is_represented == e.is_double_terminal;
      rep.entries.push_back(e);
    }
  }
  return rep;
}

}  // namespace dc
