#include "doublecat/dfib.hpp"

#include "doublecat/detail.hpp"

namespace dc {

DFibResult check_dfib(const DFunRef& pr) {
  DFibResult res;
  ValidationReport& r = res.failure;
  r.merge(validate_double_functor(*pr), "P: ");
  if (!r.ok()) return res;
  const DoubleFunctor& p = *pr;
  const DoubleCat& E = *p.source;
  const DoubleCat& C = *p.target;
  DiscreteDoubleFibration d;
  d.p = pr;
  d.hlift.assign(static_cast<std::size_t>(E.n_obj()) * C.n_hmor(), -1);
  d.sqlift.assign(static_cast<std::size_t>(E.n_vmor()) * C.n_sq(), -1);
  for (int e = 0; e < E.n_obj(); ++e)
    for (int f = 0; f < C.n_hmor(); ++f) {
      if (C.htgt[f] != p.obj[e]) continue;
      int found = -1, count = 0;
      for (int g = 0; g < E.n_hmor(); ++g)
        if (E.htgt[g] == e && p.hmor[g] == f) {
          found = g;
          ++count;
        }
      if (count != 1) {
        r.add(count == 0 ? "horizontal lift missing" : "horizontal lift ambiguous",
              C.hmor_names[f] + " at " + E.obj_names[e] + " (" + std::to_string(count) + " lifts)");
        if (r.stop()) return res;
        continue;
      }
      d.hlift[static_cast<std::size_t>(e) * C.n_hmor() + f] = found;
    }
  for (int v = 0; v < E.n_vmor(); ++v)
    for (int a = 0; a < C.n_sq(); ++a) {
      if (C.sq_right[a] != p.vmor[v]) continue;
      int found = -1, count = 0;
      for (int b = 0; b < E.n_sq(); ++b)
        if (E.sq_right[b] == v && p.sq[b] == a) {
          found = b;
          ++count;
        }
      if (count != 1) {
        r.add(count == 0 ? "square lift missing" : "square lift ambiguous",
              C.sq_names[a] + " at " + E.vmor_names[v] + " (" + std::to_string(count) + " lifts)");
        if (r.stop()) return res;
        continue;
      }
      d.sqlift[static_cast<std::size_t>(v) * C.n_sq() + a] = found;
    }
  if (r.ok()) res.fib = std::move(d);
  return res;
}

ValidationReport validate_dfib(const DiscreteDoubleFibration& d, std::size_t cap) {
  ValidationReport r(cap);
  r.merge(validate_double_functor(*d.p, cap), "P: ");
  if (!r.ok()) return r;
  const DoubleFunctor& p = *d.p;
  const DoubleCat& E = d.total();
  const DoubleCat& C = d.base();
  if (d.hlift.size() != static_cast<std::size_t>(E.n_obj()) * C.n_hmor() ||
      d.sqlift.size() != static_cast<std::size_t>(E.n_vmor()) * C.n_sq()) {
    r.add("shape", "lift tables have the wrong size");
    return r;
  }
  for (int e = 0; e < E.n_obj(); ++e)
    for (int f = 0; f < C.n_hmor(); ++f) {
      const int g = d.lift_h(e, f);
      if (C.htgt[f] != p.obj[e]) {
        if (g != -1) r.add("horizontal lift domain", "entry at " + E.obj_names[e] + ", " + C.hmor_names[f]);
        continue;
      }
      if (g < 0 || g >= E.n_hmor() || E.htgt[g] != e || p.hmor[g] != f) {
        r.add("horizontal lift", C.hmor_names[f] + " at " + E.obj_names[e]);
        continue;
      }
      for (int g2 = 0; g2 < E.n_hmor(); ++g2)
        if (g2 != g && E.htgt[g2] == e && p.hmor[g2] == f)
          r.add("horizontal lift ambiguous", C.hmor_names[f] + " at " + E.obj_names[e]);
    }
  for (int v = 0; v < E.n_vmor(); ++v)
    for (int a = 0; a < C.n_sq(); ++a) {
      const int b = d.lift_sq(v, a);
      if (C.sq_right[a] != p.vmor[v]) {
        if (b != -1) r.add("square lift domain", "entry at " + E.vmor_names[v] + ", " + C.sq_names[a]);
        continue;
      }
      if (b < 0 || b >= E.n_sq() || E.sq_right[b] != v || p.sq[b] != a) {
        r.add("square lift", C.sq_names[a] + " at " + E.vmor_names[v]);
        continue;
      }
      for (int b2 = 0; b2 < E.n_sq(); ++b2)
        if (b2 != b && E.sq_right[b2] == v && p.sq[b2] == a)
          r.add("square lift ambiguous", C.sq_names[a] + " at " + E.vmor_names[v]);
    }
  return r;
}

namespace {

struct Locals {
  std::vector<std::vector<int>> objs_over, vmors_over;
  std::vector<int> obj_local, vmor_local;
};

Locals locals(const DiscreteDoubleFibration& d) {
  const DoubleCat& E = d.total();
  const DoubleCat& C = d.base();
  Locals l;
  l.objs_over.resize(C.n_obj());
  l.vmors_over.resize(C.n_vmor());
  for (int e = 0; e < E.n_obj(); ++e) {
    auto& v = l.objs_over[d.p->obj[e]];
    l.obj_local.push_back(static_cast<int>(v.size()));
    v.push_back(e);
  }
  for (int u = 0; u < E.n_vmor(); ++u) {
    auto& v = l.vmors_over[d.p->vmor[u]];
    l.vmor_local.push_back(static_cast<int>(v.size()));
    v.push_back(u);
  }
  return l;
}

ObjectFiber object_fiber(const DiscreteDoubleFibration& d, const Locals& l, int x) {
  const DoubleCat& E = d.total();
  const DoubleCat& C = d.base();
  ObjectFiber of;
  of.obj_global = l.objs_over[x];
  of.mor_global = l.vmors_over[C.vid[x]];
  auto c = std::make_shared<FinCat>();
  for (int e : of.obj_global) {
    c->obj_names.push_back(E.obj_names[e]);
    c->ident.push_back(l.vmor_local[E.vid[e]]);
  }
  for (int s : of.mor_global) {
    c->mor_names.push_back(E.vmor_names[s]);
    c->src.push_back(l.obj_local[E.vsrc[s]]);
    c->tgt.push_back(l.obj_local[E.vtgt[s]]);
  }
  const std::size_t n = of.mor_global.size();
  c->comp.assign(n * n, -1);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      int h = E.vc(of.mor_global[g], of.mor_global[f]);
      if (h >= 0) c->comp[g * n + f] = l.vmor_local[h];
    }
  of.cat = c;
  return of;
}

VerticalFiber vertical_fiber(const DiscreteDoubleFibration& d, const Locals& l, const ObjectFiber& fx,
                             const ObjectFiber& fxp, int u) {
  const DoubleCat& E = d.total();
  VerticalFiber vf;
  vf.obj_vmor = l.vmors_over[u];
  const int n = static_cast<int>(vf.obj_vmor.size());
  auto c = std::make_shared<FinCat>();
  struct M {
    int a, b, s, sp;
  };
  std::vector<M> mors;
  const FinCat& X = *fx.cat;
  const FinCat& Xp = *fxp.cat;
  for (int i = 0; i < n; ++i) {
    const int ui = vf.obj_vmor[i];
    c->obj_names.push_back(E.vmor_names[ui]);
    for (int j = 0; j < n; ++j) {
      const int uj = vf.obj_vmor[j];
      for (int s : X.hom(l.obj_local[E.vsrc[ui]], l.obj_local[E.vsrc[uj]]))
        for (int sp : Xp.hom(l.obj_local[E.vtgt[ui]], l.obj_local[E.vtgt[uj]]))
          if (E.vc(uj, fx.mor_global[s]) == E.vc(fxp.mor_global[sp], ui)) {
            vf.mor_index[{i, j, s, sp}] = static_cast<int>(mors.size());
            mors.push_back({i, j, s, sp});
            c->mor_names.push_back("[" + E.vmor_names[ui] + "|" + X.mor_names[s] + "," + Xp.mor_names[sp] + "|" +
                                   E.vmor_names[uj] + "]");
            c->src.push_back(i);
            c->tgt.push_back(j);
          }
    }
  }
  for (int i = 0; i < n; ++i) {
    const int ui = vf.obj_vmor[i];
    c->ident.push_back(vf.mor_index.at({i, i, X.ident[l.obj_local[E.vsrc[ui]]], Xp.ident[l.obj_local[E.vtgt[ui]]]}));
  }
  const std::size_t nm = mors.size();
  c->comp.assign(nm * nm, -1);
  for (std::size_t g = 0; g < nm; ++g)
    for (std::size_t f = 0; f < nm; ++f)
      if (mors[f].b == mors[g].a)
        c->comp[g * nm + f] =
            vf.mor_index.at({mors[f].a, mors[g].b, X.compose(mors[g].s, mors[f].s), Xp.compose(mors[g].sp, mors[f].sp)});
  vf.cat = c;
  auto P = std::make_shared<FinFunctor>();
  auto Q = std::make_shared<FinFunctor>();
  P->source = Q->source = c;
  P->target = fx.cat;
  Q->target = fxp.cat;
  for (int ui : vf.obj_vmor) {
    P->obj_map.push_back(l.obj_local[E.vsrc[ui]]);
    Q->obj_map.push_back(l.obj_local[E.vtgt[ui]]);
  }
  for (const auto& m : mors) {
    P->mor_map.push_back(m.s);
    Q->mor_map.push_back(m.sp);
  }
  auto res = check_two_sided_fibration(P, Q);
  if (!res.witness)
    throw std::logic_error("vertical fiber over " + d.base().vmor_names[u] + " is not a two-sided discrete fibration\n" +
                           res.failure.str());
  vf.w = std::move(*res.witness);
  return vf;
}

}  // namespace

FiberData fibers(const DiscreteDoubleFibration& d) {
  const DoubleCat& C = d.base();
  Locals l = locals(d);
  FiberData fd;
  for (int x = 0; x < C.n_obj(); ++x) fd.obj.push_back(object_fiber(d, l, x));
  for (int u = 0; u < C.n_vmor(); ++u)
    fd.vmor.push_back(vertical_fiber(d, l, fd.obj[C.vsrc[u]], fd.obj[C.vtgt[u]], u));
  fd.obj_local = std::move(l.obj_local);
  fd.vmor_local = std::move(l.vmor_local);
  fd.over = std::move(l.vmors_over);
  return fd;
}

ObjectFiber fiber_object(const DiscreteDoubleFibration& d, int x) { return object_fiber(d, locals(d), x); }

VerticalFiber fiber_vertical(const DiscreteDoubleFibration& d, int u) {
  const DoubleCat& C = d.base();
  Locals l = locals(d);
  return vertical_fiber(d, l, object_fiber(d, l, C.vsrc[u]), object_fiber(d, l, C.vtgt[u]), u);
}

FunctorRef hmor_action(const DiscreteDoubleFibration& d, const FiberData& fd, int f) {
  const DoubleCat& E = d.total();
  const DoubleCat& C = d.base();
  const ObjectFiber& Fy = fd.obj[C.htgt[f]];
  auto F = std::make_shared<FinFunctor>();
  F->source = Fy.cat;
  F->target = fd.obj[C.hsrc[f]].cat;
  for (int b : Fy.obj_global) F->obj_map.push_back(fd.obj_local[E.hsrc[d.lift_h(b, f)]]);
  for (int s : Fy.mor_global) F->mor_map.push_back(fd.vmor_local[E.sq_left[d.lift_sq(s, C.vid_sq[f])]]);
  return F;
}

FunctorRef square_action(const DiscreteDoubleFibration& d, const FiberData& fd, int a) {
  const DoubleCat& E = d.total();
  const DoubleCat& C = d.base();
  const VerticalFiber& Fv = fd.vmor[C.sq_right[a]];
  const VerticalFiber& Fu = fd.vmor[C.sq_left[a]];
  const ObjectFiber& Fy = fd.obj[C.vsrc[C.sq_right[a]]];
  const ObjectFiber& Fyp = fd.obj[C.vtgt[C.sq_right[a]]];
  const int ef = C.vid_sq[C.sq_top[a]], efp = C.vid_sq[C.sq_bot[a]];
  auto F = std::make_shared<FinFunctor>();
  F->source = Fv.cat;
  F->target = Fu.cat;
  for (int v : Fv.obj_vmor) F->obj_map.push_back(fd.vmor_local[E.sq_left[d.lift_sq(v, a)]]);
  const FinCat& V = *Fv.cat;
  for (int m = 0; m < V.n_mor(); ++m) {
    const int s = Fv.w.p->mor_map[m], sp = Fv.w.q->mor_map[m];
    const int ls = fd.vmor_local[E.sq_left[d.lift_sq(Fy.mor_global[s], ef)]];
    const int lsp = fd.vmor_local[E.sq_left[d.lift_sq(Fyp.mor_global[sp], efp)]];
    F->mor_map.push_back(Fu.mor_index.at({F->obj_map[V.src[m]], F->obj_map[V.tgt[m]], ls, lsp}));
  }
  return F;
}

DdelResult ddel(const DiscreteDoubleFibration& d) {
  const DoubleCat& E = d.total();
  const DoubleCat& C = d.base();
  DdelResult res;
  res.fibers = fibers(d);
  const FiberData& fd = res.fibers;
  auto X = std::make_shared<LaxDoublePresheaf>();
  X->base = d.p->target;
  for (const auto& of : fd.obj) X->obj.push_back(of.cat);
  for (int f = 0; f < C.n_hmor(); ++f) X->hmor.push_back(hmor_action(d, fd, f));
  for (int u = 0; u < C.n_vmor(); ++u) {
    if (C.is_vid(u)) {
      X->vmor.push_back(identity_profunctor(fd.obj[C.vsrc[u]].cat));
    } else {
      X->vmor.push_back(fib(fd.vmor[u].w));
    }
  }
  for (int a = 0; a < C.n_sq(); ++a) {
    auto m = std::make_shared<ProfMorphism>();
    m->source = X->vmor[C.sq_right[a]];
    m->target = X->vmor[C.sq_left[a]];
    m->F = X->hmor[C.sq_top[a]];
    m->Fp = X->hmor[C.sq_bot[a]];
    for (int v : fd.over[C.sq_right[a]]) m->map.push_back(fd.vmor_local[E.sq_left[d.lift_sq(v, a)]]);
    X->sq.push_back(m);
  }
  fill_mu(*X, [&](int u, int up, int ve, int ue) { return fd.vmor_local[E.vc(fd.over[up][ve], fd.over[u][ue])]; });
  res.psh = X;
  return res;
}

HTransRef ddel_morphism(const DdelResult& a, const DdelResult& b, const DoubleFunctor& f) {
  const DoubleCat& C = *a.psh->base;
  auto t = std::make_shared<HorizontalTransf>();
  t->source = a.psh;
  t->target = b.psh;
  for (int x = 0; x < C.n_obj(); ++x) {
    auto F = std::make_shared<FinFunctor>();
    F->source = a.psh->obj[x];
    F->target = b.psh->obj[x];
    for (int e : a.fibers.obj[x].obj_global) F->obj_map.push_back(b.fibers.obj_local[f.obj[e]]);
    for (int s : a.fibers.obj[x].mor_global) F->mor_map.push_back(b.fibers.vmor_local[f.vmor[s]]);
    t->obj.push_back(F);
  }
  for (int u = 0; u < C.n_vmor(); ++u) {
    auto m = std::make_shared<ProfMorphism>();
    m->source = a.psh->vmor[u];
    m->target = b.psh->vmor[u];
    m->F = t->obj[C.vsrc[u]];
    m->Fp = t->obj[C.vtgt[u]];
    for (int v : a.fibers.over[u]) m->map.push_back(b.fibers.vmor_local[f.vmor[v]]);
    t->vmor.push_back(m);
  }
  return t;
}

ModRef ddel_2morphism(const DdelResult& a, const DdelResult& b, const VerticalTransformation& t) {
  const DoubleCat& C = *a.psh->base;
  auto m = std::make_shared<GlobularModification>();
  m->source = ddel_morphism(a, b, *t.source);
  m->target = ddel_morphism(a, b, *t.target);
  for (int x = 0; x < C.n_obj(); ++x) {
    auto n = std::make_shared<NatTrans>();
    n->source = m->source->obj[x];
    n->target = m->target->obj[x];
    for (int e : a.fibers.obj[x].obj_global) n->comp.push_back(b.fibers.vmor_local[t.obj_vmor[e]]);
    m->obj.push_back(n);
  }
  return m;
}

DFunRef phi_fibrational(const DiscreteDoubleFibration& d, const SliceResult& sb, int xh_) {
  const DoubleCat& E = d.total();
  const DoubleCat& C = d.base();
  const DoubleCat& S = *sb.total;
  auto F = std::make_shared<DoubleFunctor>();
  F->source = sb.total;
  F->target = d.p->source;
  const int top = E.vid[xh_];
  std::vector<int> lift_of_obj(C.n_hmor(), -1);
  for (int i = 0; i < S.n_obj(); ++i) {
    const int g = sb.obj_g[i];
    lift_of_obj[g] = E.hsrc[d.lift_h(xh_, g)];
    F->obj.push_back(lift_of_obj[g]);
  }
  for (const auto& [f, h] : sb.hmor_fh) F->hmor.push_back(d.lift_h(lift_of_obj[h], f));
  std::vector<int> eta_lift(C.n_sq(), -1);
  for (const auto& [u, eta] : sb.vmor_ueta) {
    eta_lift[eta] = d.lift_sq(top, eta);
    F->vmor.push_back(E.sq_left[eta_lift[eta]]);
  }
  for (const auto& [a, th] : sb.sq_atheta) {
    if (eta_lift[th] < 0) eta_lift[th] = d.lift_sq(top, th);
    F->sq.push_back(d.lift_sq(E.sq_left[eta_lift[th]], a));
  }
  return F;
}

IsoReport slice_comparison(const DiscreteDoubleFibration& d, int xh_) {
  const DoubleFunctor& p = *d.p;
  const DoubleCat& E = d.total();
  IsoReport rep;
  SliceResult se = slice(d.p->source, xh_);
  SliceResult sc = slice(d.p->target, p.obj[xh_]);
  const DoubleCat& SE = *se.total;
  const DoubleCat& SC = *sc.total;

  std::map<int, int> c_obj;
  std::map<std::array<int, 2>, int> c_h, c_v, c_s;
  for (int i = 0; i < SC.n_obj(); ++i) c_obj[sc.obj_g[i]] = i;
  for (int i = 0; i < SC.n_hmor(); ++i) c_h[sc.hmor_fh[i]] = i;
  for (int i = 0; i < SC.n_vmor(); ++i) c_v[sc.vmor_ueta[i]] = i;
  for (int i = 0; i < SC.n_sq(); ++i) c_s[sc.sq_atheta[i]] = i;
  std::map<int, int> e_obj;
  std::map<std::array<int, 2>, int> e_h, e_v, e_s;
  for (int i = 0; i < SE.n_obj(); ++i) e_obj[se.obj_g[i]] = i;
  for (int i = 0; i < SE.n_hmor(); ++i) e_h[se.hmor_fh[i]] = i;
  for (int i = 0; i < SE.n_vmor(); ++i) e_v[se.vmor_ueta[i]] = i;
  for (int i = 0; i < SE.n_sq(); ++i) e_s[se.sq_atheta[i]] = i;

  auto cmp = std::make_shared<DoubleFunctor>();
  cmp->source = se.total;
  cmp->target = sc.total;
  for (int g : se.obj_g) cmp->obj.push_back(c_obj.at(p.hmor[g]));
  for (const auto& [f, h] : se.hmor_fh) cmp->hmor.push_back(c_h.at({p.hmor[f], p.hmor[h]}));
  for (const auto& [u, eta] : se.vmor_ueta) cmp->vmor.push_back(c_v.at({p.vmor[u], p.sq[eta]}));
  for (const auto& [a, th] : se.sq_atheta) cmp->sq.push_back(c_s.at({p.sq[a], p.sq[th]}));
  rep.comparison = cmp;
  rep.checks.merge(validate_double_functor(*cmp), "P/x: ");
  rep.ver0_bijective = detail::is_bijection(cmp->obj, SC.n_obj()) && detail::is_bijection(cmp->vmor, SC.n_vmor());
  if (!rep.ver0_bijective) rep.checks.add("Ver0 comparison", "P/x is not bijective on objects and vertical morphisms");

  // inverse from the lift tables; a missing pair means the lifts do not land in E/x̂_
  auto inv = std::make_shared<DoubleFunctor>();
  inv->source = sc.total;
  inv->target = se.total;
  const int top = E.vid[xh_];
  auto lookup = [&](const auto& m, const auto& k, const char* what) {
    auto it = m.find(k);
    if (it == m.end()) {
      rep.checks.add("lift inverse", std::string("no ") + what + " of E/x̂_ matches the lifted data");
      return -1;
    }
    return it->second;
  };
  auto safe_h = [&](int e, int f) { return e < 0 ? -1 : d.lift_h(e, f); };
  auto safe_sq = [&](int v, int a) { return v < 0 ? -1 : d.lift_sq(v, a); };
  for (int g : sc.obj_g) inv->obj.push_back(lookup(e_obj, safe_h(xh_, g), "object"));
  for (const auto& [f, h] : sc.hmor_fh) {
    int hl = safe_h(xh_, h);
    int fl = safe_h(hl < 0 ? -1 : E.hsrc[hl], f);
    inv->hmor.push_back(lookup(e_h, std::array<int, 2>{fl, hl}, "hmor"));
  }
  for (const auto& [u, eta] : sc.vmor_ueta) {
    int el = safe_sq(top, eta);
    inv->vmor.push_back(lookup(e_v, std::array<int, 2>{el < 0 ? -1 : E.sq_left[el], el}, "vmor"));
  }
  for (const auto& [a, th] : sc.sq_atheta) {
    int tl = safe_sq(top, th);
    int al = safe_sq(tl < 0 ? -1 : E.sq_left[tl], a);
    inv->sq.push_back(lookup(e_s, std::array<int, 2>{al, tl}, "square"));
  }
  rep.inverse = inv;
  if (rep.checks.ok()) {
    rep.checks.merge(validate_double_functor(*inv), "inverse: ");
    if (rep.checks.ok()) {
      if (!(*compose_double_functors(inv, cmp) == *identity_double_functor(se.total)))
        rep.checks.add("round trip", "inverse ∘ P/x is not the identity of E/x̂_");
      if (!(*compose_double_functors(cmp, inv) == *identity_double_functor(sc.total)))
        rep.checks.add("round trip", "P/x ∘ inverse is not the identity of C/Px̂_");
    }
  }
  rep.is_iso = rep.checks.ok();
  return rep;
}

}  // namespace dc
