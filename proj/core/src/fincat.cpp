#include "doublecat/fincat.hpp"

#include <algorithm>
#include <boost/pending/disjoint_sets.hpp>
#include <map>
#include <set>
#include <tuple>

#include "doublecat/detail.hpp"

namespace dc {

using detail::name_of;

std::vector<int> FinCat::hom(int a, int b) const {
  std::vector<int> out;
  for (int m = 0; m < n_mor(); ++m)
    if (src[m] == a && tgt[m] == b) out.push_back(m);
  return out;
}

int FinCat::find_obj(std::string_view name) const {
  for (int i = 0; i < n_obj(); ++i)
    if (obj_names[i] == name) return i;
  return -1;
}

int FinCat::find_mor(std::string_view name) const {
  for (int i = 0; i < n_mor(); ++i)
    if (mor_names[i] == name) return i;
  return -1;
}

bool same_cat(const CatRef& a, const CatRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

int CatBuilder::object(std::string name, std::string identity_name) {
  int x = n_obj();
  if (identity_name.empty()) identity_name = "1_" + name;
  c_.obj_names.push_back(std::move(name));
  int m = n_mor();
  c_.mor_names.push_back(std::move(identity_name));
  c_.src.push_back(x);
  c_.tgt.push_back(x);
  c_.ident.push_back(m);
  return x;
}

int CatBuilder::morphism(std::string name, int s, int t) {
  c_.mor_names.push_back(std::move(name));
  c_.src.push_back(s);
  c_.tgt.push_back(t);
  return n_mor() - 1;
}

void CatBuilder::set_comp(int g, int f, int h) { entries_.push_back({g, f, h}); }

FinCat CatBuilder::build() {
  FinCat c = c_;
  const std::size_t n = c.mor_names.size();
  c.comp.assign(n * n, -1);
  for (std::size_t f = 0; f < n; ++f) {
    c.comp[c.ident[c.tgt[f]] * n + f] = static_cast<int>(f);
    c.comp[f * n + c.ident[c.src[f]]] = static_cast<int>(f);
  }
  for (const auto& e : entries_) c.comp[static_cast<std::size_t>(e[0]) * n + e[1]] = e[2];
  return c;
}

FinCat terminal_category() {
  CatBuilder b;
  b.object("*");
  return b.build();
}

FinCat discrete_category(int n) {
  CatBuilder b;
  for (int i = 0; i < n; ++i) b.object(std::to_string(i));
  return b.build();
}

FinCat walking_arrow() {
  CatBuilder b;
  int a = b.object("0"), c = b.object("1");
  b.morphism("f", a, c);
  return b.build();
}

FinCat walking_iso() {
  CatBuilder b;
  int a = b.object("0"), c = b.object("1");
  int f = b.morphism("f", a, c);
  int g = b.morphism("g", c, a);
  b.set_comp(g, f, 0);
  b.set_comp(f, g, 1);
  // identities were created first: 1_0 has index 0, 1_1 index 1
  return b.build();
}

FinCat product_category(const FinCat& a, const FinCat& b) {
  FinCat p;
  const int na = a.n_obj(), nb = b.n_obj(), ma = a.n_mor(), mb = b.n_mor();
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) p.obj_names.push_back("(" + a.obj_names[i] + "," + b.obj_names[j] + ")");
  for (int m = 0; m < ma; ++m)
    for (int n = 0; n < mb; ++n) {
      p.mor_names.push_back("(" + a.mor_names[m] + "," + b.mor_names[n] + ")");
      p.src.push_back(a.src[m] * nb + b.src[n]);
      p.tgt.push_back(a.tgt[m] * nb + b.tgt[n]);
    }
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) p.ident.push_back(a.ident[i] * mb + b.ident[j]);
  const std::size_t nm = static_cast<std::size_t>(ma) * mb;
  p.comp.assign(nm * nm, -1);
  for (int g = 0; g < ma; ++g)
    for (int f = 0; f < ma; ++f) {
      int gf = a.compose(g, f);
      if (gf < 0) continue;
      for (int h = 0; h < mb; ++h)
        for (int k = 0; k < mb; ++k) {
          int hk = b.compose(h, k);
          if (hk < 0) continue;
          p.comp[static_cast<std::size_t>(g * mb + h) * nm + (f * mb + k)] = gf * mb + hk;
        }
    }
  return p;
}

FinCat arrow_category(const FinCat& c) {
  CatBuilder b;
  const int n = c.n_mor();
  std::map<std::tuple<int, int, int, int>, int> index;  // (m, m', s, t) -> morphism
  for (int m = 0; m < n; ++m) {
    std::string id = "[" + c.mor_names[m] + "|" + c.mor_names[c.ident[c.src[m]]] + "," +
                     c.mor_names[c.ident[c.tgt[m]]] + "|" + c.mor_names[m] + "]";
    b.object(c.mor_names[m], id);
  }
  // identities of the builder are morphisms 0..n-1 in object order
  for (int m = 0; m < n; ++m) index[{m, m, c.ident[c.src[m]], c.ident[c.tgt[m]]}] = m;
  for (int m = 0; m < n; ++m)
    for (int mp = 0; mp < n; ++mp)
      for (int s : c.hom(c.src[m], c.src[mp]))
        for (int t : c.hom(c.tgt[m], c.tgt[mp])) {
          if (c.compose(t, m) != c.compose(mp, s)) continue;
          if (index.count({m, mp, s, t})) continue;
          std::string id = "[" + c.mor_names[m] + "|" + c.mor_names[s] + "," + c.mor_names[t] + "|" +
                           c.mor_names[mp] + "]";
          index[{m, mp, s, t}] = b.morphism(std::move(id), m, mp);
        }
  for (const auto& [k1, a] : index)
    for (const auto& [k2, bb] : index) {
      auto [m1, mp1, s1, t1] = k1;
      auto [m2, mp2, s2, t2] = k2;
      if (m2 != mp1) continue;
      auto it = index.find({m1, mp2, c.compose(s2, s1), c.compose(t2, t1)});
      if (it != index.end()) b.set_comp(bb, a, it->second);
    }
  return b.build();
}

ValidationReport validate_category(const FinCat& c, std::size_t cap) {
  ValidationReport r(cap);
  const int no = c.n_obj(), nm = c.n_mor();
  if (static_cast<int>(c.src.size()) != nm || static_cast<int>(c.tgt.size()) != nm ||
      static_cast<int>(c.ident.size()) != no ||
      c.comp.size() != static_cast<std::size_t>(nm) * nm) {
    r.add("shape", "table sizes do not match object/morphism counts");
    return r;
  }
  bool bounds_ok = true;
  for (int m = 0; m < nm; ++m)
    if (c.src[m] < 0 || c.src[m] >= no || c.tgt[m] < 0 || c.tgt[m] >= no) {
      r.add("boundary", "morphism " + name_of(c.mor_names, m) + " has an out-of-range endpoint");
      bounds_ok = false;
    }
  for (int x = 0; x < no; ++x) {
    int i = c.ident[x];
    if (i < 0 || i >= nm) {
      r.add("identity", "object " + c.obj_names[x] + " has no identity");
      bounds_ok = false;
    } else if (bounds_ok && (c.src[i] != x || c.tgt[i] != x)) {
      r.add("identity", "identity of " + c.obj_names[x] + " is not an endomorphism of it");
      bounds_ok = false;
    }
  }
  if (!bounds_ok) return r;
  bool comp_ok = true;
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f) {
      int h = c.compose(g, f);
      bool composable = c.tgt[f] == c.src[g];
      if (!composable) {
        if (h != -1) {
          r.add("composition domain", c.mor_names[g] + "∘" + c.mor_names[f] + " defined on a non-composable pair");
          comp_ok = false;
        }
        continue;
      }
      if (h < 0 || h >= nm) {
        r.add("composition domain", c.mor_names[g] + "∘" + c.mor_names[f] + " undefined");
        comp_ok = false;
      } else if (c.src[h] != c.src[f] || c.tgt[h] != c.tgt[g]) {
        r.add("composition boundary", c.mor_names[g] + "∘" + c.mor_names[f] + " = " + c.mor_names[h]);
      }
      if (r.stop()) return r;
    }
  if (!comp_ok) return r;
  for (int f = 0; f < nm; ++f) {
    if (c.compose(f, c.ident[c.src[f]]) != f) r.add("unit law", "f∘id != f at " + c.mor_names[f]);
    if (c.compose(c.ident[c.tgt[f]], f) != f) r.add("unit law", "id∘f != f at " + c.mor_names[f]);
  }
  if (r.stop()) return r;
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (c.src[g] != c.tgt[f]) continue;
      int gf = c.compose(g, f);
      for (int h = 0; h < nm; ++h) {
        if (c.src[h] != c.tgt[g]) continue;
        const int hg = c.compose(h, g);
        if (hg < 0 || gf < 0) continue;  // only after a boundary violation
        if (c.compose(hg, f) != c.compose(h, gf)) {
          r.add("associativity", "(" + c.mor_names[h] + "∘" + c.mor_names[g] + ")∘" + c.mor_names[f]);
          if (r.stop()) return r;
        }
      }
    }
  return r;
}

bool FinFunctor::operator==(const FinFunctor& o) const {
  return same_cat(source, o.source) && same_cat(target, o.target) && obj_map == o.obj_map && mor_map == o.mor_map;
}

FunctorRef identity_functor(const CatRef& c) {
  auto f = std::make_shared<FinFunctor>();
  f->source = c;
  f->target = c;
  for (int i = 0; i < c->n_obj(); ++i) f->obj_map.push_back(i);
  for (int i = 0; i < c->n_mor(); ++i) f->mor_map.push_back(i);
  return f;
}

FunctorRef compose_functors(const FunctorRef& g, const FunctorRef& f) {
  auto h = std::make_shared<FinFunctor>();
  h->source = f->source;
  h->target = g->target;
  for (int v : f->obj_map) h->obj_map.push_back(v < 0 ? -1 : g->obj_map[v]);
  for (int v : f->mor_map) h->mor_map.push_back(v < 0 ? -1 : g->mor_map[v]);
  return h;
}

bool same_functor(const FunctorRef& a, const FunctorRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool is_isomorphism(const FinFunctor& f) {
  return detail::is_bijection(f.obj_map, f.target->n_obj()) && detail::is_bijection(f.mor_map, f.target->n_mor());
}

ValidationReport validate_functor(const FinFunctor& f, std::size_t cap) {
  ValidationReport r(cap);
  if (!f.source || !f.target) {
    r.add("shape", "missing source or target");
    return r;
  }
  const FinCat& a = *f.source;
  const FinCat& b = *f.target;
  if (static_cast<int>(f.obj_map.size()) != a.n_obj() || static_cast<int>(f.mor_map.size()) != a.n_mor()) {
    r.add("shape", "map sizes do not match the source category");
    return r;
  }
  bool ok = true;
  for (int x = 0; x < a.n_obj(); ++x)
    if (f.obj_map[x] < 0 || f.obj_map[x] >= b.n_obj()) {
      r.add("object map", "object " + a.obj_names[x] + " is unmapped");
      ok = false;
    }
  for (int m = 0; m < a.n_mor(); ++m)
    if (f.mor_map[m] < 0 || f.mor_map[m] >= b.n_mor()) {
      r.add("morphism map", "morphism " + a.mor_names[m] + " is unmapped");
      ok = false;
    }
  if (!ok) return r;
  for (int m = 0; m < a.n_mor(); ++m) {
    int fm = f.mor_map[m];
    if (b.src[fm] != f.obj_map[a.src[m]] || b.tgt[fm] != f.obj_map[a.tgt[m]])
      r.add("boundary", "F(" + a.mor_names[m] + ") = " + b.mor_names[fm] + " has the wrong endpoints");
  }
  for (int x = 0; x < a.n_obj(); ++x)
    if (f.mor_map[a.ident[x]] != b.ident[f.obj_map[x]]) r.add("identity", "F(1) != 1 at " + a.obj_names[x]);
  if (r.stop()) return r;
  for (int g = 0; g < a.n_mor(); ++g)
    for (int h = 0; h < a.n_mor(); ++h) {
      int gh = a.compose(g, h);
      if (gh < 0) continue;
      if (f.mor_map[gh] != b.compose(f.mor_map[g], f.mor_map[h])) {
        r.add("composition", "F(" + a.mor_names[g] + "∘" + a.mor_names[h] + ") != F(g)∘F(h)");
        if (r.stop()) return r;
      }
    }
  return r;
}

NatTransRef identity_nat_trans(const FunctorRef& f) {
  auto a = std::make_shared<NatTrans>();
  a->source = f;
  a->target = f;
  for (int x : f->obj_map) a->comp.push_back(f->target->ident[x]);
  return a;
}

ValidationReport validate_nat_trans(const NatTrans& a, std::size_t cap) {
  ValidationReport r(cap);
  const FinFunctor& F = *a.source;
  const FinFunctor& G = *a.target;
  if (!same_cat(F.source, G.source) || !same_cat(F.target, G.target)) {
    r.add("boundary", "source and target functors are not parallel");
    return r;
  }
  const FinCat& c = *F.source;
  const FinCat& d = *F.target;
  if (static_cast<int>(a.comp.size()) != c.n_obj()) {
    r.add("shape", "component count does not match objects");
    return r;
  }
  bool ok = true;
  for (int x = 0; x < c.n_obj(); ++x) {
    int m = a.comp[x];
    if (m < 0 || m >= d.n_mor() || d.src[m] != F.obj_map[x] || d.tgt[m] != G.obj_map[x]) {
      r.add("component", "component at " + c.obj_names[x] + " has the wrong boundary");
      ok = false;
    }
  }
  if (!ok) return r;
  for (int m = 0; m < c.n_mor(); ++m) {
    int lhs = d.compose(G.mor_map[m], a.comp[c.src[m]]);
    int rhs = d.compose(a.comp[c.tgt[m]], F.mor_map[m]);
    if (lhs != rhs) {
      r.add("naturality", "square at " + c.mor_names[m] + " does not commute");
      if (r.stop()) return r;
    }
  }
  return r;
}

int Profunctor::act(int f, int fp, int e) const {
  int l = left(f, e);
  return l < 0 ? -1 : right(fp, l);
}

void Profunctor::index_cells() {
  cells.assign(static_cast<std::size_t>(src->n_obj()) * tgt->n_obj(), {});
  for (int e = 0; e < n_elem(); ++e) {
    if (elem_x[e] < 0 || elem_x[e] >= src->n_obj() || elem_y[e] < 0 || elem_y[e] >= tgt->n_obj()) continue;
    cells[static_cast<std::size_t>(elem_x[e]) * tgt->n_obj() + elem_y[e]].push_back(e);
  }
}

bool Profunctor::operator==(const Profunctor& o) const {
  return same_cat(src, o.src) && same_cat(tgt, o.tgt) && elem_names == o.elem_names && elem_x == o.elem_x &&
         elem_y == o.elem_y && lact == o.lact && ract == o.ract && identity == o.identity;
}

bool same_prof(const ProfRef& a, const ProfRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Profunctor profunctor_shell(CatRef c, CatRef cp, std::vector<std::string> names, std::vector<int> ex,
                            std::vector<int> ey) {
  Profunctor u;
  u.src = std::move(c);
  u.tgt = std::move(cp);
  u.elem_names = std::move(names);
  u.elem_x = std::move(ex);
  u.elem_y = std::move(ey);
  const std::size_t n = u.elem_names.size();
  u.lact.assign(static_cast<std::size_t>(u.src->n_mor()) * n, -1);
  u.ract.assign(static_cast<std::size_t>(u.tgt->n_mor()) * n, -1);
  u.index_cells();
  return u;
}

ProfRef identity_profunctor(const CatRef& c) {
  Profunctor u = profunctor_shell(c, c, c->mor_names, c->src, c->tgt);
  const std::size_t n = c->n_mor();
  for (int f = 0; f < c->n_mor(); ++f)
    for (int m = 0; m < c->n_mor(); ++m) {
      if (c->tgt[f] == c->src[m]) u.lact[f * n + m] = c->compose(m, f);
      if (c->src[f] == c->tgt[m]) u.ract[f * n + m] = c->compose(f, m);
    }
  u.identity = true;
  return std::make_shared<Profunctor>(std::move(u));
}

ValidationReport validate_profunctor(const Profunctor& u, std::size_t cap) {
  ValidationReport r(cap);
  if (!u.src || !u.tgt) {
    r.add("shape", "missing boundary category");
    return r;
  }
  const FinCat& c = *u.src;
  const FinCat& cp = *u.tgt;
  const int n = u.n_elem();
  if (static_cast<int>(u.elem_x.size()) != n || static_cast<int>(u.elem_y.size()) != n ||
      u.lact.size() != static_cast<std::size_t>(c.n_mor()) * n ||
      u.ract.size() != static_cast<std::size_t>(cp.n_mor()) * n) {
    r.add("shape", "table sizes do not match");
    return r;
  }
  for (int e = 0; e < n; ++e)
    if (u.elem_x[e] < 0 || u.elem_x[e] >= c.n_obj() || u.elem_y[e] < 0 || u.elem_y[e] >= cp.n_obj()) {
      r.add("cell", "element " + u.elem_names[e] + " lies in no cell");
      return r;
    }
  bool ok = true;
  for (int f = 0; f < c.n_mor(); ++f)
    for (int e = 0; e < n; ++e) {
      int v = u.left(f, e);
      if (c.tgt[f] != u.elem_x[e]) {
        if (v != -1) {
          r.add("left action domain", c.mor_names[f] + " acts on " + u.elem_names[e]);
          ok = false;
        }
        continue;
      }
      if (v < 0 || v >= n) {
        r.add("left action domain", c.mor_names[f] + " on " + u.elem_names[e] + " undefined");
        ok = false;
      } else if (u.elem_x[v] != c.src[f] || u.elem_y[v] != u.elem_y[e]) {
        r.add("left action cell", c.mor_names[f] + " on " + u.elem_names[e] + " lands in the wrong cell");
        ok = false;
      }
    }
  for (int f = 0; f < cp.n_mor(); ++f)
    for (int e = 0; e < n; ++e) {
      int v = u.right(f, e);
      if (cp.src[f] != u.elem_y[e]) {
        if (v != -1) {
          r.add("right action domain", cp.mor_names[f] + " acts on " + u.elem_names[e]);
          ok = false;
        }
        continue;
      }
      if (v < 0 || v >= n) {
        r.add("right action domain", cp.mor_names[f] + " on " + u.elem_names[e] + " undefined");
        ok = false;
      } else if (u.elem_y[v] != cp.tgt[f] || u.elem_x[v] != u.elem_x[e]) {
        r.add("right action cell", cp.mor_names[f] + " on " + u.elem_names[e] + " lands in the wrong cell");
        ok = false;
      }
    }
  if (!ok) return r;
  for (int e = 0; e < n; ++e) {
    if (u.left(c.ident[u.elem_x[e]], e) != e) r.add("left identity", "at " + u.elem_names[e]);
    if (u.right(cp.ident[u.elem_y[e]], e) != e) r.add("right identity", "at " + u.elem_names[e]);
  }
  if (r.stop()) return r;
  for (int e = 0; e < n; ++e) {
    for (int f = 0; f < c.n_mor(); ++f) {
      if (c.tgt[f] != u.elem_x[e]) continue;
      int fe = u.left(f, e);
      for (int g = 0; g < c.n_mor(); ++g) {
        if (c.tgt[g] != c.src[f]) continue;
        if (u.left(c.compose(f, g), e) != u.left(g, fe)) {
          r.add("left composition", c.mor_names[f] + "∘" + c.mor_names[g] + " on " + u.elem_names[e]);
          if (r.stop()) return r;
        }
      }
      for (int fp = 0; fp < cp.n_mor(); ++fp) {
        if (cp.src[fp] != u.elem_y[e]) continue;
        if (u.right(fp, fe) != u.left(f, u.right(fp, e))) {
          r.add("actions commute", c.mor_names[f] + ", " + cp.mor_names[fp] + " on " + u.elem_names[e]);
          if (r.stop()) return r;
        }
      }
    }
    for (int fp = 0; fp < cp.n_mor(); ++fp) {
      if (cp.src[fp] != u.elem_y[e]) continue;
      int fe = u.right(fp, e);
      for (int gp = 0; gp < cp.n_mor(); ++gp) {
        if (cp.src[gp] != cp.tgt[fp]) continue;
        if (u.right(cp.compose(gp, fp), e) != u.right(gp, fe)) {
          r.add("right composition", cp.mor_names[gp] + "∘" + cp.mor_names[fp] + " on " + u.elem_names[e]);
          if (r.stop()) return r;
        }
      }
    }
  }
  if (u.identity) {
    if (!same_cat(u.src, u.tgt)) {
      r.add("identity marker", "identity profunctor between different categories");
    } else {
      auto id = identity_profunctor(u.src);
      if (id->elem_x != u.elem_x || id->elem_y != u.elem_y || id->lact != u.lact || id->ract != u.ract)
        r.add("identity marker", "marked identity profunctor differs from the hom profunctor");
    }
  }
  return r;
}

bool ProfMorphism::operator==(const ProfMorphism& o) const {
  return same_prof(source, o.source) && same_prof(target, o.target) && same_functor(F, o.F) &&
         same_functor(Fp, o.Fp) && map == o.map;
}

ProfMorRef identity_prof_morphism(const ProfRef& u) {
  auto m = std::make_shared<ProfMorphism>();
  m->source = u;
  m->target = u;
  m->F = identity_functor(u->src);
  m->Fp = identity_functor(u->tgt);
  for (int e = 0; e < u->n_elem(); ++e) m->map.push_back(e);
  return m;
}

ValidationReport validate_prof_morphism(const ProfMorphism& m, std::size_t cap) {
  ValidationReport r(cap);
  const Profunctor& U = *m.source;
  const Profunctor& V = *m.target;
  if (!m.F || !m.Fp || !same_cat(m.F->source, U.src) || !same_cat(m.F->target, V.src) ||
      !same_cat(m.Fp->source, U.tgt) || !same_cat(m.Fp->target, V.tgt)) {
    r.add("boundary", "functors do not match the boundary categories");
    return r;
  }
  if (static_cast<int>(m.map.size()) != U.n_elem()) {
    r.add("shape", "map size does not match the source elements");
    return r;
  }
  bool ok = true;
  for (int e = 0; e < U.n_elem(); ++e) {
    int v = m.map[e];
    if (v < 0 || v >= V.n_elem()) {
      r.add("component", "element " + U.elem_names[e] + " is unmapped");
      ok = false;
    } else if (V.elem_x[v] != m.F->obj_map[U.elem_x[e]] || V.elem_y[v] != m.Fp->obj_map[U.elem_y[e]]) {
      r.add("component", "element " + U.elem_names[e] + " lands in the wrong cell");
      ok = false;
    }
  }
  if (!ok) return r;
  const FinCat& c = *U.src;
  const FinCat& cp = *U.tgt;
  for (int e = 0; e < U.n_elem(); ++e) {
    for (int f = 0; f < c.n_mor(); ++f) {
      if (c.tgt[f] != U.elem_x[e]) continue;
      if (m.map[U.left(f, e)] != V.left(m.F->mor_map[f], m.map[e])) {
        r.add("naturality (left)", c.mor_names[f] + " on " + U.elem_names[e]);
        if (r.stop()) return r;
      }
    }
    for (int f = 0; f < cp.n_mor(); ++f) {
      if (cp.src[f] != U.elem_y[e]) continue;
      if (m.map[U.right(f, e)] != V.right(m.Fp->mor_map[f], m.map[e])) {
        r.add("naturality (right)", cp.mor_names[f] + " on " + U.elem_names[e]);
        if (r.stop()) return r;
      }
    }
  }
  return r;
}

bool is_componentwise_bijection(const ProfMorphism& m) {
  const Profunctor& U = *m.source;
  const Profunctor& V = *m.target;
  for (int x = 0; x < U.src->n_obj(); ++x)
    for (int y = 0; y < U.tgt->n_obj(); ++y) {
      const auto& cell = U.at(x, y);
      const auto& image = V.at(m.F->obj_map[x], m.Fp->obj_map[y]);
      if (cell.size() != image.size()) return false;
      std::set<int> seen;
      for (int e : cell) seen.insert(m.map[e]);
      if (seen.size() != cell.size()) return false;
    }
  return true;
}

CoendResult coend(const FinCat& c, const Profunctor& u) {
  if (!(*u.src == c) || !(*u.tgt == c)) throw std::invalid_argument("coend: profunctor is not an endo-profunctor on the category");
  const int n = u.n_elem();
  boost::disjoint_sets_with_storage<> ds(n);
  for (int f = 0; f < c.n_mor(); ++f)
    for (int w : u.at(c.tgt[f], c.src[f])) ds.union_set(u.left(f, w), u.right(f, w));
  CoendResult res;
  res.project.assign(n, -1);
  std::unordered_map<std::size_t, int> root_class;
  for (int x = 0; x < c.n_obj(); ++x)
    for (int e : u.at(x, x)) {
      std::size_t root = ds.find_set(e);
      auto it = root_class.find(root);
      if (it == root_class.end()) {
        it = root_class.emplace(root, res.n_classes()).first;
        res.section.push_back({x, e});
      }
      res.project[e] = it->second;
    }
  return res;
}

namespace {

std::int64_t pair_key(int ve, int ue, int nu) { return static_cast<std::int64_t>(ve) * nu + ue; }

}  // namespace

int Composite::class_of(int ve, int ue) const {
  if (ve < 0 || ue < 0) return -1;
  switch (unit) {
    case Unit::First:
      if (first->elem_y[ue] != second->elem_x[ve]) return -1;
      return second->left(ue, ve);
    case Unit::Second:
      if (first->elem_y[ue] != second->elem_x[ve]) return -1;
      return first->right(ve, ue);
    case Unit::None: {
      auto it = cls.find(pair_key(ve, ue, first->n_elem()));
      return it == cls.end() ? -1 : it->second;
    }
  }
  return -1;
}

CompositeRef compose(const ProfRef& u, const ProfRef& v) {
  if (!same_cat(u->tgt, v->src)) throw std::invalid_argument("compose: boundary mismatch");
  auto out = std::make_shared<Composite>();
  out->first = u;
  out->second = v;
  if (u->identity) {
    out->unit = Composite::Unit::First;
    out->result = v;
    return out;
  }
  if (v->identity) {
    out->unit = Composite::Unit::Second;
    out->result = u;
    return out;
  }
  const FinCat& C = *u->src;
  const FinCat& Cm = *u->tgt;
  const FinCat& Cpp = *v->tgt;
  const int nu = u->n_elem();
  std::vector<std::string> names;
  std::vector<int> ex, ey;
  for (int x = 0; x < C.n_obj(); ++x)
    for (int z = 0; z < Cpp.n_obj(); ++z) {
      std::vector<std::array<int, 2>> pairs;
      std::unordered_map<std::int64_t, int> local;
      for (int y = 0; y < Cm.n_obj(); ++y)
        for (int ve : v->at(y, z))
          for (int ue : u->at(x, y)) {
            local[pair_key(ve, ue, nu)] = static_cast<int>(pairs.size());
            pairs.push_back({ve, ue});
          }
      if (pairs.empty()) continue;
      boost::disjoint_sets_with_storage<> ds(pairs.size());
      for (int g = 0; g < Cm.n_mor(); ++g)
        for (int a2 : v->at(Cm.tgt[g], z))
          for (int a1 : u->at(x, Cm.src[g])) {
            int p = local.at(pair_key(v->left(g, a2), a1, nu));
            int q = local.at(pair_key(a2, u->right(g, a1), nu));
            ds.union_set(p, q);
          }
      std::unordered_map<std::size_t, int> root_elem;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::size_t root = ds.find_set(i);
        auto it = root_elem.find(root);
        if (it == root_elem.end()) {
          int id = static_cast<int>(names.size());
          it = root_elem.emplace(root, id).first;
          names.push_back("[" + v->elem_names[pairs[i][0]] + "," + u->elem_names[pairs[i][1]] + "]");
          ex.push_back(x);
          ey.push_back(z);
          out->rep.push_back(pairs[i]);
        }
        out->cls[pair_key(pairs[i][0], pairs[i][1], nu)] = it->second;
      }
    }
  Profunctor w = profunctor_shell(u->src, v->tgt, std::move(names), std::move(ex), std::move(ey));
  const std::size_t n = w.elem_names.size();
  for (std::size_t r = 0; r < n; ++r) {
    auto [ve, ue] = out->rep[r];
    for (int f = 0; f < C.n_mor(); ++f)
      if (C.tgt[f] == w.elem_x[r]) w.lact[f * n + r] = out->class_of(ve, u->left(f, ue));
    for (int f = 0; f < Cpp.n_mor(); ++f)
      if (Cpp.src[f] == w.elem_y[r]) w.ract[f * n + r] = out->class_of(v->right(f, ve), ue);
  }
  out->result = std::make_shared<Profunctor>(std::move(w));
  return out;
}

ProfRef compose_profunctors(const ProfRef& u, const ProfRef& v) { return compose(u, v)->result; }

ValidationReport check_composite_associativity(const ProfRef& u, const ProfRef& v, const ProfRef& w) {
  ValidationReport r;
  auto uv = compose(u, v);
  auto left = compose(uv->result, w);
  auto vw = compose(v, w);
  auto right = compose(u, vw->result);
  const int nu = u->n_elem(), nv = v->n_elem();
  auto key = [&](int we, int ve, int ue) {
    return (static_cast<std::int64_t>(we) * nv + ve) * nu + ue;
  };
  std::vector<std::array<int, 3>> triples;
  std::unordered_map<std::int64_t, int> index;
  for (int ue = 0; ue < nu; ++ue)
    for (int x2 = 0; x2 < v->tgt->n_obj(); ++x2)
      for (int ve : v->at(u->elem_y[ue], x2))
        for (int x3 = 0; x3 < w->tgt->n_obj(); ++x3)
          for (int we : w->at(x2, x3)) {
            index[key(we, ve, ue)] = static_cast<int>(triples.size());
            triples.push_back({we, ve, ue});
          }
  if (triples.empty()) return r;
  boost::disjoint_sets_with_storage<> ds(triples.size());
  const FinCat& C1 = *u->tgt;
  const FinCat& C2 = *v->tgt;
  for (int ue = 0; ue < nu; ++ue)
    for (int g = 0; g < C1.n_mor(); ++g) {
      if (C1.src[g] != u->elem_y[ue]) continue;
      for (int x2 = 0; x2 < C2.n_obj(); ++x2)
        for (int a2 : v->at(C1.tgt[g], x2))
          for (int x3 = 0; x3 < w->tgt->n_obj(); ++x3)
            for (int we : w->at(x2, x3))
              ds.union_set(index.at(key(we, v->left(g, a2), ue)), index.at(key(we, a2, u->right(g, ue))));
    }
  for (int ve = 0; ve < nv; ++ve)
    for (int h = 0; h < C2.n_mor(); ++h) {
      if (C2.src[h] != v->elem_y[ve]) continue;
      for (int x3 = 0; x3 < w->tgt->n_obj(); ++x3)
        for (int b2 : w->at(C2.tgt[h], x3))
          for (int x0 = 0; x0 < u->src->n_obj(); ++x0)
            for (int ue : u->at(x0, v->elem_x[ve]))
              ds.union_set(index.at(key(w->left(h, b2), ve, ue)), index.at(key(b2, v->right(h, ve), ue)));
    }
  auto check = [&](const char* side, auto&& label_of, int n_labels) {
    std::unordered_map<std::size_t, int> root_label;
    std::unordered_map<int, std::size_t> label_root;
    for (std::size_t i = 0; i < triples.size(); ++i) {
      auto [we, ve, ue] = triples[i];
      int lab = label_of(we, ve, ue);
      std::size_t root = ds.find_set(i);
      auto a = root_label.emplace(root, lab).first;
      auto b = label_root.emplace(lab, root).first;
      if (lab < 0 || a->second != lab || b->second != root) {
        r.add(std::string("associativity (") + side + ")",
              "triple [" + w->elem_names[we] + "," + v->elem_names[ve] + "," + u->elem_names[ue] + "]");
        return;
      }
    }
    if (static_cast<int>(label_root.size()) != n_labels)
      r.add(std::string("associativity (") + side + ")", "bracketed composite has classes outside the triple quotient");
  };
  check("left", [&](int we, int ve, int ue) { return left->class_of(we, uv->class_of(ve, ue)); },
        left->result->n_elem());
  check("right", [&](int we, int ve, int ue) { return right->class_of(vw->class_of(we, ve), ue); },
        right->result->n_elem());
  return r;
}

TSFibResult check_two_sided_fibration(const FunctorRef& p, const FunctorRef& q) {
  if (!same_cat(p->source, q->source)) throw std::invalid_argument("two-sided fibration: P and Q have different sources");
  TSFibResult res;
  ValidationReport& r = res.failure;
  r.merge(validate_functor(*p), "P: ");
  r.merge(validate_functor(*q), "Q: ");
  if (!r.ok()) return res;
  const FinCat& E = *p->source;
  const FinCat& C = *p->target;
  const FinCat& Cp = *q->target;
  TwoSidedFibWitness w;
  w.p = p;
  w.q = q;
  const std::size_t mc = C.n_mor(), mcp = Cp.n_mor();
  w.liftP.assign(E.n_obj() * mc, -1);
  w.liftQ.assign(E.n_obj() * mcp, -1);
  std::vector<int> countP(E.n_obj() * mc, 0), countQ(E.n_obj() * mcp, 0);
  for (int g = 0; g < E.n_mor(); ++g) {
    if (Cp.is_identity(q->mor_map[g])) {
      std::size_t k = E.tgt[g] * mc + p->mor_map[g];
      ++countP[k];
      w.liftP[k] = g;
    }
    if (C.is_identity(p->mor_map[g])) {
      std::size_t k = E.src[g] * mcp + q->mor_map[g];
      ++countQ[k];
      w.liftQ[k] = g;
    }
  }
  for (int e = 0; e < E.n_obj(); ++e) {
    for (int f = 0; f < C.n_mor(); ++f) {
      if (C.tgt[f] != p->obj_map[e]) continue;
      int n = countP[e * mc + f];
      if (n != 1)
        r.add(n == 0 ? "P-lift missing" : "P-lift ambiguous", C.mor_names[f] + " with target " + E.obj_names[e]);
    }
    for (int f = 0; f < Cp.n_mor(); ++f) {
      if (Cp.src[f] != q->obj_map[e]) continue;
      int n = countQ[e * mcp + f];
      if (n != 1)
        r.add(n == 0 ? "Q-lift missing" : "Q-lift ambiguous", Cp.mor_names[f] + " with source " + E.obj_names[e]);
    }
  }
  if (!r.ok()) return res;
  for (int g = 0; g < E.n_mor(); ++g) {
    int a = w.lift_p(E.tgt[g], p->mor_map[g]);
    int b = w.lift_q(E.src[g], q->mor_map[g]);
    if (E.tgt[b] != E.src[a] || E.compose(a, b) != g) r.add("factorization", "at " + E.mor_names[g]);
  }
  if (r.ok()) res.witness = std::move(w);
  return res;
}

ProfRef fib(const TwoSidedFibWitness& w) {
  const FinCat& E = w.total();
  const FinCat& C = *w.p->target;
  const FinCat& Cp = *w.q->target;
  Profunctor u = profunctor_shell(w.p->target, w.q->target, E.obj_names, w.p->obj_map, w.q->obj_map);
  const std::size_t n = E.n_obj();
  for (int e = 0; e < E.n_obj(); ++e) {
    for (int f = 0; f < C.n_mor(); ++f)
      if (C.tgt[f] == u.elem_x[e]) u.lact[f * n + e] = E.src[w.lift_p(e, f)];
    for (int f = 0; f < Cp.n_mor(); ++f)
      if (Cp.src[f] == u.elem_y[e]) u.ract[f * n + e] = E.tgt[w.lift_q(e, f)];
  }
  return std::make_shared<Profunctor>(std::move(u));
}

namespace {

TwoSidedFibWitness witness_or_throw(const FunctorRef& p, const FunctorRef& q, const char* what) {
  auto res = check_two_sided_fibration(p, q);
  if (!res.witness) throw std::logic_error(std::string(what) + ": not a two-sided discrete fibration\n" + res.failure.str());
  return std::move(*res.witness);
}

}  // namespace

TwoSidedFibWitness elements_fibration(const ProfRef& u) {
  const FinCat& C = *u->src;
  const FinCat& Cp = *u->tgt;
  CatBuilder b;
  for (int e = 0; e < u->n_elem(); ++e) b.object(u->elem_names[e], "(" + u->elem_names[e] + "|1,1|" + u->elem_names[e] + ")");
  struct Mor {
    int s, t, f, fp;
  };
  std::vector<Mor> mors;
  for (int e = 0; e < u->n_elem(); ++e) mors.push_back({e, e, C.ident[u->elem_x[e]], Cp.ident[u->elem_y[e]]});
  std::map<std::tuple<int, int, int, int>, int> index;
  for (int e = 0; e < u->n_elem(); ++e) index[{e, e, mors[e].f, mors[e].fp}] = e;
  for (int e = 0; e < u->n_elem(); ++e)
    for (int e2 = 0; e2 < u->n_elem(); ++e2)
      for (int f : C.hom(u->elem_x[e], u->elem_x[e2]))
        for (int fp : Cp.hom(u->elem_y[e], u->elem_y[e2])) {
          if (C.is_identity(f) && Cp.is_identity(fp)) continue;
          if (u->left(f, e2) != u->right(fp, e)) continue;
          int m = b.morphism("(" + u->elem_names[e] + "|" + C.mor_names[f] + "," + Cp.mor_names[fp] + "|" +
                                 u->elem_names[e2] + ")",
                             e, e2);
          index[{e, e2, f, fp}] = m;
          mors.push_back({e, e2, f, fp});
        }
  for (std::size_t a = 0; a < mors.size(); ++a)
    for (std::size_t c = 0; c < mors.size(); ++c) {
      if (mors[c].s != mors[a].t) continue;
      auto it = index.find({mors[a].s, mors[c].t, C.compose(mors[c].f, mors[a].f), Cp.compose(mors[c].fp, mors[a].fp)});
      if (it != index.end()) b.set_comp(static_cast<int>(c), static_cast<int>(a), it->second);
    }
  auto E = std::make_shared<FinCat>(b.build());
  auto p = std::make_shared<FinFunctor>();
  auto q = std::make_shared<FinFunctor>();
  p->source = q->source = E;
  p->target = u->src;
  q->target = u->tgt;
  p->obj_map = u->elem_x;
  q->obj_map = u->elem_y;
  for (const auto& m : mors) {
    p->mor_map.push_back(m.f);
    q->mor_map.push_back(m.fp);
  }
  return witness_or_throw(p, q, "elements_fibration");
}

TwoSidedFibWitness arrow_fibration(const CatRef& c) {
  auto A = std::make_shared<FinCat>(arrow_category(*c));
  auto s = std::make_shared<FinFunctor>();
  auto t = std::make_shared<FinFunctor>();
  s->source = t->source = A;
  s->target = t->target = c;
  s->obj_map = c->src;
  t->obj_map = c->tgt;
  // morphism names are [m|s,t|m']; recover s and t from the commutative square data
  for (int m = 0; m < A->n_mor(); ++m) {
    int a = A->src[m], b = A->tgt[m];
    int sm = -1, tm = -1;
    for (int x : c->hom(c->src[a], c->src[b]))
      for (int y : c->hom(c->tgt[a], c->tgt[b]))
        if (A->mor_names[m] == "[" + c->mor_names[a] + "|" + c->mor_names[x] + "," + c->mor_names[y] + "|" +
                                   c->mor_names[b] + "]") {
          sm = x;
          tm = y;
        }
    s->mor_map.push_back(sm);
    t->mor_map.push_back(tm);
  }
  return witness_or_throw(s, t, "arrow_fibration");
}

namespace {

struct TSComposite {
  TwoSidedFibWitness w;
  std::vector<std::array<int, 3>> members;  // (e, e', class)
};

TSComposite compose_ts_impl(const TwoSidedFibWitness& w1, const TwoSidedFibWitness& w2) {
  if (!same_cat(w1.q->target, w2.p->target)) throw std::invalid_argument("compose_ts_fibrations: boundary mismatch");
  const FinCat& E = w1.total();
  const FinCat& Ep = w2.total();
  const FinCat& Cm = *w1.q->target;
  const FinCat& C = *w1.p->target;
  const FinCat& Cpp = *w2.q->target;
  const int ne = E.n_obj(), nep = Ep.n_obj();
  std::vector<int> pb(static_cast<std::size_t>(ne) * nep, -1);
  std::vector<std::array<int, 2>> objs;
  for (int e = 0; e < ne; ++e)
    for (int ep = 0; ep < nep; ++ep)
      if (w1.q->obj_map[e] == w2.p->obj_map[ep]) {
        pb[e * nep + ep] = static_cast<int>(objs.size());
        objs.push_back({e, ep});
      }
  TSComposite out;
  auto Tot = std::make_shared<FinCat>();
  auto P = std::make_shared<FinFunctor>();
  auto Q = std::make_shared<FinFunctor>();
  P->source = Q->source = Tot;
  P->target = w1.p->target;
  Q->target = w2.q->target;
  std::vector<int> cls(objs.size(), -1);
  if (!objs.empty()) {
    boost::disjoint_sets_with_storage<> ds(objs.size());
    for (int e = 0; e < ne; ++e)
      for (int ep = 0; ep < nep; ++ep)
        for (int g : Cm.hom(w1.q->obj_map[e], w2.p->obj_map[ep])) {
          int a = pb[e * nep + Ep.src[w2.lift_p(ep, g)]];
          int b = pb[E.tgt[w1.lift_q(e, g)] * nep + ep];
          ds.union_set(a, b);
        }
    std::unordered_map<std::size_t, int> root_cls;
    for (std::size_t i = 0; i < objs.size(); ++i) {
      auto it = root_cls.find(ds.find_set(i));
      if (it == root_cls.end()) {
        it = root_cls.emplace(ds.find_set(i), Tot->n_obj()).first;
        Tot->obj_names.push_back("[" + E.obj_names[objs[i][0]] + "," + Ep.obj_names[objs[i][1]] + "]");
        P->obj_map.push_back(w1.p->obj_map[objs[i][0]]);
        Q->obj_map.push_back(w2.q->obj_map[objs[i][1]]);
      }
      cls[i] = it->second;
      out.members.push_back({objs[i][0], objs[i][1], cls[i]});
    }
  }
  // Morphisms are determined by their endpoints and their image in C x C''; collect the
  // images of the pullback morphisms and close them under composition.
  std::map<std::tuple<int, int, int, int>, int> index;
  std::vector<std::array<int, 4>> mors;
  auto add = [&](int s, int t, int f, int fpp) {
    auto [it, fresh] = index.emplace(std::make_tuple(s, t, f, fpp), static_cast<int>(mors.size()));
    if (fresh) mors.push_back({s, t, f, fpp});
    return fresh;
  };
  for (int c = 0; c < Tot->n_obj(); ++c) add(c, c, C.ident[P->obj_map[c]], Cpp.ident[Q->obj_map[c]]);
  for (int m = 0; m < E.n_mor(); ++m)
    for (int mp = 0; mp < Ep.n_mor(); ++mp) {
      if (w1.q->mor_map[m] != w2.p->mor_map[mp]) continue;
      int s = pb[E.src[m] * nep + Ep.src[mp]];
      int t = pb[E.tgt[m] * nep + Ep.tgt[mp]];
      add(cls[s], cls[t], w1.p->mor_map[m], w2.q->mor_map[mp]);
    }
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t n = mors.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (mors[b][0] == mors[a][1])
          grew |= add(mors[a][0], mors[b][1], C.compose(mors[b][2], mors[a][2]), Cpp.compose(mors[b][3], mors[a][3]));
  }
  for (const auto& m : mors) {
    Tot->mor_names.push_back("<" + C.mor_names[m[2]] + "," + Cpp.mor_names[m[3]] + ">:" + Tot->obj_names[m[0]] +
                             "->" + Tot->obj_names[m[1]]);
    Tot->src.push_back(m[0]);
    Tot->tgt.push_back(m[1]);
    P->mor_map.push_back(m[2]);
    Q->mor_map.push_back(m[3]);
  }
  for (int c = 0; c < Tot->n_obj(); ++c) Tot->ident.push_back(c);
  const std::size_t nm = mors.size();
  Tot->comp.assign(nm * nm, -1);
  for (std::size_t a = 0; a < nm; ++a)
    for (std::size_t b = 0; b < nm; ++b)
      if (mors[b][0] == mors[a][1])
        Tot->comp[b * nm + a] = index.at({mors[a][0], mors[b][1], C.compose(mors[b][2], mors[a][2]),
                                          Cpp.compose(mors[b][3], mors[a][3])});
  out.w = witness_or_throw(P, Q, "compose_ts_fibrations");
  return out;
}

}  // namespace

TwoSidedFibWitness compose_ts_fibrations(const TwoSidedFibWitness& w1, const TwoSidedFibWitness& w2) {
  return compose_ts_impl(w1, w2).w;
}

ValidationReport check_fib_composition(const TwoSidedFibWitness& w1, const TwoSidedFibWitness& w2) {
  ValidationReport r;
  auto tc = compose_ts_impl(w1, w2);
  auto lhs = fib(tc.w);
  auto rhs = compose(fib(w1), fib(w2));
  std::vector<int> map(lhs->n_elem(), -2);
  for (auto [e, ep, c] : tc.members) {
    int target = rhs->class_of(ep, e);
    if (map[c] == -2) map[c] = target;
    if (map[c] != target) r.add("well-defined", "class " + lhs->elem_names[c] + " splits in the profunctor composite");
  }
  if (!r.ok()) return r;
  ProfMorphism m;
  m.source = lhs;
  m.target = rhs->result;
  m.F = identity_functor(lhs->src);
  m.Fp = identity_functor(lhs->tgt);
  m.map = map;
  r.merge(validate_prof_morphism(m));
  if (r.ok() && !is_componentwise_bijection(m)) r.add("bijection", "fib of the composite is not componentwise bijective");
  return r;
}

}  // namespace dc
