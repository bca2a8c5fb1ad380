#include "doublecat/dblcat.hpp"

#include <functional>
#include <unordered_map>

#include "doublecat/detail.hpp"

namespace dc {

using detail::name_of;

namespace {

int find_name(const std::vector<std::string>& names, std::string_view n) {
  for (int i = 0; i < static_cast<int>(names.size()); ++i)
    if (names[i] == n) return i;
  return -1;
}

template <class Vec>
bool in_range(const Vec& v, int n) {
  for (int x : v)
    if (x < 0 || x >= n) return false;
  return true;
}

}  // namespace

void DoubleCat::reset_tables() {
  const std::size_t nh = hmor_names.size(), nv = vmor_names.size(), ns = sq_names.size();
  hcomp.assign(nh * nh, -1);
  vcomp.assign(nv * nv, -1);
  hcomp_sq.assign(ns * ns, -1);
  vcomp_sq.assign(ns * ns, -1);
}

int DoubleCat::find_obj(std::string_view n) const { return find_name(obj_names, n); }
int DoubleCat::find_hmor(std::string_view n) const { return find_name(hmor_names, n); }
int DoubleCat::find_vmor(std::string_view n) const { return find_name(vmor_names, n); }
int DoubleCat::find_sq(std::string_view n) const { return find_name(sq_names, n); }

int DoubleCatBuilder::object(std::string name) {
  DoubleCat& d = d_;
  int x = d.n_obj();
  int f = d.n_hmor(), u = d.n_vmor(), s = d.n_sq();
  d.hmor_names.push_back("1_" + name);
  d.hsrc.push_back(x);
  d.htgt.push_back(x);
  d.vmor_names.push_back("e_" + name);
  d.vsrc.push_back(x);
  d.vtgt.push_back(x);
  d.sq_names.push_back("1_e_" + name);
  d.sq_left.push_back(u);
  d.sq_right.push_back(u);
  d.sq_top.push_back(f);
  d.sq_bot.push_back(f);
  d.hid.push_back(f);
  d.vid.push_back(u);
  d.hid_sq.push_back(s);
  d.vid_sq.push_back(s);
  d.obj_names.push_back(std::move(name));
  return x;
}

int DoubleCatBuilder::hmor(std::string name, int s, int t) {
  DoubleCat& d = d_;
  int f = d.n_hmor();
  d.sq_names.push_back("e_" + name);
  d.sq_left.push_back(d.vid[s]);
  d.sq_right.push_back(d.vid[t]);
  d.sq_top.push_back(f);
  d.sq_bot.push_back(f);
  d.vid_sq.push_back(d.n_sq() - 1);
  d.hmor_names.push_back(std::move(name));
  d.hsrc.push_back(s);
  d.htgt.push_back(t);
  return f;
}

int DoubleCatBuilder::vmor(std::string name, int s, int t) {
  DoubleCat& d = d_;
  int u = d.n_vmor();
  d.sq_names.push_back("1_" + name);
  d.sq_left.push_back(u);
  d.sq_right.push_back(u);
  d.sq_top.push_back(d.hid[s]);
  d.sq_bot.push_back(d.hid[t]);
  d.hid_sq.push_back(d.n_sq() - 1);
  d.vmor_names.push_back(std::move(name));
  d.vsrc.push_back(s);
  d.vtgt.push_back(t);
  return u;
}

int DoubleCatBuilder::square(std::string name, int left, int top, int bottom, int right) {
  DoubleCat& d = d_;
  d.sq_names.push_back(std::move(name));
  d.sq_left.push_back(left);
  d.sq_right.push_back(right);
  d.sq_top.push_back(top);
  d.sq_bot.push_back(bottom);
  return d.n_sq() - 1;
}

DoubleCat DoubleCatBuilder::build() const {
  DoubleCat d = d_;
  d.reset_tables();
  const std::size_t nh = d.n_hmor(), nv = d.n_vmor(), ns = d.n_sq();
  for (std::size_t f = 0; f < nh; ++f) {
    d.hcomp[f * nh + d.hid[d.hsrc[f]]] = static_cast<int>(f);
    d.hcomp[d.hid[d.htgt[f]] * nh + f] = static_cast<int>(f);
  }
  for (std::size_t u = 0; u < nv; ++u) {
    d.vcomp[u * nv + d.vid[d.vsrc[u]]] = static_cast<int>(u);
    d.vcomp[d.vid[d.vtgt[u]] * nv + u] = static_cast<int>(u);
  }
  for (std::size_t a = 0; a < ns; ++a) {
    d.hcomp_sq[a * ns + d.hid_sq[d.sq_left[a]]] = static_cast<int>(a);
    d.hcomp_sq[d.hid_sq[d.sq_right[a]] * ns + a] = static_cast<int>(a);
    d.vcomp_sq[a * ns + d.vid_sq[d.sq_top[a]]] = static_cast<int>(a);
    d.vcomp_sq[d.vid_sq[d.sq_bot[a]] * ns + a] = static_cast<int>(a);
  }
  for (const auto& e : hc_) d.hcomp[e[0] * nh + e[1]] = e[2];
  for (const auto& e : vc_) d.vcomp[e[0] * nv + e[1]] = e[2];
  for (const auto& e : hs_) d.hcomp_sq[e[0] * ns + e[1]] = e[2];
  for (const auto& e : vs_) d.vcomp_sq[e[0] * ns + e[1]] = e[2];
  for (std::size_t g = 0; g < nh; ++g)
    for (std::size_t f = 0; f < nh; ++f) {
      int h = d.hc(g, f);
      if (h < 0) continue;
      int& slot = d.hcomp_sq[d.vid_sq[g] * ns + d.vid_sq[f]];
      if (slot < 0) slot = d.vid_sq[h];
    }
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t u = 0; u < nv; ++u) {
      int w = d.vc(v, u);
      if (w < 0) continue;
      int& slot = d.vcomp_sq[d.hid_sq[v] * ns + d.hid_sq[u]];
      if (slot < 0) slot = d.hid_sq[w];
    }
  return d;
}

FinCat underlying(const DoubleCat& d, Which which) {
  FinCat c;
  switch (which) {
    case Which::Ver0:
      c.obj_names = d.obj_names;
      c.mor_names = d.vmor_names;
      c.src = d.vsrc;
      c.tgt = d.vtgt;
      c.ident = d.vid;
      c.comp = d.vcomp;
      break;
    case Which::Hor0:
      c.obj_names = d.obj_names;
      c.mor_names = d.hmor_names;
      c.src = d.hsrc;
      c.tgt = d.htgt;
      c.ident = d.hid;
      c.comp = d.hcomp;
      break;
    case Which::Ver1:
      c.obj_names = d.hmor_names;
      c.mor_names = d.sq_names;
      c.src = d.sq_top;
      c.tgt = d.sq_bot;
      c.ident = d.vid_sq;
      c.comp = d.vcomp_sq;
      break;
  }
  return c;
}

FinCat square_category_horizontal(const DoubleCat& d) {
  FinCat c;
  c.obj_names = d.vmor_names;
  c.mor_names = d.sq_names;
  c.src = d.sq_left;
  c.tgt = d.sq_right;
  c.ident = d.hid_sq;
  c.comp = d.hcomp_sq;
  return c;
}

ValidationReport validate_double_category(const DoubleCat& d, std::size_t cap) {
  ValidationReport r(cap);
  const int no = d.n_obj(), nh = d.n_hmor(), nv = d.n_vmor(), ns = d.n_sq();
  auto sz = [](const std::vector<int>& v, int n) { return static_cast<int>(v.size()) == n; };
  if (!sz(d.hsrc, nh) || !sz(d.htgt, nh) || !sz(d.vsrc, nv) || !sz(d.vtgt, nv) || !sz(d.sq_left, ns) ||
      !sz(d.sq_right, ns) || !sz(d.sq_top, ns) || !sz(d.sq_bot, ns) || !sz(d.hid, no) || !sz(d.vid, no) ||
      !sz(d.hid_sq, nv) || !sz(d.vid_sq, nh) || d.hcomp.size() != static_cast<std::size_t>(nh) * nh ||
      d.vcomp.size() != static_cast<std::size_t>(nv) * nv ||
      d.hcomp_sq.size() != static_cast<std::size_t>(ns) * ns ||
      d.vcomp_sq.size() != static_cast<std::size_t>(ns) * ns) {
    r.add("shape", "table sizes do not match the cell counts");
    return r;
  }
  if (!in_range(d.sq_left, nv) || !in_range(d.sq_right, nv) || !in_range(d.sq_top, nh) ||
      !in_range(d.sq_bot, nh) || !in_range(d.hid_sq, ns) || !in_range(d.vid_sq, ns)) {
    r.add("shape", "square boundary or identity square out of range");
    return r;
  }
  r.merge(validate_category(underlying(d, Which::Hor0), cap), "horizontal morphisms: ");
  r.merge(validate_category(underlying(d, Which::Ver0), cap), "vertical morphisms: ");
  if (!r.ok()) return r;
  r.merge(validate_category(square_category_horizontal(d), cap), "squares (horizontal): ");
  r.merge(validate_category(underlying(d, Which::Ver1), cap), "squares (vertical): ");
  for (int a = 0; a < ns; ++a) {
    int u = d.sq_left[a], v = d.sq_right[a], f = d.sq_top[a], fp = d.sq_bot[a];
    if (d.hsrc[f] != d.vsrc[u] || d.htgt[f] != d.vsrc[v] || d.hsrc[fp] != d.vtgt[u] || d.htgt[fp] != d.vtgt[v])
      r.add("square boundary", "corners of " + d.sq_names[a] + " do not meet");
  }
  for (int u = 0; u < nv; ++u) {
    int s = d.hid_sq[u];
    if (d.sq_top[s] != d.hid[d.vsrc[u]] || d.sq_bot[s] != d.hid[d.vtgt[u]])
      r.add("horizontal identity square", "1_" + d.vmor_names[u] + " has the wrong top or bottom");
  }
  for (int f = 0; f < nh; ++f) {
    int s = d.vid_sq[f];
    if (d.sq_left[s] != d.vid[d.hsrc[f]] || d.sq_right[s] != d.vid[d.htgt[f]])
      r.add("vertical identity square", "e_" + d.hmor_names[f] + " has the wrong vertical edges");
  }
  if (!r.ok()) return r;
  for (int b = 0; b < ns; ++b)
    for (int a = 0; a < ns; ++a) {
      int c = d.hc_sq(b, a);
      if (c >= 0 && (d.sq_top[c] != d.hc(d.sq_top[b], d.sq_top[a]) || d.sq_bot[c] != d.hc(d.sq_bot[b], d.sq_bot[a])))
        r.add("horizontal composite boundary", d.sq_names[b] + "∘" + d.sq_names[a]);
      c = d.vc_sq(b, a);
      if (c >= 0 &&
          (d.sq_left[c] != d.vc(d.sq_left[b], d.sq_left[a]) || d.sq_right[c] != d.vc(d.sq_right[b], d.sq_right[a])))
        r.add("vertical composite boundary", d.sq_names[b] + "•" + d.sq_names[a]);
      if (r.stop()) return r;
    }
  if (!r.ok()) return r;
  for (int x = 0; x < no; ++x)
    if (d.vid_sq[d.hid[x]] != d.hid_sq[d.vid[x]]) r.add("identity overlap", "e_{1_x} != 1_{e_x} at " + d.obj_names[x]);
  for (int g = 0; g < nh; ++g)
    for (int f = 0; f < nh; ++f) {
      int h = d.hc(g, f);
      if (h >= 0 && d.hc_sq(d.vid_sq[g], d.vid_sq[f]) != d.vid_sq[h])
        r.add("vertical identity composite", "e_g∘e_f != e_{g∘f} at " + d.hmor_names[g] + ", " + d.hmor_names[f]);
    }
  for (int v = 0; v < nv; ++v)
    for (int u = 0; u < nv; ++u) {
      int w = d.vc(v, u);
      if (w >= 0 && d.vc_sq(d.hid_sq[v], d.hid_sq[u]) != d.hid_sq[w])
        r.add("horizontal identity composite", "1_v•1_u != 1_{v•u} at " + d.vmor_names[v] + ", " + d.vmor_names[u]);
    }
  if (r.stop()) return r;
  // interchange over every 2x2 grid  a b / a' b'
  std::vector<std::vector<int>> by_top(nh), by_left(nv);
  for (int s = 0; s < ns; ++s) {
    by_top[d.sq_top[s]].push_back(s);
    by_left[d.sq_left[s]].push_back(s);
  }
  for (int a = 0; a < ns; ++a)
    for (int b : by_left[d.sq_right[a]])
      for (int ap : by_top[d.sq_bot[a]])
        for (int bp : by_top[d.sq_bot[b]]) {
          if (d.sq_left[bp] != d.sq_right[ap]) continue;
          int lhs = d.vc_sq(d.hc_sq(bp, ap), d.hc_sq(b, a));
          int rhs = d.hc_sq(d.vc_sq(bp, b), d.vc_sq(ap, a));
          if (lhs != rhs) {
            r.add("interchange", "grid " + d.sq_names[a] + " " + d.sq_names[b] + " / " + d.sq_names[ap] + " " +
                                     d.sq_names[bp]);
            if (r.stop()) return r;
          }
        }
  return r;
}

DoubleCat horizontal_opposite(const DoubleCat& d) {
  DoubleCat o = d;
  std::swap(o.hsrc, o.htgt);
  std::swap(o.sq_left, o.sq_right);
  const std::size_t nh = d.n_hmor(), ns = d.n_sq();
  for (std::size_t g = 0; g < nh; ++g)
    for (std::size_t f = 0; f < nh; ++f) o.hcomp[g * nh + f] = d.hcomp[f * nh + g];
  for (std::size_t b = 0; b < ns; ++b)
    for (std::size_t a = 0; a < ns; ++a) o.hcomp_sq[b * ns + a] = d.hcomp_sq[a * ns + b];
  return o;
}

DoubleCat embed(const FinCat& c, Direction dir) {
  DoubleCat d;
  d.obj_names = c.obj_names;
  const int no = c.n_obj(), nm = c.n_mor();
  std::vector<int> trivial_comp(static_cast<std::size_t>(no) * no, -1);
  for (int x = 0; x < no; ++x) trivial_comp[x * no + x] = x;
  std::vector<int> objs(no);
  for (int x = 0; x < no; ++x) objs[x] = x;
  // squares correspond to morphisms of c, one per morphism
  std::vector<int> sq_comp(static_cast<std::size_t>(nm) * nm, -1);
  for (int m = 0; m < nm; ++m) sq_comp[static_cast<std::size_t>(m) * nm + m] = m;
  if (dir == Direction::Vertical) {
    for (int x = 0; x < no; ++x) d.hmor_names.push_back("1_" + c.obj_names[x]);
    d.hsrc = d.htgt = d.hid = objs;
    d.hcomp = trivial_comp;
    d.vmor_names = c.mor_names;
    d.vsrc = c.src;
    d.vtgt = c.tgt;
    d.vid = c.ident;
    d.vcomp = c.comp;
    for (int m = 0; m < nm; ++m) {
      d.sq_names.push_back("1_" + c.mor_names[m]);
      d.sq_left.push_back(m);
      d.sq_right.push_back(m);
      d.sq_top.push_back(c.src[m]);
      d.sq_bot.push_back(c.tgt[m]);
      d.hid_sq.push_back(m);
    }
    d.vid_sq = c.ident;
    d.hcomp_sq = sq_comp;
    d.vcomp_sq = c.comp;
  } else {
    for (int x = 0; x < no; ++x) d.vmor_names.push_back("e_" + c.obj_names[x]);
    d.vsrc = d.vtgt = d.vid = objs;
    d.vcomp = trivial_comp;
    d.hmor_names = c.mor_names;
    d.hsrc = c.src;
    d.htgt = c.tgt;
    d.hid = c.ident;
    d.hcomp = c.comp;
    for (int m = 0; m < nm; ++m) {
      d.sq_names.push_back("e_" + c.mor_names[m]);
      d.sq_left.push_back(c.src[m]);
      d.sq_right.push_back(c.tgt[m]);
      d.sq_top.push_back(m);
      d.sq_bot.push_back(m);
      d.vid_sq.push_back(m);
    }
    d.hid_sq = c.ident;
    d.hcomp_sq = c.comp;
    d.vcomp_sq = sq_comp;
  }
  return d;
}

bool DoubleFunctor::operator==(const DoubleFunctor& o) const {
  auto same = [](const DblRef& a, const DblRef& b) { return a == b || (a && b && *a == *b); };
  return same(source, o.source) && same(target, o.target) && obj == o.obj && hmor == o.hmor && vmor == o.vmor &&
         sq == o.sq;
}

DFunRef identity_double_functor(const DblRef& d) {
  auto f = std::make_shared<DoubleFunctor>();
  f->source = f->target = d;
  auto iota = [](int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
  };
  f->obj = iota(d->n_obj());
  f->hmor = iota(d->n_hmor());
  f->vmor = iota(d->n_vmor());
  f->sq = iota(d->n_sq());
  return f;
}

DFunRef compose_double_functors(const DFunRef& g, const DFunRef& f) {
  auto h = std::make_shared<DoubleFunctor>();
  h->source = f->source;
  h->target = g->target;
  auto comp = [](const std::vector<int>& outer, const std::vector<int>& inner) {
    std::vector<int> v;
    for (int i : inner) v.push_back(i < 0 ? -1 : outer[i]);
    return v;
  };
  h->obj = comp(g->obj, f->obj);
  h->hmor = comp(g->hmor, f->hmor);
  h->vmor = comp(g->vmor, f->vmor);
  h->sq = comp(g->sq, f->sq);
  return h;
}

ValidationReport validate_double_functor(const DoubleFunctor& F, std::size_t cap) {
  ValidationReport r(cap);
  if (!F.source || !F.target) {
    r.add("shape", "missing source or target");
    return r;
  }
  const DoubleCat& a = *F.source;
  const DoubleCat& b = *F.target;
  if (static_cast<int>(F.obj.size()) != a.n_obj() || static_cast<int>(F.hmor.size()) != a.n_hmor() ||
      static_cast<int>(F.vmor.size()) != a.n_vmor() || static_cast<int>(F.sq.size()) != a.n_sq()) {
    r.add("shape", "map sizes do not match the source");
    return r;
  }
  if (!in_range(F.obj, b.n_obj()) || !in_range(F.hmor, b.n_hmor()) || !in_range(F.vmor, b.n_vmor()) ||
      !in_range(F.sq, b.n_sq())) {
    r.add("shape", "a cell is sent outside the target");
    return r;
  }
  for (int f = 0; f < a.n_hmor(); ++f)
    if (b.hsrc[F.hmor[f]] != F.obj[a.hsrc[f]] || b.htgt[F.hmor[f]] != F.obj[a.htgt[f]])
      r.add("hmor boundary", a.hmor_names[f]);
  for (int u = 0; u < a.n_vmor(); ++u)
    if (b.vsrc[F.vmor[u]] != F.obj[a.vsrc[u]] || b.vtgt[F.vmor[u]] != F.obj[a.vtgt[u]])
      r.add("vmor boundary", a.vmor_names[u]);
  for (int s = 0; s < a.n_sq(); ++s) {
    int t = F.sq[s];
    if (b.sq_left[t] != F.vmor[a.sq_left[s]] || b.sq_right[t] != F.vmor[a.sq_right[s]] ||
        b.sq_top[t] != F.hmor[a.sq_top[s]] || b.sq_bot[t] != F.hmor[a.sq_bot[s]])
      r.add("square boundary", a.sq_names[s]);
  }
  for (int x = 0; x < a.n_obj(); ++x) {
    if (F.hmor[a.hid[x]] != b.hid[F.obj[x]]) r.add("horizontal identity", a.obj_names[x]);
    if (F.vmor[a.vid[x]] != b.vid[F.obj[x]]) r.add("vertical identity", a.obj_names[x]);
  }
  for (int u = 0; u < a.n_vmor(); ++u)
    if (F.sq[a.hid_sq[u]] != b.hid_sq[F.vmor[u]]) r.add("identity square 1_u", a.vmor_names[u]);
  for (int f = 0; f < a.n_hmor(); ++f)
    if (F.sq[a.vid_sq[f]] != b.vid_sq[F.hmor[f]]) r.add("identity square e_f", a.hmor_names[f]);
  if (r.stop()) return r;
  for (int g = 0; g < a.n_hmor(); ++g)
    for (int f = 0; f < a.n_hmor(); ++f) {
      int h = a.hc(g, f);
      if (h >= 0 && F.hmor[h] != b.hc(F.hmor[g], F.hmor[f])) r.add("hmor composition", a.hmor_names[g] + "∘" + a.hmor_names[f]);
    }
  for (int v = 0; v < a.n_vmor(); ++v)
    for (int u = 0; u < a.n_vmor(); ++u) {
      int w = a.vc(v, u);
      if (w >= 0 && F.vmor[w] != b.vc(F.vmor[v], F.vmor[u])) r.add("vmor composition", a.vmor_names[v] + "•" + a.vmor_names[u]);
    }
  if (r.stop()) return r;
  for (int s = 0; s < a.n_sq(); ++s)
    for (int t = 0; t < a.n_sq(); ++t) {
      int c = a.hc_sq(s, t);
      if (c >= 0 && F.sq[c] != b.hc_sq(F.sq[s], F.sq[t])) r.add("square ∘", a.sq_names[s] + "∘" + a.sq_names[t]);
      c = a.vc_sq(s, t);
      if (c >= 0 && F.sq[c] != b.vc_sq(F.sq[s], F.sq[t])) r.add("square •", a.sq_names[s] + "•" + a.sq_names[t]);
      if (r.stop()) return r;
    }
  return r;
}

bool is_double_isomorphism(const DoubleFunctor& f) {
  const DoubleCat& b = *f.target;
  return detail::is_bijection(f.obj, b.n_obj()) && detail::is_bijection(f.hmor, b.n_hmor()) &&
         detail::is_bijection(f.vmor, b.n_vmor()) && detail::is_bijection(f.sq, b.n_sq());
}

VTransRef identity_vertical_transformation(const DFunRef& f) {
  auto a = std::make_shared<VerticalTransformation>();
  a->source = a->target = f;
  const DoubleCat& t = *f->target;
  for (int x : f->obj) a->obj_vmor.push_back(t.vid[x]);
  for (int h : f->hmor) a->hmor_sq.push_back(t.vid_sq[h]);
  return a;
}

ValidationReport validate_vertical_transformation(const VerticalTransformation& A, std::size_t cap) {
  ValidationReport r(cap);
  const DoubleFunctor& F = *A.source;
  const DoubleFunctor& G = *A.target;
  auto same = [](const DblRef& a, const DblRef& b) { return a == b || (a && b && *a == *b); };
  if (!same(F.source, G.source) || !same(F.target, G.target)) {
    r.add("boundary", "functors are not parallel");
    return r;
  }
  const DoubleCat& c = *F.source;
  const DoubleCat& d = *F.target;
  if (static_cast<int>(A.obj_vmor.size()) != c.n_obj() || static_cast<int>(A.hmor_sq.size()) != c.n_hmor() ||
      !in_range(A.obj_vmor, d.n_vmor()) || !in_range(A.hmor_sq, d.n_sq())) {
    r.add("shape", "component tables do not match the source");
    return r;
  }
  bool ok = true;
  for (int x = 0; x < c.n_obj(); ++x) {
    int u = A.obj_vmor[x];
    if (d.vsrc[u] != F.obj[x] || d.vtgt[u] != G.obj[x]) {
      r.add("object component boundary", c.obj_names[x]);
      ok = false;
    }
  }
  for (int f = 0; f < c.n_hmor(); ++f) {
    int s = A.hmor_sq[f];
    if (d.sq_left[s] != A.obj_vmor[c.hsrc[f]] || d.sq_right[s] != A.obj_vmor[c.htgt[f]] ||
        d.sq_top[s] != F.hmor[f] || d.sq_bot[s] != G.hmor[f]) {
      r.add("hmor component boundary", c.hmor_names[f] + " -> " + d.sq_names[s]);
      ok = false;
    }
  }
  if (!ok) return r;
  for (int x = 0; x < c.n_obj(); ++x)
    if (A.hmor_sq[c.hid[x]] != d.hid_sq[A.obj_vmor[x]]) r.add("identity compatibility", c.obj_names[x]);
  for (int g = 0; g < c.n_hmor(); ++g)
    for (int f = 0; f < c.n_hmor(); ++f) {
      int h = c.hc(g, f);
      if (h >= 0 && A.hmor_sq[h] != d.hc_sq(A.hmor_sq[g], A.hmor_sq[f]))
        r.add("composition compatibility", c.hmor_names[g] + "∘" + c.hmor_names[f]);
    }
  for (int u = 0; u < c.n_vmor(); ++u)
    if (d.vc(G.vmor[u], A.obj_vmor[c.vsrc[u]]) != d.vc(A.obj_vmor[c.vtgt[u]], F.vmor[u]))
      r.add("vertical naturality", c.vmor_names[u]);
  for (int s = 0; s < c.n_sq(); ++s)
    if (d.vc_sq(G.sq[s], A.hmor_sq[c.sq_top[s]]) != d.vc_sq(A.hmor_sq[c.sq_bot[s]], F.sq[s]))
      r.add("square naturality", c.sq_names[s]);
  return r;
}

HomCat hom_category(const DoubleCat& d, int x, int xh) {
  HomCat h;
  h.x = x;
  h.xh = xh;
  h.hmor_obj.assign(d.n_hmor(), -1);
  h.sq_mor.assign(d.n_sq(), -1);
  auto c = std::make_shared<FinCat>();
  for (int g = 0; g < d.n_hmor(); ++g)
    if (d.hsrc[g] == x && d.htgt[g] == xh) {
      h.hmor_obj[g] = c->n_obj();
      h.obj_hmor.push_back(g);
      c->obj_names.push_back(d.hmor_names[g]);
    }
  for (int s = 0; s < d.n_sq(); ++s)
    if (d.sq_left[s] == d.vid[x] && d.sq_right[s] == d.vid[xh]) {
      h.sq_mor[s] = c->n_mor();
      h.mor_sq.push_back(s);
      c->mor_names.push_back(d.sq_names[s]);
      c->src.push_back(h.hmor_obj[d.sq_top[s]]);
      c->tgt.push_back(h.hmor_obj[d.sq_bot[s]]);
    }
  for (int g : h.obj_hmor) c->ident.push_back(h.sq_mor[d.vid_sq[g]]);
  const std::size_t n = c->mor_names.size();
  c->comp.assign(n * n, -1);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t a = 0; a < n; ++a) {
      int s = d.vc_sq(h.mor_sq[b], h.mor_sq[a]);
      if (s >= 0) c->comp[b * n + a] = h.sq_mor[s];
    }
  h.cat = std::move(c);
  return h;
}

std::vector<int> squares_between(const DoubleCat& d, int left, int right) {
  std::vector<int> out;
  for (int s = 0; s < d.n_sq(); ++s)
    if (d.sq_left[s] == left && d.sq_right[s] == right) out.push_back(s);
  return out;
}

ProfRef hom_profunctor(const DoubleCat& d, int u, int uh, const HomCat& s, const HomCat& t) {
  auto sqs = squares_between(d, u, uh);
  std::vector<int> local(d.n_sq(), -1);
  std::vector<std::string> names;
  std::vector<int> ex, ey;
  for (int i = 0; i < static_cast<int>(sqs.size()); ++i) {
    local[sqs[i]] = i;
    names.push_back(d.sq_names[sqs[i]]);
    ex.push_back(s.hmor_obj[d.sq_top[sqs[i]]]);
    ey.push_back(t.hmor_obj[d.sq_bot[sqs[i]]]);
  }
  Profunctor p = profunctor_shell(s.cat, t.cat, std::move(names), std::move(ex), std::move(ey));
  const std::size_t n = sqs.size();
  for (int m = 0; m < s.cat->n_mor(); ++m)
    for (std::size_t e = 0; e < n; ++e)
      if (s.cat->tgt[m] == p.elem_x[e]) p.lact[m * n + e] = local[d.vc_sq(sqs[e], s.mor_sq[m])];
  for (int m = 0; m < t.cat->n_mor(); ++m)
    for (std::size_t e = 0; e < n; ++e)
      if (t.cat->src[m] == p.elem_y[e]) p.ract[m * n + e] = local[d.vc_sq(t.mor_sq[m], sqs[e])];
  p.identity = d.is_vid(u) && d.is_vid(uh);
  return std::make_shared<Profunctor>(std::move(p));
}

ProfRef hom_profunctor(const DoubleCat& d, int u, int uh) {
  HomCat s = hom_category(d, d.vsrc[u], d.vsrc[uh]);
  if (d.is_vid(u) && d.is_vid(uh)) return hom_profunctor(d, u, uh, s, s);
  return hom_profunctor(d, u, uh, s, hom_category(d, d.vtgt[u], d.vtgt[uh]));
}

FunctorRef hom_functor(const DoubleCat& d, int f, int fh, const HomCat& s, const HomCat& t) {
  auto F = std::make_shared<FinFunctor>();
  F->source = s.cat;
  F->target = t.cat;
  for (int g : s.obj_hmor) F->obj_map.push_back(t.hmor_obj[d.hc(fh, d.hc(g, f))]);
  const int ef = d.vid_sq[f], efh = d.vid_sq[fh];
  for (int th : s.mor_sq) F->mor_map.push_back(t.sq_mor[d.hc_sq(efh, d.hc_sq(th, ef))]);
  return F;
}

ProfMorRef hom_action(const DoubleCat& d, int a, int ah, const ProfRef& source, const ProfRef& target,
                      const FunctorRef& F, const FunctorRef& Fp) {
  auto m = std::make_shared<ProfMorphism>();
  m->source = source;
  m->target = target;
  m->F = F;
  m->Fp = Fp;
  auto from = squares_between(d, d.sq_right[a], d.sq_left[ah]);
  auto to = squares_between(d, d.sq_left[a], d.sq_right[ah]);
  std::vector<int> local(d.n_sq(), -1);
  for (int i = 0; i < static_cast<int>(to.size()); ++i) local[to[i]] = i;
  for (int eta : from) m->map.push_back(local[d.hc_sq(ah, d.hc_sq(eta, a))]);
  return m;
}

ProfMorRef hom_action(const DoubleCat& d, int a, int ah) {
  const int u = d.sq_left[a], v = d.sq_right[a], f = d.sq_top[a], fp = d.sq_bot[a];
  const int uh = d.sq_left[ah], vh = d.sq_right[ah], fh = d.sq_top[ah], fhp = d.sq_bot[ah];
  HomCat s0 = hom_category(d, d.vsrc[v], d.vsrc[uh]);
  HomCat s1 = hom_category(d, d.vtgt[v], d.vtgt[uh]);
  HomCat t0 = hom_category(d, d.vsrc[u], d.vsrc[vh]);
  HomCat t1 = hom_category(d, d.vtgt[u], d.vtgt[vh]);
  auto source = hom_profunctor(d, v, uh, s0, s1);
  auto target = hom_profunctor(d, u, vh, t0, t1);
  return hom_action(d, a, ah, source, target, hom_functor(d, f, fh, s0, t0), hom_functor(d, fp, fhp, s1, t1));
}

SliceResult slice(const DblRef& dref, int xh) {
  const DoubleCat& d = *dref;
  SliceResult res;
  res.xh = xh;
  auto t = std::make_shared<DoubleCat>();
  std::vector<int> obj_of(d.n_hmor(), -1);
  for (int g = 0; g < d.n_hmor(); ++g)
    if (d.htgt[g] == xh) {
      obj_of[g] = t->n_obj();
      res.obj_g.push_back(g);
      t->obj_names.push_back("(" + d.obj_names[d.hsrc[g]] + "," + d.hmor_names[g] + ")");
    }
  std::map<std::array<int, 2>, int> hidx, vidx, sidx;
  for (int f = 0; f < d.n_hmor(); ++f)
    for (int h = 0; h < d.n_hmor(); ++h) {
      if (obj_of[h] < 0 || d.hsrc[h] != d.htgt[f]) continue;
      hidx[{f, h}] = t->n_hmor();
      res.hmor_fh.push_back({f, h});
      t->hmor_names.push_back("(" + d.hmor_names[f] + "," + d.hmor_names[h] + ")");
      t->hsrc.push_back(obj_of[d.hc(h, f)]);
      t->htgt.push_back(obj_of[h]);
    }
  const int exh = d.vid[xh];
  for (int u = 0; u < d.n_vmor(); ++u)
    for (int eta : squares_between(d, u, exh)) {
      vidx[{u, eta}] = t->n_vmor();
      res.vmor_ueta.push_back({u, eta});
      t->vmor_names.push_back("(" + d.vmor_names[u] + "," + d.sq_names[eta] + ")");
      t->vsrc.push_back(obj_of[d.sq_top[eta]]);
      t->vtgt.push_back(obj_of[d.sq_bot[eta]]);
    }
  for (int a = 0; a < d.n_sq(); ++a)
    for (int th : squares_between(d, d.sq_right[a], exh)) {
      sidx[{a, th}] = t->n_sq();
      res.sq_atheta.push_back({a, th});
      t->sq_names.push_back("(" + d.sq_names[a] + "," + d.sq_names[th] + ")");
      t->sq_left.push_back(vidx.at({d.sq_left[a], d.hc_sq(th, a)}));
      t->sq_right.push_back(vidx.at({d.sq_right[a], th}));
      t->sq_top.push_back(hidx.at({d.sq_top[a], d.sq_top[th]}));
      t->sq_bot.push_back(hidx.at({d.sq_bot[a], d.sq_bot[th]}));
    }
  for (int g : res.obj_g) {
    t->hid.push_back(hidx.at({d.hid[d.hsrc[g]], g}));
    t->vid.push_back(vidx.at({d.vid[d.hsrc[g]], d.vid_sq[g]}));
  }
  for (const auto& [u, eta] : res.vmor_ueta) t->hid_sq.push_back(sidx.at({d.hid_sq[u], eta}));
  for (const auto& [f, h] : res.hmor_fh) t->vid_sq.push_back(sidx.at({d.vid_sq[f], d.vid_sq[h]}));
  t->reset_tables();
  const std::size_t nh = t->n_hmor(), nv = t->n_vmor(), ns = t->n_sq();
  for (std::size_t a = 0; a < nh; ++a)
    for (std::size_t b = 0; b < nh; ++b) {
      if (t->htgt[a] != t->hsrc[b]) continue;
      auto [f, h] = res.hmor_fh[a];
      auto [f2, h2] = res.hmor_fh[b];
      t->hcomp[b * nh + a] = hidx.at({d.hc(f2, f), h2});
    }
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = 0; b < nv; ++b) {
      if (t->vtgt[a] != t->vsrc[b]) continue;
      auto [u, eta] = res.vmor_ueta[a];
      auto [u2, eta2] = res.vmor_ueta[b];
      t->vcomp[b * nv + a] = vidx.at({d.vc(u2, u), d.vc_sq(eta2, eta)});
    }
  for (std::size_t a = 0; a < ns; ++a)
    for (std::size_t b = 0; b < ns; ++b) {
      auto [al, th] = res.sq_atheta[a];
      auto [be, th2] = res.sq_atheta[b];
      if (t->sq_right[a] == t->sq_left[b]) t->hcomp_sq[b * ns + a] = sidx.at({d.hc_sq(be, al), th2});
      if (t->sq_bot[a] == t->sq_top[b]) t->vcomp_sq[b * ns + a] = sidx.at({d.vc_sq(be, al), d.vc_sq(th2, th)});
    }
  auto p = std::make_shared<DoubleFunctor>();
  p->source = t;
  p->target = dref;
  for (int g : res.obj_g) p->obj.push_back(d.hsrc[g]);
  for (const auto& fh : res.hmor_fh) p->hmor.push_back(fh[0]);
  for (const auto& ue : res.vmor_ueta) p->vmor.push_back(ue[0]);
  for (const auto& at : res.sq_atheta) p->sq.push_back(at[0]);
  res.total = t;
  res.proj = p;
  return res;
}

std::optional<TerminalWitness> double_terminal_at(const DoubleCat& d, int xh) {
  TerminalWitness w;
  w.obj = xh;
  for (int x = 0; x < d.n_obj(); ++x) {
    int found = -1, count = 0;
    for (int g = 0; g < d.n_hmor(); ++g)
      if (d.hsrc[g] == x && d.htgt[g] == xh) {
        found = g;
        ++count;
      }
    if (count != 1) return std::nullopt;
    w.t.push_back(found);
  }
  for (int u = 0; u < d.n_vmor(); ++u) {
    int found = -1, count = 0;
    for (int s : squares_between(d, u, d.vid[xh]))
      if (d.sq_top[s] == w.t[d.vsrc[u]] && d.sq_bot[s] == w.t[d.vtgt[u]]) {
        found = s;
        ++count;
      }
    if (count != 1) return std::nullopt;
    w.tau.push_back(found);
  }
  return w;
}

std::vector<TerminalWitness> double_terminal_objects(const DoubleCat& d) {
  std::vector<TerminalWitness> out;
  for (int x = 0; x < d.n_obj(); ++x)
    if (auto w = double_terminal_at(d, x)) out.push_back(std::move(*w));
  return out;
}

namespace {

// Injective assignment of variables to candidates, sort by sort; `ok(k, v)` checks variable
// k against the already assigned prefix.
class Search {
 public:
  struct Var {
    int sort;
    std::vector<int> cand;
  };
  std::vector<Var> vars;
  std::vector<int> sort_size;
  std::function<bool(int, int)> ok;
  std::vector<int> assign;

  bool run() {
    assign.assign(vars.size(), -1);
    used_.clear();
    for (int n : sort_size) used_.emplace_back(n, 0);
    return step(0);
  }

 private:
  std::vector<std::vector<char>> used_;

  bool step(std::size_t k) {
    if (k == vars.size()) return true;
    auto& used = used_[vars[k].sort];
    for (int v : vars[k].cand) {
      if (used[v]) continue;
      assign[k] = v;
      if (ok(static_cast<int>(k), v)) {
        used[v] = 1;
        if (step(k + 1)) return true;
        used[v] = 0;
      }
      assign[k] = -1;
    }
    return false;
  }
};

std::vector<int> candidates(const std::vector<std::string>& from, const std::vector<std::string>& to, int i) {
  std::vector<int> c;
  for (int j = 0; j < static_cast<int>(to.size()); ++j)
    if (to[j] == from[i]) c.push_back(j);
  for (int j = 0; j < static_cast<int>(to.size()); ++j)
    if (to[j] != from[i]) c.push_back(j);
  return c;
}

// Pairs (g, f) with g∘f = h, indexed by h; used to check composites as soon as all three
// cells have images.
std::vector<std::vector<std::array<int, 2>>> producers(const std::vector<int>& comp, int n) {
  std::vector<std::vector<std::array<int, 2>>> out(n);
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) {
      int h = comp[static_cast<std::size_t>(g) * n + f];
      if (h >= 0) out[h].push_back({g, f});
    }
  return out;
}

// Checks every composite among cells with index <= m (in `base`-offset variable order)
// that involves m.
bool composites_ok(int m, const std::vector<int>& img, const std::vector<int>& ca, const std::vector<int>& cb,
                   int na, int nb, const std::vector<std::vector<std::array<int, 2>>>& prod) {
  auto C = [&](const std::vector<int>& c, int n, int g, int f) { return c[static_cast<std::size_t>(g) * n + f]; };
  for (int o = 0; o <= m; ++o) {
    int h = C(ca, na, m, o);
    if (h >= 0 && h <= m && C(cb, nb, img[m], img[o]) != img[h]) return false;
    h = C(ca, na, o, m);
    if (h >= 0 && h <= m && C(cb, nb, img[o], img[m]) != img[h]) return false;
  }
  for (const auto& [g, f] : prod[m])
    if (g <= m && f <= m && C(cb, nb, img[g], img[f]) != img[m]) return false;
  return true;
}

}  // namespace

std::optional<FinFunctor> find_cat_isomorphism(const CatRef& a, const CatRef& b) {
  if (a->n_obj() != b->n_obj() || a->n_mor() != b->n_mor()) return std::nullopt;
  const int no = a->n_obj(), nm = a->n_mor();
  Search s;
  s.sort_size = {no, nm};
  for (int x = 0; x < no; ++x) s.vars.push_back({0, candidates(a->obj_names, b->obj_names, x)});
  for (int m = 0; m < nm; ++m) s.vars.push_back({1, candidates(a->mor_names, b->mor_names, m)});
  auto prod = producers(a->comp, nm);
  std::vector<int> img(nm, -1);
  s.ok = [&](int k, int v) {
    if (k < no) return true;
    int m = k - no;
    const auto& as = s.assign;
    if (b->src[v] != as[a->src[m]] || b->tgt[v] != as[a->tgt[m]]) return false;
    if (a->is_identity(m) != b->is_identity(v)) return false;
    for (int i = 0; i < nm; ++i) img[i] = as[no + i];
    return composites_ok(m, img, a->comp, b->comp, nm, nm, prod);
  };
  if (!s.run()) return std::nullopt;
  FinFunctor f;
  f.source = a;
  f.target = b;
  f.obj_map.assign(s.assign.begin(), s.assign.begin() + no);
  f.mor_map.assign(s.assign.begin() + no, s.assign.end());
  return f;
}

std::optional<DoubleFunctor> find_double_isomorphism(const DblRef& aref, const DblRef& bref) {
  const DoubleCat& a = *aref;
  const DoubleCat& b = *bref;
  if (a.n_obj() != b.n_obj() || a.n_hmor() != b.n_hmor() || a.n_vmor() != b.n_vmor() || a.n_sq() != b.n_sq())
    return std::nullopt;
  const int no = a.n_obj(), nh = a.n_hmor(), nv = a.n_vmor(), ns = a.n_sq();
  const int oh = no, ov = no + nh, os = no + nh + nv;
  Search s;
  s.sort_size = {no, nh, nv, ns};
  for (int i = 0; i < no; ++i) s.vars.push_back({0, candidates(a.obj_names, b.obj_names, i)});
  for (int i = 0; i < nh; ++i) s.vars.push_back({1, candidates(a.hmor_names, b.hmor_names, i)});
  for (int i = 0; i < nv; ++i) s.vars.push_back({2, candidates(a.vmor_names, b.vmor_names, i)});
  for (int i = 0; i < ns; ++i) s.vars.push_back({3, candidates(a.sq_names, b.sq_names, i)});
  auto ph = producers(a.hcomp, nh), pv = producers(a.vcomp, nv);
  auto psh = producers(a.hcomp_sq, ns), psv = producers(a.vcomp_sq, ns);
  std::vector<int> img;
  auto slice_of = [&](int off, int n) {
    img.assign(s.assign.begin() + off, s.assign.begin() + off + n);
    return img;
  };
  s.ok = [&](int k, int v) {
    const auto& as = s.assign;
    if (k < oh) return true;
    if (k < ov) {
      int f = k - oh;
      if (b.hsrc[v] != as[a.hsrc[f]] || b.htgt[v] != as[a.htgt[f]] || a.is_hid(f) != b.is_hid(v)) return false;
      return composites_ok(f, slice_of(oh, nh), a.hcomp, b.hcomp, nh, nh, ph);
    }
    if (k < os) {
      int u = k - ov;
      if (b.vsrc[v] != as[a.vsrc[u]] || b.vtgt[v] != as[a.vtgt[u]] || a.is_vid(u) != b.is_vid(v)) return false;
      return composites_ok(u, slice_of(ov, nv), a.vcomp, b.vcomp, nv, nv, pv);
    }
    int q = k - os;
    if (b.sq_left[v] != as[ov + a.sq_left[q]] || b.sq_right[v] != as[ov + a.sq_right[q]] ||
        b.sq_top[v] != as[oh + a.sq_top[q]] || b.sq_bot[v] != as[oh + a.sq_bot[q]])
      return false;
    bool a_h = a.hid_sq[a.sq_left[q]] == q, b_h = b.hid_sq[b.sq_left[v]] == v;
    bool a_v = a.vid_sq[a.sq_top[q]] == q, b_v = b.vid_sq[b.sq_top[v]] == v;
    if (a_h != b_h || a_v != b_v) return false;
    const auto& sq = slice_of(os, ns);
    return composites_ok(q, sq, a.hcomp_sq, b.hcomp_sq, ns, ns, psh) &&
           composites_ok(q, sq, a.vcomp_sq, b.vcomp_sq, ns, ns, psv);
  };
  if (!s.run()) return std::nullopt;
  DoubleFunctor f;
  f.source = aref;
  f.target = bref;
  f.obj.assign(s.assign.begin(), s.assign.begin() + oh);
  f.hmor.assign(s.assign.begin() + oh, s.assign.begin() + ov);
  f.vmor.assign(s.assign.begin() + ov, s.assign.begin() + os);
  f.sq.assign(s.assign.begin() + os, s.assign.end());
  return f;
}

std::optional<DoubleFunctor> match_by_names(const DblRef& a, const DblRef& b) {
  auto by_name = [](const std::vector<std::string>& from, const std::vector<std::string>& to,
                    std::vector<int>& out) {
    if (from.size() != to.size()) return false;
    std::unordered_map<std::string, int> idx;
    for (int i = 0; i < static_cast<int>(to.size()); ++i) idx.emplace(to[i], i);
    for (const auto& n : from) {
      auto it = idx.find(n);
      if (it == idx.end()) return false;
      out.push_back(it->second);
    }
    return true;
  };
  DoubleFunctor f;
  f.source = a;
  f.target = b;
  if (!by_name(a->obj_names, b->obj_names, f.obj) || !by_name(a->hmor_names, b->hmor_names, f.hmor) ||
      !by_name(a->vmor_names, b->vmor_names, f.vmor) || !by_name(a->sq_names, b->sq_names, f.sq))
    return std::nullopt;
  if (!is_double_isomorphism(f) || !validate_double_functor(f, 1).ok()) return std::nullopt;
  return f;
}

}  // namespace dc
