#include "doublecat/random.hpp"

#include <map>
#include <tuple>

namespace dc {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

struct WCat {
  FinCat c;
  std::vector<int> w;
};

// Free category on a random DAG over `objs`, hom(i, j) = path weights mod m.
WCat weighted(Rng& rng, const std::vector<std::string>& objs, int m, double p, const std::string& tag) {
  const int n = static_cast<int>(objs.size());
  std::vector<std::vector<std::pair<int, int>>> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng, p)) out[i].push_back({j, uniform(rng, 0, m - 1)});
  // reach[i][k]: bitmask of weights of paths i -> k
  std::vector<std::vector<unsigned>> reach(n, std::vector<unsigned>(n, 0));
  auto shift = [m](unsigned mask, int w) {
    unsigned r = 0;
    for (int b = 0; b < m; ++b)
      if (mask >> b & 1u) r |= 1u << ((b + w) % m);
    return r;
  };
  for (int i = n - 1; i >= 0; --i) {
    reach[i][i] = 1u;
    for (auto [j, w] : out[i])
      for (int k = j; k < n; ++k) reach[i][k] |= shift(reach[j][k], w);
  }
  WCat r;
  FinCat& c = r.c;
  c.obj_names = objs;
  c.ident.assign(n, -1);
  std::map<std::tuple<int, int, int>, int> idx;
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k)
      for (int b = 0; b < m; ++b) {
        if (!(reach[i][k] >> b & 1u)) continue;
        const int id = c.n_mor();
        idx[{i, k, b}] = id;
        if (i == k) {
          c.ident[i] = id;
          c.mor_names.push_back("1_" + objs[i]);
        } else {
          c.mor_names.push_back(tag + ":" + objs[i] + ">" + objs[k] + (m > 1 ? "#" + std::to_string(b) : ""));
        }
        c.src.push_back(i);
        c.tgt.push_back(k);
        r.w.push_back(b);
      }
  const std::size_t nm = c.mor_names.size();
  c.comp.assign(nm * nm, -1);
  for (std::size_t g = 0; g < nm; ++g)
    for (std::size_t f = 0; f < nm; ++f)
      if (c.tgt[f] == c.src[g]) c.comp[g * nm + f] = idx.at({c.src[f], c.tgt[g], (r.w[f] + r.w[g]) % m});
  return r;
}

std::vector<std::string> object_names(int n, const std::string& prefix) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

}  // namespace

CatRef random_category(Rng& rng, int max_objects, int max_weight, double edge_prob, const std::string& prefix) {
  const int n = max_objects <= 0 ? 0 : uniform(rng, 1, max_objects);
  const int m = uniform(rng, 1, std::max(1, max_weight));
  return std::make_shared<FinCat>(weighted(rng, object_names(n, prefix), m, edge_prob, prefix + "m").c);
}

DblRef random_double_category(Rng& rng, const RandomSpec& spec) {
  if (spec.max_objects < 0 || spec.max_weight < 0 || spec.max_labels < 0)
    throw BoundError("random double category: negative bound");
  for (int attempt = 0; attempt < spec.attempts; ++attempt) {
    const int n = spec.max_objects == 0 ? 0 : uniform(rng, 1, spec.max_objects);
    const int m = uniform(rng, 1, std::max(1, spec.max_weight));
    const int k = uniform(rng, 1, std::max(1, spec.max_labels));
    auto objs = object_names(n, "x");
    WCat H = weighted(rng, objs, m, spec.edge_prob, "f");
    WCat V = weighted(rng, objs, m, spec.edge_prob, "u");
    struct Sq {
      int u, f, fp, v, c;
    };
    std::vector<Sq> sqs;
    for (int u = 0; u < V.c.n_mor(); ++u)
      for (int v = 0; v < V.c.n_mor(); ++v)
        for (int f : H.c.hom(V.c.src[u], V.c.src[v]))
          for (int fp : H.c.hom(V.c.tgt[u], V.c.tgt[v]))
            if ((H.w[f] + V.w[v] - V.w[u] - H.w[fp] + 2 * m) % m == 0)
              for (int c = 0; c < k; ++c) sqs.push_back({u, f, fp, v, c});
    if (static_cast<int>(sqs.size()) > spec.max_squares) continue;

    DoubleCatBuilder b;
    for (const auto& o : objs) b.object(o);
    std::vector<int> hm(H.c.n_mor()), vm(V.c.n_mor());
    for (int f = 0; f < H.c.n_mor(); ++f)
      hm[f] = H.c.is_identity(f) ? b.peek().hid[H.c.src[f]] : b.hmor(H.c.mor_names[f], H.c.src[f], H.c.tgt[f]);
    for (int u = 0; u < V.c.n_mor(); ++u)
      vm[u] = V.c.is_identity(u) ? b.peek().vid[V.c.src[u]] : b.vmor(V.c.mor_names[u], V.c.src[u], V.c.tgt[u]);
    std::map<std::tuple<int, int, int, int, int>, int> sidx;
    for (const auto& s : sqs) {
      const DoubleCat& d = b.peek();
      int id = -1;
      if (s.c == 0 && V.c.is_identity(s.u) && V.c.is_identity(s.v) && s.f == s.fp) id = d.vid_sq[hm[s.f]];
      else if (s.c == 0 && s.u == s.v && H.c.is_identity(s.f) && H.c.is_identity(s.fp)) id = d.hid_sq[vm[s.u]];
      else
        id = b.square("[" + V.c.mor_names[s.u] + "|" + H.c.mor_names[s.f] + "," + H.c.mor_names[s.fp] + "|" +
                          V.c.mor_names[s.v] + "]" + (k > 1 ? "#" + std::to_string(s.c) : ""),
                      vm[s.u], hm[s.f], hm[s.fp], vm[s.v]);
      sidx[{s.u, s.f, s.fp, s.v, s.c}] = id;
    }
    for (int g = 0; g < H.c.n_mor(); ++g)
      for (int f = 0; f < H.c.n_mor(); ++f)
        if (int h = H.c.compose(g, f); h >= 0) b.set_hcomp(hm[g], hm[f], hm[h]);
    for (int v = 0; v < V.c.n_mor(); ++v)
      for (int u = 0; u < V.c.n_mor(); ++u)
        if (int w = V.c.compose(v, u); w >= 0) b.set_vcomp(vm[v], vm[u], vm[w]);
    for (const auto& a : sqs)
      for (const auto& s : sqs) {
        const int ia = sidx.at({a.u, a.f, a.fp, a.v, a.c}), is = sidx.at({s.u, s.f, s.fp, s.v, s.c});
        if (a.v == s.u)  // s to the right of a
          b.set_hcomp_sq(is, ia,
                         sidx.at({a.u, H.c.compose(s.f, a.f), H.c.compose(s.fp, a.fp), s.v, (a.c + s.c) % k}));
        if (a.fp == s.f)  // s below a
          b.set_vcomp_sq(is, ia,
                         sidx.at({V.c.compose(s.u, a.u), a.f, s.fp, V.c.compose(s.v, a.v), (a.c + s.c) % k}));
      }
    auto d = std::make_shared<DoubleCat>(b.build());
    auto rep = validate_double_category(*d);
    if (!rep.ok()) throw std::logic_error("random double category failed validation:\n" + rep.str());
    return d;
  }
  throw BoundError("random double category: no draw within max_squares = " + std::to_string(spec.max_squares));
}

DblRef random_double_category(const RandomSpec& spec) {
  Rng rng(spec.seed);
  return random_double_category(rng, spec);
}

namespace {

CatRef small_constant(Rng& rng) {
  switch (uniform(rng, 0, 3)) {
    case 0: return std::make_shared<FinCat>(terminal_category());
    case 1: return std::make_shared<FinCat>(walking_arrow());
    case 2: return std::make_shared<FinCat>(discrete_category(2));
    default: return std::make_shared<FinCat>(discrete_category(0));
  }
}

PshRef random_leaf(Rng& rng, const DblRef& base) {
  if (base->n_obj() > 0 && coin(rng, 0.5)) return representable(base, uniform(rng, 0, base->n_obj() - 1)).psh;
  return constant_presheaf(base, small_constant(rng));
}

PshRef random_term(Rng& rng, const DblRef& base) {
  switch (uniform(rng, 0, 2)) {
    case 0: return random_leaf(rng, base);
    case 1: return product_presheaf(random_leaf(rng, base), random_leaf(rng, base));
    default: return coproduct_presheaf(random_leaf(rng, base), random_leaf(rng, base));
  }
}

bool within(const LaxDoublePresheaf& x, int max_elements) {
  for (const auto& p : x.vmor)
    for (const auto& cell : p->cells)
      if (static_cast<int>(cell.size()) > max_elements) return false;
  return true;
}

}  // namespace

PshRef random_presheaf(Rng& rng, const DblRef& base, const RandomSpec& spec) {
  for (int attempt = 0; attempt < spec.attempts; ++attempt) {
    PshRef x = random_term(rng, base);
    if (!within(*x, spec.max_elements)) continue;
    GrothResult g = groth(x);
    return ddel(g.projection).psh;
  }
  throw BoundError("random presheaf: no draw with at most " + std::to_string(spec.max_elements) +
                   " elements per cell");
}

namespace {

ProfRef separable(const CatRef& c, const CatRef& cp, int a, int ap) {
  std::vector<std::string> names;
  std::vector<int> ex, ey;
  std::vector<std::pair<int, int>> el;
  for (int f = 0; f < c->n_mor(); ++f) {
    if (c->tgt[f] != a) continue;
    for (int g = 0; g < cp->n_mor(); ++g) {
      if (cp->src[g] != ap) continue;
      names.push_back("(" + c->mor_names[f] + "," + cp->mor_names[g] + ")");
      ex.push_back(c->src[f]);
      ey.push_back(cp->tgt[g]);
      el.push_back({f, g});
    }
  }
  std::map<std::pair<int, int>, int> idx;
  for (int i = 0; i < static_cast<int>(el.size()); ++i) idx[el[i]] = i;
  Profunctor p = profunctor_shell(c, cp, std::move(names), std::move(ex), std::move(ey));
  const std::size_t n = el.size();
  for (std::size_t e = 0; e < n; ++e) {
    auto [f, g] = el[e];
    for (int h = 0; h < c->n_mor(); ++h)
      if (c->tgt[h] == c->src[f]) p.lact[h * n + e] = idx.at({c->compose(f, h), g});
    for (int h = 0; h < cp->n_mor(); ++h)
      if (cp->src[h] == cp->tgt[g]) p.ract[h * n + e] = idx.at({f, cp->compose(h, g)});
  }
  return std::make_shared<Profunctor>(std::move(p));
}

ProfRef sum(const Profunctor& p, const Profunctor& q) {
  std::vector<std::string> names;
  std::vector<int> ex = p.elem_x, ey = p.elem_y;
  for (const auto& s : p.elem_names) names.push_back("l:" + s);
  for (const auto& s : q.elem_names) names.push_back("r:" + s);
  ex.insert(ex.end(), q.elem_x.begin(), q.elem_x.end());
  ey.insert(ey.end(), q.elem_y.begin(), q.elem_y.end());
  Profunctor w = profunctor_shell(p.src, p.tgt, std::move(names), std::move(ex), std::move(ey));
  const int np = p.n_elem(), nq = q.n_elem();
  const std::size_t n = np + nq;
  for (int f = 0; f < p.src->n_mor(); ++f) {
    for (int e = 0; e < np; ++e) w.lact[f * n + e] = p.left(f, e);
    for (int e = 0; e < nq; ++e)
      if (int t = q.left(f, e); t >= 0) w.lact[f * n + np + e] = np + t;
  }
  for (int f = 0; f < p.tgt->n_mor(); ++f) {
    for (int e = 0; e < np; ++e) w.ract[f * n + e] = p.right(f, e);
    for (int e = 0; e < nq; ++e)
      if (int t = q.right(f, e); t >= 0) w.ract[f * n + np + e] = np + t;
  }
  return std::make_shared<Profunctor>(std::move(w));
}

ProfRef random_separable(Rng& rng, const CatRef& c, const CatRef& cp) {
  if (c->n_obj() == 0 || cp->n_obj() == 0)
    return std::make_shared<Profunctor>(profunctor_shell(c, cp, {}, {}, {}));
  return separable(c, cp, uniform(rng, 0, c->n_obj() - 1), uniform(rng, 0, cp->n_obj() - 1));
}

}  // namespace

ProfRef random_profunctor(Rng& rng, const CatRef& c, const CatRef& cp) {
  switch (uniform(rng, 0, 3)) {
    case 0:
      if (same_cat(c, cp)) return identity_profunctor(c);
      return random_separable(rng, c, cp);
    case 1: return random_separable(rng, c, cp);
    case 2: return sum(*random_separable(rng, c, cp), *random_separable(rng, c, cp));
    default: {
      CatRef mid = random_category(rng, 3, 2, 0.5, "m");
      return compose_profunctors(random_separable(rng, c, mid), random_separable(rng, mid, cp));
    }
  }
}

}  // namespace dc
