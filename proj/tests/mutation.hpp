#pragma once

// Single-entry mutation testing. A structure is exposed as a list of integer tables; every
// entry is replaced in turn by a few alternative values, the validator is run, and the entry
// is restored. Structures must be privately owned by the caller (they are edited in place).

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "doublecat/fixtures.hpp"
#include "doublecat/groth.hpp"
#include "doublecat/random.hpp"
#include "oracles.hpp"

namespace mutation {

struct Table {
  std::string name;
  std::vector<int>* v;
  int n;                         // values range over [-1, n)
  std::function<void()> after;  // refresh derived data after an edit
};

// `equivalent` counts undetected mutants that an independent check confirms are valid
// structures; rate() is taken over the remaining, genuinely invalid, mutants.
struct Stats {
  long total = 0, detected = 0, unwitnessed = 0, equivalent = 0;
  std::vector<std::string> survivors;  // undetected and not shown valid
  double rate() const {
    const long invalid = total - equivalent;
    return invalid == 0 ? 1.0 : static_cast<double>(detected) / invalid;
  }
  double raw_rate() const { return total == 0 ? 1.0 : static_cast<double>(detected) / total; }
  void add(const Stats& o) {
    total += o.total;
    detected += o.detected;
    equivalent += o.equivalent;
    unwitnessed += o.unwitnessed;
    survivors.insert(survivors.end(), o.survivors.begin(), o.survivors.end());
  }
};

inline std::vector<int> alternatives(int v, int n) {
  std::set<int> s{-1, 0, 1, v - 1, v + 1, n - 1};
  std::vector<int> out;
  for (int a : s)
    if (a >= -1 && a < n && a != v) out.push_back(a);
  return out;
}

template <class T>
T& own(const std::shared_ptr<const T>& p) {
  return const_cast<T&>(*p);
}

inline void add_cat(std::vector<Table>& t, const std::string& tag, dc::FinCat& c) {
  t.push_back({tag + ".src", &c.src, c.n_obj(), {}});
  t.push_back({tag + ".tgt", &c.tgt, c.n_obj(), {}});
  t.push_back({tag + ".ident", &c.ident, c.n_mor(), {}});
  t.push_back({tag + ".comp", &c.comp, c.n_mor(), {}});
}

inline void add_dbl(std::vector<Table>& t, const std::string& tag, dc::DoubleCat& d) {
  const int no = d.n_obj(), nh = d.n_hmor(), nv = d.n_vmor(), ns = d.n_sq();
  t.push_back({tag + ".hsrc", &d.hsrc, no, {}});
  t.push_back({tag + ".htgt", &d.htgt, no, {}});
  t.push_back({tag + ".vsrc", &d.vsrc, no, {}});
  t.push_back({tag + ".vtgt", &d.vtgt, no, {}});
  t.push_back({tag + ".sq_left", &d.sq_left, nv, {}});
  t.push_back({tag + ".sq_right", &d.sq_right, nv, {}});
  t.push_back({tag + ".sq_top", &d.sq_top, nh, {}});
  t.push_back({tag + ".sq_bot", &d.sq_bot, nh, {}});
  t.push_back({tag + ".hid", &d.hid, nh, {}});
  t.push_back({tag + ".vid", &d.vid, nv, {}});
  t.push_back({tag + ".hid_sq", &d.hid_sq, ns, {}});
  t.push_back({tag + ".vid_sq", &d.vid_sq, ns, {}});
  t.push_back({tag + ".hcomp", &d.hcomp, nh, {}});
  t.push_back({tag + ".vcomp", &d.vcomp, nv, {}});
  t.push_back({tag + ".hcomp_sq", &d.hcomp_sq, ns, {}});
  t.push_back({tag + ".vcomp_sq", &d.vcomp_sq, ns, {}});
}

inline void add_functor(std::vector<Table>& t, const std::string& tag, dc::FinFunctor& f) {
  t.push_back({tag + ".obj", &f.obj_map, f.target->n_obj(), {}});
  t.push_back({tag + ".mor", &f.mor_map, f.target->n_mor(), {}});
}

inline void add_prof(std::vector<Table>& t, const std::string& tag, dc::Profunctor& p) {
  auto refresh = [&p] { p.index_cells(); };
  t.push_back({tag + ".elem_x", &p.elem_x, p.src->n_obj(), refresh});
  t.push_back({tag + ".elem_y", &p.elem_y, p.tgt->n_obj(), refresh});
  t.push_back({tag + ".lact", &p.lact, p.n_elem(), {}});
  t.push_back({tag + ".ract", &p.ract, p.n_elem(), {}});
}

// Every table reachable from X, each shared sub-structure listed once.
inline std::vector<Table> presheaf_tables(const dc::LaxDoublePresheaf& x) {
  std::vector<Table> t;
  const dc::DoubleCat& d = *x.base;
  std::set<const void*> seen;
  auto fresh = [&seen](const void* p) { return seen.insert(p).second; };
  for (int o = 0; o < d.n_obj(); ++o)
    if (fresh(x.obj[o].get())) add_cat(t, "X(" + d.obj_names[o] + ")", own(x.obj[o]));
  for (int f = 0; f < d.n_hmor(); ++f)
    if (fresh(x.hmor[f].get())) add_functor(t, "X(" + d.hmor_names[f] + ")", own(x.hmor[f]));
  for (int u = 0; u < d.n_vmor(); ++u)
    if (fresh(x.vmor[u].get())) add_prof(t, "X(" + d.vmor_names[u] + ")", own(x.vmor[u]));
  for (int a = 0; a < d.n_sq(); ++a)
    if (fresh(x.sq[a].get())) {
      auto& m = own(x.sq[a]);
      t.push_back({"X(" + d.sq_names[a] + ").map", &m.map, m.target->n_elem(), {}});
    }
  auto& mx = const_cast<dc::LaxDoublePresheaf&>(x);
  for (std::size_t i = 0; i < mx.mu.size(); ++i)
    if (mx.mu[i]) {
      const int u = static_cast<int>(i) / d.n_vmor(), up = static_cast<int>(i) % d.n_vmor();
      t.push_back({"mu(" + d.vmor_names[u] + "," + d.vmor_names[up] + ")", &mx.mu[i]->map,
                   x.vmor[d.vc(up, u)]->n_elem(), {}});
    }
  return t;
}

inline std::vector<Table> transformation_tables(const dc::HorizontalTransf& f) {
  std::vector<Table> t;
  const dc::DoubleCat& d = *f.source->base;
  for (int o = 0; o < d.n_obj(); ++o) add_functor(t, "F(" + d.obj_names[o] + ")", own(f.obj[o]));
  for (int u = 0; u < d.n_vmor(); ++u) {
    auto& m = own(f.vmor[u]);
    t.push_back({"F(" + d.vmor_names[u] + ")", &m.map, m.target->n_elem(), {}});
  }
  return t;
}

inline std::vector<Table> modification_tables(const dc::GlobularModification& a) {
  std::vector<Table> t;
  const dc::DoubleCat& d = *a.source->source->base;
  for (int o = 0; o < d.n_obj(); ++o) {
    auto& n = own(a.obj[o]);
    t.push_back({"A(" + d.obj_names[o] + ")", &n.comp, n.target->target->n_mor(), {}});
  }
  return t;
}

inline std::vector<Table> fibration_tables(dc::DiscreteDoubleFibration& f) {
  std::vector<Table> t;
  auto& p = own(f.p);
  const dc::DoubleCat& C = *p.target;
  t.push_back({"P.obj", &p.obj, C.n_obj(), {}});
  t.push_back({"P.hmor", &p.hmor, C.n_hmor(), {}});
  t.push_back({"P.vmor", &p.vmor, C.n_vmor(), {}});
  t.push_back({"P.sq", &p.sq, C.n_sq(), {}});
  t.push_back({"hlift", &f.hlift, p.source->n_hmor(), {}});
  t.push_back({"sqlift", &f.sqlift, p.source->n_sq(), {}});
  return t;
}

// `validate` returns the report for the current (possibly mutated) state.
// `valid`, when given, is an independent judgement consulted only on undetected mutants.
inline Stats run(const std::vector<Table>& tables, const std::function<dc::ValidationReport()>& validate,
                 const std::function<bool()>& valid = {}) {
  Stats s;
  for (const Table& t : tables)
    for (std::size_t i = 0; i < t.v->size(); ++i) {
      const int keep = (*t.v)[i];
      for (int alt : alternatives(keep, t.n)) {
        (*t.v)[i] = alt;
        if (t.after) t.after();
        dc::ValidationReport r = validate();
        ++s.total;
        if (!r.ok()) {
          ++s.detected;
          const bool witnessed = std::all_of(r.items.begin(), r.items.end(),
                                             [](const dc::Violation& v) { return !v.law.empty() && !v.witness.empty(); });
          if (!witnessed) ++s.unwitnessed;
        } else if (valid && valid()) {
          ++s.equivalent;
        } else {
          s.survivors.push_back(t.name + "[" + std::to_string(i) + "] " + std::to_string(keep) + " -> " +
                                std::to_string(alt));
        }
        (*t.v)[i] = keep;
        if (t.after) t.after();
      }
    }
  return s;
}

inline bool matches_any(const dc::GlobularModification& m, const std::vector<dc::ModRef>& known) {
  return std::any_of(known.begin(), known.end(),
                     [&m](const dc::ModRef& k) { return dc::modifications_equal(m, *k); });
}

struct Family {
  std::string name;
  Stats stats;
};

// Mutation survey over fixtures and `n_random` random bases, one entry per validator family.
inline std::vector<Family> survey(int n_random) {
  using namespace dc;
  std::vector<DblRef> bases;
  for (const auto& [name, d] : all_fixtures()) bases.push_back(d);
  RandomSpec spec;
  spec.max_objects = 3;
  for (int i = 0; i < n_random; ++i) {
    spec.seed = 1000 + i;
    bases.push_back(random_double_category(spec));
  }
  auto fresh = [](const DblRef& d) { return std::make_shared<DoubleCat>(*d); };

  Family cat{"category", {}}, dbl{"double category", {}}, psh{"presheaf", {}}, tr{"transformation", {}},
      mod{"modification", {}}, fib{"fibration", {}};

  auto cat_survey = [&cat](FinCat c) {
    std::vector<Table> t;
    add_cat(t, "C", c);
    cat.stats.add(run(t, [&c] { return validate_category(c); }, [&c] { return oracle::is_category(c); }));
  };
  cat_survey(walking_iso());
  cat_survey(arrow_category(walking_arrow()));

  for (const DblRef& base : bases) {
    auto d = fresh(base);
    std::vector<Table> t;
    add_dbl(t, "D", *d);
    dbl.stats.add(run(t, [&d] { return validate_double_category(*d); }));

    for (Which w : {Which::Ver0, Which::Ver1, Which::Hor0}) cat_survey(underlying(*d, w));
    for (int x = 0; x < d->n_obj(); ++x) cat_survey(FinCat(*hom_category(*d, x, d->n_obj() - 1).cat));

    std::vector<PshRef> ps;
    for (int x = 0; x < d->n_obj(); ++x) ps.push_back(representable(d, x).psh);
    ps.push_back(ddel(*check_dfib(identity_double_functor(d)).fib).psh);
    for (const PshRef& x : ps)
      psh.stats.add(run(presheaf_tables(*x), [&x] { return validate_presheaf(*x); }));

    const int xh = d->n_obj() - 1;
    Representable r = representable(d, xh);
    PshRef target = ddel(*check_dfib(identity_double_functor(d)).fib).psh;
    for (int a = 0; a < target->obj[xh]->n_obj(); ++a) {
      HTransRef f = yoneda_phi(r, target, a);
      tr.stats.add(run(transformation_tables(*f), [&f] { return validate_horizontal_transformation(*f); }));
    }
    for (int a = 0; a < target->obj[xh]->n_mor(); ++a) {
      const FinCat& c = *target->obj[xh];
      HTransRef s = yoneda_phi(r, target, c.src[a]), g = yoneda_phi(r, target, c.tgt[a]);
      ModRef m = yoneda_phi(r, target, s, g, a);
      std::vector<ModRef> known;
      for (int b : c.hom(c.src[a], c.tgt[a])) known.push_back(yoneda_phi(r, target, s, g, b));
      mod.stats.add(run(modification_tables(*m), [&m] { return validate_modification(*m); },
                        [&m, &known] { return matches_any(*m, known); }));
    }

    for (int fh = 0; fh < d->n_hmor(); ++fh) {
      Representable a = representable(d, d->hsrc[fh]), b = representable(d, d->htgt[fh]);
      HTransRef f = representable_morphism(a, b, fh);
      tr.stats.add(run(transformation_tables(*f), [&f] { return validate_horizontal_transformation(*f); }));
    }
    for (int ah = 0; ah < d->n_sq(); ++ah) {
      if (d->sq_left[ah] != d->vid[d->vsrc[d->sq_left[ah]]] || d->sq_right[ah] != d->vid[d->vsrc[d->sq_right[ah]]])
        continue;
      Representable a = representable(d, d->hsrc[d->sq_top[ah]]), b = representable(d, d->htgt[d->sq_top[ah]]);
      ModRef m = representable_modification(a, b, ah);
      std::vector<ModRef> known;
      for (int bh : squares_between(*d, d->sq_left[ah], d->sq_right[ah]))
        if (d->sq_top[bh] == d->sq_top[ah] && d->sq_bot[bh] == d->sq_bot[ah])
          known.push_back(representable_modification(a, b, bh));
      mod.stats.add(run(modification_tables(*m), [&m] { return validate_modification(*m); },
                        [&m, &known] { return matches_any(*m, known); }));
    }

    for (int x = 0; x < d->n_obj(); ++x) {
      SliceResult sl = slice(d, x);
      auto p = std::make_shared<DoubleFunctor>(*sl.proj);
      DiscreteDoubleFibration f = *check_dfib(p).fib;
      fib.stats.add(run(fibration_tables(f), [&f] { return validate_dfib(f); }));
    }
  }
  return {cat, dbl, psh, tr, mod, fib};
}

}  // namespace mutation
