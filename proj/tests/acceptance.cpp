// Acceptance run: one PASS/FAIL line per criterion, with timing and the instance counts behind it.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "doublecat/fixtures.hpp"
#include "doublecat/groth.hpp"
#include "doublecat/random.hpp"
#include "mutation.hpp"
#include "oracles.hpp"

using namespace dc;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0) o.require(s < limit_s, "over the time limit");
  if (!o.ok) ++failures;
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.3fs", s);
  std::cout << (o.ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << timing << ") " << o.note.str()
            << std::endl;
}

CatRef ref(FinCat c) { return std::make_shared<FinCat>(std::move(c)); }

PshRef ddel_identity(const DblRef& d) { return ddel(*check_dfib(identity_double_functor(d)).fib).psh; }

std::vector<PshRef> fixture_presheaves(const DblRef& d) {
  std::vector<PshRef> xs;
  for (int y = 0; y < d->n_obj(); ++y) xs.push_back(representable(d, y).psh);
  xs.push_back(ddel_identity(d));
  return xs;
}

struct Instance {
  DblRef base;
  PshRef psh;
};

std::vector<Instance> random_instances(int n, std::uint64_t first) {
  RandomSpec spec;
  spec.max_objects = 4;
  spec.max_elements = 3;
  std::vector<Instance> out;
  for (std::uint64_t seed = first; static_cast<int>(out.size()) < n; ++seed) {
    spec.seed = seed;
    Rng rng(seed);
    DblRef d = random_double_category(rng, spec);
    out.push_back({d, random_presheaf(rng, d, spec)});
  }
  return out;
}

}  // namespace

int main() {
  criterion(1, "E1: hom profunctor composite at (g,g'') is empty, hom of the composite has one element", 1.0,
            [](Outcome& o) {
              auto d = fixture_e1();
              const int u = d->find_vmor("u"), u1 = d->find_vmor("u'");
              const int uh = d->find_vmor("uh"), uh1 = d->find_vmor("uh'");
              ProfRef p = hom_profunctor(*d, u, uh), q = hom_profunctor(*d, u1, uh1);
              ProfRef whole = hom_profunctor(*d, d->vc(u1, u), d->vc(uh1, uh));
              auto comp = compose(p, q);
              const int g = p->src->find_obj("g"), g2 = q->tgt->find_obj("g''");
              o.require(g >= 0 && g2 >= 0, "hmors g, g'' present");
              const auto n_comp = comp->result->at(g, g2).size();
              const auto n_whole = whole->at(whole->src->find_obj("g"), whole->tgt->find_obj("g''")).size();
              o.require(n_comp == 0, "composite empty");
              o.require(oracle::composite_size(*p, *q, g, g2) == 0, "oracle agrees");
              o.require(n_whole == 1, "composite hom has one element");
              o.note << "composite=" << n_comp << " whole=" << n_whole << " ";
            });

  criterion(2, "E2: coend over C(x',xh) is {(alpha',alpha)}, coend over C(x,xh') is empty", 1.0, [](Outcome& o) {
    auto d = fixture_e2();
    const int u = d->find_vmor("u"), uh = d->find_vmor("uh");
    const int ex = d->vid[d->find_obj("x")], ex1 = d->vid[d->find_obj("x'")];
    const int exh = d->vid[d->find_obj("xh")], exh1 = d->vid[d->find_obj("xh'")];
    ProfRef p = hom_profunctor(*d, u, exh), q = hom_profunctor(*d, ex1, uh);
    auto comp = compose(p, q);
    const int g = p->src->find_obj("g"), g1 = q->tgt->find_obj("g'");
    const auto& cell = comp->result->at(g, g1);
    o.require(cell.size() == 1, "one class through C(x',xh)");
    if (cell.size() == 1) {
      const std::string a1 = q->elem_names[comp->rep[cell[0]][0]], a = p->elem_names[comp->rep[cell[0]][1]];
      o.require(a1 == "alpha'" && a == "alpha", "class is (alpha',alpha)");
      o.note << "class={(" << a1 << "," << a << ")} ";
    }
    o.require(oracle::composite_size(*p, *q, g, g1) == 1, "oracle: one class");
    ProfRef p2 = hom_profunctor(*d, ex, uh), q2 = hom_profunctor(*d, u, exh1);
    auto comp2 = compose(p2, q2);
    const int h = p2->src->find_obj("g"), h1 = q2->tgt->find_obj("g'");
    o.require(comp2->result->at(h, h1).empty(), "empty through C(x,xh')");
    o.require(oracle::composite_size(*p2, *q2, h, h1) == 0, "oracle: empty");
    o.note << "other=" << comp2->result->at(h, h1).size() << " ";
  });

  criterion(3, "Yoneda by enumeration on all fixtures, objects and morphisms", 60.0, [](Outcome& o) {
    long cases = 0, transformations = 0, modifications = 0;
    for (const auto& [name, d] : all_fixtures())
      for (int xh = 0; xh < d->n_obj(); ++xh) {
        Representable r = representable(d, xh);
        for (const PshRef& X : fixture_presheaves(d)) {
          ++cases;
          const std::string at = name + " at " + d->obj_names[xh];
          const FinCat& Xx = *X->obj[xh];
          auto ts = enumerate_transformations(r.psh, X);
          transformations += static_cast<long>(ts.size());
          o.require(static_cast<int>(ts.size()) == Xx.n_obj(), at + ": count");
          std::vector<HTransRef> phi;
          for (int a = 0; a < Xx.n_obj(); ++a) {
            phi.push_back(yoneda_phi(r, X, a));
            o.require(validate_horizontal_transformation(*phi.back()).ok(), at + ": Phi valid");
            o.require(yoneda_psi(r, *phi.back()) == a, at + ": Psi Phi");
          }
          for (const auto& t : ts)
            o.require(transformations_equal(*yoneda_phi(r, X, yoneda_psi(r, *t)), *t), at + ": Phi Psi");
          for (int a = 0; a < Xx.n_obj(); ++a)
            for (int b = 0; b < Xx.n_obj(); ++b) {
              auto ms = enumerate_modifications(phi[a], phi[b]);
              modifications += static_cast<long>(ms.size());
              o.require(ms.size() == Xx.hom(a, b).size(), at + ": modification count");
              for (int m : Xx.hom(a, b))
                o.require(yoneda_psi(r, *yoneda_phi(r, X, phi[a], phi[b], m)) == m, at + ": Psi Phi on morphisms");
              for (const auto& nu : ms)
                o.require(modifications_equal(*yoneda_phi(r, X, phi[a], phi[b], yoneda_psi(r, *nu)), *nu),
                          at + ": Phi Psi on morphisms");
            }
        }
      }
    o.note << cases << " (base, object, presheaf) cases, " << transformations << " transformations, "
           << modifications << " modifications ";
  });

  const auto instances = random_instances(200, 0);
  long generated_checked = 0;

  criterion(4, "groth/ddel equivalence: epsilon and eta on fixtures and 200 random instances", 300.0,
            [&](Outcome& o) {
              long fixtures = 0, natural = 0, elements = 0;
              for (const auto& [name, d] : all_fixtures()) {
                std::vector<PshRef> xs = fixture_presheaves(d);
                xs.push_back(constant_presheaf(d, ref(walking_arrow())));
                for (const PshRef& X : xs) {
                  ++fixtures;
                  CounitResult c = counit_epsilon(X);
                  o.require(c.checks.ok(), name + ": epsilon");
                  o.require(is_invertible(*c.eps), name + ": epsilon invertible");
                  o.require(check_triangle_identities(X).ok(), name + ": triangles");
                  UnitResult u = unit_eta(c.groth.projection);
                  o.require(u.checks.ok() && is_double_isomorphism(*u.eta), name + ": eta");
                }
                for (int x = 0; x < d->n_obj(); ++x) {
                  auto fib = check_dfib(slice(d, x).proj).fib;
                  o.require(fib.has_value(), name + ": slice projection");
                  if (!fib) continue;
                  UnitResult u = unit_eta(*fib);
                  o.require(u.checks.ok() && is_double_isomorphism(*u.eta), name + ": eta on a slice");
                  o.require(check_triangle_identities(*fib).ok(), name + ": triangles on a slice");
                }
              }
              for (std::size_t i = 0; i < instances.size(); ++i) {
                const auto& [d, X] = instances[i];
                const std::string at = "random #" + std::to_string(i);
                CounitResult c = counit_epsilon(X);
                o.require(c.checks.ok(), at + ": epsilon");
                auto res = check_dfib(c.groth.projection.p);
                o.require(res.fib.has_value(), at + ": projection is a fibration");
                generated_checked += res.fib.has_value();
                UnitResult u = unit_eta(c.groth.projection);
                o.require(u.checks.ok() && is_double_isomorphism(*u.eta), at + ": eta");
                o.require(*compose_double_functors(u.groth.projection.p, u.eta) == *c.groth.projection.p,
                          at + ": eta over the base");
                o.require(check_triangle_identities(X).ok(), at + ": triangles");
                for (const auto& p : X->vmor) elements += p->n_elem();
                if (i < 40) {
                  // naturality of epsilon against every transformation into X and into representables
                  std::vector<PshRef> targets{X};
                  for (int y = 0; y < d->n_obj(); ++y) targets.push_back(representable(d, y).psh);
                  for (const PshRef& Y : targets) {
                    CounitResult cy = counit_epsilon(Y);
                    for (const auto& F : enumerate_transformations(X, Y)) {
                      ++natural;
                      HTransRef H = ddel_morphism(c.ddel, cy.ddel, *groth_morphism(c.groth, cy.groth, *F));
                      o.require(transformations_equal(*compose_transformations(cy.eps, H),
                                                      *compose_transformations(F, c.eps)),
                                at + ": epsilon naturality");
                    }
                  }
                }
              }
              o.note << fixtures << " fixture presheaves, " << instances.size() << " random instances ("
                     << elements << " profunctor elements), " << natural << " naturality squares ";
            });

  criterion(5, "groth of a representable is the slice, up to renaming", 0, [&](Outcome& o) {
    long cases = 0;
    auto check_base = [&](const std::string& name, const DblRef& d) {
      for (int xh = 0; xh < d->n_obj(); ++xh) {
        ++cases;
        GrothResult g = groth(representable(d, xh).psh);
        SliceResult s = slice(d, xh);
        auto m = match_by_names(g.total, s.total);
        o.require(m.has_value(), name + ": renaming");
        if (m)
          o.require(*compose_double_functors(s.proj, std::make_shared<DoubleFunctor>(*m)) == *g.projection.p,
                    name + ": projections agree");
      }
    };
    for (const auto& [name, d] : all_fixtures()) check_base(name, d);
    for (std::size_t i = 0; i < 100; ++i) check_base("random #" + std::to_string(i), instances[i].base);
    o.note << cases << " (base, object) pairs ";
  });

  criterion(6, "every generated projection passes check_dfib", 0, [&](Outcome& o) {
    o.require(generated_checked == static_cast<long>(instances.size()), "all projections from criterion 4");
    long extra = 0;
    for (const auto& [name, d] : all_fixtures())
      for (const PshRef& X : fixture_presheaves(d)) {
        ++extra;
        GrothResult g = groth(X);
        auto res = check_dfib(g.projection.p);
        o.require(res.fib && res.fib->hlift == g.projection.hlift && res.fib->sqlift == g.projection.sqlift,
                  name + ": lift tables");
      }
    o.note << generated_checked << " random + " << extra << " fixture projections ";
  });

  criterion(7, "representation: presheaf-side and fibration-side flags agree", 300.0, [&](Outcome& o) {
    long pairs = 0, represented = 0;
    auto run = [&](const std::string& at, const PshRef& X) {
      RepresentationReport rep = representation_check(X);
      o.require(rep.agree, at);
      for (const auto& e : rep.entries) {
        ++pairs;
        represented += e.is_represented;
        o.require(e.is_represented == e.is_double_terminal, at + ": flags");
      }
    };
    for (const auto& [name, d] : all_fixtures())
      for (const PshRef& X : fixture_presheaves(d)) run(name, X);
    for (std::size_t i = 0; i < 100; ++i) run("random #" + std::to_string(100 + i), instances[100 + i].psh);
    o.require(represented > 0, "some pair is represented");
    o.note << pairs << " pairs, " << represented << " represented ";
  });

  criterion(8, "fib round trip and composition compatibility on 100 random instances", 0, [](Outcome& o) {
    Rng rng(8);
    long elements = 0;
    for (int i = 0; i < 100; ++i) {
      const std::string at = "instance " + std::to_string(i);
      CatRef c = random_category(rng, 4, 2, 0.5, "a"), cp = random_category(rng, 4, 2, 0.5, "b");
      CatRef cpp = random_category(rng, 4, 2, 0.5, "c");
      ProfRef u = random_profunctor(rng, c, cp), v = random_profunctor(rng, cp, cpp);
      elements += u->n_elem() + v->n_elem();
      TwoSidedFibWitness w1 = elements_fibration(u), w2 = elements_fibration(v);
      ProfRef back = fib(w1);
      bool same_cells = true;
      for (int x = 0; x < c->n_obj(); ++x)
        for (int y = 0; y < cp->n_obj(); ++y) same_cells = same_cells && back->at(x, y) == u->at(x, y);
      ProfMorphism m{back, u, identity_functor(c), identity_functor(cp), {}};
      for (int e = 0; e < u->n_elem(); ++e) m.map.push_back(e);
      o.require(same_cells && validate_prof_morphism(m).ok() && is_componentwise_bijection(m), at + ": round trip");
      o.require(check_fib_composition(w1, w2).ok(), at + ": composition");
      ProfRef lhs = fib(compose_ts_fibrations(w1, w2));
      for (int x = 0; x < c->n_obj(); ++x)
        for (int z = 0; z < cpp->n_obj(); ++z)
          o.require(static_cast<int>(lhs->at(x, z).size()) == oracle::composite_size(*u, *v, x, z),
                    at + ": composite sizes");
    }
    o.note << elements << " profunctor elements ";
  });

  criterion(9, "validators pass on fixtures and detect single-entry mutations", 0, [](Outcome& o) {
    for (const auto& [name, d] : all_fixtures()) {
      o.require(validate_double_category(*d).ok(), name);
      for (Which w : {Which::Ver0, Which::Ver1, Which::Hor0}) o.require(validate_category(underlying(*d, w)).ok(), name);
      for (const PshRef& X : fixture_presheaves(d)) {
        o.require(validate_presheaf(*X).ok(), name + ": presheaf");
        HTransRef id = identity_transformation(X);
        o.require(validate_horizontal_transformation(*id).ok(), name + ": transformation");
        o.require(validate_modification(*identity_modification(id)).ok(), name + ": modification");
      }
      o.require(validate_dfib(*check_dfib(identity_double_functor(d)).fib).ok(), name + ": fibration");
      for (int x = 0; x < d->n_obj(); ++x)
        o.require(validate_dfib(*check_dfib(slice(d, x).proj).fib).ok(), name + ": slice fibration");
    }
    mutation::Stats all;
    for (const mutation::Family& f : mutation::survey(20)) {
      all.add(f.stats);
      o.require(f.stats.total > 0 && f.stats.rate() >= 0.95, f.name + " detection rate");
      o.require(f.stats.unwitnessed == 0, f.name + " witnesses");
      o.require(f.stats.survivors.empty(), f.name + " undetected invalid mutant");
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s %ld/%ld (%ld valid mutants); ", f.name.c_str(), f.stats.detected,
                    f.stats.total, f.stats.equivalent);
      o.note << buf;
    }
    o.require(all.raw_rate() >= 0.95, "overall raw detection rate");
    char buf[96];
    std::snprintf(buf, sizeof buf, "overall %.2f%% of all mutants, %.2f%% of invalid ones ", 100 * all.raw_rate(),
                  100 * all.rate());
    o.note << buf;
  });

  return failures == 0 ? 0 : 1;
}
