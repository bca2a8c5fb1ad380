#include <doctest.h>

#include "doublecat/detail.hpp"
#include "doublecat/fixtures.hpp"
#include "doublecat/groth.hpp"
#include "doublecat/random.hpp"

using namespace dc;

namespace {

DiscreteDoubleFibration identity_fib(const DblRef& d) { return *check_dfib(identity_double_functor(d)).fib; }

DiscreteDoubleFibration slice_fib(const DblRef& d, int xh) { return *check_dfib(slice(d, xh).proj).fib; }

bool has_law(const ValidationReport& r, const std::string& prefix) {
  for (const auto& v : r.items)
    if (v.law.rfind(prefix, 0) == 0) return true;
  return false;
}

// A handful of fibrations: identities, slice projections and projections of random presheaves.
std::vector<DiscreteDoubleFibration> sample_fibrations() {
  std::vector<DiscreteDoubleFibration> out;
  for (const auto& [name, d] : all_fixtures()) {
    out.push_back(identity_fib(d));
    for (int x = 0; x < d->n_obj(); ++x) out.push_back(slice_fib(d, x));
  }
  RandomSpec spec;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    spec.seed = seed;
    Rng rng(seed);
    DblRef d = random_double_category(rng, spec);
    out.push_back(groth(random_presheaf(rng, d, spec)).projection);
  }
  return out;
}

}  // namespace

TEST_CASE("check_dfib") {
  CHECK(check_dfib(identity_double_functor(fixture_e1())).fib.has_value());
  SUBCASE("collapse DCH1 -> DC0 is not a fibration") {
    auto src = fixture_dch1(), tgt = fixture_dc0();
    auto f = std::make_shared<DoubleFunctor>();
    f->source = src;
    f->target = tgt;
    f->obj.assign(src->n_obj(), 0);
    f->hmor.assign(src->n_hmor(), 0);
    f->vmor.assign(src->n_vmor(), 0);
    f->sq.assign(src->n_sq(), 0);
    REQUIRE(validate_double_functor(*f).ok());
    auto res = check_dfib(f);
    CHECK_FALSE(res.fib);
    CHECK(has_law(res.failure, "horizontal lift"));
  }
  SUBCASE("corrupted lift tables are reported") {
    DiscreteDoubleFibration d = slice_fib(fixture_e2(), fixture_e2()->find_obj("xh"));
    CHECK(validate_dfib(d).ok());
    for (std::size_t i = 0; i < d.hlift.size(); ++i) {
      if (d.hlift[i] < 0) continue;
      DiscreteDoubleFibration bad = d;
      bad.hlift[i] = -1;
      CHECK_FALSE(validate_dfib(bad).ok());
    }
  }
}

TEST_CASE("fibers") {
  SUBCASE("identity fibration on E1 at x") {
    auto d = fixture_e1();
    ObjectFiber f = fiber_object(identity_fib(d), d->find_obj("x"));
    CHECK(f.cat->n_obj() == 1);
    CHECK(f.cat->n_mor() == 1);
  }
  SUBCASE("identity fibration on DCV1 at u") {
    auto d = fixture_dcv1();
    VerticalFiber f = fiber_vertical(identity_fib(d), d->find_vmor("u"));
    CHECK(f.cat->n_obj() == 1);
    CHECK(f.cat->obj_names[0] == "u");
  }
  SUBCASE("fiber at e_x is the arrow category of the fiber at x") {
    for (const auto& d : sample_fibrations()) {
      FiberData fd = fibers(d);
      const DoubleCat& C = d.base();
      for (int x = 0; x < C.n_obj(); ++x) {
        const VerticalFiber& v = fd.vmor[C.vid[x]];
        auto arrows = std::make_shared<FinCat>(arrow_category(*fd.obj[x].cat));
        CHECK(find_cat_isomorphism(v.cat, arrows).has_value());
        CHECK(check_two_sided_fibration(v.w.p, v.w.q).witness.has_value());
        ProfRef p = fib(v.w);
        ProfRef id = identity_profunctor(fd.obj[x].cat);
        CHECK(p->elem_x == id->elem_x);
        CHECK(p->elem_y == id->elem_y);
      }
    }
  }
}

TEST_CASE("actions on fibers") {
  SUBCASE("E2 slice: g* sends (xh,1_xh) to (x,g)") {
    auto e2 = fixture_e2();
    DiscreteDoubleFibration d = slice_fib(e2, e2->find_obj("xh"));
    FiberData fd = fibers(d);
    FunctorRef g = hmor_action(d, fd, e2->find_hmor("g"));
    const int top = g->source->find_obj("(xh,1_xh)");
    REQUIRE(top >= 0);
    CHECK(g->target->obj_names[g->obj_map[top]] == "(x,g)");
  }
  for (const auto& d : sample_fibrations()) {
    const DoubleCat& C = d.base();
    FiberData fd = fibers(d);
    for (int x = 0; x < C.n_obj(); ++x) CHECK(same_functor(hmor_action(d, fd, C.hid[x]), identity_functor(fd.obj[x].cat)));
    for (int g = 0; g < C.n_hmor(); ++g)
      for (int f = 0; f < C.n_hmor(); ++f) {
        const int gf = C.hc(g, f);
        if (gf < 0) continue;
        CHECK(same_functor(hmor_action(d, fd, gf), compose_functors(hmor_action(d, fd, f), hmor_action(d, fd, g))));
      }
    for (int b = 0; b < C.n_sq(); ++b)
      for (int a = 0; a < C.n_sq(); ++a) {
        const int ba = C.hc_sq(b, a);
        if (ba < 0) continue;
        CHECK(same_functor(square_action(d, fd, ba), compose_functors(square_action(d, fd, a), square_action(d, fd, b))));
      }
    // e_f acts on P^{-1}e_y as f acts on the morphisms of P^{-1}y
    for (int f = 0; f < C.n_hmor(); ++f)
      CHECK(square_action(d, fd, C.vid_sq[f])->obj_map == hmor_action(d, fd, f)->mor_map);
  }
}

TEST_CASE("ddel") {
  SUBCASE("identity on DC0 is the constant point") {
    PshRef x = ddel(identity_fib(fixture_dc0())).psh;
    CHECK(x->obj[0]->n_obj() == 1);
    CHECK(x->obj[0]->n_mor() == 1);
    CHECK(x->vmor[0]->identity);
    CHECK(validate_presheaf(*x).ok());
  }
  SUBCASE("every sample gives a valid presheaf") {
    for (const auto& d : sample_fibrations()) CHECK(validate_presheaf(*ddel(d).psh).ok());
  }
  SUBCASE("slice projections give representables up to isomorphism") {
    for (const auto& [name, d] : all_fixtures())
      for (int xh = 0; xh < d->n_obj(); ++xh) {
        PshRef x = ddel(slice_fib(d, xh)).psh;
        PshRef r = representable(d, xh).psh;
        bool found = false;
        for (const auto& t : enumerate_transformations(r, x)) found = found || is_invertible(*t);
        CHECK(found);
      }
  }
  SUBCASE("ddel of a Grothendieck projection has the values of X") {
    RandomSpec spec;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      spec.seed = seed;
      Rng rng(seed);
      DblRef d = random_double_category(rng, spec);
      PshRef X = random_presheaf(rng, d, spec);
      PshRef back = ddel(groth(X).projection).psh;
      for (int x = 0; x < d->n_obj(); ++x) {
        CHECK(back->obj[x]->n_obj() == X->obj[x]->n_obj());
        CHECK(back->obj[x]->n_mor() == X->obj[x]->n_mor());
      }
      for (int u = 0; u < d->n_vmor(); ++u) CHECK(back->vmor[u]->n_elem() == X->vmor[u]->n_elem());
    }
  }
}

TEST_CASE("ddel on morphisms") {
  for (const auto& [name, d] : all_fixtures()) {
    DiscreteDoubleFibration p = identity_fib(d);
    DdelResult dd = ddel(p);
    HTransRef t = ddel_morphism(dd, dd, *p.p);
    CHECK(validate_horizontal_transformation(*t).ok());
    CHECK(transformations_equal(*t, *identity_transformation(dd.psh)));
    ModRef m = ddel_2morphism(dd, dd, *identity_vertical_transformation(p.p));
    CHECK(validate_modification(*m).ok());
    CHECK(modifications_equal(*m, *identity_modification(t)));
  }
  // ∂∂∫∫F agrees with F through ε
  for (const auto& [name, d] : all_fixtures())
    for (int x = 0; x < d->n_obj(); ++x)
      for (int y = 0; y < d->n_obj(); ++y) {
        PshRef X = representable(d, x).psh, Y = representable(d, y).psh;
        CounitResult cx = counit_epsilon(X), cy = counit_epsilon(Y);
        for (const auto& F : enumerate_transformations(X, Y)) {
          DFunRef G = groth_morphism(cx.groth, cy.groth, *F);
          HTransRef H = ddel_morphism(cx.ddel, cy.ddel, *G);
          CHECK(validate_horizontal_transformation(*H).ok());
          CHECK(transformations_equal(*compose_transformations(cy.eps, H), *compose_transformations(F, cx.eps)));
        }
      }
}

TEST_CASE("fibrational Phi and slice comparison") {
  SUBCASE("identity on DC0") {
    auto d = fixture_dc0();
    DiscreteDoubleFibration p = identity_fib(d);
    DFunRef phi = phi_fibrational(p, slice(d, 0), 0);
    CHECK(validate_double_functor(*phi).ok());
    CHECK(is_double_isomorphism(*phi));
  }
  SUBCASE("slice projection at its terminal object") {
    for (const auto& [name, d] : all_fixtures())
      for (int xh = 0; xh < d->n_obj(); ++xh) {
        SliceResult s = slice(d, xh);
        DiscreteDoubleFibration p = *check_dfib(s.proj).fib;
        const int top = s.total->find_obj("(" + d->obj_names[xh] + "," + d->hmor_names[d->hid[xh]] + ")");
        DFunRef phi = phi_fibrational(p, slice(d, xh), top);
        CHECK(validate_double_functor(*phi).ok());
        CHECK(is_double_isomorphism(*phi));
      }
  }
  SUBCASE("Phi is an isomorphism exactly at double terminal objects") {
    for (const auto& d : sample_fibrations()) {
      const DoubleCat& E = d.total();
      for (int e = 0; e < E.n_obj(); ++e) {
        DFunRef phi = phi_fibrational(d, slice(d.p->target, d.p->obj[e]), e);
        CHECK(validate_double_functor(*phi).ok());
        CHECK(is_double_isomorphism(*phi) == double_terminal_at(E, e).has_value());
      }
    }
  }
  SUBCASE("slice comparison is an isomorphism") {
    for (const auto& d : sample_fibrations())
      for (int e = 0; e < d.total().n_obj(); ++e) {
        IsoReport r = slice_comparison(d, e);
        CHECK(r.is_iso);
        CHECK(r.ver0_bijective);
        CHECK(r.checks.ok());
      }
    auto e1 = fixture_e1();
    GrothResult g = groth(representable(e1, e1->find_obj("xh''")).psh);
    for (int e = 0; e < g.total->n_obj(); ++e) CHECK(slice_comparison(g.projection, e).is_iso);
  }
  SUBCASE("a broken lift table breaks the comparison") {
    auto e2 = fixture_e2();
    DiscreteDoubleFibration d = slice_fib(e2, e2->find_obj("xh"));
    const int top = d.total().find_obj("(xh,1_xh)");
    int broken = 0;
    for (std::size_t i = 0; i < d.hlift.size(); ++i) {
      if (d.hlift[i] < 0 || static_cast<int>(i) / d.base().n_hmor() != top) continue;
      DiscreteDoubleFibration bad = d;
      bad.hlift[i] = -1;
      IsoReport r = slice_comparison(bad, top);
      CHECK_FALSE(r.checks.ok());
      ++broken;
    }
    CHECK(broken > 0);
  }
}

TEST_CASE("morphisms of fibrations are isomorphisms iff bijective on Ver0") {
  for (const auto& [name, d] : all_fixtures())
    for (int x = 0; x < d->n_obj(); ++x)
      for (int y = 0; y < d->n_obj(); ++y) {
        PshRef X = representable(d, x).psh, Y = representable(d, y).psh;
        GrothResult gx = groth(X), gy = groth(Y);
        for (const auto& F : enumerate_transformations(X, Y)) {
          DFunRef G = groth_morphism(gx, gy, *F);
          const bool ver0 = detail::is_bijection(G->obj, gy.total->n_obj()) && detail::is_bijection(G->vmor, gy.total->n_vmor());
          CHECK(is_double_isomorphism(*G) == ver0);
        }
      }
}
