#include <doctest.h>

#include "doublecat/fixtures.hpp"
#include "doublecat/groth.hpp"
#include "doublecat/random.hpp"
#include "oracles.hpp"

using namespace dc;

namespace {

CatRef ref(FinCat c) { return std::make_shared<FinCat>(std::move(c)); }

PshRef ddel_identity(const DblRef& d) { return ddel(*check_dfib(identity_double_functor(d)).fib).psh; }

int local_hmor(const Representable& r, const std::string& g) {
  const DoubleCat& d = *r.psh->base;
  const int gi = d.find_hmor(g);
  return r.homs[d.hsrc[gi]].hmor_obj[gi];
}

}  // namespace

TEST_CASE("representables validate") {
  for (const auto& [name, d] : all_fixtures())
    for (int xh = 0; xh < d->n_obj(); ++xh) {
      INFO(name, " at ", d->obj_names[xh]);
      Representable r = representable(d, xh);
      CHECK(validate_presheaf(*r.psh).ok());
      CHECK(r.psh->obj[xh]->obj_names[r.identity_object()] == d->hmor_names[d->hid[xh]]);
    }
  RandomSpec spec;
  spec.max_objects = 4;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    spec.seed = seed;
    DblRef d = random_double_category(spec);
    for (int xh = 0; xh < d->n_obj(); ++xh) CHECK(validate_presheaf(*representable(d, xh).psh).ok());
  }
}

TEST_CASE("representable values") {
  SUBCASE("DC0") {
    auto d = fixture_dc0();
    Representable r = representable(d, 0);
    CHECK(r.psh->obj[0]->n_obj() == 1);
    CHECK(r.psh->obj[0]->n_mor() == 1);
    CHECK(r.psh->vmor[0]->identity);
  }
  SUBCASE("E2 at xh") {
    auto d = fixture_e2();
    Representable r = representable(d, d->find_obj("xh"));
    const FinCat& at_x = *r.psh->obj[d->find_obj("x")];
    const FinCat& at_x1 = *r.psh->obj[d->find_obj("x'")];
    REQUIRE(at_x.n_obj() == 1);
    REQUIRE(at_x1.n_obj() == 1);
    CHECK(at_x.obj_names[0] == "g");
    CHECK(at_x1.obj_names[0] == "h");
    // ℂ(u, e_xh) = {alpha}
    const ProfRef& xu = r.psh->vmor[d->find_vmor("u")];
    REQUIRE(xu->n_elem() == 1);
    CHECK(xu->elem_names[0] == "alpha");
  }
}

TEST_CASE("hom profunctor composite in E1 is not a bijection at (g, g'')") {
  auto d = fixture_e1();
  const int u = d->find_vmor("u"), u1 = d->find_vmor("u'"), uh = d->find_vmor("uh"), uh1 = d->find_vmor("uh'");
  ProfRef p = hom_profunctor(*d, u, uh), q = hom_profunctor(*d, u1, uh1);
  ProfRef whole = hom_profunctor(*d, d->vc(u1, u), d->vc(uh1, uh));
  auto comp = compose(p, q);
  const int g = p->src->find_obj("g"), g2 = q->tgt->find_obj("g''");
  REQUIRE(g >= 0);
  REQUIRE(g2 >= 0);
  CHECK(comp->result->at(g, g2).empty());
  CHECK(oracle::composite_size(*p, *q, g, g2) == 0);
  CHECK(whole->at(g, g2).size() == 1);
}

TEST_CASE("constant, product and coproduct presheaves") {
  for (const auto& [name, d] : all_fixtures()) {
    auto k = constant_presheaf(d, ref(walking_arrow()));
    CHECK(validate_presheaf(*k).ok());
    for (int xh = 0; xh < d->n_obj(); ++xh) {
      PshRef r = representable(d, xh).psh;
      PshRef p = product_presheaf(r, k), s = coproduct_presheaf(r, k);
      CHECK(validate_presheaf(*p).ok());
      CHECK(validate_presheaf(*s).ok());
      for (int x = 0; x < d->n_obj(); ++x) {
        CHECK(p->obj[x]->n_obj() == r->obj[x]->n_obj() * 2);
        CHECK(s->obj[x]->n_obj() == r->obj[x]->n_obj() + 2);
      }
    }
  }
}

TEST_CASE("corrupted mu is caught") {
  // find a non-identity μ with a nonempty map on some representable and break one entry
  RandomSpec spec;
  spec.max_objects = 4;
  int broken = 0;
  for (std::uint64_t seed = 0; seed < 40 && broken < 5; ++seed) {
    spec.seed = seed;
    DblRef d = random_double_category(spec);
    for (int xh = 0; xh < d->n_obj(); ++xh) {
      PshRef r = representable(d, xh).psh;
      for (std::size_t i = 0; i < r->mu.size(); ++i) {
        const auto& m = r->mu[i];
        const int u = static_cast<int>(i) / d->n_vmor(), up = static_cast<int>(i) % d->n_vmor();
        if (!m || m->map.empty() || d->is_vid(u) || d->is_vid(up)) continue;
        const int n = r->vmor[d->vc(up, u)]->n_elem();
        for (int bad : {-1, (m->map[0] + 1) % std::max(n, 1)}) {
          if (bad == m->map[0]) continue;
          auto x = std::make_shared<LaxDoublePresheaf>(*r);
          x->mu[i]->map[0] = bad;
          CHECK_FALSE(validate_presheaf(*x).ok());
          ++broken;
        }
        break;
      }
    }
  }
  CHECK(broken > 0);
}

TEST_CASE("representable morphisms and modifications") {
  auto d = fixture_e1();
  const int x2 = d->find_obj("x''"), xh2 = d->find_obj("xh''");
  Representable a = representable(d, x2), b = representable(d, xh2);
  SUBCASE("identity hmor gives the identity transformation") {
    HTransRef t = representable_morphism(b, b, d->hid[xh2]);
    CHECK(validate_horizontal_transformation(*t).ok());
    CHECK(transformations_equal(*t, *identity_transformation(b.psh)));
  }
  SUBCASE("g'' post-composes") {
    HTransRef t = representable_morphism(a, b, d->find_hmor("g''"));
    CHECK(validate_horizontal_transformation(*t).ok());
    const FinFunctor& at = *t->obj[x2];
    CHECK(at.target->obj_names[at.obj_map[a.identity_object()]] == "g''");
    CHECK(yoneda_psi(a, *t) == local_hmor(b, "g''"));
  }
  SUBCASE("identity globular square gives the identity modification") {
    HTransRef id = identity_transformation(b.psh);
    ModRef m = representable_modification(b, b, d->vid_sq[d->hid[xh2]]);
    CHECK(validate_modification(*m).ok());
    CHECK(modifications_equal(*m, *identity_modification(id)));
    CHECK(yoneda_psi(b, *m) == b.homs[xh2].sq_mor[d->vid_sq[d->hid[xh2]]]);
  }
  SUBCASE("non-globular squares are rejected") {
    CHECK_THROWS_AS(representable_modification(a, b, d->find_sq("alpha")), std::invalid_argument);
  }
}

TEST_CASE("transformation algebra") {
  auto d = fixture_e2();
  Representable r = representable(d, d->find_obj("xh"));
  HTransRef id = identity_transformation(r.psh);
  CHECK(validate_horizontal_transformation(*id).ok());
  CHECK(transformations_equal(*compose_transformations(id, id), *id));
  CHECK(is_invertible(*id));
  ModRef m = identity_modification(id);
  CHECK(validate_modification(*m).ok());
  CHECK(modifications_equal(*whisker_left(id, m), *m));
  CHECK(modifications_equal(*whisker_right(m, id), *m));
  // a broken component is reported
  auto bad = std::make_shared<HorizontalTransf>(*id);
  auto f = std::make_shared<ProfMorphism>(*bad->vmor[d->find_vmor("u")]);
  f->map[0] = -1;
  bad->vmor[d->find_vmor("u")] = f;
  CHECK_FALSE(validate_horizontal_transformation(*bad).ok());
}

TEST_CASE("Yoneda on fixtures") {
  for (const auto& [name, d] : all_fixtures()) {
    std::vector<PshRef> xs;
    for (int y = 0; y < d->n_obj(); ++y) xs.push_back(representable(d, y).psh);
    xs.push_back(ddel_identity(d));
    for (int xh = 0; xh < d->n_obj(); ++xh) {
      Representable r = representable(d, xh);
      for (const PshRef& X : xs) {
        INFO(name, " at ", d->obj_names[xh]);
        auto ts = enumerate_transformations(r.psh, X);
        const FinCat& Xx = *X->obj[xh];
        CHECK(static_cast<int>(ts.size()) == Xx.n_obj());
        for (int a = 0; a < Xx.n_obj(); ++a) {
          HTransRef phi = yoneda_phi(r, X, a);
          CHECK(validate_horizontal_transformation(*phi).ok());
          CHECK(yoneda_psi(r, *phi) == a);
        }
        for (const auto& t : ts) CHECK(transformations_equal(*yoneda_phi(r, X, yoneda_psi(r, *t)), *t));
      }
      // Φ(1_x̂) is the identity
      CHECK(transformations_equal(*yoneda_phi(r, r.psh, r.identity_object()), *identity_transformation(r.psh)));
      CHECK(is_represented_by(r, r.psh, r.identity_object()));
    }
  }
}

TEST_CASE("Yoneda on morphisms of random presheaves") {
  RandomSpec spec;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    spec.seed = seed;
    Rng rng(seed);
    DblRef d = random_double_category(rng, spec);
    PshRef X = random_presheaf(rng, d, spec);
    for (int xh = 0; xh < d->n_obj(); ++xh) {
      Representable r = representable(d, xh);
      const FinCat& Xx = *X->obj[xh];
      std::vector<HTransRef> phi;
      for (int a = 0; a < Xx.n_obj(); ++a) phi.push_back(yoneda_phi(r, X, a));
      for (int a = 0; a < Xx.n_obj(); ++a)
        for (int b = 0; b < Xx.n_obj(); ++b) {
          auto ms = enumerate_modifications(phi[a], phi[b]);
          CHECK(ms.size() == Xx.hom(a, b).size());
          for (int m : Xx.hom(a, b)) {
            ModRef nu = yoneda_phi(r, X, phi[a], phi[b], m);
            CHECK(validate_modification(*nu).ok());
            CHECK(yoneda_psi(r, *nu) == m);
          }
          for (const auto& nu : ms)
            CHECK(modifications_equal(*yoneda_phi(r, X, phi[a], phi[b], yoneda_psi(r, *nu)), *nu));
        }
    }
  }
}

TEST_CASE("Psi is natural in the base object and in the presheaf") {
  for (const auto& [name, d] : all_fixtures()) {
    PshRef X = ddel_identity(d);
    for (int fh = 0; fh < d->n_hmor(); ++fh) {
      const int xh = d->hsrc[fh], yh = d->htgt[fh];
      Representable rx = representable(d, xh), ry = representable(d, yh);
      HTransRef pre = representable_morphism(rx, ry, fh);
      for (int a = 0; a < X->obj[yh]->n_obj(); ++a) {
        HTransRef phi = yoneda_phi(ry, X, a);
        CHECK(yoneda_psi(rx, *compose_transformations(phi, pre)) == X->hmor[fh]->obj_map[a]);
      }
    }
    for (int xh = 0; xh < d->n_obj(); ++xh) {
      Representable r = representable(d, xh);
      for (int y = 0; y < d->n_obj(); ++y) {
        PshRef Y = representable(d, y).psh;
        for (const auto& F : enumerate_transformations(X, Y))
          for (int a = 0; a < X->obj[xh]->n_obj(); ++a)
            CHECK(yoneda_psi(r, *compose_transformations(F, yoneda_phi(r, X, a))) == F->obj[xh]->obj_map[a]);
      }
    }
  }
}

TEST_CASE("enumeration edge cases") {
  auto dc0 = fixture_dc0();
  PshRef one = constant_presheaf(dc0, ref(terminal_category()));
  CHECK(enumerate_transformations(one, one).size() == 1);
  PshRef empty = constant_presheaf(dc0, ref(discrete_category(0)));
  CHECK(enumerate_transformations(one, empty).empty());
  CHECK(enumerate_transformations(empty, one).size() == 1);
  auto e1 = fixture_e1();
  PshRef big = product_presheaf(ddel_identity(e1), constant_presheaf(e1, ref(walking_iso())));
  CHECK_THROWS_AS(enumerate_transformations(big, big, 50), BudgetExceeded);
}

TEST_CASE("represented-by flags") {
  auto d = fixture_e2();
  const int xh = d->find_obj("xh"), x = d->find_obj("x");
  Representable r = representable(d, xh);
  Representable rx = representable(d, x);
  const int g = r.psh->obj[x]->find_obj("g");
  REQUIRE(g >= 0);
  CHECK_FALSE(is_represented_by(rx, r.psh, g));
  CHECK(is_represented_by(r, r.psh, r.identity_object()));
  PshRef empty = constant_presheaf(fixture_dcv1(), ref(discrete_category(0)));
  RepresentationReport rep = representation_check(empty);
  CHECK(rep.entries.empty());
  CHECK(rep.agree);
}
