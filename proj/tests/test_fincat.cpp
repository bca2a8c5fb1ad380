#include <doctest.h>

#include "doublecat/random.hpp"
#include "oracles.hpp"

using namespace dc;

namespace {

CatRef ref(FinCat c) { return std::make_shared<FinCat>(std::move(c)); }

bool has_law(const ValidationReport& r, const std::string& law, const std::string& needle) {
  for (const auto& v : r.items)
    if (v.law == law && v.witness.find(needle) != std::string::npos) return true;
  return false;
}

// Sizes of every cell, as a flat vector.
std::vector<std::size_t> cell_sizes(const Profunctor& u) {
  std::vector<std::size_t> s;
  for (const auto& c : u.cells) s.push_back(c.size());
  return s;
}

}  // namespace

TEST_CASE("basic categories validate") {
  for (const FinCat& c : {terminal_category(), walking_arrow(), walking_iso(), discrete_category(3),
                          discrete_category(0), product_category(walking_arrow(), walking_iso()),
                          arrow_category(walking_arrow())}) {
    CHECK(validate_category(c).ok());
    CHECK(oracle::is_category(c));
  }
  FinCat a = arrow_category(walking_arrow());
  CHECK(a.n_obj() == 3);
  CHECK(a.n_mor() == 6);  // 3 identities plus 1_0 -> f, f -> 1_1 and the composite
}

TEST_CASE("unit law violation is witnessed") {
  FinCat c = walking_arrow();
  const int f = c.find_mor("f"), id0 = c.ident[0];
  c.comp[static_cast<std::size_t>(f) * c.n_mor() + id0] = id0;
  auto r = validate_category(c);
  CHECK_FALSE(r.ok());
  CHECK(has_law(r, "unit law", "f"));
  CHECK_FALSE(oracle::is_category(c));
}

TEST_CASE("identity profunctor reads off hom sets") {
  auto t = identity_profunctor(ref(terminal_category()));
  CHECK(t->n_elem() == 1);
  auto a = ref(walking_arrow());
  auto h = identity_profunctor(a);
  CHECK(h->at(0, 1).size() == 1);
  CHECK(h->elem_names[h->at(0, 1)[0]] == "f");
  CHECK(h->at(1, 0).empty());
  auto iso = identity_profunctor(ref(walking_iso()));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) CHECK(iso->at(x, y).size() == 1);
  CHECK(validate_profunctor(*iso).ok());
}

TEST_CASE("coend of hom profunctors") {
  auto a = ref(walking_arrow());
  auto ca = coend(*a, *identity_profunctor(a));
  CHECK(ca.n_classes() == 2);
  CHECK(oracle::coend_classes(*a, *identity_profunctor(a)) == 2);
  auto iso = ref(walking_iso());
  CHECK(coend(*iso, *identity_profunctor(iso)).n_classes() == 1);
  auto one = ref(terminal_category());
  CHECK(coend(*one, *identity_profunctor(one)).n_classes() == 1);
}

TEST_CASE("coend section is the smallest representative and project is consistent") {
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    CatRef c = random_category(rng, 3, 2, 0.6, "c");
    ProfRef u = random_profunctor(rng, c, c);
    CoendResult r = coend(*c, *u);
    CHECK(r.n_classes() == oracle::coend_classes(*c, *u));
    for (int k = 0; k < r.n_classes(); ++k) {
      auto [x, e] = r.section[k];
      CHECK(u->elem_x[e] == x);
      CHECK(r.project[e] == k);
      for (int e2 = 0; e2 < u->n_elem(); ++e2)
        if (r.project[e2] == k) CHECK(std::pair(u->elem_x[e2], e2) >= std::pair(x, e));
    }
  }
}

TEST_CASE("profunctor composition") {
  auto a = ref(walking_arrow());
  auto h = identity_profunctor(a);
  SUBCASE("strict units return the other factor") {
    Rng rng(1);
    CatRef b = random_category(rng, 3, 2, 0.5, "b");
    ProfRef u = random_profunctor(rng, a, b);
    CHECK(compose_profunctors(h, u) == u);
    CHECK(compose_profunctors(u, identity_profunctor(b)) == u);
  }
  SUBCASE("hom of [1] composed with a copy of itself") {
    // a copy without the identity flag, so the coend is actually computed
    auto h2 = std::make_shared<Profunctor>(*h);
    h2->identity = false;
    auto c = compose_profunctors(h2, h2);
    CHECK(c->at(0, 1).size() == 1);
    CHECK(oracle::composite_size(*h2, *h2, 0, 1) == 1);
    CHECK(validate_profunctor(*c).ok());
  }
  SUBCASE("boundary mismatch throws") {
    auto iso = identity_profunctor(ref(walking_iso()));
    CHECK_THROWS_AS(compose(h, iso), std::invalid_argument);
  }
  SUBCASE("random composites against the pair quotient") {
    Rng rng(9);
    for (int i = 0; i < 40; ++i) {
      CatRef c1 = random_category(rng, 3, 2, 0.5, "a");
      CatRef c2 = random_category(rng, 3, 2, 0.5, "b");
      CatRef c3 = random_category(rng, 3, 2, 0.5, "c");
      CatRef c4 = random_category(rng, 2, 2, 0.5, "d");
      ProfRef u = random_profunctor(rng, c1, c2), v = random_profunctor(rng, c2, c3);
      ProfRef w = random_profunctor(rng, c3, c4);
      auto comp = compose(u, v);
      REQUIRE(validate_profunctor(*comp->result).ok());
      if (comp->unit == Composite::Unit::None)
        for (int x = 0; x < c1->n_obj(); ++x)
          for (int z = 0; z < c3->n_obj(); ++z)
            CHECK(static_cast<int>(comp->result->at(x, z).size()) == oracle::composite_size(*u, *v, x, z));
      CHECK(check_composite_associativity(u, v, w).ok());
    }
  }
}

TEST_CASE("functors and natural transformations") {
  auto iso = ref(walking_iso());
  auto id = identity_functor(iso);
  CHECK(validate_functor(*id).ok());
  CHECK(is_isomorphism(*id));
  auto swap = std::make_shared<FinFunctor>();
  swap->source = swap->target = iso;
  swap->obj_map = {1, 0};
  swap->mor_map = {1, 0, iso->find_mor("g"), iso->find_mor("f")};
  CHECK(validate_functor(*swap).ok());
  CHECK(same_functor(compose_functors(swap, swap), id));
  CHECK(validate_nat_trans(*identity_nat_trans(swap)).ok());
  auto broken = std::make_shared<FinFunctor>(*swap);
  broken->mor_map[2] = 0;
  CHECK_FALSE(validate_functor(*broken).ok());
}

TEST_CASE("two-sided discrete fibrations") {
  auto a = ref(walking_arrow());
  SUBCASE("source/target of the arrow category") {
    TwoSidedFibWitness w = arrow_fibration(a);
    auto res = check_two_sided_fibration(w.p, w.q);
    REQUIRE(res.witness);
    ProfRef f = fib(w);
    ProfRef h = identity_profunctor(a);
    CHECK(cell_sizes(*f) == cell_sizes(*h));
    ProfMorphism m{f, h, identity_functor(a), identity_functor(a), {}};
    for (int e = 0; e < f->n_elem(); ++e) m.map.push_back(e);
    CHECK(validate_prof_morphism(m).ok());
    CHECK(is_componentwise_bijection(m));
  }
  SUBCASE("empty fibers give the empty profunctor") {
    auto empty = ref(discrete_category(0));
    auto p = std::make_shared<FinFunctor>(FinFunctor{empty, a, {}, {}});
    auto q = std::make_shared<FinFunctor>(FinFunctor{empty, a, {}, {}});
    auto res = check_two_sided_fibration(p, q);
    REQUIRE(res.witness);
    CHECK(fib(*res.witness)->n_elem() == 0);
  }
  SUBCASE("a non-fibration is reported") {
    // [1] -> [1] x [0]: the arrow has no unique Q-lift shape matching (P, Q) conditions
    auto one = ref(terminal_category());
    auto p = std::make_shared<FinFunctor>(FinFunctor{a, one, {0, 0}, {0, 0, 0}});
    auto q = std::make_shared<FinFunctor>(FinFunctor{a, one, {0, 0}, {0, 0, 0}});
    auto res = check_two_sided_fibration(p, q);
    CHECK_FALSE(res.witness);
    CHECK_FALSE(res.failure.ok());
  }
  SUBCASE("mismatched sources throw") {
    auto one = ref(terminal_category());
    auto p = identity_functor(a);
    auto q = identity_functor(one);
    CHECK_THROWS_AS(check_two_sided_fibration(p, q), std::invalid_argument);
  }
  SUBCASE("composition with the unit fibration") {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
      CatRef c = random_category(rng, 3, 2, 0.5, "a");
      CatRef cp = random_category(rng, 3, 2, 0.5, "b");
      TwoSidedFibWitness w1 = elements_fibration(random_profunctor(rng, c, cp));
      TwoSidedFibWitness w = compose_ts_fibrations(w1, arrow_fibration(cp));
      CHECK(find_cat_isomorphism(w.p->source, w1.p->source).has_value());
      CHECK(cell_sizes(*fib(w)) == cell_sizes(*fib(w1)));
    }
  }
}

TEST_CASE("fib round-trips and respects composition on random instances") {
  Rng rng(2024);
  for (int i = 0; i < 60; ++i) {
    CatRef c = random_category(rng, 4, 2, 0.5, "a");
    CatRef cp = random_category(rng, 3, 2, 0.5, "b");
    CatRef cpp = random_category(rng, 3, 2, 0.5, "c");
    ProfRef u = random_profunctor(rng, c, cp), v = random_profunctor(rng, cp, cpp);
    REQUIRE(validate_profunctor(*u).ok());
    TwoSidedFibWitness w1 = elements_fibration(u), w2 = elements_fibration(v);
    ProfRef back = fib(w1);
    ProfMorphism m{back, u, identity_functor(c), identity_functor(cp), {}};
    for (int e = 0; e < u->n_elem(); ++e) m.map.push_back(e);
    CHECK(validate_prof_morphism(m).ok());
    CHECK(is_componentwise_bijection(m));
    CHECK(check_fib_composition(w1, w2).ok());
    // the composite fibration's fibers have the sizes of the pair quotient
    ProfRef lhs = fib(compose_ts_fibrations(w1, w2));
    for (int x = 0; x < c->n_obj(); ++x)
      for (int z = 0; z < cpp->n_obj(); ++z)
        CHECK(static_cast<int>(lhs->at(x, z).size()) == oracle::composite_size(*u, *v, x, z));
  }
}
