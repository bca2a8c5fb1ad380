#include "doublecat/fixtures.hpp"

#include <stdexcept>

namespace dc {

namespace {

DblRef finish(const DoubleCatBuilder& b) { return std::make_shared<DoubleCat>(b.build()); }

}  // namespace

DblRef fixture_dc0() {
  DoubleCatBuilder b;
  b.object("*");
  return finish(b);
}

DblRef fixture_dch1() {
  DoubleCatBuilder b;
  int x = b.object("x"), xp = b.object("x'");
  b.hmor("f", x, xp);
  return finish(b);
}

DblRef fixture_dcv1() {
  DoubleCatBuilder b;
  int x = b.object("x"), xp = b.object("x'");
  b.vmor("u", x, xp);
  return finish(b);
}

DblRef fixture_e1() {
  DoubleCatBuilder b;
  int x = b.object("x"), x1 = b.object("x'"), x2 = b.object("x''");
  int h = b.object("xh"), h1 = b.object("xh'"), h2 = b.object("xh''");
  int g = b.hmor("g", x, h);
  int g2 = b.hmor("g''", x2, h2);
  int u = b.vmor("u", x, x1), u1 = b.vmor("u'", x1, x2);
  int uh = b.vmor("uh", h, h1), uh1 = b.vmor("uh'", h1, h2);
  int uu = b.vmor("u'u", x, x2), uhuh = b.vmor("uh'uh", h, h2);
  b.set_vcomp(u1, u, uu);
  b.set_vcomp(uh1, uh, uhuh);
  b.square("alpha", uu, g, g2, uhuh);
  return finish(b);
}

DblRef fixture_e2() {
  DoubleCatBuilder b;
  int x = b.object("x"), x1 = b.object("x'"), h = b.object("xh"), h1 = b.object("xh'");
  int g = b.hmor("g", x, h);
  int hh = b.hmor("h", x1, h);
  int g1 = b.hmor("g'", x1, h1);
  int u = b.vmor("u", x, x1), uh = b.vmor("uh", h, h1);
  const DoubleCat& d = b.peek();
  int a = b.square("alpha", u, g, hh, d.vid[h]);
  int a1 = b.square("alpha'", d.vid[x1], hh, g1, uh);
  int a2 = b.square("alpha'alpha", u, g, g1, uh);
  b.set_vcomp_sq(a1, a, a2);
  return finish(b);
}

std::vector<std::pair<std::string, DblRef>> all_fixtures() {
  return {{"DC0", fixture_dc0()},
          {"DCH1", fixture_dch1()},
          {"DCV1", fixture_dcv1()},
          {"E1", fixture_e1()},
          {"E2", fixture_e2()}};
}

DblRef fixture_by_name(std::string_view name) {
  for (auto& [n, d] : all_fixtures())
    if (n == name) return d;
  throw std::invalid_argument("unknown fixture: " + std::string(name));
}

}  // namespace dc
