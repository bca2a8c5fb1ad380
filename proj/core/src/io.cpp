#include "doublecat/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace dc {

using Json = nlohmann::ordered_json;

const char* to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::Syntax: return "syntax";
    case ParseErrorKind::UnresolvedId: return "unresolved-id";
    case ParseErrorKind::Validation: return "validation";
    case ParseErrorKind::Schema: return "schema";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(ParseErrorKind k, const std::string& msg) { throw ParseError(k, msg); }

// ---------- reading helpers ----------

using Index = std::unordered_map<std::string, int>;

Index index_names(const std::vector<std::string>& names, const std::string& what) {
  Index idx;
  for (int i = 0; i < static_cast<int>(names.size()); ++i)
    if (!idx.emplace(names[i], i).second) fail(ParseErrorKind::Schema, "duplicate " + what + " name '" + names[i] + "'");
  return idx;
}

int resolve(const Index& idx, const std::string& name, const std::string& what) {
  auto it = idx.find(name);
  if (it == idx.end()) fail(ParseErrorKind::UnresolvedId, "unknown " + what + " '" + name + "'");
  return it->second;
}

const Json& field(const Json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) fail(ParseErrorKind::Schema, ctx + ": missing field '" + key + "'");
  return j.at(key);
}

std::string str(const Json& j, const std::string& ctx) {
  if (!j.is_string()) fail(ParseErrorKind::Schema, ctx + ": expected a string");
  return j.get<std::string>();
}

std::vector<std::string> str_list(const Json& j, const std::string& ctx) {
  if (!j.is_array()) fail(ParseErrorKind::Schema, ctx + ": expected an array");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(str(e, ctx));
  return out;
}

std::array<std::string, 3> triple(const Json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 3) fail(ParseErrorKind::Schema, ctx + ": expected [a, b, c]");
  return {str(j[0], ctx), str(j[1], ctx), str(j[2], ctx)};
}

void check_header(const Json& j, const std::string& kind) {
  if (!j.is_object()) fail(ParseErrorKind::Schema, "document is not an object");
  if (j.contains("kind") && str(j.at("kind"), "kind") != kind)
    fail(ParseErrorKind::Schema, "expected a " + kind + " document, got " + j.at("kind").dump());
  if (j.contains("version")) {
    if (!j.at("version").is_number_integer()) fail(ParseErrorKind::Schema, "version must be an integer");
    if (j.at("version").get<int>() != kFormatVersion)
      fail(ParseErrorKind::Schema, "unsupported version " + j.at("version").dump());
  }
}

void require_valid(const ValidationReport& r, const std::string& what) {
  if (!r.ok()) fail(ParseErrorKind::Validation, what + " failed validation:\n" + r.str());
}

// Source-name -> target-name object into an index map of the given size.
std::vector<int> read_map(const Json& j, const Index& src, int n_src, const Index& tgt, const std::string& ctx) {
  if (!j.is_object()) fail(ParseErrorKind::Schema, ctx + ": expected an object");
  std::vector<int> m(n_src, -1);
  for (const auto& [k, v] : j.items()) m[resolve(src, k, ctx + " source")] = resolve(tgt, str(v, ctx), ctx + " target");
  for (int v : m)
    if (v < 0) fail(ParseErrorKind::Schema, ctx + ": map is not total");
  return m;
}

Json write_map(const std::vector<int>& m, const std::vector<std::string>& src, const std::vector<std::string>& tgt) {
  Json j = Json::object();
  for (std::size_t i = 0; i < m.size(); ++i) j[src[i]] = tgt.at(m[i]);
  return j;
}

// ---------- categories ----------

Json cat_json(const FinCat& c) {
  index_names(c.obj_names, "object");
  index_names(c.mor_names, "morphism");
  Json j;
  j["kind"] = "category";
  j["version"] = kFormatVersion;
  j["objects"] = c.obj_names;
  Json mors = Json::array();
  for (int m = 0; m < c.n_mor(); ++m)
    mors.push_back({{"name", c.mor_names[m]}, {"src", c.obj_names[c.src[m]]}, {"tgt", c.obj_names[c.tgt[m]]}});
  j["morphisms"] = mors;
  Json ids = Json::array();
  for (int i : c.ident) ids.push_back(c.mor_names[i]);
  j["identities"] = ids;
  Json comp = Json::array();
  for (int g = 0; g < c.n_mor(); ++g)
    for (int f = 0; f < c.n_mor(); ++f) {
      int h = c.compose(g, f);
      if (h >= 0 && !c.is_identity(g) && !c.is_identity(f))
        comp.push_back({c.mor_names[g], c.mor_names[f], c.mor_names[h]});
    }
  j["compose"] = comp;
  return j;
}

CatRef cat_from(const Json& j) {
  check_header(j, "category");
  auto c = std::make_shared<FinCat>();
  c->obj_names = str_list(field(j, "objects", "category"), "category objects");
  Index oi = index_names(c->obj_names, "object");
  const bool explicit_ids = j.contains("identities");
  if (!explicit_ids)
    for (const auto& o : c->obj_names) {
      c->mor_names.push_back("1_" + o);
      c->src.push_back(static_cast<int>(c->src.size()));
      c->tgt.push_back(static_cast<int>(c->tgt.size()));
      c->ident.push_back(static_cast<int>(c->ident.size()));
    }
  const Json& mors = field(j, "morphisms", "category");
  if (!mors.is_array()) fail(ParseErrorKind::Schema, "category morphisms: expected an array");
  for (const auto& m : mors) {
    c->mor_names.push_back(str(field(m, "name", "morphism"), "morphism name"));
    c->src.push_back(resolve(oi, str(field(m, "src", "morphism"), "morphism src"), "object"));
    c->tgt.push_back(resolve(oi, str(field(m, "tgt", "morphism"), "morphism tgt"), "object"));
  }
  Index mi = index_names(c->mor_names, "morphism");
  if (explicit_ids) {
    auto ids = str_list(j.at("identities"), "identities");
    if (ids.size() != c->obj_names.size()) fail(ParseErrorKind::Schema, "one identity per object expected");
    for (const auto& n : ids) c->ident.push_back(resolve(mi, n, "morphism"));
  }
  const std::size_t n = c->mor_names.size();
  c->comp.assign(n * n, -1);
  for (std::size_t f = 0; f < n; ++f) {
    c->comp[f * n + c->ident[c->src[f]]] = static_cast<int>(f);
    c->comp[c->ident[c->tgt[f]] * n + f] = static_cast<int>(f);
  }
  if (j.contains("compose")) {
    if (!j.at("compose").is_array()) fail(ParseErrorKind::Schema, "compose: expected an array");
    for (const auto& e : j.at("compose")) {
      auto [g, f, h] = triple(e, "compose");
      c->comp[resolve(mi, g, "morphism") * n + resolve(mi, f, "morphism")] = resolve(mi, h, "morphism");
    }
  }
  require_valid(validate_category(*c), "category");
  return c;
}

// ---------- double categories ----------

void fill_units(DoubleCat& d) {
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
}

bool is_hid_sq(const DoubleCat& d, int a) { return d.hid_sq[d.sq_left[a]] == a; }
bool is_vid_sq(const DoubleCat& d, int a) { return d.vid_sq[d.sq_top[a]] == a; }

Json dbl_json(const DoubleCat& d) {
  index_names(d.obj_names, "object");
  index_names(d.hmor_names, "hmor");
  index_names(d.vmor_names, "vmor");
  index_names(d.sq_names, "square");
  Json j;
  j["kind"] = "doublecat";
  j["version"] = kFormatVersion;
  j["objects"] = d.obj_names;
  Json h = Json::array(), v = Json::array(), s = Json::array();
  for (int f = 0; f < d.n_hmor(); ++f)
    h.push_back({{"name", d.hmor_names[f]}, {"src", d.obj_names[d.hsrc[f]]}, {"tgt", d.obj_names[d.htgt[f]]}});
  for (int u = 0; u < d.n_vmor(); ++u)
    v.push_back({{"name", d.vmor_names[u]}, {"src", d.obj_names[d.vsrc[u]]}, {"tgt", d.obj_names[d.vtgt[u]]}});
  for (int a = 0; a < d.n_sq(); ++a)
    s.push_back({{"name", d.sq_names[a]},
                 {"left", d.vmor_names[d.sq_left[a]]},
                 {"top", d.hmor_names[d.sq_top[a]]},
                 {"bottom", d.hmor_names[d.sq_bot[a]]},
                 {"right", d.vmor_names[d.sq_right[a]]}});
  j["hmors"] = h;
  j["vmors"] = v;
  j["squares"] = s;
  auto names = [](const std::vector<int>& m, const std::vector<std::string>& n) {
    Json a = Json::array();
    for (int i : m) a.push_back(n[i]);
    return a;
  };
  j["hid"] = names(d.hid, d.hmor_names);
  j["vid"] = names(d.vid, d.vmor_names);
  j["hid_sq"] = names(d.hid_sq, d.sq_names);
  j["vid_sq"] = names(d.vid_sq, d.sq_names);
  Json hc = Json::array(), vc = Json::array(), hs = Json::array(), vs = Json::array();
  for (int g = 0; g < d.n_hmor(); ++g)
    for (int f = 0; f < d.n_hmor(); ++f)
      if (int r = d.hc(g, f); r >= 0 && !d.is_hid(g) && !d.is_hid(f))
        hc.push_back({d.hmor_names[g], d.hmor_names[f], d.hmor_names[r]});
  for (int b = 0; b < d.n_vmor(); ++b)
    for (int a = 0; a < d.n_vmor(); ++a)
      if (int r = d.vc(b, a); r >= 0 && !d.is_vid(b) && !d.is_vid(a))
        vc.push_back({d.vmor_names[b], d.vmor_names[a], d.vmor_names[r]});
  for (int b = 0; b < d.n_sq(); ++b)
    for (int a = 0; a < d.n_sq(); ++a) {
      if (int r = d.hc_sq(b, a); r >= 0 && !is_hid_sq(d, b) && !is_hid_sq(d, a))
        hs.push_back({d.sq_names[b], d.sq_names[a], d.sq_names[r]});
      if (int r = d.vc_sq(b, a); r >= 0 && !is_vid_sq(d, b) && !is_vid_sq(d, a))
        vs.push_back({d.sq_names[b], d.sq_names[a], d.sq_names[r]});
    }
  j["hcomp"] = hc;
  j["vcomp"] = vc;
  j["hcomp_sq"] = hs;
  j["vcomp_sq"] = vs;
  return j;
}

struct Edge {
  std::string name, a, b;
};

std::vector<Edge> edges(const Json& j, const char* key, const char* a, const char* b) {
  std::vector<Edge> out;
  if (!j.contains(key)) return out;
  const Json& arr = j.at(key);
  if (!arr.is_array()) fail(ParseErrorKind::Schema, std::string(key) + ": expected an array");
  for (const auto& e : arr)
    out.push_back({str(field(e, "name", key), key), str(field(e, a, key), key), str(field(e, b, key), key)});
  return out;
}

void read_compositions(const Json& j, DoubleCat& d, bool via_builder, DoubleCatBuilder* b) {
  Index hi = index_names(d.hmor_names, "hmor");
  Index vi = index_names(d.vmor_names, "vmor");
  Index si = index_names(d.sq_names, "square");
  auto each = [&](const char* key, const Index& idx, const char* what, auto&& set) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_array()) fail(ParseErrorKind::Schema, std::string(key) + ": expected an array");
    for (const auto& e : j.at(key)) {
      auto [x, y, z] = triple(e, key);
      set(resolve(idx, x, what), resolve(idx, y, what), resolve(idx, z, what));
    }
  };
  const std::size_t nh = d.n_hmor(), nv = d.n_vmor(), ns = d.n_sq();
  if (via_builder) {
    each("hcomp", hi, "hmor", [&](int g, int f, int h) { b->set_hcomp(g, f, h); });
    each("vcomp", vi, "vmor", [&](int g, int f, int h) { b->set_vcomp(g, f, h); });
    each("hcomp_sq", si, "square", [&](int g, int f, int h) { b->set_hcomp_sq(g, f, h); });
    each("vcomp_sq", si, "square", [&](int g, int f, int h) { b->set_vcomp_sq(g, f, h); });
  } else {
    each("hcomp", hi, "hmor", [&](int g, int f, int h) { d.hcomp[g * nh + f] = h; });
    each("vcomp", vi, "vmor", [&](int g, int f, int h) { d.vcomp[g * nv + f] = h; });
    each("hcomp_sq", si, "square", [&](int g, int f, int h) { d.hcomp_sq[g * ns + f] = h; });
    each("vcomp_sq", si, "square", [&](int g, int f, int h) { d.vcomp_sq[g * ns + f] = h; });
  }
}

// Two layouts: the full table form written by serialize(), and a generator form
// (no "hid" key) in which identity cells and unit composites are implied.
DblRef dbl_from(const Json& j) {
  check_header(j, "doublecat");
  auto objs = str_list(field(j, "objects", "doublecat"), "objects");
  auto hm = edges(j, "hmors", "src", "tgt");
  auto vm = edges(j, "vmors", "src", "tgt");
  std::vector<std::array<std::string, 5>> sqs;
  if (j.contains("squares")) {
    if (!j.at("squares").is_array()) fail(ParseErrorKind::Schema, "squares: expected an array");
    for (const auto& s : j.at("squares"))
      sqs.push_back({str(field(s, "name", "square"), "square"), str(field(s, "left", "square"), "square"),
                     str(field(s, "top", "square"), "square"), str(field(s, "bottom", "square"), "square"),
                     str(field(s, "right", "square"), "square")});
  }
  if (!j.contains("hid")) {
    DoubleCatBuilder b;
    for (const auto& o : objs) b.object(o);
    Index oi = index_names(objs, "object");
    for (const auto& e : hm) b.hmor(e.name, resolve(oi, e.a, "object"), resolve(oi, e.b, "object"));
    for (const auto& e : vm) b.vmor(e.name, resolve(oi, e.a, "object"), resolve(oi, e.b, "object"));
    {
      Index hi = index_names(b.peek().hmor_names, "hmor");
      Index vi = index_names(b.peek().vmor_names, "vmor");
      for (const auto& s : sqs)
        b.square(s[0], resolve(vi, s[1], "vmor"), resolve(hi, s[2], "hmor"), resolve(hi, s[3], "hmor"),
                 resolve(vi, s[4], "vmor"));
    }
    DoubleCat tmp = b.peek();
    read_compositions(j, tmp, true, &b);
    auto d = std::make_shared<DoubleCat>(b.build());
    require_valid(validate_double_category(*d), "double category");
    return d;
  }
  auto d = std::make_shared<DoubleCat>();
  d->obj_names = objs;
  Index oi = index_names(objs, "object");
  for (const auto& e : hm) {
    d->hmor_names.push_back(e.name);
    d->hsrc.push_back(resolve(oi, e.a, "object"));
    d->htgt.push_back(resolve(oi, e.b, "object"));
  }
  for (const auto& e : vm) {
    d->vmor_names.push_back(e.name);
    d->vsrc.push_back(resolve(oi, e.a, "object"));
    d->vtgt.push_back(resolve(oi, e.b, "object"));
  }
  Index hi = index_names(d->hmor_names, "hmor");
  Index vi = index_names(d->vmor_names, "vmor");
  for (const auto& s : sqs) {
    d->sq_names.push_back(s[0]);
    d->sq_left.push_back(resolve(vi, s[1], "vmor"));
    d->sq_top.push_back(resolve(hi, s[2], "hmor"));
    d->sq_bot.push_back(resolve(hi, s[3], "hmor"));
    d->sq_right.push_back(resolve(vi, s[4], "vmor"));
  }
  Index si = index_names(d->sq_names, "square");
  auto ids = [&](const char* key, const Index& idx, const char* what, std::size_t n) {
    auto names = str_list(field(j, key, "doublecat"), key);
    if (names.size() != n) fail(ParseErrorKind::Schema, std::string(key) + ": wrong length");
    std::vector<int> out;
    for (const auto& nm : names) out.push_back(resolve(idx, nm, what));
    return out;
  };
  d->hid = ids("hid", hi, "hmor", objs.size());
  d->vid = ids("vid", vi, "vmor", objs.size());
  d->hid_sq = ids("hid_sq", si, "square", d->vmor_names.size());
  d->vid_sq = ids("vid_sq", si, "square", d->hmor_names.size());
  // boundary sanity before the unit tables index through these
  for (int x = 0; x < d->n_obj(); ++x)
    if (d->hsrc[d->hid[x]] != x || d->vsrc[d->vid[x]] != x)
      fail(ParseErrorKind::Validation, "identity of " + objs[x] + " has the wrong boundary");
  for (int u = 0; u < d->n_vmor(); ++u)
    if (d->sq_left[d->hid_sq[u]] != u || d->sq_right[d->hid_sq[u]] != u)
      fail(ParseErrorKind::Validation, "identity square of " + d->vmor_names[u] + " has the wrong boundary");
  for (int f = 0; f < d->n_hmor(); ++f)
    if (d->sq_top[d->vid_sq[f]] != f || d->sq_bot[d->vid_sq[f]] != f)
      fail(ParseErrorKind::Validation, "identity square of " + d->hmor_names[f] + " has the wrong boundary");
  d->reset_tables();
  fill_units(*d);
  read_compositions(j, *d, false, nullptr);
  require_valid(validate_double_category(*d), "double category");
  return d;
}

// ---------- presheaves ----------

Json prof_json(const Profunctor& p) {
  Json j;
  if (p.identity) {
    j["identity"] = true;
    return j;
  }
  index_names(p.elem_names, "element");
  Json el = Json::array();
  for (int e = 0; e < p.n_elem(); ++e)
    el.push_back({{"name", p.elem_names[e]}, {"x", p.src->obj_names[p.elem_x[e]]}, {"y", p.tgt->obj_names[p.elem_y[e]]}});
  j["elements"] = el;
  Json l = Json::array(), r = Json::array();
  for (int e = 0; e < p.n_elem(); ++e) {
    for (int f = 0; f < p.src->n_mor(); ++f)
      if (int t = p.left(f, e); t >= 0) l.push_back({p.src->mor_names[f], p.elem_names[e], p.elem_names[t]});
    for (int f = 0; f < p.tgt->n_mor(); ++f)
      if (int t = p.right(f, e); t >= 0) r.push_back({p.tgt->mor_names[f], p.elem_names[e], p.elem_names[t]});
  }
  j["left"] = l;
  j["right"] = r;
  return j;
}

ProfRef prof_from(const Json& j, const CatRef& s, const CatRef& t, const std::string& ctx) {
  if (j.contains("identity") && j.at("identity").is_boolean() && j.at("identity").get<bool>()) {
    if (!same_cat(s, t)) fail(ParseErrorKind::Validation, ctx + ": identity profunctor between different categories");
    return identity_profunctor(s);
  }
  Index so = index_names(s->obj_names, "object"), to = index_names(t->obj_names, "object");
  Index sm = index_names(s->mor_names, "morphism"), tm = index_names(t->mor_names, "morphism");
  std::vector<std::string> names;
  std::vector<int> ex, ey;
  const Json& el = field(j, "elements", ctx);
  if (!el.is_array()) fail(ParseErrorKind::Schema, ctx + ": elements must be an array");
  for (const auto& e : el) {
    names.push_back(str(field(e, "name", ctx), ctx));
    ex.push_back(resolve(so, str(field(e, "x", ctx), ctx), "object"));
    ey.push_back(resolve(to, str(field(e, "y", ctx), ctx), "object"));
  }
  Index ei = index_names(names, "element");
  Profunctor p = profunctor_shell(s, t, std::move(names), std::move(ex), std::move(ey));
  const std::size_t n = p.elem_names.size();
  for (const char* side : {"left", "right"}) {
    if (!j.contains(side)) continue;
    const bool left = side[0] == 'l';
    for (const auto& a : j.at(side)) {
      auto [f, e, r] = triple(a, ctx);
      int fi = resolve(left ? sm : tm, f, "morphism");
      (left ? p.lact : p.ract)[fi * n + resolve(ei, e, "element")] = resolve(ei, r, "element");
    }
  }
  return std::make_shared<Profunctor>(std::move(p));
}

Json psh_json(const LaxDoublePresheaf& X) {
  const DoubleCat& d = *X.base;
  Json j;
  j["kind"] = "presheaf";
  j["version"] = kFormatVersion;
  j["base"] = dbl_json(d);
  Json obj = Json::array(), hm = Json::array(), vm = Json::array(), sq = Json::array(), mu = Json::array();
  for (int x = 0; x < d.n_obj(); ++x) obj.push_back({{"at", d.obj_names[x]}, {"category", cat_json(*X.obj[x])}});
  for (int f = 0; f < d.n_hmor(); ++f) {
    const FinFunctor& F = *X.hmor[f];
    hm.push_back({{"at", d.hmor_names[f]},
                  {"obj", write_map(F.obj_map, F.source->obj_names, F.target->obj_names)},
                  {"mor", write_map(F.mor_map, F.source->mor_names, F.target->mor_names)}});
  }
  for (int u = 0; u < d.n_vmor(); ++u) {
    Json p = prof_json(*X.vmor[u]);
    Json e = {{"at", d.vmor_names[u]}};
    e.update(p);
    vm.push_back(e);
  }
  for (int a = 0; a < d.n_sq(); ++a) {
    const ProfMorphism& m = *X.sq[a];
    sq.push_back({{"at", d.sq_names[a]}, {"map", write_map(m.map, m.source->elem_names, m.target->elem_names)}});
  }
  for (int u = 0; u < d.n_vmor(); ++u)
    for (int up = 0; up < d.n_vmor(); ++up) {
      if (d.vtgt[u] != d.vsrc[up] || d.is_vid(u) || d.is_vid(up)) continue;
      const Profunctor& U = *X.vmor[u];
      const Profunctor& Up = *X.vmor[up];
      const Profunctor& W = *X.vmor[d.vc(up, u)];
      Json m = Json::array();
      for (int ue = 0; ue < U.n_elem(); ++ue)
        for (int z = 0; z < Up.tgt->n_obj(); ++z)
          for (int ve : Up.at(U.elem_y[ue], z))
            m.push_back({Up.elem_names[ve], U.elem_names[ue], W.elem_names.at(X.mu_apply(u, up, ve, ue))});
      mu.push_back({{"at", {d.vmor_names[u], d.vmor_names[up]}}, {"map", m}});
    }
  j["obj"] = obj;
  j["hmor"] = hm;
  j["vmor"] = vm;
  j["sq"] = sq;
  j["mu"] = mu;
  return j;
}

// Entries of an "at"-keyed array, ordered by the base cell index.
std::vector<const Json*> by_cell(const Json& j, const char* key, const Index& idx, std::size_t n, const char* what) {
  std::vector<const Json*> out(n, nullptr);
  const Json& arr = field(j, key, "presheaf");
  if (!arr.is_array()) fail(ParseErrorKind::Schema, std::string(key) + ": expected an array");
  for (const auto& e : arr) {
    int i = resolve(idx, str(field(e, "at", key), key), what);
    if (out[i]) fail(ParseErrorKind::Schema, std::string(key) + ": duplicate entry");
    out[i] = &e;
  }
  for (const auto* p : out)
    if (!p) fail(ParseErrorKind::Schema, std::string(key) + ": missing entry");
  return out;
}

FunctorRef functor_from(const Json& j, const CatRef& s, const CatRef& t, const std::string& ctx) {
  auto F = std::make_shared<FinFunctor>();
  F->source = s;
  F->target = t;
  F->obj_map = read_map(field(j, "obj", ctx), index_names(s->obj_names, "object"), s->n_obj(),
                        index_names(t->obj_names, "object"), ctx);
  F->mor_map = read_map(field(j, "mor", ctx), index_names(s->mor_names, "morphism"), s->n_mor(),
                        index_names(t->mor_names, "morphism"), ctx);
  return F;
}

PshRef psh_from(const Json& j) {
  check_header(j, "presheaf");
  DblRef base = dbl_from(field(j, "base", "presheaf"));
  const DoubleCat& d = *base;
  Index oi = index_names(d.obj_names, "object"), hi = index_names(d.hmor_names, "hmor"),
        vi = index_names(d.vmor_names, "vmor"), si = index_names(d.sq_names, "square");
  auto X = std::make_shared<LaxDoublePresheaf>();
  X->base = base;
  for (const Json* e : by_cell(j, "obj", oi, d.n_obj(), "object")) X->obj.push_back(cat_from(field(*e, "category", "obj")));
  auto hs = by_cell(j, "hmor", hi, d.n_hmor(), "hmor");
  for (int f = 0; f < d.n_hmor(); ++f)
    X->hmor.push_back(functor_from(*hs[f], X->obj[d.htgt[f]], X->obj[d.hsrc[f]], "X(" + d.hmor_names[f] + ")"));
  auto vs = by_cell(j, "vmor", vi, d.n_vmor(), "vmor");
  for (int u = 0; u < d.n_vmor(); ++u)
    X->vmor.push_back(prof_from(*vs[u], X->obj[d.vsrc[u]], X->obj[d.vtgt[u]], "X(" + d.vmor_names[u] + ")"));
  auto ss = by_cell(j, "sq", si, d.n_sq(), "square");
  for (int a = 0; a < d.n_sq(); ++a) {
    auto m = std::make_shared<ProfMorphism>();
    m->source = X->vmor[d.sq_right[a]];
    m->target = X->vmor[d.sq_left[a]];
    m->F = X->hmor[d.sq_top[a]];
    m->Fp = X->hmor[d.sq_bot[a]];
    m->map = read_map(field(*ss[a], "map", "sq"), index_names(m->source->elem_names, "element"), m->source->n_elem(),
                      index_names(m->target->elem_names, "element"), "X(" + d.sq_names[a] + ")");
    X->sq.push_back(m);
  }
  // μ: identity at pairs with a vertical identity, read from the document elsewhere
  const int nv = d.n_vmor();
  std::vector<const Json*> given(static_cast<std::size_t>(nv) * nv, nullptr);
  if (j.contains("mu")) {
    for (const auto& e : j.at("mu")) {
      const Json& at = field(e, "at", "mu");
      if (!at.is_array() || at.size() != 2) fail(ParseErrorKind::Schema, "mu: 'at' must be [u, u']");
      int u = resolve(vi, str(at[0], "mu"), "vmor"), up = resolve(vi, str(at[1], "mu"), "vmor");
      given[static_cast<std::size_t>(u) * nv + up] = &e;
    }
  }
  X->mu.assign(static_cast<std::size_t>(nv) * nv, std::nullopt);
  for (int u = 0; u < nv; ++u)
    for (int up = 0; up < nv; ++up) {
      const Json* e = given[static_cast<std::size_t>(u) * nv + up];
      if (d.vtgt[u] != d.vsrc[up]) {
        if (e) fail(ParseErrorKind::Schema, "mu given at a non-composable pair");
        continue;
      }
      MuEntry m;
      m.comp = compose(X->vmor[u], X->vmor[up]);
      const int nc = m.comp->result->n_elem();
      if (d.is_vid(u) || d.is_vid(up)) {
        for (int c = 0; c < nc; ++c) m.map.push_back(c);
      } else {
        m.map.assign(nc, -1);
        const std::string ctx = "μ(" + d.vmor_names[u] + "," + d.vmor_names[up] + ")";
        const Profunctor& W = *X->vmor[d.vc(up, u)];
        Index ue_i = index_names(X->vmor[u]->elem_names, "element");
        Index ve_i = index_names(X->vmor[up]->elem_names, "element");
        Index w_i = index_names(W.elem_names, "element");
        if (e)
          for (const auto& t : field(*e, "map", ctx)) {
            auto [ve, ue, w] = triple(t, ctx);
            int c = m.comp->class_of(resolve(ve_i, ve, "element"), resolve(ue_i, ue, "element"));
            if (c < 0) fail(ParseErrorKind::Schema, ctx + ": [" + ve + "," + ue + "] is not a composable pair");
            int wi = resolve(w_i, w, "element");
            if (m.map[c] >= 0 && m.map[c] != wi)
              fail(ParseErrorKind::Validation, ctx + ": not constant on the class of [" + ve + "," + ue + "]");
            m.map[c] = wi;
          }
        for (int c = 0; c < nc; ++c)
          if (m.map[c] < 0) fail(ParseErrorKind::Schema, ctx + ": no value on class " + m.comp->result->elem_names[c]);
      }
      X->mu[static_cast<std::size_t>(u) * nv + up] = std::move(m);
    }
  require_valid(validate_presheaf(*X), "presheaf");
  return X;
}

// ---------- functors and transformations ----------

Json dfun_json(const DoubleFunctor& F, bool as_dfib) {
  const DoubleCat& a = *F.source;
  const DoubleCat& b = *F.target;
  Json j;
  j["kind"] = as_dfib ? "dfib" : "functor";
  j["version"] = kFormatVersion;
  j["source"] = dbl_json(a);
  j["target"] = dbl_json(b);
  j["obj"] = write_map(F.obj, a.obj_names, b.obj_names);
  j["hmor"] = write_map(F.hmor, a.hmor_names, b.hmor_names);
  j["vmor"] = write_map(F.vmor, a.vmor_names, b.vmor_names);
  j["sq"] = write_map(F.sq, a.sq_names, b.sq_names);
  return j;
}

DFunRef dfun_from(const Json& j) {
  auto F = std::make_shared<DoubleFunctor>();
  F->source = dbl_from(field(j, "source", "functor"));
  F->target = dbl_from(field(j, "target", "functor"));
  const DoubleCat& a = *F->source;
  const DoubleCat& b = *F->target;
  F->obj = read_map(field(j, "obj", "functor"), index_names(a.obj_names, "object"), a.n_obj(),
                    index_names(b.obj_names, "object"), "functor obj");
  F->hmor = read_map(field(j, "hmor", "functor"), index_names(a.hmor_names, "hmor"), a.n_hmor(),
                     index_names(b.hmor_names, "hmor"), "functor hmor");
  F->vmor = read_map(field(j, "vmor", "functor"), index_names(a.vmor_names, "vmor"), a.n_vmor(),
                     index_names(b.vmor_names, "vmor"), "functor vmor");
  F->sq = read_map(field(j, "sq", "functor"), index_names(a.sq_names, "square"), a.n_sq(),
                   index_names(b.sq_names, "square"), "functor sq");
  require_valid(validate_double_functor(*F), "double functor");
  return F;
}

Json htrans_json(const HorizontalTransf& t) {
  const DoubleCat& d = *t.source->base;
  Json j;
  j["kind"] = "transformation";
  j["version"] = kFormatVersion;
  j["source"] = psh_json(*t.source);
  j["target"] = psh_json(*t.target);
  Json obj = Json::array(), vm = Json::array();
  for (int x = 0; x < d.n_obj(); ++x) {
    const FinFunctor& F = *t.obj[x];
    obj.push_back({{"at", d.obj_names[x]},
                   {"obj", write_map(F.obj_map, F.source->obj_names, F.target->obj_names)},
                   {"mor", write_map(F.mor_map, F.source->mor_names, F.target->mor_names)}});
  }
  for (int u = 0; u < d.n_vmor(); ++u) {
    const ProfMorphism& m = *t.vmor[u];
    vm.push_back({{"at", d.vmor_names[u]}, {"map", write_map(m.map, m.source->elem_names, m.target->elem_names)}});
  }
  j["obj"] = obj;
  j["vmor"] = vm;
  return j;
}

HTransRef htrans_from(const Json& j) {
  auto t = std::make_shared<HorizontalTransf>();
  t->source = psh_from(field(j, "source", "transformation"));
  t->target = psh_from(field(j, "target", "transformation"));
  const DoubleCat& d = *t->source->base;
  if (!(d == *t->target->base)) fail(ParseErrorKind::Validation, "transformation: presheaves over different bases");
  Index oi = index_names(d.obj_names, "object"), vi = index_names(d.vmor_names, "vmor");
  auto os = by_cell(j, "obj", oi, d.n_obj(), "object");
  for (int x = 0; x < d.n_obj(); ++x)
    t->obj.push_back(functor_from(*os[x], t->source->obj[x], t->target->obj[x], "F_" + d.obj_names[x]));
  auto vs = by_cell(j, "vmor", vi, d.n_vmor(), "vmor");
  for (int u = 0; u < d.n_vmor(); ++u) {
    auto m = std::make_shared<ProfMorphism>();
    m->source = t->source->vmor[u];
    m->target = t->target->vmor[u];
    m->F = t->obj[d.vsrc[u]];
    m->Fp = t->obj[d.vtgt[u]];
    m->map = read_map(field(*vs[u], "map", "vmor"), index_names(m->source->elem_names, "element"), m->source->n_elem(),
                      index_names(m->target->elem_names, "element"), "F_" + d.vmor_names[u]);
    t->vmor.push_back(m);
  }
  require_valid(validate_horizontal_transformation(*t), "horizontal transformation");
  return t;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

Document parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ParseErrorKind::Syntax, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  Document doc;
  doc.kind = str(field(j, "kind", "document"), "kind");
  if (!j.contains("version") || !j.at("version").is_number_integer())
    fail(ParseErrorKind::Schema, "document: missing integer 'version'");
  doc.version = j.at("version").get<int>();
  try {
    if (doc.kind == "category") {
      doc.category = cat_from(j);
    } else if (doc.kind == "doublecat") {
      doc.doublecat = dbl_from(j);
    } else if (doc.kind == "presheaf") {
      doc.presheaf = psh_from(j);
    } else if (doc.kind == "functor" || doc.kind == "dfib") {
      check_header(j, doc.kind);
      doc.functor = dfun_from(j);
      if (doc.kind == "dfib") {
        auto res = check_dfib(doc.functor);
        if (!res.fib) fail(ParseErrorKind::Validation, "not a discrete double fibration:\n" + res.failure.str());
        doc.dfib = std::move(res.fib);
      }
    } else if (doc.kind == "transformation") {
      check_header(j, "transformation");
      doc.transformation = htrans_from(j);
    } else {
      fail(ParseErrorKind::Schema, "unknown document kind '" + doc.kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ParseErrorKind::Schema, e.what());
  }
  return doc;
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

std::string serialize(const FinCat& c) { return dump(cat_json(c)); }
std::string serialize(const DoubleCat& d) { return dump(dbl_json(d)); }
std::string serialize(const LaxDoublePresheaf& x) { return dump(psh_json(x)); }
std::string serialize(const DoubleFunctor& f, bool as_dfib) { return dump(dfun_json(f, as_dfib)); }
std::string serialize(const HorizontalTransf& t) { return dump(htrans_json(t)); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace dc
