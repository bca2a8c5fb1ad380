#include "cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "doublecat/fixtures.hpp"
#include "doublecat/groth.hpp"
#include "doublecat/io.hpp"
#include "doublecat/random.hpp"

namespace dcat {

namespace {

using namespace dc;

// One line per verified law; `--format machine` switches to JSON lines.
class Reporter {
 public:
  Reporter(std::ostream& out, bool machine) : out_(out), machine_(machine) {}

  void check(const std::string& law, bool ok, const std::string& witness = {}) {
    if (!ok) ++failed_;
    if (machine_) {
      nlohmann::ordered_json j{{"type", "check"}, {"law", law}, {"status", ok ? "PASS" : "FAIL"}};
      if (!ok && !witness.empty()) j["witness"] = witness;
      out_ << j.dump() << "\n";
      return;
    }
    out_ << (ok ? "PASS " : "FAIL ") << law << "\n";
    if (!ok && !witness.empty()) {
      std::istringstream in(witness);
      for (std::string line; std::getline(in, line);)
        if (!line.empty()) out_ << "  " << line << "\n";
    }
  }

  void check(const std::string& law, const ValidationReport& r) { check(law, r.ok(), r.str()); }

  void info(const std::string& key, const std::string& value) {
    if (machine_)
      out_ << nlohmann::ordered_json{{"type", "info"}, {"key", key}, {"value", value}}.dump() << "\n";
    else
      out_ << "  " << key << ": " << value << "\n";
  }

  int failed() const { return failed_; }

 private:
  std::ostream& out_;
  bool machine_;
  int failed_ = 0;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A path, or "fixture:NAME" for a built-in double category.
Document load_input(const std::string& spec) {
  constexpr std::string_view prefix = "fixture:";
  if (spec.rfind(prefix, 0) == 0) {
    Document doc;
    doc.kind = "doublecat";
    try {
      doc.doublecat = fixture_by_name(spec.substr(prefix.size()));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    return doc;
  }
  return load_document(spec);
}

DblRef base_of(const Document& doc) {
  if (doc.doublecat) return doc.doublecat;
  if (doc.presheaf) return doc.presheaf->base;
  if (doc.dfib) return doc.functor->target;
  if (doc.transformation) return doc.transformation->source->base;
  throw InputError("a " + doc.kind + " document has no base double category");
}

int object_named(const DoubleCat& d, const std::string& name) {
  int x = d.find_obj(name);
  if (x < 0) throw InputError("no object named '" + name + "'");
  return x;
}

std::vector<int> objects_at(const DoubleCat& d, const std::string& at) {
  if (!at.empty()) return {object_named(d, at)};
  std::vector<int> all(d.n_obj());
  for (int x = 0; x < d.n_obj(); ++x) all[x] = x;
  return all;
}

struct NamedPsh {
  std::string name;
  PshRef psh;
};

// Presheaves to exercise: the document's own, or every representable plus ∂∂ of the
// identity fibration when given a bare double category.
std::vector<NamedPsh> presheaves_of(const Document& doc) {
  if (doc.presheaf) return {{"X", doc.presheaf}};
  if (doc.dfib) return {{"ddel(P)", ddel(*doc.dfib).psh}};
  if (!doc.doublecat) throw InputError("expected a doublecat, presheaf or dfib document, got " + doc.kind);
  const DblRef& d = doc.doublecat;
  std::vector<NamedPsh> out;
  for (int x = 0; x < d->n_obj(); ++x) out.push_back({"C(-," + d->obj_names[x] + ")", representable(d, x).psh});
  out.push_back({"ddel(1)", ddel(*check_dfib(identity_double_functor(d)).fib).psh});
  return out;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file(path, text);
}

std::string sizes(const DoubleCat& d) {
  return std::to_string(d.n_obj()) + " objects, " + std::to_string(d.n_hmor()) + " hmors, " +
         std::to_string(d.n_vmor()) + " vmors, " + std::to_string(d.n_sq()) + " squares";
}

struct Options {
  std::string input, out, at, format = "text", kind = "presheaf";
  std::uint64_t seed = 0;
  int max_objects = 3, count = 20;
  long budget = kDefaultBudget;
  RandomSpec spec() const {
    RandomSpec s;
    s.seed = seed;
    s.max_objects = max_objects;
    return s;
  }
};

// ---- subcommands ----

void cmd_validate(const Options& o, Reporter& r) {
  Document doc;
  try {
    doc = load_input(o.input);
  } catch (const ParseError& e) {
    if (e.kind != ParseErrorKind::Validation) throw;
    r.check("load", false, e.what());
    return;
  }
  r.info("kind", doc.kind);
  if (doc.category) r.check("category", validate_category(*doc.category));
  if (doc.doublecat) {
    r.info("size", sizes(*doc.doublecat));
    r.check("double category", validate_double_category(*doc.doublecat));
  }
  if (doc.presheaf) {
    r.check("base double category", validate_double_category(*doc.presheaf->base));
    r.check("lax double presheaf", validate_presheaf(*doc.presheaf));
  }
  if (doc.functor) r.check("double functor", validate_double_functor(*doc.functor));
  if (doc.dfib) r.check("discrete double fibration", validate_dfib(*doc.dfib));
  if (doc.transformation) r.check("horizontal transformation", validate_horizontal_transformation(*doc.transformation));
}

void cmd_groth(const Options& o, Reporter& r, std::ostream& out) {
  Document doc = load_input(o.input);
  if (!doc.presheaf) throw InputError("groth expects a presheaf document");
  GrothResult g = groth(doc.presheaf);
  r.info("total", sizes(*g.total));
  r.check("total is a strict double category", validate_double_category(*g.total));
  auto fib = check_dfib(g.projection.p);
  r.check("projection is a discrete double fibration", fib.failure);
  r.check("projection lift tables", validate_dfib(g.projection));
  if (!o.out.empty()) emit(out, o.out, serialize(*g.projection.p, true));
}

void cmd_ddel(const Options& o, Reporter& r, std::ostream& out) {
  Document doc = load_input(o.input);
  std::optional<DiscreteDoubleFibration> d = doc.dfib;
  if (!d && doc.doublecat) d = check_dfib(identity_double_functor(doc.doublecat)).fib;
  if (!d) throw InputError("ddel expects a dfib or doublecat document");
  DdelResult dd = ddel(*d);
  const DoubleCat& C = d->base();
  for (int x = 0; x < C.n_obj(); ++x)
    r.info("fiber " + C.obj_names[x], std::to_string(dd.fibers.obj[x].cat->n_obj()) + " objects, " +
                                          std::to_string(dd.fibers.obj[x].cat->n_mor()) + " morphisms");
  for (int u = 0; u < C.n_vmor(); ++u)
    r.check("P_" + C.vmor_names[u] + " is a two-sided discrete fibration",
            check_two_sided_fibration(dd.fibers.vmor[u].w.p, dd.fibers.vmor[u].w.q).failure);
  r.check("ddel(P) is a lax double presheaf", validate_presheaf(*dd.psh));
  if (!o.out.empty()) emit(out, o.out, serialize(*dd.psh));
}

void cmd_slice(const Options& o, Reporter& r, std::ostream& out) {
  Document doc = load_input(o.input);
  if (!doc.doublecat) throw InputError("slice expects a doublecat document");
  const DblRef& d = doc.doublecat;
  std::vector<int> at = objects_at(*d, o.at);
  if (!o.out.empty() && at.size() != 1) throw InputError("--out needs a single --at object");
  for (int xh : at) {
    const std::string tag = "C/" + d->obj_names[xh];
    SliceResult s = slice(d, xh);
    r.info(tag, sizes(*s.total));
    r.check(tag + " is a double category", validate_double_category(*s.total));
    r.check(tag + " projection is a discrete double fibration", check_dfib(s.proj).failure);
    const std::string top = "(" + d->obj_names[xh] + "," + d->hmor_names[d->hid[xh]] + ")";
    r.check(tag + " has " + top + " double terminal", double_terminal_at(*s.total, s.total->find_obj(top)).has_value());
    if (!o.out.empty()) emit(out, o.out, serialize(*s.proj, true));
  }
}

void cmd_terminal(const Options& o, Reporter& r) {
  Document doc = load_input(o.input);
  DblRef d = doc.doublecat ? doc.doublecat : doc.functor ? doc.functor->source : nullptr;
  if (!d) throw InputError("terminal expects a doublecat, functor or dfib document");
  auto ts = double_terminal_objects(*d);
  r.info("double terminal objects", std::to_string(ts.size()));
  for (const auto& t : ts) {
    r.info("terminal", d->obj_names[t.obj]);
    bool ok = true;
    for (int x = 0; x < d->n_obj(); ++x) ok = ok && d->hsrc[t.t[x]] == x && d->htgt[t.t[x]] == t.obj;
    for (int u = 0; u < d->n_vmor(); ++u)
      ok = ok && d->sq_left[t.tau[u]] == u && d->sq_right[t.tau[u]] == d->vid[t.obj];
    r.check("witness boundaries at " + d->obj_names[t.obj], ok);
  }
}

void cmd_yoneda(const Options& o, Reporter& r) {
  Document doc = load_input(o.input);
  const DblRef d = base_of(doc);
  for (const auto& [pname, X] : presheaves_of(doc)) {
    for (int xh : objects_at(*d, o.at)) {
      const std::string tag = pname + " at " + d->obj_names[xh];
      Representable rep = representable(d, xh);
      const FinCat& Xx = *X->obj[xh];
      auto ts = enumerate_transformations(rep.psh, X, o.budget);
      r.check(tag + ": |transformations| = |objects| = " + std::to_string(Xx.n_obj()),
              static_cast<int>(ts.size()) == Xx.n_obj(), std::to_string(ts.size()) + " transformations");
      std::vector<HTransRef> phi;
      bool psi_phi = true, phi_valid = true;
      for (int a = 0; a < Xx.n_obj(); ++a) {
        phi.push_back(yoneda_phi(rep, X, a));
        phi_valid = phi_valid && validate_horizontal_transformation(*phi.back()).ok();
        psi_phi = psi_phi && yoneda_psi(rep, *phi.back()) == a;
      }
      r.check(tag + ": Phi(a) valid", phi_valid);
      r.check(tag + ": Psi Phi = 1 on objects", psi_phi);
      bool phi_psi = true;
      for (const auto& t : ts) {
        int a = yoneda_psi(rep, *t);
        phi_psi = phi_psi && a >= 0 && transformations_equal(*yoneda_phi(rep, X, a), *t);
      }
      r.check(tag + ": Phi Psi = 1 on transformations", phi_psi);
      bool mods = true;
      std::string witness;
      long budget = o.budget;
      for (int m = 0; m < Xx.n_mor(); ++m) {
        const int a = Xx.src[m], b = Xx.tgt[m];
        ModRef nu = yoneda_phi(rep, X, phi[a], phi[b], m);
        if (!validate_modification(*nu).ok() || yoneda_psi(rep, *nu) != m) {
          mods = false;
          witness += "morphism " + Xx.mor_names[m] + "\n";
        }
      }
      for (int a = 0; a < Xx.n_obj() && mods; ++a)
        for (int b = 0; b < Xx.n_obj(); ++b) {
          auto ms = enumerate_modifications(phi[a], phi[b], budget);
          if (ms.size() != Xx.hom(a, b).size()) {
            mods = false;
            witness += "hom(" + Xx.obj_names[a] + "," + Xx.obj_names[b] + "): " + std::to_string(ms.size()) +
                       " modifications\n";
          }
          for (const auto& nu : ms) {
            int m = yoneda_psi(rep, *nu);
            if (m < 0 || !modifications_equal(*yoneda_phi(rep, X, phi[a], phi[b], m), *nu)) mods = false;
          }
        }
      r.check(tag + ": Psi/Phi round-trip on morphisms", mods, witness);
    }
  }
}

void cmd_represent(const Options& o, Reporter& r) {
  Document doc = load_input(o.input);
  const DblRef d = base_of(doc);
  for (const auto& [pname, X] : presheaves_of(doc)) {
    RepresentationReport rep = representation_check(X);
    for (const auto& e : rep.entries) {
      const std::string pair = "(" + d->obj_names[e.xh] + "," + X->obj[e.xh]->obj_names[e.a] + ")";
      if (e.is_represented && e.is_double_terminal) r.info(pname, "represented by " + pair);
      r.check(pname + " " + pair + ": flags agree", e.is_represented == e.is_double_terminal,
              std::string("represented=") + (e.is_represented ? "yes" : "no") +
                  " double_terminal=" + (e.is_double_terminal ? "yes" : "no"));
    }
    r.check(pname + ": representation verdict", rep.agree);
  }
}

void eps_checks(const std::string& tag, const PshRef& X, Reporter& r) {
  CounitResult c = counit_epsilon(X);
  r.check(tag + ": projection is a discrete double fibration", check_dfib(c.groth.projection.p).failure);
  r.check(tag + ": epsilon is an invertible transformation", c.checks);
  r.check(tag + ": triangle identities", check_triangle_identities(X));
}

void eta_checks(const std::string& tag, const DiscreteDoubleFibration& d, Reporter& r) {
  UnitResult u = unit_eta(d);
  r.check(tag + ": eta is an isomorphism over the base", u.checks);
  r.check(tag + ": triangle identities", check_triangle_identities(d));
}

void cmd_roundtrip(const Options& o, Reporter& r) {
  Document doc = load_input(o.input);
  if (doc.dfib) {
    eta_checks("P", *doc.dfib, r);
    return;
  }
  for (const auto& [pname, X] : presheaves_of(doc)) eps_checks(pname, X, r);
  if (doc.doublecat) eta_checks("1", *check_dfib(identity_double_functor(doc.doublecat)).fib, r);
}

void cmd_fib_equiv(const Options& o, Reporter& r) {
  Rng rng(o.seed);
  int roundtrip_ok = 0, compose_ok = 0;
  std::string witness;
  for (int i = 0; i < o.count; ++i) {
    CatRef c = random_category(rng, o.max_objects, 2, 0.5, "a");
    CatRef cp = random_category(rng, o.max_objects, 2, 0.5, "b");
    CatRef cpp = random_category(rng, o.max_objects, 2, 0.5, "c");
    ProfRef u = random_profunctor(rng, c, cp);
    ProfRef v = random_profunctor(rng, cp, cpp);
    TwoSidedFibWitness w1 = elements_fibration(u), w2 = elements_fibration(v);
    ProfMorphism back{fib(w1), u, identity_functor(c), identity_functor(cp), {}};
    for (int e = 0; e < u->n_elem(); ++e) back.map.push_back(e);
    if (validate_prof_morphism(back).ok() && is_componentwise_bijection(back))
      ++roundtrip_ok;
    else
      witness += "instance " + std::to_string(i) + ": fib(el(U)) != U\n";
    ValidationReport comp = check_fib_composition(w1, w2);
    if (comp.ok())
      ++compose_ok;
    else
      witness += "instance " + std::to_string(i) + ": " + comp.str();
  }
  r.info("instances", std::to_string(o.count));
  r.check("fib round-trip on " + std::to_string(roundtrip_ok) + "/" + std::to_string(o.count),
          roundtrip_ok == o.count, witness);
  r.check("fib(W2 . W1) ~ fib(W2) . fib(W1) on " + std::to_string(compose_ok) + "/" + std::to_string(o.count),
          compose_ok == o.count, witness);
}

void cmd_gen(const Options& o, Reporter& r, std::ostream& out) {
  RandomSpec spec = o.spec();
  Rng rng(spec.seed);
  std::string text;
  if (o.kind == "category") {
    text = serialize(*random_category(rng, spec.max_objects, spec.max_weight, spec.edge_prob));
  } else {
    DblRef d = random_double_category(rng, spec);
    if (o.kind == "doublecat") {
      text = serialize(*d);
    } else if (o.kind == "presheaf") {
      text = serialize(*random_presheaf(rng, d, spec));
    } else if (o.kind == "dfib") {
      text = serialize(*groth(random_presheaf(rng, d, spec)).projection.p, true);
    } else {
      throw InputError("unknown --kind '" + o.kind + "'");
    }
  }
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
    r.info("wrote", o.out);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite double categories, lax double presheaves and discrete double fibrations", "dcat"};
  app.require_subcommand(1, 1);
  Options o;
  app.add_option("--format", o.format, "text | machine")->check(CLI::IsMember({"text", "machine"}));
  app.fallthrough();

  auto input = [&](CLI::App* sub) { sub->add_option("input", o.input, "file path or fixture:NAME")->required(); };
  auto output = [&](CLI::App* sub) { sub->add_option("-o,--out", o.out, "write the resulting document here"); };
  auto at = [&](CLI::App* sub) { sub->add_option("--at", o.at, "object of the base (default: all)"); };

  auto* validate = app.add_subcommand("validate", "load a document and run its validators");
  input(validate);
  auto* groth_cmd = app.add_subcommand("groth", "double Grothendieck construction of a presheaf");
  input(groth_cmd);
  output(groth_cmd);
  auto* ddel_cmd = app.add_subcommand("ddel", "presheaf of fibers of a discrete double fibration");
  input(ddel_cmd);
  output(ddel_cmd);
  auto* slice_cmd = app.add_subcommand("slice", "slice double category and its projection");
  input(slice_cmd);
  output(slice_cmd);
  at(slice_cmd);
  auto* terminal = app.add_subcommand("terminal", "list double terminal objects");
  input(terminal);
  auto* yoneda = app.add_subcommand("yoneda", "Yoneda count and round-trips by enumeration");
  input(yoneda);
  at(yoneda);
  yoneda->add_option("--budget", o.budget, "enumeration step budget");
  auto* represent = app.add_subcommand("represent", "representation check for every object pair");
  input(represent);
  auto* roundtrip = app.add_subcommand("roundtrip", "unit and counit isomorphisms");
  input(roundtrip);
  auto* fib_equiv = app.add_subcommand("fib-equiv", "fib round-trip and composition on random profunctors");
  fib_equiv->add_option("--seed", o.seed);
  fib_equiv->add_option("--count", o.count)->check(CLI::NonNegativeNumber);
  fib_equiv->add_option("--max-objects", o.max_objects)->check(CLI::Range(0, 6));
  auto* gen = app.add_subcommand("gen", "deterministic random document");
  gen->add_option("--kind", o.kind, "category | doublecat | presheaf | dfib");
  gen->add_option("--seed", o.seed);
  gen->add_option("--max-objects", o.max_objects)->check(CLI::Range(0, 6));
  output(gen);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "dcat: " << e.what() << "\n";
    return kInputError;
  }

  Reporter r(out, o.format == "machine");
  try {
    if (*validate) cmd_validate(o, r);
    else if (*groth_cmd) cmd_groth(o, r, out);
    else if (*ddel_cmd) cmd_ddel(o, r, out);
    else if (*slice_cmd) cmd_slice(o, r, out);
    else if (*terminal) cmd_terminal(o, r);
    else if (*yoneda) cmd_yoneda(o, r);
    else if (*represent) cmd_represent(o, r);
    else if (*roundtrip) cmd_roundtrip(o, r);
    else if (*fib_equiv) cmd_fib_equiv(o, r);
    else if (*gen) cmd_gen(o, r, out);
  } catch (const ParseError& e) {
    err << "dcat: " << to_string(e.kind) << " error: " << e.what() << "\n";
    return kInputError;
  } catch (const IoError& e) {
    err << "dcat: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "dcat: " << e.what() << "\n";
    return kInputError;
  } catch (const BudgetExceeded& e) {
    err << "dcat: " << e.what() << "\n";
    return kInputError;
  } catch (const BoundError& e) {
    err << "dcat: " << e.what() << "\n";
    return kInputError;
  }
  return r.failed() == 0 ? kPass : kCheckFailed;
}

}  // namespace dcat
