// Command-line front end: validation, fibration checks, elements/fibers
// constructions, round trips and corpus generation over JSON documents and
// configured windowed providers.
//
// Exit codes: 0 = all checks passed, 1 = a check failed (counterexample in
// the report), 2 = schema or usage error.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catkit/corpus.hpp"
#include "catkit/dblcat.hpp"
#include "catkit/dblfib.hpp"
#include "catkit/elements.hpp"
#include "catkit/fib.hpp"
#include "catkit/fincat.hpp"
#include "catkit/json_io.hpp"
#include "catkit/report.hpp"
#include "catkit/twocat.hpp"

using namespace catkit;

namespace {

struct Options {
  std::string input;
  std::string window;  // provider parameters (JSON); input is then a kind
  std::string out;
  std::string format = "text";
  long long bound = -1;
  std::uint64_t seed = 0;
  std::string level = "P";  // internal check strength L | P | S
  int jobs = 1;
};

// keeps provider window data alive for the duration of the run
std::vector<std::shared_ptr<void>> keepalive;

dbl::DoubleFunctor provider_functor(const std::string& kind, const json& w) {
  if (kind == "im") {
    auto r = std::make_shared<dbl::ImageResult>(
        dbl::image_functor(w.value("max_set", 2), w.value("max_apex", 4)));
    keepalive.push_back(r);
    return r->im;
  }
  if (kind == "fam") {
    std::string base = w.value("base", "walking_arrow");
    fincat::CatPtr C;
    if (base == "walking_arrow") C = fincat::walking_arrow();
    else if (base == "chain3") C = fincat::chain_category(3);
    else if (base == "terminal") C = fincat::terminal_category();
    else throw SchemaError("unknown family base \"" + base + "\"");
    auto fw = dbl::fam_window(C, w.value("max_index", 2));
    keepalive.push_back(std::make_shared<dbl::FamWindowPtr>(fw));
    return fw->proj;
  }
  throw SchemaError("unknown provider kind \"" + kind + "\" (expected im or fam)");
}

// Resolves the input of a check: a JSON document or a provider kind +
// --window parameters.  Exactly one of the returned handles is populated.
struct CheckInput {
  std::unique_ptr<fincat::Functor> functor;
  std::unique_ptr<fib::ClovenFibration> cloven;
  std::unique_ptr<twocat::TwoFunctor> two_functor;
  std::unique_ptr<dbl::DoubleFunctor> double_functor;
};

CheckInput resolve_input(const Options& opt) {
  CheckInput in;
  if (!opt.window.empty()) {
    json w = json::parse(opt.window, nullptr, true);
    in.double_functor =
        std::make_unique<dbl::DoubleFunctor>(provider_functor(opt.input, w));
    return in;
  }
  json doc = jsonio::load_json(opt.input);
  std::string type = doc.value("type", "");
  if (type == "functor")
    in.functor = std::make_unique<fincat::Functor>(jsonio::functor_from_json(doc));
  else if (type == "cloven_fibration")
    in.cloven = std::make_unique<fib::ClovenFibration>(jsonio::cloven_from_json(doc));
  else if (type == "two_functor")
    in.two_functor =
        std::make_unique<twocat::TwoFunctor>(jsonio::twofunctor_from_json(doc));
  else if (type == "double_functor")
    in.double_functor =
        std::make_unique<dbl::DoubleFunctor>(jsonio::dfunctor_from_json(doc));
  else
    throw SchemaError(opt.input + ": document type \"" + type +
                      "\" is not checkable (expected functor, cloven_fibration, "
                      "two_functor or double_functor)");
  return in;
}

int emit(const Report& r, const Options& opt, const std::string& what) {
  json doc = r.to_json();
  doc["check"] = what;
  if (!opt.out.empty()) jsonio::save_json(opt.out, doc);
  if (opt.format == "json") {
    std::cout << jsonio::dump_canonical(doc) << "\n";
  } else {
    std::cout << what << ": " << doc["status"].get<std::string>();
    if (r.window_certified) std::cout << " (window-certified)";
    if (!r.note.empty()) std::cout << " -- " << r.note;
    std::cout << "\n";
    if (!r.pass && !r.counterexample.is_null())
      std::cout << "counterexample: " << r.counterexample.dump() << "\n";
  }
  return r.pass ? 0 : 1;
}

int cmd_validate(const Options& opt) {
  json doc = jsonio::load_json(opt.input);
  Report r = jsonio::validate_document(doc, opt.bound);
  return emit(r, opt, "validate " + doc.value("type", "?"));
}

int cmd_check(const Options& opt, const std::string& what) {
  CheckInput in = resolve_input(opt);
  Report r;
  std::string label = "check " + what;
  if (what == "fib") {
    if (in.double_functor) r = dblfib::is_double_fibration(*in.double_functor, opt.bound);
    else if (in.cloven) r = fib::is_fibration(in.cloven->p);
    else if (in.functor) r = fib::is_fibration(*in.functor);
    else throw SchemaError("check fib: unsupported input");
  } else if (what == "opfib") {
    if (in.double_functor) r = dblfib::is_double_opfibration(*in.double_functor, opt.bound);
    else if (in.cloven) r = fib::is_opfibration(in.cloven->p);
    else if (in.functor) r = fib::is_opfibration(*in.functor);
    else throw SchemaError("check opfib: unsupported input");
  } else if (what == "split") {
    if (in.double_functor) r = dblfib::is_split_double_fibration(*in.double_functor, opt.bound);
    else if (in.cloven) r = fib::is_split(*in.cloven);
    else throw SchemaError("check split: expected a cloven fibration or double functor");
  } else if (what == "double-fibration") {
    if (!in.double_functor) throw SchemaError("check double-fibration: expected a double functor");
    dblfib::DoubleCleavage cl;
    r = dblfib::is_double_fibration(*in.double_functor, opt.bound, &cl);
  } else if (what == "2fib") {
    if (!in.two_functor) throw SchemaError("check 2fib: expected a two_functor document");
    r = twocat::is_2fibration(*in.two_functor);
  } else if (what == "internal") {
    if (!in.double_functor) throw SchemaError("check internal: expected a double functor");
    dblfib::Flavor fl = opt.level == "L"   ? dblfib::Flavor::lax
                        : opt.level == "S" ? dblfib::Flavor::strict
                                           : dblfib::Flavor::pseudo;
    label += " " + opt.level;
    r = dblfib::internal_fibration_check(*in.double_functor, fl, opt.bound);
  } else {
    throw SchemaError("unknown check \"" + what + "\"");
  }
  return emit(r, opt, label);
}

int cmd_elements(const Options& opt) {
  json doc = jsonio::load_json(opt.input);
  auto F = jsonio::indexed_from_json(doc);
  auto res = elements::elements_construction(F);
  Report r = dbl::validate_double_category(*res.El, opt.bound);
  r.merge(dblfib::is_double_fibration(res.proj, opt.bound));
  if (!opt.out.empty()) {
    json outdoc = jsonio::dfunctor_to_json(res.proj);
    outdoc["report"] = r.to_json();
    jsonio::save_json(opt.out, outdoc);
  }
  Options o2 = opt;
  o2.out.clear();
  return emit(r, o2, "elements");
}

int cmd_fibers(const Options& opt) {
  CheckInput in = resolve_input(opt);
  if (!in.double_functor) throw SchemaError("fibers: expected a double functor");
  dblfib::DoubleCleavage cl;
  Report r = dblfib::is_double_fibration(*in.double_functor, opt.bound, &cl);
  if (!r.pass) return emit(r, opt, "fibers");
  auto fb = elements::fibers_construction(*in.double_functor, cl);
  r.merge(elements::validate_indexed(fb.F, opt.bound));
  if (!opt.out.empty() && fb.F.base->total) {
    jsonio::save_json(opt.out, jsonio::indexed_to_json(fb.F));
    Options o2 = opt;
    o2.out.clear();
    return emit(r, o2, "fibers");
  }
  return emit(r, opt, "fibers");
}

int cmd_roundtrip(const Options& opt) {
  CheckInput in = resolve_input(opt);
  if (!in.double_functor) throw SchemaError("roundtrip: expected a double functor");
  dblfib::DoubleCleavage cl;
  Report r = dblfib::is_double_fibration(*in.double_functor, opt.bound, &cl);
  if (!r.pass) return emit(r, opt, "roundtrip");
  auto fb = elements::fibers_construction(*in.double_functor, cl);
  auto res = elements::elements_construction(fb.F);
  long long bound = opt.bound > 0 ? opt.bound : 2000000;
  Report eq = elements::check_equivalence_over_base(res.proj, *in.double_functor, bound);
  r.merge(eq);
  r.witness = eq.witness;
  return emit(r, opt, "roundtrip");
}

int cmd_quintet(const Options& opt) {
  json doc = jsonio::load_json(opt.input);
  auto P = jsonio::twofunctor_from_json(doc);
  return emit(dblfib::quintet_equiv_test(P), opt, "quintet");
}

int cmd_vhprops(const Options& opt) {
  CheckInput in = resolve_input(opt);
  if (!in.double_functor) throw SchemaError("vhprops: expected a double functor");
  return emit(dblfib::vh_props(*in.double_functor, opt.bound), opt, "vhprops");
}

int cmd_corpus(const Options& opt) {
  std::string dir = opt.out;
  if (dir.empty()) {
    const char* env = std::getenv("CATKIT_OUT_DIR");
    dir = env ? env : "corpus_out";
  }
  auto c = corpus::build_corpus(opt.seed);
  corpus::write_corpus(c, dir);
  json summary{{"seed", c.seed},
               {"dir", dir},
               {"categories", c.categories.size()},
               {"fibrations", c.fibrations.size()},
               {"non_fibrations", c.non_fibrations.size()},
               {"two_functors", c.two_functors.size()},
               {"double_fibrations", c.double_fibrations.size()},
               {"double_non_fibrations", c.double_non_fibrations.size()},
               {"indexed", c.indexed.size()},
               {"cospans", c.cospans.size()},
               {"triangles", c.triangles.size()}};
  std::cout << jsonio::dump_canonical(summary) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite double-category toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool with_input) {
    if (with_input)
      sub->add_option("input", opt.input, "input file or provider kind")->required();
    sub->add_option("--window", opt.window, "provider window parameters (JSON)");
    sub->add_option("--out", opt.out, "write the JSON report/result here");
    sub->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--bound", opt.bound, "search/sampling budget (-1 = exhaustive)");
    sub->add_option("--seed", opt.seed, "corpus seed");
    sub->add_option("--jobs", opt.jobs, "parallel corpus batches (accepted; batches are cheap)");
  };

  auto* v = app.add_subcommand("validate", "structural validation of a document");
  add_common(v, true);
  auto* c = app.add_subcommand("check", "fibration-style checks");
  std::string what;
  c->add_option("what", what,
                "fib | opfib | split | 2fib | double-fibration | internal")
      ->required();
  c->add_option("--level", opt.level, "internal check strength: L, P or S")
      ->check(CLI::IsMember({"L", "P", "S"}));
  add_common(c, true);
  auto* e = app.add_subcommand("elements", "elements double category of indexed data");
  add_common(e, true);
  auto* f = app.add_subcommand("fibers", "indexed data of a double fibration");
  add_common(f, true);
  auto* rt = app.add_subcommand("roundtrip", "elements-of-fibers equivalence over the base");
  add_common(rt, true);
  auto* q = app.add_subcommand("quintet", "2-fibration vs quintet double fibration agreement");
  add_common(q, true);
  auto* vh = app.add_subcommand("vhprops", "one-dimensional shadows of a double fibration");
  add_common(vh, true);
  auto* co = app.add_subcommand("corpus", "generate the deterministic corpus");
  add_common(co, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int code = app.exit(ex);
    return code == 0 ? 0 : 2;
  }

  try {
    if (v->parsed()) return cmd_validate(opt);
    if (c->parsed()) return cmd_check(opt, what);
    if (e->parsed()) return cmd_elements(opt);
    if (f->parsed()) return cmd_fibers(opt);
    if (rt->parsed()) return cmd_roundtrip(opt);
    if (q->parsed()) return cmd_quintet(opt);
    if (vh->parsed()) return cmd_vhprops(opt);
    if (co->parsed()) return cmd_corpus(opt);
  } catch (const SchemaError& ex) {
    std::cerr << "schema error: " << ex.what() << "\n";
    return 2;
  } catch (const PreconditionError& ex) {
    std::cerr << "precondition error: " << ex.what() << "\n";
    return 2;
  } catch (const json::exception& ex) {
    std::cerr << "json error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
