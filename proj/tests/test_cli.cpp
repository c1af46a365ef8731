#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "catkit/corpus.hpp"
#include "catkit/dblfib.hpp"
#include "catkit/elements.hpp"
#include "catkit/json_io.hpp"

using namespace catkit;
namespace fs = std::filesystem;

namespace {

fs::path tmpdir() {
  auto d = fs::temp_directory_path() / "catkit_cli_test";
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(CATKIT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

const corpus::Corpus& corpus0() {
  static corpus::Corpus c = corpus::build_corpus(0);
  return c;
}

}  // namespace

TEST_CASE("save-load round trips are the identity on canonical documents") {
  const auto& c = corpus0();

  auto rt = [](const json& doc, auto from, auto to) {
    json parsed = json::parse(jsonio::dump_canonical(doc));
    return jsonio::dump_canonical(to(from(parsed))) == jsonio::dump_canonical(doc);
  };

  for (auto& e : c.categories)
    CHECK(rt(
        jsonio::cat_to_json(*e.C), [](const json& j) { return jsonio::cat_from_json(j); },
        [](fincat::CatPtr C) { return jsonio::cat_to_json(*C); }));
  for (auto& e : c.fibrations)
    CHECK(rt(
        jsonio::cloven_to_json(e.c),
        [](const json& j) { return jsonio::cloven_from_json(j); },
        [](const fib::ClovenFibration& f) { return jsonio::cloven_to_json(f); }));
  for (auto& e : c.two_functors)
    CHECK(rt(
        jsonio::twofunctor_to_json(e.P),
        [](const json& j) { return jsonio::twofunctor_from_json(j); },
        [](const twocat::TwoFunctor& P) { return jsonio::twofunctor_to_json(P); }));
  for (auto& e : c.double_fibrations)
    CHECK(rt(
        jsonio::dfunctor_to_json(e.P),
        [](const json& j) { return jsonio::dfunctor_from_json(j); },
        [](const dbl::DoubleFunctor& P) { return jsonio::dfunctor_to_json(P); }));
  int done = 0;
  for (auto& e : c.indexed) {
    if (e.windowed_base) continue;
    CHECK(rt(
        jsonio::indexed_to_json(e.F),
        [](const json& j) { return jsonio::indexed_from_json(j); },
        [](const elements::IndexedDoubleCategory& F) { return jsonio::indexed_to_json(F); }));
    ++done;
  }
  CHECK(done >= 10);
}

TEST_CASE("loaders reject malformed documents with the offending path") {
  json good = jsonio::cat_to_json(*fincat::chain_category(3));

  SUBCASE("duplicate compose entry") {
    json bad = good;
    bad["compose"].push_back(bad["compose"][0]);
    CHECK_THROWS_WITH_AS(jsonio::cat_from_json(bad),
                         doctest::Contains("compose["), SchemaError);
  }
  SUBCASE("composite endpoints mismatch") {
    json bad = good;
    bad["compose"][0][2] = bad["compose"][0][0];
    CHECK_THROWS_AS(jsonio::cat_from_json(bad), SchemaError);
  }
  SUBCASE("arrow id out of order") {
    json bad = good;
    bad["arrows"][2]["id"] = 5;
    CHECK_THROWS_WITH_AS(jsonio::cat_from_json(bad),
                         doctest::Contains("arrows[2]"), SchemaError);
  }
  SUBCASE("missing field") {
    json bad = good;
    bad.erase("identities");
    CHECK_THROWS_AS(jsonio::cat_from_json(bad), SchemaError);
  }
  SUBCASE("unknown document type") {
    CHECK_THROWS_AS(jsonio::validate_document(json{{"type", "nonsense"}}), SchemaError);
  }
}

TEST_CASE("corpus generation is deterministic and meets its guarantees") {
  const auto& c = corpus0();
  auto c2 = corpus::build_corpus(0);

  // byte-identical serializations across two builds with the same seed
  for (std::size_t i = 0; i < c.fibrations.size(); ++i)
    CHECK(jsonio::dump_canonical(jsonio::cloven_to_json(c.fibrations[i].c)) ==
          jsonio::dump_canonical(jsonio::cloven_to_json(c2.fibrations[i].c)));
  for (std::size_t i = 0; i < c.double_fibrations.size(); ++i)
    CHECK(jsonio::dump_canonical(jsonio::dfunctor_to_json(c.double_fibrations[i].P)) ==
          jsonio::dump_canonical(jsonio::dfunctor_to_json(c2.double_fibrations[i].P)));

  int split = 0, notsplit = 0, discrete = 0;
  for (auto& e : c.fibrations) {
    auto vr = fib::validate_cloven(e.c);
    CHECK(vr.pass);
    bool s = fib::is_split(e.c).pass;
    if (e.kind == "split") {
      CHECK(s);
      ++split;
    } else if (e.kind == "cloven_not_split") {
      CHECK(!s);
      ++notsplit;
    } else if (e.kind == "discrete") {
      CHECK(fib::is_discrete_fibration(e.c.p).pass);
      ++discrete;
    }
  }
  CHECK(split >= 1);
  CHECK(notsplit >= 1);
  CHECK(discrete >= 1);

  CHECK(c.non_fibrations.size() >= 1);
  for (auto& e : c.non_fibrations) CHECK(!fib::is_fibration(e.p).pass);

  CHECK(c.two_functors.size() >= 10);
  int neg = 0;
  for (auto& e : c.two_functors) {
    CHECK(twocat::validate_2functor(e.P).pass);
    if (!e.positive) ++neg;
  }
  CHECK(neg >= 3);

  CHECK(c.indexed.size() >= 20);
  CHECK(c.cospans.size() >= 20);
  CHECK(c.triangles.size() >= 10);
  for (auto& e : c.double_non_fibrations)
    CHECK(!dblfib::is_double_fibration(e.P).pass);
}

TEST_CASE("corpus cospans are cleavage-preserving squares") {
  const auto& c = corpus0();
  // spot-check the first cospan of each target fibration; the acceptance
  // binary runs the full pullback lemma over all of them
  std::string last;
  for (auto& e : c.cospans) {
    std::string tgt = e.name.substr(0, e.name.find_last_of('_'));
    if (tgt == last) continue;
    last = tgt;
    for (auto* sq : {&e.s, &e.t}) {
      CHECK(fib::validate_square(*sq).pass);
      CHECK(fib::validate_cloven(*sq->source).pass);
      CHECK(fib::is_cleavage_preserving(*sq).pass);
    }
  }
}

TEST_CASE("corpus triangles lift through their double fibrations") {
  const auto& c = corpus0();
  REQUIRE(!c.triangles.empty());
  const auto& t = c.triangles.front();
  const auto& e = c.double_fibrations[t.fib_index];
  CHECK(dbl::validate_vertical_transformation(t.t.beta).pass);
  auto lift = dblfib::lift_triangle(t.t, e.P, e.cl);
  CHECK(dbl::validate_vertical_transformation(lift.alpha).pass);
  for (std::size_t o = 0; o < lift.alpha.obj_comp.size(); ++o)
    CHECK(e.P.F0.ar[lift.alpha.obj_comp[o]] == t.t.beta.obj_comp[o]);
}

TEST_CASE("command-line interface exit codes") {
  auto dir = tmpdir();
  const auto& c = corpus0();
  jsonio::save_json((dir / "cat.json").string(),
                    jsonio::cat_to_json(*fincat::terminal_category()));
  jsonio::save_json((dir / "group.json").string(),
                    jsonio::cloven_to_json(c.fibrations[2].c));
  jsonio::save_json((dir / "dfib.json").string(),
                    jsonio::dfunctor_to_json(c.double_fibrations[0].P));
  {
    json bad = jsonio::cat_to_json(*fincat::chain_category(3));
    bad["compose"][0][2] = bad["compose"][0][0];
    jsonio::save_json((dir / "bad.json").string(), bad);
  }

  CHECK(run_cli("validate " + (dir / "cat.json").string()) == 0);
  CHECK(run_cli("check split " + (dir / "group.json").string()) == 1);
  CHECK(run_cli("check fib " + (dir / "group.json").string()) == 0);
  CHECK(run_cli("check double-fibration " + (dir / "dfib.json").string()) == 0);
  CHECK(run_cli("roundtrip " + (dir / "dfib.json").string()) == 0);
  CHECK(run_cli("vhprops " + (dir / "dfib.json").string()) == 0);
  CHECK(run_cli("validate " + (dir / "bad.json").string()) == 2);
  CHECK(run_cli("validate " + (dir / "missing.json").string()) == 2);
  CHECK(run_cli("frobnicate") == 2);

  // elements/fibers pipeline through files
  CHECK(run_cli("fibers " + (dir / "dfib.json").string() + " --out " +
                (dir / "idx.json").string()) == 0);
  CHECK(run_cli("elements " + (dir / "idx.json").string() + " --out " +
                (dir / "el.json").string()) == 0);
  CHECK(run_cli("validate " + (dir / "el.json").string()) == 0);

  // corpus generation is byte-deterministic across runs
  CHECK(run_cli("corpus --seed 7 --out " + (dir / "c_a").string()) == 0);
  CHECK(run_cli("corpus --seed 7 --out " + (dir / "c_b").string()) == 0);
  for (auto& entry : fs::directory_iterator(dir / "c_a")) {
    std::ifstream a(entry.path()), b(dir / "c_b" / entry.path().filename());
    REQUIRE(b.good());
    std::string sa((std::istreambuf_iterator<char>(a)), {});
    std::string sb((std::istreambuf_iterator<char>(b)), {});
    CHECK(sa == sb);
  }
}
