#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catkit/fib.hpp"

using namespace catkit;
using namespace catkit::fincat;
using namespace catkit::fib;

namespace {

// The commutative-square poset 0 <= 1,2 <= 3.
CatPtr square_poset() { return poset_category(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

// Total category with two isomorphic Cartesian lifts over the walking arrow:
// objects X, X' (over 0, isomorphic) and E (over 1), arrows f: X -> E and
// f': X' -> E both over u.
struct TwoLifts {
  CatPtr total, base;
  Functor p;
  int f, fp, i, ip;
};

TwoLifts two_lifts() {
  TwoLifts t;
  CatBuilder b;
  int X = b.add_object("X"), Xp = b.add_object("X'"), E = b.add_object("E");
  int idX = b.add_arrow(X, X, "id");
  int idXp = b.add_arrow(Xp, Xp, "id");
  int idE = b.add_arrow(E, E, "id");
  b.set_identity(X, idX);
  b.set_identity(Xp, idXp);
  b.set_identity(E, idE);
  t.i = b.add_arrow(X, Xp, "i");
  t.ip = b.add_arrow(Xp, X, "i'");
  t.f = b.add_arrow(X, E, "f");
  t.fp = b.add_arrow(Xp, E, "f'");
  b.set_comp(t.ip, t.i, idX);
  b.set_comp(t.i, t.ip, idXp);
  b.set_comp(t.fp, t.i, t.f);
  b.set_comp(t.f, t.ip, t.fp);
  t.total = b.freeze();
  t.base = walking_arrow();
  const int u = 0;  // the non-identity arrow of the walking arrow
  t.p.dom = t.total;
  t.p.cod = t.base;
  t.p.ob = {0, 0, 1};
  t.p.ar.assign(t.total->n_arrows(), -1);
  t.p.ar[t.i] = t.base->id(0);
  t.p.ar[t.ip] = t.base->id(0);
  t.p.ar[t.f] = u;
  t.p.ar[t.fp] = u;
  t.p.ar[t.total->id(0)] = t.base->id(0);
  t.p.ar[t.total->id(1)] = t.base->id(0);
  t.p.ar[t.total->id(2)] = t.base->id(1);
  return t;
}

// Category of elements of the presheaf on the walking arrow with F(1)={a,b},
// F(0)={c}; both restrictions hit c.
Functor presheaf_elements() {
  CatBuilder b;
  int c = b.add_object("c"), a = b.add_object("a"), bb = b.add_object("b");
  int ca = b.add_arrow(c, a), cb = b.add_arrow(c, bb);
  auto total = b.freeze();
  auto base = walking_arrow();
  Functor p;
  p.dom = total;
  p.cod = base;
  p.ob = {0, 1, 1};
  p.ar.assign(total->n_arrows(), -1);
  p.ar[ca] = 0;
  p.ar[cb] = 0;
  p.ar[total->id(c)] = base->id(0);
  p.ar[total->id(a)] = base->id(1);
  p.ar[total->id(bb)] = base->id(1);
  return p;
}

}  // namespace

TEST_CASE("identity arrows and isomorphisms are Cartesian") {
  auto t = two_lifts();
  REQUIRE(validate_category(*t.total).pass);
  REQUIRE(validate_functor(t.p).pass);
  for (int o = 0; o < t.total->n_obj; ++o)
    CHECK(is_cartesian(t.p, t.total->id(o)).pass);
  CHECK(is_cartesian(t.p, t.i).pass);
  CHECK(is_cartesian(t.p, t.ip).pass);
}

TEST_CASE("dom of the arrow category: Cartesian iff the right leg is an identity") {
  auto C = square_poset();
  auto ac = arrow_category(C);
  for (int a = 0; a < ac.C2->n_arrows(); ++a) {
    bool right_id = C->is_id(ac.arr_legs[a].second);
    CHECK(is_cartesian(ac.dom, a).pass == right_id);
  }
  // and the weak formulation agrees with the strong one on this fibration
  CHECK(sga_flags(ac.dom) == cartesian_flags(ac.dom));
}

TEST_CASE("is_fibration positives and negatives") {
  // anything over the terminal category
  auto C = square_poset();
  Functor bang;
  bang.dom = C;
  bang.cod = terminal_category();
  bang.ob.assign(C->n_obj, 0);
  bang.ar.assign(C->n_arrows(), bang.cod->id(0));
  CHECK(is_fibration(bang).pass);

  for (auto base : {chain_category(4), square_poset(), random_poset(3, 4, 3)}) {
    auto ac = arrow_category(base);
    CHECK(is_fibration(ac.dom).pass);
  }

  // discrete 2-object category over the walking arrow, objects at the two ends
  Functor bad;
  bad.dom = discrete_category(2);
  bad.cod = walking_arrow();
  bad.ob = {0, 1};
  bad.ar = {bad.cod->id(0), bad.cod->id(1)};
  auto r = is_fibration(bad);
  CHECK(!r.pass);
  CHECK(r.counterexample["base_arrow"] == 0);
}

TEST_CASE("build_cleavage is deterministic and Cartesian; dom cleavage is split") {
  auto t = two_lifts();
  auto c = build_cleavage(t.p);
  CHECK(validate_cloven(c).pass);
  CHECK(c.lift(0, 2) == t.f);  // least-id tie-break picks f over f'

  auto idf = identity_functor(square_poset());
  auto ci = build_cleavage(idf);
  for (const auto& [key, l] : ci.cleavage)
    CHECK(l == static_cast<int>(key >> 32));  // lift of (u, E) is u itself

  auto ac = arrow_category(square_poset());
  auto cd = build_cleavage(ac.dom);
  CHECK(validate_cloven(cd).pass);
  for (const auto& [key, l] : cd.cleavage) {
    (void)key;
    CHECK(square_poset()->is_id(ac.arr_legs[l].second));  // (h, id) squares
  }
  CHECK(is_split(cd).pass);
}

TEST_CASE("build_cleavage rejects non-fibrations") {
  Functor bad;
  bad.dom = discrete_category(2);
  bad.cod = walking_arrow();
  bad.ob = {0, 1};
  bad.ar = {bad.cod->id(0), bad.cod->id(1)};
  CHECK_THROWS_AS(build_cleavage(bad), PreconditionError);
}

TEST_CASE("Cartesian- vs cleavage-preserving squares") {
  auto t = two_lifts();
  auto c1 = std::make_shared<ClovenFibration>(build_cleavage(t.p));
  // same fibration, alternative cleavage choosing f' instead of f
  auto alt = *c1;
  alt.cleavage[pair_key(0, 2)] = t.fp;
  auto c2 = std::make_shared<ClovenFibration>(alt);
  CHECK(validate_cloven(*c2).pass);

  FibrationSquare idsq{c1, c1, identity_functor(t.total), identity_functor(t.base)};
  CHECK(is_cartesian_preserving(idsq).pass);
  CHECK(is_cleavage_preserving(idsq).pass);

  FibrationSquare cross{c1, c2, identity_functor(t.total), identity_functor(t.base)};
  CHECK(is_cartesian_preserving(cross).pass);
  auto r = is_cleavage_preserving(cross);
  CHECK(!r.pass);
  CHECK(r.counterexample["kind"] == "cleavage-not-preserved");
}

TEST_CASE("two Cartesian lifts of the same pair are linked by a unique vertical iso") {
  auto t = two_lifts();
  // lifts of (u, E): f and f'; search vertical v with f'∘v = f
  int count = 0, witness = -1;
  for (int v = 0; v < t.total->n_arrows(); ++v) {
    if (t.p.ar[v] != t.base->id(0)) continue;
    if (t.total->compose(t.fp, v) == t.f) {
      ++count;
      witness = v;
    }
  }
  CHECK(count == 1);
  CHECK(witness == t.i);
}

TEST_CASE("pullback of cloven fibrations: diagonal case and the pairing lemma") {
  auto ac = arrow_category(chain_category(3));
  auto c = std::make_shared<ClovenFibration>(build_cleavage(ac.dom));
  FibrationSquare idsq{c, c, identity_functor(ac.C2), identity_functor(chain_category(3))};
  idsq.bottom = identity_functor(c->p.cod);
  auto res = pullback_fibrations(idsq, idsq);
  CHECK(validate_cloven(res.fib).pass);
  CHECK(res.lemma.pass);
  CHECK(res.totals.P->n_obj == ac.C2->n_obj);  // diagonal over identity legs
  // every pairwise cleavage entry is Cartesian in the pullback
  for (const auto& [key, l] : res.fib.cleavage) {
    (void)key;
    CHECK(static_cast<bool>(res.fib.flags[l]));
  }
}

TEST_CASE("pullback_fibrations rejects non-cleavage-preserving legs") {
  auto t = two_lifts();
  auto c1 = std::make_shared<ClovenFibration>(build_cleavage(t.p));
  auto alt = *c1;
  alt.cleavage[pair_key(0, 2)] = t.fp;
  auto c2 = std::make_shared<ClovenFibration>(alt);
  FibrationSquare cross{c1, c2, identity_functor(t.total), identity_functor(t.base)};
  FibrationSquare idsq{c2, c2, identity_functor(t.total), identity_functor(t.base)};
  CHECK_THROWS_AS(pullback_fibrations(cross, idsq), PreconditionError);
}

TEST_CASE("discrete fibrations") {
  auto idd = identity_functor(discrete_category(3));
  CHECK(is_discrete_fibration(idd).pass);

  auto p = presheaf_elements();
  REQUIRE(validate_functor(p).pass);
  CHECK(is_discrete_fibration(p).pass);
  CHECK(is_fibration(p).pass);

  // dom over a category with parallel arrows has two lifts over an identity
  CatBuilder b;
  b.add_object();
  b.add_object();
  b.add_arrow(0, 1);
  b.add_arrow(0, 1);
  auto par = b.freeze();
  auto ac = arrow_category(par);
  CHECK(!is_discrete_fibration(ac.dom).pass);
}

TEST_CASE("opposite tools") {
  auto ac = arrow_category(chain_category(3));
  // dom is a bifibration for poset C: both directions pass
  CHECK(is_fibration(ac.dom).pass);
  CHECK(is_opfibration(ac.dom).pass);

  Functor bad;
  bad.dom = discrete_category(2);
  bad.cod = walking_arrow();
  bad.ob = {0, 1};
  bad.ar = {bad.cod->id(0), bad.cod->id(1)};
  CHECK(!is_opfibration(bad).pass);

  // double opposite is the original, including composition
  auto p = ac.dom;
  auto op2 = opposite_functor(opposite_functor(p));
  CHECK(op2.ob == p.ob);
  CHECK(op2.ar == p.ar);
  for (int f = 0; f < p.dom->n_arrows(); ++f)
    for (int g : p.dom->arrows_from(p.dom->tgt(f)))
      CHECK(op2.dom->compose(g, f) == p.dom->compose(g, f));
}

TEST_CASE("composites of Cartesian arrows are Cartesian") {
  auto ac = arrow_category(square_poset());
  auto flags = cartesian_flags(ac.dom);
  for (int f = 0; f < ac.C2->n_arrows(); ++f) {
    if (!flags[f]) continue;
    for (int g : ac.C2->arrows_from(ac.C2->tgt(f))) {
      if (!flags[g]) continue;
      int gf = ac.C2->compose(g, f);
      REQUIRE(gf >= 0);
      CHECK(static_cast<bool>(flags[gf]));
    }
  }
}
