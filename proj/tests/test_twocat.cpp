#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catkit/twocat.hpp"

using namespace catkit;
using namespace catkit::fincat;
using namespace catkit::twocat;

namespace {

// Two horizontally composable nonidentity 2-cells: alpha: f => g : A -> B and
// beta: u => v : B -> C, with all whiskers and the composite square filled in.
struct HPair {
  Fin2Category K;
  int alpha, beta, d1, dx;  // dx: spare parallel cell uf => vg
};

HPair walking_hpair(bool with_spare = false) {
  HPair w;
  CatBuilder b;
  int A = b.add_object("A"), B = b.add_object("B"), C = b.add_object("C");
  int f = b.add_arrow(A, B, "f"), g = b.add_arrow(A, B, "g");
  int u = b.add_arrow(B, C, "u"), v = b.add_arrow(B, C, "v");
  int uf = b.add_arrow(A, C, "uf"), ug = b.add_arrow(A, C, "ug");
  int vf = b.add_arrow(A, C, "vf"), vg = b.add_arrow(A, C, "vg");
  b.set_comp(u, f, uf);
  b.set_comp(u, g, ug);
  b.set_comp(v, f, vf);
  b.set_comp(v, g, vg);
  w.K.base = b.freeze();
  add_identity_2cells(w.K);
  auto& K = w.K;
  w.alpha = add_cell(K, f, g);
  w.beta = add_cell(K, u, v);
  w.d1 = add_cell(K, uf, vg);
  int d2 = add_cell(K, uf, ug), d3 = add_cell(K, uf, vf);
  int d4 = add_cell(K, vf, vg), d5 = add_cell(K, ug, vg);
  K.vtable[pair_key(d4, d3)] = w.d1;
  K.vtable[pair_key(d5, d2)] = w.d1;
  K.htable[pair_key(w.beta, w.alpha)] = w.d1;
  K.htable[pair_key(K.id2[u], w.alpha)] = d2;
  K.htable[pair_key(w.beta, K.id2[f])] = d3;
  K.htable[pair_key(K.id2[v], w.alpha)] = d4;
  K.htable[pair_key(w.beta, K.id2[g])] = d5;
  K.htable[pair_key(K.id2[u], K.id2[f])] = K.id2[uf];
  K.htable[pair_key(K.id2[u], K.id2[g])] = K.id2[ug];
  K.htable[pair_key(K.id2[v], K.id2[f])] = K.id2[vf];
  K.htable[pair_key(K.id2[v], K.id2[g])] = K.id2[vg];
  w.dx = with_spare ? add_cell(K, uf, vg) : -1;
  return w;
}

// A Cartesian arrow that is 2-Cartesian only when the base 2-cell gamma is
// liftable.  Total: Z -(h^, l^)-> X -f-> Y; base: pz -(h, l)-> px -w-> py
// with gamma: h => l whiskering to the identity on the common composite.
struct TwoCart {
  TwoFunctor P;
  int f, hhat, lhat;
};

TwoCart twocart_example(bool with_lift) {
  TwoCart t;
  // base 2-category
  CatBuilder bb;
  int pz = bb.add_object(), px = bb.add_object(), py = bb.add_object();
  int h = bb.add_arrow(pz, px, "h"), l = bb.add_arrow(pz, px, "l");
  int wv = bb.add_arrow(px, py, "w");
  int c = bb.add_arrow(pz, py, "c");
  bb.set_comp(wv, h, c);
  bb.set_comp(wv, l, c);
  auto base = bb.freeze();
  auto B = std::make_shared<Fin2Category>();
  B->base = base;
  add_identity_2cells(*B);
  int gamma = add_cell(*B, h, l);
  B->htable[pair_key(B->id2[wv], gamma)] = B->id2[c];
  B->htable[pair_key(B->id2[wv], B->id2[h])] = B->id2[c];
  B->htable[pair_key(B->id2[wv], B->id2[l])] = B->id2[c];

  // total 2-category
  CatBuilder eb;
  int Z = eb.add_object(), X = eb.add_object(), Y = eb.add_object();
  t.hhat = eb.add_arrow(Z, X, "h^");
  t.lhat = eb.add_arrow(Z, X, "l^");
  t.f = eb.add_arrow(X, Y, "f");
  int m = eb.add_arrow(Z, Y, "m");
  eb.set_comp(t.f, t.hhat, m);
  eb.set_comp(t.f, t.lhat, m);
  auto total = eb.freeze();
  auto E = std::make_shared<Fin2Category>();
  E->base = total;
  add_identity_2cells(*E);
  E->htable[pair_key(E->id2[t.f], E->id2[t.hhat])] = E->id2[m];
  E->htable[pair_key(E->id2[t.f], E->id2[t.lhat])] = E->id2[m];
  int ghat = -1;
  if (with_lift) {
    ghat = add_cell(*E, t.hhat, t.lhat);
    E->htable[pair_key(E->id2[t.f], ghat)] = E->id2[m];
  }

  t.P.dom = E;
  t.P.cod = B;
  t.P.f.dom = total;
  t.P.f.cod = base;
  t.P.f.ob = {pz, px, py};
  t.P.f.ar.assign(total->n_arrows(), -1);
  t.P.f.ar[t.hhat] = h;
  t.P.f.ar[t.lhat] = l;
  t.P.f.ar[t.f] = wv;
  t.P.f.ar[m] = c;
  for (int o = 0; o < 3; ++o) t.P.f.ar[total->id(o)] = base->id(t.P.f.ob[o]);
  t.P.cell_map.assign(E->n_cells(), -1);
  for (int a = 0; a < total->n_arrows(); ++a)
    t.P.cell_map[E->id2[a]] = B->id2[t.P.f.ar[a]];
  if (with_lift) t.P.cell_map[ghat] = gamma;
  return t;
}

}  // namespace

TEST_CASE("locally discrete 2-categories validate") {
  auto K = locally_discrete(divisor_lattice(12));
  CHECK(validate_2category(K).pass);
}

TEST_CASE("the walking horizontal pair validates; corruption breaks interchange") {
  auto w = walking_hpair();
  CHECK(validate_2category(w.K).pass);

  auto bad = walking_hpair(true);
  // reroute one half of the interchange square through the spare cell
  for (auto& [key, val] : bad.K.vtable)
    if (val == bad.d1) {
      val = bad.dx;
      break;
    }
  auto r = validate_2category(bad.K);
  CHECK(!r.pass);
  CHECK((r.counterexample["kind"] == "interchange" ||
         r.counterexample["kind"] == "vcomp-associativity"));
}

TEST_CASE("2-functor validation") {
  auto w = walking_hpair();
  auto K = std::make_shared<Fin2Category>(w.K);
  auto idf = identity_2functor(K);
  CHECK(validate_2functor(idf).pass);

  auto bad = idf;
  bad.cell_map[w.d1] = w.alpha;  // wrong endpoints
  CHECK(!validate_2functor(bad).pass);
}

TEST_CASE("hom-category extraction") {
  auto w = walking_hpair();
  auto h = hom_category(w.K, 0, 2);  // hom(A, C): 4 objects, 5 nonid cells
  CHECK(h.cat->n_obj == 4);
  CHECK(h.cat->n_arrows() == 9);
  CHECK(validate_category(*h.cat).pass);
}

TEST_CASE("identity arrows are 2-Cartesian in locally discrete 2-categories") {
  auto ac = arrow_category(chain_category(3));
  auto P = locally_discrete_functor(ac.dom);
  CHECK(validate_2functor(P).pass);
  for (int o = 0; o < ac.C2->n_obj; ++o)
    CHECK(is_2cartesian(P, ac.C2->id(o)).pass);
}

TEST_CASE("Cartesian but not 2-Cartesian without the lifted 2-cell") {
  auto neg = twocart_example(false);
  REQUIRE(validate_2category(*neg.P.dom).pass);
  REQUIRE(validate_2category(*neg.P.cod).pass);
  REQUIRE(validate_2functor(neg.P).pass);
  CHECK(fib::is_cartesian(neg.P.f, neg.f).pass);
  auto r = is_2cartesian(neg.P, neg.f);
  CHECK(!r.pass);
  CHECK(r.counterexample["kind"] == "2-cartesian");

  auto pos = twocart_example(true);
  REQUIRE(validate_2functor(pos.P).pass);
  CHECK(is_2cartesian(pos.P, pos.f).pass);
}

TEST_CASE("2-Cartesian implies 1-Cartesian on all arrows of the example") {
  auto pos = twocart_example(true);
  for (int a = 0; a < pos.P.dom->base->n_arrows(); ++a)
    if (is_2cartesian(pos.P, a).pass) CHECK(fib::is_cartesian(pos.P.f, a).pass);
}

TEST_CASE("is_2fibration") {
  auto w = walking_hpair();
  auto K = std::make_shared<Fin2Category>(w.K);
  CHECK(is_2fibration(identity_2functor(K)).pass);

  auto pos = twocart_example(true);
  CHECK(is_2fibration(pos.P).pass);

  auto neg = twocart_example(false);
  auto r = is_2fibration(neg.P);
  CHECK(!r.pass);
  // the only candidate over w is Cartesian but not 2-Cartesian
  CHECK(r.counterexample["condition"] == 1);

  // no 2-Cartesian (even 1-Cartesian) lift at all: condition 1
  Functor bad;
  bad.dom = discrete_category(2);
  bad.cod = walking_arrow();
  bad.ob = {0, 1};
  bad.ar = {bad.cod->id(0), bad.cod->id(1)};
  auto badP = locally_discrete_functor(bad);
  auto r1 = is_2fibration(badP);
  CHECK(!r1.pass);
  CHECK(r1.counterexample["condition"] == 1);
}

TEST_CASE("locally discrete 2-fibration agrees with the 1-dimensional checker") {
  for (auto C : {chain_category(3), poset_category(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})}) {
    auto ac = arrow_category(C);
    auto P = locally_discrete_functor(ac.dom);
    CHECK(is_2fibration(P).pass == fib::is_fibration(ac.dom).pass);
    CHECK(is_2fibration(P).pass);
  }
  Functor bad;
  bad.dom = discrete_category(2);
  bad.cod = walking_arrow();
  bad.ob = {0, 1};
  bad.ar = {bad.cod->id(0), bad.cod->id(1)};
  CHECK(is_2fibration(locally_discrete_functor(bad)).pass ==
        fib::is_fibration(bad).pass);
}
