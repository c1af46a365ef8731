#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catkit/fincat.hpp"

using namespace catkit;
using namespace catkit::fincat;

namespace {

// Independent oracle: count commutative squares of C by brute force.
long long count_squares(const FinCategory& c) {
  long long n = 0;
  for (int x = 0; x < c.n_arrows(); ++x)
    for (int y = 0; y < c.n_arrows(); ++y)
      for (int l = 0; l < c.n_arrows(); ++l)
        for (int r = 0; r < c.n_arrows(); ++r) {
          if (c.src(l) != c.src(x) || c.tgt(l) != c.src(y)) continue;
          if (c.src(r) != c.tgt(x) || c.tgt(r) != c.tgt(y)) continue;
          if (c.compose(y, l) == c.compose(r, x)) ++n;
        }
  return n;
}

}  // namespace

TEST_CASE("validate_category accepts the basic shapes") {
  CHECK(validate_category(*terminal_category()).pass);
  CHECK(validate_category(*walking_arrow()).pass);
  CHECK(validate_category(*discrete_category(3)).pass);
  CHECK(discrete_category(3)->n_arrows() == 3);
  CHECK(validate_category(*chain_category(4)).pass);
  CHECK(validate_category(*divisor_lattice(12)).pass);
}

TEST_CASE("corrupted composition table yields an associativity counterexample") {
  // Chain 0 -> 1 -> 2 -> 3 with hom(0,3) doubled so that the two ways of
  // associating a triple can be made to disagree.
  CatBuilder b;
  for (int i = 0; i < 4; ++i) b.add_object();
  int f01 = b.add_arrow(0, 1), f12 = b.add_arrow(1, 2), f23 = b.add_arrow(2, 3);
  int f02 = b.add_arrow(0, 2), f13 = b.add_arrow(1, 3);
  int f03 = b.add_arrow(0, 3), g03 = b.add_arrow(0, 3);
  b.set_comp(f12, f01, f02);
  b.set_comp(f23, f12, f13);
  b.set_comp(f23, f02, f03);
  b.set_comp(f13, f01, g03);  // the corrupted entry
  auto C = b.freeze();
  auto r = validate_category(*C);
  CHECK(!r.pass);
  CHECK(r.counterexample["kind"] == "associativity");
}

TEST_CASE("validator flags dangling references as schema errors") {
  CatBuilder b;
  b.add_object();
  b.add_arrow(0, 5);
  FinCategory broken = b.c;
  broken.idn = {0};
  CHECK_THROWS_AS(validate_category(broken), SchemaError);
}

TEST_CASE("pullback along identities is the diagonal") {
  auto C = chain_category(3);
  auto idf = identity_functor(C);
  auto pb = pullback_category(idf, idf);
  CHECK(pb.P->n_obj == C->n_obj);
  CHECK(pb.P->n_arrows() == C->n_arrows());
  CHECK(validate_category(*pb.P).pass);
  CHECK(validate_functor(pb.p1).pass);
  CHECK(pb.p1.ob == pb.p2.ob);
  CHECK(pullback_universal_property(idf, idf, pb).pass);
}

TEST_CASE("pullback over the terminal category is the product") {
  auto W = walking_arrow();
  auto T = terminal_category();
  Functor F;
  F.dom = W;
  F.cod = T;
  F.ob = {0, 0};
  F.ar = {T->id(0), T->id(0), T->id(0)};
  auto pb = pullback_category(F, F);
  CHECK(pb.P->n_obj == 4);
  CHECK(pb.P->n_arrows() == 9);
  CHECK(validate_category(*pb.P).pass);
  CHECK(pullback_universal_property(F, F, pb).pass);
}

TEST_CASE("pullback of dom,cod of the arrow category has the universal property") {
  auto C = walking_arrow();
  auto ac = arrow_category(C);
  auto pb = pullback_category(ac.cod, ac.dom);
  CHECK(validate_category(*pb.P).pass);
  CHECK(validate_functor(pb.p1).pass);
  CHECK(validate_functor(pb.p2).pass);
  CHECK(pullback_universal_property(ac.cod, ac.dom, pb).pass);
}

TEST_CASE("arrow category of the terminal category is terminal") {
  auto ac = arrow_category(terminal_category());
  CHECK(ac.C2->n_obj == 1);
  CHECK(ac.C2->n_arrows() == 1);
  CHECK(validate_category(*ac.C2).pass);
}

TEST_CASE("arrow category of the walking arrow matches the hand count") {
  auto C = walking_arrow();
  auto ac = arrow_category(C);
  CHECK(ac.C2->n_obj == 3);
  CHECK(static_cast<long long>(ac.C2->n_arrows()) == count_squares(*C));
  CHECK(validate_category(*ac.C2).pass);
  CHECK(validate_functor(ac.dom).pass);
  CHECK(validate_functor(ac.cod).pass);
}

TEST_CASE("arrow category square count matches the oracle on a random poset") {
  auto C = random_poset(7, 3, 2);
  auto ac = arrow_category(C);
  CHECK(static_cast<long long>(ac.C2->n_arrows()) == count_squares(*C));
  CHECK(validate_category(*ac.C2).pass);
}

TEST_CASE("divisor lattice of 12 has all meets") {
  auto L = divisor_lattice(12);
  CHECK(L->n_obj == 6);
  CHECK(is_poset(*L));
  for (int a = 0; a < L->n_obj; ++a)
    for (int b = 0; b < L->n_obj; ++b) CHECK(poset_meet(*L, a, b) >= 0);
}

TEST_CASE("random poset generation is deterministic in the seed") {
  auto A = random_poset(42, 5, 4);
  auto B = random_poset(42, 5, 4);
  CHECK(A->n_obj == B->n_obj);
  CHECK(A->n_arrows() == B->n_arrows());
  for (int a = 0; a < A->n_arrows(); ++a) {
    CHECK(A->src(a) == B->src(a));
    CHECK(A->tgt(a) == B->tgt(a));
  }
  CHECK(validate_category(*A).pass);
}

TEST_CASE("functor enumeration matches hand counts") {
  auto W = walking_arrow();
  CHECK(all_functors(W, W).size() == 3);
  CHECK(all_functors(W, terminal_category()).size() == 1);
  CHECK(all_functors(discrete_category(2), discrete_category(3)).size() == 9);
}

TEST_CASE("opposite is an involution") {
  auto C = divisor_lattice(12);
  auto op2 = opposite_category(opposite_category(C));
  REQUIRE(op2->n_arrows() == C->n_arrows());
  for (int a = 0; a < C->n_arrows(); ++a) {
    CHECK(op2->src(a) == C->src(a));
    CHECK(op2->tgt(a) == C->tgt(a));
  }
  for (int f = 0; f < C->n_arrows(); ++f)
    for (int g = 0; g < C->n_arrows(); ++g)
      if (C->tgt(f) == C->src(g)) CHECK(op2->compose(g, f) == C->compose(g, f));
  CHECK(validate_category(*opposite_category(C)).pass);
}

TEST_CASE("natural transformation validation") {
  auto W = walking_arrow();
  auto fs = all_functors(W, W);
  // constant-at-0 and identity functor; the unique component family is natural
  Functor c0, idw;
  for (auto& f : fs) {
    if (f.ob == std::vector<int>{0, 0}) c0 = f;
    if (f.ob == std::vector<int>{0, 1}) idw = f;
  }
  NatTransformation t;
  t.source = c0;
  t.target = idw;
  int arrow = -1;
  for (int a = 0; a < W->n_arrows(); ++a)
    if (!W->is_id(a)) arrow = a;
  t.components = {W->id(0), arrow};
  CHECK(validate_nat(t).pass);
  t.components = {W->id(0), W->id(1)};
  CHECK(!validate_nat(t).pass);
}
