#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "catkit/dblcat.hpp"
#include "catkit/dblfib.hpp"
#include "catkit/elements.hpp"
#include "catkit/twocat.hpp"

using namespace catkit;
using namespace catkit::fincat;
using namespace catkit::elements;

namespace {

dbl::DblPtr quintet_chain(int n) {
  auto K = std::make_shared<twocat::Fin2Category>(
      twocat::locally_discrete(chain_category(n)));
  return dbl::quintet(K)->D;
}

}  // namespace

TEST_CASE("constant indexed data: validation, elements, equivalence with the base") {
  auto base = dbl::vertically_trivial(chain_category(3));
  auto F = constant_indexed(base);
  auto vr = validate_indexed(F);
  CHECK(vr.pass);
  CHECK(!vr.window_certified);

  auto res = elements_locally_discrete(F);
  CHECK(dbl::validate_double_category(*res.El).pass);
  CHECK(dbl::validate_double_functor(res.proj).pass);
  // one fiber element per base object and proarrow: elements over the
  // terminal fibers reproduce the base on the nose
  CHECK(res.El->E0->n_obj == base->E0->n_obj);
  CHECK(res.El->E1->n_obj == base->E1->n_obj);
  CHECK(res.El->E0->n_arrows() == base->E0->n_arrows());

  CHECK(dblfib::is_double_fibration(res.proj).pass);
  // terminal fibers: both levels are discrete fibrations
  CHECK(fib::is_discrete_fibration(res.proj.F0).pass);
  CHECK(fib::is_discrete_fibration(res.proj.F1).pass);

  auto eq = check_equivalence_over_base(res.proj, dbl::identity_double_functor(base));
  CHECK(eq.pass);
  CHECK(!eq.inconclusive);
}

TEST_CASE("profunctor-of-homs indexed data and its elements double category") {
  auto A = walking_arrow();
  auto FA = identity_functor(A);
  auto F = prof_indexed(FA, FA);
  auto vr = validate_indexed(F);
  CHECK(vr.pass);

  auto res = elements_locally_discrete(F);
  CHECK(dbl::validate_double_category(*res.El).pass);
  CHECK(dbl::validate_double_functor(res.proj).pass);

  // frozen counts for hom(-, -) on the walking arrow: fibers of size 2, 2 and
  // the three-object two-sided elements category with three non-identity
  // arrows
  CHECK(res.El->E0->n_obj == 4);
  CHECK(res.El->E1->n_obj == 7);
  CHECK(res.El->E1->n_arrows() == 12);

  auto rf = dblfib::is_double_fibration(res.proj);
  CHECK(rf.pass);
  CHECK(dblfib::is_split_double_fibration(res.proj).pass);

  SUBCASE("identity profunctor on the terminal category is constant") {
    auto T = terminal_category();
    auto Ft = prof_indexed(identity_functor(T), identity_functor(T));
    CHECK(validate_indexed(Ft).pass);
    auto cst = constant_indexed(Ft.base);
    auto cmp = indexed_iso_compare(Ft, cst);
    CHECK(cmp.pass);
  }

  SUBCASE("round trips through fibers") {
    auto fb = fibers_construction(res.proj, res.cleavage);
    auto back = indexed_iso_compare(fb.F, F);
    CHECK(back.pass);
    CHECK(!back.inconclusive);

    auto res2 = elements_construction(fb.F);
    CHECK(dbl::validate_double_category(*res2.El).pass);
    auto eq = check_equivalence_over_base(res2.proj, res.proj);
    CHECK(eq.pass);
    CHECK(eq.witness.contains("h1"));
  }

  SUBCASE("no equivalence with the elements of the constant data") {
    auto other = elements_locally_discrete(constant_indexed(F.base));
    auto eq = check_equivalence_over_base(res.proj, other.proj);
    CHECK(!eq.pass);
    CHECK(!eq.inconclusive);
  }
}

TEST_CASE("set-indexed families over the span window") {
  auto C = walking_arrow();

  SUBCASE("validation on the two-element window") {
    auto W = dbl::span_window(2, 2);
    auto F = family_indexed(C, W);
    auto vr = validate_indexed(F, 3000);
    CHECK(vr.pass);
    CHECK(vr.window_certified);
    CHECK(F.locally_discrete);

    IndexedMorphism id;
    for (auto& c : F.fib0) id.t0.push_back(identity_functor(c));
    for (auto& c : F.fib1) id.t1.push_back(identity_functor(c));
    CHECK(validate_indexed_morphism(F, F, id, true).pass);
  }

  SUBCASE("fibers of the family projection recover the indexed families") {
    auto fw = dbl::fam_window(C, 1);
    dblfib::DoubleCleavage cl;
    auto rf = dblfib::is_double_fibration(fw->proj, 4000, &cl);
    CHECK(rf.pass);
    auto fb = fibers_construction(fw->proj, cl);
    auto famI = family_indexed(C, fw->base);
    auto cmp = indexed_iso_compare(fb.F, famI, 500000);
    CHECK(cmp.pass);
    CHECK(!cmp.inconclusive);
  }

  SUBCASE("elements of a small family datum is a double fibration") {
    auto W = dbl::span_window(1, 1);
    auto F = family_indexed(C, W);
    auto res = elements_locally_discrete(F);
    CHECK(dbl::validate_double_category(*res.El, 20000).pass);
    auto rf = dblfib::is_double_fibration(res.proj, 20000);
    CHECK(rf.pass);
  }
}

TEST_CASE("slices of a double category with chosen pullbacks") {
  auto D = quintet_chain(3);
  auto F = slice_indexed(D);
  auto vr = validate_indexed(F);
  CHECK(vr.pass);
  CHECK(!F.locally_discrete);

  SUBCASE("the external tensor of slice cells is genuinely lax") {
    bool collision = false;
    for (int m = 0; m < D->n_pro() && !collision; ++m)
      for (int n : D->pro_from(D->otgt(m))) {
        if (D->tensor.obj(m, n) < 0) continue;
        const auto& Fm = *F.fib1[m];
        const auto& Fn = *F.fib1[n];
        std::vector<std::array<int, 3>> seen;
        for (int a = 0; a < Fm.n_obj; ++a)
          for (int b = 0; b < Fn.n_obj; ++b) {
            if (F.leg_r[m].ob[a] != F.leg_l[n].ob[b]) continue;
            int p = F.phi_ob(m, n, a, b);
            for (auto& s : seen)
              if (s[2] == p && (s[0] != a || s[1] != b)) collision = true;
            seen.push_back({a, b, p});
          }
        if (collision) break;
      }
    CHECK(collision);
  }

  SUBCASE("a corrupted laxity component is rejected") {
    // find a matching pair whose target fiber has a second object to point at
    int M = -1, N = -1, AO = -1, BO = -1, alt = -1;
    for (int m = 0; m < D->n_pro() && M < 0; ++m)
      for (int n : D->pro_from(D->otgt(m))) {
        int t = D->tensor.obj(m, n);
        if (t < 0 || F.fib1[t]->n_obj < 2) continue;
        for (int a = 0; a < F.fib1[m]->n_obj && M < 0; ++a)
          for (int b = 0; b < F.fib1[n]->n_obj; ++b) {
            if (F.leg_r[m].ob[a] != F.leg_l[n].ob[b]) continue;
            int p = F.phi_ob(m, n, a, b);
            if (p < 0) continue;
            M = m;
            N = n;
            AO = a;
            BO = b;
            alt = (p + 1) % F.fib1[t]->n_obj;
            break;
          }
      }
    REQUIRE(M >= 0);
    auto bad = F;
    bad.phi_ob = [orig = F.phi_ob, M, N, AO, BO, alt](int m, int n, int a, int b) {
      if (m == M && n == N && a == AO && b == BO) return alt;
      return orig(m, n, a, b);
    };
    CHECK(!validate_indexed(bad).pass);
  }

  SUBCASE("locally discrete restriction rejects comparison data") {
    CHECK_THROWS_AS(elements_locally_discrete(F), PreconditionError);
  }
}

TEST_CASE("fibers of the codomain projection are the slices") {
  auto D = dbl::vertically_trivial(chain_category(3));
  auto CD = dbl::cod_double(D);
  auto P = CD.arrows.cod;
  dblfib::DoubleCleavage cl;
  auto rf = dblfib::is_double_fibration(P, -1, &cl);
  CHECK(rf.pass);

  auto fb = fibers_construction(P, cl);
  CHECK(validate_indexed(fb.F).pass);
  auto sl = slice_indexed(D);
  auto cmp = indexed_iso_compare(fb.F, sl, 1000000);
  CHECK(cmp.pass);
  CHECK(!cmp.inconclusive);

  SUBCASE("elements of the fibers is equivalent to the original projection") {
    auto res = elements_construction(fb.F);
    CHECK(dbl::validate_double_category(*res.El).pass);
    CHECK(dblfib::is_double_fibration(res.proj).pass);
    auto eq = check_equivalence_over_base(res.proj, P);
    CHECK(eq.pass);
    CHECK(!eq.inconclusive);
  }
}
