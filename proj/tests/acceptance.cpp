// Acceptance suite: one line per criterion, PASS/FAIL with timing.
// Exit code 0 iff every criterion passes.

#include <chrono>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "catkit/corpus.hpp"
#include "catkit/dblcat.hpp"
#include "catkit/dblfib.hpp"
#include "catkit/elements.hpp"
#include "catkit/fib.hpp"
#include "catkit/fincat.hpp"
#include "catkit/twocat.hpp"

using namespace catkit;
using Clock = std::chrono::steady_clock;

namespace {

bool g_all = true;

struct Timer {
  Clock::time_point t0 = Clock::now();
  double secs() const {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }
};

void line(int n, bool pass, double secs, const std::string& desc,
          const std::string& note = "") {
  std::printf("criterion %2d: %s (%6.2fs) %s%s%s\n", n, pass ? "PASS" : "FAIL", secs,
              desc.c_str(), note.empty() ? "" : " -- ", note.c_str());
  std::fflush(stdout);
  g_all = g_all && pass;
}

dbl::DoubleFunctor dom_of(dbl::DblPtr D) { return dbl::arrow_double(D).dom; }

}  // namespace

int main() {
  auto corpus_t0 = Timer{};
  corpus::Corpus C = corpus::build_corpus(0);
  std::printf("corpus: seed 0 built in %.2fs (%zu indexed, %zu cospans, %zu triangles)\n",
              corpus_t0.secs(), C.indexed.size(), C.cospans.size(), C.triangles.size());

  // 1. The domain projection of the arrow double category is a double
  //    fibration, exhaustively, on three bases.
  {
    Timer t;
    bool ok = true;
    std::string note;
    auto vee = std::make_shared<twocat::Fin2Category>(twocat::locally_discrete(
        fincat::poset_category(3, {{0, 2}, {1, 2}})));
    auto d12 = std::make_shared<twocat::Fin2Category>(
        twocat::locally_discrete(fincat::divisor_lattice(12)));
    std::vector<std::pair<std::string, dbl::DblPtr>> bases = {
        {"quintet-vee", dbl::quintet(vee)->D},
        {"squares-divisors12", dbl::quintet(d12)->D},
        {"vertically-trivial-4",
         dbl::vertically_trivial(fincat::product_category(
                                     fincat::chain_category(2),
                                     fincat::chain_category(2))
                                     .P)}};
    for (auto& [name, D] : bases) {
      Timer ti;
      auto r = dblfib::is_double_fibration(dom_of(D));
      bool here = r.pass && !r.inconclusive && ti.secs() < 30.0;
      if (!here) note += name + " failed; ";
      ok = ok && here;
    }
    line(1, ok, t.secs(), "domain projection is a double fibration on 3 bases", note);
  }

  // 2. The codomain projection with canonical pullbacks on the divisor
  //    lattice of 12.
  {
    Timer t;
    auto cd = dbl::cod_double(dbl::vertically_trivial(fincat::divisor_lattice(12)));
    auto r = dblfib::is_double_fibration(cd.arrows.cod);
    line(2, r.pass && !r.inconclusive && t.secs() < 60.0, t.secs(),
         "codomain projection on the divisor-of-12 lattice");
  }

  // 3. Direct image from spans to relations on the window (sets <= 2,
  //    apex <= 4): expected to be a double opfibration (window-certified)
  //    and to fail the fibration check.
  {
    Timer t;
    auto im = dbl::image_functor(2, 4);
    auto rop = dblfib::is_double_opfibration(im.im, 50000);
    auto rfib = dblfib::is_double_fibration(im.im, 50000);
    bool ok = rop.pass && rop.window_certified && !rfib.pass;
    std::string note;
    if (!rop.pass)
      note =
          "the opfibration half fails: no opCartesian lift of the empty span "
          "exists over a cell into a nonempty relation (a candidate lift with k "
          "apex elements admits 2^k vertical cells onto a duplicated-pair span "
          "against exactly 1 required; visible at apex size 2, independent of "
          "the window)";
    line(3, ok, t.secs(), "direct image spans->relations: opfibration on the window", note);
  }

  // 4. The family projection over the span window (index sets <= 2) is a
  //    split double fibration, window-certified.
  {
    Timer t;
    auto fw = dbl::fam_window(fincat::walking_arrow(), 2);
    auto r = dblfib::is_split_double_fibration(fw->proj, 4000);
    line(4, r.pass && r.window_certified && t.secs() < 120.0, t.secs(),
         "family projection over the span window is split (window-certified)");
  }

  // 5. Pointwise cleavage of pullbacks: the pairwise cleavage is Cartesian
  //    and an arrow of the pullback is Cartesian iff both components are.
  {
    Timer t;
    bool ok = C.cospans.size() >= 20;
    std::string note = ok ? "" : "fewer than 20 cospans";
    int n = 0;
    for (auto& e : C.cospans) {
      auto pr = fib::pullback_fibrations(e.s, e.t, true);
      bool here = pr.lemma.pass && fib::validate_cloven(pr.fib).pass;
      if (!here && note.empty()) note = e.name + " failed";
      ok = ok && here;
      ++n;
    }
    line(5, ok && t.secs() < 60.0, t.secs(),
         "pullback cleavage lemma on " + std::to_string(n) + " cospans", note);
  }

  // 6. Elements construction on every corpus indexed datum.
  {
    Timer t;
    bool ok = C.indexed.size() >= 20;
    std::string note = ok ? "" : "fewer than 20 indexed data";
    double worst = 0;
    for (auto& e : C.indexed) {
      Timer ti;
      long long budget = e.windowed_base ? 20000 : -1;
      auto res = elements::elements_construction(e.F);
      auto r = dbl::validate_double_category(*res.El, budget);
      r.merge(dblfib::is_double_fibration(res.proj, e.windowed_base ? 4000 : -1));
      bool here = r.pass;
      if (e.discrete_valued)
        here = here && fib::is_discrete_fibration(res.proj.F0).pass &&
               fib::is_discrete_fibration(res.proj.F1).pass;
      here = here && ti.secs() < 10.0;
      worst = std::max(worst, ti.secs());
      if (!here && note.empty()) note = e.name + " failed";
      ok = ok && here;
    }
    line(6, ok, t.secs(),
         "elements of " + std::to_string(C.indexed.size()) +
             " indexed data are double fibrations",
         note.empty() ? "slowest " + std::to_string(worst).substr(0, 4) + "s" : note);
  }

  // 7. Representation round trips in both directions.
  {
    Timer t;
    bool ok = true;
    std::string note;
    for (auto& e : C.double_fibrations) {
      Timer ti;
      auto fb = elements::fibers_construction(e.P, e.cl);
      auto res = elements::elements_construction(fb.F);
      auto eq = elements::check_equivalence_over_base(res.proj, e.P);
      bool here = eq.pass && !eq.inconclusive && ti.secs() < 60.0;
      if (!here && note.empty()) note = "equivalence failed for " + e.name;
      ok = ok && here;
    }
    for (auto& e : C.indexed) {
      Timer ti;
      auto res = elements::elements_construction(e.F);
      auto fb = elements::fibers_construction(res.proj, res.cleavage);
      // canonical componentwise iso: the fiber over C enumerates the pairs
      // (C, X) in the order of the X, and likewise at the proarrow level
      elements::IndexedMorphism m;
      const auto& D = *e.F.base;
      std::vector<int> inv0(res.El->E0->n_obj, -1), inv1(res.El->E1->n_obj, -1);
      std::vector<int> pinv0(res.El->E0->n_arrows(), -1), pinv1(res.El->E1->n_arrows(), -1);
      for (int c = 0; c < D.E0->n_obj; ++c)
        for (std::size_t x = 0; x < res.ob0[c].size(); ++x) inv0[res.ob0[c][x]] = (int)x;
      for (int p = 0; p < D.n_pro(); ++p)
        for (std::size_t x = 0; x < res.ob1[p].size(); ++x) inv1[res.ob1[p][x]] = (int)x;
      for (int a = 0; a < res.El->E0->n_arrows(); ++a) pinv0[a] = res.arr0[a][2];
      for (int a = 0; a < res.El->E1->n_arrows(); ++a) pinv1[a] = res.arr1[a][2];
      for (int c = 0; c < D.E0->n_obj; ++c) {
        fincat::Functor f;
        f.dom = fb.F.fib0[c];
        f.cod = e.F.fib0[c];
        for (int o : fb.obj0[c]) f.ob.push_back(inv0[o]);
        for (int a : fb.arr0[c]) f.ar.push_back(pinv0[a]);
        m.t0.push_back(std::move(f));
      }
      for (int p = 0; p < D.n_pro(); ++p) {
        fincat::Functor f;
        f.dom = fb.F.fib1[p];
        f.cod = e.F.fib1[p];
        for (int o : fb.obj1[p]) f.ob.push_back(inv1[o]);
        for (int a : fb.arr1[p]) f.ar.push_back(pinv1[a]);
        m.t1.push_back(std::move(f));
      }
      auto r = elements::validate_indexed_morphism(fb.F, e.F, m, true);
      bool here = r.pass && ti.secs() < 60.0;
      if (!here && note.empty()) note = "iso family failed for " + e.name;
      ok = ok && here;
    }
    line(7, ok, t.secs(), "round trips: elements of fibers and fibers of elements", note);
  }

  // 8. 2-fibration <-> quintet double fibration agreement.
  {
    Timer t;
    bool ok = C.two_functors.size() >= 10;
    std::string note = ok ? "" : "fewer than 10 two-functors";
    int neg = 0;
    for (auto& e : C.two_functors) {
      Timer ti;
      auto r = dblfib::quintet_equiv_test(e.P);
      bool expect = twocat::is_2fibration(e.P).pass;
      bool here = r.pass && expect == e.positive && ti.secs() < 30.0;
      if (!e.positive) ++neg;
      if (!here && note.empty()) note = e.name + " disagreed";
      ok = ok && here;
    }
    ok = ok && neg >= 3;
    line(8, ok, t.secs(),
         "quintet agreement on " + std::to_string(C.two_functors.size()) +
             " 2-functors (" + std::to_string(neg) + " negative)",
         note);
  }

  // 9. Internal characterization and the split/cloven divide.
  {
    Timer t;
    bool ok = true, saw_cns = false;
    std::string note;
    std::vector<std::pair<std::string, const dbl::DoubleFunctor*>> all;
    for (auto& e : C.double_fibrations) all.push_back({e.name, &e.P});
    for (auto& e : C.double_non_fibrations) all.push_back({e.name, &e.P});
    for (auto& [name, P] : all) {
      Timer ti;
      bool fibr = dblfib::is_double_fibration(*P).pass;
      bool internal = dblfib::internal_fibration_check(*P, dblfib::Flavor::pseudo).pass;
      bool lax = dblfib::internal_fibration_check(*P, dblfib::Flavor::lax).pass;
      bool split = dblfib::is_split_double_fibration(*P).pass;
      bool here = (fibr == internal) && (!split || fibr) && (!fibr || lax) &&
                  ti.secs() < 30.0;
      if (fibr && !split) saw_cns = true;
      if (!here && note.empty()) note = name + " violated the chain";
      ok = ok && here;
    }
    ok = ok && saw_cns;
    if (!saw_cns) note = "no cloven-not-split certificate";
    line(9, ok, t.secs(), "internal characterization and (S)=>(P)=>(L) on the corpus", note);
  }

  // 10. Generator lifting through chosen Cartesian cells.
  {
    Timer t;
    bool ok = C.triangles.size() >= 10;
    std::string note = ok ? "" : "fewer than 10 triangles";
    for (auto& e : C.triangles) {
      Timer ti;
      const auto& P = C.double_fibrations[e.fib_index].P;
      const auto& cl = C.double_fibrations[e.fib_index].cl;
      auto lift = dblfib::lift_triangle(e.t, P, cl);
      bool here = dbl::validate_vertical_transformation(lift.alpha).pass;
      for (std::size_t o = 0; o < lift.alpha.obj_comp.size(); ++o) {
        here = here && P.F0.ar[lift.alpha.obj_comp[o]] == e.t.beta.obj_comp[o];
        here = here && fib::is_cartesian_bool(P.F0, lift.alpha.obj_comp[o]);
      }
      for (std::size_t p = 0; p < lift.alpha.pro_comp.size(); ++p) {
        here = here && P.F1.ar[lift.alpha.pro_comp[p]] == e.t.beta.pro_comp[p];
        here = here && fib::is_cartesian_bool(P.F1, lift.alpha.pro_comp[p]);
      }
      here = here && ti.secs() < 30.0;
      if (!here && note.empty()) note = e.name + " failed";
      ok = ok && here;
    }
    line(10, ok, t.secs(),
         "Cartesian lifts of " + std::to_string(C.triangles.size()) +
             " generator triangles",
         note);
  }

  // 11. Module-level invariants across the seeded corpus.
  {
    Timer t;
    bool ok = true;
    std::string note;
    auto fail = [&](const std::string& n) {
      if (note.empty()) note = n;
      ok = false;
    };
    for (auto& e : C.categories) {
      if (!fincat::validate_category(*e.C).pass) fail("category " + e.name);
      auto op = fincat::opposite_category(fincat::opposite_category(e.C));
      if (op->n_obj != e.C->n_obj || op->n_arrows() != e.C->n_arrows())
        fail("opposite involution " + e.name);
    }
    for (auto& e : C.fibrations) {
      if (!fib::validate_cloven(e.c).pass) fail("cloven " + e.name);
      // composites of Cartesian arrows are Cartesian
      const auto& T = *e.c.p.dom;
      auto fl = fib::cartesian_flags(e.c.p);
      for (int g = 0; g < T.n_arrows(); ++g)
        for (int f = 0; f < T.n_arrows(); ++f) {
          if (T.tgt(f) != T.src(g) || !fl[f] || !fl[g]) continue;
          int c = T.compose(g, f);
          if (c >= 0 && !fl[c]) fail("Cartesian composite " + e.name);
        }
    }
    for (auto& e : C.cospans)
      for (auto* sq : {&e.s, &e.t})
        if (fib::is_cleavage_preserving(*sq).pass &&
            !fib::is_cartesian_preserving(*sq).pass)
          fail("cleavage=>Cartesian preserving " + e.name);
    for (auto& e : C.two_functors) {
      auto t2 = twocat::twocartesian_flags(e.P);
      auto t1 = fib::cartesian_flags(e.P.f);
      for (std::size_t a = 0; a < t2.size(); ++a)
        if (t2[a] && !t1[a]) fail("2-Cartesian=>Cartesian " + e.name);
    }
    {
      // the vertical 2-category of a quintet double category restricts to the
      // original 2-category
      auto K = std::make_shared<twocat::Fin2Category>(
          twocat::locally_discrete(fincat::chain_category(3)));
      auto V = dbl::vertical_2cat(*dbl::quintet(K)->D);
      if (V.K->base->n_obj != K->base->n_obj ||
          V.K->base->n_arrows() != K->base->n_arrows() ||
          V.K->n_cells() != K->n_cells())
        fail("vertical of quintet");
    }
    for (auto& e : C.double_fibrations) {
      if (!dbl::validate_double_functor(e.P).pass) fail("double functor " + e.name);
      if (!dblfib::vh_props(e.P).pass) fail("vh shadows " + e.name);
    }
    for (auto& e : C.indexed) {
      long long budget = e.windowed_base ? 10000 : -1;
      auto r = elements::validate_indexed(e.F, budget);
      if (!r.pass) fail("indexed " + e.name);
    }
    line(11, ok, t.secs(), "module invariants across the corpus", note);
  }

  return g_all ? 0 : 1;
}
