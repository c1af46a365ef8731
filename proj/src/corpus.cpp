#include "catkit/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <memory>
#include <random>

#include "catkit/json_io.hpp"

namespace catkit::corpus {

using fincat::CatBuilder;
using fincat::CatPtr;
using fincat::FinCategory;
using fincat::Functor;
using fincat::pair_key;

CatPtr group_category(int n) {
  CatBuilder b;
  b.add_object("*");
  for (int i = 0; i < n; ++i) b.add_arrow(0, 0, std::to_string(i));
  b.set_identity(0, 0);
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) b.set_comp(g, f, (g + f) % n);
  return b.freeze();
}

Functor group_quotient(int n, int m) {
  Functor F;
  F.dom = group_category(n);
  F.cod = group_category(m);
  F.ob = {0};
  for (int i = 0; i < n; ++i) F.ar.push_back(i % m);
  return F;
}

fib::ClovenFibration slice_projection(CatPtr C, int c) {
  std::vector<int> objs = C->arrows_into(c);
  auto idx = [&](int a) {
    for (std::size_t i = 0; i < objs.size(); ++i)
      if (objs[i] == a) return (int)i;
    return -1;
  };
  auto S = std::make_shared<FinCategory>();
  S->n_obj = (int)objs.size();
  S->idn.assign(S->n_obj, -1);
  struct Tri {
    int A, B, v;
  };
  std::vector<Tri> tris;
  for (int A = 0; A < S->n_obj; ++A)
    for (int B = 0; B < S->n_obj; ++B)
      for (int v : C->hom(C->src(objs[A]), C->src(objs[B]))) {
        if (C->compose(objs[B], v) != objs[A]) continue;
        S->arr.push_back({A, B});
        tris.push_back({A, B, v});
        if (A == B && C->is_id(v)) S->idn[A] = (int)S->arr.size() - 1;
      }
  for (std::size_t g = 0; g < tris.size(); ++g)
    for (std::size_t f = 0; f < tris.size(); ++f) {
      if (tris[f].B != tris[g].A) continue;
      int w = C->compose(tris[g].v, tris[f].v);
      for (std::size_t r = 0; r < tris.size(); ++r)
        if (tris[r].A == tris[f].A && tris[r].B == tris[g].B && tris[r].v == w)
          S->set_comp((int)g, (int)f, (int)r);
    }
  Functor p;
  p.dom = S;
  p.cod = C;
  for (int o = 0; o < S->n_obj; ++o) p.ob.push_back(C->src(objs[o]));
  for (auto& t : tris) p.ar.push_back(t.v);
  (void)idx;
  return fib::build_cleavage(p);
}

fib::FibrationSquare change_of_base(fib::ClovenPtr target, const Functor& u) {
  auto pb = std::make_shared<fincat::PullbackResult>(
      fincat::pullback_category(target->p, u));
  fib::ClovenFibration q;
  q.p = pb->p2;
  const FinCategory& Bp = *u.dom;
  const FinCategory& T = *target->p.dom;
  for (int v = 0; v < Bp.n_arrows(); ++v)
    for (int o = 0; o < pb->P->n_obj; ++o) {
      auto [E, b1] = pb->obj_pairs[o];
      if (b1 != Bp.tgt(v)) continue;
      int lu = u.ar[v];
      int lt = target->p.cod->is_id(lu) ? T.id(E) : target->lift(lu, E);
      if (lt < 0) continue;
      int a = pb->arr_index(lt, v);
      if (a >= 0) q.cleavage[pair_key(v, o)] = a;
    }
  q.flags = fib::cartesian_flags(q.p);
  fib::FibrationSquare sq;
  sq.source = std::make_shared<const fib::ClovenFibration>(std::move(q));
  sq.target = target;
  sq.top = pb->p1;
  sq.bottom = u;
  return sq;
}

dbl::DoubleFunctor vt_functor(const Functor& p) {
  dbl::DoubleFunctor F;
  F.dom = dbl::vertically_trivial(p.dom);
  F.cod = dbl::vertically_trivial(p.cod);
  F.F0 = p;
  F.F1 = p;
  return F;
}

namespace {

// Double functor from the one-object generator picking the object e.
dbl::DoubleFunctor from_terminal(dbl::DblPtr X, dbl::DblPtr D, int e) {
  dbl::DoubleFunctor F;
  F.dom = X;
  F.cod = D;
  F.F0 = Functor{X->E0, D->E0, {e}, {}};
  for (int a = 0; a < X->E0->n_arrows(); ++a) F.F0.ar.push_back(D->E0->id(e));
  int ye = D->unit.ob[e];
  F.F1 = Functor{X->E1, D->E1, {}, {}};
  for (int q = 0; q < X->E1->n_obj; ++q) F.F1.ob.push_back(ye);
  for (int a = 0; a < X->E1->n_arrows(); ++a) F.F1.ar.push_back(D->E1->id(ye));
  return F;
}

// Double functor from the free-proarrow generator picking the proarrow m.
dbl::DoubleFunctor from_wpd(dbl::DblPtr X, dbl::DblPtr D, int m) {
  dbl::DoubleFunctor F;
  F.dom = X;
  F.cod = D;
  int s = D->osrc(m), t = D->otgt(m);
  F.F0 = Functor{X->E0, D->E0, {s, t}, {}};
  for (int a = 0; a < X->E0->n_arrows(); ++a)
    F.F0.ar.push_back(D->E0->id(F.F0.ob[X->E0->src(a)]));
  F.F1 = Functor{X->E1, D->E1, {}, {}};
  for (int q = 0; q < X->E1->n_obj; ++q) {
    if (q == X->unit.ob[0]) F.F1.ob.push_back(D->unit.ob[s]);
    else if (q == X->unit.ob[1]) F.F1.ob.push_back(D->unit.ob[t]);
    else F.F1.ob.push_back(m);
  }
  for (int a = 0; a < X->E1->n_arrows(); ++a)
    F.F1.ar.push_back(D->E1->id(F.F1.ob[X->E1->src(a)]));
  return F;
}

bool discrete_cat(const FinCategory& C) {
  for (int a = 0; a < C.n_arrows(); ++a)
    if (!C.is_id(a)) return false;
  return true;
}

bool discrete_valued(const elements::IndexedDoubleCategory& F) {
  for (auto& c : F.fib0)
    if (!discrete_cat(*c)) return false;
  for (auto& c : F.fib1)
    if (!discrete_cat(*c)) return false;
  return true;
}

}  // namespace

Corpus build_corpus(std::uint64_t seed) {
  Corpus out;
  out.seed = seed;
  std::mt19937_64 rng(seed ^ 0xC07B05ull);

  auto T = fincat::terminal_category();
  auto WA = fincat::walking_arrow();
  auto C2 = fincat::chain_category(2);
  auto C3 = fincat::chain_category(3);
  auto C4 = fincat::chain_category(4);
  auto D6 = fincat::divisor_lattice(6);
  auto D12 = fincat::divisor_lattice(12);
  auto Z4 = group_category(4);
  auto RP = fincat::random_poset(seed ^ 0x9157ull, 5, 4);
  auto prod = fincat::product_category(C2, WA);

  out.categories = {{T, "terminal"},
                    {WA, "walking_arrow"},
                    {fincat::discrete_category(3), "discrete3"},
                    {C2, "chain2"},
                    {C3, "chain3"},
                    {C4, "chain4"},
                    {D6, "divisors6"},
                    {D12, "divisors12"},
                    {Z4, "group_z4"},
                    {RP, "random_poset5"},
                    {prod.P, "product_chain2_arrow"},
                    {fincat::opposite_category(C3), "chain3_op"}};

  // ---- 1-categorical fibrations -----------------------------------------
  auto A2 = fincat::arrow_category(C2);
  out.fibrations.push_back({fib::build_cleavage(prod.p1), "product_proj", "split"});
  out.fibrations.push_back({fib::build_cleavage(A2.cod), "arrow_cod_chain2", "split"});
  out.fibrations.push_back({fib::build_cleavage(group_quotient(4, 2)), "group_mod2",
                            "cloven_not_split"});
  out.fibrations.push_back({slice_projection(C3, 2), "slice_chain3_over2", "discrete"});

  auto incl = [&](CatPtr A, CatPtr B, std::vector<int> ob) {
    Functor F;
    F.dom = A;
    F.cod = B;
    F.ob = std::move(ob);
    for (int a = 0; a < A->n_arrows(); ++a) F.ar.push_back(B->id(F.ob[A->src(a)]));
    return F;
  };
  out.non_fibrations.push_back({incl(fincat::discrete_category(2), WA, {0, 1}),
                                "discrete2_into_arrow"});
  out.non_fibrations.push_back({incl(fincat::discrete_category(3), C3, {0, 1, 2}),
                                "discrete3_into_chain3"});
  out.non_fibrations.push_back({incl(WA, WA, {1, 1}), "collapse_to_endpoint"});

  // ---- 2-functors ---------------------------------------------------------
  for (auto& f : out.fibrations)
    out.two_functors.push_back(
        {twocat::locally_discrete_functor(f.c.p), true, "ld_" + f.name});
  {
    Functor bang;
    bang.dom = C2;
    bang.cod = T;
    bang.ob = {0, 0};
    for (int a = 0; a < C2->n_arrows(); ++a) bang.ar.push_back(T->id(0));
    out.two_functors.push_back(
        {twocat::locally_discrete_functor(bang), true, "ld_chain2_to_point"});
  }
  auto ld3 = std::make_shared<twocat::Fin2Category>(twocat::locally_discrete(C3));
  out.two_functors.push_back({twocat::identity_2functor(ld3), true, "id_ld_chain3"});
  auto Q3 = dbl::quintet(ld3);
  auto V3 = dbl::vertical_2cat(*Q3->D);
  out.two_functors.push_back({twocat::identity_2functor(V3.K), true, "id_vertical_quintet3"});
  for (auto& f : out.non_fibrations)
    out.two_functors.push_back(
        {twocat::locally_discrete_functor(f.p), false, "ld_" + f.name});

  // ---- double fibrations --------------------------------------------------
  auto push_dfib = [&](dbl::DoubleFunctor P, std::string name, std::string kind) {
    DblFibEntry e;
    e.P = std::move(P);
    e.name = std::move(name);
    e.kind = std::move(kind);
    auto r = dblfib::is_double_fibration(e.P, -1, &e.cl);
    if (!r.pass)
      throw PreconditionError("corpus generator: " + e.name + " is not a double fibration");
    out.double_fibrations.push_back(std::move(e));
  };
  push_dfib(vt_functor(prod.p1), "product_vt", "split");
  push_dfib(vt_functor(A2.cod), "arrow_cod_vt", "split");
  push_dfib(vt_functor(group_quotient(4, 2)), "group_vt", "cloven_not_split");
  auto cd3 = dbl::cod_double(dbl::vertically_trivial(C3));
  push_dfib(cd3.arrows.cod, "cod_double_chain3", "split");
  auto AQ3 = dbl::arrow_double(Q3->D);
  push_dfib(AQ3.dom, "dom_quintet_chain3", "split");

  for (auto& f : out.non_fibrations)
    out.double_non_fibrations.push_back({vt_functor(f.p), "vt_" + f.name});

  // ---- indexed double categories ------------------------------------------
  auto push_idx = [&](elements::IndexedDoubleCategory F, std::string name) {
    IndexedEntry e;
    e.windowed_base = !F.base->total;
    e.discrete_valued = discrete_valued(F);
    e.F = std::move(F);
    e.name = std::move(name);
    out.indexed.push_back(std::move(e));
  };
  auto vt2 = dbl::vertically_trivial(C2);
  auto vt3 = dbl::vertically_trivial(C3);
  auto vt6 = dbl::vertically_trivial(D6);
  std::vector<std::vector<int>> z2mult = {{0, 1}, {1, 0}};
  auto MZ2 = dbl::monoid_as_double(2, z2mult, 0);
  push_idx(elements::constant_indexed(vt2), "constant_chain2");
  push_idx(elements::constant_indexed(vt3), "constant_chain3");
  push_idx(elements::constant_indexed(Q3->D), "constant_quintet3");
  push_idx(elements::constant_indexed(vt6), "constant_divisors6");
  push_idx(elements::constant_indexed(MZ2), "constant_monoid_z2");

  auto idWA = fincat::identity_functor(WA);
  auto idC3 = fincat::identity_functor(C3);
  auto idT = fincat::identity_functor(T);
  push_idx(elements::prof_indexed(idWA, idWA), "prof_hom_arrow");
  push_idx(elements::prof_indexed(idC3, idC3), "prof_hom_chain3");
  push_idx(elements::prof_indexed(idT, idT), "prof_hom_point");
  push_idx(elements::prof_indexed(incl(T, WA, {0}), idWA), "prof_corepresentable0");
  push_idx(elements::prof_indexed(idWA, incl(T, WA, {1})), "prof_representable1");

  push_idx(elements::slice_indexed(Q3->D), "slice_quintet3");
  push_idx(elements::slice_indexed(vt3), "slice_chain3");
  push_idx(elements::slice_indexed(vt6), "slice_divisors6");
  push_idx(elements::slice_indexed(vt2), "slice_chain2");

  auto W11 = dbl::span_window(1, 1);
  auto W22 = dbl::span_window(2, 2);
  push_idx(elements::family_indexed(WA, W11), "family_arrow_w11");
  push_idx(elements::family_indexed(C3, W11), "family_chain3_w11");
  push_idx(elements::family_indexed(fincat::discrete_category(2), W11),
           "family_discrete2_w11");
  push_idx(elements::family_indexed(WA, W22), "family_arrow_w22");

  for (int i : {0, 2, 3}) {
    auto& e = out.double_fibrations[i];
    push_idx(elements::fibers_construction(e.P, e.cl).F, "fibers_" + e.name);
  }

  // ---- cleavage-preserving cospans ---------------------------------------
  std::vector<CatPtr> shapes = {T, WA};
  for (auto& f : out.fibrations) {
    auto tgt = std::make_shared<const fib::ClovenFibration>(f.c);
    std::vector<fib::FibrationSquare> sqs;
    for (auto& sh : shapes)
      for (auto& u : fincat::all_functors(sh, f.c.p.cod))
        sqs.push_back(change_of_base(tgt, u));
    std::shuffle(sqs.begin(), sqs.end(), rng);
    if (sqs.size() > 4) sqs.resize(4);
    for (std::size_t i = 0; i < sqs.size(); ++i)
      for (std::size_t k = i + 1; k < sqs.size(); ++k)
        out.cospans.push_back(
            {sqs[i], sqs[k],
             "cospan_" + f.name + "_" + std::to_string(i) + std::to_string(k)});
  }

  // ---- lifting triangles --------------------------------------------------
  auto Xt = dblfib::terminal_double();
  auto Xw = dblfib::walking_proarrow_double();
  int made = 0;
  for (std::size_t fi = 0; fi < out.double_fibrations.size() && made < 6; ++fi) {
    auto& e = out.double_fibrations[fi];
    int here = 0;
    for (int o = 0; o < e.P.dom->E0->n_obj && here < 2; ++o)
      for (int b : e.P.cod->E0->arrows_into(e.P.F0.ob[o])) {
        TriangleEntry t;
        t.fib_index = (int)fi;
        t.t.E = from_terminal(Xt, e.P.dom, o);
        t.t.B = from_terminal(Xt, e.P.cod, e.P.cod->E0->src(b));
        t.t.beta.source = t.t.B;
        t.t.beta.target = dbl::compose_double_functors(e.P, t.t.E);
        t.t.beta.obj_comp = {b};
        t.t.beta.pro_comp = {e.P.cod->unit.ar[b]};
        t.name = "triangle_pt_" + e.name + "_" + std::to_string(made);
        out.triangles.push_back(std::move(t));
        ++made;
        if (++here >= 2) break;
      }
  }
  for (std::size_t fi = 0; fi < out.double_fibrations.size() && made < 10; ++fi) {
    auto& e = out.double_fibrations[fi];
    int here = 0;
    for (int m = 0; m < e.P.dom->n_pro() && here < 2; ++m)
      for (int beta : e.P.cod->E1->arrows_into(e.P.F1.ob[m])) {
        TriangleEntry t;
        t.fib_index = (int)fi;
        t.t.E = from_wpd(Xw, e.P.dom, m);
        int bm = e.P.cod->E1->src(beta);
        t.t.B = from_wpd(Xw, e.P.cod, bm);
        t.t.beta.source = t.t.B;
        t.t.beta.target = dbl::compose_double_functors(e.P, t.t.E);
        int u = e.P.cod->src.ar[beta], v = e.P.cod->tgt.ar[beta];
        t.t.beta.obj_comp = {u, v};
        t.t.beta.pro_comp.assign(Xw->E1->n_obj, -1);
        for (int q = 0; q < Xw->E1->n_obj; ++q) {
          if (q == Xw->unit.ob[0]) t.t.beta.pro_comp[q] = e.P.cod->unit.ar[u];
          else if (q == Xw->unit.ob[1]) t.t.beta.pro_comp[q] = e.P.cod->unit.ar[v];
          else t.t.beta.pro_comp[q] = beta;
        }
        t.name = "triangle_pro_" + e.name + "_" + std::to_string(made);
        out.triangles.push_back(std::move(t));
        ++made;
        if (++here >= 2) break;
      }
  }

  return out;
}

void write_corpus(const Corpus& c, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  json manifest;
  manifest["seed"] = c.seed;
  auto put = [&](const char* group, const std::string& name, const json& doc) {
    std::string file = std::string(group) + "_" + name + ".json";
    jsonio::save_json(dir + "/" + file, doc);
    manifest[group].push_back(file);
  };
  for (auto& e : c.categories) put("category", e.name, jsonio::cat_to_json(*e.C));
  for (auto& e : c.fibrations) put("fibration", e.name, jsonio::cloven_to_json(e.c));
  for (auto& e : c.non_fibrations)
    put("non_fibration", e.name, jsonio::functor_to_json(e.p));
  for (auto& e : c.two_functors)
    put("two_functor", e.name, jsonio::twofunctor_to_json(e.P));
  for (auto& e : c.double_fibrations)
    put("double_functor", e.name, jsonio::dfunctor_to_json(e.P));
  for (auto& e : c.double_non_fibrations)
    put("double_non_fibration", e.name, jsonio::dfunctor_to_json(e.P));
  for (auto& e : c.indexed) {
    if (e.windowed_base) continue;  // providers are configured, not serialized
    put("indexed", e.name, jsonio::indexed_to_json(e.F));
  }
  jsonio::save_json(dir + "/manifest.json", manifest);
}

}  // namespace catkit::corpus
