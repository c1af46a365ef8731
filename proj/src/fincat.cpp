#include "catkit/fincat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace catkit::fincat {

// ---- FinCategory ---------------------------------------------------------

void FinCategory::ensure_index() const {
  if (index_built_) return;
  from_.assign(n_obj, {});
  into_.assign(n_obj, {});
  for (int a = 0; a < n_arrows(); ++a) {
    from_[arr[a].src].push_back(a);
    into_[arr[a].tgt].push_back(a);
    hom_[pair_key(arr[a].src, arr[a].tgt)].push_back(a);
  }
  index_built_ = true;
}

const std::vector<int>& FinCategory::hom(int a, int b) const {
  ensure_index();
  auto it = hom_.find(pair_key(a, b));
  return it == hom_.end() ? empty_ : it->second;
}

const std::vector<int>& FinCategory::arrows_from(int o) const {
  ensure_index();
  return from_[o];
}

const std::vector<int>& FinCategory::arrows_into(int o) const {
  ensure_index();
  return into_[o];
}

std::string FinCategory::describe_arrow(int a) const {
  if (a >= 0 && a < static_cast<int>(arr_name.size()) && !arr_name[a].empty())
    return arr_name[a];
  if (a < 0 || a >= n_arrows()) return "arrow#" + std::to_string(a);
  return "a" + std::to_string(a) + "(" + std::to_string(arr[a].src) + "->" +
         std::to_string(arr[a].tgt) + ")";
}

int CatBuilder::add_object(std::string name) {
  c.idn.push_back(-1);
  c.obj_name.push_back(std::move(name));
  return c.n_obj++;
}

int CatBuilder::add_arrow(int s, int t, std::string name) {
  c.arr.push_back({s, t});
  c.arr_name.push_back(std::move(name));
  return c.n_arrows() - 1;
}

CatPtr CatBuilder::freeze() {
  for (int o = 0; o < c.n_obj; ++o)
    if (c.idn[o] < 0) c.idn[o] = add_arrow(o, o, "id");
  return std::make_shared<FinCategory>(std::move(c));
}

// ---- validation ----------------------------------------------------------

Report validate_category(const FinCategory& C, long long budget) {
  Report r;
  // Structural sanity: dangling references are schema errors, not check
  // failures.
  if (static_cast<int>(C.idn.size()) != C.n_obj)
    throw SchemaError("identities list does not match object count");
  for (int a = 0; a < C.n_arrows(); ++a)
    if (C.src(a) < 0 || C.src(a) >= C.n_obj || C.tgt(a) < 0 || C.tgt(a) >= C.n_obj)
      throw SchemaError("arrow " + std::to_string(a) + " has a dangling endpoint");
  for (int o = 0; o < C.n_obj; ++o) {
    int i = C.idn[o];
    if (i < 0 || i >= C.n_arrows())
      throw SchemaError("identity of object " + std::to_string(o) + " is dangling");
    ++r.checks;
    if (C.src(i) != o || C.tgt(i) != o)
      return Report::bad({{"kind", "identity-endpoints"}, {"object", o}, {"arrow", i}},
                         "identity arrow is not an endo-arrow", r.checks);
  }

  // Identity laws against explicit table entries (compose() itself
  // short-circuits identities, so only stored entries can disagree).
  for (const auto& [key, val] : C.comp_table) {
    int g = static_cast<int>(key >> 32), f = static_cast<int>(key & 0xffffffffu);
    if (g < 0 || g >= C.n_arrows() || f < 0 || f >= C.n_arrows() || val < 0 ||
        val >= C.n_arrows())
      throw SchemaError("compose table entry references a dangling arrow");
    ++r.checks;
    if (C.tgt(f) != C.src(g))
      return Report::bad({{"kind", "compose-noncomposable"}, {"g", g}, {"f", f}},
                         "compose table entry for a non-composable pair", r.checks);
    int expect = -2;
    if (C.is_id(g)) expect = f;
    if (C.is_id(f)) expect = g;
    if (expect != -2 && val != expect)
      return Report::bad({{"kind", "identity-law"}, {"g", g}, {"f", f}, {"got", val}},
                         "identity law violated", r.checks);
  }

  // Totality/closure on composable pairs.
  long long total_pairs = 0;
  for (int o = 0; o < C.n_obj; ++o)
    total_pairs += static_cast<long long>(C.arrows_into(o).size()) *
                   static_cast<long long>(C.arrows_from(o).size());
  long long stride = 1;
  if (budget >= 0 && total_pairs > budget) {
    stride = (total_pairs + budget - 1) / std::max<long long>(budget, 1);
    r.window_certified = true;
  }
  auto check_closure = [&](int f, int g) -> bool {
    ++r.checks;
    int gf = C.compose(g, f);
    if (gf < 0 || gf >= C.n_arrows() || C.src(gf) != C.src(f) || C.tgt(gf) != C.tgt(g)) {
      r.merge(Report::bad({{"kind", "closure"}, {"g", g}, {"f", f}, {"result", gf}},
                          "composite missing or with wrong endpoints"));
      return false;
    }
    return true;
  };
  if (stride == 1) {
    for (int f = 0; f < C.n_arrows(); ++f)
      for (int g : C.arrows_from(C.tgt(f)))
        if (!check_closure(f, g)) return r;
  } else {
    // Sampling instead of striding: walking every composable pair just to
    // skip most of them would dominate the runtime on large windows.
    std::mt19937_64 rng(0xC105EULL);
    for (long long i = 0; i < budget; ++i) {
      int f = static_cast<int>(rng() % C.n_arrows());
      const auto& gs = C.arrows_from(C.tgt(f));
      if (gs.empty()) continue;
      if (!check_closure(f, gs[rng() % gs.size()])) return r;
    }
  }

  // Associativity.
  long long total_triples = 0;
  for (int g = 0; g < C.n_arrows(); ++g)
    total_triples += static_cast<long long>(C.arrows_into(C.src(g)).size()) *
                     static_cast<long long>(C.arrows_from(C.tgt(g)).size());
  long long stride3 = 1;
  if (budget >= 0 && total_triples > budget) {
    stride3 = (total_triples + budget - 1) / std::max<long long>(budget, 1);
    r.window_certified = true;
  }
  auto check_assoc = [&](int f, int g, int h) -> bool {
    ++r.checks;
    int gf = C.compose(g, f);
    int hg = C.compose(h, g);
    if (gf < 0 || hg < 0) return true;  // already reported by closure pass
    if (C.compose(h, gf) != C.compose(hg, f)) {
      r.merge(Report::bad({{"kind", "associativity"}, {"h", h}, {"g", g}, {"f", f}},
                          "associativity violated"));
      return false;
    }
    return true;
  };
  if (stride3 == 1) {
    for (int g = 0; g < C.n_arrows(); ++g)
      for (int f : C.arrows_into(C.src(g)))
        for (int h : C.arrows_from(C.tgt(g)))
          if (!check_assoc(f, g, h)) return r;
  } else {
    std::mt19937_64 rng(0xA550CULL);
    for (long long i = 0; i < budget; ++i) {
      int g = static_cast<int>(rng() % C.n_arrows());
      const auto& fs = C.arrows_into(C.src(g));
      const auto& hs = C.arrows_from(C.tgt(g));
      if (fs.empty() || hs.empty()) continue;
      if (!check_assoc(fs[rng() % fs.size()], g, hs[rng() % hs.size()])) return r;
    }
  }
  return r;
}

Report validate_functor(const Functor& F, long long budget) {
  Report r;
  const auto& A = *F.dom;
  const auto& B = *F.cod;
  if (static_cast<int>(F.ob.size()) != A.n_obj ||
      static_cast<int>(F.ar.size()) != A.n_arrows())
    throw SchemaError("functor maps do not match domain sizes");
  for (int o = 0; o < A.n_obj; ++o)
    if (F.ob[o] < 0 || F.ob[o] >= B.n_obj)
      throw SchemaError("functor object map is dangling at " + std::to_string(o));
  for (int a = 0; a < A.n_arrows(); ++a) {
    ++r.checks;
    int fa = F.ar[a];
    if (fa < 0 || fa >= B.n_arrows())
      throw SchemaError("functor arrow map is dangling at " + std::to_string(a));
    if (B.src(fa) != F.ob[A.src(a)] || B.tgt(fa) != F.ob[A.tgt(a)])
      return Report::bad({{"kind", "endpoints"}, {"arrow", a}},
                         "functor does not preserve endpoints", r.checks);
  }
  for (int o = 0; o < A.n_obj; ++o) {
    ++r.checks;
    if (F.ar[A.id(o)] != B.id(F.ob[o]))
      return Report::bad({{"kind", "identity"}, {"object", o}},
                         "functor does not preserve identities", r.checks);
  }
  long long total_pairs = 0;
  for (int o = 0; o < A.n_obj; ++o)
    total_pairs += static_cast<long long>(A.arrows_into(o).size()) *
                   static_cast<long long>(A.arrows_from(o).size());
  long long stride = 1;
  if (budget >= 0 && total_pairs > budget) {
    stride = (total_pairs + budget - 1) / std::max<long long>(budget, 1);
    r.window_certified = true;
  }
  auto check_comp = [&](int f, int g) -> bool {
    ++r.checks;
    int gf = A.compose(g, f);
    if (gf < 0) return true;
    if (F.ar[gf] != B.compose(F.ar[g], F.ar[f])) {
      r.merge(Report::bad({{"kind", "composition"}, {"g", g}, {"f", f}},
                          "functor does not preserve composition"));
      return false;
    }
    return true;
  };
  if (stride == 1) {
    for (int f = 0; f < A.n_arrows(); ++f)
      for (int g : A.arrows_from(A.tgt(f)))
        if (!check_comp(f, g)) return r;
  } else {
    // Sampled (see validate_category): iterating every composable pair to
    // discard most of them would dominate on large windows.
    std::mt19937_64 rng(0xF27CULL);
    for (long long i = 0; i < budget; ++i) {
      int f = static_cast<int>(rng() % A.n_arrows());
      const auto& gs = A.arrows_from(A.tgt(f));
      if (gs.empty()) continue;
      if (!check_comp(f, gs[rng() % gs.size()])) return r;
    }
  }
  return r;
}

Report validate_nat(const NatTransformation& t) {
  Report r;
  const auto& A = *t.source.dom;
  const auto& B = *t.source.cod;
  if (t.source.dom != t.target.dom || t.source.cod != t.target.cod)
    throw SchemaError("natural transformation between non-parallel functors");
  if (static_cast<int>(t.components.size()) != A.n_obj)
    throw SchemaError("component list does not match object count");
  for (int o = 0; o < A.n_obj; ++o) {
    ++r.checks;
    int c = t.components[o];
    if (c < 0 || c >= B.n_arrows()) throw SchemaError("dangling component");
    if (B.src(c) != t.source.ob[o] || B.tgt(c) != t.target.ob[o])
      return Report::bad({{"kind", "component-endpoints"}, {"object", o}},
                         "component has wrong endpoints", r.checks);
  }
  for (int a = 0; a < A.n_arrows(); ++a) {
    ++r.checks;
    int left = B.compose(t.components[A.tgt(a)], t.source.ar[a]);
    int right = B.compose(t.target.ar[a], t.components[A.src(a)]);
    if (left != right || left < 0)
      return Report::bad({{"kind", "naturality"}, {"arrow", a}},
                         "naturality square does not commute", r.checks);
  }
  return r;
}

Functor identity_functor(CatPtr C) {
  Functor f;
  f.dom = f.cod = C;
  f.ob.resize(C->n_obj);
  std::iota(f.ob.begin(), f.ob.end(), 0);
  f.ar.resize(C->n_arrows());
  std::iota(f.ar.begin(), f.ar.end(), 0);
  return f;
}

Functor compose_functors(const Functor& G, const Functor& F) {
  if (F.cod != G.dom) throw PreconditionError("functor composition: cod/dom mismatch");
  Functor h;
  h.dom = F.dom;
  h.cod = G.cod;
  h.ob.reserve(F.ob.size());
  for (int o : F.ob) h.ob.push_back(G.ob[o]);
  h.ar.reserve(F.ar.size());
  for (int a : F.ar) h.ar.push_back(G.ar[a]);
  return h;
}

bool functor_equal(const Functor& F, const Functor& G) {
  return F.dom == G.dom && F.cod == G.cod && F.ob == G.ob && F.ar == G.ar;
}

// ---- pullbacks -----------------------------------------------------------

int PullbackResult::obj_index(int a, int b) const {
  auto it = obj_idx_.find(pair_key(a, b));
  return it == obj_idx_.end() ? -1 : it->second;
}
int PullbackResult::arr_index(int a, int b) const {
  auto it = arr_idx_.find(pair_key(a, b));
  return it == arr_idx_.end() ? -1 : it->second;
}

namespace {
// Shared lookup state for the composer of a pullback category.
struct PbShared {
  CatPtr A, B;
  std::vector<std::pair<int, int>> arr_pairs;
  std::unordered_map<std::uint64_t, int> arr_idx;
};
}  // namespace

PullbackResult pullback_category(const Functor& F, const Functor& G) {
  if (F.cod != G.cod) throw PreconditionError("pullback: functors have different codomains");
  const auto& A = *F.dom;
  const auto& B = *G.dom;
  PullbackResult res;
  auto shared = std::make_shared<PbShared>();
  shared->A = F.dom;
  shared->B = G.dom;

  CatBuilder bld;
  // Objects: pairs agreeing in the codomain, grouped by image for speed.
  std::unordered_map<int, std::vector<int>> b_obj_by_img, b_arr_by_img;
  for (int b = 0; b < B.n_obj; ++b) b_obj_by_img[G.ob[b]].push_back(b);
  for (int b = 0; b < B.n_arrows(); ++b) b_arr_by_img[G.ar[b]].push_back(b);
  for (int a = 0; a < A.n_obj; ++a) {
    auto it = b_obj_by_img.find(F.ob[a]);
    if (it == b_obj_by_img.end()) continue;
    for (int b : it->second) {
      res.obj_idx_[pair_key(a, b)] = bld.add_object();
      res.obj_pairs.emplace_back(a, b);
    }
  }
  for (int u = 0; u < A.n_arrows(); ++u) {
    auto it = b_arr_by_img.find(F.ar[u]);
    if (it == b_arr_by_img.end()) continue;
    for (int v : it->second) {
      int s = res.obj_index(A.src(u), B.src(v));
      int t = res.obj_index(A.tgt(u), B.tgt(v));
      int id = bld.add_arrow(s, t);
      res.arr_idx_[pair_key(u, v)] = id;
      res.arr_pairs.emplace_back(u, v);
      if (A.is_id(u) && B.is_id(v)) bld.set_identity(s, id);
    }
  }
  shared->arr_pairs = res.arr_pairs;
  shared->arr_idx = res.arr_idx_;
  bld.c.composer = [shared](const FinCategory&, int g, int f) -> int {
    auto [gu, gv] = shared->arr_pairs[g];
    auto [fu, fv] = shared->arr_pairs[f];
    int u = shared->A->compose(gu, fu);
    int v = shared->B->compose(gv, fv);
    if (u < 0 || v < 0) return -1;
    auto it = shared->arr_idx.find(pair_key(u, v));
    return it == shared->arr_idx.end() ? -1 : it->second;
  };
  res.P = bld.freeze();

  res.p1.dom = res.p2.dom = res.P;
  res.p1.cod = F.dom;
  res.p2.cod = G.dom;
  for (auto& [a, b] : res.obj_pairs) {
    res.p1.ob.push_back(a);
    res.p2.ob.push_back(b);
  }
  for (auto& [u, v] : res.arr_pairs) {
    res.p1.ar.push_back(u);
    res.p2.ar.push_back(v);
  }
  return res;
}

Report pullback_universal_property(const Functor& F, const Functor& G,
                                   const PullbackResult& pb, int max_size) {
  Report r;
  std::vector<CatPtr> shapes = {terminal_category(), walking_arrow(),
                                discrete_category(2), chain_category(3)};
  // span shape . <- . -> .  and parallel pair
  {
    CatBuilder b;
    int x = b.add_object(), y = b.add_object(), z = b.add_object();
    b.add_arrow(y, x);
    b.add_arrow(y, z);
    shapes.push_back(b.freeze());
  }
  {
    CatBuilder b;
    int x = b.add_object(), y = b.add_object();
    b.add_arrow(x, y);
    b.add_arrow(x, y);
    shapes.push_back(b.freeze());
  }
  for (const auto& T : shapes) {
    if (T->n_obj > max_size) continue;
    auto toA = all_functors(T, F.dom);
    auto toB = all_functors(T, G.dom);
    auto toP = all_functors(T, pb.P);
    for (const auto& s1 : toA) {
      auto fs1 = compose_functors(F, s1);
      for (const auto& s2 : toB) {
        if (!functor_equal(fs1, compose_functors(G, s2))) continue;
        ++r.checks;
        int found = 0;
        for (const auto& m : toP) {
          if (functor_equal(compose_functors(pb.p1, m), s1) &&
              functor_equal(compose_functors(pb.p2, m), s2))
            ++found;
        }
        if (found != 1)
          return Report::bad({{"kind", "universal-property"},
                              {"shape_objects", T->n_obj},
                              {"mediators", found}},
                             "cone with wrong number of mediating functors",
                             r.checks);
      }
    }
  }
  r.witness = {{"cones_checked", r.checks}};
  return r;
}

// ---- arrow category ------------------------------------------------------

namespace {
struct SqShared {
  CatPtr C;
  std::vector<int> obj_arrow;
  std::vector<std::pair<int, int>> arr_legs;
  std::vector<std::pair<int, int>> arr_ends;  // (source obj, target obj) of each square
  std::unordered_map<Key4, int, Key4Hash> arr_idx;
};
}  // namespace

int ArrowCatResult::square(int f, int g, int left, int right) const {
  auto it = arr_idx.find(Key4{{f, g, left, right}});
  return it == arr_idx.end() ? -1 : it->second;
}

ArrowCatResult arrow_category(CatPtr C) {
  const auto& c = *C;
  ArrowCatResult res;
  auto shared = std::make_shared<SqShared>();
  shared->C = C;
  CatBuilder bld;
  for (int f = 0; f < c.n_arrows(); ++f) {
    bld.add_object();
    res.obj_arrow.push_back(f);
  }
  shared->obj_arrow = res.obj_arrow;
  for (int f = 0; f < c.n_arrows(); ++f) {
    for (int l : c.arrows_from(c.src(f))) {
      for (int g : c.arrows_from(c.tgt(l))) {
        // square f -> g with top leg l needs a bottom leg r: tgt f -> tgt g
        // such that g∘l = r∘f.
        int gl = c.compose(g, l);
        for (int r : c.hom(c.tgt(f), c.tgt(g))) {
          if (c.compose(r, f) != gl) continue;
          int id = bld.add_arrow(f, g);
          res.arr_legs.emplace_back(l, r);
          shared->arr_ends.emplace_back(f, g);
          res.arr_idx[Key4{{f, g, l, r}}] = id;
          if (f == g && c.is_id(l) && c.is_id(r)) bld.set_identity(f, id);
        }
      }
    }
  }
  shared->arr_legs = res.arr_legs;
  shared->arr_idx = res.arr_idx;
  bld.c.composer = [shared](const FinCategory&, int b, int a) -> int {
    auto [l1, r1] = shared->arr_legs[a];
    auto [l2, r2] = shared->arr_legs[b];
    int l = shared->C->compose(l2, l1);
    int r = shared->C->compose(r2, r1);
    if (l < 0 || r < 0) return -1;
    auto it = shared->arr_idx.find(
        Key4{{shared->arr_ends[a].first, shared->arr_ends[b].second, l, r}});
    return it == shared->arr_idx.end() ? -1 : it->second;
  };
  res.C2 = bld.freeze();

  res.dom.dom = res.cod.dom = res.C2;
  res.dom.cod = res.cod.cod = C;
  for (int f : res.obj_arrow) {
    res.dom.ob.push_back(c.src(f));
    res.cod.ob.push_back(c.tgt(f));
  }
  for (auto& [l, r] : res.arr_legs) {
    res.dom.ar.push_back(l);
    res.cod.ar.push_back(r);
  }
  return res;
}

// ---- shapes --------------------------------------------------------------

CatPtr terminal_category() {
  CatBuilder b;
  b.add_object("*");
  return b.freeze();
}

CatPtr walking_arrow() {
  CatBuilder b;
  int x = b.add_object("0"), y = b.add_object("1");
  b.add_arrow(x, y, "f");
  return b.freeze();
}

CatPtr discrete_category(int n) {
  CatBuilder b;
  for (int i = 0; i < n; ++i) b.add_object(std::to_string(i));
  return b.freeze();
}

CatPtr opposite_category(CatPtr C) {
  FinCategory op;
  op.n_obj = C->n_obj;
  op.idn = C->idn;
  op.obj_name = C->obj_name;
  op.arr_name = C->arr_name;
  op.arr.reserve(C->n_arrows());
  for (const auto& a : C->arr) op.arr.push_back({a.tgt, a.src});
  if (C->composer || !C->comp_table.empty()) {
    op.composer = [C](const FinCategory&, int g, int f) { return C->compose(f, g); };
  }
  return std::make_shared<FinCategory>(std::move(op));
}

Functor opposite_functor(const Functor& F) {
  Functor op;
  op.dom = opposite_category(F.dom);
  op.cod = opposite_category(F.cod);
  op.ob = F.ob;
  op.ar = F.ar;
  return op;
}

ProductResult product_category(CatPtr A, CatPtr B) {
  // Product = pullback over the terminal category.
  auto t = terminal_category();
  Functor fa, fb;
  fa.dom = A;
  fa.cod = t;
  fa.ob.assign(A->n_obj, 0);
  fa.ar.assign(A->n_arrows(), t->id(0));
  fb.dom = B;
  fb.cod = t;
  fb.ob.assign(B->n_obj, 0);
  fb.ar.assign(B->n_arrows(), t->id(0));
  auto pb = pullback_category(fa, fb);
  ProductResult res;
  res.P = pb.P;
  res.p1 = pb.p1;
  res.p2 = pb.p2;
  res.obj_pairs = pb.obj_pairs;
  res.arr_pairs = pb.arr_pairs;
  return res;
}

CatPtr poset_category(int n, const std::vector<std::pair<int, int>>& le) {
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) rel[i][i] = 1;
  for (auto& [a, b] : le) rel[a][b] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (rel[i][k])
        for (int j = 0; j < n; ++j)
          if (rel[k][j]) rel[i][j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && rel[i][j] && rel[j][i])
        throw PreconditionError("poset relation has a cycle");
  CatBuilder b;
  std::vector<std::vector<int>> arrow_of(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) b.add_object(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rel[i][j]) {
        arrow_of[i][j] = b.add_arrow(i, j);
        if (i == j) b.set_identity(i, arrow_of[i][j]);
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rel[i][j])
        for (int k = 0; k < n; ++k)
          if (rel[j][k]) b.set_comp(arrow_of[j][k], arrow_of[i][j], arrow_of[i][k]);
  return b.freeze();
}

CatPtr chain_category(int n) {
  std::vector<std::pair<int, int>> le;
  for (int i = 0; i + 1 < n; ++i) le.emplace_back(i, i + 1);
  return poset_category(n, le);
}

CatPtr divisor_lattice(int n) {
  std::vector<int> divs;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);
  int m = static_cast<int>(divs.size());
  std::vector<std::pair<int, int>> le;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (divs[j] % divs[i] == 0) le.emplace_back(i, j);
  auto c = poset_category(m, le);
  auto mut = std::make_shared<FinCategory>(*c);
  for (int i = 0; i < m; ++i) mut->obj_name[i] = std::to_string(divs[i]);
  return mut;
}

CatPtr random_poset(std::uint64_t seed, int n, int extra_edges) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> le;
  for (int i = 0; i + 1 < n; ++i)
    if (rng() % 2) le.emplace_back(i, i + 1);
  std::uniform_int_distribution<int> pick(0, std::max(0, n - 1));
  for (int e = 0; e < extra_edges; ++e) {
    int a = pick(rng), b = pick(rng);
    if (a < b) le.emplace_back(a, b);
  }
  return poset_category(n, le);
}

bool is_poset(const FinCategory& C) {
  for (int a = 0; a < C.n_obj; ++a)
    for (int b = 0; b < C.n_obj; ++b) {
      if (C.hom(a, b).size() > 1) return false;
      if (a != b && !C.hom(a, b).empty() && !C.hom(b, a).empty()) return false;
    }
  return true;
}

int poset_meet(const FinCategory& C, int a, int b) {
  std::vector<int> lb;
  for (int c = 0; c < C.n_obj; ++c)
    if (!C.hom(c, a).empty() && !C.hom(c, b).empty()) lb.push_back(c);
  for (int m : lb) {
    bool greatest = true;
    for (int c : lb)
      if (C.hom(c, m).empty()) {
        greatest = false;
        break;
      }
    if (greatest) return m;
  }
  return -1;
}

// ---- functor enumeration -------------------------------------------------

namespace {

void enumerate_arrows(const FinCategory& A, const FinCategory& B, Functor& f,
                      const std::vector<int>& free_arrows, std::size_t i,
                      std::vector<Functor>& out, long long cap, bool& capped) {
  if (cap >= 0 && static_cast<long long>(out.size()) >= cap) {
    capped = true;
    return;
  }
  if (i == free_arrows.size()) {
    // Verify composition on all composable pairs.
    for (int x = 0; x < A.n_arrows(); ++x)
      for (int g : A.arrows_from(A.tgt(x))) {
        int gx = A.compose(g, x);
        if (gx < 0) return;
        if (f.ar[gx] != B.compose(f.ar[g], f.ar[x])) return;
      }
    out.push_back(f);
    return;
  }
  int a = free_arrows[i];
  for (int img : B.hom(f.ob[A.src(a)], f.ob[A.tgt(a)])) {
    f.ar[a] = img;
    enumerate_arrows(A, B, f, free_arrows, i + 1, out, cap, capped);
    if (capped) return;
  }
}

void enumerate_objects(CatPtr Ap, CatPtr Bp, Functor& f, int o,
                       std::vector<Functor>& out, long long cap, bool& capped) {
  const auto& A = *Ap;
  const auto& B = *Bp;
  if (o == A.n_obj) {
    std::vector<int> free_arrows;
    for (int a = 0; a < A.n_arrows(); ++a) {
      if (A.is_id(a))
        f.ar[a] = B.id(f.ob[A.src(a)]);
      else
        free_arrows.push_back(a);
    }
    enumerate_arrows(A, B, f, free_arrows, 0, out, cap, capped);
    return;
  }
  for (int img = 0; img < B.n_obj; ++img) {
    f.ob[o] = img;
    enumerate_objects(Ap, Bp, f, o + 1, out, cap, capped);
    if (capped) return;
  }
}

}  // namespace

std::vector<Functor> all_functors(CatPtr A, CatPtr B, long long cap) {
  std::vector<Functor> out;
  Functor f;
  f.dom = A;
  f.cod = B;
  f.ob.assign(A->n_obj, 0);
  f.ar.assign(A->n_arrows(), 0);
  bool capped = false;
  if (B->n_obj == 0) {
    if (A->n_obj == 0) out.push_back(f);
    return out;
  }
  enumerate_objects(A, B, f, 0, out, cap, capped);
  return out;
}

}  // namespace catkit::fincat
