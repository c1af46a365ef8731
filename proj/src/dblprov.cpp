#include <algorithm>

#include "catkit/dblcat.hpp"

namespace catkit::dbl {

using fincat::FinCategory;

namespace {

void put(std::string& s, int x) { s.append(reinterpret_cast<const char*>(&x), 4); }

std::string pk(std::initializer_list<int> head, const std::vector<int>* a = nullptr,
               const std::vector<int>* b = nullptr, const std::vector<int>* c = nullptr) {
  std::string s;
  for (int x : head) put(s, x);
  for (const auto* v : {a, b, c}) {
    if (!v) continue;
    put(s, -7);  // separator guards against ambiguous concatenation
    for (int x : *v) put(s, x);
  }
  return s;
}

std::string pk_pairs(int a, int b, const std::vector<std::pair<int, int>>& el) {
  std::string s;
  put(s, a);
  put(s, b);
  for (auto& [x, y] : el) {
    put(s, x);
    put(s, y);
  }
  return s;
}

// The skeletal category of finite sets [0..max_set] and all functions.
struct FinSetWindow {
  CatPtr cat;
  std::vector<std::vector<int>> fun;
  std::unordered_map<std::uint64_t, std::unordered_map<std::string, int>> idx;
  int arrow(int a, int b, const std::vector<int>& f) const {
    auto it = idx.find(pair_key(a, b));
    if (it == idx.end()) return -1;
    auto jt = it->second.find(pk({}, &f));
    return jt == it->second.end() ? -1 : jt->second;
  }
};

FinSetWindow build_finset(int max_set) {
  FinSetWindow W;
  auto C = std::make_shared<FinCategory>();
  C->n_obj = max_set + 1;
  C->idn.assign(C->n_obj, -1);
  for (int a = 0; a <= max_set; ++a)
    for (int b = 0; b <= max_set; ++b) {
      if (b == 0 && a > 0) continue;
      std::vector<int> g(a, 0);
      while (true) {
        int id = C->n_arrows();
        C->arr.push_back({a, b});
        W.fun.push_back(g);
        W.idx[pair_key(a, b)][pk({}, &g)] = id;
        if (a == b) {
          bool ident = true;
          for (int i = 0; i < a; ++i) ident = ident && g[i] == i;
          if (ident) C->idn[a] = id;
        }
        int i = a - 1;
        while (i >= 0 && g[i] == b - 1) g[i--] = 0;
        if (i < 0) break;
        ++g[i];
      }
    }
  for (int f = 0; f < C->n_arrows(); ++f)
    for (int g = 0; g < C->n_arrows(); ++g) {
      if (C->arr[f].tgt != C->arr[g].src) continue;
      std::vector<int> h(C->arr[f].src);
      for (size_t i = 0; i < h.size(); ++i) h[i] = W.fun[g][W.fun[f][i]];
      C->set_comp(g, f, W.idx[pair_key(C->arr[f].src, C->arr[g].tgt)][pk({}, &h)]);
    }
  W.cat = CatPtr(C);
  return W;
}

std::vector<int> iota_vec(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

// ---- span window ---------------------------------------------------------

int SpanWindowData::span_index(int a, int b,
                               const std::vector<std::pair<int, int>>& el) const {
  auto it = span_idx_.find(pk_pairs(a, b, el));
  return it == span_idx_.end() ? -1 : it->second;
}

int SpanWindowData::cell_index(int m, int n, const std::vector<int>& u,
                               const std::vector<int>& v,
                               const std::vector<int>& w) const {
  auto it = cell_idx_.find(pk({m, n}, &u, &v, &w));
  return it == cell_idx_.end() ? -1 : it->second;
}

int SpanWindowData::fun_arrow(int a, int b, const std::vector<int>& f) const {
  auto it = fun_idx.find(pair_key(a, b));
  if (it == fun_idx.end()) return -1;
  auto jt = it->second.find(pk({}, &f));
  return jt == it->second.end() ? -1 : jt->second;
}

SpanWindowData::Composite SpanWindowData::compose_spans(int m, int n) const {
  const Span& M = spans[m];
  const Span& N = spans[n];
  Composite out;
  if (M.b != N.a) return out;
  struct Row {
    std::pair<int, int> val;
    int i, j;
  };
  std::vector<Row> rows;
  for (int i = 0; i < static_cast<int>(M.el.size()); ++i)
    for (int j = 0; j < static_cast<int>(N.el.size()); ++j)
      if (M.el[i].second == N.el[j].first)
        rows.push_back({{M.el[i].first, N.el[j].second}, i, j});
  if (static_cast<int>(rows.size()) > max_apex) return out;
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return std::tie(x.val, x.i, x.j) < std::tie(y.val, y.i, y.j);
  });
  std::vector<std::pair<int, int>> el;
  for (auto& rw : rows) {
    el.push_back(rw.val);
    out.pairs.push_back({rw.i, rw.j});
  }
  out.obj = span_index(M.a, N.b, el);
  return out;
}

SpanWindowPtr span_window(int max_set, int max_apex) {
  auto W = std::make_shared<SpanWindowData>();
  W->max_set = max_set;
  W->max_apex = max_apex;
  auto FS = build_finset(max_set);
  W->fin = FS.cat;
  W->fun = FS.fun;
  W->fun_idx = FS.idx;

  // spans: sorted multisets of (left, right) pairs of size <= max_apex
  for (int a = 0; a <= max_set; ++a)
    for (int b = 0; b <= max_set; ++b) {
      std::vector<std::pair<int, int>> el;
      auto emit = [&]() {
        int id = static_cast<int>(W->spans.size());
        W->spans.push_back({a, b, el});
        W->span_idx_[pk_pairs(a, b, el)] = id;
      };
      std::function<void(int)> rec = [&](int minrank) {
        emit();
        if (static_cast<int>(el.size()) == max_apex) return;
        for (int rk = minrank; rk < a * b; ++rk) {
          el.push_back({rk / b, rk % b});
          rec(rk);
          el.pop_back();
        }
      };
      rec(0);
    }

  // cells: (u, v) on the feet plus a compatible apex map
  for (int m = 0; m < static_cast<int>(W->spans.size()); ++m) {
    const auto& M = W->spans[m];
    for (int n = 0; n < static_cast<int>(W->spans.size()); ++n) {
      const auto& N = W->spans[n];
      for (int ua : W->fin->hom(M.a, N.a))
        for (int va : W->fin->hom(M.b, N.b)) {
          const auto& u = W->fun[ua];
          const auto& v = W->fun[va];
          // candidate target positions per apex element
          std::vector<std::vector<int>> cand(M.el.size());
          bool dead = false;
          for (size_t i = 0; i < M.el.size() && !dead; ++i) {
            std::pair<int, int> want{u[M.el[i].first], v[M.el[i].second]};
            for (size_t j = 0; j < N.el.size(); ++j)
              if (N.el[j] == want) cand[i].push_back(static_cast<int>(j));
            dead = cand[i].empty();
          }
          if (dead) continue;
          std::vector<int> w(M.el.size(), 0);
          std::function<void(size_t)> rec = [&](size_t i) {
            if (i == M.el.size()) {
              int id = static_cast<int>(W->cells.size());
              W->cells.push_back({m, n, u, v, w});
              W->cell_idx_[pk({m, n}, &u, &v, &w)] = id;
              return;
            }
            for (int j : cand[i]) {
              w[i] = j;
              rec(i + 1);
            }
          };
          rec(0);
        }
    }
  }

  auto E1 = std::make_shared<FinCategory>();
  E1->n_obj = static_cast<int>(W->spans.size());
  E1->idn.assign(E1->n_obj, -1);
  for (const auto& c : W->cells) E1->arr.push_back({c.m, c.n});
  for (int m = 0; m < E1->n_obj; ++m) {
    const auto& M = W->spans[m];
    auto w = iota_vec(static_cast<int>(M.el.size()));
    E1->idn[m] = W->cell_index(m, m, iota_vec(M.a), iota_vec(M.b), w);
  }
  const SpanWindowData* wp = W.get();
  E1->composer = [wp](const FinCategory&, int c2, int c1) {
    const auto& A = wp->cells[c1];
    const auto& B = wp->cells[c2];
    std::vector<int> u(A.u.size()), v(A.v.size()), w(A.w.size());
    for (size_t i = 0; i < u.size(); ++i) u[i] = B.u[A.u[i]];
    for (size_t i = 0; i < v.size(); ++i) v[i] = B.v[A.v[i]];
    for (size_t i = 0; i < w.size(); ++i) w[i] = B.w[A.w[i]];
    return wp->cell_index(A.m, B.n, u, v, w);
  };

  auto D = std::make_shared<PseudoDoubleCategory>();
  D->E0 = W->fin;
  D->E1 = CatPtr(E1);
  D->total = false;
  D->name = "span";
  D->src.dom = D->E1;
  D->src.cod = D->E0;
  D->tgt = D->src;
  for (const auto& S : W->spans) {
    D->src.ob.push_back(S.a);
    D->tgt.ob.push_back(S.b);
  }
  for (const auto& c : W->cells) {
    D->src.ar.push_back(W->fun_arrow(W->spans[c.m].a, W->spans[c.n].a, c.u));
    D->tgt.ar.push_back(W->fun_arrow(W->spans[c.m].b, W->spans[c.n].b, c.v));
  }
  D->unit.dom = D->E0;
  D->unit.cod = D->E1;
  for (int a = 0; a <= max_set; ++a) {
    std::vector<std::pair<int, int>> el;
    for (int i = 0; i < a; ++i) el.push_back({i, i});
    D->unit.ob.push_back(W->span_index(a, a, el));
  }
  for (int f = 0; f < W->fin->n_arrows(); ++f) {
    int a = W->fin->src(f), b = W->fin->tgt(f);
    const auto& g = W->fun[f];
    D->unit.ar.push_back(W->cell_index(D->unit.ob[a], D->unit.ob[b], g, g, g));
  }
  D->tensor.obj = [wp](int m, int n) { return wp->compose_spans(m, n).obj; };
  D->tensor.cell = [wp](int c1, int c2) {
    const auto& A = wp->cells[c1];
    const auto& B = wp->cells[c2];
    auto dom = wp->compose_spans(A.m, B.m);
    if (dom.obj < 0) return -1;
    auto cod = wp->compose_spans(A.n, B.n);
    if (cod.obj < 0) return -1;
    std::vector<int> w(dom.pairs.size());
    for (size_t e = 0; e < dom.pairs.size(); ++e) {
      std::pair<int, int> want{A.w[dom.pairs[e].first], B.w[dom.pairs[e].second]};
      int pos = -1;
      for (size_t ee = 0; ee < cod.pairs.size(); ++ee)
        if (cod.pairs[ee] == want) {
          pos = static_cast<int>(ee);
          break;
        }
      if (pos < 0) return -1;
      w[e] = pos;
    }
    return wp->cell_index(dom.obj, cod.obj, A.u, B.v, w);
  };
  D->assoc = [wp](int m, int n, int p) {
    auto mn = wp->compose_spans(m, n);
    if (mn.obj < 0) return -1;
    auto np = wp->compose_spans(n, p);
    if (np.obj < 0) return -1;
    auto l = wp->compose_spans(mn.obj, p);
    auto r = wp->compose_spans(m, np.obj);
    if (l.obj < 0 || r.obj < 0) return -1;
    // match elements through the underlying triples (i, j, k)
    std::vector<int> w(l.pairs.size());
    for (size_t e = 0; e < l.pairs.size(); ++e) {
      auto [e12, k] = l.pairs[e];
      auto [i, j] = mn.pairs[e12];
      int pos = -1;
      for (size_t ee = 0; ee < r.pairs.size(); ++ee) {
        auto [i2, e23] = r.pairs[ee];
        if (i2 == i && np.pairs[e23] == std::pair<int, int>{j, k}) {
          pos = static_cast<int>(ee);
          break;
        }
      }
      if (pos < 0) return -1;
      w[e] = pos;
    }
    const auto& L = wp->spans[l.obj];
    return wp->cell_index(l.obj, r.obj, iota_vec(L.a), iota_vec(L.b), w);
  };
  W->D = D;
  return W;
}

// ---- rel window ----------------------------------------------------------

int RelWindowData::rel_index(int a, int b,
                             const std::vector<std::pair<int, int>>& el) const {
  auto it = rel_idx_.find(pk_pairs(a, b, el));
  return it == rel_idx_.end() ? -1 : it->second;
}

int RelWindowData::cell_index(int m, int n, const std::vector<int>& u,
                              const std::vector<int>& v) const {
  auto it = cell_idx_.find(pk({m, n}, &u, &v));
  return it == cell_idx_.end() ? -1 : it->second;
}

RelWindowPtr rel_window(int max_set) {
  auto W = std::make_shared<RelWindowData>();
  W->max_set = max_set;
  auto FS = build_finset(max_set);
  W->fin = FS.cat;
  W->fun = FS.fun;

  for (int a = 0; a <= max_set; ++a)
    for (int b = 0; b <= max_set; ++b) {
      int nbits = a * b;
      for (int mask = 0; mask < (1 << nbits); ++mask) {
        std::vector<std::pair<int, int>> el;
        for (int rk = 0; rk < nbits; ++rk)
          if (mask & (1 << rk)) el.push_back({rk / b, rk % b});
        int id = static_cast<int>(W->rels.size());
        W->rels.push_back({a, b, el});
        W->rel_idx_[pk_pairs(a, b, el)] = id;
      }
    }

  auto holds = [W](int rel, int x, int y) {
    const auto& el = W->rels[rel].el;
    return std::find(el.begin(), el.end(), std::pair<int, int>{x, y}) != el.end();
  };
  for (int m = 0; m < static_cast<int>(W->rels.size()); ++m)
    for (int n = 0; n < static_cast<int>(W->rels.size()); ++n) {
      const auto& M = W->rels[m];
      const auto& N = W->rels[n];
      for (int ua : W->fin->hom(M.a, N.a))
        for (int va : W->fin->hom(M.b, N.b)) {
          const auto& u = W->fun[ua];
          const auto& v = W->fun[va];
          bool ok = true;
          for (auto& [x, y] : M.el) ok = ok && holds(n, u[x], v[y]);
          if (!ok) continue;
          int id = static_cast<int>(W->cells.size());
          W->cells.push_back({m, n, u, v});
          W->cell_idx_[pk({m, n}, &u, &v)] = id;
        }
    }

  auto E1 = std::make_shared<FinCategory>();
  E1->n_obj = static_cast<int>(W->rels.size());
  E1->idn.assign(E1->n_obj, -1);
  for (const auto& c : W->cells) E1->arr.push_back({c.m, c.n});
  for (int m = 0; m < E1->n_obj; ++m)
    E1->idn[m] =
        W->cell_index(m, m, iota_vec(W->rels[m].a), iota_vec(W->rels[m].b));
  const RelWindowData* wp = W.get();
  E1->composer = [wp](const FinCategory&, int c2, int c1) {
    const auto& A = wp->cells[c1];
    const auto& B = wp->cells[c2];
    std::vector<int> u(A.u.size()), v(A.v.size());
    for (size_t i = 0; i < u.size(); ++i) u[i] = B.u[A.u[i]];
    for (size_t i = 0; i < v.size(); ++i) v[i] = B.v[A.v[i]];
    return wp->cell_index(A.m, B.n, u, v);
  };

  auto D = std::make_shared<PseudoDoubleCategory>();
  D->E0 = W->fin;
  D->E1 = CatPtr(E1);
  D->total = true;
  D->name = "rel";
  D->src.dom = D->E1;
  D->src.cod = D->E0;
  D->tgt = D->src;
  for (const auto& Rr : W->rels) {
    D->src.ob.push_back(Rr.a);
    D->tgt.ob.push_back(Rr.b);
  }
  for (const auto& c : W->cells) {
    D->src.ar.push_back(FS.idx.at(pair_key(W->rels[c.m].a, W->rels[c.n].a))
                            .at(pk({}, &c.u)));
    D->tgt.ar.push_back(FS.idx.at(pair_key(W->rels[c.m].b, W->rels[c.n].b))
                            .at(pk({}, &c.v)));
  }
  D->unit.dom = D->E0;
  D->unit.cod = D->E1;
  for (int a = 0; a <= max_set; ++a) {
    std::vector<std::pair<int, int>> el;
    for (int i = 0; i < a; ++i) el.push_back({i, i});
    D->unit.ob.push_back(W->rel_index(a, a, el));
  }
  for (int f = 0; f < W->fin->n_arrows(); ++f) {
    int a = W->fin->src(f), b = W->fin->tgt(f);
    const auto& g = W->fun[f];
    D->unit.ar.push_back(W->cell_index(D->unit.ob[a], D->unit.ob[b], g, g));
  }
  D->tensor.obj = [wp](int m, int n) {
    const auto& M = wp->rels[m];
    const auto& N = wp->rels[n];
    if (M.b != N.a) return -1;
    std::vector<std::pair<int, int>> el;
    for (auto& [x, y] : M.el)
      for (auto& [y2, z] : N.el)
        if (y == y2) el.push_back({x, z});
    std::sort(el.begin(), el.end());
    el.erase(std::unique(el.begin(), el.end()), el.end());
    return wp->rel_index(M.a, N.b, el);
  };
  auto Dp = D.get();
  D->tensor.cell = [wp, Dp](int c1, int c2) {
    const auto& A = wp->cells[c1];
    const auto& B = wp->cells[c2];
    int dom = Dp->tensor.obj(A.m, B.m), cod = Dp->tensor.obj(A.n, B.n);
    if (dom < 0 || cod < 0) return -1;
    return wp->cell_index(dom, cod, A.u, B.v);
  };
  D->assoc = strict_associator(D.get());
  W->D = D;
  return W;
}

// ---- image functor -------------------------------------------------------

ImageResult image_functor(int max_set, int max_apex) {
  ImageResult R;
  R.span = span_window(max_set, max_apex);
  R.rel = rel_window(max_set);
  const auto& S = *R.span;
  const auto& L = *R.rel;

  DoubleFunctor F;
  F.dom = S.D;
  F.cod = L.D;
  F.F0.dom = S.fin;
  F.F0.cod = L.fin;
  for (int o = 0; o < S.fin->n_obj; ++o) F.F0.ob.push_back(o);
  for (int f = 0; f < S.fin->n_arrows(); ++f) {
    // the two window categories of sets are built identically
    F.F0.ar.push_back(f);
    if (L.fun[f] != S.fun[f])
      throw SchemaError("set windows out of sync");
  }
  F.F1.dom = S.D->E1;
  F.F1.cod = L.D->E1;
  for (const auto& sp : S.spans) {
    auto el = sp.el;
    std::sort(el.begin(), el.end());
    el.erase(std::unique(el.begin(), el.end()), el.end());
    F.F1.ob.push_back(L.rel_index(sp.a, sp.b, el));
  }
  for (const auto& c : S.cells)
    F.F1.ar.push_back(L.cell_index(F.F1.ob[c.m], F.F1.ob[c.n], c.u, c.v));
  F.flavor = DoubleFunctor::Flavor::strict;
  R.im = F;
  return R;
}

// ---- fam window ----------------------------------------------------------

int FamWindowData::obj_index(int I, const std::vector<int>& fam) const {
  auto it = obj_idx_.find(pk({I}, &fam));
  return it == obj_idx_.end() ? -1 : it->second;
}
int FamWindowData::arr_index(int h, const std::vector<int>& comp) const {
  auto it = arr_idx_.find(pk({h}, &comp));
  return it == arr_idx_.end() ? -1 : it->second;
}
int FamWindowData::pro_index(int m, int X, int Y, const std::vector<int>& theta) const {
  auto it = pro_idx_.find(pk({m, X, Y}, &theta));
  return it == pro_idx_.end() ? -1 : it->second;
}
int FamWindowData::cell_index(int c, int P, int Q, const std::vector<int>& alpha,
                              const std::vector<int>& beta) const {
  auto it = cell_idx_.find(pk({c, P, Q}, &alpha, &beta));
  return it == cell_idx_.end() ? -1 : it->second;
}

FamWindowPtr fam_window(CatPtr C, int max_index) {
  auto W = std::make_shared<FamWindowData>();
  W->C = C;
  W->max_index = max_index;
  W->base = span_window(max_index, max_index);
  const SpanWindowData& B = *W->base;

  // all families over small index sets; all pairwise products via DFS
  auto families = [&](int I) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(I, 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == I) {
        out.push_back(cur);
        return;
      }
      for (int o = 0; o < C->n_obj; ++o) {
        cur[i] = o;
        rec(i + 1);
      }
    };
    rec(0);
    return out;
  };
  for (int I = 0; I <= max_index; ++I)
    for (auto& fam : families(I)) {
      int id = static_cast<int>(W->objs.size());
      W->objs.push_back({I, fam});
      W->obj_idx_[pk({I}, &fam)] = id;
    }

  // arrows of the family category
  auto fam0 = std::make_shared<FinCategory>();
  fam0->n_obj = static_cast<int>(W->objs.size());
  fam0->idn.assign(fam0->n_obj, -1);
  std::unordered_map<std::string, int> arr_endpoint_idx;  // (X, Y, h, comp) -> arrow
  for (int X = 0; X < fam0->n_obj; ++X)
    for (int Y = 0; Y < fam0->n_obj; ++Y) {
      const auto& FX = W->objs[X];
      const auto& FY = W->objs[Y];
      for (int h : B.fin->hom(FX.I, FY.I)) {
        const auto& hg = B.fun[h];
        std::vector<int> comp(FX.I, -1);
        std::function<void(int)> rec = [&](int i) {
          if (i == FX.I) {
            int id = static_cast<int>(W->arrs.size());
            W->arrs.push_back({h, comp});
            fam0->arr.push_back({X, Y});
            arr_endpoint_idx[pk({X, Y, h}, &comp)] = id;
            W->arr_idx_[pk({h}, &comp)] = id;  // may be refined below
            if (X == Y && B.fin->is_id(h)) {
              bool ident = true;
              for (int k = 0; k < FX.I; ++k)
                ident = ident && C->is_id(comp[k]);
              if (ident) fam0->idn[X] = id;
            }
            return;
          }
          for (int f : C->hom(FX.fam[i], FY.fam[hg[i]])) {
            comp[i] = f;
            rec(i + 1);
          }
        };
        rec(0);
      }
    }
  // (h, comp) alone can collide for empty families; use the endpoint-keyed map
  auto arr_of = [&](int X, int Y, int h, const std::vector<int>& comp) {
    auto it = arr_endpoint_idx.find(pk({X, Y, h}, &comp));
    return it == arr_endpoint_idx.end() ? -1 : it->second;
  };
  for (int a = 0; a < fam0->n_arrows(); ++a)
    for (int b = 0; b < fam0->n_arrows(); ++b) {
      if (fam0->arr[a].tgt != fam0->arr[b].src) continue;
      const auto& A = W->arrs[a];
      const auto& Bb = W->arrs[b];
      int h = B.fin->compose(Bb.h, A.h);
      const auto& hg = B.fun[A.h];
      std::vector<int> comp(A.comp.size());
      for (size_t i = 0; i < comp.size(); ++i)
        comp[i] = C->compose(Bb.comp[hg[i]], A.comp[i]);
      fam0->set_comp(b, a, arr_of(fam0->arr[a].src, fam0->arr[b].tgt, h, comp));
    }
  W->fam0 = CatPtr(fam0);

  // proarrows: a span of index sets with a C-arrow per apex element
  for (int m = 0; m < static_cast<int>(B.spans.size()); ++m) {
    const auto& S = B.spans[m];
    for (auto& famX : families(S.a))
      for (auto& famY : families(S.b)) {
        int X = W->obj_index(S.a, famX), Y = W->obj_index(S.b, famY);
        std::vector<int> theta(S.el.size(), -1);
        std::function<void(size_t)> rec = [&](size_t s) {
          if (s == S.el.size()) {
            int id = static_cast<int>(W->pros.size());
            W->pros.push_back({m, X, Y, theta});
            W->pro_idx_[pk({m, X, Y}, &theta)] = id;
            return;
          }
          for (int f : C->hom(famX[S.el[s].first], famY[S.el[s].second])) {
            theta[s] = f;
            rec(s + 1);
          }
        };
        rec(0);
      }
  }

  // cells: a span cell plus leg components subject to the elementwise squares
  for (int P = 0; P < static_cast<int>(W->pros.size()); ++P)
    for (int Q = 0; Q < static_cast<int>(W->pros.size()); ++Q) {
      const auto& PP = W->pros[P];
      const auto& QQ = W->pros[Q];
      const auto& SM = B.spans[PP.m];
      const auto& famX = W->objs[PP.X].fam;
      const auto& famY = W->objs[PP.Y].fam;
      const auto& famZ = W->objs[QQ.X].fam;
      const auto& famW = W->objs[QQ.Y].fam;
      for (int bc : B.D->E1->hom(PP.m, QQ.m)) {
        const auto& BC = B.cells[bc];
        std::vector<int> alpha(famX.size(), -1), beta(famY.size(), -1);
        std::function<void(size_t)> recb = [&](size_t j) {
          if (j == famY.size()) {
            // cocycle: each apex element gives a commuting square in C
            for (size_t s = 0; s < SM.el.size(); ++s) {
              auto [i, jj] = SM.el[s];
              if (C->compose(beta[jj], PP.theta[s]) !=
                  C->compose(QQ.theta[BC.w[s]], alpha[i]))
                return;
            }
            int id = static_cast<int>(W->cells.size());
            W->cells.push_back({bc, P, Q, alpha, beta});
            W->cell_idx_[pk({bc, P, Q}, &alpha, &beta)] = id;
            return;
          }
          for (int f : C->hom(famY[j], famW[BC.v[j]])) {
            beta[j] = f;
            recb(j + 1);
          }
        };
        std::function<void(size_t)> reca = [&](size_t i) {
          if (i == famX.size()) {
            recb(0);
            return;
          }
          for (int f : C->hom(famX[i], famZ[BC.u[i]])) {
            alpha[i] = f;
            reca(i + 1);
          }
        };
        reca(0);
      }
    }

  auto E1 = std::make_shared<FinCategory>();
  E1->n_obj = static_cast<int>(W->pros.size());
  E1->idn.assign(E1->n_obj, -1);
  for (const auto& c : W->cells) E1->arr.push_back({c.P, c.Q});
  for (int P = 0; P < E1->n_obj; ++P) {
    const auto& PP = W->pros[P];
    std::vector<int> alpha, beta;
    for (int o : W->objs[PP.X].fam) alpha.push_back(C->id(o));
    for (int o : W->objs[PP.Y].fam) beta.push_back(C->id(o));
    E1->idn[P] = W->cell_index(B.D->E1->id(PP.m), P, P, alpha, beta);
  }
  const FamWindowData* wp = W.get();
  auto Cc = C;
  E1->composer = [wp, Cc](const FinCategory&, int c2, int c1) {
    const auto& A = wp->cells[c1];
    const auto& Bb = wp->cells[c2];
    int bc = wp->base->D->E1->compose(Bb.c, A.c);
    if (bc < 0) return -1;
    const auto& u1 = wp->base->cells[A.c].u;
    const auto& v1 = wp->base->cells[A.c].v;
    std::vector<int> alpha(A.alpha.size()), beta(A.beta.size());
    for (size_t i = 0; i < alpha.size(); ++i)
      alpha[i] = Cc->compose(Bb.alpha[u1[i]], A.alpha[i]);
    for (size_t i = 0; i < beta.size(); ++i)
      beta[i] = Cc->compose(Bb.beta[v1[i]], A.beta[i]);
    return wp->cell_index(bc, A.P, Bb.Q, alpha, beta);
  };

  auto D = std::make_shared<PseudoDoubleCategory>();
  D->E0 = W->fam0;
  D->E1 = CatPtr(E1);
  D->total = false;
  D->name = "fam";
  D->src.dom = D->E1;
  D->src.cod = D->E0;
  D->tgt = D->src;
  for (const auto& PP : W->pros) {
    D->src.ob.push_back(PP.X);
    D->tgt.ob.push_back(PP.Y);
  }
  for (const auto& c : W->cells) {
    const auto& BC = B.cells[c.c];
    const auto& PP = W->pros[c.P];
    const auto& QQ = W->pros[c.Q];
    int hu = B.fun_arrow(B.spans[PP.m].a, B.spans[QQ.m].a, BC.u);
    int hv = B.fun_arrow(B.spans[PP.m].b, B.spans[QQ.m].b, BC.v);
    D->src.ar.push_back(arr_of(PP.X, QQ.X, hu, c.alpha));
    D->tgt.ar.push_back(arr_of(PP.Y, QQ.Y, hv, c.beta));
  }
  D->unit.dom = D->E0;
  D->unit.cod = D->E1;
  for (int X = 0; X < fam0->n_obj; ++X) {
    const auto& FX = W->objs[X];
    std::vector<int> theta;
    for (int o : FX.fam) theta.push_back(C->id(o));
    D->unit.ob.push_back(W->pro_index(B.D->unit.ob[FX.I], X, X, theta));
  }
  for (int a = 0; a < fam0->n_arrows(); ++a) {
    const auto& A = W->arrs[a];
    int X = fam0->src(a), Y = fam0->tgt(a);
    D->unit.ar.push_back(W->cell_index(B.D->unit.ar[A.h], D->unit.ob[X],
                                       D->unit.ob[Y], A.comp, A.comp));
  }
  D->tensor.obj = [wp, Cc](int P, int Q) {
    const auto& PP = wp->pros[P];
    const auto& QQ = wp->pros[Q];
    if (PP.Y != QQ.X) return -1;
    auto comp = wp->base->compose_spans(PP.m, QQ.m);
    if (comp.obj < 0) return -1;
    std::vector<int> theta(comp.pairs.size());
    for (size_t e = 0; e < comp.pairs.size(); ++e)
      theta[e] = Cc->compose(QQ.theta[comp.pairs[e].second],
                             PP.theta[comp.pairs[e].first]);
    return wp->pro_index(comp.obj, PP.X, QQ.Y, theta);
  };
  auto Dp = D.get();
  D->tensor.cell = [wp, Dp](int c1, int c2) {
    const auto& A = wp->cells[c1];
    const auto& Bb = wp->cells[c2];
    int bc = wp->base->D->tensor.cell(A.c, Bb.c);
    if (bc < 0) return -1;
    int Pd = Dp->tensor.obj(A.P, Bb.P), Qd = Dp->tensor.obj(A.Q, Bb.Q);
    if (Pd < 0 || Qd < 0) return -1;
    return wp->cell_index(bc, Pd, Qd, A.alpha, Bb.beta);
  };
  D->assoc = [wp, Dp, Cc](int P1, int P2, int P3) {
    int a = wp->base->D->assoc(wp->pros[P1].m, wp->pros[P2].m, wp->pros[P3].m);
    if (a < 0) return -1;
    int t12 = Dp->tensor.obj(P1, P2);
    int t23 = Dp->tensor.obj(P2, P3);
    int l = t12 < 0 ? -1 : Dp->tensor.obj(t12, P3);
    int r = t23 < 0 ? -1 : Dp->tensor.obj(P1, t23);
    if (l < 0 || r < 0) return -1;
    std::vector<int> alpha, beta;
    for (int o : wp->objs[wp->pros[l].X].fam) alpha.push_back(Cc->id(o));
    for (int o : wp->objs[wp->pros[l].Y].fam) beta.push_back(Cc->id(o));
    return wp->cell_index(a, l, r, alpha, beta);
  };
  W->D = D;

  // strict projection to the span window
  W->proj.dom = D;
  W->proj.cod = B.D;
  W->proj.F0.dom = W->fam0;
  W->proj.F0.cod = B.fin;
  for (const auto& o : W->objs) W->proj.F0.ob.push_back(o.I);
  for (const auto& a : W->arrs) W->proj.F0.ar.push_back(a.h);
  W->proj.F1.dom = D->E1;
  W->proj.F1.cod = B.D->E1;
  for (const auto& PP : W->pros) W->proj.F1.ob.push_back(PP.m);
  for (const auto& c : W->cells) W->proj.F1.ar.push_back(c.c);
  W->proj.flavor = DoubleFunctor::Flavor::strict;
  return W;
}

// ---- provider dispatch ---------------------------------------------------

DoubleProvider build_provider(const std::string& kind, const json& window) {
  DoubleProvider P;
  P.kind = kind;
  P.window = window;
  auto geti = [&](const char* k, int dflt) {
    return window.contains(k) ? window.at(k).get<int>() : dflt;
  };
  if (kind == "span") {
    P.span = span_window(geti("max_set", 2), geti("max_apex", 4));
    P.D = P.span->D;
  } else if (kind == "rel") {
    P.rel = rel_window(geti("max_set", 2));
    P.D = P.rel->D;
  } else if (kind == "fam") {
    std::string base = window.contains("base") ? window.at("base").get<std::string>()
                                               : "walking_arrow";
    CatPtr C = base == "chain3" ? fincat::chain_category(3) : fincat::walking_arrow();
    P.fam = fam_window(C, geti("max_index", 2));
    P.D = P.fam->D;
  } else if (kind == "monoidal") {
    int n = geti("n", 2);
    std::vector<std::vector<int>> mult(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mult[i][j] = (i + j) % n;
    P.D = monoid_as_double(n, mult, 0);
  } else {
    throw SchemaError("unknown provider kind: " + kind);
  }
  return P;
}

}  // namespace catkit::dbl
