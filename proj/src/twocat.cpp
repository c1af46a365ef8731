#include "catkit/twocat.hpp"

#include <algorithm>
#include <numeric>

namespace catkit::twocat {

using fincat::CatBuilder;
using fincat::FinCategory;

// ---- Fin2Category --------------------------------------------------------

void Fin2Category::ensure() const {
  if (built_) return;
  for (int c = 0; c < n_cells(); ++c)
    between_[pair_key(cells[c].src_arrow, cells[c].tgt_arrow)].push_back(c);
  built_ = true;
}

const std::vector<int>& Fin2Category::cells_between(int f, int g) const {
  ensure();
  auto it = between_.find(pair_key(f, g));
  return it == between_.end() ? empty_ : it->second;
}

std::vector<int> Fin2Category::cells_in_hom(int X, int Y) const {
  std::vector<int> out;
  for (int c = 0; c < n_cells(); ++c) {
    int f = cells[c].src_arrow;
    if (base->src(f) == X && base->tgt(f) == Y) out.push_back(c);
  }
  return out;
}

int Fin2Category::vc(int b, int a) const {
  if (cells[a].tgt_arrow != cells[b].src_arrow) return -1;
  if (is_id2(a)) return b;
  if (is_id2(b)) return a;
  auto it = vtable.find(pair_key(b, a));
  return it == vtable.end() ? -1 : it->second;
}

int Fin2Category::hc(int b, int a) const {
  int fa = cells[a].src_arrow, fb = cells[b].src_arrow;
  if (base->tgt(fa) != base->src(fb)) return -1;
  // identity 2-cell of an identity arrow is the horizontal unit
  if (is_id2(a) && base->is_id(fa)) return b;
  if (is_id2(b) && base->is_id(fb)) return a;
  auto it = htable.find(pair_key(b, a));
  return it == htable.end() ? -1 : it->second;
}

void add_identity_2cells(Fin2Category& K) {
  K.id2.assign(K.base->n_arrows(), -1);
  for (int a = 0; a < K.base->n_arrows(); ++a) {
    K.id2[a] = K.n_cells();
    K.cells.push_back({a, a});
  }
}

int add_cell(Fin2Category& K, int src_arrow, int tgt_arrow) {
  K.cells.push_back({src_arrow, tgt_arrow});
  return K.n_cells() - 1;
}

// ---- validation ----------------------------------------------------------

Report validate_2category(const Fin2Category& K) {
  Report r = fincat::validate_category(*K.base);
  if (!r.pass) return r;
  const auto& B = *K.base;
  if (static_cast<int>(K.id2.size()) != B.n_arrows())
    throw SchemaError("id2 list does not match arrow count");
  for (int c = 0; c < K.n_cells(); ++c) {
    ++r.checks;
    auto [f, g] = std::pair(K.cells[c].src_arrow, K.cells[c].tgt_arrow);
    if (f < 0 || f >= B.n_arrows() || g < 0 || g >= B.n_arrows())
      throw SchemaError("2-cell with dangling arrow reference");
    if (B.src(f) != B.src(g) || B.tgt(f) != B.tgt(g))
      return Report::bad({{"kind", "cell-not-parallel"}, {"cell", c}},
                         "2-cell between non-parallel arrows", r.checks);
  }
  for (int a = 0; a < B.n_arrows(); ++a) {
    ++r.checks;
    int i = K.id2[a];
    if (i < 0 || i >= K.n_cells()) throw SchemaError("dangling identity 2-cell");
    if (K.cells[i].src_arrow != a || K.cells[i].tgt_arrow != a)
      return Report::bad({{"kind", "id2-typing"}, {"arrow", a}},
                         "identity 2-cell not parallel to its arrow", r.checks);
  }

  // vertical: totality, typing, associativity (hom-categories are categories)
  for (int a = 0; a < K.n_cells(); ++a) {
    int t = K.cells[a].tgt_arrow;
    for (int b = 0; b < K.n_cells(); ++b) {
      if (K.cells[b].src_arrow != t) continue;
      ++r.checks;
      int ba = K.vc(b, a);
      if (ba < 0 || K.cells[ba].src_arrow != K.cells[a].src_arrow ||
          K.cells[ba].tgt_arrow != K.cells[b].tgt_arrow)
        return Report::bad({{"kind", "vcomp"}, {"b", b}, {"a", a}},
                           "vertical composite missing or ill-typed", r.checks);
    }
  }
  for (int a = 0; a < K.n_cells(); ++a)
    for (int b = 0; b < K.n_cells(); ++b) {
      if (K.cells[b].src_arrow != K.cells[a].tgt_arrow) continue;
      for (int c = 0; c < K.n_cells(); ++c) {
        if (K.cells[c].src_arrow != K.cells[b].tgt_arrow) continue;
        ++r.checks;
        if (K.vc(c, K.vc(b, a)) != K.vc(K.vc(c, b), a))
          return Report::bad({{"kind", "vcomp-associativity"}, {"c", c}, {"b", b}, {"a", a}},
                             "vertical associativity violated", r.checks);
      }
    }

  // horizontal: totality, typing, units, interchange, associativity
  for (int a = 0; a < K.n_cells(); ++a) {
    int fa = K.cells[a].src_arrow, ka = K.cells[a].tgt_arrow;
    for (int b = 0; b < K.n_cells(); ++b) {
      int fb = K.cells[b].src_arrow, kb = K.cells[b].tgt_arrow;
      if (B.tgt(fa) != B.src(fb)) continue;
      ++r.checks;
      int ba = K.hc(b, a);
      if (ba < 0 || K.cells[ba].src_arrow != B.compose(fb, fa) ||
          K.cells[ba].tgt_arrow != B.compose(kb, ka))
        return Report::bad({{"kind", "hcomp"}, {"b", b}, {"a", a}},
                           "horizontal composite missing or ill-typed", r.checks);
    }
  }
  for (int f = 0; f < B.n_arrows(); ++f)
    for (int g : B.arrows_from(B.tgt(f))) {
      ++r.checks;
      if (K.hc(K.id2[g], K.id2[f]) != K.id2[B.compose(g, f)])
        return Report::bad({{"kind", "hcomp-id2"}, {"g", g}, {"f", f}},
                           "horizontal composite of identity 2-cells", r.checks);
    }
  // interchange
  for (int a = 0; a < K.n_cells(); ++a)
    for (int a2 = 0; a2 < K.n_cells(); ++a2) {
      if (K.cells[a2].src_arrow != K.cells[a].tgt_arrow) continue;
      for (int b = 0; b < K.n_cells(); ++b) {
        if (B.src(K.cells[b].src_arrow) != B.tgt(K.cells[a].src_arrow)) continue;
        for (int b2 = 0; b2 < K.n_cells(); ++b2) {
          if (K.cells[b2].src_arrow != K.cells[b].tgt_arrow) continue;
          ++r.checks;
          int lhs = K.vc(K.hc(b2, a2), K.hc(b, a));
          int rhs = K.hc(K.vc(b2, b), K.vc(a2, a));
          if (lhs != rhs || lhs < 0)
            return Report::bad(
                {{"kind", "interchange"}, {"a", a}, {"a2", a2}, {"b", b}, {"b2", b2}},
                "interchange law violated", r.checks);
        }
      }
    }
  // horizontal associativity
  for (int a = 0; a < K.n_cells(); ++a)
    for (int b = 0; b < K.n_cells(); ++b) {
      if (B.src(K.cells[b].src_arrow) != B.tgt(K.cells[a].src_arrow)) continue;
      for (int c = 0; c < K.n_cells(); ++c) {
        if (B.src(K.cells[c].src_arrow) != B.tgt(K.cells[b].src_arrow)) continue;
        ++r.checks;
        if (K.hc(c, K.hc(b, a)) != K.hc(K.hc(c, b), a))
          return Report::bad({{"kind", "hcomp-associativity"}, {"c", c}, {"b", b}, {"a", a}},
                             "horizontal associativity violated", r.checks);
      }
    }
  return r;
}

Report validate_2functor(const TwoFunctor& P) {
  Report r = fincat::validate_functor(P.f);
  if (!r.pass) return r;
  const auto& E = *P.dom;
  const auto& B = *P.cod;
  if (static_cast<int>(P.cell_map.size()) != E.n_cells())
    throw SchemaError("2-functor cell map does not match cell count");
  for (int c = 0; c < E.n_cells(); ++c) {
    ++r.checks;
    int pc = P.cell_map[c];
    if (pc < 0 || pc >= B.n_cells()) throw SchemaError("dangling 2-cell image");
    if (B.cells[pc].src_arrow != P.f.ar[E.cells[c].src_arrow] ||
        B.cells[pc].tgt_arrow != P.f.ar[E.cells[c].tgt_arrow])
      return Report::bad({{"kind", "cell-endpoints"}, {"cell", c}},
                         "2-functor does not preserve cell endpoints", r.checks);
  }
  for (int a = 0; a < E.base->n_arrows(); ++a) {
    ++r.checks;
    if (P.cell_map[E.id2[a]] != B.id2[P.f.ar[a]])
      return Report::bad({{"kind", "id2"}, {"arrow", a}},
                         "2-functor does not preserve identity 2-cells", r.checks);
  }
  for (int a = 0; a < E.n_cells(); ++a)
    for (int b = 0; b < E.n_cells(); ++b) {
      int v = E.vc(b, a);
      if (v >= 0) {
        ++r.checks;
        if (P.cell_map[v] != B.vc(P.cell_map[b], P.cell_map[a]))
          return Report::bad({{"kind", "vcomp"}, {"b", b}, {"a", a}},
                             "2-functor does not preserve vertical composition",
                             r.checks);
      }
      int h = E.hc(b, a);
      if (h >= 0) {
        ++r.checks;
        if (P.cell_map[h] != B.hc(P.cell_map[b], P.cell_map[a]))
          return Report::bad({{"kind", "hcomp"}, {"b", b}, {"a", a}},
                             "2-functor does not preserve horizontal composition",
                             r.checks);
      }
    }
  return r;
}

Fin2Category locally_discrete(CatPtr C) {
  Fin2Category K;
  K.base = C;
  for (int a = 0; a < C->n_arrows(); ++a) {
    K.cells.push_back({a, a});
    K.id2.push_back(a);
  }
  // vertical composition is forced; horizontal composition mirrors the base
  for (int f = 0; f < C->n_arrows(); ++f)
    for (int g : C->arrows_from(C->tgt(f)))
      K.htable[pair_key(g, f)] = C->compose(g, f);
  return K;
}

TwoFunctor locally_discrete_functor(const Functor& F) {
  TwoFunctor P;
  P.dom = std::make_shared<Fin2Category>(locally_discrete(F.dom));
  P.cod = std::make_shared<Fin2Category>(locally_discrete(F.cod));
  P.f = F;
  P.cell_map = F.ar;
  return P;
}

TwoFunctor identity_2functor(TwoCatPtr K) {
  TwoFunctor P;
  P.dom = P.cod = K;
  P.f = fincat::identity_functor(K->base);
  P.cell_map.resize(K->n_cells());
  std::iota(P.cell_map.begin(), P.cell_map.end(), 0);
  return P;
}

// ---- hom categories ------------------------------------------------------

HomCat hom_category(const Fin2Category& K, int X, int Y) {
  HomCat h;
  CatBuilder b;
  for (int f : K.base->hom(X, Y)) {
    h.arrow_obj[f] = b.add_object();
    h.obj_arrow.push_back(f);
  }
  for (int c : K.cells_in_hom(X, Y)) {
    int id = b.add_arrow(h.arrow_obj.at(K.cells[c].src_arrow),
                         h.arrow_obj.at(K.cells[c].tgt_arrow));
    h.cell_arr[c] = id;
    h.arr_cell.push_back(c);
    if (K.is_id2(c)) b.set_identity(h.arrow_obj.at(K.cells[c].src_arrow), id);
  }
  for (int a = 0; a < static_cast<int>(h.arr_cell.size()); ++a)
    for (int bb = 0; bb < static_cast<int>(h.arr_cell.size()); ++bb) {
      int v = K.vc(h.arr_cell[bb], h.arr_cell[a]);
      if (v >= 0) b.set_comp(bb, a, h.cell_arr.at(v));
    }
  h.cat = b.freeze();
  return h;
}

Functor hom_functor(const TwoFunctor& P, const HomCat& he, const HomCat& hb) {
  Functor f;
  f.dom = he.cat;
  f.cod = hb.cat;
  for (int o : he.obj_arrow) f.ob.push_back(hb.arrow_obj.at(P.f.ar[o]));
  for (int a : he.arr_cell) f.ar.push_back(hb.cell_arr.at(P.cell_map[a]));
  return f;
}

// ---- 2-Cartesian arrows and 2-fibrations --------------------------------

Report is_2cartesian(const TwoFunctor& P, int f) {
  Report r;
  const auto& E = *P.dom;
  const auto& B = *P.cod;
  const auto& E0 = *E.base;
  json cx;
  if (!fib::is_cartesian_bool(P.f, f, &cx, &r.checks))
    return Report::bad(cx, "not 1-Cartesian", r.checks);

  const int X = E0.src(f), Y = E0.tgt(f);
  const int pf = P.f.ar[f];
  const int pX = P.f.ob[X];
  for (int theta = 0; theta < E.n_cells(); ++theta) {
    int g = E.cells[theta].src_arrow;
    if (E0.tgt(g) != Y) continue;
    int Z = E0.src(g);
    int pZ = P.f.ob[Z];
    for (int gamma = 0; gamma < B.n_cells(); ++gamma) {
      int h = B.cells[gamma].src_arrow;
      if (B.base->src(h) != pZ || B.base->tgt(h) != pX) continue;
      if (B.hc(B.id2[pf], gamma) != P.cell_map[theta]) continue;
      ++r.checks;
      int found = 0, wit = -1;
      for (int cand : E.cells_in_hom(Z, X)) {
        if (P.cell_map[cand] != gamma) continue;
        if (E.hc(E.id2[f], cand) != theta) continue;
        ++found;
        wit = cand;
      }
      (void)wit;
      if (found != 1)
        return Report::bad({{"kind", "2-cartesian"}, {"arrow", f}, {"theta", theta},
                            {"gamma", gamma}, {"lifts", found}},
                           "2-dimensional lifting fails", r.checks);
    }
  }
  r.witness = {{"arrow", f}};
  return r;
}

std::vector<char> twocartesian_flags(const TwoFunctor& P) {
  std::vector<char> out(P.dom->base->n_arrows(), 0);
  for (int a = 0; a < P.dom->base->n_arrows(); ++a)
    out[a] = is_2cartesian(P, a).pass;
  return out;
}

Report is_2fibration(const TwoFunctor& P) {
  Report r;
  const auto& E = *P.dom;
  const auto& B = *P.cod;
  const auto& E0 = *E.base;

  // condition 1: 2-Cartesian lifts of all (u, Y)
  auto flags = twocartesian_flags(P);
  r.checks += E0.n_arrows();
  fib::LiftIndex idx = fib::LiftIndex::build(P.f);
  json lifts = json::array();
  for (int Y = 0; Y < E0.n_obj; ++Y)
    for (int u : B.base->arrows_into(P.f.ob[Y])) {
      ++r.checks;
      int chosen = -1;
      for (int cand : idx.lifts_into(u, Y))
        if (flags[cand]) {
          chosen = cand;
          break;
        }
      if (chosen < 0)
        return Report::bad({{"kind", "no-2cartesian-lift"}, {"base_arrow", u},
                            {"object", Y}, {"condition", 1}},
                           "condition 1 fails", r.checks);
      lifts.push_back({u, Y, chosen});
    }

  // condition 2: local fibrations on homs (with local cleavages, i.e. cloven)
  std::vector<char> cell_cart(E.n_cells(), 0);
  for (int X = 0; X < E0.n_obj; ++X)
    for (int Y = 0; Y < E0.n_obj; ++Y) {
      auto he = hom_category(E, X, Y);
      auto hb = hom_category(B, P.f.ob[X], P.f.ob[Y]);
      auto hp = hom_functor(P, he, hb);
      auto rep = fib::is_fibration(hp);
      r.checks += rep.checks;
      if (!rep.pass) {
        json cx = rep.counterexample;
        cx["condition"] = 2;
        cx["hom"] = {X, Y};
        return Report::bad(cx, "condition 2 fails", r.checks);
      }
      auto lf = fib::cartesian_flags(hp);
      for (int a = 0; a < static_cast<int>(he.arr_cell.size()); ++a)
        cell_cart[he.arr_cell[a]] = lf[a];
    }

  // condition 3: horizontal composites of Cartesian 2-cells are Cartesian
  for (int a = 0; a < E.n_cells(); ++a) {
    if (!cell_cart[a]) continue;
    for (int b = 0; b < E.n_cells(); ++b) {
      if (!cell_cart[b]) continue;
      int h = E.hc(b, a);
      if (h < 0) continue;
      ++r.checks;
      if (!cell_cart[h])
        return Report::bad({{"kind", "hcomp-not-cartesian"}, {"b", b}, {"a", a},
                            {"condition", 3}},
                           "condition 3 fails", r.checks);
    }
  }
  r.witness = {{"chosen_lifts", lifts}};
  return r;
}

}  // namespace catkit::twocat
