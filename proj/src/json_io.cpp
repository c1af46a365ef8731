#include "catkit/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace catkit::jsonio {

using fincat::CatPtr;
using fincat::FinCategory;
using fincat::Functor;
using fincat::Key4;
using fincat::Key4Hash;
using fincat::pair_key;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

int geti(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

int geti(const json& j, const char* key, const std::string& path) {
  return geti(need(j, key, path), path + "." + key);
}

std::vector<int> getvi(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(geti(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

void check_type(const json& j, const char* t, const std::string& path) {
  const json& tag = need(j, "type", path);
  if (!tag.is_string() || tag.get<std::string>() != t)
    fail(path + ".type", std::string("expected \"") + t + "\"");
}

void check_range(int v, int n, const std::string& path) {
  if (v < 0 || v >= n) fail(path, "id " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
}

json map_to_json(const Functor& F) {
  return json{{"ob", F.ob}, {"ar", F.ar}};
}

Functor map_from_json(const json& j, CatPtr dom, CatPtr cod, const std::string& path) {
  Functor F;
  F.dom = dom;
  F.cod = cod;
  F.ob = getvi(need(j, "ob", path), path + ".ob");
  F.ar = getvi(need(j, "ar", path), path + ".ar");
  if ((int)F.ob.size() != dom->n_obj) fail(path + ".ob", "wrong length");
  if ((int)F.ar.size() != dom->n_arrows()) fail(path + ".ar", "wrong length");
  for (std::size_t i = 0; i < F.ob.size(); ++i)
    check_range(F.ob[i], cod->n_obj, path + ".ob[" + std::to_string(i) + "]");
  for (std::size_t i = 0; i < F.ar.size(); ++i)
    check_range(F.ar[i], cod->n_arrows(), path + ".ar[" + std::to_string(i) + "]");
  return F;
}

}  // namespace

json cat_to_json(const FinCategory& C) {
  json arrows = json::array();
  for (int a = 0; a < C.n_arrows(); ++a)
    arrows.push_back(json{{"id", a}, {"src", C.src(a)}, {"tgt", C.tgt(a)}});
  // materialize composition (computed composers included), identity pairs
  // elided: the loader re-derives them from the unit laws
  json compose = json::array();
  for (int g = 0; g < C.n_arrows(); ++g) {
    if (C.is_id(g)) continue;
    for (int f = 0; f < C.n_arrows(); ++f) {
      if (C.is_id(f) || C.tgt(f) != C.src(g)) continue;
      int r = C.compose(g, f);
      if (r >= 0) compose.push_back(json::array({g, f, r}));
    }
  }
  return json{{"type", "category"},
              {"objects", C.n_obj},
              {"arrows", arrows},
              {"identities", C.idn},
              {"compose", compose}};
}

CatPtr cat_from_json(const json& j) {
  const std::string path = "category";
  check_type(j, "category", path);
  auto C = std::make_shared<FinCategory>();
  C->n_obj = geti(j, "objects", path);
  if (C->n_obj < 0) fail(path + ".objects", "negative count");
  const json& arrows = need(j, "arrows", path);
  if (!arrows.is_array()) fail(path + ".arrows", "expected an array");
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    std::string p = path + ".arrows[" + std::to_string(i) + "]";
    int id = geti(arrows[i], "id", p);
    if (id != (int)i) fail(p + ".id", "ids must be dense and duplicate-free");
    fincat::ArrowData a;
    a.src = geti(arrows[i], "src", p);
    a.tgt = geti(arrows[i], "tgt", p);
    check_range(a.src, C->n_obj, p + ".src");
    check_range(a.tgt, C->n_obj, p + ".tgt");
    C->arr.push_back(a);
  }
  C->idn = getvi(need(j, "identities", path), path + ".identities");
  if ((int)C->idn.size() != C->n_obj) fail(path + ".identities", "wrong length");
  for (int o = 0; o < C->n_obj; ++o) {
    std::string p = path + ".identities[" + std::to_string(o) + "]";
    check_range(C->idn[o], C->n_arrows(), p);
    if (C->src(C->idn[o]) != o || C->tgt(C->idn[o]) != o)
      fail(p, "identity endpoints do not match the object");
  }
  const json& compose = need(j, "compose", path);
  if (!compose.is_array()) fail(path + ".compose", "expected an array");
  for (std::size_t i = 0; i < compose.size(); ++i) {
    std::string p = path + ".compose[" + std::to_string(i) + "]";
    if (!compose[i].is_array() || compose[i].size() != 3) fail(p, "expected [g, f, result]");
    int g = geti(compose[i][0], p + "[0]");
    int f = geti(compose[i][1], p + "[1]");
    int r = geti(compose[i][2], p + "[2]");
    check_range(g, C->n_arrows(), p + "[0]");
    check_range(f, C->n_arrows(), p + "[1]");
    check_range(r, C->n_arrows(), p + "[2]");
    if (C->tgt(f) != C->src(g)) fail(p, "entry for a non-composable pair");
    if (C->src(r) != C->src(f) || C->tgt(r) != C->tgt(g)) fail(p, "composite endpoints mismatch");
    if (C->comp_table.count(pair_key(g, f))) fail(p, "duplicate compose entry");
    C->set_comp(g, f, r);
  }
  return C;
}

json functor_to_json(const Functor& F) {
  return json{{"type", "functor"},
              {"dom", cat_to_json(*F.dom)},
              {"cod", cat_to_json(*F.cod)},
              {"ob", F.ob},
              {"ar", F.ar}};
}

Functor functor_from_json(const json& j) {
  const std::string path = "functor";
  check_type(j, "functor", path);
  CatPtr dom = cat_from_json(need(j, "dom", path));
  CatPtr cod = cat_from_json(need(j, "cod", path));
  return map_from_json(j, dom, cod, path);
}

json cloven_to_json(const fib::ClovenFibration& c) {
  std::vector<std::array<int, 3>> entries;
  for (auto& [k, l] : c.cleavage)
    entries.push_back({(int)(k >> 32), (int)(k & 0xffffffffu), l});
  std::sort(entries.begin(), entries.end());
  json cl = json::array();
  for (auto& e : entries) cl.push_back(json::array({e[0], e[1], e[2]}));
  json f = functor_to_json(c.p);
  f.erase("type");
  return json{{"type", "cloven_fibration"}, {"functor", f}, {"cleavage", cl}};
}

fib::ClovenFibration cloven_from_json(const json& j) {
  const std::string path = "cloven_fibration";
  check_type(j, "cloven_fibration", path);
  json f = need(j, "functor", path);
  f["type"] = "functor";
  fib::ClovenFibration c;
  c.p = functor_from_json(f);
  const json& cl = need(j, "cleavage", path);
  if (!cl.is_array()) fail(path + ".cleavage", "expected an array");
  for (std::size_t i = 0; i < cl.size(); ++i) {
    std::string p = path + ".cleavage[" + std::to_string(i) + "]";
    if (!cl[i].is_array() || cl[i].size() != 3) fail(p, "expected [base arrow, object, lift]");
    int u = geti(cl[i][0], p + "[0]");
    int E = geti(cl[i][1], p + "[1]");
    int l = geti(cl[i][2], p + "[2]");
    check_range(u, c.p.cod->n_arrows(), p + "[0]");
    check_range(E, c.p.dom->n_obj, p + "[1]");
    check_range(l, c.p.dom->n_arrows(), p + "[2]");
    if (c.cleavage.count(pair_key(u, E))) fail(p, "duplicate cleavage entry");
    c.cleavage[pair_key(u, E)] = l;
  }
  c.flags = fib::cartesian_flags(c.p);
  return c;
}

json twocat_to_json(const twocat::Fin2Category& K) {
  json cells = json::array();
  for (int c = 0; c < K.n_cells(); ++c)
    cells.push_back(json{{"id", c}, {"src", K.cells[c].src_arrow}, {"tgt", K.cells[c].tgt_arrow}});
  auto table = [](const std::unordered_map<std::uint64_t, int>& t) {
    std::vector<std::array<int, 3>> entries;
    for (auto& [k, r] : t) entries.push_back({(int)(k >> 32), (int)(k & 0xffffffffu), r});
    std::sort(entries.begin(), entries.end());
    json out = json::array();
    for (auto& e : entries) out.push_back(json::array({e[0], e[1], e[2]}));
    return out;
  };
  return json{{"type", "two_category"}, {"base", cat_to_json(*K.base)},
              {"twocells", cells},      {"id2", K.id2},
              {"vcomp", table(K.vtable)}, {"hcomp", table(K.htable)}};
}

twocat::TwoCatPtr twocat_from_json(const json& j) {
  const std::string path = "two_category";
  check_type(j, "two_category", path);
  auto K = std::make_shared<twocat::Fin2Category>();
  K->base = cat_from_json(need(j, "base", path));
  const json& cells = need(j, "twocells", path);
  if (!cells.is_array()) fail(path + ".twocells", "expected an array");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string p = path + ".twocells[" + std::to_string(i) + "]";
    if (geti(cells[i], "id", p) != (int)i) fail(p + ".id", "ids must be dense and duplicate-free");
    twocat::Fin2Category::Cell c;
    c.src_arrow = geti(cells[i], "src", p);
    c.tgt_arrow = geti(cells[i], "tgt", p);
    check_range(c.src_arrow, K->base->n_arrows(), p + ".src");
    check_range(c.tgt_arrow, K->base->n_arrows(), p + ".tgt");
    K->cells.push_back(c);
  }
  K->id2 = getvi(need(j, "id2", path), path + ".id2");
  if ((int)K->id2.size() != K->base->n_arrows()) fail(path + ".id2", "wrong length");
  auto table = [&](const char* key) {
    std::unordered_map<std::uint64_t, int> t;
    const json& arr = need(j, key, path);
    std::string p0 = path + "." + key;
    if (!arr.is_array()) fail(p0, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string p = p0 + "[" + std::to_string(i) + "]";
      if (!arr[i].is_array() || arr[i].size() != 3) fail(p, "expected [b, a, result]");
      int b = geti(arr[i][0], p), a = geti(arr[i][1], p), r = geti(arr[i][2], p);
      check_range(b, (int)K->cells.size(), p + "[0]");
      check_range(a, (int)K->cells.size(), p + "[1]");
      check_range(r, (int)K->cells.size(), p + "[2]");
      if (t.count(pair_key(b, a))) fail(p, "duplicate entry");
      t[pair_key(b, a)] = r;
    }
    return t;
  };
  K->vtable = table("vcomp");
  K->htable = table("hcomp");
  return K;
}

json twofunctor_to_json(const twocat::TwoFunctor& P) {
  return json{{"type", "two_functor"},
              {"dom", twocat_to_json(*P.dom)},
              {"cod", twocat_to_json(*P.cod)},
              {"ob", P.f.ob},
              {"ar", P.f.ar},
              {"cells", P.cell_map}};
}

twocat::TwoFunctor twofunctor_from_json(const json& j) {
  const std::string path = "two_functor";
  check_type(j, "two_functor", path);
  twocat::TwoFunctor P;
  P.dom = twocat_from_json(need(j, "dom", path));
  P.cod = twocat_from_json(need(j, "cod", path));
  P.f = map_from_json(j, P.dom->base, P.cod->base, path);
  P.cell_map = getvi(need(j, "cells", path), path + ".cells");
  if ((int)P.cell_map.size() != P.dom->n_cells()) fail(path + ".cells", "wrong length");
  for (std::size_t i = 0; i < P.cell_map.size(); ++i)
    check_range(P.cell_map[i], P.cod->n_cells(), path + ".cells[" + std::to_string(i) + "]");
  return P;
}

json double_to_json(const dbl::PseudoDoubleCategory& D) {
  if (!D.total)
    throw PreconditionError("windowed double categories are configured, not serialized");
  json ten_ob = json::array(), ten_cell = json::array(), assoc = json::array();
  for (int m = 0; m < D.n_pro(); ++m)
    for (int n = 0; n < D.n_pro(); ++n) {
      if (D.otgt(m) != D.osrc(n)) continue;
      int r = D.tensor.obj(m, n);
      if (r < 0) throw PreconditionError("partial tensor on a total double category");
      ten_ob.push_back(json::array({m, n, r}));
    }
  for (int a = 0; a < D.n_cells(); ++a)
    for (int b = 0; b < D.n_cells(); ++b) {
      if (D.tgt.ar[a] != D.src.ar[b]) continue;
      if (D.otgt(D.E1->src(a)) != D.osrc(D.E1->src(b))) continue;
      int r = D.tensor.cell(a, b);
      if (r < 0) throw PreconditionError("partial cell tensor on a total double category");
      ten_cell.push_back(json::array({a, b, r}));
    }
  for (int m = 0; m < D.n_pro(); ++m)
    for (int n = 0; n < D.n_pro(); ++n) {
      if (D.otgt(m) != D.osrc(n)) continue;
      for (int p = 0; p < D.n_pro(); ++p) {
        if (D.otgt(n) != D.osrc(p)) continue;
        int r = D.assoc(m, n, p);
        if (r < 0) throw PreconditionError("partial associator on a total double category");
        assoc.push_back(json::array({m, n, p, r}));
      }
    }
  return json{{"type", "double_category"},
              {"E0", cat_to_json(*D.E0)},
              {"E1", cat_to_json(*D.E1)},
              {"src", map_to_json(D.src)},
              {"tgt", map_to_json(D.tgt)},
              {"y", map_to_json(D.unit)},
              {"tensor_obj", ten_ob},
              {"tensor_cell", ten_cell},
              {"associator", assoc},
              {"name", D.name}};
}

dbl::DblPtr double_from_json(const json& j) {
  const std::string path = "double_category";
  check_type(j, "double_category", path);
  auto D = std::make_shared<dbl::PseudoDoubleCategory>();
  D->E0 = cat_from_json(need(j, "E0", path));
  D->E1 = cat_from_json(need(j, "E1", path));
  D->src = map_from_json(need(j, "src", path), D->E1, D->E0, path + ".src");
  D->tgt = map_from_json(need(j, "tgt", path), D->E1, D->E0, path + ".tgt");
  D->unit = map_from_json(need(j, "y", path), D->E0, D->E1, path + ".y");
  auto pairs = std::make_shared<std::unordered_map<std::uint64_t, int>>();
  auto cellt = std::make_shared<std::unordered_map<std::uint64_t, int>>();
  auto asc = std::make_shared<std::unordered_map<Key4, int, Key4Hash>>();
  auto load3 = [&](const char* key, std::unordered_map<std::uint64_t, int>& t, int na, int nb, int nr) {
    const json& arr = need(j, key, path);
    std::string p0 = path + "." + key;
    if (!arr.is_array()) fail(p0, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string p = p0 + "[" + std::to_string(i) + "]";
      if (!arr[i].is_array() || arr[i].size() != 3) fail(p, "expected [a, b, result]");
      int a = geti(arr[i][0], p), b = geti(arr[i][1], p), r = geti(arr[i][2], p);
      check_range(a, na, p + "[0]");
      check_range(b, nb, p + "[1]");
      check_range(r, nr, p + "[2]");
      if (t.count(pair_key(a, b))) fail(p, "duplicate entry");
      t[pair_key(a, b)] = r;
    }
  };
  load3("tensor_obj", *pairs, D->E1->n_obj, D->E1->n_obj, D->E1->n_obj);
  load3("tensor_cell", *cellt, D->E1->n_arrows(), D->E1->n_arrows(), D->E1->n_arrows());
  {
    const json& arr = need(j, "associator", path);
    std::string p0 = path + ".associator";
    if (!arr.is_array()) fail(p0, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string p = p0 + "[" + std::to_string(i) + "]";
      if (!arr[i].is_array() || arr[i].size() != 4) fail(p, "expected [m, n, p, cell]");
      Key4 k{{geti(arr[i][0], p), geti(arr[i][1], p), geti(arr[i][2], p), 0}};
      int r = geti(arr[i][3], p + "[3]");
      check_range(r, D->E1->n_arrows(), p + "[3]");
      if (asc->count(k)) fail(p, "duplicate entry");
      (*asc)[k] = r;
    }
  }
  D->tensor.obj = [pairs](int m, int n) {
    auto it = pairs->find(pair_key(m, n));
    return it == pairs->end() ? -1 : it->second;
  };
  D->tensor.cell = [cellt](int a, int b) {
    auto it = cellt->find(pair_key(a, b));
    return it == cellt->end() ? -1 : it->second;
  };
  D->assoc = [asc](int m, int n, int p) {
    auto it = asc->find(Key4{{m, n, p, 0}});
    return it == asc->end() ? -1 : it->second;
  };
  D->total = true;
  if (auto it = j.find("name"); it != j.end() && it->is_string()) D->name = it->get<std::string>();
  return D;
}

json dfunctor_to_json(const dbl::DoubleFunctor& P) {
  json out{{"type", "double_functor"},
           {"dom", double_to_json(*P.dom)},
           {"cod", double_to_json(*P.cod)},
           {"F0", map_to_json(P.F0)},
           {"F1", map_to_json(P.F1)},
           {"flavor", P.flavor == dbl::DoubleFunctor::Flavor::strict   ? "strict"
                      : P.flavor == dbl::DoubleFunctor::Flavor::pseudo ? "pseudo"
                                                                       : "lax"}};
  if (P.comp_cell) {
    json comp = json::array();
    for (int m = 0; m < P.dom->n_pro(); ++m)
      for (int n = 0; n < P.dom->n_pro(); ++n) {
        if (P.dom->otgt(m) != P.dom->osrc(n)) continue;
        int r = P.comp_cell(m, n);
        if (r >= 0) comp.push_back(json::array({m, n, r}));
      }
    out["comp"] = comp;
  }
  if (P.unit_cell) {
    json un = json::array();
    for (int C = 0; C < P.dom->E0->n_obj; ++C) {
      int r = P.unit_cell(C);
      if (r >= 0) un.push_back(json::array({C, r}));
    }
    out["unit"] = un;
  }
  return out;
}

dbl::DoubleFunctor dfunctor_from_json(const json& j) {
  const std::string path = "double_functor";
  check_type(j, "double_functor", path);
  dbl::DoubleFunctor P;
  P.dom = double_from_json(need(j, "dom", path));
  P.cod = double_from_json(need(j, "cod", path));
  P.F0 = map_from_json(need(j, "F0", path), P.dom->E0, P.cod->E0, path + ".F0");
  P.F1 = map_from_json(need(j, "F1", path), P.dom->E1, P.cod->E1, path + ".F1");
  const json& fl = need(j, "flavor", path);
  if (!fl.is_string()) fail(path + ".flavor", "expected a string");
  std::string f = fl.get<std::string>();
  if (f == "strict") P.flavor = dbl::DoubleFunctor::Flavor::strict;
  else if (f == "pseudo") P.flavor = dbl::DoubleFunctor::Flavor::pseudo;
  else if (f == "lax") P.flavor = dbl::DoubleFunctor::Flavor::lax;
  else fail(path + ".flavor", "expected strict, pseudo or lax");
  if (auto it = j.find("comp"); it != j.end()) {
    auto t = std::make_shared<std::unordered_map<std::uint64_t, int>>();
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string p = path + ".comp[" + std::to_string(i) + "]";
      if (!(*it)[i].is_array() || (*it)[i].size() != 3) fail(p, "expected [m, n, cell]");
      (*t)[pair_key(geti((*it)[i][0], p), geti((*it)[i][1], p))] = geti((*it)[i][2], p);
    }
    P.comp_cell = [t](int m, int n) {
      auto e = t->find(pair_key(m, n));
      return e == t->end() ? -1 : e->second;
    };
  }
  if (auto it = j.find("unit"); it != j.end()) {
    auto t = std::make_shared<std::unordered_map<int, int>>();
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string p = path + ".unit[" + std::to_string(i) + "]";
      if (!(*it)[i].is_array() || (*it)[i].size() != 2) fail(p, "expected [object, cell]");
      (*t)[geti((*it)[i][0], p)] = geti((*it)[i][1], p);
    }
    P.unit_cell = [t](int C) {
      auto e = t->find(C);
      return e == t->end() ? -1 : e->second;
    };
  }
  return P;
}

json indexed_to_json(const elements::IndexedDoubleCategory& F) {
  const auto& D = *F.base;
  if (!D.total)
    throw PreconditionError("indexed data over a windowed base is configured, not serialized");
  json out{{"type", "indexed_double_category"},
           {"base", double_to_json(D)},
           {"locally_discrete", F.locally_discrete},
           {"name", F.name}};
  auto cats = [](const std::vector<CatPtr>& v) {
    json a = json::array();
    for (auto& c : v) a.push_back(cat_to_json(*c));
    return a;
  };
  auto maps = [](const std::vector<Functor>& v) {
    json a = json::array();
    for (auto& f : v) a.push_back(map_to_json(f));
    return a;
  };
  out["fib0"] = cats(F.fib0);
  out["fib1"] = cats(F.fib1);
  out["re0"] = maps(F.re0);
  out["re1"] = maps(F.re1);
  out["leg_l"] = maps(F.leg_l);
  out["leg_r"] = maps(F.leg_r);
  out["iota"] = maps(F.iota);
  json phi_ob = json::array(), phi_ar = json::array();
  for (int m = 0; m < D.n_pro(); ++m)
    for (int n = 0; n < D.n_pro(); ++n) {
      if (D.otgt(m) != D.osrc(n)) continue;
      for (int a = 0; a < F.fib1[m]->n_obj; ++a)
        for (int b = 0; b < F.fib1[n]->n_obj; ++b) {
          if (F.leg_r[m].ob[a] != F.leg_l[n].ob[b]) continue;
          int r = F.phi_ob(m, n, a, b);
          if (r >= 0) phi_ob.push_back(json::array({m, n, a, b, r}));
        }
      for (int x = 0; x < F.fib1[m]->n_arrows(); ++x)
        for (int y = 0; y < F.fib1[n]->n_arrows(); ++y) {
          if (F.leg_r[m].ar[x] != F.leg_l[n].ar[y]) continue;
          int r = F.phi_ar(m, n, x, y);
          if (r >= 0) phi_ar.push_back(json::array({m, n, x, y, r}));
        }
    }
  out["phi_ob"] = phi_ob;
  out["phi_ar"] = phi_ar;
  const auto& E0 = *D.E0;
  const auto& E1 = *D.E1;
  if (F.gamma0) {
    json g = json::array();
    for (int gg = 0; gg < E0.n_arrows(); ++gg)
      for (int f = 0; f < E0.n_arrows(); ++f) {
        if (E0.tgt(f) != E0.src(gg)) continue;
        for (int Y = 0; Y < F.fib0[E0.tgt(gg)]->n_obj; ++Y) {
          int r = F.gamma0(f, gg, Y);
          if (r >= 0) g.push_back(json::array({f, gg, Y, r}));
        }
      }
    out["gamma0"] = g;
  }
  if (F.gamma1) {
    json g = json::array();
    for (int de = 0; de < E1.n_arrows(); ++de)
      for (int th = 0; th < E1.n_arrows(); ++th) {
        if (E1.tgt(th) != E1.src(de)) continue;
        for (int Y = 0; Y < F.fib1[E1.tgt(de)]->n_obj; ++Y) {
          int r = F.gamma1(th, de, Y);
          if (r >= 0) g.push_back(json::array({th, de, Y, r}));
        }
      }
    out["gamma1"] = g;
  }
  if (F.iota_comp) {
    json g = json::array();
    for (int f = 0; f < E0.n_arrows(); ++f)
      for (int Y = 0; Y < F.fib0[E0.tgt(f)]->n_obj; ++Y) {
        int r = F.iota_comp(f, Y);
        if (r >= 0) g.push_back(json::array({f, Y, r}));
      }
    out["iota_comp"] = g;
  }
  if (F.phi_comp) {
    json g = json::array();
    for (int th = 0; th < E1.n_arrows(); ++th)
      for (int de = 0; de < E1.n_arrows(); ++de) {
        if (D.tgt.ar[th] != D.src.ar[de]) continue;
        int n = E1.tgt(th), q = E1.tgt(de);
        if (D.otgt(E1.src(th)) != D.osrc(E1.src(de))) continue;
        for (int a = 0; a < F.fib1[n]->n_obj; ++a)
          for (int b = 0; b < F.fib1[q]->n_obj; ++b) {
            if (F.leg_r[n].ob[a] != F.leg_l[q].ob[b]) continue;
            int r = F.phi_comp(th, de, a, b);
            if (r >= 0) g.push_back(json::array({th, de, a, b, r}));
          }
      }
    out["phi_comp"] = g;
  }
  if (F.assoc_comp) {
    json g = json::array();
    for (int m = 0; m < D.n_pro(); ++m)
      for (int n = 0; n < D.n_pro(); ++n) {
        if (D.otgt(m) != D.osrc(n)) continue;
        for (int p = 0; p < D.n_pro(); ++p) {
          if (D.otgt(n) != D.osrc(p)) continue;
          for (int a = 0; a < F.fib1[m]->n_obj; ++a)
            for (int b = 0; b < F.fib1[n]->n_obj; ++b) {
              if (F.leg_r[m].ob[a] != F.leg_l[n].ob[b]) continue;
              for (int c = 0; c < F.fib1[p]->n_obj; ++c) {
                if (F.leg_r[n].ob[b] != F.leg_l[p].ob[c]) continue;
                int r = F.assoc_comp(m, n, p, a, b, c);
                if (r >= 0) g.push_back(json::array({m, n, p, a, b, c, r}));
              }
            }
        }
      }
    out["assoc_comp"] = g;
  }
  return out;
}

elements::IndexedDoubleCategory indexed_from_json(const json& j) {
  const std::string path = "indexed_double_category";
  check_type(j, "indexed_double_category", path);
  elements::IndexedDoubleCategory F;
  F.base = double_from_json(need(j, "base", path));
  const auto& D = *F.base;
  auto cats = [&](const char* key, int n) {
    const json& arr = need(j, key, path);
    std::string p = path + "." + key;
    if (!arr.is_array() || (int)arr.size() != n) fail(p, "wrong length");
    std::vector<CatPtr> out;
    for (auto& c : arr) out.push_back(cat_from_json(c));
    return out;
  };
  F.fib0 = cats("fib0", D.E0->n_obj);
  F.fib1 = cats("fib1", D.E1->n_obj);
  auto maps = [&](const char* key, int n, auto dom_of, auto cod_of) {
    const json& arr = need(j, key, path);
    std::string p0 = path + "." + key;
    if (!arr.is_array() || (int)arr.size() != n) fail(p0, "wrong length");
    std::vector<Functor> out;
    for (int i = 0; i < n; ++i)
      out.push_back(map_from_json(arr[i], dom_of(i), cod_of(i),
                                  p0 + "[" + std::to_string(i) + "]"));
    return out;
  };
  F.re0 = maps(
      "re0", D.E0->n_arrows(), [&](int f) { return F.fib0[D.E0->tgt(f)]; },
      [&](int f) { return F.fib0[D.E0->src(f)]; });
  F.re1 = maps(
      "re1", D.E1->n_arrows(), [&](int c) { return F.fib1[D.E1->tgt(c)]; },
      [&](int c) { return F.fib1[D.E1->src(c)]; });
  F.leg_l = maps(
      "leg_l", D.E1->n_obj, [&](int m) { return F.fib1[m]; },
      [&](int m) { return F.fib0[D.osrc(m)]; });
  F.leg_r = maps(
      "leg_r", D.E1->n_obj, [&](int m) { return F.fib1[m]; },
      [&](int m) { return F.fib0[D.otgt(m)]; });
  F.iota = maps(
      "iota", D.E0->n_obj, [&](int C) { return F.fib0[C]; },
      [&](int C) { return F.fib1[D.unit.ob[C]]; });
  auto table4 = [&](const char* key) {
    auto t = std::make_shared<std::unordered_map<Key4, int, Key4Hash>>();
    const json& arr = need(j, key, path);
    std::string p0 = path + "." + key;
    if (!arr.is_array()) fail(p0, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string p = p0 + "[" + std::to_string(i) + "]";
      if (!arr[i].is_array() || arr[i].size() != 5) fail(p, "expected 5 entries");
      Key4 k{{geti(arr[i][0], p), geti(arr[i][1], p), geti(arr[i][2], p), geti(arr[i][3], p)}};
      if (t->count(k)) fail(p, "duplicate entry");
      (*t)[k] = geti(arr[i][4], p);
    }
    return t;
  };
  auto t_ob = table4("phi_ob");
  auto t_ar = table4("phi_ar");
  auto lookup4 = [](std::shared_ptr<std::unordered_map<Key4, int, Key4Hash>> t) {
    return [t](int m, int n, int a, int b) {
      auto it = t->find(Key4{{m, n, a, b}});
      return it == t->end() ? -1 : it->second;
    };
  };
  F.phi_ob = lookup4(t_ob);
  F.phi_ar = lookup4(t_ar);
  if (j.contains("gamma0")) {
    auto t = std::make_shared<std::unordered_map<Key4, int, Key4Hash>>();
    for (auto& e : j["gamma0"]) (*t)[Key4{{e[0], e[1], e[2], 0}}] = e[3];
    F.gamma0 = [t](int f, int g, int Y) {
      auto it = t->find(Key4{{f, g, Y, 0}});
      return it == t->end() ? -1 : it->second;
    };
  }
  if (j.contains("gamma1")) {
    auto t = std::make_shared<std::unordered_map<Key4, int, Key4Hash>>();
    for (auto& e : j["gamma1"]) (*t)[Key4{{e[0], e[1], e[2], 0}}] = e[3];
    F.gamma1 = [t](int th, int de, int Y) {
      auto it = t->find(Key4{{th, de, Y, 0}});
      return it == t->end() ? -1 : it->second;
    };
  }
  if (j.contains("iota_comp")) {
    auto t = std::make_shared<std::unordered_map<std::uint64_t, int>>();
    for (auto& e : j["iota_comp"]) (*t)[pair_key(e[0], e[1])] = e[2];
    F.iota_comp = [t](int f, int Y) {
      auto it = t->find(pair_key(f, Y));
      return it == t->end() ? -1 : it->second;
    };
  }
  if (j.contains("phi_comp")) {
    auto t = std::make_shared<std::unordered_map<Key4, int, Key4Hash>>();
    for (auto& e : j["phi_comp"]) (*t)[Key4{{e[0], e[1], e[2], e[3]}}] = e[4];
    F.phi_comp = [t](int th, int de, int a, int b) {
      auto it = t->find(Key4{{th, de, a, b}});
      return it == t->end() ? -1 : it->second;
    };
  }
  if (j.contains("assoc_comp")) {
    auto t = std::make_shared<std::unordered_map<std::string, int>>();
    for (auto& e : j["assoc_comp"]) {
      std::string k;
      for (int i = 0; i < 6; ++i) k += std::to_string(e[i].get<int>()) + ",";
      (*t)[k] = e[6];
    }
    F.assoc_comp = [t](int m, int n, int p, int a, int b, int c) {
      std::string k;
      for (int v : {m, n, p, a, b, c}) k += std::to_string(v) + ",";
      auto it = t->find(k);
      return it == t->end() ? -1 : it->second;
    };
  }
  const json& ld = need(j, "locally_discrete", path);
  if (!ld.is_boolean()) fail(path + ".locally_discrete", "expected a boolean");
  F.locally_discrete = ld.get<bool>();
  if (auto it = j.find("name"); it != j.end() && it->is_string()) F.name = it->get<std::string>();
  return F;
}

Report validate_document(const json& j, long long budget) {
  const json& tag = need(j, "type", "document");
  if (!tag.is_string()) fail("document.type", "expected a string");
  std::string t = tag.get<std::string>();
  if (t == "category") return fincat::validate_category(*cat_from_json(j), budget);
  if (t == "functor") return fincat::validate_functor(functor_from_json(j), budget);
  if (t == "cloven_fibration") return fib::validate_cloven(cloven_from_json(j));
  if (t == "two_category") return twocat::validate_2category(*twocat_from_json(j));
  if (t == "two_functor") return twocat::validate_2functor(twofunctor_from_json(j));
  if (t == "double_category") return dbl::validate_double_category(*double_from_json(j), budget);
  if (t == "double_functor") return dbl::validate_double_functor(dfunctor_from_json(j), budget);
  if (t == "indexed_double_category")
    return elements::validate_indexed(indexed_from_json(j), budget);
  fail("document.type", "unknown document type \"" + t + "\"");
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw SchemaError(path + ": cannot open file for writing");
  out << dump_canonical(j) << "\n";
}

std::string dump_canonical(const json& j) { return j.dump(2); }

}  // namespace catkit::jsonio
