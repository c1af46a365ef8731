#include "catkit/fib.hpp"

#include <algorithm>

namespace catkit::fib {

using fincat::FinCategory;

// ---- lift index ----------------------------------------------------------

const std::vector<int>& LiftIndex::lifts_into(int u, int E) const {
  static const std::vector<int> empty;
  auto it = into.find(pair_key(u, E));
  return it == into.end() ? empty : it->second;
}

LiftIndex LiftIndex::build(const Functor& p) {
  LiftIndex idx;
  for (int a = 0; a < p.dom->n_arrows(); ++a)
    idx.into[pair_key(p.ar[a], p.dom->tgt(a))].push_back(a);
  return idx;
}

// ---- Cartesian checks ----------------------------------------------------

bool is_cartesian_bool(const Functor& p, int f, json* cx, long long* checks) {
  const auto& E = *p.dom;
  const auto& B = *p.cod;
  const int X = E.src(f), Y = E.tgt(f);
  const int pf = p.ar[f], pX = p.ob[X];
  for (int g : E.arrows_into(Y)) {
    const int Z = E.src(g), pZ = p.ob[Z], pg = p.ar[g];
    for (int h : B.hom(pZ, pX)) {
      if (B.compose(pf, h) != pg) continue;
      if (checks) ++*checks;
      int found = 0;
      for (int cand : E.hom(Z, X)) {
        if (p.ar[cand] != h) continue;
        if (E.compose(f, cand) != g) continue;
        if (++found > 1) break;
      }
      if (found != 1) {
        if (cx)
          *cx = {{"kind", "cartesian"}, {"arrow", f}, {"g", g},
                 {"h", h},             {"lifts", found}};
        return false;
      }
    }
  }
  return true;
}

Report is_cartesian(const Functor& p, int f) {
  if (f < 0 || f >= p.dom->n_arrows())
    throw PreconditionError("is_cartesian: not an arrow of the total category");
  Report r;
  json cx;
  if (!is_cartesian_bool(p, f, &cx, &r.checks)) {
    r.pass = false;
    r.counterexample = cx;
  } else {
    r.witness = {{"arrow", f}};
  }
  return r;
}

namespace {

bool sga_check(const Functor& p, int f, const std::vector<int>& objs_over_pX) {
  const auto& E = *p.dom;
  const auto& B = *p.cod;
  const int X = E.src(f), Y = E.tgt(f);
  const int pf = p.ar[f], pX = p.ob[X];
  for (int Z : objs_over_pX) {
    const int idb = B.id(pX);
    int n_targets = 0;
    for (int k : E.hom(Z, Y))
      if (p.ar[k] == pf) ++n_targets;
    // Postcompose every vertical arrow Z -> X with f; images must be distinct
    // and exactly exhaust the targets (they always land among them).
    std::vector<int> images;
    for (int v : E.hom(Z, X)) {
      if (p.ar[v] != idb) continue;
      images.push_back(E.compose(f, v));
    }
    if (static_cast<int>(images.size()) != n_targets) return false;
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
      return false;
  }
  return true;
}

std::vector<std::vector<int>> objects_by_base(const Functor& p) {
  std::vector<std::vector<int>> by(p.cod->n_obj);
  for (int Z = 0; Z < p.dom->n_obj; ++Z) by[p.ob[Z]].push_back(Z);
  return by;
}

}  // namespace

bool is_cartesian_sga(const Functor& p, int f) {
  return sga_check(p, f, objects_by_base(p)[p.ob[p.dom->src(f)]]);
}

std::vector<char> sga_flags(const Functor& p) {
  auto by = objects_by_base(p);
  std::vector<char> out(p.dom->n_arrows(), 0);
  for (int f = 0; f < p.dom->n_arrows(); ++f)
    out[f] = p.dom->is_id(f) ||
             sga_check(p, f, by[p.ob[p.dom->src(f)]]);
  return out;
}

std::vector<char> cartesian_flags(const Functor& p) {
  // The weak bijection property is implied by the strong one, so it is a
  // sound screen: only screened arrows get the expensive exhaustive check.
  std::vector<char> out = sga_flags(p);
  for (int f = 0; f < p.dom->n_arrows(); ++f) {
    if (!out[f] || p.dom->is_id(f)) continue;
    out[f] = is_cartesian_bool(p, f, nullptr, nullptr);
  }
  return out;
}

// ---- fibrations and cleavages -------------------------------------------

namespace {

// Shared core: choose the least Cartesian lift for every (u, E); on failure
// report the unliftable pair.
bool choose_cleavage(const Functor& p, const std::vector<char>& flags,
                     std::unordered_map<std::uint64_t, int>& out, json& cx,
                     long long& checks) {
  const auto& B = *p.cod;
  LiftIndex idx = LiftIndex::build(p);
  for (int E = 0; E < p.dom->n_obj; ++E) {
    for (int u : B.arrows_into(p.ob[E])) {
      ++checks;
      int chosen = -1;
      for (int cand : idx.lifts_into(u, E)) {
        if (flags[cand]) {
          chosen = cand;
          break;  // lift lists are built in ascending arrow order
        }
      }
      if (chosen < 0) {
        cx = {{"kind", "no-cartesian-lift"}, {"base_arrow", u}, {"object", E}};
        return false;
      }
      out[pair_key(u, E)] = chosen;
    }
  }
  return true;
}

}  // namespace

Report is_fibration(const Functor& p) {
  Report r;
  auto flags = cartesian_flags(p);
  r.checks += p.dom->n_arrows();
  std::unordered_map<std::uint64_t, int> cl;
  json cx;
  if (!choose_cleavage(p, flags, cl, cx, r.checks))
    return Report::bad(cx, "not a fibration", r.checks);
  r.witness = {{"pairs", cl.size()}};
  return r;
}

Report is_opfibration(const Functor& p) {
  auto r = is_fibration(fincat::opposite_functor(p));
  if (!r.pass) r.note = "not an opfibration";
  return r;
}

Report is_discrete_fibration(const Functor& p) {
  Report r;
  const auto& B = *p.cod;
  LiftIndex idx = LiftIndex::build(p);
  for (int E = 0; E < p.dom->n_obj; ++E) {
    for (int u : B.arrows_into(p.ob[E])) {
      ++r.checks;
      auto& cands = idx.lifts_into(u, E);
      if (cands.size() != 1)
        return Report::bad({{"kind", "discrete-lift-count"},
                            {"base_arrow", u},
                            {"object", E},
                            {"lifts", cands.size()}},
                           "wrong number of lifts", r.checks);
    }
  }
  return r;
}

ClovenFibration build_cleavage(const Functor& p) {
  return build_cleavage(p, cartesian_flags(p));
}

ClovenFibration build_cleavage(const Functor& p, std::vector<char> flags) {
  ClovenFibration c;
  c.p = p;
  c.flags = std::move(flags);
  json cx;
  long long checks = 0;
  if (!choose_cleavage(p, c.flags, c.cleavage, cx, checks))
    throw PreconditionError("build_cleavage: not a fibration (base arrow " +
                            std::to_string(cx["base_arrow"].get<int>()) +
                            ", object " + std::to_string(cx["object"].get<int>()) + ")");
  return c;
}

Report validate_cloven(const ClovenFibration& c) {
  Report r;
  const auto& E = *c.p.dom;
  auto flags = c.flags.empty() ? cartesian_flags(c.p) : c.flags;
  for (const auto& [key, l] : c.cleavage) {
    int u = static_cast<int>(key >> 32), obj = static_cast<int>(key & 0xffffffffu);
    ++r.checks;
    if (l < 0 || l >= E.n_arrows() || E.tgt(l) != obj || c.p.ar[l] != u)
      return Report::bad({{"kind", "cleavage-typing"}, {"base_arrow", u}, {"object", obj}},
                         "cleavage entry is not a lift of its pair", r.checks);
    if (!flags[l])
      return Report::bad({{"kind", "cleavage-not-cartesian"}, {"base_arrow", u},
                          {"object", obj}, {"lift", l}},
                         "chosen lift is not Cartesian", r.checks);
  }
  // Every (u, E) pair must be covered.
  const auto& B = *c.p.cod;
  for (int obj = 0; obj < E.n_obj; ++obj)
    for (int u : B.arrows_into(c.p.ob[obj])) {
      ++r.checks;
      if (c.lift(u, obj) < 0)
        return Report::bad({{"kind", "cleavage-missing"}, {"base_arrow", u}, {"object", obj}},
                           "cleavage has no entry for a liftable pair", r.checks);
    }
  return r;
}

Report is_split(const ClovenFibration& c) {
  Report r;
  const auto& E = *c.p.dom;
  const auto& B = *c.p.cod;
  for (int obj = 0; obj < E.n_obj; ++obj) {
    ++r.checks;
    if (c.lift(B.id(c.p.ob[obj]), obj) != E.id(obj))
      return Report::bad({{"kind", "split-identity"}, {"object", obj}},
                         "chosen lift of an identity is not the identity", r.checks);
  }
  for (const auto& [key, l] : c.cleavage) {
    int u = static_cast<int>(key >> 32), obj = static_cast<int>(key & 0xffffffffu);
    int X = E.src(l);
    for (int v : B.arrows_into(B.src(u))) {
      ++r.checks;
      int m = c.lift(v, X);
      int uv = B.compose(u, v);
      if (m < 0 || uv < 0) continue;
      int luv = c.lift(uv, obj);
      if (luv < 0) continue;  // outside the sampled window
      if (E.compose(l, m) != luv)
        return Report::bad({{"kind", "split-composition"}, {"u", u}, {"v", v},
                            {"object", obj}},
                           "cleavage not closed under composition", r.checks);
    }
  }
  return r;
}

// ---- fibration squares ---------------------------------------------------

Report validate_square(const FibrationSquare& sq) {
  Report r;
  if (sq.top.dom != sq.source->p.dom || sq.top.cod != sq.target->p.dom ||
      sq.bottom.dom != sq.source->p.cod || sq.bottom.cod != sq.target->p.cod)
    throw SchemaError("fibration square: functor endpoints do not match");
  auto left = fincat::compose_functors(sq.target->p, sq.top);
  auto right = fincat::compose_functors(sq.bottom, sq.source->p);
  r.checks = static_cast<long long>(left.ob.size() + left.ar.size());
  if (!fincat::functor_equal(left, right))
    return Report::bad({{"kind", "square-noncommuting"}},
                       "square does not commute strictly", r.checks);
  return r;
}

Report is_cartesian_preserving(const FibrationSquare& sq) {
  auto src_flags = sq.source->flags.empty() ? cartesian_flags(sq.source->p)
                                            : sq.source->flags;
  auto tgt_flags = sq.target->flags.empty() ? cartesian_flags(sq.target->p)
                                            : sq.target->flags;
  return is_cartesian_preserving(sq, src_flags, tgt_flags);
}

Report is_cartesian_preserving(const FibrationSquare& sq,
                               const std::vector<char>& src_flags,
                               const std::vector<char>& tgt_flags) {
  Report r = validate_square(sq);
  if (!r.pass) return r;
  for (int f = 0; f < sq.source->p.dom->n_arrows(); ++f) {
    if (!src_flags[f]) continue;
    ++r.checks;
    if (!tgt_flags[sq.top.ar[f]])
      return Report::bad({{"kind", "cartesian-not-preserved"}, {"arrow", f},
                          {"image", sq.top.ar[f]}},
                         "image of a Cartesian arrow is not Cartesian", r.checks);
  }
  return r;
}

Report is_cleavage_preserving(const FibrationSquare& sq) {
  Report r = validate_square(sq);
  if (!r.pass) return r;
  for (const auto& [key, l] : sq.source->cleavage) {
    int u = static_cast<int>(key >> 32), obj = static_cast<int>(key & 0xffffffffu);
    ++r.checks;
    int expect = sq.target->lift(sq.bottom.ar[u], sq.top.ob[obj]);
    if (sq.top.ar[l] != expect)
      return Report::bad({{"kind", "cleavage-not-preserved"}, {"base_arrow", u},
                          {"object", obj}, {"image", sq.top.ar[l]},
                          {"chosen", expect}},
                         "image of a chosen lift is not the chosen lift", r.checks);
  }
  return r;
}

// ---- pullbacks of cloven fibrations -------------------------------------

PullbackFibrationResult pullback_fibrations(const FibrationSquare& s,
                                            const FibrationSquare& t,
                                            bool verify_lemma) {
  if (s.target != t.target)
    throw PreconditionError("pullback_fibrations: cospan targets differ");
  if (!is_cleavage_preserving(s).pass || !is_cleavage_preserving(t).pass)
    throw PreconditionError("pullback_fibrations: a leg is not cleavage-preserving");

  PullbackFibrationResult res;
  res.totals = fincat::pullback_category(s.top, t.top);
  res.bases = fincat::pullback_category(s.bottom, t.bottom);

  Functor p;
  p.dom = res.totals.P;
  p.cod = res.bases.P;
  for (auto& [e1, e2] : res.totals.obj_pairs)
    p.ob.push_back(res.bases.obj_index(s.source->p.ob[e1], t.source->p.ob[e2]));
  for (auto& [f1, f2] : res.totals.arr_pairs)
    p.ar.push_back(res.bases.arr_index(s.source->p.ar[f1], t.source->p.ar[f2]));
  res.fib.p = p;

  // Pairwise cleavage (Appendix: "its cleavage can be chosen pointwise").
  for (int i = 0; i < res.totals.P->n_obj; ++i) {
    auto [E1, E2] = res.totals.obj_pairs[i];
    for (int j : res.bases.P->arrows_into(p.ob[i])) {
      auto [u1, u2] = res.bases.arr_pairs[j];
      int l1 = s.source->lift(u1, E1);
      int l2 = t.source->lift(u2, E2);
      int l = res.totals.arr_index(l1, l2);
      if (l < 0)
        throw PreconditionError(
            "pullback_fibrations: pointwise lifts do not pair (legs not "
            "cleavage-preserving?)");
      res.fib.cleavage[pair_key(j, i)] = l;
    }
  }

  res.fib.flags = cartesian_flags(res.fib.p);
  if (verify_lemma) {
    auto f1flags = s.source->flags.empty() ? cartesian_flags(s.source->p)
                                           : s.source->flags;
    auto f2flags = t.source->flags.empty() ? cartesian_flags(t.source->p)
                                           : t.source->flags;
    Report& lr = res.lemma;
    for (int a = 0; a < res.totals.P->n_arrows(); ++a) {
      auto [a1, a2] = res.totals.arr_pairs[a];
      ++lr.checks;
      bool both = f1flags[a1] && f2flags[a2];
      if (static_cast<bool>(res.fib.flags[a]) != both) {
        lr.merge(Report::bad({{"kind", "pullback-lemma"}, {"arrow", a},
                              {"component1", a1}, {"component2", a2},
                              {"pair_cartesian", static_cast<bool>(res.fib.flags[a])},
                              {"components_cartesian", both}},
                             "pairwise Cartesianness biconditional violated"));
        break;
      }
    }
  }
  return res;
}

Functor opposite_functor_shared(const Functor& p, CatPtr op_dom, CatPtr op_cod) {
  Functor op;
  op.dom = std::move(op_dom);
  op.cod = std::move(op_cod);
  op.ob = p.ob;
  op.ar = p.ar;
  return op;
}

}  // namespace catkit::fib
