#include "catkit/dblfib.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>
#include <vector>

namespace catkit::dblfib {

using dbl::PseudoDoubleCategory;
using fincat::CatPtr;
using fincat::FinCategory;
using fincat::Functor;
using fincat::pair_key;

namespace {

// Lazily memoized Cartesianness for the cell-level functor; full flag
// vectors are too expensive on the large windowed providers.
struct LazyCartesian {
  const Functor* p;
  std::unordered_map<int, char> memo;

  bool operator()(int c, long long* checks) {
    if (p->dom->is_id(c)) return true;
    auto it = memo.find(c);
    if (it != memo.end()) return it->second != 0;
    bool ok = fib::is_cartesian_sga(*p, c) &&
              fib::is_cartesian_bool(*p, c, nullptr, checks);
    memo.emplace(c, ok ? 1 : 0);
    return ok;
  }
};

int find_inverse(const FinCategory& C, int a) {
  int l = C.src(a), r = C.tgt(a);
  for (int b : C.hom(r, l))
    if (C.compose(b, a) == C.id(l) && C.compose(a, b) == C.id(r)) return b;
  return -1;
}

// One object-level lift problem: base arrow u into the image of fiber
// object X, with its Cartesian candidates in preference order.
struct Var {
  int u, X;
  std::vector<int> cands;
};

// One cell-level problem: base cell u into the image of proarrow M.  The
// problem constrains the two object-level variables carrying its legs; pick
// maps an admissible (src-leg, tgt-leg) pair to the least Cartesian lift
// realizing it.
struct Cons {
  int u, M;
  int v1, v2;
  std::unordered_map<std::uint64_t, int> pick;
};

struct CleavageSearch {
  std::vector<Var> vars;
  std::unordered_map<std::uint64_t, int> var_of;
  std::vector<Cons> cons;
  std::vector<int> assign;
  long long skipped = 0;
};

// Tensor-composable pairs among the chosen cell-level lifts.  By vertical-iso
// closure it is enough to test preservation on chosen lifts: every Cartesian
// cell is a chosen lift composed with a vertical iso, and the unit and the
// tensor send vertical isos to vertical isos.
template <typename Fn>
void for_chosen_pairs(const PseudoDoubleCategory& E, const DoubleCleavage& cl,
                      long long budget, Fn&& fn) {
  std::vector<int> cells;
  cells.reserve(cl.c1.cleavage.size());
  for (const auto& [key, c] : cl.c1.cleavage) cells.push_back(c);
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  std::unordered_map<int, std::vector<int>> by_srcleg;
  for (int c : cells) by_srcleg[E.src.ar[c]].push_back(c);
  long long used = 0;
  for (int c : cells) {
    auto it = by_srcleg.find(E.tgt.ar[c]);
    if (it == by_srcleg.end()) continue;
    for (int d : it->second) {
      if (budget >= 0 && ++used > budget) return;
      if (!fn(c, d)) return;
    }
  }
}

// Condition 2 of the characterization: the external unit and tensor send
// Cartesian cells to Cartesian cells.
Report cartesian_preservation(const DoubleFunctor& P, const DoubleCleavage& cl,
                              long long budget, LazyCartesian& cart) {
  const PseudoDoubleCategory& E = *P.dom;
  const PseudoDoubleCategory& B = *P.cod;
  Report r;

  if (E.total && B.total && budget < 0 && E.E1->n_arrows() <= 2500) {
    // Small total instance: run the full flag-based check through the
    // fibration squares, with the tensor's domain as a pullback fibration.
    auto flags1 = fib::cartesian_flags(P.F1);
    auto cl0 = std::make_shared<fib::ClovenFibration>(cl.c0);
    auto cl1 = std::make_shared<fib::ClovenFibration>(cl.c1);
    cl1->flags = flags1;
    fib::FibrationSquare unit_sq{cl0, cl1, E.unit, B.unit};
    auto ur = fib::is_cartesian_preserving(unit_sq, cl.c0.flags, flags1);
    r.checks += ur.checks;
    if (!ur.pass) {
      json cx = ur.counterexample;
      cx["condition"] = 2;
      cx["kind"] = "unit-not-cartesian-preserving";
      return r.merge(Report::bad(cx, "y does not preserve Cartesian arrows")), r;
    }
    fib::FibrationSquare tgt_sq{cl1, cl0, E.tgt, B.tgt};
    fib::FibrationSquare src_sq{cl1, cl0, E.src, B.src};
    auto pb = fib::pullback_fibrations(tgt_sq, src_sq, false);
    Functor ten, ten_b;
    ten.dom = pb.totals.P;
    ten.cod = E.E1;
    for (auto& [m, n] : pb.totals.obj_pairs) ten.ob.push_back(E.tensor.obj(m, n));
    for (auto& [c, d] : pb.totals.arr_pairs) ten.ar.push_back(E.tensor.cell(c, d));
    ten_b.dom = pb.bases.P;
    ten_b.cod = B.E1;
    for (auto& [m, n] : pb.bases.obj_pairs) ten_b.ob.push_back(B.tensor.obj(m, n));
    for (auto& [c, d] : pb.bases.arr_pairs) ten_b.ar.push_back(B.tensor.cell(c, d));
    fib::FibrationSquare ten_sq{std::make_shared<fib::ClovenFibration>(pb.fib), cl1,
                                ten, ten_b};
    auto tr = fib::is_cartesian_preserving(ten_sq, pb.fib.flags, flags1);
    r.checks += tr.checks;
    if (!tr.pass) {
      json cx = tr.counterexample;
      cx["condition"] = 2;
      cx["kind"] = "tensor-not-cartesian-preserving";
      return r.merge(Report::bad(cx, "tensor does not preserve Cartesian cells")), r;
    }
    return r;
  }

  // Reduced (but exact, by iso closure) check on the chosen lifts.
  r.window_certified = !E.total || !B.total;
  for (const auto& [key, l] : cl.c0.cleavage) {
    ++r.checks;
    int img = E.unit.ar[l];
    if (!cart(img, &r.checks))
      return r.merge(Report::bad(
                 json{{"kind", "unit-not-cartesian-preserving"},
                      {"condition", 2},
                      {"base_arrow", static_cast<int>(key >> 32)},
                      {"object", static_cast<int>(key & 0xffffffffu)},
                      {"image", img}},
                 "y of a chosen Cartesian lift is not Cartesian")),
             r;
  }
  bool failed = false;
  json cx;
  for_chosen_pairs(E, cl, budget, [&](int c, int d) {
    int t = E.tensor.cell(c, d);
    if (t < 0) {
      r.window_certified = true;
      return true;
    }
    ++r.checks;
    if (!cart(t, &r.checks)) {
      failed = true;
      cx = {{"kind", "tensor-not-cartesian-preserving"},
            {"condition", 2},
            {"c", c},
            {"d", d},
            {"tensor", t}};
      return false;
    }
    return true;
  });
  if (failed)
    r.merge(Report::bad(cx, "tensor of chosen Cartesian lifts is not Cartesian"));
  if (budget >= 0) r.window_certified = true;
  return r;
}

// Condition 3: the unit and tensor send chosen lifts to chosen lifts.
Report chosen_preservation(const DoubleFunctor& P, const DoubleCleavage& cl,
                           long long budget) {
  const PseudoDoubleCategory& E = *P.dom;
  const PseudoDoubleCategory& B = *P.cod;
  Report r;
  r.window_certified = !E.total || !B.total;
  for (const auto& [key, l] : cl.c0.cleavage) {
    int u = static_cast<int>(key >> 32), X = static_cast<int>(key & 0xffffffffu);
    ++r.checks;
    int expect = cl.c1.lift(B.unit.ar[u], E.unit.ob[X]);
    if (expect < 0) {
      r.window_certified = true;
      continue;  // problem outside the sampled window
    }
    if (E.unit.ar[l] != expect)
      return r.merge(Report::bad(json{{"kind", "unit-not-cleavage-preserving"},
                                      {"condition", 3},
                                      {"base_arrow", u},
                                      {"object", X}},
                                 "y of a chosen lift is not the chosen lift")),
             r;
  }
  bool failed = false;
  json cx;
  for_chosen_pairs(E, cl, budget, [&](int c, int d) {
    int t = E.tensor.cell(c, d);
    int tb = B.tensor.cell(P.F1.ar[c], P.F1.ar[d]);
    int tm = E.tensor.obj(E.E1->src(c), E.E1->src(d));
    int tM = E.tensor.obj(E.E1->tgt(c), E.E1->tgt(d));
    if (t < 0 || tb < 0 || tM < 0 || tm < 0) {
      r.window_certified = true;
      return true;
    }
    int expect = cl.c1.lift(tb, tM);
    if (expect < 0) {
      r.window_certified = true;
      return true;
    }
    ++r.checks;
    if (t != expect) {
      failed = true;
      cx = {{"kind", "tensor-not-cleavage-preserving"},
            {"condition", 3},
            {"c", c},
            {"d", d},
            {"tensor", t},
            {"chosen", expect}};
      return false;
    }
    return true;
  });
  if (failed) r.merge(Report::bad(cx, "tensor of chosen lifts is not the chosen lift"));
  if (budget >= 0) r.window_certified = true;
  return r;
}

}  // namespace

Report find_double_cleavage(const DoubleFunctor& P, DoubleCleavage* out,
                            long long budget) {
  if (!P.dom || !P.cod) throw SchemaError("cleavage search: functor has no dom/cod");
  if (P.flavor == DoubleFunctor::Flavor::lax)
    throw PreconditionError("cleavage search needs a strict or pseudo double functor");

  const PseudoDoubleCategory& E = *P.dom;
  const PseudoDoubleCategory& B = *P.cod;
  const FinCategory& EE0 = *E.E0;
  const FinCategory& BE0 = *B.E0;
  const FinCategory& EE1 = *E.E1;
  const FinCategory& BE1 = *B.E1;

  Report r;
  if (!E.total || !B.total) r.window_certified = true;

  // Object level: Cartesian candidates for every (base arrow, fiber object).
  auto flags0 = fib::cartesian_flags(P.F0);
  fib::LiftIndex idx0 = fib::LiftIndex::build(P.F0);
  CleavageSearch s;
  for (int X = 0; X < EE0.n_obj; ++X)
    for (int u : BE0.arrows_into(P.F0.ob[X])) {
      ++r.checks;
      Var v{u, X, {}};
      for (int cand : idx0.lifts_into(u, X))
        if (flags0[cand]) v.cands.push_back(cand);
      if (BE0.is_id(u)) {
        auto it = std::find(v.cands.begin(), v.cands.end(), EE0.id(X));
        if (it != v.cands.end()) std::iter_swap(v.cands.begin(), it);
      }
      if (v.cands.empty())
        return r.merge(Report::bad(json{{"kind", "no-cartesian-lift"},
                                        {"condition", 1},
                                        {"level", 0},
                                        {"base_arrow", u},
                                        {"object", X}},
                                   "the object-level functor is not a fibration")),
               r;
      s.var_of[pair_key(u, X)] = static_cast<int>(s.vars.size());
      s.vars.push_back(std::move(v));
    }

  // Cell level: one constraint per (base cell, proarrow) problem.  Identity
  // problems are never sampled out (the split checks rely on them).
  fib::LiftIndex idx1 = fib::LiftIndex::build(P.F1);
  LazyCartesian cart{&P.F1, {}};
  long long total_problems = 0;
  for (int M = 0; M < E.n_pro(); ++M)
    total_problems += static_cast<long long>(BE1.arrows_into(P.F1.ob[M]).size());
  long long stride = 1;
  if (budget >= 0 && total_problems > budget)
    stride = (total_problems + budget - 1) / std::max<long long>(budget, 1);
  long long counter = 0;
  for (int M = 0; M < E.n_pro(); ++M)
    for (int u : BE1.arrows_into(P.F1.ob[M])) {
      if (!BE1.is_id(u) && counter++ % stride) {
        ++s.skipped;
        continue;
      }
      ++r.checks;
      Cons cn;
      cn.u = u;
      cn.M = M;
      cn.v1 = s.var_of.at(pair_key(B.src.ar[u], E.osrc(M)));
      cn.v2 = s.var_of.at(pair_key(B.tgt.ar[u], E.otgt(M)));
      bool any = false;
      for (int cand : idx1.lifts_into(u, M)) {
        if (!cart(cand, &r.checks)) continue;
        any = true;
        std::uint64_t k = pair_key(E.src.ar[cand], E.tgt.ar[cand]);
        if (!cn.pick.count(k)) cn.pick[k] = cand;
        if (BE1.is_id(u) && cand == EE1.id(M)) cn.pick[k] = cand;
      }
      if (!any)
        return r.merge(Report::bad(json{{"kind", "no-cartesian-lift"},
                                        {"condition", 1},
                                        {"level", 1},
                                        {"base_cell", u},
                                        {"proarrow", M}},
                                   "the cell-level functor is not a fibration")),
               r;
      // quick support test: some candidate pair of object-level choices
      // must realize a pick, or the constraint is unsatisfiable outright
      bool supported = false;
      for (int a : s.vars[cn.v1].cands) {
        for (int b : s.vars[cn.v2].cands)
          if (cn.pick.count(pair_key(a, b))) {
            supported = true;
            break;
          }
        if (supported) break;
      }
      if (!supported)
        return r.merge(Report::bad(
                   json{{"kind", "no-compatible-lift"},
                        {"condition", 2},
                        {"base_cell", u},
                        {"proarrow", M}},
                   "no Cartesian cell lift has chosen-lift legs for this pair")),
               r;
      s.cons.push_back(std::move(cn));
    }
  if (s.skipped) {
    if (E.total && B.total)
      r.inconclusive = true;
    else
      r.window_certified = true;
  }

  // Backtracking over the object-level choices; each constraint ties the
  // two variables carrying the legs of its problem.
  s.assign.assign(s.vars.size(), 0);
  std::vector<std::vector<int>> cons_of(s.vars.size());
  for (int i = 0; i < static_cast<int>(s.cons.size()); ++i) {
    cons_of[s.cons[i].v1].push_back(i);
    if (s.cons[i].v2 != s.cons[i].v1) cons_of[s.cons[i].v2].push_back(i);
  }
  auto satisfied = [&](const Cons& cn, int upto) {
    if (cn.v1 > upto || cn.v2 > upto) return true;
    return cn.pick.count(pair_key(s.vars[cn.v1].cands[s.assign[cn.v1]],
                                  s.vars[cn.v2].cands[s.assign[cn.v2]])) > 0;
  };
  const long long bound = 2000000;
  long long steps = 0;
  int k = 0, last_bad = -1;
  bool truncated = false;
  while (k >= 0 && k < static_cast<int>(s.vars.size())) {
    if (++steps > bound) {
      truncated = true;
      break;
    }
    if (s.assign[k] >= static_cast<int>(s.vars[k].cands.size())) {
      s.assign[k] = 0;
      --k;
      if (k >= 0) ++s.assign[k];
      continue;
    }
    bool ok = true;
    for (int ci : cons_of[k])
      if (!satisfied(s.cons[ci], k)) {
        ok = false;
        last_bad = ci;
        break;
      }
    if (!ok) {
      ++s.assign[k];
      continue;
    }
    ++k;
  }
  if (truncated) {
    r.inconclusive = true;
    r.note = "cleavage search truncated before exhausting the choice space";
    return r;
  }
  if (k < 0) {
    const Cons& cn = s.cons[last_bad >= 0 ? last_bad : 0];
    return r.merge(Report::bad(json{{"kind", "no-compatible-cleavage"},
                                    {"condition", 2},
                                    {"base_cell", cn.u},
                                    {"proarrow", cn.M}},
                               "every simultaneous choice of lifts is leg-incompatible")),
           r;
  }

  if (out) {
    out->c0 = fib::ClovenFibration{};
    out->c0.p = P.F0;
    out->c0.flags = flags0;
    for (int i = 0; i < static_cast<int>(s.vars.size()); ++i)
      out->c0.cleavage[pair_key(s.vars[i].u, s.vars[i].X)] =
          s.vars[i].cands[s.assign[i]];
    out->c1 = fib::ClovenFibration{};
    out->c1.p = P.F1;
    out->c1.flags.assign(EE1.n_arrows(), 0);
    for (int c = 0; c < EE1.n_arrows(); ++c)
      if (EE1.is_id(c)) out->c1.flags[c] = 1;
    for (const auto& [c, ok] : cart.memo) out->c1.flags[c] = ok;
    for (const Cons& cn : s.cons) {
      int c = cn.pick.at(pair_key(s.vars[cn.v1].cands[s.assign[cn.v1]],
                                  s.vars[cn.v2].cands[s.assign[cn.v2]]));
      out->c1.cleavage[pair_key(cn.u, cn.M)] = c;
    }
  }
  r.witness = json{{"pairs0", s.vars.size()},
                   {"pairs1", s.cons.size()},
                   {"skipped", s.skipped}};
  return r;
}

Report is_double_fibration(const DoubleFunctor& P, long long budget,
                           DoubleCleavage* out) {
  DoubleCleavage local;
  DoubleCleavage& cl = out ? *out : local;
  Report r = find_double_cleavage(P, &cl, budget);
  if (!r.pass || r.inconclusive) return r;
  LazyCartesian cart{&P.F1, {}};
  for (int c = 0; c < P.dom->E1->n_arrows() &&
                  static_cast<std::size_t>(c) < cl.c1.flags.size();
       ++c)
    if (cl.c1.flags[c]) cart.memo.emplace(c, 1);
  r.merge(cartesian_preservation(P, cl, budget, cart));
  return r;
}

Report is_double_opfibration(const DoubleFunctor& P, long long budget) {
  auto r = is_double_fibration(vertical_opposite_functor(P), budget);
  if (!r.pass) r.note = "not a double opfibration: " + r.note;
  return r;
}

Report is_split_double_fibration(const DoubleFunctor& P, long long budget) {
  DoubleCleavage cl;
  Report r = is_double_fibration(P, budget, &cl);
  if (!r.pass || r.inconclusive) return r;
  auto tag = [](Report rep, int level) {
    if (!rep.pass) {
      rep.counterexample["condition"] = "3s";
      rep.counterexample["level"] = level;
    }
    return rep;
  };
  r.merge(tag(fib::is_split(cl.c0), 0));
  if (!r.pass) return r;
  r.merge(tag(fib::is_split(cl.c1), 1));
  if (!r.pass) return r;
  r.merge(chosen_preservation(P, cl, budget));
  return r;
}

Report internal_fibration_check(const DoubleFunctor& P, Flavor flavor,
                                long long budget) {
  if (P.flavor == DoubleFunctor::Flavor::lax)
    throw PreconditionError("internal characterization needs a strict or pseudo functor");
  DoubleCleavage cl;
  Report r = find_double_cleavage(P, &cl, budget);
  std::string fl = flavor == Flavor::lax ? "L" : flavor == Flavor::pseudo ? "P" : "S";
  if (!r.pass) {
    r.counterexample["cleavage_condition"] = r.counterexample.value("condition", 0);
    r.counterexample["condition"] = 1;
    return r;
  }
  if (r.inconclusive) return r;
  if (flavor != Flavor::lax) {
    LazyCartesian cart{&P.F1, {}};
    for (std::size_t c = 0; c < cl.c1.flags.size(); ++c)
      if (cl.c1.flags[c]) cart.memo.emplace(static_cast<int>(c), 1);
    r.merge(cartesian_preservation(P, cl, budget, cart));
    if (!r.pass) return r;
  }
  if (flavor == Flavor::strict) {
    r.merge(chosen_preservation(P, cl, budget));
    if (!r.pass) return r;
    if (P.flavor != DoubleFunctor::Flavor::strict)
      r.note = "strict-level conditions checked on a pseudo functor";
  }
  r.witness["flavor"] = fl;
  r.note = r.note.empty() ? "characterization-certified" : r.note;
  return r;
}

// ---- vertical opposite ---------------------------------------------------

DblPtr vertical_opposite(DblPtr D) {
  auto V = std::make_shared<PseudoDoubleCategory>();
  V->E0 = fincat::opposite_category(D->E0);
  V->E1 = fincat::opposite_category(D->E1);
  V->src = fib::opposite_functor_shared(D->src, V->E1, V->E0);
  V->tgt = fib::opposite_functor_shared(D->tgt, V->E1, V->E0);
  V->unit = fib::opposite_functor_shared(D->unit, V->E0, V->E1);
  V->tensor = D->tensor;  // proarrows and their composites are untouched
  auto base = D;
  V->assoc = [base](int m, int n, int p) {
    int a = base->assoc(m, n, p);
    if (a < 0 || base->E1->is_id(a)) return a;
    return find_inverse(*base->E1, a);
  };
  V->total = D->total;
  V->name = D->name + "^vop";
  return V;
}

DoubleFunctor vertical_opposite_functor(const DoubleFunctor& P) {
  if (P.flavor != DoubleFunctor::Flavor::strict)
    throw PreconditionError("vertical opposite implemented for strict functors");
  DoubleFunctor V;
  V.dom = vertical_opposite(P.dom);
  V.cod = vertical_opposite(P.cod);
  V.F0 = fib::opposite_functor_shared(P.F0, V.dom->E0, V.cod->E0);
  V.F1 = fib::opposite_functor_shared(P.F1, V.dom->E1, V.cod->E1);
  V.flavor = DoubleFunctor::Flavor::strict;
  return V;
}

// ---- generator shapes ----------------------------------------------------

DblPtr terminal_double() { return dbl::vertically_trivial(fincat::terminal_category()); }

DblPtr walking_proarrow_double() {
  auto V = std::make_shared<PseudoDoubleCategory>();
  V->E0 = fincat::discrete_category(2);
  fincat::CatBuilder b;
  b.add_object("y1");
  b.add_object("y2");
  b.add_object("m");
  V->E1 = b.freeze();
  V->src.dom = V->E1;
  V->src.cod = V->E0;
  V->src.ob = {0, 1, 0};
  V->tgt.dom = V->E1;
  V->tgt.cod = V->E0;
  V->tgt.ob = {0, 1, 1};
  for (int i = 0; i < 3; ++i) {
    V->src.ar.push_back(V->E0->id(V->src.ob[i]));
    V->tgt.ar.push_back(V->E0->id(V->tgt.ob[i]));
  }
  V->unit.dom = V->E0;
  V->unit.cod = V->E1;
  V->unit.ob = {0, 1};
  V->unit.ar = {V->E1->id(0), V->E1->id(1)};
  auto ten = [](int a, int b) {
    if (a == 0 || a == 1) return b;
    if (b == 0 || b == 1) return a;
    return -1;
  };
  V->tensor.obj = ten;
  V->tensor.cell = ten;  // only identity cells exist
  V->assoc = dbl::strict_associator(V.get());
  V->name = "walking-proarrow";
  return V;
}

TriangleLift lift_triangle(const LiftingTriangle& t, const DoubleFunctor& P,
                           const DoubleCleavage& cl) {
  if (!t.E.dom || t.E.dom != t.B.dom)
    throw PreconditionError("lifting triangle: E and B must share a generator shape");
  if (t.E.cod != P.dom || t.B.cod != P.cod)
    throw PreconditionError("lifting triangle: E and B do not land in P");
  if (!dbl::double_functor_equal(t.beta.source, t.B) ||
      !dbl::double_functor_equal(t.beta.target, dbl::compose_double_functors(P, t.E)))
    throw PreconditionError("lifting triangle: beta is not B => P o E");

  const PseudoDoubleCategory& E = *P.dom;
  DblPtr X = t.E.dom;
  TriangleLift out;
  out.Eprime.dom = X;
  out.Eprime.cod = P.dom;
  out.Eprime.flavor = DoubleFunctor::Flavor::strict;
  out.alpha.target = t.E;

  if (X->E0->n_obj == 1) {
    // terminal shape: one chosen object-level lift
    int obj = t.E.F0.ob[0];
    int b = t.beta.obj_comp[0];
    int l = cl.c0.lift(b, obj);
    if (l < 0) throw PreconditionError("lift_triangle: no chosen lift for the object");
    int src = E.E0->src(l);
    out.Eprime.F0.dom = X->E0;
    out.Eprime.F0.cod = E.E0;
    out.Eprime.F0.ob = {src};
    out.Eprime.F0.ar = {E.E0->id(src)};
    out.Eprime.F1.dom = X->E1;
    out.Eprime.F1.cod = E.E1;
    out.Eprime.F1.ob = {E.unit.ob[src]};
    out.Eprime.F1.ar = {E.E1->id(E.unit.ob[src])};
    out.alpha.source = out.Eprime;
    out.alpha.obj_comp = {l};
    out.alpha.pro_comp = {E.unit.ar[l]};
    return out;
  }
  if (X->E0->n_obj == 2 && X->E1->n_obj == 3) {
    // walking proarrow: one chosen cell-level lift; legs come along
    int M = t.E.F1.ob[2];
    int bc = t.beta.pro_comp[2];
    int c = cl.c1.lift(bc, M);
    if (c < 0) throw PreconditionError("lift_triangle: no chosen lift for the proarrow");
    int Mp = E.E1->src(c);
    int ls = E.src.ar[c], lt = E.tgt.ar[c];
    int o1 = E.E0->src(ls), o2 = E.E0->src(lt);
    out.Eprime.F0.dom = X->E0;
    out.Eprime.F0.cod = E.E0;
    out.Eprime.F0.ob = {o1, o2};
    out.Eprime.F0.ar = {E.E0->id(o1), E.E0->id(o2)};
    out.Eprime.F1.dom = X->E1;
    out.Eprime.F1.cod = E.E1;
    out.Eprime.F1.ob = {E.unit.ob[o1], E.unit.ob[o2], Mp};
    out.Eprime.F1.ar = {E.E1->id(E.unit.ob[o1]), E.E1->id(E.unit.ob[o2]),
                        E.E1->id(Mp)};
    out.alpha.source = out.Eprime;
    out.alpha.obj_comp = {ls, lt};
    out.alpha.pro_comp = {E.unit.ar[ls], E.unit.ar[lt], c};
    return out;
  }
  throw PreconditionError("lift_triangle: unsupported generator shape");
}

// ---- one-dimensional shadows ---------------------------------------------

Report vh_props(const DoubleFunctor& P, long long budget) {
  DoubleCleavage cl;
  Report r = is_double_fibration(P, budget, &cl);
  if (!r.pass) {
    r.note = "precondition: not a double fibration";
    return r;
  }

  const PseudoDoubleCategory& E = *P.dom;
  const PseudoDoubleCategory& B = *P.cod;

  // (a) chosen object-level lifts are 2-Cartesian in the vertical 2-category
  auto VE = dbl::vertical_2cat(E);
  auto VB = dbl::vertical_2cat(B);
  twocat::TwoFunctor VP;
  VP.dom = VE.K;
  VP.cod = VB.K;
  VP.f.dom = VE.K->base;
  VP.f.cod = VB.K->base;
  VP.f.ob = P.F0.ob;
  VP.f.ar = P.F0.ar;
  VP.cell_map.reserve(VE.K->n_cells());
  for (int v = 0; v < VE.K->n_cells(); ++v) {
    int img = P.F1.ar[VE.cell_arrow[v]];
    auto it = VB.arrow_cell.find(img);
    if (it == VB.arrow_cell.end())
      throw SchemaError("vh_props: image of a globular cell is not globular");
    VP.cell_map.push_back(it->second);
  }
  for (const auto& [key, l] : cl.c0.cleavage) {
    auto res = twocat::is_2cartesian(VP, l);
    r.checks += res.checks;
    if (!res.pass) {
      json cx = res.counterexample;
      cx["kind"] = "chosen-lift-not-2cartesian";
      cx["lift"] = l;
      return r.merge(Report::bad(cx, "a chosen lift is not 2-Cartesian vertically")), r;
    }
  }

  // (b) the cell-level functor restricted to globular cells is a fibration
  // on every hom pair
  for (int X = 0; X < E.E0->n_obj; ++X)
    for (int Y = 0; Y < E.E0->n_obj; ++Y) {
      std::vector<int> pros;
      for (int m = 0; m < E.n_pro(); ++m)
        if (E.osrc(m) == X && E.otgt(m) == Y) pros.push_back(m);
      if (pros.empty()) continue;
      int bX = P.F0.ob[X], bY = P.F0.ob[Y];
      std::vector<int> bpros;
      std::unordered_map<int, int> blocal;
      for (int m = 0; m < B.n_pro(); ++m)
        if (B.osrc(m) == bX && B.otgt(m) == bY) {
          blocal[m] = static_cast<int>(bpros.size());
          bpros.push_back(m);
        }
      auto build = [](const PseudoDoubleCategory& D, const std::vector<int>& ps,
                      int oX, int oY, std::unordered_map<int, int>& cell_local) {
        FinCategory h;
        h.n_obj = static_cast<int>(ps.size());
        std::unordered_map<int, int> local;
        for (int i = 0; i < h.n_obj; ++i) local[ps[i]] = i;
        int idX = D.E0->id(oX), idY = D.E0->id(oY);
        std::vector<int> cells;
        h.idn.assign(h.n_obj, -1);
        for (int i = 0; i < h.n_obj; ++i)
          for (int j = 0; j < h.n_obj; ++j)
            for (int c : D.E1->hom(ps[i], ps[j])) {
              if (D.src.ar[c] != idX || D.tgt.ar[c] != idY) continue;
              cell_local[c] = static_cast<int>(cells.size());
              h.arr.push_back({i, j});
              if (D.E1->is_id(c)) h.idn[i] = static_cast<int>(cells.size());
              cells.push_back(c);
            }
        for (std::size_t a = 0; a < cells.size(); ++a)
          for (std::size_t bb = 0; bb < cells.size(); ++bb) {
            if (h.arr[a].tgt != h.arr[bb].src) continue;
            int comp = D.E1->compose(static_cast<int>(cells[bb]), cells[a]);
            h.set_comp(static_cast<int>(bb), static_cast<int>(a),
                       cell_local.at(comp));
          }
        return std::make_pair(std::make_shared<FinCategory>(std::move(h)), cells);
      };
      std::unordered_map<int, int> elocal_cells, blocal_cells;
      auto [hE, ecells] = build(E, pros, X, Y, elocal_cells);
      auto [hB, bcells] = build(B, bpros, bX, bY, blocal_cells);
      Functor hp;
      hp.dom = hE;
      hp.cod = hB;
      for (int m : pros) hp.ob.push_back(blocal.at(P.F1.ob[m]));
      for (int c : ecells) hp.ar.push_back(blocal_cells.at(P.F1.ar[c]));
      auto res = fib::is_fibration(hp);
      r.checks += res.checks;
      if (!res.pass) {
        json cx = res.counterexample;
        cx["kind"] = "hom-pair-not-fibration";
        cx["X"] = X;
        cx["Y"] = Y;
        return r.merge(Report::bad(cx, "globular restriction is not a fibration")), r;
      }
    }
  r.witness["vh"] = "both";
  return r;
}

Report quintet_equiv_test(const twocat::TwoFunctor& P) {
  auto QD = dbl::quintet(P.dom);
  auto QC = dbl::quintet(P.cod);
  auto F = dbl::quintet_functor(P, QD, QC);
  auto two = twocat::is_2fibration(P);
  auto dbl_r = is_double_fibration(F);
  Report r;
  r.checks = two.checks + dbl_r.checks;
  r.witness = json{{"two_fibration", two.pass}, {"double_fibration", dbl_r.pass}};
  if (two.pass != dbl_r.pass) {
    r.pass = false;
    r.counterexample = json{{"kind", "quintet-equivalence"},
                            {"two_fibration", two.pass},
                            {"double_fibration", dbl_r.pass},
                            {"two", two.pass ? json() : two.counterexample},
                            {"double", dbl_r.pass ? json() : dbl_r.counterexample}};
    r.note = "2-fibration and quintet double fibration checks disagree";
  }
  return r;
}

}  // namespace catkit::dblfib
