#include "catkit/dblcat.hpp"

#include <algorithm>
#include <random>

namespace catkit::dbl {

using fincat::FinCategory;

// ---- PseudoDoubleCategory ------------------------------------------------

void PseudoDoubleCategory::ensure() const {
  if (built_) return;
  pro_from_.assign(E0->n_obj, {});
  for (int m = 0; m < n_pro(); ++m) pro_from_[osrc(m)].push_back(m);
  built_ = true;
}

const std::vector<int>& PseudoDoubleCategory::pro_from(int o) const {
  ensure();
  return pro_from_[o];
}

std::function<int(int, int, int)> strict_associator(const PseudoDoubleCategory* D) {
  return [D](int m, int n, int p) {
    int mn = D->tensor.obj(m, n);
    if (mn < 0) return -1;
    int np = D->tensor.obj(n, p);
    if (np < 0) return -1;
    int l = D->tensor.obj(mn, p);
    int r = D->tensor.obj(m, np);
    if (l < 0 || r < 0 || l != r) return -1;
    return D->E1->id(l);
  };
}

int DoubleFunctor::phi(int m, int n) const {
  if (comp_cell) return comp_cell(m, n);
  int t = cod->tensor.obj(F1.ob[m], F1.ob[n]);
  return t < 0 ? -1 : cod->E1->id(t);
}

int DoubleFunctor::iota(int C) const {
  if (unit_cell) return unit_cell(C);
  return cod->E1->id(cod->unit.ob[F0.ob[C]]);
}

// ---- validation ----------------------------------------------------------

namespace {

struct Strider {
  long long stride = 1, counter = 0;
  bool truncated = false;
  Strider(long long total, long long budget) {
    if (budget >= 0 && total > budget) {
      stride = (total + budget - 1) / std::max<long long>(budget, 1);
      truncated = true;
    }
  }
  bool take() { return counter++ % stride == 0; }
};

json cell_cx(const char* kind, std::initializer_list<std::pair<const char*, int>> kv) {
  json j;
  j["kind"] = kind;
  for (auto& [k, v] : kv) j[k] = v;
  return j;
}

// Look for a two-sided inverse of the E1-arrow a : l -> r.
int find_inverse(const FinCategory& E1, int a) {
  int l = E1.src(a), r = E1.tgt(a);
  for (int b : E1.hom(r, l))
    if (E1.compose(b, a) == E1.id(l) && E1.compose(a, b) == E1.id(r)) return b;
  return -1;
}

}  // namespace

Report validate_double_category(const PseudoDoubleCategory& D, long long budget) {
  if (!D.E0 || !D.E1) throw SchemaError("double category missing a level category");
  if (D.src.dom != D.E1 || D.src.cod != D.E0 || D.tgt.dom != D.E1 || D.tgt.cod != D.E0)
    throw SchemaError("src/tgt are not functors E1 -> E0");
  if (D.unit.dom != D.E0 || D.unit.cod != D.E1)
    throw SchemaError("unit is not a functor E0 -> E1");
  if (!D.tensor.obj || !D.tensor.cell || !D.assoc)
    throw SchemaError("tensor or associator is missing");

  Report r;
  if (!D.total) r.window_certified = true;
  r.merge(validate_category(*D.E0, budget));
  if (!r.pass) return r;
  r.merge(validate_category(*D.E1, budget));
  if (!r.pass) return r;
  r.merge(validate_functor(D.src, budget));
  r.merge(validate_functor(D.tgt, budget));
  r.merge(validate_functor(D.unit, budget));
  if (!r.pass) return r;

  const FinCategory& E0 = *D.E0;
  const FinCategory& E1 = *D.E1;
  const int npro = D.n_pro(), ncell = D.n_cells();

  // unit is a strict section of both src and tgt
  for (int o = 0; o < E0.n_obj; ++o) {
    ++r.checks;
    int y = D.unit.ob[o];
    if (D.osrc(y) != o || D.otgt(y) != o)
      return r.merge(Report::bad(cell_cx("unit-section", {{"object", o}}),
                                 "y is not a section of src/tgt on objects")),
             r;
  }
  {
    Strider st(E0.n_arrows(), budget);
    for (int f = 0; f < E0.n_arrows(); ++f) {
      if (!st.take()) continue;
      ++r.checks;
      int c = D.unit.ar[f];
      if (D.src.ar[c] != f || D.tgt.ar[c] != f)
        return r.merge(Report::bad(cell_cx("unit-section", {{"arrow", f}}),
                                   "y is not a section of src/tgt on arrows")),
               r;
    }
    r.window_certified = r.window_certified || st.truncated;
  }

  std::vector<char> is_unit(npro, 0);
  for (int o = 0; o < E0.n_obj; ++o) is_unit[D.unit.ob[o]] = 1;

  long long skipped = 0;
  auto undefined = [&](json cx, const char* note) -> bool {
    // A missing composite fails a total double category and is a window skip
    // on a provider.
    if (D.total) {
      r.merge(Report::bad(std::move(cx), note));
      return true;
    }
    ++skipped;
    r.window_certified = true;
    return false;
  };

  // unit normalization on proarrows and tensor typing on objects
  long long total_pairs = 0;
  for (int m = 0; m < npro; ++m)
    total_pairs += static_cast<long long>(D.pro_from(D.otgt(m)).size());
  {
    Strider st(npro, budget);
    for (int m = 0; m < npro; ++m) {
      if (!st.take()) continue;
      r.checks += 2;
      int lm = D.tensor.obj(D.unit.ob[D.osrc(m)], m);
      int rm = D.tensor.obj(m, D.unit.ob[D.otgt(m)]);
      if (lm != m || rm != m)
        return r.merge(Report::bad(cell_cx("unit-normal", {{"proarrow", m}}),
                                   "strict unit law fails on a proarrow")),
               r;
    }
    r.window_certified = r.window_certified || st.truncated;
  }
  {
    Strider st(total_pairs, budget);
    for (int m = 0; m < npro; ++m)
      for (int n : D.pro_from(D.otgt(m))) {
        if (!st.take()) continue;
        ++r.checks;
        int t = D.tensor.obj(m, n);
        if (t < 0) {
          if (undefined(cell_cx("tensor-total", {{"m", m}, {"n", n}}),
                        "tensor undefined on a composable pair"))
            return r;
          continue;
        }
        if (D.osrc(t) != D.osrc(m) || D.otgt(t) != D.otgt(n))
          return r.merge(Report::bad(cell_cx("tensor-typing", {{"m", m}, {"n", n}, {"got", t}}),
                                     "tensor endpoints are wrong")),
                 r;
        ++r.checks;
        int idt = D.tensor.cell(E1.id(m), E1.id(n));
        if (idt != E1.id(t))
          return r.merge(Report::bad(cell_cx("tensor-identity", {{"m", m}, {"n", n}}),
                                     "tensor of identity cells is not the identity")),
                 r;
      }
    r.window_certified = r.window_certified || st.truncated;
  }

  // unit normalization on cells
  {
    Strider st(ncell, budget);
    for (int c = 0; c < ncell; ++c) {
      if (!st.take()) continue;
      r.checks += 2;
      int lc = D.tensor.cell(D.unit.ar[D.src.ar[c]], c);
      int rc = D.tensor.cell(c, D.unit.ar[D.tgt.ar[c]]);
      if (lc != c || rc != c)
        return r.merge(Report::bad(cell_cx("unit-normal-cell", {{"cell", c}}),
                                   "strict unit law fails on a cell")),
               r;
    }
    r.window_certified = r.window_certified || st.truncated;
  }

  // tensor typing on cells, over pairs with matching middle leg
  std::vector<std::vector<int>> by_srcleg(E0.n_arrows());
  for (int c = 0; c < ncell; ++c) by_srcleg[D.src.ar[c]].push_back(c);
  long long total_cellpairs = 0;
  for (int c = 0; c < ncell; ++c)
    total_cellpairs += static_cast<long long>(by_srcleg[D.tgt.ar[c]].size());
  {
    auto check_cell_tensor = [&](int c1, int c2) -> bool {
      ++r.checks;
      int m1 = E1.src(c1), n1 = E1.tgt(c1);
      int m2 = E1.src(c2), n2 = E1.tgt(c2);
      int td = D.tensor.obj(m1, m2), tc = D.tensor.obj(n1, n2);
      int t = D.tensor.cell(c1, c2);
      if (t < 0) {
        if (td >= 0 && tc >= 0) {
          r.merge(Report::bad(cell_cx("tensor-cell-missing", {{"c1", c1}, {"c2", c2}}),
                              "cell tensor undefined though both object tensors exist"));
          return false;
        }
        if (undefined(cell_cx("tensor-total", {{"c1", c1}, {"c2", c2}}),
                      "cell tensor outside the window"))
          return false;
        return true;
      }
      if (E1.src(t) != td || E1.tgt(t) != tc || D.src.ar[t] != D.src.ar[c1] ||
          D.tgt.ar[t] != D.tgt.ar[c2]) {
        r.merge(Report::bad(cell_cx("tensor-cell-typing", {{"c1", c1}, {"c2", c2}}),
                            "cell tensor has wrong endpoints or legs"));
        return false;
      }
      return true;
    };
    if (budget < 0 || total_cellpairs <= budget) {
      for (int c1 = 0; c1 < ncell; ++c1)
        for (int c2 : by_srcleg[D.tgt.ar[c1]])
          if (!check_cell_tensor(c1, c2)) return r;
    } else {
      // Sampled: walking every pair just to stride past most of them is too
      // slow on the large windows.
      std::mt19937_64 rng(0x7e45ULL);
      for (long long i = 0; i < budget; ++i) {
        int c1 = static_cast<int>(rng() % ncell);
        const auto& c2s = by_srcleg[D.tgt.ar[c1]];
        if (c2s.empty()) continue;
        if (!check_cell_tensor(c1, c2s[rng() % c2s.size()])) return r;
      }
      r.window_certified = true;
    }
  }

  // interchange: the tensor is a functor E1 x_{E0} E1 -> E1
  auto check_interchange = [&](int c1, int d1, int c2, int d2) -> bool {
    // d1 after c1 and d2 after c2 in E1; c1 tensor-composable with c2.
    int lhs_l = D.tensor.cell(d1, d2), lhs_r = D.tensor.cell(c1, c2);
    int v1 = E1.compose(d1, c1), v2 = E1.compose(d2, c2);
    int rhs = D.tensor.cell(v1, v2);
    if (lhs_l < 0 || lhs_r < 0 || rhs < 0) {
      ++skipped;
      r.window_certified = true;
      return true;
    }
    ++r.checks;
    if (E1.compose(lhs_l, lhs_r) != rhs) {
      r.merge(Report::bad(
          cell_cx("interchange", {{"c1", c1}, {"d1", d1}, {"c2", c2}, {"d2", d2}}),
          "tensor does not commute with internal composition"));
      return false;
    }
    return true;
  };
  if (budget < 0) {
    for (int c1 = 0; c1 < ncell && r.pass; ++c1)
      for (int d1 : E1.arrows_from(E1.tgt(c1))) {
        for (int c2 : by_srcleg[D.tgt.ar[c1]])
          for (int d2 : by_srcleg[D.tgt.ar[d1]]) {
            if (E1.src(d2) != E1.tgt(c2)) continue;
            if (!check_interchange(c1, d1, c2, d2)) return r;
          }
      }
  } else {
    std::mt19937_64 rng(0x5eedULL);
    for (long long i = 0; i < budget; ++i) {
      int c1 = static_cast<int>(rng() % ncell);
      const auto& d1s = E1.arrows_from(E1.tgt(c1));
      const auto& c2s = by_srcleg[D.tgt.ar[c1]];
      if (d1s.empty() || c2s.empty()) continue;
      int d1 = d1s[rng() % d1s.size()];
      int c2 = c2s[rng() % c2s.size()];
      const auto& d2s = by_srcleg[D.tgt.ar[d1]];
      if (d2s.empty()) continue;
      int d2 = d2s[rng() % d2s.size()];
      if (E1.src(d2) != E1.tgt(c2)) continue;
      if (!check_interchange(c1, d1, c2, d2)) return r;
    }
    r.window_certified = true;
  }

  // associator: typing, globularity, iso, unit components, naturality, pentagon
  bool all_identity = true;
  long long total_triples = 0;
  for (int m = 0; m < npro; ++m)
    for (int n : D.pro_from(D.otgt(m)))
      total_triples += static_cast<long long>(D.pro_from(D.otgt(n)).size());
  {
    Strider st(total_triples, budget);
    for (int m = 0; m < npro && r.pass; ++m)
      for (int n : D.pro_from(D.otgt(m)))
        for (int p : D.pro_from(D.otgt(n))) {
          if (!st.take()) continue;
          int mn = D.tensor.obj(m, n), np = D.tensor.obj(n, p);
          int l = mn < 0 ? -1 : D.tensor.obj(mn, p);
          int rr = np < 0 ? -1 : D.tensor.obj(m, np);
          int a = D.assoc(m, n, p);
          if (l < 0 || rr < 0) {
            ++skipped;
            r.window_certified = true;
            continue;
          }
          ++r.checks;
          if (a < 0) {
            r.merge(Report::bad(cell_cx("assoc-missing", {{"m", m}, {"n", n}, {"p", p}}),
                                "associator component missing"));
            return r;
          }
          if (E1.src(a) != l || E1.tgt(a) != rr ||
              D.src.ar[a] != E0.id(D.osrc(m)) || D.tgt.ar[a] != E0.id(D.otgt(p))) {
            r.merge(Report::bad(cell_cx("assoc-typing", {{"m", m}, {"n", n}, {"p", p}}),
                                "associator component not globular with the right ends"));
            return r;
          }
          if (!E1.is_id(a)) {
            all_identity = false;
            ++r.checks;
            if (find_inverse(E1, a) < 0) {
              r.merge(Report::bad(cell_cx("assoc-iso", {{"m", m}, {"n", n}, {"p", p}}),
                                  "associator component is not invertible"));
              return r;
            }
          }
          if (is_unit[m] || is_unit[n] || is_unit[p]) {
            ++r.checks;
            if (!E1.is_id(a)) {
              r.merge(Report::bad(cell_cx("assoc-unit", {{"m", m}, {"n", n}, {"p", p}}),
                                  "unit-argument associator component is not an identity"));
              return r;
            }
          }
        }
    r.window_certified = r.window_certified || st.truncated;
  }

  // pentagon
  auto check_pentagon = [&](int m, int n, int p, int q) -> bool {
    int mn = D.tensor.obj(m, n), pq = D.tensor.obj(p, q), np = D.tensor.obj(n, p);
    if (mn < 0 || pq < 0 || np < 0) {
      ++skipped;
      r.window_certified = true;
      return true;
    }
    int a_mn_p_q = D.assoc(mn, p, q);
    int a_m_n_pq = D.assoc(m, n, pq);
    int a_m_n_p = D.assoc(m, n, p);
    int a_m_np_q = D.assoc(m, np, q);
    int a_n_p_q = D.assoc(n, p, q);
    if (a_mn_p_q < 0 || a_m_n_pq < 0 || a_m_n_p < 0 || a_m_np_q < 0 || a_n_p_q < 0) {
      ++skipped;
      r.window_certified = true;
      return true;
    }
    int lhs = E1.compose(a_m_n_pq, a_mn_p_q);
    int step1 = D.tensor.cell(a_m_n_p, E1.id(q));
    int step3 = D.tensor.cell(E1.id(m), a_n_p_q);
    if (lhs < 0 || step1 < 0 || step3 < 0) {
      ++skipped;
      r.window_certified = true;
      return true;
    }
    int rhs = E1.compose(step3, E1.compose(a_m_np_q, step1));
    ++r.checks;
    if (lhs != rhs) {
      r.merge(Report::bad(cell_cx("pentagon", {{"m", m}, {"n", n}, {"p", p}, {"q", q}}),
                          "pentagon identity fails"));
      return false;
    }
    return true;
  };
  long long total_quads = 0;
  for (int m = 0; m < npro; ++m)
    for (int n : D.pro_from(D.otgt(m)))
      for (int p : D.pro_from(D.otgt(n)))
        total_quads += static_cast<long long>(D.pro_from(D.otgt(p)).size());
  {
    Strider st(total_quads, budget);
    for (int m = 0; m < npro && r.pass; ++m)
      for (int n : D.pro_from(D.otgt(m)))
        for (int p : D.pro_from(D.otgt(n)))
          for (int q : D.pro_from(D.otgt(p))) {
            if (!st.take()) continue;
            if (!check_pentagon(m, n, p, q)) return r;
          }
    r.window_certified = r.window_certified || st.truncated;
  }

  // naturality of the associator in all three arguments
  auto check_nat = [&](int c1, int c2, int c3) -> bool {
    int m = E1.src(c1), n = E1.src(c2), p = E1.src(c3);
    int mp = E1.tgt(c1), np_ = E1.tgt(c2), pp = E1.tgt(c3);
    int a0 = D.assoc(m, n, p), a1 = D.assoc(mp, np_, pp);
    int t12 = D.tensor.cell(c1, c2), t23 = D.tensor.cell(c2, c3);
    int lhs_in = t12 < 0 ? -1 : D.tensor.cell(t12, c3);
    int rhs_in = t23 < 0 ? -1 : D.tensor.cell(c1, t23);
    if (a0 < 0 || a1 < 0 || lhs_in < 0 || rhs_in < 0) {
      ++skipped;
      r.window_certified = true;
      return true;
    }
    ++r.checks;
    if (E1.compose(a1, lhs_in) != E1.compose(rhs_in, a0)) {
      r.merge(Report::bad(cell_cx("assoc-natural", {{"c1", c1}, {"c2", c2}, {"c3", c3}}),
                          "associator not natural"));
      return false;
    }
    return true;
  };
  if (budget < 0) {
    for (int c1 = 0; c1 < ncell && r.pass; ++c1)
      for (int c2 : by_srcleg[D.tgt.ar[c1]])
        for (int c3 : by_srcleg[D.tgt.ar[c2]])
          if (!check_nat(c1, c2, c3)) return r;
  } else {
    std::mt19937_64 rng(0xA55ULL);
    for (long long i = 0; i < budget; ++i) {
      int c1 = static_cast<int>(rng() % ncell);
      const auto& c2s = by_srcleg[D.tgt.ar[c1]];
      if (c2s.empty()) continue;
      int c2 = c2s[rng() % c2s.size()];
      const auto& c3s = by_srcleg[D.tgt.ar[c2]];
      if (c3s.empty()) continue;
      int c3 = c3s[rng() % c3s.size()];
      if (!check_nat(c1, c2, c3)) return r;
    }
    r.window_certified = true;
  }

  r.witness = json{{"strict", all_identity}, {"skipped", skipped}};
  return r;
}

Report validate_double_functor(const DoubleFunctor& F, long long budget) {
  if (!F.dom || !F.cod) throw SchemaError("double functor missing dom or cod");
  if (F.F0.dom != F.dom->E0 || F.F0.cod != F.cod->E0 || F.F1.dom != F.dom->E1 ||
      F.F1.cod != F.cod->E1)
    throw SchemaError("double functor level functors do not match dom/cod");
  if (F.flavor == DoubleFunctor::Flavor::strict && (F.comp_cell || F.unit_cell))
    throw SchemaError("claimed strict but carries comparison data");

  const PseudoDoubleCategory& A = *F.dom;
  const PseudoDoubleCategory& B = *F.cod;
  const FinCategory& AE1 = *A.E1;
  const FinCategory& BE1 = *B.E1;

  Report r;
  if (!A.total || !B.total) r.window_certified = true;
  r.merge(validate_functor(F.F0, budget));
  r.merge(validate_functor(F.F1, budget));
  if (!r.pass) return r;

  // strictly preserves external source and target
  {
    Strider st(A.n_pro() + A.n_cells(), budget);
    for (int m = 0; m < A.n_pro(); ++m) {
      if (!st.take()) continue;
      r.checks += 2;
      if (B.osrc(F.F1.ob[m]) != F.F0.ob[A.osrc(m)] ||
          B.otgt(F.F1.ob[m]) != F.F0.ob[A.otgt(m)])
        return r.merge(Report::bad(cell_cx("src-tgt", {{"proarrow", m}}),
                                   "source/target not strictly preserved")),
               r;
    }
    for (int c = 0; c < A.n_cells(); ++c) {
      if (!st.take()) continue;
      r.checks += 2;
      if (B.src.ar[F.F1.ar[c]] != F.F0.ar[A.src.ar[c]] ||
          B.tgt.ar[F.F1.ar[c]] != F.F0.ar[A.tgt.ar[c]])
        return r.merge(Report::bad(cell_cx("src-tgt", {{"cell", c}}),
                                   "source/target not strictly preserved on a cell")),
               r;
    }
    r.window_certified = r.window_certified || st.truncated;
  }

  long long skipped = 0;
  const bool want_iso = F.flavor != DoubleFunctor::Flavor::lax;
  const bool want_id = F.flavor == DoubleFunctor::Flavor::strict;

  // unit comparisons
  for (int C = 0; C < A.E0->n_obj; ++C) {
    ++r.checks;
    int i = F.iota(C);
    int yc = B.unit.ob[F.F0.ob[C]], fy = F.F1.ob[A.unit.ob[C]];
    if (i < 0 || BE1.src(i) != yc || BE1.tgt(i) != fy ||
        B.src.ar[i] != B.E0->id(F.F0.ob[C]) || B.tgt.ar[i] != B.E0->id(F.F0.ob[C]))
      return r.merge(Report::bad(cell_cx("unit-comparison", {{"object", C}}),
                                 "unit comparison missing or not globular")),
             r;
    if (want_id && !BE1.is_id(i))
      return r.merge(Report::bad(cell_cx("flavor", {{"object", C}}),
                                 "claimed strict but the unit comparison is not an identity")),
             r;
    if (want_iso && !BE1.is_id(i) && find_inverse(BE1, i) < 0)
      return r.merge(Report::bad(cell_cx("flavor", {{"object", C}}),
                                 "claimed pseudo but the unit comparison is not invertible")),
             r;
  }
  // naturality of the unit comparison
  {
    Strider st(A.E0->n_arrows(), budget);
    for (int f = 0; f < A.E0->n_arrows(); ++f) {
      if (!st.take()) continue;
      ++r.checks;
      int Csrc = A.E0->src(f), Ctgt = A.E0->tgt(f);
      int lhs = BE1.compose(F.F1.ar[A.unit.ar[f]], F.iota(Csrc));
      int rhs = BE1.compose(F.iota(Ctgt), B.unit.ar[F.F0.ar[f]]);
      if (lhs != rhs)
        return r.merge(Report::bad(cell_cx("unit-comparison-natural", {{"arrow", f}}),
                                   "unit comparison not natural")),
               r;
    }
    r.window_certified = r.window_certified || st.truncated;
  }

  // composition comparisons: typing, flavor, naturality
  long long total_pairs = 0;
  for (int m = 0; m < A.n_pro(); ++m)
    total_pairs += static_cast<long long>(A.pro_from(A.otgt(m)).size());
  {
    Strider st(total_pairs, budget);
    for (int m = 0; m < A.n_pro(); ++m)
      for (int n : A.pro_from(A.otgt(m))) {
        if (!st.take()) continue;
        int td = A.tensor.obj(m, n);
        int tc = B.tensor.obj(F.F1.ob[m], F.F1.ob[n]);
        if (td < 0 || tc < 0) {
          ++skipped;
          r.window_certified = true;
          continue;
        }
        ++r.checks;
        int p = F.phi(m, n);
        if (p < 0 || BE1.src(p) != tc || BE1.tgt(p) != F.F1.ob[td] ||
            B.src.ar[p] != B.E0->id(F.F0.ob[A.osrc(m)]) ||
            B.tgt.ar[p] != B.E0->id(F.F0.ob[A.otgt(n)]))
          return r.merge(Report::bad(cell_cx("comparison", {{"m", m}, {"n", n}}),
                                     "composition comparison missing or ill-typed")),
                 r;
        if (want_id && !BE1.is_id(p))
          return r.merge(Report::bad(cell_cx("flavor", {{"m", m}, {"n", n}}),
                                     "claimed strict but a comparison is not an identity")),
                 r;
        if (want_iso && !BE1.is_id(p) && find_inverse(BE1, p) < 0)
          return r.merge(Report::bad(cell_cx("flavor", {{"m", m}, {"n", n}}),
                                     "claimed pseudo but a comparison is not invertible")),
                 r;
      }
    r.window_certified = r.window_certified || st.truncated;
  }

  std::vector<std::vector<int>> by_srcleg(A.E0->n_arrows());
  for (int c = 0; c < A.n_cells(); ++c) by_srcleg[A.src.ar[c]].push_back(c);
  auto check_phi_nat = [&](int c1, int c2) -> bool {
    int m = AE1.src(c1), n = AE1.src(c2), mp = AE1.tgt(c1), np = AE1.tgt(c2);
    int td = A.tensor.cell(c1, c2);
    int tb = B.tensor.cell(F.F1.ar[c1], F.F1.ar[c2]);
    int p0 = F.phi(m, n), p1 = F.phi(mp, np);
    if (td < 0 || tb < 0 || p0 < 0 || p1 < 0) {
      ++skipped;
      r.window_certified = true;
      return true;
    }
    ++r.checks;
    if (BE1.compose(F.F1.ar[td], p0) != BE1.compose(p1, tb)) {
      r.merge(Report::bad(cell_cx("comparison-natural", {{"c1", c1}, {"c2", c2}}),
                          "composition comparison not natural"));
      return false;
    }
    return true;
  };
  long long total_cellpairs = 0;
  for (int c = 0; c < A.n_cells(); ++c)
    total_cellpairs += static_cast<long long>(by_srcleg[A.tgt.ar[c]].size());
  if (budget < 0 || total_cellpairs <= budget) {
    for (int c1 = 0; c1 < A.n_cells() && r.pass; ++c1)
      for (int c2 : by_srcleg[A.tgt.ar[c1]])
        if (!check_phi_nat(c1, c2)) return r;
  } else {
    std::mt19937_64 rng(0xF1A7ULL);
    for (long long i = 0; i < budget; ++i) {
      int c1 = static_cast<int>(rng() % A.n_cells());
      const auto& c2s = by_srcleg[A.tgt.ar[c1]];
      if (c2s.empty()) continue;
      if (!check_phi_nat(c1, c2s[rng() % c2s.size()])) return r;
    }
    r.window_certified = true;
  }

  // coherence: associativity hexagon and the two (normalized) unit triangles
  auto check_assoc_coh = [&](int m, int n, int p) -> bool {
    int td_mn = A.tensor.obj(m, n), td_np = A.tensor.obj(n, p);
    int Fm = F.F1.ob[m], Fn = F.F1.ob[n], Fp = F.F1.ob[p];
    int tb_mn = B.tensor.obj(Fm, Fn), tb_np = B.tensor.obj(Fn, Fp);
    if (td_mn < 0 || td_np < 0 || tb_mn < 0 || tb_np < 0) {
      ++skipped;
      r.window_certified = true;
      return true;
    }
    int a_dom = A.assoc(m, n, p), a_cod = B.assoc(Fm, Fn, Fp);
    int phi_mn = F.phi(m, n), phi_np = F.phi(n, p);
    int phi_l = F.phi(td_mn, p), phi_r = F.phi(m, td_np);
    int wl = phi_mn < 0 ? -1 : B.tensor.cell(phi_mn, BE1.id(Fp));
    int wr = phi_np < 0 ? -1 : B.tensor.cell(BE1.id(Fm), phi_np);
    if (a_dom < 0 || a_cod < 0 || phi_l < 0 || phi_r < 0 || wl < 0 || wr < 0) {
      ++skipped;
      r.window_certified = true;
      return true;
    }
    ++r.checks;
    int lhs = BE1.compose(F.F1.ar[a_dom], BE1.compose(phi_l, wl));
    int rhs = BE1.compose(phi_r, BE1.compose(wr, a_cod));
    if (lhs != rhs) {
      r.merge(Report::bad(cell_cx("coherence-assoc", {{"m", m}, {"n", n}, {"p", p}}),
                          "associativity coherence fails"));
      return false;
    }
    return true;
  };
  auto check_unit_coh = [&](int m) -> bool {
    int Fm = F.F1.ob[m];
    int iL = F.iota(A.osrc(m)), iR = F.iota(A.otgt(m));
    int phi_l = F.phi(A.unit.ob[A.osrc(m)], m);
    int phi_r = F.phi(m, A.unit.ob[A.otgt(m)]);
    int wl = iL < 0 ? -1 : B.tensor.cell(iL, BE1.id(Fm));
    int wr = iR < 0 ? -1 : B.tensor.cell(BE1.id(Fm), iR);
    if (phi_l < 0 || phi_r < 0 || wl < 0 || wr < 0) {
      ++skipped;
      r.window_certified = true;
      return true;
    }
    r.checks += 2;
    if (BE1.compose(phi_l, wl) != BE1.id(Fm) || BE1.compose(phi_r, wr) != BE1.id(Fm)) {
      r.merge(Report::bad(cell_cx("coherence-unit", {{"m", m}}),
                          "unit coherence fails"));
      return false;
    }
    return true;
  };
  {
    Strider st(A.n_pro(), budget);
    for (int m = 0; m < A.n_pro(); ++m) {
      if (!st.take()) continue;
      if (!check_unit_coh(m)) return r;
    }
    r.window_certified = r.window_certified || st.truncated;
  }
  long long total_triples = 0;
  for (int m = 0; m < A.n_pro(); ++m)
    for (int n : A.pro_from(A.otgt(m)))
      total_triples += static_cast<long long>(A.pro_from(A.otgt(n)).size());
  {
    Strider st(total_triples, budget);
    for (int m = 0; m < A.n_pro() && r.pass; ++m)
      for (int n : A.pro_from(A.otgt(m)))
        for (int p : A.pro_from(A.otgt(n))) {
          if (!st.take()) continue;
          if (!check_assoc_coh(m, n, p)) return r;
        }
    r.window_certified = r.window_certified || st.truncated;
  }

  r.witness = json{{"skipped", skipped}};
  return r;
}

Report validate_vertical_transformation(const VerticalTransformation& t) {
  const DoubleFunctor& F = t.source;
  const DoubleFunctor& G = t.target;
  if (F.dom != G.dom || F.cod != G.cod)
    throw SchemaError("vertical transformation between non-parallel double functors");
  const PseudoDoubleCategory& A = *F.dom;
  const PseudoDoubleCategory& B = *F.cod;
  const FinCategory& BE0 = *B.E0;
  const FinCategory& BE1 = *B.E1;
  if (static_cast<int>(t.obj_comp.size()) != A.E0->n_obj ||
      static_cast<int>(t.pro_comp.size()) != A.n_pro())
    throw SchemaError("vertical transformation component count mismatch");

  Report r;
  for (int X = 0; X < A.E0->n_obj; ++X) {
    ++r.checks;
    int a = t.obj_comp[X];
    if (a < 0 || BE0.src(a) != F.F0.ob[X] || BE0.tgt(a) != G.F0.ob[X])
      return Report::bad(cell_cx("component-typing", {{"object", X}}),
                         "object component ill-typed", r.checks);
  }
  for (int M = 0; M < A.n_pro(); ++M) {
    ++r.checks;
    int c = t.pro_comp[M];
    if (c < 0 || BE1.src(c) != F.F1.ob[M] || BE1.tgt(c) != G.F1.ob[M] ||
        B.src.ar[c] != t.obj_comp[A.osrc(M)] || B.tgt.ar[c] != t.obj_comp[A.otgt(M)])
      return Report::bad(cell_cx("component-typing", {{"proarrow", M}}),
                         "proarrow component ill-typed", r.checks);
  }
  for (int f = 0; f < A.E0->n_arrows(); ++f) {
    ++r.checks;
    if (BE0.compose(t.obj_comp[A.E0->tgt(f)], F.F0.ar[f]) !=
        BE0.compose(G.F0.ar[f], t.obj_comp[A.E0->src(f)]))
      return Report::bad(cell_cx("naturality", {{"arrow", f}}), "not natural on arrows",
                         r.checks);
  }
  for (int c = 0; c < A.n_cells(); ++c) {
    ++r.checks;
    if (BE1.compose(t.pro_comp[A.E1->tgt(c)], F.F1.ar[c]) !=
        BE1.compose(G.F1.ar[c], t.pro_comp[A.E1->src(c)]))
      return Report::bad(cell_cx("naturality", {{"cell", c}}), "not natural on cells",
                         r.checks);
  }
  // compatibility with units and tensors (through the comparisons)
  for (int X = 0; X < A.E0->n_obj; ++X) {
    ++r.checks;
    int lhs = BE1.compose(t.pro_comp[A.unit.ob[X]], F.iota(X));
    int rhs = BE1.compose(G.iota(X), B.unit.ar[t.obj_comp[X]]);
    if (lhs != rhs)
      return Report::bad(cell_cx("unit-compat", {{"object", X}}),
                         "unit compatibility fails", r.checks);
  }
  for (int m = 0; m < A.n_pro(); ++m)
    for (int n : A.pro_from(A.otgt(m))) {
      int td = A.tensor.obj(m, n);
      int tf = B.tensor.cell(t.pro_comp[m], t.pro_comp[n]);
      int pF = F.phi(m, n), pG = G.phi(m, n);
      if (td < 0 || tf < 0 || pF < 0 || pG < 0) {
        r.window_certified = true;
        continue;
      }
      ++r.checks;
      if (BE1.compose(t.pro_comp[td], pF) != BE1.compose(pG, tf))
        return Report::bad(cell_cx("tensor-compat", {{"m", m}, {"n", n}}),
                           "tensor compatibility fails", r.checks);
    }
  r.window_certified = r.window_certified || !A.total || !B.total;
  return r;
}

DoubleFunctor identity_double_functor(DblPtr D) {
  DoubleFunctor F;
  F.dom = F.cod = D;
  F.F0 = fincat::identity_functor(D->E0);
  F.F1 = fincat::identity_functor(D->E1);
  F.flavor = DoubleFunctor::Flavor::strict;
  return F;
}

DoubleFunctor compose_double_functors(const DoubleFunctor& G, const DoubleFunctor& F) {
  if (F.cod != G.dom) throw PreconditionError("double functors not composable");
  DoubleFunctor H;
  H.dom = F.dom;
  H.cod = G.cod;
  H.F0 = fincat::compose_functors(G.F0, F.F0);
  H.F1 = fincat::compose_functors(G.F1, F.F1);
  H.flavor = std::max(F.flavor, G.flavor);
  if (H.flavor != DoubleFunctor::Flavor::strict) {
    DoubleFunctor Fc = F, Gc = G;
    H.comp_cell = [Fc, Gc](int m, int n) {
      int inner = Fc.phi(m, n);
      int outer = Gc.phi(Fc.F1.ob[m], Fc.F1.ob[n]);
      if (inner < 0 || outer < 0) return -1;
      return Gc.cod->E1->compose(Gc.F1.ar[inner], outer);
    };
    H.unit_cell = [Fc, Gc](int C) {
      int inner = Fc.iota(C);
      int outer = Gc.iota(Fc.F0.ob[C]);
      if (inner < 0 || outer < 0) return -1;
      return Gc.cod->E1->compose(Gc.F1.ar[inner], outer);
    };
  }
  return H;
}

bool double_functor_equal(const DoubleFunctor& F, const DoubleFunctor& G) {
  return F.dom == G.dom && F.cod == G.cod && fincat::functor_equal(F.F0, G.F0) &&
         fincat::functor_equal(F.F1, G.F1);
}

// ---- vertically trivial --------------------------------------------------

DblPtr vertically_trivial(CatPtr C) {
  auto D = std::make_shared<PseudoDoubleCategory>();
  D->E0 = C;
  D->E1 = C;
  D->src = fincat::identity_functor(C);
  D->tgt = fincat::identity_functor(C);
  D->unit = fincat::identity_functor(C);
  D->tensor.obj = [](int m, int n) { return m == n ? m : -1; };
  D->tensor.cell = [](int c1, int c2) { return c1 == c2 ? c1 : -1; };
  D->assoc = strict_associator(D.get());
  D->name = "vertically-trivial";
  return D;
}

// ---- quintets ------------------------------------------------------------

namespace {
std::string pack_ints(std::initializer_list<int> xs) {
  std::string s;
  s.reserve(xs.size() * 4);
  for (int x : xs) s.append(reinterpret_cast<const char*>(&x), 4);
  return s;
}
}  // namespace

int QuintetResult::cell_index(int m, int n, int f, int g, int theta) const {
  auto it = by_square_.find(pair_key(m, n));
  if (it == by_square_.end()) return -1;
  for (int c : it->second) {
    const QCell& q = cells[c];
    if (q.f == f && q.g == g && q.theta == theta) return c;
  }
  return -1;
}

QuintetPtr quintet(twocat::TwoCatPtr K) {
  auto Q = std::make_shared<QuintetResult>();
  Q->K = K;
  const FinCategory& base = *K->base;

  auto E1 = std::make_shared<FinCategory>();
  E1->n_obj = base.n_arrows();
  E1->idn.assign(E1->n_obj, -1);
  for (int m = 0; m < base.n_arrows(); ++m)
    for (int n = 0; n < base.n_arrows(); ++n) {
      for (int f : base.hom(base.src(m), base.src(n)))
        for (int g : base.hom(base.tgt(m), base.tgt(n))) {
          int gm = base.compose(g, m), nf = base.compose(n, f);
          for (int theta : K->cells_between(gm, nf)) {
            int id = static_cast<int>(Q->cells.size());
            Q->cells.push_back({m, n, f, g, theta});
            Q->by_square_[pair_key(m, n)].push_back(id);
            E1->arr.push_back({m, n});
            if (m == n && base.is_id(f) && base.is_id(g) && theta == K->id2[m])
              E1->idn[m] = id;
          }
        }
    }
  const QuintetResult* qr = Q.get();
  E1->composer = [qr](const FinCategory& E, int c2, int c1) {
    const auto& q1 = qr->cells[c1];
    const auto& q2 = qr->cells[c2];
    const FinCategory& b = *qr->K->base;
    int f = b.compose(q2.f, q1.f), g = b.compose(q2.g, q1.g);
    int w1 = qr->K->hc(q2.theta, qr->K->id2[q1.f]);
    int w2 = qr->K->hc(qr->K->id2[q2.g], q1.theta);
    int theta = qr->K->vc(w1, w2);
    if (f < 0 || g < 0 || theta < 0) return -1;
    (void)E;
    return qr->cell_index(q1.m, q2.n, f, g, theta);
  };

  auto D = std::make_shared<PseudoDoubleCategory>();
  D->E0 = K->base;
  D->E1 = E1;
  D->src.dom = E1;
  D->src.cod = K->base;
  D->tgt = D->src;
  for (int m = 0; m < E1->n_obj; ++m) {
    D->src.ob.push_back(base.src(m));
    D->tgt.ob.push_back(base.tgt(m));
  }
  for (const auto& q : Q->cells) {
    D->src.ar.push_back(q.f);
    D->tgt.ar.push_back(q.g);
  }
  D->unit.dom = K->base;
  D->unit.cod = E1;
  for (int o = 0; o < base.n_obj; ++o) D->unit.ob.push_back(base.id(o));
  for (int f = 0; f < base.n_arrows(); ++f)
    D->unit.ar.push_back(Q->cell_index(base.id(base.src(f)), base.id(base.tgt(f)), f, f,
                                       K->id2[f]));
  auto Kc = K;
  auto Qc = Q;
  D->tensor.obj = [Kc](int m, int p) { return Kc->base->compose(p, m); };
  D->tensor.cell = [Kc, Qc](int c1, int c2) {
    const auto& q1 = Qc->cells[c1];
    const auto& q2 = Qc->cells[c2];
    if (q1.g != q2.f) return -1;
    const FinCategory& b = *Kc->base;
    int dm = b.compose(q2.m, q1.m), dn = b.compose(q2.n, q1.n);
    if (dm < 0 || dn < 0) return -1;
    int w1 = Kc->hc(Kc->id2[q2.n], q1.theta);
    int w2 = Kc->hc(q2.theta, Kc->id2[q1.m]);
    int theta = Kc->vc(w1, w2);
    if (theta < 0) return -1;
    return Qc->cell_index(dm, dn, q1.f, q2.g, theta);
  };
  D->assoc = strict_associator(D.get());
  D->name = "quintet";
  Q->D = D;
  return Q;
}

DoubleFunctor quintet_functor(const twocat::TwoFunctor& P, QuintetPtr QD, QuintetPtr QC) {
  if (QD->K != P.dom || QC->K != P.cod)
    throw PreconditionError("quintet_functor: quintets do not match the 2-functor");
  DoubleFunctor F;
  F.dom = QD->D;
  F.cod = QC->D;
  F.F0 = P.f;
  F.F1.dom = QD->D->E1;
  F.F1.cod = QC->D->E1;
  for (int m = 0; m < QD->D->n_pro(); ++m) F.F1.ob.push_back(P.f.ar[m]);
  for (const auto& q : QD->cells)
    F.F1.ar.push_back(QC->cell_index(P.f.ar[q.m], P.f.ar[q.n], P.f.ar[q.f], P.f.ar[q.g],
                                     P.cell_map[q.theta]));
  F.flavor = DoubleFunctor::Flavor::strict;
  return F;
}

// ---- arrow double category -----------------------------------------------

namespace {
// inverse of obj_arrow: arrow of C -> object of the arrow category
std::vector<int> arrow_to_object(const fincat::ArrowCatResult& A, int n_arrows) {
  std::vector<int> inv(n_arrows, -1);
  for (int o = 0; o < static_cast<int>(A.obj_arrow.size()); ++o) inv[A.obj_arrow[o]] = o;
  return inv;
}
}  // namespace

ArrowDoubleResult arrow_double(DblPtr D) {
  ArrowDoubleResult R;
  R.base = D;
  R.A0 = fincat::arrow_category(D->E0);
  R.A1 = fincat::arrow_category(D->E1);
  auto inv0 = arrow_to_object(R.A0, D->E0->n_arrows());
  auto inv1 = arrow_to_object(R.A1, D->E1->n_arrows());

  auto D2 = std::make_shared<PseudoDoubleCategory>();
  D2->E0 = R.A0.C2;
  D2->E1 = R.A1.C2;
  D2->total = D->total;
  D2->name = D->name.empty() ? "arrow-double" : D->name + "^2";

  // src2, tgt2 : A1.C2 -> A0.C2
  D2->src.dom = R.A1.C2;
  D2->src.cod = R.A0.C2;
  D2->tgt = D2->src;
  for (int i = 0; i < R.A1.C2->n_obj; ++i) {
    int c = R.A1.obj_arrow[i];
    D2->src.ob.push_back(inv0[D->src.ar[c]]);
    D2->tgt.ob.push_back(inv0[D->tgt.ar[c]]);
  }
  for (int s = 0; s < R.A1.C2->n_arrows(); ++s) {
    int i = R.A1.C2->src(s), j = R.A1.C2->tgt(s);
    auto [l, rr] = R.A1.arr_legs[s];
    int c = R.A1.obj_arrow[i], cp = R.A1.obj_arrow[j];
    D2->src.ar.push_back(
        R.A0.square(D->src.ar[c], D->src.ar[cp], D->src.ar[l], D->src.ar[rr]));
    D2->tgt.ar.push_back(
        R.A0.square(D->tgt.ar[c], D->tgt.ar[cp], D->tgt.ar[l], D->tgt.ar[rr]));
  }

  // unit2 : A0.C2 -> A1.C2
  D2->unit.dom = R.A0.C2;
  D2->unit.cod = R.A1.C2;
  for (int i = 0; i < R.A0.C2->n_obj; ++i)
    D2->unit.ob.push_back(inv1[D->unit.ar[R.A0.obj_arrow[i]]]);
  for (int s = 0; s < R.A0.C2->n_arrows(); ++s) {
    int f = R.A0.obj_arrow[R.A0.C2->src(s)], g = R.A0.obj_arrow[R.A0.C2->tgt(s)];
    auto [l, rr] = R.A0.arr_legs[s];
    D2->unit.ar.push_back(
        R.A1.square(D->unit.ar[f], D->unit.ar[g], D->unit.ar[l], D->unit.ar[rr]));
  }

  // tensor2
  auto base = D;
  auto A1 = std::make_shared<fincat::ArrowCatResult>(R.A1);
  auto inv1p = std::make_shared<std::vector<int>>(inv1);
  D2->tensor.obj = [base, A1, inv1p](int i, int j) {
    int t = base->tensor.cell(A1->obj_arrow[i], A1->obj_arrow[j]);
    return t < 0 ? -1 : (*inv1p)[t];
  };
  D2->tensor.cell = [base, A1](int s1, int s2) {
    int ci = A1->obj_arrow[A1->C2->src(s1)], cip = A1->obj_arrow[A1->C2->tgt(s1)];
    int cj = A1->obj_arrow[A1->C2->src(s2)], cjp = A1->obj_arrow[A1->C2->tgt(s2)];
    auto [l1, r1] = A1->arr_legs[s1];
    auto [l2, r2] = A1->arr_legs[s2];
    int tdom = base->tensor.cell(ci, cj);
    int tcod = base->tensor.cell(cip, cjp);
    int tl = base->tensor.cell(l1, l2);
    int tr = base->tensor.cell(r1, r2);
    if (tdom < 0 || tcod < 0 || tl < 0 || tr < 0) return -1;
    return A1->square(tdom, tcod, tl, tr);
  };
  D2->assoc = [base, A1](int i, int j, int k) {
    const fincat::FinCategory& E1 = *base->E1;
    int ci = A1->obj_arrow[i], cj = A1->obj_arrow[j], ck = A1->obj_arrow[k];
    int aL = base->assoc(E1.src(ci), E1.src(cj), E1.src(ck));
    int aR = base->assoc(E1.tgt(ci), E1.tgt(cj), E1.tgt(ck));
    int t12 = base->tensor.cell(ci, cj);
    int t23 = base->tensor.cell(cj, ck);
    int lhs = t12 < 0 ? -1 : base->tensor.cell(t12, ck);
    int rhs = t23 < 0 ? -1 : base->tensor.cell(ci, t23);
    if (aL < 0 || aR < 0 || lhs < 0 || rhs < 0) return -1;
    return A1->square(lhs, rhs, aL, aR);
  };
  R.D2 = D2;

  // dom and cod projections
  auto make_proj = [&](bool domside) {
    DoubleFunctor P;
    P.dom = D2;
    P.cod = D;
    P.F0.dom = R.A0.C2;
    P.F0.cod = D->E0;
    for (int i = 0; i < R.A0.C2->n_obj; ++i) {
      int f = R.A0.obj_arrow[i];
      P.F0.ob.push_back(domside ? D->E0->src(f) : D->E0->tgt(f));
    }
    for (int s = 0; s < R.A0.C2->n_arrows(); ++s)
      P.F0.ar.push_back(domside ? R.A0.arr_legs[s].first : R.A0.arr_legs[s].second);
    P.F1.dom = R.A1.C2;
    P.F1.cod = D->E1;
    for (int i = 0; i < R.A1.C2->n_obj; ++i) {
      int c = R.A1.obj_arrow[i];
      P.F1.ob.push_back(domside ? D->E1->src(c) : D->E1->tgt(c));
    }
    for (int s = 0; s < R.A1.C2->n_arrows(); ++s)
      P.F1.ar.push_back(domside ? R.A1.arr_legs[s].first : R.A1.arr_legs[s].second);
    P.flavor = DoubleFunctor::Flavor::strict;
    return P;
  };
  R.dom = make_proj(true);
  R.cod = make_proj(false);
  return R;
}

// ---- comma double category -----------------------------------------------

CommaDoubleResult comma_double(DblPtr D, int C) {
  if (C < 0 || C >= D->E0->n_obj) throw PreconditionError("comma_double: no such object");
  CommaDoubleResult R;
  R.base = D;
  R.C = C;
  const FinCategory& E0 = *D->E0;
  const FinCategory& E1 = *D->E1;
  const int yC = D->unit.ob[C];

  // objects: arrows into C; arrows: commuting triangles
  std::unordered_map<int, int> obj_of;
  for (int x : E0.arrows_into(C)) {
    obj_of[x] = static_cast<int>(R.obj_arrow.size());
    R.obj_arrow.push_back(x);
  }
  auto e0 = std::make_shared<FinCategory>();
  e0->n_obj = static_cast<int>(R.obj_arrow.size());
  e0->idn.assign(e0->n_obj, -1);
  std::unordered_map<std::string, int> tri_idx;
  for (int i = 0; i < e0->n_obj; ++i)
    for (int j = 0; j < e0->n_obj; ++j) {
      int x = R.obj_arrow[i], xp = R.obj_arrow[j];
      for (int l : E0.hom(E0.src(x), E0.src(xp)))
        if (E0.compose(xp, l) == x) {
          int id = static_cast<int>(R.arr_leg.size());
          R.arr_leg.push_back(l);
          e0->arr.push_back({i, j});
          tri_idx[pack_ints({i, j, l})] = id;
          if (i == j && E0.is_id(l)) e0->idn[i] = id;
        }
    }
  for (int a = 0; a < e0->n_arrows(); ++a)
    for (int b = 0; b < e0->n_arrows(); ++b)
      if (e0->arr[a].tgt == e0->arr[b].src) {
        int l = E0.compose(R.arr_leg[b], R.arr_leg[a]);
        auto it = tri_idx.find(pack_ints({e0->arr[a].src, e0->arr[b].tgt, l}));
        if (it != tri_idx.end()) e0->set_comp(b, a, it->second);
      }

  // proarrows: cells into y C; cells: commuting triangles of cells
  std::unordered_map<int, int> pro_of;
  for (int th = 0; th < E1.n_arrows(); ++th)
    if (E1.tgt(th) == yC) {
      pro_of[th] = static_cast<int>(R.pro_cell.size());
      R.pro_cell.push_back(th);
    }
  auto e1 = std::make_shared<FinCategory>();
  e1->n_obj = static_cast<int>(R.pro_cell.size());
  e1->idn.assign(e1->n_obj, -1);
  std::unordered_map<std::string, int> cell_idx;
  for (int i = 0; i < e1->n_obj; ++i)
    for (int j = 0; j < e1->n_obj; ++j) {
      int th = R.pro_cell[i], thp = R.pro_cell[j];
      for (int L : E1.hom(E1.src(th), E1.src(thp)))
        if (E1.compose(thp, L) == th) {
          int id = static_cast<int>(R.cell_leg.size());
          R.cell_leg.push_back(L);
          e1->arr.push_back({i, j});
          cell_idx[pack_ints({i, j, L})] = id;
          if (i == j && E1.is_id(L)) e1->idn[i] = id;
        }
    }
  for (int a = 0; a < e1->n_arrows(); ++a)
    for (int b = 0; b < e1->n_arrows(); ++b)
      if (e1->arr[a].tgt == e1->arr[b].src) {
        int L = E1.compose(R.cell_leg[b], R.cell_leg[a]);
        auto it = cell_idx.find(pack_ints({e1->arr[a].src, e1->arr[b].tgt, L}));
        if (it != cell_idx.end()) e1->set_comp(b, a, it->second);
      }

  auto DC = std::make_shared<PseudoDoubleCategory>();
  DC->E0 = e0;
  DC->E1 = e1;
  DC->total = D->total;
  DC->name = "comma";
  DC->src.dom = e1;
  DC->src.cod = e0;
  DC->tgt = DC->src;
  for (int i = 0; i < e1->n_obj; ++i) {
    int th = R.pro_cell[i];
    DC->src.ob.push_back(obj_of.at(D->src.ar[th]));
    DC->tgt.ob.push_back(obj_of.at(D->tgt.ar[th]));
  }
  for (int a = 0; a < e1->n_arrows(); ++a) {
    int L = R.cell_leg[a];
    int i = e1->arr[a].src, j = e1->arr[a].tgt;
    DC->src.ar.push_back(tri_idx.at(
        pack_ints({DC->src.ob[i], DC->src.ob[j], D->src.ar[L]})));
    DC->tgt.ar.push_back(tri_idx.at(
        pack_ints({DC->tgt.ob[i], DC->tgt.ob[j], D->tgt.ar[L]})));
  }
  DC->unit.dom = e0;
  DC->unit.cod = e1;
  for (int i = 0; i < e0->n_obj; ++i)
    DC->unit.ob.push_back(pro_of.at(D->unit.ar[R.obj_arrow[i]]));
  for (int a = 0; a < e0->n_arrows(); ++a) {
    int l = R.arr_leg[a];
    int i = e0->arr[a].src, j = e0->arr[a].tgt;
    DC->unit.ar.push_back(cell_idx.at(
        pack_ints({DC->unit.ob[i], DC->unit.ob[j], D->unit.ar[l]})));
  }
  auto pro_of_p = std::make_shared<std::unordered_map<int, int>>(pro_of);
  auto cell_idx_p = std::make_shared<std::unordered_map<std::string, int>>(cell_idx);
  auto pro_cell_p = std::make_shared<std::vector<int>>(R.pro_cell);
  auto cell_leg_p = std::make_shared<std::vector<int>>(R.cell_leg);
  auto e1p = e1;
  DC->tensor.obj = [D, pro_of_p, pro_cell_p](int i, int j) {
    int t = D->tensor.cell((*pro_cell_p)[i], (*pro_cell_p)[j]);
    if (t < 0) return -1;
    auto it = pro_of_p->find(t);
    return it == pro_of_p->end() ? -1 : it->second;
  };
  DC->tensor.cell = [D, pro_of_p, pro_cell_p, cell_idx_p, cell_leg_p, e1p](int a, int b) {
    int i1 = e1p->src(a), j1 = e1p->tgt(a);
    int i2 = e1p->src(b), j2 = e1p->tgt(b);
    int tdom = D->tensor.cell((*pro_cell_p)[i1], (*pro_cell_p)[i2]);
    int tcod = D->tensor.cell((*pro_cell_p)[j1], (*pro_cell_p)[j2]);
    int tL = D->tensor.cell((*cell_leg_p)[a], (*cell_leg_p)[b]);
    if (tdom < 0 || tcod < 0 || tL < 0) return -1;
    auto id = pro_of_p->find(tdom);
    auto jd = pro_of_p->find(tcod);
    if (id == pro_of_p->end() || jd == pro_of_p->end()) return -1;
    auto it = cell_idx_p->find(pack_ints({id->second, jd->second, tL}));
    return it == cell_idx_p->end() ? -1 : it->second;
  };
  DC->assoc = [D, pro_of_p, pro_cell_p, cell_idx_p](int i, int j, int k) {
    int m1 = D->E1->src((*pro_cell_p)[i]);
    int m2 = D->E1->src((*pro_cell_p)[j]);
    int m3 = D->E1->src((*pro_cell_p)[k]);
    int a = D->assoc(m1, m2, m3);
    int t12 = D->tensor.cell((*pro_cell_p)[i], (*pro_cell_p)[j]);
    int t23 = D->tensor.cell((*pro_cell_p)[j], (*pro_cell_p)[k]);
    int lhs = t12 < 0 ? -1 : D->tensor.cell(t12, (*pro_cell_p)[k]);
    int rhs = t23 < 0 ? -1 : D->tensor.cell((*pro_cell_p)[i], t23);
    if (a < 0 || lhs < 0 || rhs < 0) return -1;
    auto li = pro_of_p->find(lhs);
    auto ri = pro_of_p->find(rhs);
    if (li == pro_of_p->end() || ri == pro_of_p->end()) return -1;
    auto it = cell_idx_p->find(pack_ints({li->second, ri->second, a}));
    return it == cell_idx_p->end() ? -1 : it->second;
  };
  R.DC = DC;

  R.dom.dom = DC;
  R.dom.cod = D;
  R.dom.F0.dom = e0;
  R.dom.F0.cod = D->E0;
  for (int i = 0; i < e0->n_obj; ++i) R.dom.F0.ob.push_back(E0.src(R.obj_arrow[i]));
  for (int a = 0; a < e0->n_arrows(); ++a) R.dom.F0.ar.push_back(R.arr_leg[a]);
  R.dom.F1.dom = e1;
  R.dom.F1.cod = D->E1;
  for (int i = 0; i < e1->n_obj; ++i) R.dom.F1.ob.push_back(E1.src(R.pro_cell[i]));
  for (int a = 0; a < e1->n_arrows(); ++a) R.dom.F1.ar.push_back(R.cell_leg[a]);
  R.dom.flavor = DoubleFunctor::Flavor::strict;
  return R;
}

// ---- codomain double category --------------------------------------------

std::array<int, 3> chosen_pullback(const FinCategory& C, int f, int g) {
  if (C.tgt(f) != C.tgt(g)) return {-1, -1, -1};
  int a = C.src(f), b = C.src(g);
  for (int p = 0; p < C.n_obj; ++p)
    for (int pa : C.hom(p, a))
      for (int pb : C.hom(p, b)) {
        if (C.compose(f, pa) != C.compose(g, pb)) continue;
        bool universal = true;
        for (int q = 0; q < C.n_obj && universal; ++q)
          for (int qa : C.hom(q, a)) {
            if (!universal) break;
            for (int qb : C.hom(q, b)) {
              if (C.compose(f, qa) != C.compose(g, qb)) continue;
              int count = 0;
              for (int u : C.hom(q, p))
                if (C.compose(pa, u) == qa && C.compose(pb, u) == qb) ++count;
              if (count != 1) {
                universal = false;
                break;
              }
            }
          }
        if (universal) return {p, pa, pb};
      }
  return {-1, -1, -1};
}

CodDoubleResult cod_double(DblPtr D) {
  CodDoubleResult R;
  const FinCategory& E0 = *D->E0;
  const FinCategory& E1 = *D->E1;

  auto fill = [](const FinCategory& C, ChosenPullbacks& out) {
    for (int c = 0; c < C.n_obj; ++c)
      for (int f : C.arrows_into(c))
        for (int g : C.arrows_into(c)) {
          auto pb = chosen_pullback(C, f, g);
          if (pb[0] < 0)
            throw PreconditionError("cod_double: missing pullback of a cospan");
          out.choice[pair_key(f, g)] = pb;
        }
  };
  fill(E0, R.pb0);
  fill(E1, R.pb1);

  // src and tgt must take the chosen pullbacks in E1 to the chosen ones in E0
  for (const auto& [key, pb] : R.pb1.choice) {
    int f = static_cast<int>(key >> 32), g = static_cast<int>(key & 0xffffffffu);
    for (const Functor* pr : {&D->src, &D->tgt}) {
      auto want = R.pb0.choice.at(pair_key(pr->ar[f], pr->ar[g]));
      if (want[0] != pr->ob[pb[0]] || want[1] != pr->ar[pb[1]] || want[2] != pr->ar[pb[2]])
        throw PreconditionError(
            "cod_double: src/tgt do not strictly preserve the chosen pullbacks");
    }
  }

  R.arrows = arrow_double(D);
  return R;
}

// ---- monoidal ------------------------------------------------------------

DblPtr monoidal_as_double(CatPtr M, std::function<int(int, int)> ten_ob,
                          std::function<int(int, int)> ten_ar, int unit_ob,
                          std::string name) {
  auto D = std::make_shared<PseudoDoubleCategory>();
  D->E0 = fincat::terminal_category();
  D->E1 = M;
  D->src.dom = M;
  D->src.cod = D->E0;
  D->src.ob.assign(M->n_obj, 0);
  D->src.ar.assign(M->n_arrows(), D->E0->id(0));
  D->tgt = D->src;
  D->unit.dom = D->E0;
  D->unit.cod = M;
  D->unit.ob = {unit_ob};
  D->unit.ar = {M->id(unit_ob)};
  D->tensor.obj = std::move(ten_ob);
  D->tensor.cell = std::move(ten_ar);
  D->assoc = strict_associator(D.get());
  D->name = std::move(name);
  return D;
}

DblPtr monoid_as_double(int n, const std::vector<std::vector<int>>& mult, int unit) {
  auto M = fincat::discrete_category(n);
  auto Mc = M;
  auto mu = mult;
  return monoidal_as_double(
      M, [mu](int a, int b) { return mu[a][b]; },
      [Mc, mu](int c1, int c2) { return Mc->id(mu[Mc->src(c1)][Mc->src(c2)]); }, unit,
      "monoid");
}

// ---- vertical 2-category -------------------------------------------------

Vertical2CatResult vertical_2cat(const PseudoDoubleCategory& D) {
  Vertical2CatResult R;
  const FinCategory& E0 = *D.E0;
  const FinCategory& E1 = *D.E1;
  std::vector<char> is_unit(D.n_pro(), 0);
  for (int o = 0; o < E0.n_obj; ++o) is_unit[D.unit.ob[o]] = 1;

  auto K = std::make_shared<twocat::Fin2Category>();
  K->base = D.E0;
  K->id2.assign(E0.n_arrows(), -1);
  auto add = [&](int c) {
    int id = K->n_cells();
    // the 2-cell of a globular cell goes from its target leg to its source leg
    K->cells.push_back({D.tgt.ar[c], D.src.ar[c]});
    R.cell_arrow.push_back(c);
    R.arrow_cell[c] = id;
    return id;
  };
  for (int f = 0; f < E0.n_arrows(); ++f) K->id2[f] = add(D.unit.ar[f]);
  for (int c = 0; c < E1.n_arrows(); ++c) {
    if (!is_unit[E1.src(c)] || !is_unit[E1.tgt(c)]) continue;
    if (R.arrow_cell.count(c)) continue;  // already added as an identity
    add(c);
  }
  const int nc = K->n_cells();
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b) {
      int ca = R.cell_arrow[a], cb = R.cell_arrow[b];
      // vertical: b after a needs src(b) = tgt(a), i.e. tgt-leg(cb) = src-leg(ca)
      if (K->cells[b].src_arrow == K->cells[a].tgt_arrow) {
        int t = D.tensor.cell(cb, ca);
        if (t >= 0) {
          auto it = R.arrow_cell.find(t);
          if (it != R.arrow_cell.end()) K->vtable[pair_key(b, a)] = it->second;
        }
      }
      // horizontal: b * a needs the 1-cell boundaries to meet
      if (E0.tgt(K->cells[a].src_arrow) == E0.src(K->cells[b].src_arrow)) {
        int t = E1.compose(cb, ca);
        if (t >= 0) {
          auto it = R.arrow_cell.find(t);
          if (it != R.arrow_cell.end()) K->htable[pair_key(b, a)] = it->second;
        }
      }
    }
  R.K = K;
  return R;
}

}  // namespace catkit::dbl
