#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "catkit/fib.hpp"
#include "catkit/fincat.hpp"
#include "catkit/report.hpp"

namespace catkit::twocat {

using fincat::CatPtr;
using fincat::Functor;
using fincat::pair_key;

// A finite strict 2-category: an underlying 1-category plus 2-cells between
// parallel arrows with vertical and horizontal (whiskering) composition.
struct Fin2Category {
  struct Cell {
    int src_arrow = -1;
    int tgt_arrow = -1;
  };

  CatPtr base;
  std::vector<Cell> cells;
  std::vector<int> id2;  // per arrow: its identity 2-cell
  // vertical table: (b, a) -> b·a when tgt_arrow(a) = src_arrow(b)
  std::unordered_map<std::uint64_t, int> vtable;
  // horizontal table: (b, a) -> b∗a for a: f=>f': A->B, b: g=>g': B->C
  std::unordered_map<std::uint64_t, int> htable;

  int n_cells() const { return static_cast<int>(cells.size()); }
  bool is_id2(int c) const { return id2[cells[c].src_arrow] == c && cells[c].src_arrow == cells[c].tgt_arrow; }
  int vc(int b, int a) const;  // b after a; -1 if untyped/undefined
  int hc(int b, int a) const;  // b∗a;      -1 if untyped/undefined

  // 2-cells from arrow f to arrow g (f, g parallel).
  const std::vector<int>& cells_between(int f, int g) const;
  // all 2-cells whose endpoints are arrows X -> Y
  std::vector<int> cells_in_hom(int X, int Y) const;

 private:
  mutable bool built_ = false;
  mutable std::unordered_map<std::uint64_t, std::vector<int>> between_;
  mutable std::vector<int> empty_;
  void ensure() const;
};

using TwoCatPtr = std::shared_ptr<const Fin2Category>;

struct TwoFunctor {
  TwoCatPtr dom, cod;
  Functor f;  // underlying functor (f.dom == dom->base, f.cod == cod->base)
  std::vector<int> cell_map;
};

// Building helpers: create one identity 2-cell per arrow, then add the
// remaining cells and tables by hand.
void add_identity_2cells(Fin2Category& K);
int add_cell(Fin2Category& K, int src_arrow, int tgt_arrow);

Report validate_2category(const Fin2Category& K);
Report validate_2functor(const TwoFunctor& P);

// 2-category with only identity 2-cells on a given 1-category.
Fin2Category locally_discrete(CatPtr C);
TwoFunctor locally_discrete_functor(const Functor& F);
TwoFunctor identity_2functor(TwoCatPtr K);

// Hom-category extraction: objects are arrows X -> Y, arrows are 2-cells,
// composition is vertical composition.
struct HomCat {
  CatPtr cat;
  std::vector<int> obj_arrow;  // object -> arrow of K
  std::vector<int> arr_cell;   // arrow -> 2-cell of K
  std::unordered_map<int, int> arrow_obj, cell_arr;
};
HomCat hom_category(const Fin2Category& K, int X, int Y);
Functor hom_functor(const TwoFunctor& P, const HomCat& he, const HomCat& hb);

Report is_2cartesian(const TwoFunctor& P, int f);
std::vector<char> twocartesian_flags(const TwoFunctor& P);
Report is_2fibration(const TwoFunctor& P);

}  // namespace catkit::twocat
