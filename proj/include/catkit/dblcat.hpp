#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "catkit/fincat.hpp"
#include "catkit/report.hpp"
#include "catkit/twocat.hpp"

namespace catkit::dbl {

using fincat::CatPtr;
using fincat::Functor;
using fincat::pair_key;

// External composition of proarrows and cells.  Both maps are partial:
// -1 means "undefined", which on total double categories is a validation
// failure and on windowed providers means "outside the window".
struct CellTensor {
  // (m, n) with tgt m = src n  ->  m ⊗ n : src m -+-> tgt n
  std::function<int(int, int)> obj;
  // (c1 : m -> m', c2 : n -> n') with tgt-leg c1 = src-leg c2 -> c1 ⊗ c2
  std::function<int(int, int)> cell;
};

// A (normalized) pseudo double category.  E0 holds objects and (vertical)
// arrows; E1 holds proarrows as objects and cells as arrows.  A cell
// c : m -> n has external source src.ar[c] and target tgt.ar[c].  The unit
// is strict (y(src m) ⊗ m = m = m ⊗ y(tgt m) on the nose); the associator
// may be a nonidentity globular iso.
struct PseudoDoubleCategory {
  CatPtr E0, E1;
  Functor src, tgt;  // E1 -> E0
  Functor unit;      // E0 -> E1  (external unit y)
  CellTensor tensor;
  // (m, n, p) composable -> iso cell (m⊗n)⊗p -> m⊗(n⊗p); -1 out of window
  std::function<int(int, int, int)> assoc;
  bool total = true;  // false: windowed provider, tensor may be partial
  std::string name;

  int n_pro() const { return E1->n_obj; }
  int n_cells() const { return E1->n_arrows(); }
  int osrc(int m) const { return src.ob[m]; }  // endpoints of a proarrow
  int otgt(int m) const { return tgt.ob[m]; }
  // proarrows listed by source object (lazy)
  const std::vector<int>& pro_from(int o) const;

 private:
  mutable bool built_ = false;
  mutable std::vector<std::vector<int>> pro_from_;
  void ensure() const;
};

using DblPtr = std::shared_ptr<const PseudoDoubleCategory>;

// Identity-valued associator for strict double categories: the component at
// (m,n,p) is the identity cell of (m⊗n)⊗p.
std::function<int(int, int, int)> strict_associator(const PseudoDoubleCategory* D);

struct DoubleFunctor {
  enum class Flavor { strict, pseudo, lax };
  DblPtr dom, cod;
  Functor F0, F1;
  Flavor flavor = Flavor::strict;
  // comparison φ(m,n): F1 m ⊗ F1 n -> F1(m ⊗ n); null means identities
  std::function<int(int, int)> comp_cell;
  // comparison ι(C): y(F0 C) -> F1(y C); null means identities
  std::function<int(int)> unit_cell;

  int phi(int m, int n) const;
  int iota(int C) const;
};

// A vertical transformation between parallel double functors F, G : D -> E:
// arrows α_X : F0 X -> G0 X of E.E0 and cells α_M : F1 M -> G1 M of E.E1.
struct VerticalTransformation {
  DoubleFunctor source, target;
  std::vector<int> obj_comp;  // per object of dom.E0
  std::vector<int> pro_comp;  // per proarrow of dom
};

// ---- validation ----------------------------------------------------------

Report validate_double_category(const PseudoDoubleCategory& D, long long budget = -1);
Report validate_double_functor(const DoubleFunctor& F, long long budget = -1);
Report validate_vertical_transformation(const VerticalTransformation& t);

DoubleFunctor identity_double_functor(DblPtr D);
DoubleFunctor compose_double_functors(const DoubleFunctor& G, const DoubleFunctor& F);
bool double_functor_equal(const DoubleFunctor& F, const DoubleFunctor& G);

// ---- builders ------------------------------------------------------------

// A 1-category as a double category whose only proarrows are units and whose
// cells are the arrows (squares with identity proarrow sides).
DblPtr vertically_trivial(CatPtr C);

// Double category of quintets of a strict 2-category: proarrows are the
// arrows of K and a cell from m : A -> B to n : C -> D with external source
// f : A -> C and target g : B -> D is a 2-cell θ : g∘m => n∘f (cells point
// from the internal proarrow domain to the internal proarrow codomain).
struct QuintetResult {
  DblPtr D;
  twocat::TwoCatPtr K;
  struct QCell {
    int m, n, f, g, theta;
  };
  std::vector<QCell> cells;  // E1 arrow id -> quintet data
  int cell_index(int m, int n, int f, int g, int theta) const;
  std::unordered_map<std::uint64_t, std::vector<int>> by_square_;  // (m,n)->cells
};
using QuintetPtr = std::shared_ptr<const QuintetResult>;

QuintetPtr quintet(twocat::TwoCatPtr K);
DoubleFunctor quintet_functor(const twocat::TwoFunctor& P, QuintetPtr QD, QuintetPtr QC);

// Double category of arrows D^2 (objects: vertical arrows of D, proarrows:
// cells of D) with the strict domain and codomain projections.
struct ArrowDoubleResult {
  DblPtr base, D2;
  fincat::ArrowCatResult A0, A1;  // arrow categories of E0, E1
  DoubleFunctor dom, cod;
};
ArrowDoubleResult arrow_double(DblPtr D);

// Comma double category D/C: the sub-double category of D^2 of vertical
// arrows into C and cells with internal codomain y C, with everything
// projecting to identities on the codomain side; dom is the projection.
struct CommaDoubleResult {
  DblPtr base, DC;
  int C;                           // the chosen object of D
  std::vector<int> obj_arrow;      // object of DC.E0 -> arrow of D.E0 into C
  std::vector<int> arr_leg;        // arrow of DC.E0 -> its domain-side leg
  std::vector<int> pro_cell;       // proarrow of DC -> cell of D into y C
  std::vector<int> cell_leg;       // cell of DC -> its domain-side cell of D
  DoubleFunctor dom;
};
CommaDoubleResult comma_double(DblPtr D, int C);

// Codomain projection: D^2 with the cod projection, for a double category
// whose object and proarrow categories have all pullbacks, computed with a
// canonical (least-id) choice that src and tgt must preserve strictly.
// Throws PreconditionError when a pullback is missing or not preserved.
struct ChosenPullbacks {
  // (f : a -> c, g : b -> c) -> (apex p, p -> a, p -> b); empty when missing
  std::unordered_map<std::uint64_t, std::array<int, 3>> choice;
};
struct CodDoubleResult {
  ArrowDoubleResult arrows;
  ChosenPullbacks pb0, pb1;  // canonical pullbacks in E0, E1
};
CodDoubleResult cod_double(DblPtr D);

// Canonical least-id pullback of the cospan (f, g); {-1,-1,-1} when none.
std::array<int, 3> chosen_pullback(const fincat::FinCategory& C, int f, int g);

// One-object double category of a (strict, normalized) monoidal category:
// E0 is terminal, E1 is M, external composition is the tensor.
DblPtr monoidal_as_double(CatPtr M, std::function<int(int, int)> ten_ob,
                          std::function<int(int, int)> ten_ar, int unit_ob,
                          std::string name = "monoidal");
// Discrete special case: a finite monoid (elements 0..n-1, mult, unit).
DblPtr monoid_as_double(int n, const std::vector<std::vector<int>>& mult, int unit);

// ---- windowed providers --------------------------------------------------

// Finite window into the double category of spans of finite sets: objects
// are the sets [0..max_set], proarrows are spans with apex size <= max_apex
// in canonical form (a sorted multiset of (left, right) element pairs),
// composition is by pullback of spans.  The tensor is partial: composites
// whose canonical apex exceeds max_apex are outside the window.
struct SpanWindowData {
  int max_set = 0, max_apex = 0;
  DblPtr D;
  CatPtr fin;                              // E0: skeletal finite sets
  std::vector<std::vector<int>> fun;       // E0 arrow -> graph of the function
  std::unordered_map<std::uint64_t, std::unordered_map<std::string, int>> fun_idx;
  struct Span {
    int a = 0, b = 0;
    std::vector<std::pair<int, int>> el;  // sorted multiset of (left, right)
  };
  std::vector<Span> spans;
  struct Cell {
    int m, n;
    std::vector<int> u, v, w;  // left-set map, right-set map, apex map
  };
  std::vector<Cell> cells;

  int span_index(int a, int b, const std::vector<std::pair<int, int>>& el) const;
  int cell_index(int m, int n, const std::vector<int>& u, const std::vector<int>& v,
                 const std::vector<int>& w) const;
  int fun_arrow(int a, int b, const std::vector<int>& f) const;
  // Pullback apex of spans (m, n): element e of the composite is the matched
  // pair pairs[e] = (index into m.el, index into n.el).  Canonically ordered.
  struct Composite {
    int obj = -1;  // -1 when the apex exceeds the window
    std::vector<std::pair<int, int>> pairs;
  };
  Composite compose_spans(int m, int n) const;

  std::unordered_map<std::string, int> span_idx_, cell_idx_;
};
using SpanWindowPtr = std::shared_ptr<const SpanWindowData>;
SpanWindowPtr span_window(int max_set, int max_apex);

// Finite window into the double category of relations on the same sets.
struct RelWindowData {
  int max_set = 0;
  DblPtr D;
  CatPtr fin;
  std::vector<std::vector<int>> fun;
  struct Rel {
    int a = 0, b = 0;
    std::vector<std::pair<int, int>> el;  // sorted set of related pairs
  };
  std::vector<Rel> rels;
  struct Cell {
    int m, n;
    std::vector<int> u, v;
  };
  std::vector<Cell> cells;
  int rel_index(int a, int b, const std::vector<std::pair<int, int>>& el) const;
  int cell_index(int m, int n, const std::vector<int>& u,
                 const std::vector<int>& v) const;
  std::unordered_map<std::string, int> rel_idx_, cell_idx_;
};
using RelWindowPtr = std::shared_ptr<const RelWindowData>;
RelWindowPtr rel_window(int max_set);

// The direct-image double functor from spans to relations on a shared window
// (a span goes to the set of its (left, right) pairs with duplicates merged).
struct ImageResult {
  SpanWindowPtr span;
  RelWindowPtr rel;
  DoubleFunctor im;
};
ImageResult image_functor(int max_set, int max_apex);

// Finite window into the double category of set-indexed families of objects
// of C: objects are families X : [I] -> ob C with I <= max_index, proarrows
// are spans of index sets (apex <= max_index) together with a component
// arrow X_{d0 s} -> Y_{d1 s} for every apex element, cells are span
// morphisms plus componentwise arrows subject to the elementwise
// commuting-square condition.
struct FamWindowData {
  CatPtr C;
  int max_index = 0;
  SpanWindowPtr base;
  DblPtr D;
  CatPtr fam0;
  struct FamObj {
    int I;                 // base object (set size)
    std::vector<int> fam;  // element -> object of C
  };
  std::vector<FamObj> objs;
  struct FamArr {
    int h;                  // base function arrow
    std::vector<int> comp;  // element i -> arrow X_i -> Y_{h(i)}
  };
  std::vector<FamArr> arrs;
  struct FamPro {
    int m;                   // base span
    int X, Y;                // family objects at the feet
    std::vector<int> theta;  // apex element -> arrow of C
  };
  std::vector<FamPro> pros;
  struct FamCell {
    int c;                    // base span cell
    int P, Q;                 // dom/cod proarrow
    std::vector<int> alpha;   // left components
    std::vector<int> beta;    // right components
  };
  std::vector<FamCell> cells;
  DoubleFunctor proj;  // strict projection to the base span window

  int obj_index(int I, const std::vector<int>& fam) const;
  int arr_index(int h, const std::vector<int>& comp) const;
  int pro_index(int m, int X, int Y, const std::vector<int>& theta) const;
  int cell_index(int c, int P, int Q, const std::vector<int>& alpha,
                 const std::vector<int>& beta) const;
  std::unordered_map<std::string, int> obj_idx_, arr_idx_, pro_idx_, cell_idx_;
};
using FamWindowPtr = std::shared_ptr<const FamWindowData>;
FamWindowPtr fam_window(CatPtr C, int max_index);

// Uniform handle for the windowed providers.
struct DoubleProvider {
  std::string kind;
  json window;
  DblPtr D;
  SpanWindowPtr span;
  RelWindowPtr rel;
  FamWindowPtr fam;
};
// kind: "span" {max_set, max_apex}; "rel" {max_set};
// "fam" {max_index, base: "walking_arrow"|"chain3"}; "monoidal" {n: 2}.
DoubleProvider build_provider(const std::string& kind, const json& window);

// ---- vertical 2-category -------------------------------------------------

// The 2-category of objects, vertical arrows and horizontally globular cells
// of D.  A cell c : y X -> y Y becomes a 2-cell tgt-leg => src-leg; vertical
// composition of 2-cells is the external tensor, horizontal composition is
// internal composition in E1.
struct Vertical2CatResult {
  twocat::TwoCatPtr K;
  std::vector<int> cell_arrow;  // 2-cell of K -> globular cell of D
  std::unordered_map<int, int> arrow_cell;
};
Vertical2CatResult vertical_2cat(const PseudoDoubleCategory& D);

}  // namespace catkit::dbl
