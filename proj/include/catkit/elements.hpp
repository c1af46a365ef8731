#pragma once

#include <array>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "catkit/dblcat.hpp"
#include "catkit/dblfib.hpp"
#include "catkit/fincat.hpp"
#include "catkit/report.hpp"

namespace catkit::elements {

using dbl::DblPtr;
using fincat::CatPtr;
using fincat::Functor;

// A span-of-categories-valued contravariant lax functor on a finite double
// category ("indexed double category"): a fiber category per object with
// reindexing functors along arrows, a span of categories per proarrow with
// reindexing along cells, laxity functors for the external tensor, and unit
// functors for the external unit.  Comparison components that are identities
// on the nose may be left null; a non-null component function must return
// the comparison arrow (an iso in the appropriate fiber).
struct IndexedDoubleCategory {
  DblPtr base;

  // object level: C -> F C,  (f : A -> B) -> f* : F B -> F A
  std::vector<CatPtr> fib0;
  std::vector<Functor> re0;

  // proarrow level: m -> apex F m with legs to the foot fibers,
  // (θ : m -> n) -> θ* : F n -> F m (a span morphism over the θ legs)
  std::vector<CatPtr> fib1;
  std::vector<Functor> leg_l, leg_r;  // F m -> F (src m),  F m -> F (tgt m)
  std::vector<Functor> re1;

  // laxity φ_{m,n} on the pullback of the legs: objects (a ∈ F m, b ∈ F n
  // with R a = L b) and matching arrow pairs; -1 when the base tensor is
  // outside the window
  std::function<int(int, int, int, int)> phi_ob, phi_ar;
  // unit ι_C : F C -> F (y C), legs the identity
  std::vector<Functor> iota;

  // comparison isos (null = identity on the nose):
  std::function<int(int, int, int)> gamma0;         // f*(g* Y) -> (g∘f)* Y
  std::function<int(int, int, int)> gamma1;         // θ*(δ* Ȳ) -> (δ∘θ)* Ȳ
  std::function<int(int, int, int, int)> phi_comp;  // φ(θ*a, δ*b) -> (θ⊗δ)* φ(a,b)
  std::function<int(int, int)> iota_comp;           // ι(f* Y) -> y_f* ι(Y)
  // Φ(m,n,p,a,b,c) : φ(φ(a,b),c) -> α* φ(a, φ(b,c))
  std::function<int(int, int, int, int, int, int)> assoc_comp;

  bool locally_discrete = true;  // all comparison data identity
  std::string name;
};

// All typing, functoriality (up to the comparisons), span-morphism, laxity
// naturality, unit-coherence and composition-coherence conditions.  With
// budget >= 0 the pair/triple enumerations are sampled (window-certified);
// undefined window tensors are skipped as window-certified.
Report validate_indexed(const IndexedDoubleCategory& F, long long budget = -1);

// The elements double category of F with its strict projection and the
// canonical cleavage whose chosen lifts have identity fiber components.
struct ElementsResult {
  DblPtr El;
  dbl::DoubleFunctor proj;
  dblfib::DoubleCleavage cleavage;

  // object (C, X) -> El0 object, proarrow (m, m̄) -> El1 object
  std::vector<std::vector<int>> ob0, ob1;
  // arrow of El0 -> (f, Y, f̄ : X -> f* Y); arrow of El1 -> (θ, n̄, θ̄)
  std::vector<std::array<int, 3>> arr0, arr1;
  int arr0_index(int f, int Y, int fbar) const;
  int arr1_index(int th, int nbar, int thbar) const;

  std::unordered_map<fincat::Key4, int, fincat::Key4Hash> a0_, a1_;
};

ElementsResult elements_construction(const IndexedDoubleCategory& F);
// Same construction restricted to locally discrete data (all comparisons
// identity); throws PreconditionError otherwise.
ElementsResult elements_locally_discrete(const IndexedDoubleCategory& F);

// Inverse direction: the fibers of a double fibration with a chosen
// cleavage, with reindexing by chosen lifts, comparisons by Cartesian
// factorization, laxity by the total tensor and unit restricted to fibers.
// Throws PreconditionError when a required lift or factorization is missing.
struct FibersResult {
  IndexedDoubleCategory F;
  // local fiber object/arrow -> global object/arrow of the total category
  std::vector<std::vector<int>> obj0, arr0, obj1, arr1;
  std::vector<int> inv_obj0, inv_obj1;  // global -> local (-1)
};
FibersResult fibers_construction(const dbl::DoubleFunctor& P,
                                 const dblfib::DoubleCleavage& cl);

// Componentwise comparison data between indexed double categories on the
// same base (identity base functor, identity comparison modifications).
struct IndexedMorphism {
  std::vector<Functor> t0;  // F C -> G C
  std::vector<Functor> t1;  // F m -> G m
};
Report validate_indexed_morphism(const IndexedDoubleCategory& F,
                                 const IndexedDoubleCategory& G,
                                 const IndexedMorphism& t,
                                 bool require_iso = false);
// Bounded search for a componentwise-iso morphism F -> G.
Report indexed_iso_compare(const IndexedDoubleCategory& F,
                           const IndexedDoubleCategory& G,
                           long long bound = 200000);

// Bounded search for an equivalence between two double fibrations over the
// same base: a strict double functor H over the base, fully faithful and
// essentially surjective at both levels, plus the transported pseudo-inverse
// and the invertible vertical comparisons.  Inconclusive when the search
// bound is hit.
Report check_equivalence_over_base(const dbl::DoubleFunctor& P,
                                   const dbl::DoubleFunctor& Q,
                                   long long bound = 2000000);

// ---- examples ------------------------------------------------------------

// Constant at the terminal category.
IndexedDoubleCategory constant_indexed(DblPtr base);

// Set-indexed families of objects of C on a span window: F I = C^I,
// the span over I <- S -> J has as apex the comma category of elementwise
// arrows, and the laxity composes components in C.
IndexedDoubleCategory family_indexed(CatPtr C, dbl::SpanWindowPtr W);

// Slices of a double category with chosen pullbacks at both levels:
// F C = E0/C, F m = E1/m with the src/tgt legs, reindexing by pullback,
// laxity by external tensor of slice cells.  Genuinely lax.  Throws
// PreconditionError when a required pullback is missing.
IndexedDoubleCategory slice_indexed(DblPtr D);

// The profunctor H(a, b) = hom(FA a, GB b) of two functors into a common
// category, as span-of-categories data on the walking proarrow: fibers are
// dom FA and dom GB, the apex over the generic proarrow is the two-sided
// category of elements of H.
IndexedDoubleCategory prof_indexed(const Functor& FA, const Functor& GB);

}  // namespace catkit::elements
