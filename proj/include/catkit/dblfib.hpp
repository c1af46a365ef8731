#pragma once

#include "catkit/dblcat.hpp"
#include "catkit/fib.hpp"
#include "catkit/report.hpp"
#include "catkit/twocat.hpp"

namespace catkit::dblfib {

using dbl::DblPtr;
using dbl::DoubleFunctor;
using dbl::VerticalTransformation;

// A cleavage for a strict double functor P: a cleavage for the object-level
// functor P0 and one for the cell-level functor P1, compatible in the sense
// that src and tgt carry chosen cell-level lifts to chosen object-level ones.
struct DoubleCleavage {
  fib::ClovenFibration c0, c1;
};

// Search for a compatible pair of cleavages.  Failure distinguishes
// condition 1 (P0 or P1 is not a fibration at some pair) from condition 2
// (every pair lifts, but no simultaneous choice is src/tgt-compatible).
// With budget >= 0 the cell-level lift problems are subsampled on windowed
// providers (window-certified); a truncated backtracking search on total
// data is reported as inconclusive, never as failure.
Report find_double_cleavage(const DoubleFunctor& P, DoubleCleavage* out = nullptr,
                            long long budget = -1);

// Double fibration: a compatible cleavage exists and the external unit and
// the external tensor preserve Cartesian cells.
Report is_double_fibration(const DoubleFunctor& P, long long budget = -1,
                           DoubleCleavage* out = nullptr);
// Dual, via the vertical opposite.
Report is_double_opfibration(const DoubleFunctor& P, long long budget = -1);
// Both cleavages split (identities and composition) and the unit and tensor
// carry chosen lifts to chosen lifts.
Report is_split_double_fibration(const DoubleFunctor& P, long long budget = -1);

// The internal characterization at three strengths: (lax) compatible
// cleavages only; (pseudo) plus Cartesian-cell preservation by y and tensor;
// (strict) plus chosen-lift preservation by y and tensor.  Failed reports
// carry counterexample["condition"] in {1, 2, 3}; the split closure checks
// of is_split_double_fibration use "3s".
enum class Flavor { lax, pseudo, strict };
Report internal_fibration_check(const DoubleFunctor& P, Flavor flavor,
                                long long budget = -1);

// Vertical opposite: vertical arrows and cells reversed, proarrows kept.
DblPtr vertical_opposite(DblPtr D);
DoubleFunctor vertical_opposite_functor(const DoubleFunctor& P);

// Generator shapes for the lifting lemma.
DblPtr terminal_double();
DblPtr walking_proarrow_double();

// A lifting problem over a generator X: B : X -> base of P below
// E : X -> total of P, connected by beta : B => P o E.
struct LiftingTriangle {
  DoubleFunctor E, B;
  VerticalTransformation beta;
};
// The Cartesian lift: E' : X -> total and alpha : E' => E with P o alpha = beta
// componentwise, each component a chosen Cartesian lift.
struct TriangleLift {
  DoubleFunctor Eprime;
  VerticalTransformation alpha;
};
TriangleLift lift_triangle(const LiftingTriangle& t, const DoubleFunctor& P,
                           const DoubleCleavage& cl);

// The two one-dimensional shadows of a double fibration: (a) chosen
// object-level lifts are 2-Cartesian in the vertical 2-category; (b) the
// cell-level functor restricted to vertically globular cells is a fibration
// on every hom pair.
Report vh_props(const DoubleFunctor& P, long long budget = -1);

// A strict 2-functor is a 2-fibration exactly when its quintet double
// functor is a double fibration; this checker asserts the agreement.
Report quintet_equiv_test(const twocat::TwoFunctor& P);

}  // namespace catkit::dblfib
