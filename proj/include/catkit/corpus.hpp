#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catkit/dblcat.hpp"
#include "catkit/dblfib.hpp"
#include "catkit/elements.hpp"
#include "catkit/fib.hpp"
#include "catkit/fincat.hpp"
#include "catkit/twocat.hpp"

namespace catkit::corpus {

// Deterministic instance families for the property and acceptance suites.
// The same seed always produces byte-identical data.

struct CatEntry {
  fincat::CatPtr C;
  std::string name;
};

struct FibEntry {
  fib::ClovenFibration c;
  std::string name;
  // "split", "cloven_not_split" (no splitting under the stored cleavage, or
  // under any cleavage for the group quotient), "discrete"
  std::string kind;
};

struct NonFibEntry {
  fincat::Functor p;
  std::string name;
};

struct TwoFunctorEntry {
  twocat::TwoFunctor P;
  bool positive;  // expected to be a 2-fibration
  std::string name;
};

struct DblFibEntry {
  dbl::DoubleFunctor P;
  dblfib::DoubleCleavage cl;  // witness cleavage found at build time
  std::string name;
  std::string kind;  // "split" or "cloven_not_split"
};

struct DblNonFibEntry {
  dbl::DoubleFunctor P;
  std::string name;
};

struct IndexedEntry {
  elements::IndexedDoubleCategory F;
  bool discrete_valued;  // every fiber category is discrete
  bool windowed_base;    // base is a windowed provider (budgeted checks only)
  std::string name;
};

// A cospan of cleavage-preserving squares into a common cloven fibration,
// built by change of base along functors into the shared base.
struct CospanEntry {
  fib::FibrationSquare s, t;
  std::string name;
};

struct TriangleEntry {
  int fib_index;  // into double_fibrations
  dblfib::LiftingTriangle t;
  std::string name;
};

struct Corpus {
  std::uint64_t seed = 0;
  std::vector<CatEntry> categories;
  std::vector<FibEntry> fibrations;
  std::vector<NonFibEntry> non_fibrations;
  std::vector<TwoFunctorEntry> two_functors;
  std::vector<DblFibEntry> double_fibrations;
  std::vector<DblNonFibEntry> double_non_fibrations;
  std::vector<IndexedEntry> indexed;
  std::vector<CospanEntry> cospans;
  std::vector<TriangleEntry> triangles;
};

Corpus build_corpus(std::uint64_t seed);

// One-object group category Z/n and the mod-m quotient functor.
fincat::CatPtr group_category(int n);
fincat::Functor group_quotient(int n, int m);

// Slice category C/c with its projection, as a cloven (discrete, when C is a
// poset) fibration.
fib::ClovenFibration slice_projection(fincat::CatPtr C, int c);

// Change of base of a cloven fibration along u into its base: the pullback
// fibration with the transported cleavage and the cleavage-preserving square
// into the original.
fib::FibrationSquare change_of_base(fib::ClovenPtr target, const fincat::Functor& u);

// Vertically trivial double functor of a 1-functor.
dbl::DoubleFunctor vt_functor(const fincat::Functor& p);

// Writes the serializable corpus entries plus a manifest.json into dir.
void write_corpus(const Corpus& c, const std::string& dir);

}  // namespace catkit::corpus
