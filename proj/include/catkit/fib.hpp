#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "catkit/fincat.hpp"
#include "catkit/report.hpp"

namespace catkit::fib {

using fincat::CatPtr;
using fincat::Functor;
using fincat::pair_key;

// Index of total-category arrows by (base arrow they sit over, codomain
// object): the candidate pool for Cartesian lifts.
struct LiftIndex {
  std::unordered_map<std::uint64_t, std::vector<int>> into;  // key (u, E)
  const std::vector<int>& lifts_into(int u, int E) const;
  static LiftIndex build(const Functor& p);
};

// Strong Cartesian property (unique ĥ over every compatible h).
bool is_cartesian_bool(const Functor& p, int f, json* counterexample = nullptr,
                       long long* checks = nullptr);
Report is_cartesian(const Functor& p, int f);
// Weaker formulation: postcomposition is a bijection from vertical arrows
// Z -> X to arrows Z -> Y over p(f).  Implied by the strong property; used as
// a cheap screen and inside the pullback-lemma tests.
bool is_cartesian_sga(const Functor& p, int f);

// Per-arrow strong-Cartesian flags, computed with the weak screen first.
std::vector<char> cartesian_flags(const Functor& p);
std::vector<char> sga_flags(const Functor& p);

Report is_fibration(const Functor& p);
Report is_opfibration(const Functor& p);
Report is_discrete_fibration(const Functor& p);

struct ClovenFibration {
  Functor p;
  // (base arrow u, fiber object E over tgt u) -> chosen Cartesian lift.
  std::unordered_map<std::uint64_t, int> cleavage;
  std::vector<char> flags;  // strong-Cartesian flags of p, cached
  int lift(int u, int E) const {
    auto it = cleavage.find(pair_key(u, E));
    return it == cleavage.end() ? -1 : it->second;
  }
};
using ClovenPtr = std::shared_ptr<const ClovenFibration>;

// Deterministic cleavage: least Cartesian lift by arrow id.  Throws
// PreconditionError when p is not a fibration.
ClovenFibration build_cleavage(const Functor& p);
ClovenFibration build_cleavage(const Functor& p, std::vector<char> flags);
Report validate_cloven(const ClovenFibration& c);
Report is_split(const ClovenFibration& c);

struct FibrationSquare {
  ClovenPtr source, target;
  Functor top;     // source total -> target total
  Functor bottom;  // source base  -> target base
};

Report validate_square(const FibrationSquare& sq);  // strict commutativity
Report is_cartesian_preserving(const FibrationSquare& sq);
Report is_cartesian_preserving(const FibrationSquare& sq,
                               const std::vector<char>& src_flags,
                               const std::vector<char>& tgt_flags);
Report is_cleavage_preserving(const FibrationSquare& sq);

struct PullbackFibrationResult {
  fincat::PullbackResult totals, bases;
  ClovenFibration fib;  // induced functor with the pairwise cleavage
  Report lemma;         // (f1,f2) Cartesian <=> both components Cartesian
};

// Pullback of two cleavage-preserving squares into a common cloven fibration.
// Throws PreconditionError when a leg is not cleavage-preserving or the
// cospan does not match.
PullbackFibrationResult pullback_fibrations(const FibrationSquare& s,
                                            const FibrationSquare& t,
                                            bool verify_lemma = true);

// Opposite functor sharing already-built opposite categories.
Functor opposite_functor_shared(const Functor& p, CatPtr op_dom, CatPtr op_cod);

}  // namespace catkit::fib
