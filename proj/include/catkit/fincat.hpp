#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "catkit/report.hpp"

namespace catkit::fincat {

struct ArrowData {
  int src = -1;
  int tgt = -1;
};

inline std::uint64_t pair_key(int g, int f) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g)) << 32) |
         static_cast<std::uint32_t>(f);
}

class FinCategory;
using CatPtr = std::shared_ptr<const FinCategory>;

// A finite category.  Objects and arrows are dense integer ids with stable
// insertion order.  Composition is either a stored sparse table or a computed
// function (used by large windowed structures where the table of composable
// pairs would not fit in memory).
class FinCategory {
 public:
  int n_obj = 0;
  std::vector<ArrowData> arr;  // arrow id -> endpoints
  std::vector<int> idn;        // object id -> identity arrow
  std::unordered_map<std::uint64_t, int> comp_table;
  // If set, composition is computed instead of looked up.  Must agree with
  // the category axioms; validate_category samples it on large instances.
  std::function<int(const FinCategory&, int, int)> composer;
  std::vector<std::string> obj_name;  // optional pretty names
  std::vector<std::string> arr_name;

  int n_arrows() const { return static_cast<int>(arr.size()); }
  int src(int a) const { return arr[a].src; }
  int tgt(int a) const { return arr[a].tgt; }
  int id(int o) const { return idn[o]; }
  bool is_id(int a) const { return idn[arr[a].src] == a && arr[a].src == arr[a].tgt; }

  // g after f (f: A->B, g: B->C).  Returns -1 when not composable.
  int compose(int g, int f) const {
    if (arr[f].tgt != arr[g].src) return -1;
    if (is_id(g)) return f;
    if (is_id(f)) return g;
    if (composer) return composer(*this, g, f);
    auto it = comp_table.find(pair_key(g, f));
    return it == comp_table.end() ? -1 : it->second;
  }

  void set_comp(int g, int f, int r) { comp_table[pair_key(g, f)] = r; }

  // Lazy hom indexes (built on first use).
  const std::vector<int>& hom(int a, int b) const;
  const std::vector<int>& arrows_from(int o) const;
  const std::vector<int>& arrows_into(int o) const;

  std::string describe_arrow(int a) const;

 private:
  mutable bool index_built_ = false;
  mutable std::unordered_map<std::uint64_t, std::vector<int>> hom_;
  mutable std::vector<std::vector<int>> from_, into_;
  mutable std::vector<int> empty_;
  void ensure_index() const;
};

// Mutable builder used by generators; freeze() adds identities if absent and
// returns an immutable handle.
struct CatBuilder {
  FinCategory c;
  int add_object(std::string name = "");
  int add_arrow(int s, int t, std::string name = "");
  void set_identity(int o, int a) { c.idn[o] = a; }
  void set_comp(int g, int f, int r) { c.set_comp(g, f, r); }
  CatPtr freeze();  // fills missing identities with fresh arrows
};

struct Functor {
  CatPtr dom, cod;
  std::vector<int> ob;  // object map
  std::vector<int> ar;  // arrow map
  int on_ob(int o) const { return ob[o]; }
  int on_ar(int a) const { return ar[a]; }
};

struct NatTransformation {
  Functor source, target;       // parallel functors
  std::vector<int> components;  // object of dom -> arrow of cod
};

// ---- validation ----------------------------------------------------------

// budget < 0 means fully exhaustive; otherwise associativity/closure checks
// are deterministically subsampled and the report is marked window-certified.
Report validate_category(const FinCategory& C, long long budget = -1);
Report validate_functor(const Functor& F, long long budget = -1);
Report validate_nat(const NatTransformation& t);

Functor identity_functor(CatPtr C);
Functor compose_functors(const Functor& G, const Functor& F);  // G after F
bool functor_equal(const Functor& F, const Functor& G);

// ---- limits and shapes ---------------------------------------------------

struct PullbackResult {
  CatPtr P;
  Functor p1, p2;  // projections to dom F, dom G
  std::vector<std::pair<int, int>> obj_pairs;
  std::vector<std::pair<int, int>> arr_pairs;
  int obj_index(int a, int b) const;  // -1 if absent
  int arr_index(int a, int b) const;
  std::unordered_map<std::uint64_t, int> obj_idx_, arr_idx_;
};

PullbackResult pullback_category(const Functor& F, const Functor& G);
// Brute-force the 1-dimensional universal property over all cones whose apex
// has at most max_size objects (drawn from a fixed family of test shapes).
Report pullback_universal_property(const Functor& F, const Functor& G,
                                   const PullbackResult& pb, int max_size = 3);

struct Key4 {
  std::array<int, 4> v;
  bool operator==(const Key4&) const = default;
};
struct Key4Hash {
  std::size_t operator()(const Key4& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int x : k.v) h = (h ^ static_cast<std::uint64_t>(x)) * 0xff51afd7ed558ccdull;
    return static_cast<std::size_t>(h);
  }
};

struct ArrowCatResult {
  CatPtr C2;
  Functor dom, cod;                           // projections C^2 -> C
  std::vector<int> obj_arrow;                 // object of C^2 -> arrow of C
  std::vector<std::pair<int, int>> arr_legs;  // arrow of C^2 -> (left, right) legs
  std::unordered_map<Key4, int, Key4Hash> arr_idx;  // (f,g,left,right) -> arrow
  // The arrow of C^2 from object f to object g with the given legs; -1 if the
  // square does not commute.
  int square(int f, int g, int left, int right) const;
};

ArrowCatResult arrow_category(CatPtr C);

CatPtr terminal_category();
CatPtr walking_arrow();
CatPtr discrete_category(int n);
CatPtr opposite_category(CatPtr C);
Functor opposite_functor(const Functor& F);  // same maps between opposites

struct ProductResult {
  CatPtr P;
  Functor p1, p2;
  std::vector<std::pair<int, int>> obj_pairs, arr_pairs;
};
ProductResult product_category(CatPtr A, CatPtr B);

// Poset category from a reflexive-transitive closure of the given relation.
CatPtr poset_category(int n, const std::vector<std::pair<int, int>>& le);
CatPtr chain_category(int n);             // 0 -> 1 -> ... -> n-1
CatPtr divisor_lattice(int n);            // divisors of n ordered by divisibility
CatPtr random_poset(std::uint64_t seed, int n, int extra_edges);

// Poset helpers (objects must form a poset category; -1 when no meet exists).
int poset_meet(const FinCategory& C, int a, int b);
bool is_poset(const FinCategory& C);

// Exhaustive functor enumeration (for universal-property and equivalence
// searches).  Only feasible for small dom.
std::vector<Functor> all_functors(CatPtr A, CatPtr B, long long cap = -1);

}  // namespace catkit::fincat
