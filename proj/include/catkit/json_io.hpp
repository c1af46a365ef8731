#pragma once

#include <string>

#include "catkit/dblcat.hpp"
#include "catkit/elements.hpp"
#include "catkit/fib.hpp"
#include "catkit/fincat.hpp"
#include "catkit/report.hpp"
#include "catkit/twocat.hpp"

namespace catkit::jsonio {

// Canonical JSON forms.  Every document carries a "type" tag; loaders throw
// SchemaError with the path of the offending entry.  save(load(x)) == x on
// canonical documents; categories with computed composition are materialized
// into explicit tables on save.

json cat_to_json(const fincat::FinCategory& C);
fincat::CatPtr cat_from_json(const json& j);

json functor_to_json(const fincat::Functor& F);
fincat::Functor functor_from_json(const json& j);

json cloven_to_json(const fib::ClovenFibration& c);
fib::ClovenFibration cloven_from_json(const json& j);

json twocat_to_json(const twocat::Fin2Category& K);
twocat::TwoCatPtr twocat_from_json(const json& j);

json twofunctor_to_json(const twocat::TwoFunctor& P);
twocat::TwoFunctor twofunctor_from_json(const json& j);

// Total double categories only (windowed providers are configured by their
// parameters, not serialized); throws PreconditionError on a partial tensor.
json double_to_json(const dbl::PseudoDoubleCategory& D);
dbl::DblPtr double_from_json(const json& j);

json dfunctor_to_json(const dbl::DoubleFunctor& P);
dbl::DoubleFunctor dfunctor_from_json(const json& j);

// Indexed data over a total base; identity (null) comparison blocks are
// elided and inferred on load.
json indexed_to_json(const elements::IndexedDoubleCategory& F);
elements::IndexedDoubleCategory indexed_from_json(const json& j);

// Dispatch on the "type" tag: parse + run the structural validator.
Report validate_document(const json& j, long long budget = -1);

json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);
std::string dump_canonical(const json& j);

}  // namespace catkit::jsonio
