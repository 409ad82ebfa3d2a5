#pragma once

#include <functional>

#include "simplicity/term.hpp"
#include "simplicity/ty.hpp"
#include "simplicity/value.hpp"

namespace simplicity {

// Compiles an arbitrary total function between finite types into a core term
// by repeated case analysis on the input, so that for every v of type `a`,
// eval_core(infer_types(result), v) = table(v). The table is consulted once
// per fully-determined input. Throws TooLarge when `a` has more than 2^16
// values; the construction is exponential and meant for small domains.
TermDag compile_lookup_table(const std::function<Value(const Value&)>& table,
                             TyRef a, TyRef b);

}  // namespace simplicity
