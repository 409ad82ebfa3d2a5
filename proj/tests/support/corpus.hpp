// Random well-typed program generation for property tests.
#pragma once

#include <random>

#include "simplicity/term.hpp"
#include "simplicity/ty.hpp"
#include "simplicity/typing.hpp"
#include "simplicity/value.hpp"

namespace simplicity::testing {

// Random type built from unit and word leaves (word width <= max_word_bits,
// power of two) combined with sums and products up to the given depth.
TyRef random_ty(std::mt19937_64& rng, unsigned depth, unsigned max_word_bits);

// Uniform-ish random value of the given type (each sum arm 50/50).
Value random_value_of(TyRef ty, std::mt19937_64& rng);

// Random well-typed term using only the nine core combinators, with tree
// depth at most `depth`. Input/output types use word leaves of at most
// `max_word_bits` bits.
TypedDag random_core_term(std::mt19937_64& rng, unsigned depth,
                          unsigned max_word_bits);

// Like random_core_term but targeting the given input/output types.
uint32_t random_core_node(TermBuilder& b, std::mt19937_64& rng, TyRef a,
                          TyRef ty_b, unsigned depth);

}  // namespace simplicity::testing
