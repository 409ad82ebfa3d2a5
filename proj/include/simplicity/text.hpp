#pragma once

#include <string>
#include <vector>

#include "simplicity/eval.hpp"
#include "simplicity/term.hpp"
#include "simplicity/ty.hpp"
#include "simplicity/value.hpp"

namespace simplicity {

// Program text: whitespace-insensitive S-expressions with `let NAME = expr;`
// bindings for explicit sharing, ending in the root expression. Parsing
// throws ParseError (with line/column) on syntax problems, and Error with an
// "UnboundName"/"DuplicateLet" message for binding problems. The printer is
// canonical: every node referenced more than once becomes a let, in node
// order; parse(print(d)) is structurally equal to d, and print(parse(s)) = s
// for canonical s.
TermDag parse_program(const std::string& text);
std::string print_program(const TermDag& dag);

// Values: "u", "(L v)", "(R v)", "(v, v)", or word sugar "0xHEX:width"
// (big-endian). The printer uses word sugar for balanced words of width >= 4
// (up to 4096 bits) and structural form otherwise.
Value parse_value(const std::string& text);
std::string print_value(const Value& v);

// Types: "1", "(T + T)", "(T * T)".
TyRef parse_ty_text(const std::string& text);
std::string print_ty_text(TyRef t);

// Witness file: whitespace-separated VALUE list (no placeholders).
std::vector<Value> parse_witness_file(const std::string& text);

// Fills the dag's empty witness slots with `ws`, in node-index order.
// Throws Error("CountMismatch: ...") when the arity differs and
// Error("WitnessTypeMismatch: ...") when a value does not inhabit the
// slot's inferred output type. The Merkle root is unchanged.
TermDag substitute_witnesses(const TermDag& dag, const std::vector<Value>& ws);

// Transaction file: hex-encoded bytes on one line (whitespace ignored).
TxEnv parse_tx_file(const std::string& text);

}  // namespace simplicity
