#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "simplicity/typing.hpp"
#include "simplicity/value.hpp"

namespace simplicity {

// Opaque mock transaction data made visible to sighash.
struct TxEnv {
  std::vector<uint8_t> bytes;
};

struct EvalOutcome {
  std::optional<Value> value;

  bool is_bottom() const { return !value.has_value(); }
  static EvalOutcome make_ok(Value v) { return EvalOutcome{std::move(v)}; }
  static EvalOutcome bottom() { return EvalOutcome{std::nullopt}; }

  bool operator==(const EvalOutcome& o) const {
    if (is_bottom() != o.is_bottom()) return false;
    return is_bottom() || *value == *o.value;
  }
};

// Pure evaluator for core terms (the nine combinators only): total, returns
// the denoted output. Throws TypeError{NotCore} if an extended node is
// present and TypeError{TypeMismatch} if the input does not inhabit the
// root's input type.
Value eval_core(const TypedDag& typed, const Value& input);

// Extended evaluator: assertions and fail produce Bottom, witness denotes
// its constant, sighash consults the environment. Throws TypeError
// {TypeMismatch, MissingWitness} for static errors; Bottom is a value.
EvalOutcome eval_ext(const TypedDag& typed, const Value& input,
                     const TxEnv& env);

// As eval_ext, additionally recording branch usage per Case node:
// bit 0 = left branch taken at least once, bit 1 = right branch.
EvalOutcome eval_ext_traced(const TypedDag& typed, const Value& input,
                            const TxEnv& env, std::vector<uint8_t>& branchUse);

// Digest of (modeByte || txBytes) where modeByte in 0..5 encodes the mode
// value (first component: left(u)=0, right(false)=1, right(true)=2; plus 3
// if the second bit is set). Returns a 2^256 word value.
Value make_sighash(const Value& mode, const TxEnv& env);

}  // namespace simplicity
