#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simplicity/term.hpp"
#include "simplicity/ty.hpp"

namespace simplicity {

struct TypedDag {
  TermDag dag;
  std::vector<TyRef> in;   // per-node input type
  std::vector<TyRef> out;  // per-node output type

  TyRef root_in() const { return in[dag.root]; }
  TyRef root_out() const { return out[dag.root]; }
};

// Principal monomorphic typing by first-order unification with occurs check;
// residual type variables are replaced by the unit type. Deterministic.
// Throws TypeError {UnificationClash, OccursCheck} naming the offending node.
TypedDag infer_types(const TermDag& dag);

// Introspection hook for principality tests: the per-node type shapes before
// unit-filling, rendered with variables as ?N. Same failure behavior as
// infer_types.
struct RawTyping {
  std::vector<std::string> in;
  std::vector<std::string> out;
};
RawTyping infer_shapes(const TermDag& dag);

// Independent direct verifier of every node's typing rule; the oracle twin of
// infer_types (kept free of unification machinery on purpose).
struct TypingVerdict {
  bool ok = true;
  uint32_t node = 0;     // first offending node when !ok
  std::string rule;      // violated rule, e.g. "comp: mid type mismatch"
};
TypingVerdict check_typing(const TypedDag& typed);

}  // namespace simplicity
