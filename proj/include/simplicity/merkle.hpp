#pragma once

#include <vector>

#include "simplicity/digest.hpp"
#include "simplicity/eval.hpp"
#include "simplicity/term.hpp"
#include "simplicity/typing.hpp"

namespace simplicity {

// The commitment tag for a combinator name (the digest of its lowercase
// ASCII name). Valid names: iden, comp, unit, injl, injr, case, pair, take,
// drop, fail, witness, sighash. Throws UnknownName otherwise.
const Digest256& commitment_tag(const std::string& name);

// Per-node commitment roots. A node's root is the compression of its tag (as
// chaining value) with a 64-byte block: zeros for leaves, childRoot || zeros
// for one-child nodes, leftRoot || rightRoot for two-child nodes. Witness
// payloads are not committed; assertions commit under the case tag, with the
// stored digest standing in for the pruned side. Hence replacing a case
// branch by an assertion carrying that branch's root preserves the root.
std::vector<Digest256> merkle_roots(const TermDag& dag);

// The root node's commitment root.
Digest256 merkle_root(const TermDag& dag);

// Evaluates the program on `input` and replaces every case node whose
// scrutinee came out constantly left (or right) with the matching assertion,
// committing the dropped branch only by its root. Dropped branches (witness
// payloads included) vanish from the result; the commitment root is
// unchanged. Cases that never executed are kept as they are. Throws
// EvaluationFailed if evaluation reaches bottom.
TermDag prune(const TypedDag& typed, const Value& input, const TxEnv& env = {});

// Mixes a 256-bit entropy block into a term's commitment root without
// changing its meaning: comp (pair (injl iden) unit) (assertl (take t) h).
// The assertion's pruned side is the entropy, so distinct `h` give distinct
// roots for the same behaviour.
TermDag mix_entropy(const TermDag& dag, const Digest256& h);

}  // namespace simplicity
