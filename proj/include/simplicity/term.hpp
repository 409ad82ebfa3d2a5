#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "simplicity/digest.hpp"
#include "simplicity/ty.hpp"
#include "simplicity/value.hpp"

namespace simplicity {

enum class NodeKind : uint8_t {
  Iden,
  Unit,
  Injl,
  Injr,
  Take,
  Drop,
  Comp,
  Case,
  Pair,
  AssertL,  // case with the right branch replaced by its commitment
  AssertR,  // case with the left branch replaced by its commitment
  Fail,
  Witness,
  SigHash,
};

const char* node_kind_name(NodeKind k);
inline bool is_core_kind(NodeKind k) {
  return k <= NodeKind::Pair;
}
inline unsigned child_count(NodeKind k) {
  switch (k) {
    case NodeKind::Iden:
    case NodeKind::Unit:
    case NodeKind::Fail:
    case NodeKind::Witness:
    case NodeKind::SigHash:
      return 0;
    case NodeKind::Comp:
    case NodeKind::Case:
    case NodeKind::Pair:
      return 2;
    default:
      return 1;
  }
}

struct Node {
  NodeKind kind;
  uint32_t a = 0;  // first child (Injl/Injr/Take/Drop/AssertL use a only;
                   // AssertR's sole child is also a)
  uint32_t b = 0;  // second child for Comp/Case/Pair
  Digest256 hash{};               // AssertL/AssertR pruned-branch commitment
  std::optional<Value> witness{};   // Witness payload; nullopt = placeholder
  std::optional<TyRef> declared{};  // Witness optional declared output type
};

// A term as a topologically ordered node list: children always have strictly
// smaller indices than their parents, so acyclicity is structural and every
// traversal is a forward or backward scan.
struct TermDag {
  std::vector<Node> nodes;
  uint32_t root = 0;
};

// Throws Error on malformed dags (bad indices, non-topological order,
// nodes unreachable from root).
void validate_dag(const TermDag& dag);

// Reachability from the root (all true after validate_dag).
std::vector<bool> reachable_from_root(const TermDag& dag);

// Per-node flag: does the subtree at this node contain a Witness node?
std::vector<bool> contains_witness(const TermDag& dag);

// Canonical structural class ids (untyped): two nodes get the same id iff
// their subtrees are structurally identical, including assert hashes and
// witness payloads but not witness declared types.
std::vector<uint32_t> canonical_ids(const TermDag& dag);

struct NodeCounts {
  boost::multiprecision::cpp_int total_tree_nodes;
  uint64_t unique_dag_nodes = 0;
  uint64_t unique_typed_nodes = 0;
};

struct TypedDag;  // typing.hpp

// Tree size is computed arithmetically (never by expansion); unique counts
// are structural classes, untyped and typed respectively. When `typed` is
// null the dag is type-inferred internally (TypeError propagates).
NodeCounts node_counts(const TermDag& dag, const TypedDag* typed = nullptr);

// Structural equality of the trees denoted by two dags (sharing-blind).
bool dag_equal(const TermDag& x, const TermDag& y);

// Fully unshared copy: every node has exactly one parent. Throws TooLarge if
// the tree exceeds maxNodes.
TermDag unshare(const TermDag& dag, uint64_t maxNodes);

// A builder that hash-conses nodes as they are created. Nodes are typed at
// construction (the key includes both types), which keeps physical sharing
// consistent with monomorphic per-node typing. Child ids must come from the
// same builder.
class TermBuilder {
 public:
  uint32_t iden(TyRef a);                      // A |- A
  uint32_t unit(TyRef a);                      // A |- 1
  uint32_t injl(uint32_t t, TyRef rightTy);    // t:A|-B gives A |- B+rightTy
  uint32_t injr(uint32_t t, TyRef leftTy);     // t:A|-C gives A |- leftTy+C
  uint32_t take(uint32_t t, TyRef sndTy);      // t:A|-C gives A*sndTy |- C
  uint32_t drop_(uint32_t t, TyRef fstTy);     // t:B|-C gives fstTy*B |- C
  uint32_t comp(uint32_t s, uint32_t t);
  uint32_t pair(uint32_t s, uint32_t t);
  uint32_t case_(uint32_t s, uint32_t t);
  // s:A*C|-D gives (A+rightTy)*C |- D, committing to the pruned right branch.
  uint32_t assertl(uint32_t s, const Digest256& rightHash, TyRef rightTy);
  // t:B*C|-D gives (leftTy+B)*C |- D.
  uint32_t assertr(const Digest256& leftHash, uint32_t t, TyRef leftTy);
  uint32_t fail(TyRef a, TyRef b);
  uint32_t witness(std::optional<Value> payload, TyRef a, TyRef b);
  uint32_t sighash();

  TyRef ty_in(uint32_t id) const { return in_[id]; }
  TyRef ty_out(uint32_t id) const { return out_[id]; }
  size_t size() const { return nodes_.size(); }

  // Compacts to the nodes reachable from root, preserving relative order.
  TermDag extract(uint32_t root) const;

  // As extract, carrying the builder's per-node types (no re-inference).
  TypedDag extract_typed(uint32_t root) const;

 private:
  uint32_t add(Node n, TyRef in, TyRef out);

  std::vector<Node> nodes_;
  std::vector<TyRef> in_, out_;
  std::unordered_multimap<uint64_t, uint32_t> memo_;  // structural hash -> id
};

}  // namespace simplicity
