#include "simplicity/term.hpp"

#include <algorithm>
#include <map>

#include "simplicity/errors.hpp"
#include "simplicity/typing.hpp"

namespace simplicity {

const char* node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Iden: return "iden";
    case NodeKind::Unit: return "unit";
    case NodeKind::Injl: return "injl";
    case NodeKind::Injr: return "injr";
    case NodeKind::Take: return "take";
    case NodeKind::Drop: return "drop";
    case NodeKind::Comp: return "comp";
    case NodeKind::Case: return "case";
    case NodeKind::Pair: return "pair";
    case NodeKind::AssertL: return "assertl";
    case NodeKind::AssertR: return "assertr";
    case NodeKind::Fail: return "fail";
    case NodeKind::Witness: return "witness";
    case NodeKind::SigHash: return "sighash";
  }
  return "?";
}

void validate_dag(const TermDag& dag) {
  if (dag.nodes.empty()) throw Error("empty dag");
  if (dag.root >= dag.nodes.size()) throw Error("root index out of range");
  for (uint32_t i = 0; i < dag.nodes.size(); ++i) {
    const Node& n = dag.nodes[i];
    unsigned c = child_count(n.kind);
    if (c >= 1 && n.a >= i)
      throw Error("node " + std::to_string(i) + ": child not earlier");
    if (c == 2 && n.b >= i)
      throw Error("node " + std::to_string(i) + ": child not earlier");
  }
  auto reach = reachable_from_root(dag);
  for (uint32_t i = 0; i < dag.nodes.size(); ++i)
    if (!reach[i])
      throw Error("node " + std::to_string(i) + " unreachable from root");
}

std::vector<bool> reachable_from_root(const TermDag& dag) {
  std::vector<bool> reach(dag.nodes.size(), false);
  if (dag.root < dag.nodes.size()) reach[dag.root] = true;
  for (uint32_t i = static_cast<uint32_t>(dag.nodes.size()); i-- > 0;) {
    if (!reach[i]) continue;
    const Node& n = dag.nodes[i];
    unsigned c = child_count(n.kind);
    if (c >= 1) reach[n.a] = true;
    if (c == 2) reach[n.b] = true;
  }
  return reach;
}

std::vector<bool> contains_witness(const TermDag& dag) {
  std::vector<bool> w(dag.nodes.size(), false);
  for (uint32_t i = 0; i < dag.nodes.size(); ++i) {
    const Node& n = dag.nodes[i];
    if (n.kind == NodeKind::Witness) {
      w[i] = true;
      continue;
    }
    unsigned c = child_count(n.kind);
    if (c >= 1 && w[n.a]) w[i] = true;
    if (c == 2 && w[n.b]) w[i] = true;
  }
  return w;
}

namespace {

// Structural key for canonicalization: kind, canonical children, payloads.
struct CanonKey {
  NodeKind kind;
  uint32_t a, b;
  Digest256 hash;
  bool hasWitness;
  std::string witnessRepr;

  bool operator<(const CanonKey& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    if (hash != o.hash) return hash.bytes < o.hash.bytes;
    if (hasWitness != o.hasWitness) return hasWitness < o.hasWitness;
    return witnessRepr < o.witnessRepr;
  }
};

CanonKey canon_key(const Node& n, const std::vector<uint32_t>& ids) {
  CanonKey k;
  k.kind = n.kind;
  unsigned c = child_count(n.kind);
  k.a = c >= 1 ? ids[n.a] : 0;
  k.b = c == 2 ? ids[n.b] : 0;
  k.hash = (n.kind == NodeKind::AssertL || n.kind == NodeKind::AssertR)
               ? n.hash
               : Digest256{};
  k.hasWitness = n.witness.has_value();
  k.witnessRepr = n.witness ? render_value(*n.witness) : std::string();
  return k;
}

}  // namespace

std::vector<uint32_t> canonical_ids(const TermDag& dag) {
  std::vector<uint32_t> ids(dag.nodes.size(), 0);
  std::map<CanonKey, uint32_t> classes;
  for (uint32_t i = 0; i < dag.nodes.size(); ++i) {
    CanonKey k = canon_key(dag.nodes[i], ids);
    auto [it, inserted] =
        classes.emplace(std::move(k), static_cast<uint32_t>(classes.size()));
    ids[i] = it->second;
  }
  return ids;
}

NodeCounts node_counts(const TermDag& dag, const TypedDag* typed) {
  using boost::multiprecision::cpp_int;
  NodeCounts out;

  std::vector<cpp_int> tree(dag.nodes.size());
  for (uint32_t i = 0; i < dag.nodes.size(); ++i) {
    const Node& n = dag.nodes[i];
    cpp_int t = 1;
    unsigned c = child_count(n.kind);
    if (c >= 1) t += tree[n.a];
    if (c == 2) t += tree[n.b];
    tree[i] = std::move(t);
  }
  out.total_tree_nodes = tree[dag.root];

  auto ids = canonical_ids(dag);
  // Count only classes reachable from the root (builders always compact, but
  // count on the dag as given).
  auto reach = reachable_from_root(dag);
  std::vector<bool> seen(dag.nodes.size(), false);
  for (uint32_t i = 0; i < dag.nodes.size(); ++i) {
    if (reach[i] && !seen[ids[i]]) {
      seen[ids[i]] = true;
      ++out.unique_dag_nodes;
    }
  }

  TypedDag local;
  if (!typed) {
    // Untypeable dags still have meaningful tree/dag counts; report zero
    // typed classes for them.
    try {
      local = infer_types(dag);
    } catch (const TypeError&) {
      return out;
    }
    typed = &local;
  }
  std::map<std::tuple<uint32_t, TyRef, TyRef>, uint32_t> typedClasses;
  for (uint32_t i = 0; i < dag.nodes.size(); ++i) {
    if (!reach[i]) continue;
    typedClasses.emplace(std::make_tuple(ids[i], typed->in[i], typed->out[i]),
                         0u);
  }
  out.unique_typed_nodes = typedClasses.size();
  return out;
}

bool dag_equal(const TermDag& x, const TermDag& y) {
  // Compare canonical classes of the two roots over the disjoint union.
  TermDag joint;
  joint.nodes = x.nodes;
  uint32_t offset = static_cast<uint32_t>(x.nodes.size());
  for (const Node& n : y.nodes) {
    Node m = n;
    unsigned c = child_count(m.kind);
    if (c >= 1) m.a += offset;
    if (c == 2) m.b += offset;
    joint.nodes.push_back(std::move(m));
  }
  joint.root = offset + y.root;
  auto ids = canonical_ids(joint);
  return ids[x.root] == ids[joint.root];
}

TermDag unshare(const TermDag& dag, uint64_t maxNodes) {
  // Expand to a tree by structural recursion with an explicit stack.
  TermDag out;
  struct Item {
    uint32_t node;
    int stage;
    uint32_t childA = 0, childB = 0;
  };
  std::vector<Item> stack{{dag.root, 0}};
  std::vector<uint32_t> results;
  while (!stack.empty()) {
    Item& it = stack.back();
    const Node& n = dag.nodes[it.node];
    unsigned c = child_count(n.kind);
    if (it.stage == 0 && c >= 1) {
      it.stage = 1;
      stack.push_back({n.a, 0});
      continue;
    }
    if (it.stage <= 1 && c == 2) {
      if (it.stage == 1) {
        it.childA = results.back();
        results.pop_back();
      }
      it.stage = 2;
      stack.push_back({n.b, 0});
      continue;
    }
    // Children done (for one-child nodes stage==1; collect results).
    Node m = n;
    if (c == 1) {
      m.a = results.back();
      results.pop_back();
    } else if (c == 2) {
      m.b = results.back();
      results.pop_back();
      m.a = it.stage == 2 ? it.childA : 0;
      if (it.stage != 2) throw Error("unshare: internal stage error");
    }
    if (out.nodes.size() >= maxNodes)
      throw TooLarge("unshared tree exceeds " + std::to_string(maxNodes) +
                     " nodes");
    results.push_back(static_cast<uint32_t>(out.nodes.size()));
    out.nodes.push_back(std::move(m));
    stack.pop_back();
  }
  out.root = results.back();
  return out;
}

namespace {

uint64_t mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

uint64_t node_hash(const Node& n, TyRef in, TyRef out) {
  uint64_t h = mix(0, uint64_t(n.kind));
  unsigned c = child_count(n.kind);
  if (c >= 1) h = mix(h, n.a);
  if (c == 2) h = mix(h, n.b);
  if (n.kind == NodeKind::AssertL || n.kind == NodeKind::AssertR) {
    for (int i = 0; i < 8; ++i) h = mix(h, n.hash.bytes[i]);
  }
  if (n.witness) {
    h = mix(h, 0x77);
    h = mix(h, std::hash<std::string>{}(render_value(*n.witness)));
  }
  h = mix(h, in);
  h = mix(h, out);
  return h;
}

bool node_same(const Node& x, const Node& y) {
  if (x.kind != y.kind || x.a != y.a || x.b != y.b) return false;
  if (x.kind == NodeKind::AssertL || x.kind == NodeKind::AssertR) {
    if (x.hash != y.hash) return false;
  }
  if (x.witness.has_value() != y.witness.has_value()) return false;
  if (x.witness && *x.witness != *y.witness) return false;
  if (x.declared != y.declared) return false;
  return true;
}

}  // namespace

uint32_t TermBuilder::add(Node n, TyRef in, TyRef out) {
  uint64_t h = node_hash(n, in, out);
  auto [lo, hi] = memo_.equal_range(h);
  for (auto it = lo; it != hi; ++it) {
    uint32_t id = it->second;
    if (in_[id] == in && out_[id] == out && node_same(nodes_[id], n))
      return id;
  }
  uint32_t id = static_cast<uint32_t>(nodes_.size());
  nodes_.push_back(std::move(n));
  in_.push_back(in);
  out_.push_back(out);
  memo_.emplace(h, id);
  return id;
}

uint32_t TermBuilder::iden(TyRef a) {
  return add(Node{NodeKind::Iden}, a, a);
}

uint32_t TermBuilder::unit(TyRef a) {
  return add(Node{NodeKind::Unit}, a, ty_unit());
}

uint32_t TermBuilder::injl(uint32_t t, TyRef rightTy) {
  Node n{NodeKind::Injl};
  n.a = t;
  return add(std::move(n), in_[t], ty_sum(out_[t], rightTy));
}

uint32_t TermBuilder::injr(uint32_t t, TyRef leftTy) {
  Node n{NodeKind::Injr};
  n.a = t;
  return add(std::move(n), in_[t], ty_sum(leftTy, out_[t]));
}

uint32_t TermBuilder::take(uint32_t t, TyRef sndTy) {
  Node n{NodeKind::Take};
  n.a = t;
  return add(std::move(n), ty_prod(in_[t], sndTy), out_[t]);
}

uint32_t TermBuilder::drop_(uint32_t t, TyRef fstTy) {
  Node n{NodeKind::Drop};
  n.a = t;
  return add(std::move(n), ty_prod(fstTy, in_[t]), out_[t]);
}

uint32_t TermBuilder::comp(uint32_t s, uint32_t t) {
  if (out_[s] != in_[t])
    throw Error("comp: mid types differ: " + render_ty(out_[s]) + " vs " +
                render_ty(in_[t]));
  Node n{NodeKind::Comp};
  n.a = s;
  n.b = t;
  return add(std::move(n), in_[s], out_[t]);
}

uint32_t TermBuilder::pair(uint32_t s, uint32_t t) {
  if (in_[s] != in_[t])
    throw Error("pair: input types differ: " + render_ty(in_[s]) + " vs " +
                render_ty(in_[t]));
  Node n{NodeKind::Pair};
  n.a = s;
  n.b = t;
  return add(std::move(n), in_[s], ty_prod(out_[s], out_[t]));
}

uint32_t TermBuilder::case_(uint32_t s, uint32_t t) {
  const TyNode& sIn = ty(in_[s]);
  const TyNode& tIn = ty(in_[t]);
  if (sIn.kind != TyKind::Prod || tIn.kind != TyKind::Prod ||
      sIn.right != tIn.right || out_[s] != out_[t])
    throw Error("case: branch types incompatible");
  Node n{NodeKind::Case};
  n.a = s;
  n.b = t;
  return add(std::move(n),
             ty_prod(ty_sum(sIn.left, tIn.left), sIn.right), out_[s]);
}

uint32_t TermBuilder::assertl(uint32_t s, const Digest256& rightHash,
                              TyRef rightTy) {
  const TyNode& sIn = ty(in_[s]);
  if (sIn.kind != TyKind::Prod) throw Error("assertl: branch input not a product");
  Node n{NodeKind::AssertL};
  n.a = s;
  n.hash = rightHash;
  return add(std::move(n), ty_prod(ty_sum(sIn.left, rightTy), sIn.right),
             out_[s]);
}

uint32_t TermBuilder::assertr(const Digest256& leftHash, uint32_t t,
                              TyRef leftTy) {
  const TyNode& tIn = ty(in_[t]);
  if (tIn.kind != TyKind::Prod) throw Error("assertr: branch input not a product");
  Node n{NodeKind::AssertR};
  n.a = t;
  n.hash = leftHash;
  return add(std::move(n), ty_prod(ty_sum(leftTy, tIn.left), tIn.right),
             out_[t]);
}

uint32_t TermBuilder::fail(TyRef a, TyRef b) {
  return add(Node{NodeKind::Fail}, a, b);
}

uint32_t TermBuilder::witness(std::optional<Value> payload, TyRef a, TyRef b) {
  if (payload && !value_has_type(*payload, b))
    throw TypeError(TypeError::Kind::TypeMismatch, 0,
                    "witness payload does not inhabit " + render_ty(b));
  Node n{NodeKind::Witness};
  n.witness = std::move(payload);
  n.declared = b;
  return add(std::move(n), a, b);
}

uint32_t TermBuilder::sighash() {
  return add(Node{NodeKind::SigHash}, ty_sighash_mode(), ty_word(256));
}

TypedDag TermBuilder::extract_typed(uint32_t root) const {
  std::vector<bool> reach(nodes_.size(), false);
  reach[root] = true;
  for (uint32_t i = root + 1; i-- > 0;) {
    if (!reach[i]) continue;
    const Node& n = nodes_[i];
    unsigned c = child_count(n.kind);
    if (c >= 1) reach[n.a] = true;
    if (c == 2) reach[n.b] = true;
  }
  std::vector<uint32_t> remap(nodes_.size(), 0);
  TypedDag out;
  for (uint32_t i = 0; i <= root; ++i) {
    if (!reach[i]) continue;
    Node m = nodes_[i];
    unsigned c = child_count(m.kind);
    if (c >= 1) m.a = remap[m.a];
    if (c == 2) m.b = remap[m.b];
    remap[i] = static_cast<uint32_t>(out.dag.nodes.size());
    out.dag.nodes.push_back(std::move(m));
    out.in.push_back(in_[i]);
    out.out.push_back(out_[i]);
  }
  out.dag.root = remap[root];
  return out;
}

TermDag TermBuilder::extract(uint32_t root) const {
  std::vector<bool> reach(nodes_.size(), false);
  reach[root] = true;
  for (uint32_t i = root + 1; i-- > 0;) {
    if (!reach[i]) continue;
    const Node& n = nodes_[i];
    unsigned c = child_count(n.kind);
    if (c >= 1) reach[n.a] = true;
    if (c == 2) reach[n.b] = true;
  }
  std::vector<uint32_t> remap(nodes_.size(), 0);
  TermDag out;
  for (uint32_t i = 0; i <= root; ++i) {
    if (!reach[i]) continue;
    Node m = nodes_[i];
    unsigned c = child_count(m.kind);
    if (c >= 1) m.a = remap[m.a];
    if (c == 2) m.b = remap[m.b];
    remap[i] = static_cast<uint32_t>(out.nodes.size());
    out.nodes.push_back(std::move(m));
  }
  out.root = remap[root];
  return out;
}

}  // namespace simplicity
