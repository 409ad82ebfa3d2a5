#include "simplicity/merkle.hpp"

#include <array>
#include <cstring>
#include <map>
#include <string>
#include <utility>

#include "simplicity/errors.hpp"

namespace simplicity {

namespace {

const std::array<const char*, 12> kTagNames = {
    "iden", "comp", "unit", "injl",    "injr",   "case",
    "pair", "take", "drop", "fail", "witness", "sighash",
};

std::map<std::string, Digest256> make_tag_table() {
  std::map<std::string, Digest256> t;
  for (const char* name : kTagNames) {
    std::string s(name);
    t.emplace(s, sha256(std::span<const uint8_t>(
                     reinterpret_cast<const uint8_t*>(s.data()), s.size())));
  }
  return t;
}

const std::map<std::string, Digest256>& tag_table() {
  static const std::map<std::string, Digest256> table = make_tag_table();
  return table;
}

// The tag a node commits under: assertions commit as case.
const Digest256& node_tag(NodeKind k) {
  switch (k) {
    case NodeKind::AssertL:
    case NodeKind::AssertR:
      return commitment_tag("case");
    default:
      return commitment_tag(node_kind_name(k));
  }
}

Digest256 compress_children(const Digest256& tag, const Digest256& left,
                            const Digest256& right) {
  std::array<uint8_t, 64> block{};
  std::memcpy(block.data(), left.bytes.data(), 32);
  std::memcpy(block.data() + 32, right.bytes.data(), 32);
  return sha256_compress(tag, block);
}

}  // namespace

const Digest256& commitment_tag(const std::string& name) {
  const auto& table = tag_table();
  auto it = table.find(name);
  if (it == table.end())
    throw UnknownName("no commitment tag for '" + name + "'");
  return it->second;
}

std::vector<Digest256> merkle_roots(const TermDag& dag) {
  std::vector<Digest256> roots(dag.nodes.size());
  const Digest256 zero{};
  for (size_t i = 0; i < dag.nodes.size(); ++i) {
    const Node& n = dag.nodes[i];
    const Digest256& tag = node_tag(n.kind);
    switch (n.kind) {
      case NodeKind::Iden:
      case NodeKind::Unit:
      case NodeKind::Fail:
      case NodeKind::Witness:
      case NodeKind::SigHash:
        roots[i] = compress_children(tag, zero, zero);
        break;
      case NodeKind::Injl:
      case NodeKind::Injr:
      case NodeKind::Take:
      case NodeKind::Drop:
        roots[i] = compress_children(tag, roots[n.a], zero);
        break;
      case NodeKind::Comp:
      case NodeKind::Case:
      case NodeKind::Pair:
        roots[i] = compress_children(tag, roots[n.a], roots[n.b]);
        break;
      case NodeKind::AssertL:
        roots[i] = compress_children(tag, roots[n.a], n.hash);
        break;
      case NodeKind::AssertR:
        roots[i] = compress_children(tag, n.hash, roots[n.a]);
        break;
    }
  }
  return roots;
}

Digest256 merkle_root(const TermDag& dag) {
  if (dag.nodes.empty()) throw Error("merkle root of an empty term dag");
  return merkle_roots(dag)[dag.root];
}

namespace {

// Compacts `nodes` to those reachable from `root`, preserving relative order.
TermDag compact(std::vector<Node> nodes, uint32_t root) {
  TermDag tmp{std::move(nodes), root};
  std::vector<bool> reach = reachable_from_root(tmp);
  std::vector<uint32_t> remap(tmp.nodes.size());
  TermDag out;
  for (uint32_t i = 0; i < tmp.nodes.size(); ++i) {
    if (!reach[i]) continue;
    Node n = tmp.nodes[i];
    unsigned kids = child_count(n.kind);
    if (kids >= 1) n.a = remap[n.a];
    if (kids >= 2) n.b = remap[n.b];
    remap[i] = static_cast<uint32_t>(out.nodes.size());
    out.nodes.push_back(std::move(n));
  }
  out.root = remap[root];
  return out;
}

}  // namespace

TermDag prune(const TypedDag& typed, const Value& input, const TxEnv& env) {
  std::vector<uint8_t> branch_use;
  EvalOutcome outcome = eval_ext_traced(typed, input, env, branch_use);
  if (outcome.is_bottom())
    throw EvaluationFailed(
        "prune: evaluation reached bottom; no branch profile to prune by");

  std::vector<Digest256> roots = merkle_roots(typed.dag);
  std::vector<Node> nodes = typed.dag.nodes;
  for (size_t i = 0; i < nodes.size(); ++i) {
    Node& n = nodes[i];
    if (n.kind != NodeKind::Case) continue;
    if (branch_use[i] == 1) {  // only the left branch ever ran
      n.kind = NodeKind::AssertL;
      n.hash = roots[n.b];
      n.b = 0;
    } else if (branch_use[i] == 2) {  // only the right branch ever ran
      n.kind = NodeKind::AssertR;
      n.hash = roots[n.a];
      n.a = n.b;
      n.b = 0;
    }
  }
  return compact(std::move(nodes), typed.dag.root);
}

TermDag mix_entropy(const TermDag& dag, const Digest256& h) {
  validate_dag(dag);
  std::vector<Node> nodes = dag.nodes;
  auto push = [&nodes](Node n) {
    nodes.push_back(std::move(n));
    return static_cast<uint32_t>(nodes.size() - 1);
  };
  uint32_t iden = push({NodeKind::Iden, 0, 0, {}, std::nullopt, std::nullopt});
  uint32_t injl = push({NodeKind::Injl, iden, 0, {}, std::nullopt, std::nullopt});
  uint32_t unit = push({NodeKind::Unit, 0, 0, {}, std::nullopt, std::nullopt});
  uint32_t pr = push({NodeKind::Pair, injl, unit, {}, std::nullopt, std::nullopt});
  uint32_t take = push({NodeKind::Take, dag.root, 0, {}, std::nullopt, std::nullopt});
  uint32_t al = push({NodeKind::AssertL, take, 0, h, std::nullopt, std::nullopt});
  uint32_t root = push({NodeKind::Comp, pr, al, {}, std::nullopt, std::nullopt});
  return compact(std::move(nodes), root);
}

}  // namespace simplicity
