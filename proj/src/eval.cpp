#include "simplicity/eval.hpp"

#include <cstring>

#include "simplicity/digest.hpp"
#include "simplicity/errors.hpp"

namespace simplicity {

namespace {

// Value nodes packed into a bump arena: evaluation is a hot path and the
// public shared_ptr Value is too heavy for the inner loop. Slot 0 is unit.
using VRef = uint32_t;

class ValueArena {
 public:
  ValueArena() { vs_.push_back({ValueKind::Unit, 0, 0}); }

  VRef unit() const { return 0; }
  VRef left(VRef a) { return push(ValueKind::Left, a, 0); }
  VRef right(VRef a) { return push(ValueKind::Right, a, 0); }
  VRef pair(VRef a, VRef b) { return push(ValueKind::Pair, a, b); }

  ValueKind kind(VRef v) const { return vs_[v].k; }
  VRef first(VRef v) const { return vs_[v].a; }
  VRef second(VRef v) const { return vs_[v].b; }
  VRef inner(VRef v) const { return vs_[v].a; }

  VRef from_value(const Value& v) {
    switch (v.kind()) {
      case ValueKind::Unit:
        return unit();
      case ValueKind::Left:
        return left(from_value(v.inner()));
      case ValueKind::Right:
        return right(from_value(v.inner()));
      case ValueKind::Pair: {
        VRef a = from_value(v.first());
        VRef b = from_value(v.second());
        return pair(a, b);
      }
    }
    return unit();
  }

  Value to_value(VRef v) const {
    switch (kind(v)) {
      case ValueKind::Unit:
        return Value::unit();
      case ValueKind::Left:
        return Value::left(to_value(inner(v)));
      case ValueKind::Right:
        return Value::right(to_value(inner(v)));
      case ValueKind::Pair:
        return Value::pair(to_value(first(v)), to_value(second(v)));
    }
    return Value::unit();
  }

  // Builds the word value of `bits` bits from MSB-first bytes.
  VRef from_bytes(const uint8_t* bytes, unsigned bits) {
    if (bits == 1) {
      bool b = (bytes[0] & 0x80u) != 0;
      return b ? right(unit()) : left(unit());
    }
    // Represent the two halves; within a byte shift the remainder left.
    unsigned half = bits / 2;
    if (half >= 8) {
      VRef hi = from_bytes(bytes, half);
      VRef lo = from_bytes(bytes + half / 8, half);
      return pair(hi, lo);
    }
    uint8_t shifted = uint8_t(bytes[0] << half);
    uint8_t loByte = shifted;
    VRef hi = from_bytes(bytes, half);
    VRef lo = from_bytes(&loByte, half);
    return pair(hi, lo);
  }

 private:
  struct VN {
    ValueKind k;
    VRef a, b;
  };

  VRef push(ValueKind k, VRef a, VRef b) {
    vs_.push_back({k, a, b});
    return static_cast<VRef>(vs_.size() - 1);
  }

  std::vector<VN> vs_;
};

struct Frame {
  uint32_t node;
  uint8_t stage;
  VRef in;
  VRef save;
};

enum class Mode { Core, Ext };

struct EvalConfig {
  Mode mode;
  const TxEnv* env = nullptr;
  std::vector<uint8_t>* branchUse = nullptr;
};

// Shared engine. Returns nullopt for Bottom (Ext mode only).
std::optional<Value> run_eval(const TypedDag& typed, const Value& input,
                              const EvalConfig& cfg) {
  const TermDag& dag = typed.dag;
  if (!value_has_type(input, typed.in[dag.root]))
    throw TypeError(TypeError::Kind::TypeMismatch, dag.root,
                    "input does not inhabit " + render_ty(typed.in[dag.root]));
  if (cfg.mode == Mode::Core) {
    for (uint32_t i = 0; i < dag.nodes.size(); ++i)
      if (!is_core_kind(dag.nodes[i].kind))
        throw TypeError(TypeError::Kind::NotCore, i,
                        std::string("extended combinator '") +
                            node_kind_name(dag.nodes[i].kind) +
                            "' where core-only was required");
  }

  ValueArena arena;
  // Lazily converted witness payloads, per node.
  std::vector<VRef> witnessRef(dag.nodes.size(), UINT32_MAX);

  std::vector<Frame> stack;
  stack.push_back({dag.root, 0, arena.from_value(input), 0});
  VRef result = 0;

  while (!stack.empty()) {
    Frame& f = stack.back();
    const Node& n = dag.nodes[f.node];
    switch (n.kind) {
      case NodeKind::Iden:
        result = f.in;
        stack.pop_back();
        break;
      case NodeKind::Unit:
        result = arena.unit();
        stack.pop_back();
        break;
      case NodeKind::Injl:
      case NodeKind::Injr:
        if (f.stage == 0) {
          f.stage = 1;
          uint32_t child = n.a;
          VRef in = f.in;
          stack.push_back({child, 0, in, 0});
        } else {
          result = n.kind == NodeKind::Injl ? arena.left(result)
                                            : arena.right(result);
          stack.pop_back();
        }
        break;
      case NodeKind::Take: {
        // Tail: replace this frame with the child on the first component.
        uint32_t child = n.a;
        VRef in = arena.first(f.in);
        f = {child, 0, in, 0};
        break;
      }
      case NodeKind::Drop: {
        uint32_t child = n.a;
        VRef in = arena.second(f.in);
        f = {child, 0, in, 0};
        break;
      }
      case NodeKind::Comp:
        if (f.stage == 0) {
          f.stage = 1;
          uint32_t child = n.a;
          VRef in = f.in;
          stack.push_back({child, 0, in, 0});
        } else {
          // Tail: run the second child on the first child's output.
          f = {n.b, 0, result, 0};
        }
        break;
      case NodeKind::Pair:
        if (f.stage == 0) {
          f.stage = 1;
          uint32_t child = n.a;
          VRef in = f.in;
          stack.push_back({child, 0, in, 0});
        } else if (f.stage == 1) {
          f.stage = 2;
          f.save = result;
          uint32_t child = n.b;
          VRef in = f.in;
          stack.push_back({child, 0, in, 0});
        } else {
          result = arena.pair(f.save, result);
          stack.pop_back();
        }
        break;
      case NodeKind::Case: {
        VRef scrut = arena.first(f.in);
        VRef ctx = arena.second(f.in);
        bool isRight = arena.kind(scrut) == ValueKind::Right;
        if (cfg.branchUse)
          (*cfg.branchUse)[f.node] |= isRight ? 2 : 1;
        uint32_t child = isRight ? n.b : n.a;
        VRef in = arena.pair(arena.inner(scrut), ctx);
        f = {child, 0, in, 0};
        break;
      }
      case NodeKind::AssertL:
      case NodeKind::AssertR: {
        VRef scrut = arena.first(f.in);
        bool isRight = arena.kind(scrut) == ValueKind::Right;
        bool want_right = n.kind == NodeKind::AssertR;
        if (isRight != want_right) return std::nullopt;  // Bottom
        VRef in = arena.pair(arena.inner(scrut), arena.second(f.in));
        f = {n.a, 0, in, 0};
        break;
      }
      case NodeKind::Fail:
        return std::nullopt;  // Bottom
      case NodeKind::Witness: {
        if (witnessRef[f.node] == UINT32_MAX) {
          if (!n.witness)
            throw TypeError(TypeError::Kind::MissingWitness, f.node,
                            "witness placeholder reached during evaluation");
          witnessRef[f.node] = arena.from_value(*n.witness);
        }
        result = witnessRef[f.node];
        stack.pop_back();
        break;
      }
      case NodeKind::SigHash: {
        Value mode = arena.to_value(f.in);
        Value digest = make_sighash(mode, cfg.env ? *cfg.env : TxEnv{});
        std::vector<uint8_t> raw = value_to_bytes(digest, 256);
        result = arena.from_bytes(raw.data(), 256);
        stack.pop_back();
        break;
      }
    }
  }
  return arena.to_value(result);
}

}  // namespace

Value eval_core(const TypedDag& typed, const Value& input) {
  EvalConfig cfg{Mode::Core, nullptr, nullptr};
  auto out = run_eval(typed, input, cfg);
  // Core evaluation is total; nullopt cannot happen.
  return *out;
}

EvalOutcome eval_ext(const TypedDag& typed, const Value& input,
                     const TxEnv& env) {
  EvalConfig cfg{Mode::Ext, &env, nullptr};
  auto out = run_eval(typed, input, cfg);
  if (!out) return EvalOutcome::bottom();
  return EvalOutcome::make_ok(std::move(*out));
}

EvalOutcome eval_ext_traced(const TypedDag& typed, const Value& input,
                            const TxEnv& env,
                            std::vector<uint8_t>& branchUse) {
  branchUse.assign(typed.dag.nodes.size(), 0);
  EvalConfig cfg{Mode::Ext, &env, &branchUse};
  auto out = run_eval(typed, input, cfg);
  if (!out) return EvalOutcome::bottom();
  return EvalOutcome::make_ok(std::move(*out));
}

Value make_sighash(const Value& mode, const TxEnv& env) {
  if (!value_has_type(mode, ty_sighash_mode()))
    throw TypeError(TypeError::Kind::TypeMismatch, 0,
                    "sighash mode must inhabit " +
                        render_ty(ty_sighash_mode()));
  Value first = mode.first();
  unsigned firstIndex;
  if (first.kind() == ValueKind::Left) {
    firstIndex = 0;
  } else {
    firstIndex = first.inner().as_bit() ? 2 : 1;
  }
  unsigned secondBit = mode.second().as_bit() ? 1 : 0;
  uint8_t modeByte = uint8_t(firstIndex + 3 * secondBit);

  std::vector<uint8_t> msg;
  msg.reserve(1 + env.bytes.size());
  msg.push_back(modeByte);
  msg.insert(msg.end(), env.bytes.begin(), env.bytes.end());
  Digest256 d = sha256(msg);
  return bytes_to_value(std::span<const uint8_t>(d.bytes.data(), 32), 256);
}

}  // namespace simplicity
