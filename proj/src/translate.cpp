#include "simplicity/translate.hpp"

#include <array>
#include <utility>
#include <vector>

#include "simplicity/jets.hpp"
#include "simplicity/merkle.hpp"
#include "simplicity/ty.hpp"

namespace simplicity {

namespace {

using ProgPtr = std::shared_ptr<const Program>;

void ins(Program& p, Instruction i) {
  p.steps.push_back(Program::one(std::move(i)));
}

void call(Program& p, ProgPtr sub) {
  p.steps.push_back(Program::call(std::move(sub)));
}

// fwd(n); body; optionally bwd(n) to restore the read cursor.
ProgPtr arm(uint64_t n, ProgPtr body, bool restore) {
  auto p = std::make_shared<Program>();
  ins(*p, Instruction::fwd(n));
  call(*p, std::move(body));
  if (restore) ins(*p, Instruction::bwd(n));
  return p;
}

ProgPtr crash_arm() {
  auto p = std::make_shared<Program>();
  ins(*p, Instruction::crash());
  return p;
}

constexpr size_t kModes = 3;

size_t mode_index(TailMode m) { return static_cast<size_t>(m); }

struct Compiler {
  const TypedDag& typed;
  const JetRegistry* jets;
  std::vector<Digest256> roots;      // only filled when jets are in play
  std::vector<bool> has_witness;  // per node
  // programs[node][mode]; unreachable nodes stay null.
  std::vector<std::array<ProgPtr, kModes>> programs;

  Compiler(const TypedDag& t, const JetRegistry* j) : typed(t), jets(j) {
    const TermDag& dag = typed.dag;
    programs.resize(dag.nodes.size());
    if (jets) {
      roots = merkle_roots(dag);
      has_witness = contains_witness(dag);
    }
    std::vector<bool> reach = reachable_from_root(dag);
    for (uint32_t i = 0; i < dag.nodes.size(); ++i) {
      if (!reach[i]) continue;
      const std::shared_ptr<const JetNative>* native = jet_for(i);
      for (size_t m = 0; m < kModes; ++m) {
        programs[i][m] =
            native ? compile_jet(*native, static_cast<TailMode>(m))
                   : compile_node(i, static_cast<TailMode>(m));
      }
    }
  }

  // The registered native for this node, or null. Matching needs both the
  // commitment root and the node's inferred types to agree with the
  // registration: the root does not pin down frame layout for subterms whose
  // structure leaves types open.
  const std::shared_ptr<const JetNative>* jet_for(uint32_t i) const {
    if (!jets || has_witness[i]) return nullptr;
    const Jet* jet = jets->find(roots[i], typed.in[i], typed.out[i]);
    return jet ? &jet->native : nullptr;
  }

  static ProgPtr compile_jet(std::shared_ptr<const JetNative> native,
                             TailMode mode) {
    auto p = std::make_shared<Program>();
    ins(*p, Instruction::jet_call(std::move(native)));
    if (mode == TailMode::TcoOn) ins(*p, Instruction::drop_frame());
    return p;
  }

  ProgPtr child(uint32_t parent, uint32_t c, TailMode mode) const {
    ProgPtr p = programs[c][mode_index(mode)];
    if (!p)
      throw Error("compile: child " + std::to_string(c) + " of node " +
                  std::to_string(parent) + " has no program");
    return p;
  }

  ProgPtr compile_node(uint32_t i, TailMode mode) {
    const Node& n = typed.dag.nodes[i];
    const bool on = mode == TailMode::TcoOn;
    // Child mode for ordinary (non-composition, non-pair) positions: the
    // phase propagates unchanged.
    const TailMode sub = mode;
    auto p = std::make_shared<Program>();
    switch (n.kind) {
      case NodeKind::Iden: {
        ins(*p, Instruction::copy(bit_size(typed.in[i])));
        if (on) ins(*p, Instruction::drop_frame());
        return p;
      }
      case NodeKind::Unit: {
        if (on) {
          ins(*p, Instruction::drop_frame());
        } else {
          ins(*p, Instruction::nop());
        }
        return p;
      }
      case NodeKind::Injl:
      case NodeKind::Injr: {
        const TyNode& out = ty(typed.out[i]);
        bool right = n.kind == NodeKind::Injr;
        uint64_t pad = right ? pad_r(out.left, out.right)
                             : pad_l(out.left, out.right);
        ins(*p, Instruction::write(right));
        ins(*p, Instruction::skip(pad));
        call(*p, child(i, n.a, sub));
        return p;
      }
      case NodeKind::Take: {
        call(*p, child(i, n.a, sub));
        return p;
      }
      case NodeKind::Drop: {
        uint64_t first = bit_size(ty(typed.in[i]).left);
        ins(*p, Instruction::fwd(first));
        call(*p, child(i, n.a, sub));
        if (!on) ins(*p, Instruction::bwd(first));
        return p;
      }
      case NodeKind::Comp: {
        uint64_t mid = bit_size(typed.out[n.a]);
        ins(*p, Instruction::new_frame(mid));
        switch (mode) {
          case TailMode::Standard:
            call(*p, child(i, n.a, TailMode::Standard));
            ins(*p, Instruction::move_frame());
            call(*p, child(i, n.b, TailMode::Standard));
            ins(*p, Instruction::drop_frame());
            break;
          case TailMode::TcoOff:
            call(*p, child(i, n.a, TailMode::TcoOff));
            ins(*p, Instruction::move_frame());
            call(*p, child(i, n.b, TailMode::TcoOn));
            break;
          case TailMode::TcoOn:
            call(*p, child(i, n.a, TailMode::TcoOn));
            ins(*p, Instruction::move_frame());
            call(*p, child(i, n.b, TailMode::TcoOn));
            break;
        }
        return p;
      }
      case NodeKind::Pair: {
        // In the "on" phase the first component runs in the "off" phase (it
        // must leave the read frame in place for the second component).
        TailMode first = on ? TailMode::TcoOff : mode;
        call(*p, child(i, n.a, first));
        call(*p, child(i, n.b, sub));
        return p;
      }
      case NodeKind::Case:
      case NodeKind::AssertL:
      case NodeKind::AssertR: {
        const TyNode& in = ty(typed.in[i]);
        const TyNode& scrut = ty(in.left);
        uint64_t offL = 1 + pad_l(scrut.left, scrut.right);
        uint64_t offR = 1 + pad_r(scrut.left, scrut.right);
        bool restore = !on;
        ProgPtr z, o;
        if (n.kind == NodeKind::AssertR) {
          z = crash_arm();
        } else {
          z = arm(offL, child(i, n.a, sub), restore);
        }
        if (n.kind == NodeKind::AssertL) {
          o = crash_arm();
        } else {
          uint32_t rightChild = n.kind == NodeKind::Case ? n.b : n.a;
          o = arm(offR, child(i, rightChild, sub), restore);
        }
        p->steps.push_back(Program::branch(std::move(z), std::move(o)));
        return p;
      }
      case NodeKind::Fail: {
        ins(*p, Instruction::crash());
        return p;
      }
      case NodeKind::Witness: {
        if (!n.witness.has_value())
          throw TypeError(TypeError::Kind::MissingWitness, i,
                          "compile: witness placeholder at node " +
                              std::to_string(i) + " has no value");
        ins(*p, Instruction::write_const(
                    cells_of_value(*n.witness, typed.out[i])));
        if (on) ins(*p, Instruction::drop_frame());
        return p;
      }
      case NodeKind::SigHash: {
        ins(*p, Instruction::sighash_prim());
        if (on) ins(*p, Instruction::drop_frame());
        return p;
      }
    }
    throw Error("compile: unknown node kind");
  }
};

}  // namespace

std::shared_ptr<const Program> compile_fragment(const TypedDag& typed,
                                                TailMode mode,
                                                const JetRegistry* jets) {
  if (typed.dag.nodes.empty()) throw Error("compile: empty term dag");
  Compiler c(typed, jets);
  return c.programs[typed.dag.root][mode_index(mode)];
}

RunResult run_term(const TypedDag& typed, const Value& input,
                   const RunOptions& opts, const TxEnv& env) {
  TyRef a = typed.root_in();
  TyRef b = typed.root_out();
  if (!value_has_type(input, a))
    throw TypeError(TypeError::Kind::TypeMismatch, typed.dag.root,
                    "run: input value does not have the program's input type");
  const JetRegistry* registry = opts.use_jets ? opts.registry : nullptr;
  if (opts.use_jets && !registry)
    throw Error("run: jet substitution requested without a registry");
  ProgPtr program = compile_fragment(
      typed, opts.tco ? TailMode::TcoOff : TailMode::Standard, registry);

  RunResult r;
  r.final_state = init_state(input, a, b, opts.backing);
  ExecResult ex =
      exec_program(*program, r.final_state, env, opts.trace, opts.backing);
  r.stats = ex.stats;
  if (ex.crash) {
    if (*ex.crash != CrashReason::ExplicitCrash) throw InternalCrash(*ex.crash);
    r.outcome = EvalOutcome::bottom();
    return r;
  }
  const MachineFrame& out = r.final_state.write.back();
  r.outcome = EvalOutcome::make_ok(value_of_cells(out.cells, b));
  return r;
}

}  // namespace simplicity
