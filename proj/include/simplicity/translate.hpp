#pragma once

#include <memory>
#include <ostream>

#include "simplicity/errors.hpp"
#include "simplicity/eval.hpp"
#include "simplicity/machine.hpp"
#include "simplicity/typing.hpp"

namespace simplicity {

class JetRegistry;  // jets.hpp

// Which translation scheme a compiled fragment uses.
//   Standard : the plain translation; every frame pushed is popped by the
//              same fragment, and read frames are restored exactly.
//   TcoOff   : tail-composition-optimized, "off" phase. Net frame effect is
//              identical to Standard, but the active read frame of a
//              composition is dropped by the tail call instead of after it,
//              reducing peak cell usage.
//   TcoOn    : "on" phase; the fragment additionally drops the active read
//              frame when it finishes (or hands that duty to its own tail).
//              Equivalent to running the Standard fragment followed by
//              dropFrame.
enum class TailMode : uint8_t { Standard, TcoOff, TcoOn };

// A machine crash with any reason other than an explicit crash instruction
// signals a defect in compilation or analysis, not a program outcome, so it
// surfaces as an exception rather than a Bottom result.
class InternalCrash : public Error {
 public:
  CrashReason reason;
  explicit InternalCrash(CrashReason r)
      : Error(std::string("internal machine crash: ") + crash_reason_name(r)),
        reason(r) {}
};

// Compiles the root term into a machine program fragment in the given mode.
// When `jets` is given, any reachable subterm whose commitment root and
// inferred types match a registered jet compiles to a native jet call
// (topmost match wins); witness-bearing subterms are never substituted.
// Placeholder witnesses reachable from the root make compilation fail with
// TypeError{MissingWitness}.
std::shared_ptr<const Program> compile_fragment(
    const TypedDag& typed, TailMode mode, const JetRegistry* jets = nullptr);

// The plain translation of the whole program.
inline std::shared_ptr<const Program> compile_bm(
    const TypedDag& typed, const JetRegistry* jets = nullptr) {
  return compile_fragment(typed, TailMode::Standard, jets);
}

// The tail-composition-optimized translation of the whole program (the "off"
// phase is the whole-program entry point).
inline std::shared_ptr<const Program> compile_tco(
    const TypedDag& typed, const JetRegistry* jets = nullptr) {
  return compile_fragment(typed, TailMode::TcoOff, jets);
}

struct RunOptions {
  bool tco = false;        // use the tail-composition-optimized translation
  bool use_jets = false;   // substitute registered jets (needs `registry`)
  const JetRegistry* registry = nullptr;
  std::ostream* trace = nullptr;
  UndefBacking backing = UndefBacking::Strict;
};

struct RunResult {
  EvalOutcome outcome;      // the produced value, or bottom
  ExecStats stats;
  MachineState final_state;  // machine state at halt
};

// Compiles and runs the program on the machine: one read frame holding
// `input`, one write frame for the output. An explicit crash instruction
// yields a bottom outcome; any other crash throws InternalCrash.
RunResult run_term(const TypedDag& typed, const Value& input,
                   const RunOptions& opts = {}, const TxEnv& env = {});

}  // namespace simplicity
