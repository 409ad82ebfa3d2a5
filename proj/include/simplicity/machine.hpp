#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "simplicity/eval.hpp"
#include "simplicity/ty.hpp"
#include "simplicity/value.hpp"

namespace simplicity {

enum class Cell : uint8_t { Zero = 0, One = 1, Undef = 2 };

inline Cell cell_of_bit(bool b) { return b ? Cell::One : Cell::Zero; }

struct MachineFrame {
  std::vector<Cell> cells;
  size_t cursor = 0;
};

// Two non-empty stacks of frames; the active frames are the tops.
struct MachineState {
  std::vector<MachineFrame> read;
  std::vector<MachineFrame> write;

  MachineFrame& active_read() { return read.back(); }
  MachineFrame& active_write() { return write.back(); }

  size_t total_cells() const;
  size_t total_frames() const { return read.size() + write.size(); }
};

enum class CrashReason : uint8_t {
  DoubleWrite,      // writing over a defined cell
  WritePastEnd,     // write cursor at frame end
  CopyOutOfRange,   // copy source or destination exceeds a frame
  SkipPastEnd,      // skip beyond the write frame
  FwdPastEnd,       // read cursor moved beyond frame end
  BwdPastStart,     // read cursor moved before frame start
  EmptyWriteStack,  // moveFrame would leave no write frame
  EmptyReadStack,   // dropFrame would leave no read frame
  ReadUndef,        // read saw an undefined cell
  ReadPastEnd,      // read cursor at frame end
  ExplicitCrash,    // the crash instruction
};

const char* crash_reason_name(CrashReason r);

enum class OpCode : uint8_t {
  Nop,
  Write,      // bit
  Copy,       // n
  Skip,       // n
  Fwd,        // n
  Bwd,        // n
  NewFrame,   // n
  MoveFrame,
  DropFrame,
  Crash,
  WriteConst,   // cells (witness payloads; Undef cells are skipped)
  SigHashPrim,  // decode mode at the read cursor, write the 256 digest cells
  JetCall,      // run a native jet against the frames
};

// Native jet hook as seen by the machine: reads inCells at the read cursor,
// returns exactly outCells cells to write.
struct JetNative {
  std::string name;
  uint64_t in_cells = 0;
  uint64_t out_cells = 0;
  std::function<std::vector<Cell>(std::span<const Cell>)> fn;
};

struct Instruction {
  OpCode op = OpCode::Nop;
  uint64_t n = 0;                          // counts / Write bit (0/1)
  std::vector<Cell> cells;                 // WriteConst payload
  std::shared_ptr<const JetNative> jet;    // JetCall target

  static Instruction nop() { return {}; }
  static Instruction write(bool bit) {
    return {OpCode::Write, bit ? 1u : 0u, {}, nullptr};
  }
  static Instruction copy(uint64_t n) { return {OpCode::Copy, n, {}, nullptr}; }
  static Instruction skip(uint64_t n) { return {OpCode::Skip, n, {}, nullptr}; }
  static Instruction fwd(uint64_t n) { return {OpCode::Fwd, n, {}, nullptr}; }
  static Instruction bwd(uint64_t n) { return {OpCode::Bwd, n, {}, nullptr}; }
  static Instruction new_frame(uint64_t n) {
    return {OpCode::NewFrame, n, {}, nullptr};
  }
  static Instruction move_frame() { return {OpCode::MoveFrame, 0, {}, nullptr}; }
  static Instruction drop_frame() { return {OpCode::DropFrame, 0, {}, nullptr}; }
  static Instruction crash() { return {OpCode::Crash, 0, {}, nullptr}; }
  static Instruction write_const(std::vector<Cell> cs) {
    return {OpCode::WriteConst, 0, std::move(cs), nullptr};
  }
  static Instruction sighash_prim() {
    return {OpCode::SigHashPrim, 0, {}, nullptr};
  }
  static Instruction jet_call(std::shared_ptr<const JetNative> j) {
    return {OpCode::JetCall, 0, {}, std::move(j)};
  }
};

// A program is a sequence of steps; a step is an instruction or a branch on
// the cell under the read cursor. Sub-programs are shared (compilation
// memoizes over the term dag), so Program is a DAG executed as a tree.
struct Program {
  struct Step {
    std::optional<Instruction> instr;        // set for plain instructions
    std::shared_ptr<const Program> sub;      // set for sub-program calls
    std::shared_ptr<const Program> on_zero;  // set for branches
    std::shared_ptr<const Program> on_one;
  };
  std::vector<Step> steps;

  static Program::Step branch(std::shared_ptr<const Program> z,
                              std::shared_ptr<const Program> o) {
    return Step{std::nullopt, nullptr, std::move(z), std::move(o)};
  }
  static Program::Step call(std::shared_ptr<const Program> p) {
    return Step{std::nullopt, std::move(p), nullptr, nullptr};
  }
  static Program::Step one(Instruction i) {
    return Step{std::move(i), nullptr, nullptr, nullptr};
  }
};

struct ExecStats {
  uint64_t instructions = 0;
  uint64_t cells_copied = 0;
  uint64_t peak_cells = 0;
  uint64_t peak_frames = 0;
};

// How undefined cells are materialized. Strict keeps the three-state
// semantics and all definedness crashes. BackedZero/BackedOne realize every
// nominally undefined cell as that bit and disable definedness checks
// (bounds and stack checks remain); used to test that defined outputs never
// depend on undefined cell contents.
enum class UndefBacking : uint8_t { Strict, BackedZero, BackedOne };

// Value <-> cell codecs of the machine's value representation.
std::vector<Cell> cells_of_value(const Value& v, TyRef a);
// Throws MalformedCells on wrong length or an Undef cell in a demanded
// position (padding cells are ignored).
Value value_of_cells(std::span<const Cell> cells, TyRef a);

// One read frame holding the input value (cursor 0), one write frame of
// bit_size(B) undefined cells (cursor 0).
MachineState init_state(const Value& v, TyRef a, TyRef b,
                        UndefBacking backing = UndefBacking::Strict);

// Executes a single instruction. Returns the crash reason, if any.
// `stats` (optional) is updated exactly as exec_program would.
std::optional<CrashReason> step(MachineState& st, const Instruction& instr,
                                const TxEnv& env, ExecStats* stats = nullptr,
                                UndefBacking backing = UndefBacking::Strict);

struct ExecResult {
  std::optional<CrashReason> crash;
  ExecStats stats;
};

// Runs a whole program. Branch steps read the scrutinee cell (counted as one
// executed instruction) and descend. Peaks are sampled after every
// instruction and at entry. `trace` (optional) receives one line per
// instruction.
ExecResult exec_program(const Program& program, MachineState& st,
                        const TxEnv& env, std::ostream* trace = nullptr,
                        UndefBacking backing = UndefBacking::Strict);

}  // namespace simplicity
