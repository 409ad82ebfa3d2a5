#include "simplicity/machine.hpp"

#include <algorithm>

#include "simplicity/errors.hpp"

namespace simplicity {

const char* crash_reason_name(CrashReason r) {
  switch (r) {
    case CrashReason::DoubleWrite: return "DoubleWrite";
    case CrashReason::WritePastEnd: return "WritePastEnd";
    case CrashReason::CopyOutOfRange: return "CopyOutOfRange";
    case CrashReason::SkipPastEnd: return "SkipPastEnd";
    case CrashReason::FwdPastEnd: return "FwdPastEnd";
    case CrashReason::BwdPastStart: return "BwdPastStart";
    case CrashReason::EmptyWriteStack: return "EmptyWriteStack";
    case CrashReason::EmptyReadStack: return "EmptyReadStack";
    case CrashReason::ReadUndef: return "ReadUndef";
    case CrashReason::ReadPastEnd: return "ReadPastEnd";
    case CrashReason::ExplicitCrash: return "ExplicitCrash";
  }
  return "?";
}

size_t MachineState::total_cells() const {
  size_t n = 0;
  for (const auto& f : read) n += f.cells.size();
  for (const auto& f : write) n += f.cells.size();
  return n;
}

std::vector<Cell> cells_of_value(const Value& v, TyRef a) {
  if (!value_has_type(v, a))
    throw TypeError(TypeError::Kind::TypeMismatch, 0,
                    "value does not inhabit " + render_ty(a));
  std::vector<Cell> out;
  out.reserve(bit_size(a));
  struct Item {
    Value v;
    TyRef t;
  };
  std::vector<Item> work{{v, a}};
  while (!work.empty()) {
    Item it = std::move(work.back());
    work.pop_back();
    const TyNode& tn = ty(it.t);
    switch (it.v.kind()) {
      case ValueKind::Unit:
        break;
      case ValueKind::Left:
        out.push_back(Cell::Zero);
        out.insert(out.end(), pad_l(tn.left, tn.right), Cell::Undef);
        work.push_back({it.v.inner(), tn.left});
        break;
      case ValueKind::Right:
        out.push_back(Cell::One);
        out.insert(out.end(), pad_r(tn.left, tn.right), Cell::Undef);
        work.push_back({it.v.inner(), tn.right});
        break;
      case ValueKind::Pair:
        // Second pushed first so the first component is emitted first.
        work.push_back({it.v.second(), tn.right});
        work.push_back({it.v.first(), tn.left});
        break;
    }
  }
  return out;
}

namespace {

Value value_of_cells_rec(std::span<const Cell> cells, TyRef a) {
  const TyNode& tn = ty(a);
  switch (tn.kind) {
    case TyKind::Unit:
      return Value::unit();
    case TyKind::Sum: {
      Cell tag = cells[0];
      if (tag == Cell::Undef)
        throw MalformedCells("undefined tag cell");
      if (tag == Cell::Zero) {
        uint64_t pad = pad_l(tn.left, tn.right);
        return Value::left(
            value_of_cells_rec(cells.subspan(1 + pad), tn.left));
      }
      uint64_t pad = pad_r(tn.left, tn.right);
      return Value::right(
          value_of_cells_rec(cells.subspan(1 + pad), tn.right));
    }
    case TyKind::Prod: {
      uint64_t lsize = bit_size(tn.left);
      return Value::pair(value_of_cells_rec(cells.first(lsize), tn.left),
                         value_of_cells_rec(cells.subspan(lsize), tn.right));
    }
  }
  throw MalformedCells("unreachable");
}

}  // namespace

Value value_of_cells(std::span<const Cell> cells, TyRef a) {
  if (cells.size() != bit_size(a))
    throw MalformedCells("cell count " + std::to_string(cells.size()) +
                         " does not match bit size " +
                         std::to_string(bit_size(a)) + " of " + render_ty(a));
  return value_of_cells_rec(cells, a);
}

MachineState init_state(const Value& v, TyRef a, TyRef b,
                        UndefBacking backing) {
  MachineState st;
  MachineFrame rf;
  rf.cells = cells_of_value(v, a);
  if (backing != UndefBacking::Strict) {
    Cell fill = backing == UndefBacking::BackedOne ? Cell::One : Cell::Zero;
    for (Cell& c : rf.cells)
      if (c == Cell::Undef) c = fill;
  }
  st.read.push_back(std::move(rf));
  MachineFrame wf;
  Cell fill = backing == UndefBacking::Strict
                  ? Cell::Undef
                  : (backing == UndefBacking::BackedOne ? Cell::One
                                                        : Cell::Zero);
  wf.cells.assign(bit_size(b), fill);
  st.write.push_back(std::move(wf));
  return st;
}

namespace {

struct Counters {
  uint64_t cells;
  uint64_t frames;
};

void sample_peaks(ExecStats& stats, const Counters& c) {
  stats.peak_cells = std::max(stats.peak_cells, c.cells);
  stats.peak_frames = std::max(stats.peak_frames, c.frames);
}

// Writes one defined cell at the active write frame's cursor with the full
// Write checks.
std::optional<CrashReason> write_one(MachineState& st, Cell bit, bool strict) {
  MachineFrame& wf = st.active_write();
  if (wf.cursor >= wf.cells.size()) return CrashReason::WritePastEnd;
  if (strict && wf.cells[wf.cursor] != Cell::Undef)
    return CrashReason::DoubleWrite;
  wf.cells[wf.cursor] = bit;
  ++wf.cursor;
  return std::nullopt;
}

// Decodes the sighash mode from the three cells at the read cursor without
// moving it, per the value layout of (1 + 2) * 2.
std::optional<CrashReason> read_mode(const MachineState& st, Value& out) {
  const MachineFrame& rf = st.read.back();
  if (rf.cursor + 3 > rf.cells.size()) return CrashReason::ReadPastEnd;
  const Cell* c = rf.cells.data() + rf.cursor;
  if (c[0] == Cell::Undef || c[2] == Cell::Undef) return CrashReason::ReadUndef;
  Value first;
  if (c[0] == Cell::Zero) {
    first = Value::left(Value::unit());
  } else {
    if (c[1] == Cell::Undef) return CrashReason::ReadUndef;
    first = Value::right(Value::bit(c[1] == Cell::One));
  }
  out = Value::pair(first, Value::bit(c[2] == Cell::One));
  return std::nullopt;
}

std::string cell_string(std::span<const Cell> cells) {
  std::string s;
  s.reserve(cells.size());
  for (Cell c : cells)
    s += c == Cell::Undef ? '?' : (c == Cell::One ? '1' : '0');
  return s;
}

void trace_line(std::ostream* trace, const ExecStats& stats,
                const Counters& c, const std::string& text) {
  (*trace) << stats.instructions << " " << text << " cells=" << c.cells
           << " frames=" << c.frames << "\n";
}

// Applies one instruction, updating stats, running counters, and peaks.
std::optional<CrashReason> apply_instr(MachineState& st,
                                       const Instruction& in, const TxEnv& env,
                                       ExecStats& stats, Counters& c,
                                       UndefBacking backing,
                                       std::ostream* trace) {
  bool strict = backing == UndefBacking::Strict;
  // The text callback runs only when tracing, keeping the hot path free of
  // string construction.
  auto done = [&](auto&& text_fn) {
    sample_peaks(stats, c);
    if (trace) trace_line(trace, stats, c, text_fn());
    return std::nullopt;
  };
  auto fail = [&](CrashReason r) { return std::optional<CrashReason>(r); };

  switch (in.op) {
    case OpCode::Nop:
      ++stats.instructions;
      return done([] { return std::string("nop()"); });
    case OpCode::Write: {
      ++stats.instructions;
      auto crash = write_one(st, in.n ? Cell::One : Cell::Zero, strict);
      if (crash) return crash;
      return done([&] { return "write(" + std::to_string(in.n) + ")"; });
    }
    case OpCode::Copy: {
      ++stats.instructions;
      stats.cells_copied += in.n;
      MachineFrame& rf = st.active_read();
      MachineFrame& wf = st.active_write();
      if (rf.cursor + in.n > rf.cells.size())
        return fail(CrashReason::CopyOutOfRange);
      if (wf.cursor + in.n > wf.cells.size())
        return fail(CrashReason::CopyOutOfRange);
      if (strict) {
        for (uint64_t i = 0; i < in.n; ++i)
          if (wf.cells[wf.cursor + i] != Cell::Undef)
            return fail(CrashReason::DoubleWrite);
      }
      std::copy_n(rf.cells.begin() + rf.cursor, in.n,
                  wf.cells.begin() + wf.cursor);
      wf.cursor += in.n;
      return done([&] { return "copy(" + std::to_string(in.n) + ")"; });
    }
    case OpCode::Skip: {
      ++stats.instructions;
      MachineFrame& wf = st.active_write();
      if (wf.cursor + in.n > wf.cells.size())
        return fail(CrashReason::SkipPastEnd);
      wf.cursor += in.n;
      return done([&] { return "skip(" + std::to_string(in.n) + ")"; });
    }
    case OpCode::Fwd: {
      ++stats.instructions;
      MachineFrame& rf = st.active_read();
      if (rf.cursor + in.n > rf.cells.size())
        return fail(CrashReason::FwdPastEnd);
      rf.cursor += in.n;
      return done([&] { return "fwd(" + std::to_string(in.n) + ")"; });
    }
    case OpCode::Bwd: {
      ++stats.instructions;
      MachineFrame& rf = st.active_read();
      if (in.n > rf.cursor) return fail(CrashReason::BwdPastStart);
      rf.cursor -= in.n;
      return done([&] { return "bwd(" + std::to_string(in.n) + ")"; });
    }
    case OpCode::NewFrame: {
      ++stats.instructions;
      if (in.n > kSizeCap) throw Error("frame size beyond representable");
      MachineFrame f;
      Cell fill = strict ? Cell::Undef
                         : (backing == UndefBacking::BackedOne ? Cell::One
                                                               : Cell::Zero);
      f.cells.assign(in.n, fill);
      st.write.push_back(std::move(f));
      c.cells += in.n;
      c.frames += 1;
      return done([&] { return "newFrame(" + std::to_string(in.n) + ")"; });
    }
    case OpCode::MoveFrame: {
      ++stats.instructions;
      if (st.write.size() <= 1) return fail(CrashReason::EmptyWriteStack);
      MachineFrame f = std::move(st.write.back());
      st.write.pop_back();
      f.cursor = 0;
      st.read.push_back(std::move(f));
      return done([] { return std::string("moveFrame()"); });
    }
    case OpCode::DropFrame: {
      ++stats.instructions;
      if (st.read.size() <= 1) return fail(CrashReason::EmptyReadStack);
      c.cells -= st.read.back().cells.size();
      c.frames -= 1;
      st.read.pop_back();
      return done([] { return std::string("dropFrame()"); });
    }
    case OpCode::Crash:
      ++stats.instructions;
      return fail(CrashReason::ExplicitCrash);
    case OpCode::WriteConst: {
      // Counted as one write per defined cell and one skip per undefined
      // cell, matching the write/skip sequence it abbreviates.
      stats.instructions += in.cells.size();
      MachineFrame& wf = st.active_write();
      for (Cell cc : in.cells) {
        if (cc == Cell::Undef) {
          if (wf.cursor + 1 > wf.cells.size())
            return fail(CrashReason::SkipPastEnd);
          ++wf.cursor;
        } else {
          auto crash = write_one(st, cc, strict);
          if (crash) return crash;
        }
      }
      return done([&] { return "writeConst(" + cell_string(in.cells) + ")"; });
    }
    case OpCode::SigHashPrim: {
      // One primitive instruction; the digest cells count as copied cells,
      // mirroring the jet convention.
      ++stats.instructions;
      Value mode;
      if (auto crash = read_mode(st, mode)) return crash;
      Value digest = make_sighash(mode, env);
      std::vector<Cell> cells = cells_of_value(digest, ty_word(256));
      stats.cells_copied += cells.size();
      for (Cell cc : cells) {
        auto crash = write_one(st, cc, strict);
        if (crash) return crash;
      }
      return done([] { return std::string("sigHash()"); });
    }
    case OpCode::JetCall: {
      ++stats.instructions;
      const JetNative& jet = *in.jet;
      MachineFrame& rf = st.active_read();
      if (rf.cursor + jet.in_cells > rf.cells.size())
        return fail(CrashReason::ReadPastEnd);
      std::span<const Cell> input(rf.cells.data() + rf.cursor,
                                  static_cast<size_t>(jet.in_cells));
      std::vector<Cell> out;
      try {
        out = jet.fn(input);
      } catch (const MalformedCells&) {
        return fail(CrashReason::ReadUndef);
      }
      stats.cells_copied += out.size();
      for (Cell cc : out) {
        if (cc == Cell::Undef) {
          MachineFrame& wf = st.active_write();
          if (wf.cursor + 1 > wf.cells.size())
            return fail(CrashReason::SkipPastEnd);
          ++wf.cursor;
        } else {
          auto crash = write_one(st, cc, strict);
          if (crash) return crash;
        }
      }
      return done([&] { return "jet(" + jet.name + ")"; });
    }
  }
  throw Error("unknown opcode");
}

}  // namespace

std::optional<CrashReason> step(MachineState& st, const Instruction& instr,
                                const TxEnv& env, ExecStats* stats,
                                UndefBacking backing) {
  ExecStats local;
  ExecStats& s = stats ? *stats : local;
  Counters c{st.total_cells(), st.total_frames()};
  if (s.peak_cells < c.cells) s.peak_cells = c.cells;
  if (s.peak_frames < c.frames) s.peak_frames = c.frames;
  return apply_instr(st, instr, env, s, c, backing, nullptr);
}

ExecResult exec_program(const Program& program, MachineState& st,
                        const TxEnv& env, std::ostream* trace,
                        UndefBacking backing) {
  ExecResult res;
  Counters c{st.total_cells(), st.total_frames()};
  res.stats.peak_cells = c.cells;
  res.stats.peak_frames = c.frames;

  struct PC {
    const Program* p;
    size_t i;
  };
  std::vector<PC> ctl;
  ctl.push_back({&program, 0});
  while (!ctl.empty()) {
    PC& top = ctl.back();
    if (top.i >= top.p->steps.size()) {
      ctl.pop_back();
      continue;
    }
    const Program::Step& s = top.p->steps[top.i++];
    if (s.instr) {
      auto crash =
          apply_instr(st, *s.instr, env, res.stats, c, backing, trace);
      if (crash) {
        res.crash = crash;
        return res;
      }
    } else if (s.sub) {
      // Sub-program call: pure control flow, no machine effect.
      ctl.push_back({s.sub.get(), 0});
    } else {
      // Branch: perform the read (counts as one instruction).
      ++res.stats.instructions;
      const MachineFrame& rf = st.read.back();
      if (rf.cursor >= rf.cells.size()) {
        res.crash = CrashReason::ReadPastEnd;
        return res;
      }
      Cell cell = rf.cells[rf.cursor];
      if (cell == Cell::Undef) {
        if (backing == UndefBacking::Strict) {
          res.crash = CrashReason::ReadUndef;
          return res;
        }
        cell = backing == UndefBacking::BackedOne ? Cell::One : Cell::Zero;
      }
      sample_peaks(res.stats, c);
      if (trace) trace_line(trace, res.stats, c, "read()");
      const Program* next =
          cell == Cell::One ? s.on_one.get() : s.on_zero.get();
      if (next) ctl.push_back({next, 0});
    }
  }
  return res;
}

}  // namespace simplicity
