#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "simplicity/analysis.hpp"
#include "simplicity/errors.hpp"
#include "simplicity/eval.hpp"
#include "simplicity/jets.hpp"
#include "simplicity/merkle.hpp"
#include "simplicity/stdlib.hpp"
#include "simplicity/term.hpp"
#include "simplicity/text.hpp"
#include "simplicity/translate.hpp"
#include "simplicity/ty.hpp"
#include "simplicity/typing.hpp"
#include "simplicity/value.hpp"

namespace {

using namespace simplicity;

constexpr int kExitOk = 0;
constexpr int kExitBottom = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

TypedDag load_program(const std::string& path) {
  return infer_types(parse_program(read_file(path)));
}

TxEnv load_env(const std::string& tx_path) {
  if (tx_path.empty()) return TxEnv{};
  return parse_tx_file(read_file(tx_path));
}

int cmd_check(const std::string& file) {
  TypedDag t = load_program(file);
  std::cout << render_ty(t.root_in()) << " |- " << render_ty(t.root_out())
            << "\n";
  return kExitOk;
}

int cmd_eval(const std::string& file, const std::string& input,
             const std::string& tx) {
  TypedDag t = load_program(file);
  Value in = parse_value(input);
  EvalOutcome out = eval_ext(t, in, load_env(tx));
  if (out.is_bottom()) {
    std::cout << "bottom\n";
    return kExitBottom;
  }
  std::cout << print_value(*out.value) << "\n";
  return kExitOk;
}

int cmd_run(const std::string& file, const std::string& input,
            const std::string& tx, bool tco, bool no_jets, bool trace,
            bool stats) {
  TypedDag t = load_program(file);
  Value in = parse_value(input);
  RunOptions opts;
  opts.tco = tco;
  opts.use_jets = !no_jets;
  if (opts.use_jets) opts.registry = &default_registry();
  if (trace) opts.trace = &std::cout;
  RunResult r = run_term(t, in, opts, load_env(tx));
  if (stats) {
    std::cout << "instructions: " << r.stats.instructions << "\n"
              << "cells_copied: " << r.stats.cells_copied << "\n"
              << "peak_cells: " << r.stats.peak_cells << "\n"
              << "peak_frames: " << r.stats.peak_frames << "\n";
  }
  if (r.outcome.is_bottom()) {
    std::cout << "bottom\n";
    return kExitBottom;
  }
  std::cout << print_value(*r.outcome.value) << "\n";
  return kExitOk;
}

int cmd_analyze(const std::string& file) {
  TypedDag t = load_program(file);
  AnalysisReport rep = analyze(t);
  std::cout << "input_bits: " << rep.input_bits << "\n"
            << "output_bits: " << rep.output_bits << "\n"
            << "cb: " << rep.cb << "\n"
            << "cb_tco: " << rep.cb_tco << "\n"
            << "total_tree_nodes: " << rep.counts.total_tree_nodes << "\n"
            << "unique_dag_nodes: " << rep.counts.unique_dag_nodes << "\n"
            << "unique_typed_nodes: " << rep.counts.unique_typed_nodes << "\n"
            << "merkle_root: " << rep.root.hex() << "\n";
  return kExitOk;
}

int cmd_merkle(const std::string& file) {
  TermDag dag = parse_program(read_file(file));
  std::cout << merkle_root(dag).hex() << "\n";
  return kExitOk;
}

int cmd_prune(const std::string& file, const std::string& input,
              const std::string& tx, const std::string& witness,
              const std::string& out_path) {
  TermDag dag = parse_program(read_file(file));
  if (!witness.empty())
    dag = substitute_witnesses(dag, parse_witness_file(read_file(witness)));
  TypedDag typed = infer_types(dag);
  Value in = parse_value(input);
  TxEnv env = load_env(tx);
  TermDag pruned;
  try {
    pruned = prune(typed, in, env);
  } catch (const EvaluationFailed&) {
    std::cerr << "program evaluates to bottom; nothing to prune\n";
    return kExitBottom;
  }
  write_file(out_path, print_program(pruned));
  return kExitOk;
}

int cmd_gen(const std::string& what, unsigned width,
            const std::string& out_path) {
  std::string text;
  std::string witness_text;
  if (what == "flip") {
    text = print_program(gen_flip().dag);
  } else if (what == "adder") {
    text = print_program(gen_half_adder().dag);
  } else if (what == "fulladder") {
    text = print_program(gen_full_adder(width).dag);
  } else if (what == "multiplier") {
    text = print_program(gen_multiplier(width).dag);
  } else if (what == "eq") {
    text = print_program(gen_eq(width).dag);
  } else if (what == "sha256") {
    text = print_program(gen_sha256_block().dag);
  } else if (what == "basicverify") {
    BasicVerifyDemo d = gen_basic_verify();
    text = print_program(d.program.dag);
    witness_text = print_value(d.sig) + "\n" + print_value(d.mode) + "\n";
  } else {
    throw Error("unknown generator: " + what);
  }
  if (out_path.empty()) {
    std::cout << text;
    if (!witness_text.empty())
      std::cerr << "note: witness values not emitted (use -o to write them "
                   "alongside the program)\n";
  } else {
    write_file(out_path, text);
    if (!witness_text.empty()) write_file(out_path + ".wit", witness_text);
  }
  return kExitOk;
}

int cmd_jets_list() {
  for (const Jet& j : default_registry().list()) {
    std::cout << j.root.hex() << " " << j.name << " " << render_ty(j.ty_in)
              << " |- " << render_ty(j.ty_out) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simplicity toolkit: typecheck, evaluate, run, analyze, "
               "commit, prune, and generate programs"};
  app.require_subcommand(1);

  std::string file, input = "u", tx, witness, out_path, gen_what;
  unsigned width = 1;
  bool tco = false, no_jets = false, trace = false, stats = false;

  CLI::App* check = app.add_subcommand("check", "typecheck a program file");
  check->add_option("file", file, "program file")->required();

  CLI::App* eval = app.add_subcommand("eval", "evaluate denotationally");
  eval->add_option("file", file, "program file")->required();
  eval->add_option("--input", input, "input value (default u)");
  eval->add_option("--tx", tx, "transaction file (hex bytes)");

  CLI::App* run = app.add_subcommand("run", "execute on the bit machine");
  run->add_option("file", file, "program file")->required();
  run->add_option("--input", input, "input value (default u)");
  run->add_option("--tx", tx, "transaction file (hex bytes)");
  run->add_flag("--tco", tco, "use the tail-composition-optimized translation");
  run->add_flag("--no-jets", no_jets, "disable jet substitution");
  run->add_flag("--trace", trace, "print one line per machine instruction");
  run->add_flag("--stats", stats, "print execution statistics");

  CLI::App* analyze = app.add_subcommand("analyze", "static analysis report");
  analyze->add_option("file", file, "program file")->required();

  CLI::App* merkle = app.add_subcommand("merkle", "print the Merkle root");
  merkle->add_option("file", file, "program file")->required();

  CLI::App* prune = app.add_subcommand(
      "prune", "remove branches unused on the given input");
  prune->add_option("file", file, "program file")->required();
  prune->add_option("--input", input, "input value")->required();
  prune->add_option("--tx", tx, "transaction file (hex bytes)");
  prune->add_option("--witness", witness, "witness value file");
  prune->add_option("-o,--output", out_path, "output program file")
      ->required();

  CLI::App* gen = app.add_subcommand("gen", "generate a library program");
  gen->add_option("what", gen_what,
                  "flip|adder|fulladder|multiplier|eq|sha256|basicverify")
      ->required();
  gen->add_option("width", width, "word width for sized generators");
  gen->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* jets = app.add_subcommand("jets", "jet registry commands");
  bool jets_list = false;
  CLI::App* jets_list_cmd = jets->add_subcommand("list", "list built-in jets");
  (void)jets_list_cmd;
  jets->require_subcommand(1);
  jets_list = true;
  (void)jets_list;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    // CLI11 returns 0 for --help; anything else is a usage error.
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(file);
    if (eval->parsed()) return cmd_eval(file, input, tx);
    if (run->parsed())
      return cmd_run(file, input, tx, tco, no_jets, trace, stats);
    if (analyze->parsed()) return cmd_analyze(file);
    if (merkle->parsed()) return cmd_merkle(file);
    if (prune->parsed())
      return cmd_prune(file, input, tx, witness, out_path);
    if (gen->parsed()) return cmd_gen(gen_what, width, out_path);
    if (jets->parsed()) return cmd_jets_list();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
