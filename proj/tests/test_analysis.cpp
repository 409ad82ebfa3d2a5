#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "simplicity/analysis.hpp"
#include "simplicity/eval.hpp"
#include "simplicity/merkle.hpp"
#include "simplicity/stdlib.hpp"
#include "simplicity/text.hpp"
#include "simplicity/translate.hpp"
#include "support/corpus.hpp"

using namespace simplicity;
namespace st = simplicity::testing;

namespace {

TypedDag typed_of(const std::string& text) {
  return infer_types(parse_program(text));
}

// Independent transcriptions of the two cell-count recursions, written
// directly over the node list as the oracle twin of the library's analysis.
struct OraclePair {
  uint64_t n1 = 0, n2 = 0;
};

uint64_t oracle_extra(const TypedDag& t, uint32_t i) {
  const Node& n = t.dag.nodes[i];
  switch (n.kind) {
    case NodeKind::Iden:
    case NodeKind::Unit:
    case NodeKind::Fail:
    case NodeKind::Witness:
    case NodeKind::SigHash:
      return 0;
    case NodeKind::Comp:
      return bit_size(t.out[n.a]) +
             std::max(oracle_extra(t, n.a), oracle_extra(t, n.b));
    case NodeKind::Case:
    case NodeKind::Pair:
      return std::max(oracle_extra(t, n.a), oracle_extra(t, n.b));
    case NodeKind::Injl:
    case NodeKind::Injr:
    case NodeKind::Take:
    case NodeKind::Drop:
    case NodeKind::AssertL:
    case NodeKind::AssertR:
      return oracle_extra(t, n.a);
  }
  return 0;
}

OraclePair oracle_tco(const TypedDag& t, uint32_t i) {
  const Node& n = t.dag.nodes[i];
  switch (n.kind) {
    case NodeKind::Iden:
    case NodeKind::Unit:
    case NodeKind::Fail:
    case NodeKind::Witness:
    case NodeKind::SigHash:
      return {0, 0};
    case NodeKind::Comp: {
      OraclePair s = oracle_tco(t, n.a);
      OraclePair u = oracle_tco(t, n.b);
      uint64_t b = bit_size(t.out[n.a]);
      return {std::max({b + s.n1, u.n1, b + u.n2}), b + s.n2};
    }
    case NodeKind::Case: {
      OraclePair s = oracle_tco(t, n.a);
      OraclePair u = oracle_tco(t, n.b);
      return {std::max(s.n1, u.n1), std::max(s.n2, u.n2)};
    }
    case NodeKind::Pair: {
      OraclePair s = oracle_tco(t, n.a);
      OraclePair u = oracle_tco(t, n.b);
      return {u.n1, std::max({s.n1, s.n2, u.n2})};
    }
    case NodeKind::Injl:
    case NodeKind::Injr:
    case NodeKind::Take:
    case NodeKind::Drop:
    case NodeKind::AssertL:
    case NodeKind::AssertR:
      return oracle_tco(t, n.a);
  }
  return {0, 0};
}

uint64_t oracle_cb(const TypedDag& t) {
  return bit_size(t.root_in()) + bit_size(t.root_out()) +
         oracle_extra(t, t.dag.root);
}

uint64_t oracle_cb_tco(const TypedDag& t) {
  OraclePair p = oracle_tco(t, t.dag.root);
  return bit_size(t.root_in()) + bit_size(t.root_out()) +
         std::max(p.n1, p.n2);
}

}  // namespace

TEST_CASE("frozen hand-computed bounds") {
  // Worked out by unrolling the recursions on paper.
  TermBuilder b;
  TypedDag iden2 = b.extract_typed(b.iden(ty_bit()));
  CHECK(cell_bound(iden2) == 2);
  CHECK(cell_bound_tco(iden2) == 2);

  TypedDag u = typed_of("unit");
  CHECK(cell_bound(u) == 0);
  CHECK(cell_bound_tco(u) == 0);

  TypedDag flip = gen_flip();
  CHECK(cell_bound(flip) == 3);
  CHECK(tco_cells(flip) == TcoBound{1, 1});
  CHECK(cell_bound_tco(flip) == 3);

  TermBuilder b2;
  uint32_t i = b2.iden(ty_bit());
  TypedDag chain = b2.extract_typed(b2.comp(i, b2.comp(i, i)));
  CHECK(cell_bound(chain) == 4);
  CHECK(tco_cells(chain) == TcoBound{2, 1});
  CHECK(cell_bound_tco(chain) == 4);

  // Left-leaning chain: comp (comp iden iden) iden. The deferred-drop
  // translation saves nothing here either at one-bit widths, but n2 grows.
  TypedDag chain2 = b2.extract_typed(b2.comp(b2.comp(i, i), i));
  CHECK(cell_bound(chain2) == 4);
  CHECK(tco_cells(chain2) == TcoBound{2, 2});
}

TEST_CASE("analysis equals its oracle transcription on random programs") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 400; ++rep) {
    TypedDag t = st::random_core_term(rng, 6, 8);
    CHECK(cell_bound(t) == oracle_cb(t));
    OraclePair p = oracle_tco(t, t.dag.root);
    TcoBound got = tco_cells(t);
    CHECK(got.n1 == p.n1);
    CHECK(got.n2 == p.n2);
    CHECK(cell_bound_tco(t) == oracle_cb_tco(t));
  }
}

TEST_CASE("peak cell usage never exceeds the static bounds") {
  std::mt19937_64 rng(63);
  for (int rep = 0; rep < 300; ++rep) {
    TypedDag t = st::random_core_term(rng, 7, 8);
    Value in = st::random_value_of(t.root_in(), rng);
    uint64_t cb = cell_bound(t);
    uint64_t cbtco = cell_bound_tco(t);
    CHECK(cbtco <= cb);
    RunOptions std_opts;
    RunResult rs = run_term(t, in, std_opts);
    CHECK(rs.stats.peak_cells <= cb);
    RunOptions tco_opts;
    tco_opts.tco = true;
    RunResult rt = run_term(t, in, tco_opts);
    CHECK(rt.stats.peak_cells <= cbtco);
  }
}

TEST_CASE("bounds are tight on the worked adder examples") {
  TypedDag fa = gen_full_adder(32);
  Value in = Value::pair(
      Value::pair(repr_word(0x12345678, 32), repr_word(0x9abcdef0, 32)),
      Value::bit(true));
  RunOptions std_opts;
  RunResult rs = run_term(fa, in, std_opts);
  CHECK(rs.stats.peak_cells == cell_bound(fa));  // 339
  CHECK(cell_bound(fa) == 339);
  RunOptions tco_opts;
  tco_opts.tco = true;
  RunResult rt = run_term(fa, in, tco_opts);
  CHECK(rt.stats.peak_cells == cell_bound_tco(fa));  // 222
  CHECK(cell_bound_tco(fa) == 222);
}

TEST_CASE("bounds also cover witness and assertion programs") {
  Digest256 h;
  h.bytes.fill(0x11);
  TermBuilder b;
  uint32_t w = b.witness(Value::right(repr_word(0xbeef, 16)), ty_unit(),
                         ty_sum(ty_unit(), ty_word(16)));
  uint32_t gathered = b.pair(w, b.unit(ty_unit()));
  uint32_t body = b.take(b.iden(ty_word(16)), ty_unit());
  uint32_t root = b.comp(gathered, b.assertr(h, body, ty_unit()));
  TypedDag t = b.extract_typed(root);
  RunOptions opts;
  RunResult r = run_term(t, Value::unit(), opts);
  REQUIRE(!r.outcome.is_bottom());
  CHECK(*r.outcome.value == repr_word(0xbeef, 16));
  CHECK(r.stats.peak_cells <= cell_bound(t));
  RunOptions tco;
  tco.tco = true;
  RunResult rt = run_term(t, Value::unit(), tco);
  CHECK(rt.stats.peak_cells <= cell_bound_tco(t));
}

TEST_CASE("the analysis report bundles all statics consistently") {
  TypedDag fa = gen_full_adder(4);
  AnalysisReport rep = analyze(fa);
  CHECK(rep.input_bits == bit_size(fa.root_in()));
  CHECK(rep.input_bits == 9);
  CHECK(rep.output_bits == 5);
  CHECK(rep.cb == cell_bound(fa));
  CHECK(rep.cb_tco == cell_bound_tco(fa));
  CHECK(rep.tco_pair == tco_cells(fa));
  CHECK(rep.root == merkle_root(fa.dag));
  NodeCounts c = node_counts(fa.dag, &fa);
  CHECK(rep.counts.total_tree_nodes == c.total_tree_nodes);
  CHECK(rep.counts.unique_dag_nodes == c.unique_dag_nodes);
  CHECK(rep.counts.unique_typed_nodes == c.unique_typed_nodes);
}
