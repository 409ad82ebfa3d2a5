#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "simplicity/errors.hpp"
#include "simplicity/eval.hpp"
#include "simplicity/merkle.hpp"
#include "simplicity/stdlib.hpp"
#include "simplicity/text.hpp"
#include "support/corpus.hpp"
#include "support/sha256_ref.hpp"

using namespace simplicity;
namespace st = simplicity::testing;

namespace {

TypedDag typed_of(const std::string& text) {
  return infer_types(parse_program(text));
}

Value run_core(const std::string& text, const std::string& input) {
  return eval_core(typed_of(text), parse_value(input));
}

}  // namespace

TEST_CASE("core combinator semantics on hand-checked cases") {
  // Parsed programs get principal (unit-filled) types, so cases that need a
  // richer input type are built directly at that type.
  TermBuilder b;
  TyRef two = ty_bit();
  // iden: identity at any type.
  TyRef mixed = ty_prod(two, ty_prod(ty_unit(), ty_unit()));
  Value rich = parse_value("((L u), (u, u))");
  CHECK(eval_core(b.extract_typed(b.iden(mixed)), rich) == rich);
  // unit: constant unit.
  CHECK(eval_core(b.extract_typed(b.unit(ty_prod(two, ty_unit()))),
                  parse_value("((R u), u)")) == Value::unit());
  // injl / injr wrap the result.
  CHECK(run_core("(injl iden)", "u") == Value::left(Value::unit()));
  CHECK(run_core("(injr unit)", "u") == Value::right(Value::unit()));
  // pair runs both sides on the same input.
  CHECK(run_core("(pair iden (injl iden))", "u") ==
        parse_value("(u, (L u))"));
  // take / drop project.
  CHECK(eval_core(b.extract_typed(b.take(b.iden(two), two)),
                  parse_value("((L u), (R u))")) == parse_value("(L u)"));
  CHECK(eval_core(b.extract_typed(b.drop_(b.iden(two), two)),
                  parse_value("((L u), (R u))")) == parse_value("(R u)"));
  // case dispatches on the first component's tag.
  uint32_t arm = b.take(b.iden(two), ty_unit());
  TypedDag sel = b.extract_typed(b.case_(arm, arm));
  CHECK(eval_core(sel, parse_value("((L (L u)), u)")) == parse_value("(L u)"));
  CHECK(eval_core(sel, parse_value("((R (R u)), u)")) == parse_value("(R u)"));
  // comp pipes output to input (case needs a product scrutinee, so pair the
  // injection with unit).
  CHECK(run_core("(comp (pair (injl iden) unit) "
                 "(case (injr unit) (injl unit)))",
                 "u") == parse_value("(R u)"));
}

TEST_CASE("input type mismatches are static errors") {
  TypedDag flip = gen_flip();
  CHECK_THROWS_AS(eval_core(flip, Value::unit()), TypeError);
  CHECK_THROWS_AS(eval_ext(flip, Value::unit(), TxEnv{}), TypeError);
}

TEST_CASE("core evaluator rejects extended nodes") {
  CHECK_THROWS_AS(eval_core(typed_of("(witness u)"), Value::unit()),
                  TypeError);
  CHECK_THROWS_AS(eval_core(typed_of("fail"), Value::unit()), TypeError);
}

TEST_CASE("half adder truth table") {
  TypedDag ha = gen_half_adder();
  auto bits = [](bool x, bool y) {
    return Value::pair(Value::bit(x), Value::bit(y));
  };
  // (carry, sum) = x + y.
  CHECK(eval_core(ha, bits(false, false)) == bits(false, false));
  CHECK(eval_core(ha, bits(false, true)) == bits(false, true));
  CHECK(eval_core(ha, bits(true, false)) == bits(false, true));
  CHECK(eval_core(ha, bits(true, true)) == bits(true, false));
}

TEST_CASE("four-bit full adder on 9 + 8 + 1") {
  TypedDag fa = gen_full_adder(4);
  Value in = Value::pair(Value::pair(repr_word(9, 4), repr_word(8, 4)),
                         Value::bit(true));
  Value out = eval_core(fa, in);
  // 9 + 8 + 1 = 18 = 1 * 16 + 2.
  CHECK(out.first().kind() == ValueKind::Right);  // carry set
  CHECK(interp_word(out.second(), 4) == 2);
}

TEST_CASE("two-bit equality exhaustively") {
  TypedDag eq = gen_eq(2);
  for (uint64_t x = 0; x < 4; ++x)
    for (uint64_t y = 0; y < 4; ++y) {
      Value out =
          eval_core(eq, Value::pair(repr_word(x, 2), repr_word(y, 2)));
      CHECK(out.as_bit() == (x == y));
    }
}

TEST_CASE("lifting: extended evaluation of core terms is never bottom") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 300; ++rep) {
    TypedDag t = st::random_core_term(rng, 7, 8);
    Value in = st::random_value_of(t.root_in(), rng);
    Value direct = eval_core(t, in);
    TxEnv env;
    env.bytes.resize(rng() % 16);
    for (auto& x : env.bytes) x = uint8_t(rng());
    EvalOutcome lifted = eval_ext(t, in, env);
    REQUIRE(!lifted.is_bottom());
    CHECK(*lifted.value == direct);
    CHECK(value_has_type(direct, t.root_out()));
  }
}

TEST_CASE("fail and failing assertions denote bottom") {
  TxEnv env;
  CHECK(eval_ext(typed_of("fail"), Value::unit(), env).is_bottom());

  // assertl succeeds on left, bottoms on right (and vice versa).
  std::string h(64, '0');
  TypedDag al = typed_of("(assertl (take iden) #" + h + ")");
  CHECK(*eval_ext(al, parse_value("((L u), u)"), env).value == Value::unit());
  CHECK(eval_ext(al, parse_value("((R u), u)"), env).is_bottom());

  TypedDag ar = typed_of("(assertr #" + h + " (take iden))");
  CHECK(*eval_ext(ar, parse_value("((R u), u)"), env).value == Value::unit());
  CHECK(eval_ext(ar, parse_value("((L u), u)"), env).is_bottom());
}

TEST_CASE("bottom propagates through every combinator position") {
  TxEnv env;
  // Through comp (either side), pair (either side), case arms, take/drop.
  CHECK(eval_ext(typed_of("(comp fail iden)"), Value::unit(), env)
            .is_bottom());
  CHECK(eval_ext(typed_of("(comp unit fail)"), Value::unit(), env)
            .is_bottom());
  CHECK(eval_ext(typed_of("(pair unit fail)"), Value::unit(), env)
            .is_bottom());
  CHECK(eval_ext(typed_of("(pair fail unit)"), Value::unit(), env)
            .is_bottom());
  CHECK(eval_ext(typed_of("(take fail)"), parse_value("(u, u)"), env)
            .is_bottom());
  CHECK(eval_ext(typed_of("(drop fail)"), parse_value("(u, u)"), env)
            .is_bottom());
  // Only the selected case arm runs: left input avoids the failing right arm.
  TypedDag c = typed_of("(case (take iden) (take fail))");
  CHECK(!eval_ext(c, parse_value("((L u), u)"), env).is_bottom());
  CHECK(eval_ext(c, parse_value("((R u), u)"), env).is_bottom());
}

TEST_CASE("witness nodes denote their payload") {
  TxEnv env;
  TypedDag w = typed_of("(witness ((L u), 0xa:4))");
  EvalOutcome out = eval_ext(w, Value::unit(), env);
  REQUIRE(!out.is_bottom());
  CHECK(*out.value == parse_value("((L u), 0xa:4)"));

  // A placeholder witness cannot be evaluated.
  CHECK_THROWS_AS(eval_ext(typed_of("(witness _)"), Value::unit(), env),
                  TypeError);
}

TEST_CASE("environment independence without sighash") {
  // For sighash-free programs the outcome cannot depend on the environment.
  std::mt19937_64 rng(37);
  std::string h(64, 'a');
  TypedDag t = typed_of("(comp (pair (witness (R u)) iden) (assertr #" + h +
                        " (drop iden)))");
  TxEnv e1, e2;
  e2.bytes = {1, 2, 3, 4};
  Value in = Value::unit();
  CHECK(eval_ext(t, in, e1) == eval_ext(t, in, e2));
  for (int rep = 0; rep < 100; ++rep) {
    TypedDag r = st::random_core_term(rng, 6, 4);
    Value v = st::random_value_of(r.root_in(), rng);
    CHECK(eval_ext(r, v, e1) == eval_ext(r, v, e2));
  }
}

TEST_CASE("sighash digests the mode byte and transaction") {
  auto mode = [](int firstIdx, bool secondBit) {
    Value first = firstIdx == 0
                      ? Value::left(Value::unit())
                      : Value::right(Value::bit(firstIdx == 2));
    return Value::pair(first, Value::bit(secondBit));
  };
  TxEnv empty;
  // Mode 0 over the empty transaction: SHA-256 of the single byte 0x00.
  Value d0 = make_sighash(mode(0, false), empty);
  auto want0 = st::sha256_ref({0x00});
  CHECK(value_to_bytes(d0, 256) ==
        std::vector<uint8_t>(want0.begin(), want0.end()));

  // All six mode bytes, with a nonempty transaction.
  TxEnv env;
  env.bytes = {0xde, 0xad, 0xbe, 0xef};
  for (int f = 0; f < 3; ++f)
    for (int s = 0; s < 2; ++s) {
      std::vector<uint8_t> msg{uint8_t(f + 3 * s)};
      msg.insert(msg.end(), env.bytes.begin(), env.bytes.end());
      auto want = st::sha256_ref(msg);
      Value got = make_sighash(mode(f, s != 0), env);
      CHECK(value_to_bytes(got, 256) ==
            std::vector<uint8_t>(want.begin(), want.end()));
    }
}

TEST_CASE("sighash program output matches make_sighash") {
  TermDag d = parse_program("(comp (witness _ :: ((1 + (1 + 1)) * (1 + 1))) sighash)");
  Value mode = Value::pair(Value::right(Value::bit(true)), Value::bit(false));
  TermDag filled = substitute_witnesses(d, {mode});
  TypedDag t = infer_types(filled);
  TxEnv env;
  env.bytes = {9, 9, 9};
  EvalOutcome out = eval_ext(t, Value::unit(), env);
  REQUIRE(!out.is_bottom());
  CHECK(*out.value == make_sighash(mode, env));
}

TEST_CASE("branch usage tracing marks executed arms") {
  // One case node, run once on a left input: only bit 0 set at that node.
  TypedDag t = typed_of("(case (take iden) (take iden))");
  std::vector<uint8_t> use;
  TxEnv env;
  eval_ext_traced(t, parse_value("((L u), u)"), env, use);
  REQUIRE(use.size() == t.dag.nodes.size());
  CHECK(use[t.dag.root] == 1);  // left arm only
  eval_ext_traced(t, parse_value("((R u), u)"), env, use);
  CHECK(use[t.dag.root] == 2);  // usage is per evaluation, not cumulative
}
