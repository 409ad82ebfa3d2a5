#pragma once

#include <cstdint>
#include <optional>

#include "simplicity/digest.hpp"
#include "simplicity/eval.hpp"
#include "simplicity/term.hpp"
#include "simplicity/typing.hpp"

namespace simplicity {

// In-builder constructions. Results are hash-consed node ids in `b`, so
// composite programs that use the same part twice share it physically.
// Word widths must be powers of two; the allowed range is noted per builder.

uint32_t build_flip(TermBuilder& b);        // 2 |- 2, negation
uint32_t build_half_adder(TermBuilder& b);  // 2 x 2 |- 2 x 2, (carry, sum)

// (2^n x 2^n) x 2 |- 2 x 2^n: adds two words and a carry-in; n in [1, 256].
uint32_t build_full_adder(TermBuilder& b, unsigned bits);

// 2^n x 2^n |- 2 x 2^n: (carry, sum); n in [1, 256].
uint32_t build_adder(TermBuilder& b, unsigned bits);

// 2^n x 2^n |- 2 x 2^n: (borrow, x - y mod 2^n); n in [1, 256].
uint32_t build_subtractor(TermBuilder& b, unsigned bits);

// 2^n x 2^n |- 2^(2n): full product; n in [1, 128].
uint32_t build_multiplier(TermBuilder& b, unsigned bits);

// 2^n x 2^n |- 2 comparisons; n in [1, 256].
uint32_t build_eq(TermBuilder& b, unsigned bits);
uint32_t build_lt(TermBuilder& b, unsigned bits);  // unsigned x < y
uint32_t build_le(TermBuilder& b, unsigned bits);  // unsigned x <= y

// 2^n x 2^n |- 2^n bitwise logic and 2^n |- 2^n complement; n in [1, 256].
uint32_t build_and(TermBuilder& b, unsigned bits);
uint32_t build_or(TermBuilder& b, unsigned bits);
uint32_t build_xor(TermBuilder& b, unsigned bits);
uint32_t build_not(TermBuilder& b, unsigned bits);

// env |- out constant denoting `v` (which must inhabit `out`).
uint32_t build_const_value(TermBuilder& b, TyRef env, const Value& v,
                           TyRef out);
// env |- 2^bits constant; bits in [1, 64].
uint32_t build_const_word(TermBuilder& b, TyRef env, unsigned bits,
                          uint64_t value);
// env |- 2^256 constant from a digest.
uint32_t build_const_digest(TermBuilder& b, TyRef env, const Digest256& d);

// 2^256 x 2^512 |- 2^256: the SHA-256 block compression (chaining value,
// message block) -> new chaining value.
uint32_t build_sha256_block(TermBuilder& b);

// 2^512 x (2^256 x 2^256) |- 2: toy signature check; (sig, (pubkey, msg))
// is valid iff compressing msg (as chaining value) with sig (as block)
// yields pubkey.
uint32_t build_checksig(TermBuilder& b);

// Whole programs.
TypedDag gen_flip();
TypedDag gen_half_adder();
TypedDag gen_full_adder(unsigned bits);
TypedDag gen_adder(unsigned bits);
TypedDag gen_multiplier(unsigned bits);
TypedDag gen_eq(unsigned bits);
TypedDag gen_const_word(uint64_t value, unsigned bits);  // 1 |- 2^bits
TypedDag gen_sha256_block();
TypedDag gen_checksig();

// The signature-verification demo program: 1 |- 1, two witness placeholders
// (the 512-bit signature first, then the sighash mode), a constant public
// key, and a bottom branch on verification failure. The demo values make it
// succeed: an all-zero signature, mode 0, an empty transaction, and the
// matching public key.
struct BasicVerifyDemo {
  TypedDag program;  // with witness placeholders, in order [sig, mode]
  Value sig;
  Value mode;
  Digest256 pubkey;
  TxEnv env;
};
BasicVerifyDemo gen_basic_verify();

// The same program with the witnesses filled in: the public-key constant is
// chosen so that `sig` verifies against the digest of `mode` over an empty
// transaction. sig must inhabit 2^512 and mode the sighash-mode type.
TypedDag gen_basic_verify(const Value& sig, const Value& mode);

}  // namespace simplicity
