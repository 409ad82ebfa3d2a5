#pragma once

#include <cstdint>
#include <string>

namespace simplicity {

// Simplicity types: the unit type, sums, and products. No recursion, so every
// type is a finite tree; structurally equal types are interned to the same id
// in a process-global arena and compared by id.
using TyRef = uint32_t;

enum class TyKind : uint8_t { Unit, Sum, Prod };

struct TyNode {
  TyKind kind;
  TyRef left;    // valid for Sum/Prod
  TyRef right;   // valid for Sum/Prod
  uint64_t bits;   // bitSize, saturating at kSizeCap
  uint64_t count;  // number of inhabitants, saturating at kCountCap
  uint32_t depth;  // height of the type tree (Unit = 0)
};

// Saturation caps. Sizes beyond kSizeCap cells can never be materialized, and
// counts are only consulted for enumeration guards far below kCountCap.
inline constexpr uint64_t kSizeCap = uint64_t(1) << 62;
inline constexpr uint64_t kCountCap = uint64_t(1) << 62;

TyRef ty_unit();
TyRef ty_sum(TyRef left, TyRef right);
TyRef ty_prod(TyRef left, TyRef right);

// The bit type 2 = 1 + 1, with false = left(unit), true = right(unit).
TyRef ty_bit();

// Word type 2^bits for a power-of-two bits >= 1: nested product of bits.
// ty_word(1) == ty_bit(). Throws OutOfRange for zero or non-power-of-two.
TyRef ty_word(unsigned bits);

// Signature-hash mode type (1 + 2) x 2.
TyRef ty_sighash_mode();

const TyNode& ty(TyRef t);

inline uint64_t bit_size(TyRef t) { return ty(t).bits; }
inline uint64_t value_count(TyRef t) { return ty(t).count; }

// Padding of the left/right summand inside a sum's payload region.
uint64_t pad_l(TyRef a, TyRef b);
uint64_t pad_r(TyRef a, TyRef b);

// Renders like the text format: "1", "(1 + 1)", "((1 + 1) * 1)", with word
// abbreviations 2^n for powers of two.
std::string render_ty(TyRef t);

}  // namespace simplicity
