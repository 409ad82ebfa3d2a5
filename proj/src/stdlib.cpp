#include "simplicity/stdlib.hpp"

#include <array>
#include <cstring>
#include <string>
#include <vector>

#include "simplicity/errors.hpp"
#include "simplicity/ty.hpp"

namespace simplicity {

namespace {

void check_width(unsigned bits, unsigned max_bits, const char* what) {
  if (bits == 0 || bits > max_bits || (bits & (bits - 1)) != 0)
    throw OutOfRange(std::string(what) + ": word width must be a power of two in [1, " +
                     std::to_string(max_bits) + "], got " + std::to_string(bits));
}

// Projection of the component at `path` out of the environment type:
// a take/drop chain around iden. 0 = first component, 1 = second.
uint32_t proj(TermBuilder& b, TyRef env, const std::vector<int>& path) {
  std::vector<TyRef> tys{env};
  for (int step : path) {
    const TyNode& t = ty(tys.back());
    if (t.kind != TyKind::Prod)
      throw Error("projection path descends into a non-product type");
    tys.push_back(step == 0 ? t.left : t.right);
  }
  uint32_t id = b.iden(tys.back());
  for (size_t i = path.size(); i-- > 0;) {
    const TyNode& t = ty(tys[i]);
    id = path[i] == 0 ? b.take(id, t.right) : b.drop_(id, t.left);
  }
  return id;
}

uint32_t full_adder_1(TermBuilder& b) {
  TyRef B = ty_bit(), U = ty_unit();
  TyRef BB = ty_prod(B, B);
  uint32_t add = build_half_adder(b);
  // ((x,y),z) -> ((c1,s1),z)
  uint32_t s1 = b.pair(b.take(add, B), b.drop_(b.iden(B), BB));
  // ((c1,s1),z) -> (c1,(c2,s2))
  uint32_t c1 = b.take(b.take(b.iden(B), B), B);
  uint32_t s1z = b.pair(b.take(b.drop_(b.iden(B), B), B),
                        b.drop_(b.iden(B), BB));
  uint32_t s2 = b.pair(c1, b.comp(s1z, add));
  // (c1,(c2,s2)) -> (c1 or c2, s2)
  uint32_t carry = b.case_(b.drop_(b.take(b.iden(B), B), U),
                           b.injr(b.unit(ty_prod(U, BB)), U));
  uint32_t sum = b.drop_(b.drop_(b.iden(B), B), B);
  return b.comp(s1, b.comp(s2, b.pair(carry, sum)));
}

// Zero-extends a 1-bit term over `env` into an n-bit word term.
uint32_t zext_bit(TermBuilder& b, TyRef env, uint32_t bit, unsigned n) {
  if (n == 1) return bit;
  return b.pair(build_const_word(b, env, n / 2, 0), zext_bit(b, env, bit, n / 2));
}

// ---- SHA-256 interior ----------------------------------------------------

constexpr std::array<uint32_t, 64> kShaRound = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
    0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
    0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
    0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
    0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
    0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
    0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
    0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2,
};

// MSB-first bit index -> take/drop path in a balanced 2^bits word.
std::vector<int> bit_path(unsigned bits, unsigned idx) {
  std::vector<int> path;
  for (unsigned half = bits / 2; half >= 1; half /= 2) {
    if (idx < half) {
      path.push_back(0);
    } else {
      path.push_back(1);
      idx -= half;
    }
    if (half == 1) break;
  }
  return path;
}

// 2^bits |- 2^bits wiring permutation/selection: output bit j (MSB-first) is
// source bit map[j], or constant zero when map[j] < 0.
uint32_t rearrange_rec(TermBuilder& b, TyRef src, unsigned bits,
                       const std::vector<int>& map, unsigned lo, unsigned n) {
  if (n == 1) {
    int s = map[lo];
    if (s < 0) return b.injl(b.unit(src), ty_unit());
    return proj(b, src, bit_path(bits, static_cast<unsigned>(s)));
  }
  return b.pair(rearrange_rec(b, src, bits, map, lo, n / 2),
                rearrange_rec(b, src, bits, map, lo + n / 2, n / 2));
}

uint32_t build_rotr(TermBuilder& b, unsigned bits, unsigned r) {
  std::vector<int> map(bits);
  for (unsigned j = 0; j < bits; ++j)
    map[j] = static_cast<int>((j + bits - r % bits) % bits);
  return rearrange_rec(b, ty_word(bits), bits, map, 0, bits);
}

uint32_t build_shr(TermBuilder& b, unsigned bits, unsigned r) {
  std::vector<int> map(bits);
  for (unsigned j = 0; j < bits; ++j)
    map[j] = j < r ? -1 : static_cast<int>(j - r);
  return rearrange_rec(b, ty_word(bits), bits, map, 0, bits);
}

// xor of three terms sharing one input type.
uint32_t xor3(TermBuilder& b, unsigned bits, uint32_t t1, uint32_t t2,
              uint32_t t3) {
  uint32_t x = build_xor(b, bits);
  return b.comp(b.pair(t1, b.comp(b.pair(t2, t3), x)), x);
}

// The four SHA-256 mixing functions, as 2^32 |- 2^32 terms.
uint32_t big_sigma0(TermBuilder& b) {
  return xor3(b, 32, build_rotr(b, 32, 2), build_rotr(b, 32, 13),
              build_rotr(b, 32, 22));
}
uint32_t big_sigma1(TermBuilder& b) {
  return xor3(b, 32, build_rotr(b, 32, 6), build_rotr(b, 32, 11),
              build_rotr(b, 32, 25));
}
uint32_t small_sigma0(TermBuilder& b) {
  return xor3(b, 32, build_rotr(b, 32, 7), build_rotr(b, 32, 18),
              build_shr(b, 32, 3));
}
uint32_t small_sigma1(TermBuilder& b) {
  return xor3(b, 32, build_rotr(b, 32, 17), build_rotr(b, 32, 19),
              build_shr(b, 32, 10));
}

struct ShaParts {
  TermBuilder& b;
  TyRef w32, state, window, env;  // env = state256 x (state256 x window512)
  uint32_t add_mod;               // 2^32 x 2^32 |- 2^32
  uint32_t bs0, bs1, ss0, ss1;    // mixing functions over 2^32
  uint32_t and1, or1;

  explicit ShaParts(TermBuilder& builder)
      : b(builder),
        w32(ty_word(32)),
        state(ty_word(256)),
        window(ty_word(512)),
        env(ty_prod(state, ty_prod(state, window))),
        add_mod(b.comp(build_adder(b, 32), b.drop_(b.iden(w32), ty_bit()))),
        bs0(big_sigma0(b)),
        bs1(big_sigma1(b)),
        ss0(small_sigma0(b)),
        ss1(small_sigma1(b)),
        and1(build_and(b, 1)),
        or1(build_or(b, 1)) {}

  // x + y mod 2^32 for terms over a common environment.
  uint32_t addm(uint32_t x, uint32_t y) {
    return b.comp(b.pair(x, y), add_mod);
  }
  uint32_t xorw(uint32_t x, uint32_t y) {
    return b.comp(b.pair(x, y), build_xor(b, 32));
  }
  uint32_t andw(uint32_t x, uint32_t y) {
    return b.comp(b.pair(x, y), build_and(b, 32));
  }

  // Ch(e,f,g) = g xor (e and (f xor g))
  uint32_t ch(uint32_t e, uint32_t f, uint32_t g) {
    return xorw(g, andw(e, xorw(f, g)));
  }
  // Maj(a,b,c) = (a and b) xor (c and (a xor b))
  uint32_t maj(uint32_t x, uint32_t y, uint32_t z) {
    return xorw(andw(x, y), andw(z, xorw(x, y)));
  }

  // Path of the i-th 32-bit leaf in a balanced 8-word (2^256) tree.
  static std::vector<int> p8(unsigned i) {
    return {static_cast<int>((i >> 2) & 1), static_cast<int>((i >> 1) & 1),
            static_cast<int>(i & 1)};
  }
  // Path of the i-th 32-bit leaf in a balanced 16-word (2^512) tree.
  static std::vector<int> p16(unsigned i) {
    return {static_cast<int>((i >> 3) & 1), static_cast<int>((i >> 2) & 1),
            static_cast<int>((i >> 1) & 1), static_cast<int>(i & 1)};
  }

  // One round, env |- env. `w_index` is the window slot holding the current
  // schedule word; `slide` selects whether the window shifts and computes
  // the next schedule word (rounds that still need new schedule words).
  uint32_t round(unsigned t, unsigned w_index, bool slide) {
    // Working-variable paths within env. Layout: (H, (S, W)).
    std::vector<int> S{1, 0}, Wn{1, 1};
    auto stv = [&](unsigned i) { return cat(S, p8(i)); };
    auto wv = [&](unsigned i) { return cat(Wn, p16(i)); };

    uint32_t e = proj(b, env, stv(4)), f = proj(b, env, stv(5));
    uint32_t g = proj(b, env, stv(6)), h = proj(b, env, stv(7));
    uint32_t w0 = proj(b, env, wv(w_index));
    uint32_t k = build_const_word(b, env, 32, kShaRound[t]);
    // T1 = h + Sigma1(e) + Ch(e,f,g) + K_t + W_t
    uint32_t t1 = addm(addm(addm(addm(h, b.comp(e, bs1)), ch(e, f, g)), k), w0);
    uint32_t stage_a = b.pair(t1, b.iden(env));  // env |- 2^32 x env

    // Stage B operates on F = 2^32 x env and is shared across rounds.
    return b.comp(stage_a, stage_b(w_index, slide));
  }

  static std::vector<int> cat(std::vector<int> a, std::vector<int> c) {
    a.insert(a.end(), c.begin(), c.end());
    return a;
  }

  // F = 2^32 x env |- env, t-independent (memoized by the builder).
  uint32_t stage_b(unsigned w_index, bool slide) {
    TyRef F = ty_prod(w32, env);
    std::vector<int> T1{0}, H{1, 0}, S{1, 1, 0}, Wn{1, 1, 1};
    auto stv = [&](unsigned i) { return cat(S, p8(i)); };
    auto wv = [&](unsigned i) { return cat(Wn, p16(i)); };
    auto pv = [&](const std::vector<int>& p) { return proj(b, F, p); };

    uint32_t t1 = pv(T1);
    uint32_t a = pv(stv(0)), bb = pv(stv(1)), c = pv(stv(2)), d = pv(stv(3));
    uint32_t e = pv(stv(4)), f = pv(stv(5)), g = pv(stv(6));
    // T2 = Sigma0(a) + Maj(a,b,c)
    uint32_t t2 = addm(b.comp(a, bs0), maj(a, bb, c));
    uint32_t a2 = addm(t1, t2);
    uint32_t e2 = addm(d, t1);
    uint32_t s2 = b.pair(b.pair(b.pair(a2, a), b.pair(bb, c)),
                         b.pair(b.pair(e2, e), b.pair(f, g)));
    uint32_t w2;
    if (slide) {
      // W'[i] = W[i+1] for i < 15; W'[15] = s1(W[14]) + W[9] + s0(W[1]) + W[0]
      uint32_t wnew = addm(addm(addm(b.comp(pv(wv(14)), ss1), pv(wv(9))),
                                b.comp(pv(wv(1)), ss0)),
                           pv(wv(0)));
      auto wslot = [&](unsigned i) { return i < 15 ? pv(wv(i + 1)) : wnew; };
      auto quad = [&](unsigned base) {
        return b.pair(b.pair(wslot(base), wslot(base + 1)),
                      b.pair(wslot(base + 2), wslot(base + 3)));
      };
      w2 = b.pair(b.pair(quad(0), quad(4)), b.pair(quad(8), quad(12)));
    } else {
      (void)w_index;
      w2 = pv(Wn);  // window kept as is
    }
    return b.pair(pv(H), b.pair(s2, w2));
  }
};

}  // namespace

// ---- public builders -------------------------------------------------------

uint32_t build_flip(TermBuilder& b) {
  TyRef B = ty_bit(), U = ty_unit();
  uint32_t st = b.pair(b.iden(B), b.unit(B));
  TyRef UU = ty_prod(U, U);
  return b.comp(st, b.case_(b.injr(b.unit(UU), U), b.injl(b.unit(UU), U)));
}

uint32_t build_half_adder(TermBuilder& b) {
  TyRef B = ty_bit(), U = ty_unit();
  uint32_t zero = b.injl(b.unit(B), U);
  uint32_t l = b.drop_(b.pair(zero, b.iden(B)), U);
  uint32_t r = b.drop_(b.pair(b.iden(B), build_flip(b)), U);
  return b.case_(l, r);
}

uint32_t build_full_adder(TermBuilder& b, unsigned bits) {
  check_width(bits, 256, "full adder");
  if (bits == 1) return full_adder_1(b);
  unsigned h = bits / 2;
  uint32_t fan = build_full_adder(b, h);
  TyRef B = ty_bit();
  TyRef W = ty_word(h), W2 = ty_word(bits);
  TyRef W2W2 = ty_prod(W2, W2);
  TyRef WW = ty_prod(W, W);  // same type as W2
  TyRef BW = ty_prod(B, W);
  uint32_t iW = b.iden(W);
  // ((x,y),z) -> ((xh,yh), fa_h((xl,yl), z))
  uint32_t highs = b.take(
      b.pair(b.take(b.take(iW, W), W2), b.drop_(b.take(iW, W), W2)), B);
  uint32_t lows = b.take(
      b.pair(b.take(b.drop_(iW, W), W2), b.drop_(b.drop_(iW, W), W2)), B);
  uint32_t z = b.drop_(b.iden(B), W2W2);
  uint32_t stage1 = b.pair(highs, b.comp(b.pair(lows, z), fan));
  // ((xh,yh),(c_mid,s_lo)) -> (s_lo, fa_h((xh,yh), c_mid))
  uint32_t s_lo = b.drop_(b.drop_(iW, B), WW);
  uint32_t hi_args = b.pair(b.take(b.iden(WW), BW),
                            b.drop_(b.take(b.iden(B), W), WW));
  uint32_t stage2 = b.pair(s_lo, b.comp(hi_args, fan));
  // (s_lo, (c_out, s_hi)) -> (c_out, (s_hi, s_lo))
  uint32_t c_out = b.drop_(b.take(b.iden(B), W), W);
  uint32_t s_hi = b.drop_(b.drop_(iW, B), W);
  uint32_t s_lo2 = b.take(iW, BW);
  uint32_t stage3 = b.pair(c_out, b.pair(s_hi, s_lo2));
  return b.comp(stage1, b.comp(stage2, stage3));
}

uint32_t build_adder(TermBuilder& b, unsigned bits) {
  check_width(bits, 256, "adder");
  if (bits == 1) return build_half_adder(b);
  TyRef W = ty_word(bits);
  TyRef WW = ty_prod(W, W);
  uint32_t args = b.pair(b.iden(WW), b.injl(b.unit(WW), ty_unit()));
  return b.comp(args, build_full_adder(b, bits));
}

uint32_t build_subtractor(TermBuilder& b, unsigned bits) {
  check_width(bits, 256, "subtractor");
  TyRef B = ty_bit(), U = ty_unit();
  TyRef W = ty_word(bits);
  TyRef WW = ty_prod(W, W);
  // x + ~y + 1; carry-out means no borrow.
  uint32_t x = b.take(b.iden(W), W);
  uint32_t ny = b.drop_(build_not(b, bits), W);
  uint32_t one = b.injr(b.unit(WW), U);
  uint32_t added = b.comp(b.pair(b.pair(x, ny), one), build_full_adder(b, bits));
  uint32_t borrow = b.take(build_flip(b), W);
  uint32_t diff = b.drop_(b.iden(W), B);
  return b.comp(added, b.pair(borrow, diff));
}

namespace {

// Lifts a 2^h x 2^h |- 2^h operation to both halves of 2^(2h) words.
uint32_t lift_bitwise(TermBuilder& b, unsigned bits, uint32_t op_half) {
  TyRef W = ty_word(bits);
  TyRef WW = ty_prod(W, W);
  uint32_t hi = b.comp(b.pair(proj(b, WW, {0, 0}), proj(b, WW, {1, 0})), op_half);
  uint32_t lo = b.comp(b.pair(proj(b, WW, {0, 1}), proj(b, WW, {1, 1})), op_half);
  return b.pair(hi, lo);
}

}  // namespace

uint32_t build_and(TermBuilder& b, unsigned bits) {
  check_width(bits, 256, "and");
  TyRef B = ty_bit(), U = ty_unit();
  if (bits == 1) {
    TyRef UB = ty_prod(U, B);
    return b.case_(b.injl(b.unit(UB), U), b.drop_(b.iden(B), U));
  }
  return lift_bitwise(b, bits, build_and(b, bits / 2));
}

uint32_t build_or(TermBuilder& b, unsigned bits) {
  check_width(bits, 256, "or");
  TyRef B = ty_bit(), U = ty_unit();
  if (bits == 1) {
    TyRef UB = ty_prod(U, B);
    return b.case_(b.drop_(b.iden(B), U), b.injr(b.unit(UB), U));
  }
  return lift_bitwise(b, bits, build_or(b, bits / 2));
}

uint32_t build_xor(TermBuilder& b, unsigned bits) {
  check_width(bits, 256, "xor");
  TyRef B = ty_bit(), U = ty_unit();
  if (bits == 1)
    return b.case_(b.drop_(b.iden(B), U), b.drop_(build_flip(b), U));
  return lift_bitwise(b, bits, build_xor(b, bits / 2));
}

uint32_t build_not(TermBuilder& b, unsigned bits) {
  check_width(bits, 256, "not");
  if (bits == 1) return build_flip(b);
  TyRef H = ty_word(bits / 2);
  uint32_t nh = build_not(b, bits / 2);
  return b.pair(b.take(nh, H), b.drop_(nh, H));
}

uint32_t build_eq(TermBuilder& b, unsigned bits) {
  check_width(bits, 256, "eq");
  TyRef B = ty_bit(), U = ty_unit();
  if (bits == 1)
    return b.case_(b.drop_(build_flip(b), U), b.drop_(b.iden(B), U));
  TyRef W = ty_word(bits);
  TyRef WW = ty_prod(W, W);
  uint32_t eqh = build_eq(b, bits / 2);
  uint32_t hi = b.comp(b.pair(proj(b, WW, {0, 0}), proj(b, WW, {1, 0})), eqh);
  uint32_t lo = b.comp(b.pair(proj(b, WW, {0, 1}), proj(b, WW, {1, 1})), eqh);
  return b.comp(b.pair(hi, lo), build_and(b, 1));
}

uint32_t build_lt(TermBuilder& b, unsigned bits) {
  check_width(bits, 256, "lt");
  TyRef B = ty_bit(), U = ty_unit();
  if (bits == 1)
    return b.case_(b.drop_(b.iden(B), U), b.injl(b.unit(ty_prod(U, B)), U));
  TyRef W = ty_word(bits);
  TyRef WW = ty_prod(W, W);
  uint32_t lth = build_lt(b, bits / 2);
  uint32_t eqh = build_eq(b, bits / 2);
  uint32_t hi_lt = b.comp(b.pair(proj(b, WW, {0, 0}), proj(b, WW, {1, 0})), lth);
  uint32_t hi_eq = b.comp(b.pair(proj(b, WW, {0, 0}), proj(b, WW, {1, 0})), eqh);
  uint32_t lo_lt = b.comp(b.pair(proj(b, WW, {0, 1}), proj(b, WW, {1, 1})), lth);
  uint32_t tie = b.comp(b.pair(hi_eq, lo_lt), build_and(b, 1));
  return b.comp(b.pair(hi_lt, tie), build_or(b, 1));
}

uint32_t build_le(TermBuilder& b, unsigned bits) {
  check_width(bits, 256, "le");
  uint32_t lt = build_lt(b, bits);
  uint32_t eq = build_eq(b, bits);
  return b.comp(b.pair(lt, eq), build_or(b, 1));
}

uint32_t build_const_value(TermBuilder& b, TyRef env, const Value& v,
                           TyRef out) {
  const TyNode& t = ty(out);
  switch (v.kind()) {
    case ValueKind::Unit:
      if (t.kind != TyKind::Unit)
        throw Error("constant value does not inhabit the requested type");
      return b.unit(env);
    case ValueKind::Left:
      if (t.kind != TyKind::Sum)
        throw Error("constant value does not inhabit the requested type");
      return b.injl(build_const_value(b, env, v.inner(), t.left), t.right);
    case ValueKind::Right:
      if (t.kind != TyKind::Sum)
        throw Error("constant value does not inhabit the requested type");
      return b.injr(build_const_value(b, env, v.inner(), t.right), t.left);
    case ValueKind::Pair:
      if (t.kind != TyKind::Prod)
        throw Error("constant value does not inhabit the requested type");
      return b.pair(build_const_value(b, env, v.first(), t.left),
                    build_const_value(b, env, v.second(), t.right));
  }
  throw Error("constant value of unknown kind");
}

uint32_t build_const_word(TermBuilder& b, TyRef env, unsigned bits,
                          uint64_t value) {
  check_width(bits, 64, "constant word");
  return build_const_value(b, env, repr_word(value, bits), ty_word(bits));
}

uint32_t build_const_digest(TermBuilder& b, TyRef env, const Digest256& d) {
  return build_const_value(b, env, bytes_to_value(d.bytes, 256), ty_word(256));
}

uint32_t build_multiplier(TermBuilder& b, unsigned bits) {
  check_width(bits, 128, "multiplier");
  TyRef B = ty_bit(), U = ty_unit();
  if (bits == 1) {
    uint32_t zero = b.injl(b.unit(B), U);
    return b.comp(build_and(b, 1), b.pair(zero, b.iden(B)));
  }
  unsigned h = bits / 2;
  uint32_t mul_h = build_multiplier(b, h);  // 2^h x 2^h |- 2^bits
  uint32_t add_w = build_adder(b, bits);    // 2^bits x 2^bits |- 2 x 2^bits
  uint32_t or1 = build_or(b, 1);
  TyRef V = ty_word(bits);
  TyRef E0 = ty_prod(V, V);
  // ((p11,p10),(p01,p00)), p_ij = x_i * y_j (i,j: 1 = high half)
  auto prodterm = [&](int xi, int yj) {
    return b.comp(b.pair(proj(b, E0, {0, xi}), proj(b, E0, {1, yj})), mul_h);
  };
  uint32_t s1 = b.pair(b.pair(prodterm(0, 0), prodterm(0, 1)),
                       b.pair(prodterm(1, 0), prodterm(1, 1)));
  TyRef E1 = ty_prod(ty_prod(V, V), ty_prod(V, V));
  // -> ((p11,(c1,s1)),p00) with (c1,s1) = p10 + p01
  uint32_t c1s1 =
      b.comp(b.pair(proj(b, E1, {0, 1}), proj(b, E1, {1, 0})), add_w);
  uint32_t s2 =
      b.pair(b.pair(proj(b, E1, {0, 0}), c1s1), proj(b, E1, {1, 1}));
  TyRef E2 = ty_prod(ty_prod(V, ty_prod(B, V)), V);
  // -> ((p11,(c1,(c2,s2))),p00) with (c2,s2) = s1 + zext(hi(p00))
  uint32_t zext_hp00 =
      b.pair(build_const_word(b, E2, h, 0), proj(b, E2, {1, 0}));
  uint32_t c2s2 =
      b.comp(b.pair(proj(b, E2, {0, 1, 1}), zext_hp00), add_w);
  uint32_t s3 = b.pair(
      b.pair(proj(b, E2, {0, 0}), b.pair(proj(b, E2, {0, 1, 0}), c2s2)),
      proj(b, E2, {1}));
  TyRef E3 = ty_prod(ty_prod(V, ty_prod(B, ty_prod(B, V))), V);
  // high word = snd(p11 + (carry . s2_hi)); low word = (s2_lo, lo(p00)).
  // The high addition cannot carry out: p11 <= (2^h-1)^2 and the addend is
  // at most 2^h + 2^h - 2.
  uint32_t carry = b.comp(
      b.pair(proj(b, E3, {0, 1, 0}), proj(b, E3, {0, 1, 1, 0})), or1);
  uint32_t hi_arg =
      b.pair(zext_bit(b, E3, carry, h), proj(b, E3, {0, 1, 1, 1, 0}));
  uint32_t hi_sum = b.comp(b.pair(proj(b, E3, {0, 0}), hi_arg), add_w);
  uint32_t hi = b.comp(hi_sum, b.drop_(b.iden(V), B));
  uint32_t lo =
      b.pair(proj(b, E3, {0, 1, 1, 1, 1}), proj(b, E3, {1, 1}));
  uint32_t s4 = b.pair(hi, lo);
  return b.comp(s1, b.comp(s2, b.comp(s3, s4)));
}

uint32_t build_sha256_block(TermBuilder& b) {
  ShaParts sha(b);
  TyRef in = ty_prod(sha.state, sha.window);
  // (iv, block) -> (iv, (iv, block))
  uint32_t init =
      b.pair(proj(b, in, {0}), b.pair(proj(b, in, {0}), proj(b, in, {1})));
  // 64 rounds; the window slides while new schedule words are still needed
  // (through round 47), then stays put and rounds read their word directly.
  uint32_t body = 0;
  bool have_body = false;
  for (unsigned t = 64; t-- > 0;) {
    bool slide = t < 48;
    unsigned w_index = slide ? 0 : t - 48;
    uint32_t r = sha.round(t, w_index, slide);
    body = have_body ? b.comp(r, body) : r;
    have_body = true;
  }
  // Final: add the initial chaining value back in, leaf by leaf.
  auto fin_leaf = [&](unsigned i) {
    return sha.addm(proj(b, sha.env, ShaParts::cat({0}, ShaParts::p8(i))),
                    proj(b, sha.env, ShaParts::cat({1, 0}, ShaParts::p8(i))));
  };
  auto fin_quad = [&](unsigned base) {
    return b.pair(b.pair(fin_leaf(base), fin_leaf(base + 1)),
                  b.pair(fin_leaf(base + 2), fin_leaf(base + 3)));
  };
  uint32_t fin = b.pair(fin_quad(0), fin_quad(4));
  return b.comp(init, b.comp(body, fin));
}

uint32_t build_checksig(TermBuilder& b) {
  TyRef sig_t = ty_word(512), dig_t = ty_word(256);
  TyRef in = ty_prod(sig_t, ty_prod(dig_t, dig_t));  // (sig, (pub, msg))
  uint32_t sha = build_sha256_block(b);
  uint32_t computed =
      b.comp(b.pair(proj(b, in, {1, 1}), proj(b, in, {0})), sha);
  uint32_t expected = proj(b, in, {1, 0});
  return b.comp(b.pair(computed, expected), build_eq(b, 256));
}

// ---- whole programs --------------------------------------------------------

TypedDag gen_flip() {
  TermBuilder b;
  return b.extract_typed(build_flip(b));
}

TypedDag gen_half_adder() {
  TermBuilder b;
  return b.extract_typed(build_half_adder(b));
}

TypedDag gen_full_adder(unsigned bits) {
  TermBuilder b;
  return b.extract_typed(build_full_adder(b, bits));
}

TypedDag gen_adder(unsigned bits) {
  TermBuilder b;
  return b.extract_typed(build_adder(b, bits));
}

TypedDag gen_multiplier(unsigned bits) {
  TermBuilder b;
  return b.extract_typed(build_multiplier(b, bits));
}

TypedDag gen_eq(unsigned bits) {
  TermBuilder b;
  return b.extract_typed(build_eq(b, bits));
}

TypedDag gen_sha256_block() {
  TermBuilder b;
  return b.extract_typed(build_sha256_block(b));
}

TypedDag gen_checksig() {
  TermBuilder b;
  return b.extract_typed(build_checksig(b));
}

TypedDag gen_const_word(uint64_t value, unsigned bits) {
  check_width(bits, 64, "constant word");
  if (bits < 64 && (value >> bits) != 0)
    throw OutOfRange("constant " + std::to_string(value) +
                     " does not fit in " + std::to_string(bits) + " bits");
  TermBuilder b;
  return b.extract_typed(build_const_word(b, ty_unit(), bits, value));
}

namespace {

BasicVerifyDemo basic_verify_for(const Value& sig, const Value& mode) {
  TyRef sig_t = ty_word(512);
  if (!value_has_type(sig, sig_t))
    throw TypeError(TypeError::Kind::TypeMismatch, 0,
                    "signature must inhabit 2^512");
  if (!value_has_type(mode, ty_sighash_mode()))
    throw TypeError(TypeError::Kind::TypeMismatch, 0,
                    "mode must inhabit the sighash-mode type");
  TermBuilder b;
  TyRef U = ty_unit();
  TyRef dig_t = ty_word(256);
  TyRef mode_t = ty_sighash_mode();

  BasicVerifyDemo d;
  d.sig = sig;
  d.mode = mode;
  d.env = TxEnv{};
  Value msg = make_sighash(d.mode, d.env);
  std::vector<uint8_t> msg_bytes = value_to_bytes(msg, 256);
  Digest256 m;
  std::memcpy(m.bytes.data(), msg_bytes.data(), 32);
  std::vector<uint8_t> sig_bytes = value_to_bytes(d.sig, 512);
  std::array<uint8_t, 64> sig_block;
  std::copy(sig_bytes.begin(), sig_bytes.end(), sig_block.begin());
  d.pubkey = sha256_compress(m, sig_block);

  uint32_t wsig = b.witness(std::nullopt, U, sig_t);
  uint32_t pk = build_const_digest(b, U, d.pubkey);
  uint32_t wmode = b.witness(std::nullopt, U, mode_t);
  uint32_t sh = b.comp(wmode, b.sighash());
  uint32_t gathered = b.pair(wsig, b.pair(pk, sh));

  TyRef cs_in = ty_prod(sig_t, ty_prod(dig_t, dig_t));
  uint32_t checked = b.pair(build_checksig(b), b.unit(cs_in));
  TyRef uu = ty_prod(U, U);
  uint32_t guard = b.case_(b.fail(uu, U), b.unit(uu));
  uint32_t root = b.comp(gathered, b.comp(checked, guard));
  d.program = b.extract_typed(root);
  return d;
}

}  // namespace

BasicVerifyDemo gen_basic_verify() {
  return basic_verify_for(bytes_to_value(std::vector<uint8_t>(64, 0), 512),
                          Value::pair(Value::left(Value::unit()),
                                      Value::bit(false)));
}

TypedDag gen_basic_verify(const Value& sig, const Value& mode) {
  BasicVerifyDemo d = basic_verify_for(sig, mode);
  TermDag filled = d.program.dag;
  size_t slot = 0;
  for (Node& n : filled.nodes) {
    if (n.kind != NodeKind::Witness) continue;
    n.witness = (slot == 0) ? d.sig : d.mode;
    ++slot;
  }
  return infer_types(filled);
}

}  // namespace simplicity
