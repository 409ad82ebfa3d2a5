#include "support/corpus.hpp"

#include "simplicity/stdlib.hpp"

namespace simplicity::testing {

namespace {

unsigned pick(std::mt19937_64& rng, unsigned n) {
  return static_cast<unsigned>(rng() % n);
}

}  // namespace

TyRef random_ty(std::mt19937_64& rng, unsigned depth, unsigned max_word_bits) {
  if (depth == 0 || pick(rng, 3) == 0) {
    // Leaf: unit or a word of width 1..max_word_bits (power of two).
    unsigned choice = pick(rng, 6);
    if (choice == 0) return ty_unit();
    unsigned exponents = 1;
    for (unsigned w = 1; (w << 1) <= max_word_bits; w <<= 1) ++exponents;
    unsigned bits = 1u << pick(rng, exponents);
    return ty_word(bits);
  }
  TyRef l = random_ty(rng, depth - 1, max_word_bits);
  TyRef r = random_ty(rng, depth - 1, max_word_bits);
  return pick(rng, 2) == 0 ? ty_sum(l, r) : ty_prod(l, r);
}

Value random_value_of(TyRef t, std::mt19937_64& rng) {
  const TyNode& n = ty(t);
  switch (n.kind) {
    case TyKind::Unit:
      return Value::unit();
    case TyKind::Sum:
      return pick(rng, 2) == 0 ? Value::left(random_value_of(n.left, rng))
                               : Value::right(random_value_of(n.right, rng));
    case TyKind::Prod:
      return Value::pair(random_value_of(n.left, rng),
                         random_value_of(n.right, rng));
  }
  return Value::unit();
}

uint32_t random_core_node(TermBuilder& b, std::mt19937_64& rng, TyRef a,
                          TyRef ty_b, unsigned depth) {
  const TyNode& na = ty(a);
  const TyNode& nb = ty(ty_b);

  // Constructions applicable at (a |- ty_b); weighted by enumeration then
  // picked uniformly among the applicable ones.
  enum Op { OpIden, OpUnit, OpConst, OpInjl, OpInjr, OpPair, OpComp, OpTake,
            OpDrop, OpCase };
  std::vector<Op> ops;
  if (a == ty_b) ops.push_back(OpIden);
  if (nb.kind == TyKind::Unit) ops.push_back(OpUnit);
  ops.push_back(OpConst);
  if (depth > 0) {
    if (nb.kind == TyKind::Sum) {
      ops.push_back(OpInjl);
      ops.push_back(OpInjr);
    }
    if (nb.kind == TyKind::Prod) {
      ops.push_back(OpPair);
      ops.push_back(OpPair);  // favour products: they widen frames
    }
    ops.push_back(OpComp);
    ops.push_back(OpComp);
    if (na.kind == TyKind::Prod) {
      ops.push_back(OpTake);
      ops.push_back(OpDrop);
      if (ty(na.left).kind == TyKind::Sum) {
        ops.push_back(OpCase);
        ops.push_back(OpCase);  // favour branching: it exercises read moves
      }
    }
  }

  switch (ops[pick(rng, static_cast<unsigned>(ops.size()))]) {
    case OpIden:
      return b.iden(a);
    case OpUnit:
      return b.unit(a);
    case OpConst:
      return build_const_value(b, a, random_value_of(ty_b, rng), ty_b);
    case OpInjl:
      return b.injl(random_core_node(b, rng, a, nb.left, depth - 1), nb.right);
    case OpInjr:
      return b.injr(random_core_node(b, rng, a, nb.right, depth - 1), nb.left);
    case OpPair: {
      uint32_t s = random_core_node(b, rng, a, nb.left, depth - 1);
      uint32_t t = random_core_node(b, rng, a, nb.right, depth - 1);
      return b.pair(s, t);
    }
    case OpComp: {
      TyRef mid = random_ty(rng, std::min(depth - 1, 3u), 16);
      uint32_t s = random_core_node(b, rng, a, mid, depth - 1);
      uint32_t t = random_core_node(b, rng, mid, ty_b, depth - 1);
      return b.comp(s, t);
    }
    case OpTake:
      return b.take(random_core_node(b, rng, na.left, ty_b, depth - 1),
                    na.right);
    case OpDrop:
      return b.drop_(random_core_node(b, rng, na.right, ty_b, depth - 1),
                     na.left);
    case OpCase: {
      const TyNode& sum = ty(na.left);
      TyRef c = na.right;
      uint32_t s =
          random_core_node(b, rng, ty_prod(sum.left, c), ty_b, depth - 1);
      uint32_t t =
          random_core_node(b, rng, ty_prod(sum.right, c), ty_b, depth - 1);
      return b.case_(s, t);
    }
  }
  return b.unit(a);
}

TypedDag random_core_term(std::mt19937_64& rng, unsigned depth,
                          unsigned max_word_bits) {
  TermBuilder b;
  TyRef a = random_ty(rng, 2, max_word_bits);
  TyRef out = random_ty(rng, 2, max_word_bits);
  uint32_t root = random_core_node(b, rng, a, out, depth);
  return b.extract_typed(root);
}

}  // namespace simplicity::testing
