#include "simplicity/lookup.hpp"

#include "simplicity/errors.hpp"
#include "simplicity/stdlib.hpp"

namespace simplicity {

namespace {

using Fn = std::function<Value(const Value&)>;

// Builds t : a |- out with eval(t, v) = f(v), by case analysis on `a`.
uint32_t build_table(TermBuilder& b, TyRef a, TyRef out, const Fn& f) {
  const TyNode& t = ty(a);
  TyRef U = ty_unit();
  switch (t.kind) {
    case TyKind::Unit:
      return build_const_value(b, U, f(Value::unit()), out);
    case TyKind::Sum: {
      // a = L + R: scrutinize via (iden, <>) so case sees (L + R) x 1.
      uint32_t tl = build_table(b, t.left, out, [&f](const Value& v) {
        return f(Value::left(v));
      });
      uint32_t tr = build_table(b, t.right, out, [&f](const Value& v) {
        return f(Value::right(v));
      });
      uint32_t scrut = b.pair(b.iden(a), b.unit(a));
      return b.comp(scrut, b.case_(b.take(tl, U), b.take(tr, U)));
    }
    case TyKind::Prod: {
      const TyNode& c = ty(t.left);
      switch (c.kind) {
        case TyKind::Unit: {
          // 1 x D: discard the unit and tabulate D.
          uint32_t td = build_table(b, t.right, out, [&f](const Value& v) {
            return f(Value::pair(Value::unit(), v));
          });
          return b.drop_(td, U);
        }
        case TyKind::Sum: {
          // (C1 + C2) x D is already in case shape.
          TyRef l_in = ty_prod(c.left, t.right);
          TyRef r_in = ty_prod(c.right, t.right);
          uint32_t tl = build_table(b, l_in, out, [&f](const Value& v) {
            return f(Value::pair(Value::left(v.first()), v.second()));
          });
          uint32_t tr = build_table(b, r_in, out, [&f](const Value& v) {
            return f(Value::pair(Value::right(v.first()), v.second()));
          });
          return b.case_(tl, tr);
        }
        case TyKind::Prod: {
          // (C1 x C2) x D: reassociate to C1 x (C2 x D) and recurse.
          TyRef in2 = ty_prod(c.left, ty_prod(c.right, t.right));
          uint32_t inner = build_table(b, in2, out, [&f](const Value& v) {
            return f(Value::pair(
                Value::pair(v.first(), v.second().first()),
                v.second().second()));
          });
          uint32_t i1 = b.iden(c.left);
          uint32_t i2 = b.iden(c.right);
          uint32_t i3 = b.iden(t.right);
          uint32_t assoc = b.pair(
              b.take(b.take(i1, c.right), t.right),
              b.pair(b.take(b.drop_(i2, c.left), t.right),
                     b.drop_(i3, t.left)));
          return b.comp(assoc, inner);
        }
      }
      throw Error("type of unknown kind");
    }
  }
  throw Error("type of unknown kind");
}

}  // namespace

TermDag compile_lookup_table(const Fn& table, TyRef a, TyRef b_out) {
  if (value_count(a) > (uint64_t{1} << 16))
    throw TooLarge("lookup-table compilation limited to domains of at most " +
                   std::to_string(uint64_t{1} << 16) + " values");
  TermBuilder b;
  return b.extract(build_table(b, a, b_out, table));
}

}  // namespace simplicity
