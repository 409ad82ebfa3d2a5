#include "simplicity/value.hpp"

#include <utility>

#include "simplicity/errors.hpp"

namespace simplicity {

const Value::NodePtr& Value::unit_node() {
  static const NodePtr n =
      std::make_shared<const Node>(Node{ValueKind::Unit, nullptr, nullptr});
  return n;
}

Value Value::left(Value inner) {
  return Value(std::make_shared<const Node>(
      Node{ValueKind::Left, std::move(inner.node_), nullptr}));
}

Value Value::right(Value inner) {
  return Value(std::make_shared<const Node>(
      Node{ValueKind::Right, std::move(inner.node_), nullptr}));
}

Value Value::pair(Value first, Value second) {
  return Value(std::make_shared<const Node>(Node{
      ValueKind::Pair, std::move(first.node_), std::move(second.node_)}));
}

bool Value::operator==(const Value& o) const {
  // Iterative structural comparison; value trees can be deep.
  std::vector<std::pair<const Node*, const Node*>> work;
  work.emplace_back(node_.get(), o.node_.get());
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (x == y) continue;
    if (x->kind != y->kind) return false;
    if (x->a) work.emplace_back(x->a.get(), y->a.get());
    if (x->b) work.emplace_back(x->b.get(), y->b.get());
  }
  return true;
}

bool Value::as_bit() const {
  if (kind() == ValueKind::Left && inner().is_unit()) return false;
  if (kind() == ValueKind::Right && inner().is_unit()) return true;
  throw TypeError(TypeError::Kind::TypeMismatch, 0, "value is not a bit");
}

bool value_has_type(const Value& v, TyRef a) {
  std::vector<std::pair<Value, TyRef>> work;
  work.emplace_back(v, a);
  while (!work.empty()) {
    auto [val, t] = work.back();
    work.pop_back();
    const TyNode& n = ty(t);
    switch (val.kind()) {
      case ValueKind::Unit:
        if (n.kind != TyKind::Unit) return false;
        break;
      case ValueKind::Left:
        if (n.kind != TyKind::Sum) return false;
        work.emplace_back(val.inner(), n.left);
        break;
      case ValueKind::Right:
        if (n.kind != TyKind::Sum) return false;
        work.emplace_back(val.inner(), n.right);
        break;
      case ValueKind::Pair:
        if (n.kind != TyKind::Prod) return false;
        work.emplace_back(val.first(), n.left);
        work.emplace_back(val.second(), n.right);
        break;
    }
  }
  return true;
}

uint64_t interp_word(const Value& v, unsigned bits) {
  if (bits == 0 || bits > 64 || (bits & (bits - 1)) != 0)
    throw OutOfRange("interp_word width must be a power of two <= 64");
  if (!value_has_type(v, ty_word(bits)))
    throw TypeError(TypeError::Kind::TypeMismatch, 0,
                    "value does not inhabit 2^" + std::to_string(bits));
  // Big-endian: high half first.
  struct Item {
    Value v;
    unsigned bits;
  };
  std::vector<Item> work{{v, bits}};
  uint64_t acc = 0;
  while (!work.empty()) {
    Item it = std::move(work.back());
    work.pop_back();
    if (it.bits == 1) {
      acc = (acc << 1) | (it.v.as_bit() ? 1u : 0u);
    } else {
      // Push second first so the first (high) half is processed first.
      work.push_back({it.v.second(), it.bits / 2});
      work.push_back({it.v.first(), it.bits / 2});
    }
  }
  return acc;
}

Value repr_word(uint64_t k, unsigned bits) {
  if (bits == 0 || bits > 64 || (bits & (bits - 1)) != 0)
    throw OutOfRange("repr_word width must be a power of two <= 64");
  if (bits < 64 && k >= (uint64_t(1) << bits))
    throw OutOfRange("word value " + std::to_string(k) +
                     " out of range for width " + std::to_string(bits));
  if (bits == 1) return Value::bit(k & 1);
  unsigned half = bits / 2;
  uint64_t lowMask = (half == 64) ? ~uint64_t(0) : ((uint64_t(1) << half) - 1);
  return Value::pair(repr_word(k >> half, half), repr_word(k & lowMask, half));
}

namespace {

// Builds the word value for bytes[0..n) MSB-first at width bits = 8n.
Value bytes_to_value_rec(std::span<const uint8_t> bytes, unsigned bits) {
  if (bits <= 8) {
    uint8_t b = bytes[0];
    if (bits == 8) return repr_word(b, 8);
    // Widths 1/2/4 take the low bits of the single byte.
    return repr_word(b & ((1u << bits) - 1), bits);
  }
  unsigned half = bits / 2;
  return Value::pair(bytes_to_value_rec(bytes.first(half / 8), half),
                     bytes_to_value_rec(bytes.subspan(half / 8), half));
}

void value_to_bits(const Value& v, unsigned bits, std::vector<bool>& out) {
  if (bits == 1) {
    out.push_back(v.as_bit());
    return;
  }
  value_to_bits(v.first(), bits / 2, out);
  value_to_bits(v.second(), bits / 2, out);
}

}  // namespace

Value bytes_to_value(std::span<const uint8_t> bytes, unsigned bits) {
  if (bits < 8 || (bits & (bits - 1)) != 0)
    throw OutOfRange("byte-array words need a power-of-two width >= 8");
  if (bytes.size() * 8 != bits)
    throw OutOfRange("byte count does not match word width");
  return bytes_to_value_rec(bytes, bits);
}

std::vector<uint8_t> value_to_bytes(const Value& v, unsigned bits) {
  if (bits < 8 || (bits & (bits - 1)) != 0)
    throw OutOfRange("byte-array words need a power-of-two width >= 8");
  if (!value_has_type(v, ty_word(bits)))
    throw TypeError(TypeError::Kind::TypeMismatch, 0,
                    "value does not inhabit 2^" + std::to_string(bits));
  std::vector<bool> bitsOut;
  bitsOut.reserve(bits);
  value_to_bits(v, bits, bitsOut);
  std::vector<uint8_t> out(bits / 8, 0);
  for (unsigned i = 0; i < bits; ++i)
    if (bitsOut[i]) out[i / 8] |= uint8_t(0x80u >> (i % 8));
  return out;
}

Value value_at_index(TyRef a, uint64_t index) {
  const TyNode& n = ty(a);
  if (index >= n.count)
    throw OutOfRange("value index " + std::to_string(index) +
                     " out of range for type " + render_ty(a));
  switch (n.kind) {
    case TyKind::Unit:
      return Value::unit();
    case TyKind::Sum: {
      uint64_t lc = ty(n.left).count;
      if (index < lc) return Value::left(value_at_index(n.left, index));
      return Value::right(value_at_index(n.right, index - lc));
    }
    case TyKind::Prod: {
      uint64_t rc = ty(n.right).count;
      return Value::pair(value_at_index(n.left, index / rc),
                         value_at_index(n.right, index % rc));
    }
  }
  throw OutOfRange("unreachable");
}

uint64_t index_of_value(const Value& v, TyRef a) {
  if (!value_has_type(v, a))
    throw TypeError(TypeError::Kind::TypeMismatch, 0,
                    "value does not inhabit " + render_ty(a));
  const TyNode& n = ty(a);
  switch (v.kind()) {
    case ValueKind::Unit:
      return 0;
    case ValueKind::Left:
      return index_of_value(v.inner(), n.left);
    case ValueKind::Right:
      return ty(n.left).count + index_of_value(v.inner(), n.right);
    case ValueKind::Pair:
      return index_of_value(v.first(), n.left) * ty(n.right).count +
             index_of_value(v.second(), n.right);
  }
  throw OutOfRange("unreachable");
}

// Width of the perfect bit tree rooted here, or 0 if not one. Capped so the
// hex rendering never tries to materialize astronomically wide words.
static unsigned perfect_word_width_impl(const Value& v, unsigned cap) {
  if (v.kind() == ValueKind::Left || v.kind() == ValueKind::Right)
    return v.inner().is_unit() ? 1 : 0;
  if (v.kind() == ValueKind::Pair) {
    unsigned a = perfect_word_width_impl(v.first(), cap);
    if (a == 0 || 2 * a > cap) return 0;
    unsigned b = perfect_word_width_impl(v.second(), cap);
    return (a == b) ? 2 * a : 0;
  }
  return 0;
}

std::string render_value(const Value& v) {
  unsigned w = perfect_word_width_impl(v, 4096);
  if (w >= 4 && w % 4 == 0) {
    std::vector<bool> bits;
    bits.reserve(w);
    value_to_bits(v, w, bits);
    std::string hex;
    for (unsigned i = 0; i < w; i += 4) {
      unsigned nib = (bits[i] << 3) | (bits[i + 1] << 2) | (bits[i + 2] << 1) |
                     unsigned(bits[i + 3]);
      hex += "0123456789abcdef"[nib];
    }
    return "0x" + hex + ":" + std::to_string(w);
  }
  switch (v.kind()) {
    case ValueKind::Unit:
      return "u";
    case ValueKind::Left:
      return "(L " + render_value(v.inner()) + ")";
    case ValueKind::Right:
      return "(R " + render_value(v.inner()) + ")";
    case ValueKind::Pair:
      return "(" + render_value(v.first()) + " , " + render_value(v.second()) +
             ")";
  }
  return "u";
}

}  // namespace simplicity
