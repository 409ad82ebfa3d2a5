#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simplicity/ty.hpp"

namespace simplicity {

enum class ValueKind : uint8_t { Unit, Left, Right, Pair };

// An immutable value tree: <>, left/right injections, and pairs. Copying a
// Value copies a shared_ptr; structural equality is by shape.
class Value {
 public:
  Value() : node_(unit_node()) {}

  static Value unit() { return Value(); }
  static Value left(Value inner);
  static Value right(Value inner);
  static Value pair(Value first, Value second);

  ValueKind kind() const { return node_->kind; }
  bool is_unit() const { return node_->kind == ValueKind::Unit; }

  // Component accessors; precondition: matching kind.
  Value inner() const { return Value(node_->a); }
  Value first() const { return Value(node_->a); }
  Value second() const { return Value(node_->b); }

  bool operator==(const Value& o) const;
  bool operator!=(const Value& o) const { return !(*this == o); }

  // The bit values false = left(unit), true = right(unit).
  static Value bit(bool b) { return b ? right(unit()) : left(unit()); }
  bool as_bit() const;  // precondition: value of type 2

 private:
  struct Node {
    ValueKind kind;
    std::shared_ptr<const Node> a, b;
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit Value(NodePtr n) : node_(std::move(n)) {}
  static const NodePtr& unit_node();

  NodePtr node_;
};

bool value_has_type(const Value& v, TyRef a);

// Big-endian word encoding at power-of-two widths: a 2n-wide word is a pair
// of n-wide words, high half first; interp(pair(a,b)) = interp(a)*2^n + interp(b).
uint64_t interp_word(const Value& v, unsigned bits);  // bits <= 64
Value repr_word(uint64_t k, unsigned bits);           // bits <= 64, k < 2^bits

// Byte-array forms for wide words (bits a power of two >= 8, bytes MSB-first).
Value bytes_to_value(std::span<const uint8_t> bytes, unsigned bits);
std::vector<uint8_t> value_to_bytes(const Value& v, unsigned bits);

// Enumerates the inhabitants of a finite type: index < value_count(a).
// Sums enumerate all left values before right values; products vary the
// second component fastest.
Value value_at_index(TyRef a, uint64_t index);
uint64_t index_of_value(const Value& v, TyRef a);

// Renders in the text format: "u", "(L v)", "(R v)", "(v , w)"; perfect bit
// trees of width a multiple of 4 render as 0xHEX:width.
std::string render_value(const Value& v);

}  // namespace simplicity
