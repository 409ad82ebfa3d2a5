#include "simplicity/ty.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

#include "simplicity/errors.hpp"

namespace simplicity {
namespace {

uint64_t sat_add(uint64_t a, uint64_t b, uint64_t cap) {
  if (a >= cap || b >= cap || a + b >= cap) return cap;
  return a + b;
}

uint64_t sat_mul(uint64_t a, uint64_t b, uint64_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a >= cap || b >= cap || a > cap / b) return cap;
  return a * b;
}

struct KeyHash {
  size_t operator()(uint64_t k) const { return std::hash<uint64_t>{}(k); }
};

// Process-global interning arena. Nodes are append-only and never move
// (deque), so a TyRef obtained from any intern call stays valid and its node
// is immutable; the mutex serializes interning.
class Arena {
 public:
  static Arena& instance() {
    static Arena a;
    return a;
  }

  Arena() {
    // Slot 0 is Unit so that TyRef 0 is always the unit type.
    nodes_.push_back(TyNode{TyKind::Unit, 0, 0, 0, 1, 0});
  }

  TyRef unit() { return 0; }

  TyRef binary(TyKind kind, TyRef l, TyRef r) {
    std::lock_guard<std::mutex> lock(mu_);
    uint64_t key = (uint64_t(l) << 33) | (uint64_t(r) << 1) |
                   (kind == TyKind::Prod ? 1 : 0);
    auto it = intern_.find(key);
    if (it != intern_.end()) return it->second;
    const TyNode& ln = nodes_[l];
    const TyNode& rn = nodes_[r];
    TyNode n;
    n.kind = kind;
    n.left = l;
    n.right = r;
    if (kind == TyKind::Sum) {
      n.bits = sat_add(1, std::max(ln.bits, rn.bits), kSizeCap);
      n.count = sat_add(ln.count, rn.count, kCountCap);
    } else {
      n.bits = sat_add(ln.bits, rn.bits, kSizeCap);
      n.count = sat_mul(ln.count, rn.count, kCountCap);
    }
    n.depth = 1 + std::max(ln.depth, rn.depth);
    TyRef ref = static_cast<TyRef>(nodes_.size());
    nodes_.push_back(n);
    intern_.emplace(key, ref);
    return ref;
  }

  const TyNode& node(TyRef t) const { return nodes_[t]; }

 private:
  std::mutex mu_;
  std::deque<TyNode> nodes_;
  std::unordered_map<uint64_t, TyRef, KeyHash> intern_;
};

}  // namespace

TyRef ty_unit() { return Arena::instance().unit(); }

TyRef ty_sum(TyRef left, TyRef right) {
  return Arena::instance().binary(TyKind::Sum, left, right);
}

TyRef ty_prod(TyRef left, TyRef right) {
  return Arena::instance().binary(TyKind::Prod, left, right);
}

TyRef ty_bit() {
  static const TyRef bit = ty_sum(ty_unit(), ty_unit());
  return bit;
}

TyRef ty_word(unsigned bits) {
  if (bits == 0 || (bits & (bits - 1)) != 0) {
    throw OutOfRange("word width must be a power of two, got " +
                     std::to_string(bits));
  }
  TyRef t = ty_bit();
  for (unsigned w = 1; w < bits; w *= 2) t = ty_prod(t, t);
  return t;
}

TyRef ty_sighash_mode() {
  static const TyRef mode =
      ty_prod(ty_sum(ty_unit(), ty_bit()), ty_bit());
  return mode;
}

const TyNode& ty(TyRef t) { return Arena::instance().node(t); }

uint64_t pad_l(TyRef a, TyRef b) {
  return std::max(bit_size(a), bit_size(b)) - bit_size(a);
}

uint64_t pad_r(TyRef a, TyRef b) {
  return std::max(bit_size(a), bit_size(b)) - bit_size(b);
}

namespace {

// Returns the word width if t is 2^n for some power of two n, else 0.
unsigned word_width_of(TyRef t) {
  const TyNode& n = ty(t);
  if (n.kind == TyKind::Sum)
    return (n.left == ty_unit() && n.right == ty_unit()) ? 1 : 0;
  if (n.kind == TyKind::Prod && n.left == n.right) {
    unsigned w = word_width_of(n.left);
    return w ? 2 * w : 0;
  }
  return 0;
}

void render(TyRef t, std::string& out) {
  unsigned w = word_width_of(t);
  if (w == 1) {
    out += "2";
    return;
  }
  if (w > 1) {
    out += "2^" + std::to_string(w);
    return;
  }
  const TyNode& n = ty(t);
  switch (n.kind) {
    case TyKind::Unit:
      out += "1";
      break;
    case TyKind::Sum:
      out += "(";
      render(n.left, out);
      out += " + ";
      render(n.right, out);
      out += ")";
      break;
    case TyKind::Prod:
      out += "(";
      render(n.left, out);
      out += " * ";
      render(n.right, out);
      out += ")";
      break;
  }
}

}  // namespace

std::string render_ty(TyRef t) {
  std::string out;
  render(t, out);
  return out;
}

}  // namespace simplicity
