#include "simplicity/jets.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <random>
#include <utility>

#include "simplicity/errors.hpp"
#include "simplicity/eval.hpp"
#include "simplicity/merkle.hpp"
#include "simplicity/stdlib.hpp"
#include "simplicity/ty.hpp"
#include "simplicity/value.hpp"

namespace simplicity {

namespace {

using boost::multiprecision::cpp_int;

Value random_value(TyRef a, std::mt19937_64& rng) {
  const TyNode& t = ty(a);
  switch (t.kind) {
    case TyKind::Unit:
      return Value::unit();
    case TyKind::Sum:
      return (rng() & 1) ? Value::right(random_value(t.right, rng))
                         : Value::left(random_value(t.left, rng));
    case TyKind::Prod: {
      Value f = random_value(t.left, rng);
      Value s = random_value(t.right, rng);
      return Value::pair(std::move(f), std::move(s));
    }
  }
  throw Error("type of unknown kind");
}

cpp_int word_to_int(const Value& v, unsigned bits) {
  if (bits <= 64) return cpp_int(interp_word(v, bits));
  std::vector<uint8_t> bytes = value_to_bytes(v, bits);
  cpp_int x = 0;
  for (uint8_t b : bytes) x = (x << 8) | b;
  return x;
}

Value int_to_word(const cpp_int& x, unsigned bits) {
  if (bits <= 64) return repr_word(static_cast<uint64_t>(x), bits);
  std::vector<uint8_t> bytes(bits / 8, 0);
  cpp_int v = x;
  for (size_t i = bytes.size(); i-- > 0;) {
    bytes[i] = static_cast<uint8_t>(v & 0xff);
    v >>= 8;
  }
  return bytes_to_value(bytes, bits);
}

Digest256 digest_of_word(const Value& v) {
  std::vector<uint8_t> bytes = value_to_bytes(v, 256);
  Digest256 d;
  std::copy(bytes.begin(), bytes.end(), d.bytes.begin());
  return d;
}

}  // namespace

JetVerdict verify_jet(const Jet& jet, uint64_t exhaustive_limit,
                      uint64_t samples, uint64_t seed) {
  if (!jet.native || !jet.spec)
    throw Error("jet is missing its native function or its spec term");
  JetVerdict verdict;
  auto check_one = [&](const Value& in) {
    Value want = eval_core(*jet.spec, in);
    std::vector<Cell> in_cells = cells_of_value(in, jet.ty_in);
    std::vector<Cell> out_cells = jet.native->fn(in_cells);
    ++verdict.checked;
    if (out_cells.size() != bit_size(jet.ty_out)) {
      verdict.ok = false;
      verdict.detail = "native produced " + std::to_string(out_cells.size()) +
                       " cells, types require " +
                       std::to_string(bit_size(jet.ty_out));
      return false;
    }
    Value got = value_of_cells(out_cells, jet.ty_out);
    if (!(got == want)) {
      verdict.ok = false;
      verdict.detail = "input " + render_value(in) + ": native gave " +
                       render_value(got) + ", term gives " + render_value(want);
      return false;
    }
    return true;
  };
  uint64_t domain = value_count(jet.ty_in);
  if (domain <= exhaustive_limit) {
    for (uint64_t i = 0; i < domain; ++i)
      if (!check_one(value_at_index(jet.ty_in, i))) return verdict;
  } else {
    std::mt19937_64 rng(seed);
    for (uint64_t i = 0; i < samples; ++i)
      if (!check_one(random_value(jet.ty_in, rng))) return verdict;
  }
  return verdict;
}

void JetRegistry::add(Jet jet, uint64_t verify_samples) {
  if (!jet.native || !jet.spec)
    throw Error("jet registration requires a native function and a spec term");
  for (const Node& n : jet.spec->dag.nodes) {
    if (n.kind == NodeKind::Witness)
      throw Error("WitnessInJet: spec term of jet '" + jet.name +
                  "' contains a witness node");
    if (!is_core_kind(n.kind))
      throw Error("jet '" + jet.name + "' has a non-core spec term");
  }
  Digest256 computed = merkle_root(jet.spec->dag);
  if (!(jet.root == Digest256{}) && !(jet.root == computed))
    throw Error("jet '" + jet.name +
                "' was declared with a root that is not its spec term's root");
  jet.root = computed;
  if (jet.ty_in != jet.spec->root_in() || jet.ty_out != jet.spec->root_out())
    throw Error("jet '" + jet.name + "' types disagree with its spec term");
  if (jet.native->in_cells != bit_size(jet.ty_in) ||
      jet.native->out_cells != bit_size(jet.ty_out))
    throw Error("jet '" + jet.name +
                "' native cell counts disagree with its types");
  if (by_root_.count(jet.root))
    throw Error("DuplicateRoot: a jet with the root of '" + jet.name +
                "' is already registered");
  if (verify_samples > 0) {
    JetVerdict v =
        verify_jet(jet, std::min<uint64_t>(4 * verify_samples, 256),
                   verify_samples, /*seed=*/2);
    if (!v.ok)
      throw Error("SpecMismatch: jet '" + jet.name + "': " + v.detail);
  }
  by_root_.emplace(jet.root, jets_.size());
  jets_.push_back(std::move(jet));
}

const Jet* JetRegistry::find(const Digest256& root, TyRef in, TyRef out) const {
  auto it = by_root_.find(root);
  if (it == by_root_.end()) return nullptr;
  const Jet& j = jets_[it->second];
  if (j.ty_in != in || j.ty_out != out) return nullptr;
  return &j;
}

const Jet* JetRegistry::find_by_name(const std::string& name) const {
  for (const Jet& j : jets_)
    if (j.name == name) return &j;
  return nullptr;
}

namespace {

JetRegistry build_default_registry() {
  JetRegistry reg;
  TermBuilder b;

  auto add_jet = [&](const std::string& name, uint32_t spec_root,
                     std::function<Value(const Value&)> f,
                     uint64_t verify_samples = 4) {
    Jet j;
    j.name = name;
    j.spec = std::make_shared<TypedDag>(b.extract_typed(spec_root));
    j.ty_in = j.spec->root_in();
    j.ty_out = j.spec->root_out();
    auto native = std::make_shared<JetNative>();
    native->name = name;
    native->in_cells = bit_size(j.ty_in);
    native->out_cells = bit_size(j.ty_out);
    native->fn = [f = std::move(f), in = j.ty_in,
                  out = j.ty_out](std::span<const Cell> cells) {
      Value v = value_of_cells(cells, in);  // MalformedCells on undefined input
      return cells_of_value(f(v), out);
    };
    j.native = std::move(native);
    reg.add(std::move(j), verify_samples);
  };

  for (unsigned bits : {8u, 16u, 32u, 64u, 128u, 256u}) {
    const std::string w = std::to_string(bits);
    const cpp_int mask = (cpp_int(1) << bits) - 1;

    add_jet("add" + w, build_adder(b, bits), [bits, mask](const Value& v) {
      cpp_int s = word_to_int(v.first(), bits) + word_to_int(v.second(), bits);
      return Value::pair(Value::bit((s >> bits) != 0),
                         int_to_word(s & mask, bits));
    });
    add_jet("fulladd" + w, build_full_adder(b, bits),
            [bits, mask](const Value& v) {
              cpp_int s = word_to_int(v.first().first(), bits) +
                          word_to_int(v.first().second(), bits) +
                          (v.second().kind() == ValueKind::Right ? 1 : 0);
              return Value::pair(Value::bit((s >> bits) != 0),
                                 int_to_word(s & mask, bits));
            });
    add_jet("sub" + w, build_subtractor(b, bits), [bits, mask](const Value& v) {
      cpp_int x = word_to_int(v.first(), bits);
      cpp_int y = word_to_int(v.second(), bits);
      return Value::pair(Value::bit(x < y),
                         int_to_word((x - y) & mask, bits));
    });
    add_jet("eq" + w, build_eq(b, bits), [bits](const Value& v) {
      return Value::bit(word_to_int(v.first(), bits) ==
                        word_to_int(v.second(), bits));
    });
    add_jet("lt" + w, build_lt(b, bits), [bits](const Value& v) {
      return Value::bit(word_to_int(v.first(), bits) <
                        word_to_int(v.second(), bits));
    });
    add_jet("le" + w, build_le(b, bits), [bits](const Value& v) {
      return Value::bit(word_to_int(v.first(), bits) <=
                        word_to_int(v.second(), bits));
    });
    add_jet("and" + w, build_and(b, bits), [bits](const Value& v) {
      return int_to_word(word_to_int(v.first(), bits) &
                             word_to_int(v.second(), bits),
                         bits);
    });
    add_jet("or" + w, build_or(b, bits), [bits](const Value& v) {
      return int_to_word(word_to_int(v.first(), bits) |
                             word_to_int(v.second(), bits),
                         bits);
    });
    add_jet("xor" + w, build_xor(b, bits), [bits](const Value& v) {
      return int_to_word(word_to_int(v.first(), bits) ^
                             word_to_int(v.second(), bits),
                         bits);
    });
    if (bits <= 128) {
      add_jet("mul" + w, build_multiplier(b, bits), [bits](const Value& v) {
        return int_to_word(word_to_int(v.first(), bits) *
                               word_to_int(v.second(), bits),
                           2 * bits);
      });
    }
  }

  for (unsigned k = 0; k < 256; ++k) {
    char name[16];
    std::snprintf(name, sizeof name, "const0x%02x", k);
    add_jet(name, build_const_word(b, ty_unit(), 8, k),
            [k](const Value&) { return repr_word(k, 8); });
  }

  add_jet(
      "sha256compress", build_sha256_block(b),
      [](const Value& v) {
        Digest256 iv = digest_of_word(v.first());
        std::vector<uint8_t> block = value_to_bytes(v.second(), 512);
        std::array<uint8_t, 64> arr;
        std::copy(block.begin(), block.end(), arr.begin());
        Digest256 out = sha256_compress(iv, arr);
        return bytes_to_value(std::vector<uint8_t>(out.bytes.begin(),
                                                   out.bytes.end()),
                              256);
      },
      /*verify_samples=*/1);

  add_jet(
      "checksig", build_checksig(b),
      [](const Value& v) {
        std::vector<uint8_t> sig = value_to_bytes(v.first(), 512);
        Digest256 pub = digest_of_word(v.second().first());
        Digest256 msg = digest_of_word(v.second().second());
        std::array<uint8_t, 64> block;
        std::copy(sig.begin(), sig.end(), block.begin());
        return Value::bit(sha256_compress(msg, block) == pub);
      },
      /*verify_samples=*/1);

  return reg;
}

}  // namespace

const JetRegistry& default_registry() {
  static const JetRegistry reg = build_default_registry();
  return reg;
}

}  // namespace simplicity
