#include "simplicity/text.hpp"

#include <cctype>
#include <cstdint>
#include <optional>
#include <unordered_map>

#include "simplicity/errors.hpp"
#include "simplicity/typing.hpp"

namespace simplicity {

namespace {

constexpr size_t kMaxNesting = 1024;
constexpr unsigned kMaxWordBits = 4096;

enum class Tok {
  LParen, RParen, Comma, Semi, Equals, Plus, Star, DoubleColon,
  Hash,   // #<64 hex>, text holds the hex
  Word,   // 0x<hex>:<width>, text holds the whole literal
  Number, // digits
  Name,   // identifier (keywords included)
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  size_t line = 1, col = 1;
};

bool is_name_start(char c) { return std::isalpha(uint8_t(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(uint8_t(c)) || c == '_'; }
bool is_hex(char c) { return std::isxdigit(uint8_t(c)); }

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  size_t line = 1, col = 1, i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') { ++line; col = 1; } else { ++col; }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(uint8_t(c))) { advance(1); continue; }
    Token t;
    t.line = line;
    t.col = col;
    switch (c) {
      case '(': t.kind = Tok::LParen; advance(1); out.push_back(t); continue;
      case ')': t.kind = Tok::RParen; advance(1); out.push_back(t); continue;
      case ',': t.kind = Tok::Comma; advance(1); out.push_back(t); continue;
      case ';': t.kind = Tok::Semi; advance(1); out.push_back(t); continue;
      case '=': t.kind = Tok::Equals; advance(1); out.push_back(t); continue;
      case '+': t.kind = Tok::Plus; advance(1); out.push_back(t); continue;
      case '*': t.kind = Tok::Star; advance(1); out.push_back(t); continue;
      case ':':
        if (i + 1 < text.size() && text[i + 1] == ':') {
          t.kind = Tok::DoubleColon;
          advance(2);
          out.push_back(t);
          continue;
        }
        throw ParseError(line, col, "stray ':'");
      case '#': {
        size_t j = i + 1, n = 0;
        while (j < text.size() && is_hex(text[j])) { ++j; ++n; }
        if (n != 64)
          throw ParseError(line, col,
                           "'#' must be followed by exactly 64 hex digits");
        t.kind = Tok::Hash;
        t.text = text.substr(i + 1, 64);
        advance(1 + 64);
        out.push_back(t);
        continue;
      }
      default: break;
    }
    if (c == '0' && i + 1 < text.size() &&
        (text[i + 1] == 'x' || text[i + 1] == 'X')) {
      size_t j = i + 2, hex = 0;
      while (j < text.size() && is_hex(text[j])) { ++j; ++hex; }
      if (hex == 0) throw ParseError(line, col, "'0x' needs hex digits");
      if (j >= text.size() || text[j] != ':')
        throw ParseError(line, col, "word literal needs ':width'");
      size_t k = j + 1, digits = 0;
      while (k < text.size() && std::isdigit(uint8_t(text[k]))) {
        ++k;
        ++digits;
      }
      if (digits == 0) throw ParseError(line, col, "word literal needs a width");
      t.kind = Tok::Word;
      t.text = text.substr(i, k - i);
      advance(k - i);
      out.push_back(t);
      continue;
    }
    if (std::isdigit(uint8_t(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(uint8_t(text[j]))) ++j;
      t.kind = Tok::Number;
      t.text = text.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    if (is_name_start(c)) {
      size_t j = i;
      while (j < text.size() && is_name_char(text[j])) ++j;
      t.kind = Tok::Name;
      t.text = text.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

const std::unordered_map<std::string, int>& reserved_names() {
  static const std::unordered_map<std::string, int> names = {
      {"iden", 0},   {"unit", 0},    {"fail", 0},    {"sighash", 0},
      {"comp", 0},   {"injl", 0},    {"injr", 0},    {"case", 0},
      {"pair", 0},   {"take", 0},    {"drop", 0},    {"assertl", 0},
      {"assertr", 0}, {"witness", 0}, {"let", 0},     {"u", 0},
      {"L", 0},      {"R", 0},       {"_", 0},
  };
  return names;
}

struct Parser {
  explicit Parser(std::vector<Token> t) : toks(std::move(t)) {}

  std::vector<Token> toks;
  size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  Token next() { return toks[pos++]; }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.col, msg);
  }
  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek(), std::string("expected ") + what);
    return next();
  }

  // ---- values ----
  Value value(size_t depth) {
    if (depth > kMaxNesting) fail(peek(), "value nesting too deep");
    const Token& t = peek();
    if (t.kind == Tok::Name && t.text == "u") {
      next();
      return Value::unit();
    }
    if (t.kind == Tok::Word) return word_value(next());
    if (t.kind == Tok::LParen) {
      next();
      if (peek().kind == Tok::Name &&
          (peek().text == "L" || peek().text == "R")) {
        bool left = next().text == "L";
        Value inner = value(depth + 1);
        expect(Tok::RParen, "')'");
        return left ? Value::left(std::move(inner))
                    : Value::right(std::move(inner));
      }
      Value first = value(depth + 1);
      expect(Tok::Comma, "','");
      Value second = value(depth + 1);
      expect(Tok::RParen, "')'");
      return Value::pair(std::move(first), std::move(second));
    }
    fail(t, "expected a value");
  }

  Value word_value(const Token& t) {
    // t.text = 0x<hex>:<width>
    size_t colon = t.text.find(':');
    std::string hex = t.text.substr(2, colon - 2);
    unsigned long width_l = 0;
    try {
      width_l = std::stoul(t.text.substr(colon + 1));
    } catch (const std::exception&) {
      fail(t, "bad word width");
    }
    if (width_l == 0 || width_l > kMaxWordBits ||
        (width_l & (width_l - 1)) != 0)
      fail(t, "word width must be a power of two in [1, " +
                  std::to_string(kMaxWordBits) + "]");
    unsigned width = unsigned(width_l);
    std::vector<bool> bits(width, false);
    // Big-endian: the last hex digit holds the least significant bits.
    size_t bit = width;  // one past the next LSB to fill
    for (size_t d = hex.size(); d-- > 0;) {
      char c = hex[d];
      unsigned v = c <= '9' ? unsigned(c - '0')
                            : unsigned(std::tolower(uint8_t(c)) - 'a') + 10;
      for (unsigned k = 0; k < 4; ++k) {
        bool set = (v >> k) & 1;
        if (bit == 0) {
          if (set) fail(t, "word value does not fit its width");
          continue;
        }
        bits[--bit] = set;
      }
    }
    return bits_to_value(bits, 0, width);
  }

  static Value bits_to_value(const std::vector<bool>& bits, size_t lo,
                             size_t n) {
    if (n == 1) return Value::bit(bits[lo]);
    return Value::pair(bits_to_value(bits, lo, n / 2),
                       bits_to_value(bits, lo + n / 2, n / 2));
  }

  // ---- types ----
  TyRef type(size_t depth) {
    if (depth > kMaxNesting) fail(peek(), "type nesting too deep");
    const Token& t = peek();
    if (t.kind == Tok::Number && t.text == "1") {
      next();
      return ty_unit();
    }
    if (t.kind == Tok::LParen) {
      next();
      TyRef a = type(depth + 1);
      bool sum;
      if (peek().kind == Tok::Plus) sum = true;
      else if (peek().kind == Tok::Star) sum = false;
      else fail(peek(), "expected '+' or '*'");
      next();
      TyRef b = type(depth + 1);
      expect(Tok::RParen, "')'");
      return sum ? ty_sum(a, b) : ty_prod(a, b);
    }
    fail(t, "expected a type");
  }

  // ---- programs ----
  std::vector<Node> nodes;
  std::unordered_map<std::string, uint32_t> lets;

  uint32_t emit(Node n) {
    nodes.push_back(std::move(n));
    return uint32_t(nodes.size() - 1);
  }

  Digest256 hash_of(const Token& t) {
    Digest256 d;
    for (size_t k = 0; k < 32; ++k) {
      auto nib = [&](char c) -> uint8_t {
        return c <= '9' ? uint8_t(c - '0')
                        : uint8_t(std::tolower(uint8_t(c)) - 'a' + 10);
      };
      d.bytes[k] = uint8_t(nib(t.text[2 * k]) << 4 | nib(t.text[2 * k + 1]));
    }
    return d;
  }

  uint32_t expr(size_t depth) {
    if (depth > kMaxNesting) fail(peek(), "expression nesting too deep");
    const Token& t = peek();
    if (t.kind == Tok::Name) {
      Token name = next();
      if (name.text == "iden") return emit(Node{NodeKind::Iden});
      if (name.text == "unit") return emit(Node{NodeKind::Unit});
      if (name.text == "fail") return emit(Node{NodeKind::Fail});
      if (name.text == "sighash") return emit(Node{NodeKind::SigHash});
      if (reserved_names().count(name.text))
        fail(name, "'" + name.text + "' cannot stand alone here");
      auto it = lets.find(name.text);
      if (it == lets.end())
        throw Error("UnboundName: '" + name.text + "' at " +
                    std::to_string(name.line) + ":" + std::to_string(name.col));
      return it->second;
    }
    if (t.kind != Tok::LParen) fail(t, "expected an expression");
    next();
    Token op = expect(Tok::Name, "an operator");
    uint32_t result = 0;
    if (op.text == "comp" || op.text == "pair" || op.text == "case") {
      uint32_t a = expr(depth + 1);
      uint32_t b = expr(depth + 1);
      NodeKind k = op.text == "comp"   ? NodeKind::Comp
                   : op.text == "pair" ? NodeKind::Pair
                                       : NodeKind::Case;
      Node n{k};
      n.a = a;
      n.b = b;
      result = emit(std::move(n));
    } else if (op.text == "injl" || op.text == "injr" || op.text == "take" ||
               op.text == "drop") {
      uint32_t a = expr(depth + 1);
      NodeKind k = op.text == "injl"   ? NodeKind::Injl
                   : op.text == "injr" ? NodeKind::Injr
                   : op.text == "take" ? NodeKind::Take
                                       : NodeKind::Drop;
      Node n{k};
      n.a = a;
      result = emit(std::move(n));
    } else if (op.text == "assertl") {
      uint32_t a = expr(depth + 1);
      Token h = expect(Tok::Hash, "'#<64 hex>'");
      Node n{NodeKind::AssertL};
      n.a = a;
      n.hash = hash_of(h);
      result = emit(std::move(n));
    } else if (op.text == "assertr") {
      Token h = expect(Tok::Hash, "'#<64 hex>'");
      uint32_t a = expr(depth + 1);
      Node n{NodeKind::AssertR};
      n.a = a;
      n.hash = hash_of(h);
      result = emit(std::move(n));
    } else if (op.text == "witness") {
      Node n{NodeKind::Witness};
      if (peek().kind == Tok::Name && peek().text == "_") next();
      else n.witness = value(depth + 1);
      if (peek().kind == Tok::DoubleColon) {
        next();
        n.declared = type(depth + 1);
      }
      result = emit(std::move(n));
    } else {
      fail(op, "unknown operator '" + op.text + "'");
    }
    expect(Tok::RParen, "')'");
    return result;
  }

  TermDag program() {
    while (peek().kind == Tok::Name && peek().text == "let") {
      Token let = next();
      (void)let;
      Token name = expect(Tok::Name, "a name");
      if (reserved_names().count(name.text))
        fail(name, "'" + name.text + "' is reserved");
      if (lets.count(name.text))
        throw Error("DuplicateLet: '" + name.text + "' at " +
                    std::to_string(name.line) + ":" + std::to_string(name.col));
      expect(Tok::Equals, "'='");
      uint32_t idx = expr(0);
      expect(Tok::Semi, "';'");
      lets.emplace(name.text, idx);
    }
    uint32_t root = expr(0);
    if (peek().kind != Tok::End) fail(peek(), "trailing input after program");

    // Drop unused lets, preserving node order.
    TermDag dag;
    dag.nodes = std::move(nodes);
    dag.root = root;
    std::vector<bool> keep(dag.nodes.size(), false);
    keep[root] = true;
    for (size_t i = dag.nodes.size(); i-- > 0;) {
      if (!keep[i]) continue;
      const Node& n = dag.nodes[i];
      for (unsigned c = 0; c < child_count(n.kind); ++c)
        keep[c == 0 ? n.a : n.b] = true;
    }
    std::vector<uint32_t> remap(dag.nodes.size(), 0);
    TermDag out;
    for (size_t i = 0; i < dag.nodes.size(); ++i) {
      if (!keep[i]) continue;
      Node n = dag.nodes[i];
      if (child_count(n.kind) >= 1) n.a = remap[n.a];
      if (child_count(n.kind) >= 2) n.b = remap[n.b];
      remap[i] = uint32_t(out.nodes.size());
      out.nodes.push_back(std::move(n));
    }
    out.root = remap[root];
    validate_dag(out);
    return out;
  }
};

// ---- printers --------------------------------------------------------------

// Width of the balanced word this value inhabits, if any (1 for a bare bit).
std::optional<unsigned> word_width(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Unit:
      return std::nullopt;
    case ValueKind::Left:
    case ValueKind::Right:
      if (v.inner().is_unit()) return 1u;
      return std::nullopt;
    case ValueKind::Pair: {
      auto l = word_width(v.first());
      if (!l) return std::nullopt;
      auto r = word_width(v.second());
      if (!r || *l != *r || 2 * *l > kMaxWordBits) return std::nullopt;
      return 2 * *l;
    }
  }
  return std::nullopt;
}

void collect_bits(const Value& v, std::vector<bool>& bits) {
  if (v.kind() == ValueKind::Pair) {
    collect_bits(v.first(), bits);
    collect_bits(v.second(), bits);
    return;
  }
  bits.push_back(v.kind() == ValueKind::Right);
}

void print_value_rec(const Value& v, std::string& out) {
  auto w = word_width(v);
  if (w && *w >= 4) {
    std::vector<bool> bits;
    bits.reserve(*w);
    collect_bits(v, bits);
    out += "0x";
    for (unsigned d = 0; d < *w / 4; ++d) {
      unsigned nib = unsigned(bits[4 * d]) << 3 | unsigned(bits[4 * d + 1]) << 2 |
                     unsigned(bits[4 * d + 2]) << 1 | unsigned(bits[4 * d + 3]);
      out += "0123456789abcdef"[nib];
    }
    out += ":" + std::to_string(*w);
    return;
  }
  switch (v.kind()) {
    case ValueKind::Unit:
      out += "u";
      return;
    case ValueKind::Left:
      out += "(L ";
      print_value_rec(v.inner(), out);
      out += ")";
      return;
    case ValueKind::Right:
      out += "(R ";
      print_value_rec(v.inner(), out);
      out += ")";
      return;
    case ValueKind::Pair:
      out += "(";
      print_value_rec(v.first(), out);
      out += ", ";
      print_value_rec(v.second(), out);
      out += ")";
      return;
  }
}

void print_ty_rec(TyRef t, std::string& out) {
  const TyNode& n = ty(t);
  switch (n.kind) {
    case TyKind::Unit:
      out += "1";
      return;
    case TyKind::Sum:
      out += "(";
      print_ty_rec(n.left, out);
      out += " + ";
      print_ty_rec(n.right, out);
      out += ")";
      return;
    case TyKind::Prod:
      out += "(";
      print_ty_rec(n.left, out);
      out += " * ";
      print_ty_rec(n.right, out);
      out += ")";
      return;
  }
}

struct Printer {
  const TermDag& dag;
  std::vector<uint32_t> refs;      // reference counts over reachable edges
  std::vector<std::string> names;  // let names for shared nodes

  explicit Printer(const TermDag& d) : dag(d), refs(d.nodes.size(), 0) {
    std::vector<bool> reach = reachable_from_root(dag);
    refs[dag.root] += 1;
    for (size_t i = 0; i < dag.nodes.size(); ++i) {
      if (!reach[i]) continue;
      const Node& n = dag.nodes[i];
      for (unsigned c = 0; c < child_count(n.kind); ++c)
        refs[c == 0 ? n.a : n.b] += 1;
    }
    names.resize(dag.nodes.size());
    size_t k = 0;
    for (size_t i = 0; i < dag.nodes.size(); ++i)
      if (refs[i] >= 2) names[i] = "n" + std::to_string(k++);
  }

  void expr(uint32_t i, bool defining, std::string& out) const {
    if (!defining && refs[i] >= 2) {
      out += names[i];
      return;
    }
    const Node& n = dag.nodes[i];
    switch (n.kind) {
      case NodeKind::Iden: out += "iden"; return;
      case NodeKind::Unit: out += "unit"; return;
      case NodeKind::Fail: out += "fail"; return;
      case NodeKind::SigHash: out += "sighash"; return;
      case NodeKind::Comp:
      case NodeKind::Pair:
      case NodeKind::Case: {
        out += n.kind == NodeKind::Comp   ? "(comp "
               : n.kind == NodeKind::Pair ? "(pair "
                                          : "(case ";
        expr(n.a, false, out);
        out += " ";
        expr(n.b, false, out);
        out += ")";
        return;
      }
      case NodeKind::Injl:
      case NodeKind::Injr:
      case NodeKind::Take:
      case NodeKind::Drop: {
        out += n.kind == NodeKind::Injl   ? "(injl "
               : n.kind == NodeKind::Injr ? "(injr "
               : n.kind == NodeKind::Take ? "(take "
                                          : "(drop ";
        expr(n.a, false, out);
        out += ")";
        return;
      }
      case NodeKind::AssertL:
        out += "(assertl ";
        expr(n.a, false, out);
        out += " #" + n.hash.hex() + ")";
        return;
      case NodeKind::AssertR:
        out += "(assertr #" + n.hash.hex() + " ";
        expr(n.a, false, out);
        out += ")";
        return;
      case NodeKind::Witness:
        out += "(witness ";
        if (n.witness) print_value_rec(*n.witness, out);
        else out += "_";
        if (n.declared) {
          out += " :: ";
          print_ty_rec(*n.declared, out);
        }
        out += ")";
        return;
    }
  }

  std::string program() const {
    std::string out;
    for (size_t i = 0; i < dag.nodes.size(); ++i) {
      if (refs[i] < 2) continue;
      out += "let " + names[i] + " = ";
      expr(uint32_t(i), true, out);
      out += ";\n";
    }
    expr(dag.root, false, out);
    out += "\n";
    return out;
  }
};

}  // namespace

TermDag parse_program(const std::string& text) {
  Parser p(lex(text));
  return p.program();
}

std::string print_program(const TermDag& dag) {
  validate_dag(dag);
  return Printer(dag).program();
}

Value parse_value(const std::string& text) {
  Parser p(lex(text));
  Value v = p.value(0);
  if (p.peek().kind != Tok::End)
    throw ParseError(p.peek().line, p.peek().col, "trailing input after value");
  return v;
}

std::string print_value(const Value& v) {
  std::string out;
  print_value_rec(v, out);
  return out;
}

TyRef parse_ty_text(const std::string& text) {
  Parser p(lex(text));
  TyRef t = p.type(0);
  if (p.peek().kind != Tok::End)
    throw ParseError(p.peek().line, p.peek().col, "trailing input after type");
  return t;
}

std::string print_ty_text(TyRef t) {
  std::string out;
  print_ty_rec(t, out);
  return out;
}

std::vector<Value> parse_witness_file(const std::string& text) {
  Parser p(lex(text));
  std::vector<Value> out;
  while (p.peek().kind != Tok::End) out.push_back(p.value(0));
  return out;
}

TermDag substitute_witnesses(const TermDag& dag, const std::vector<Value>& ws) {
  TermDag out = dag;
  size_t next = 0;
  std::vector<uint32_t> slots;
  for (uint32_t i = 0; i < out.nodes.size(); ++i) {
    Node& n = out.nodes[i];
    if (n.kind != NodeKind::Witness || n.witness) continue;
    if (next >= ws.size())
      throw Error("CountMismatch: program has more witness placeholders than "
                  "the file has values (" +
                  std::to_string(ws.size()) + ")");
    n.witness = ws[next++];
    slots.push_back(i);
  }
  if (next != ws.size())
    throw Error("CountMismatch: witness file has " + std::to_string(ws.size()) +
                " values but the program has " + std::to_string(next) +
                " placeholders");
  TypedDag typed = infer_types(out);
  for (uint32_t i : slots) {
    if (!value_has_type(*typed.dag.nodes[i].witness, typed.out[i]))
      throw Error("WitnessTypeMismatch: witness value " +
                  print_value(*typed.dag.nodes[i].witness) +
                  " does not inhabit " + render_ty(typed.out[i]));
  }
  return out;
}

TxEnv parse_tx_file(const std::string& text) {
  std::string hex;
  for (char c : text) {
    if (std::isspace(uint8_t(c))) continue;
    if (!is_hex(c))
      throw Error("transaction file must be hex bytes, got '" +
                  std::string(1, c) + "'");
    hex += char(std::tolower(uint8_t(c)));
  }
  if (hex.size() % 2 != 0)
    throw Error("transaction file has an odd number of hex digits");
  TxEnv env;
  env.bytes.reserve(hex.size() / 2);
  auto nib = [](char c) -> uint8_t {
    return c <= '9' ? uint8_t(c - '0') : uint8_t(c - 'a' + 10);
  };
  for (size_t i = 0; i < hex.size(); i += 2)
    env.bytes.push_back(uint8_t(nib(hex[i]) << 4 | nib(hex[i + 1])));
  return env;
}

}  // namespace simplicity
