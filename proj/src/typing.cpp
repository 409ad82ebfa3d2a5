#include "simplicity/typing.hpp"

#include <map>
#include <unordered_map>
#include <vector>

#include "simplicity/errors.hpp"

namespace simplicity {

namespace {

// First-order unification over type skeletons with union-find classes.
// A class is either an unbound variable or carries a constructor with child
// classes. Binding a variable to a structure runs an occurs check, so the
// substitution stays acyclic and resolution terminates.
class Unifier {
 public:
  struct ClashEx {
    std::string what;
  };
  struct OccursEx {};

  uint32_t fresh() {
    classes_.push_back({next_id(), false, kVar, 0, 0});
    return classes_.back().parent;
  }

  uint32_t make(TyKind k, uint32_t l, uint32_t r) {
    // Ground = provably variable-free, so occurs checks can skip the subtree.
    bool ground = k == TyKind::Unit ||
                  (classes_[find(l)].ground && classes_[find(r)].ground);
    classes_.push_back({next_id(), ground, int8_t(k), l, r});
    return classes_.back().parent;
  }

  uint32_t unit_class() {
    if (unit_ == UINT32_MAX) unit_ = make(TyKind::Unit, 0, 0);
    return unit_;
  }

  // Embeds a concrete interned type as structure classes (memoized).
  uint32_t of_ty(TyRef t) {
    auto it = tyMemo_.find(t);
    if (it != tyMemo_.end()) return it->second;
    const TyNode& n = ty(t);
    uint32_t c;
    switch (n.kind) {
      case TyKind::Unit:
        c = unit_class();
        break;
      case TyKind::Sum:
      case TyKind::Prod:
        c = make(n.kind, of_ty(n.left), of_ty(n.right));
        break;
      default:
        c = unit_class();
        break;
    }
    tyMemo_.emplace(t, c);
    return c;
  }

  void unify(uint32_t x, uint32_t y) {
    std::vector<std::pair<uint32_t, uint32_t>> work{{x, y}};
    while (!work.empty()) {
      auto [a, b] = work.back();
      work.pop_back();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      Cls& A = classes_[a];
      Cls& B = classes_[b];
      if (A.kind == kVar || B.kind == kVar) {
        uint32_t var = A.kind == kVar ? a : b;
        uint32_t other = A.kind == kVar ? b : a;
        if (classes_[other].kind != kVar) occurs_check(var, other);
        link(var, other);
        continue;
      }
      if (A.kind != B.kind) {
        throw ClashEx{describe(a) + " vs " + describe(b)};
      }
      if (A.kind != int8_t(TyKind::Unit)) {
        work.emplace_back(A.l, B.l);
        work.emplace_back(A.r, B.r);
      }
      link(a, b);  // keep b's structure; children already queued
    }
  }

  // Resolves a class to an interned type, replacing variables by unit.
  TyRef resolve(uint32_t c) {
    c = find(c);
    auto it = resolveMemo_.find(c);
    if (it != resolveMemo_.end()) return it->second;
    const Cls& C = classes_[c];
    TyRef r;
    if (C.kind == kVar || C.kind == int8_t(TyKind::Unit)) {
      r = ty_unit();
    } else {
      TyRef l = resolve(C.l);
      TyRef rr = resolve(C.r);
      r = C.kind == int8_t(TyKind::Sum) ? ty_sum(l, rr) : ty_prod(l, rr);
    }
    resolveMemo_.emplace(c, r);
    return r;
  }

  // Pre-unit-fill rendering with variables as ?N (numbered by first visit).
  std::string shape(uint32_t c) {
    c = find(c);
    const Cls& C = classes_[c];
    if (C.kind == kVar) {
      auto [it, fresh] = varNames_.emplace(c, varNames_.size());
      return "?" + std::to_string(it->second);
    }
    if (C.kind == int8_t(TyKind::Unit)) return "1";
    std::string op = C.kind == int8_t(TyKind::Sum) ? " + " : " * ";
    return "(" + shape(C.l) + op + shape(C.r) + ")";
  }

 private:
  static constexpr int8_t kVar = -1;

  struct Cls {
    uint32_t parent;
    bool ground;
    int8_t kind;  // kVar or TyKind
    uint32_t l, r;
  };

  uint32_t next_id() const { return static_cast<uint32_t>(classes_.size()); }

  uint32_t find(uint32_t c) {
    while (classes_[c].parent != c) {
      classes_[c].parent = classes_[classes_[c].parent].parent;
      c = classes_[c].parent;
    }
    return c;
  }

  // Links root `loser` under root `winner`, preserving winner's payload.
  void link(uint32_t loser, uint32_t winner) {
    classes_[loser].parent = winner;
  }

  void occurs_check(uint32_t var, uint32_t structure) {
    ++epoch_;
    seen_.resize(classes_.size(), 0);
    std::vector<uint32_t> work{structure};
    while (!work.empty()) {
      uint32_t c = find(work.back());
      work.pop_back();
      if (c == var) throw OccursEx{};
      if (seen_[c] == epoch_) continue;
      seen_[c] = epoch_;
      const Cls& C = classes_[c];
      if (C.ground) continue;  // no variable can occur below a ground class
      if (C.kind == int8_t(TyKind::Sum) || C.kind == int8_t(TyKind::Prod)) {
        work.push_back(C.l);
        work.push_back(C.r);
      }
    }
  }

  std::string describe(uint32_t c) {
    const Cls& C = classes_[find(c)];
    switch (C.kind) {
      case int8_t(TyKind::Unit):
        return "unit";
      case int8_t(TyKind::Sum):
        return "a sum";
      case int8_t(TyKind::Prod):
        return "a product";
      default:
        return "a variable";
    }
  }

  std::vector<Cls> classes_;
  std::vector<uint32_t> seen_;
  uint32_t epoch_ = 0;
  uint32_t unit_ = UINT32_MAX;
  std::unordered_map<TyRef, uint32_t> tyMemo_;
  std::unordered_map<uint32_t, TyRef> resolveMemo_;
  std::map<uint32_t, size_t> varNames_;
};

struct InferState {
  Unifier uf;
  std::vector<uint32_t> in, out;
};

uint32_t shape_of_value(Unifier& uf, const Value& v) {
  switch (v.kind()) {
    case ValueKind::Unit:
      return uf.unit_class();
    case ValueKind::Left:
      return uf.make(TyKind::Sum, shape_of_value(uf, v.inner()), uf.fresh());
    case ValueKind::Right:
      return uf.make(TyKind::Sum, uf.fresh(), shape_of_value(uf, v.inner()));
    case ValueKind::Pair:
      return uf.make(TyKind::Prod, shape_of_value(uf, v.first()),
                     shape_of_value(uf, v.second()));
  }
  return uf.unit_class();
}

InferState run_unification(const TermDag& dag) {
  InferState st;
  Unifier& uf = st.uf;
  size_t n = dag.nodes.size();
  st.in.reserve(n);
  st.out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    st.in.push_back(uf.fresh());
    st.out.push_back(uf.fresh());
  }

  for (uint32_t i = 0; i < n; ++i) {
    const Node& nd = dag.nodes[i];
    try {
      switch (nd.kind) {
        case NodeKind::Iden:
          uf.unify(st.in[i], st.out[i]);
          break;
        case NodeKind::Unit:
          uf.unify(st.out[i], uf.unit_class());
          break;
        case NodeKind::Injl:
          uf.unify(st.in[i], st.in[nd.a]);
          uf.unify(st.out[i],
                   uf.make(TyKind::Sum, st.out[nd.a], uf.fresh()));
          break;
        case NodeKind::Injr:
          uf.unify(st.in[i], st.in[nd.a]);
          uf.unify(st.out[i],
                   uf.make(TyKind::Sum, uf.fresh(), st.out[nd.a]));
          break;
        case NodeKind::Take:
          uf.unify(st.in[i], uf.make(TyKind::Prod, st.in[nd.a], uf.fresh()));
          uf.unify(st.out[i], st.out[nd.a]);
          break;
        case NodeKind::Drop:
          uf.unify(st.in[i], uf.make(TyKind::Prod, uf.fresh(), st.in[nd.a]));
          uf.unify(st.out[i], st.out[nd.a]);
          break;
        case NodeKind::Comp:
          uf.unify(st.in[i], st.in[nd.a]);
          uf.unify(st.out[nd.a], st.in[nd.b]);
          uf.unify(st.out[i], st.out[nd.b]);
          break;
        case NodeKind::Pair:
          uf.unify(st.in[i], st.in[nd.a]);
          uf.unify(st.in[i], st.in[nd.b]);
          uf.unify(st.out[i],
                   uf.make(TyKind::Prod, st.out[nd.a], st.out[nd.b]));
          break;
        case NodeKind::Case: {
          uint32_t a = uf.fresh(), b = uf.fresh(), c = uf.fresh();
          uf.unify(st.in[i],
                   uf.make(TyKind::Prod, uf.make(TyKind::Sum, a, b), c));
          uf.unify(st.in[nd.a], uf.make(TyKind::Prod, a, c));
          uf.unify(st.in[nd.b], uf.make(TyKind::Prod, b, c));
          uf.unify(st.out[i], st.out[nd.a]);
          uf.unify(st.out[i], st.out[nd.b]);
          break;
        }
        case NodeKind::AssertL: {
          uint32_t a = uf.fresh(), b = uf.fresh(), c = uf.fresh();
          uf.unify(st.in[i],
                   uf.make(TyKind::Prod, uf.make(TyKind::Sum, a, b), c));
          uf.unify(st.in[nd.a], uf.make(TyKind::Prod, a, c));
          uf.unify(st.out[i], st.out[nd.a]);
          break;
        }
        case NodeKind::AssertR: {
          uint32_t a = uf.fresh(), b = uf.fresh(), c = uf.fresh();
          uf.unify(st.in[i],
                   uf.make(TyKind::Prod, uf.make(TyKind::Sum, a, b), c));
          uf.unify(st.in[nd.a], uf.make(TyKind::Prod, b, c));
          uf.unify(st.out[i], st.out[nd.a]);
          break;
        }
        case NodeKind::Fail:
          break;
        case NodeKind::Witness:
          if (nd.declared) {
            uf.unify(st.out[i], uf.of_ty(*nd.declared));
          } else if (nd.witness) {
            uf.unify(st.out[i], shape_of_value(uf, *nd.witness));
          }
          break;
        case NodeKind::SigHash:
          uf.unify(st.in[i], uf.of_ty(ty_sighash_mode()));
          uf.unify(st.out[i], uf.of_ty(ty_word(256)));
          break;
      }
    } catch (const Unifier::ClashEx& e) {
      throw TypeError(TypeError::Kind::UnificationClash, i,
                      "type mismatch at node " + std::to_string(i) + " (" +
                          node_kind_name(nd.kind) + "): " + e.what);
    } catch (const Unifier::OccursEx&) {
      throw TypeError(TypeError::Kind::OccursCheck, i,
                      "infinite type at node " + std::to_string(i) + " (" +
                          node_kind_name(nd.kind) + ")");
    }
  }
  return st;
}

}  // namespace

TypedDag infer_types(const TermDag& dag) {
  InferState st = run_unification(dag);
  TypedDag out;
  out.dag = dag;
  out.in.reserve(dag.nodes.size());
  out.out.reserve(dag.nodes.size());
  for (size_t i = 0; i < dag.nodes.size(); ++i) {
    out.in.push_back(st.uf.resolve(st.in[i]));
    out.out.push_back(st.uf.resolve(st.out[i]));
  }
  return out;
}

RawTyping infer_shapes(const TermDag& dag) {
  InferState st = run_unification(dag);
  RawTyping out;
  for (size_t i = 0; i < dag.nodes.size(); ++i) {
    out.in.push_back(st.uf.shape(st.in[i]));
    out.out.push_back(st.uf.shape(st.out[i]));
  }
  return out;
}

namespace {

bool fail_rule(TypingVerdict& v, uint32_t node, const char* rule) {
  v.ok = false;
  v.node = node;
  v.rule = rule;
  return false;
}

}  // namespace

TypingVerdict check_typing(const TypedDag& typed) {
  TypingVerdict v;
  const TermDag& dag = typed.dag;
  if (typed.in.size() != dag.nodes.size() ||
      typed.out.size() != dag.nodes.size()) {
    fail_rule(v, 0, "typing arrays do not match node list");
    return v;
  }
  for (uint32_t i = 0; i < dag.nodes.size() && v.ok; ++i) {
    const Node& nd = dag.nodes[i];
    TyRef in = typed.in[i], out = typed.out[i];
    switch (nd.kind) {
      case NodeKind::Iden:
        if (in != out) fail_rule(v, i, "iden: input must equal output");
        break;
      case NodeKind::Unit:
        if (out != ty_unit()) fail_rule(v, i, "unit: output must be 1");
        break;
      case NodeKind::Injl: {
        const TyNode& o = ty(out);
        if (o.kind != TyKind::Sum)
          fail_rule(v, i, "injl: output must be a sum");
        else if (in != typed.in[nd.a] || o.left != typed.out[nd.a])
          fail_rule(v, i, "injl: child types do not fit");
        break;
      }
      case NodeKind::Injr: {
        const TyNode& o = ty(out);
        if (o.kind != TyKind::Sum)
          fail_rule(v, i, "injr: output must be a sum");
        else if (in != typed.in[nd.a] || o.right != typed.out[nd.a])
          fail_rule(v, i, "injr: child types do not fit");
        break;
      }
      case NodeKind::Take: {
        const TyNode& t = ty(in);
        if (t.kind != TyKind::Prod)
          fail_rule(v, i, "take: input must be a product");
        else if (t.left != typed.in[nd.a] || out != typed.out[nd.a])
          fail_rule(v, i, "take: child types do not fit");
        break;
      }
      case NodeKind::Drop: {
        const TyNode& t = ty(in);
        if (t.kind != TyKind::Prod)
          fail_rule(v, i, "drop: input must be a product");
        else if (t.right != typed.in[nd.a] || out != typed.out[nd.a])
          fail_rule(v, i, "drop: child types do not fit");
        break;
      }
      case NodeKind::Comp:
        if (in != typed.in[nd.a])
          fail_rule(v, i, "comp: input must match first child");
        else if (typed.out[nd.a] != typed.in[nd.b])
          fail_rule(v, i, "comp: mid types must agree");
        else if (out != typed.out[nd.b])
          fail_rule(v, i, "comp: output must match second child");
        break;
      case NodeKind::Pair:
        if (in != typed.in[nd.a] || in != typed.in[nd.b])
          fail_rule(v, i, "pair: children must share the input");
        else if (out != ty_prod(typed.out[nd.a], typed.out[nd.b]))
          fail_rule(v, i, "pair: output must be the product of outputs");
        break;
      case NodeKind::Case:
      case NodeKind::AssertL:
      case NodeKind::AssertR: {
        const TyNode& t = ty(in);
        if (t.kind != TyKind::Prod || ty(t.left).kind != TyKind::Sum) {
          fail_rule(v, i, "case: input must be (A + B) * C");
          break;
        }
        TyRef a = ty(t.left).left, b = ty(t.left).right, c = t.right;
        if (nd.kind != NodeKind::AssertR) {
          uint32_t s = nd.a;
          if (typed.in[s] != ty_prod(a, c) || typed.out[s] != out) {
            fail_rule(v, i, "case: left branch must be A * C |- D");
            break;
          }
        }
        if (nd.kind == NodeKind::Case) {
          uint32_t tch = nd.b;
          if (typed.in[tch] != ty_prod(b, c) || typed.out[tch] != out)
            fail_rule(v, i, "case: right branch must be B * C |- D");
        } else if (nd.kind == NodeKind::AssertR) {
          uint32_t tch = nd.a;
          if (typed.in[tch] != ty_prod(b, c) || typed.out[tch] != out)
            fail_rule(v, i, "case: right branch must be B * C |- D");
        }
        break;
      }
      case NodeKind::Fail:
        break;
      case NodeKind::Witness:
        if (nd.declared && out != *nd.declared)
          fail_rule(v, i, "witness: output must match declared type");
        else if (nd.witness && !value_has_type(*nd.witness, out))
          fail_rule(v, i, "witness: payload must inhabit the output type");
        break;
      case NodeKind::SigHash:
        if (in != ty_sighash_mode())
          fail_rule(v, i, "sighash: input must be the mode type");
        else if (out != ty_word(256))
          fail_rule(v, i, "sighash: output must be 2^256");
        break;
    }
  }
  return v;
}

}  // namespace simplicity
