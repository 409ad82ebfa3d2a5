#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "simplicity/digest.hpp"
#include "simplicity/machine.hpp"
#include "simplicity/term.hpp"
#include "simplicity/typing.hpp"

namespace simplicity {

// A jet: a native fast path for one specific term, identified by that term's
// commitment root. The native must agree with the term everywhere; the
// machine substitutes the call wherever a compiled subterm has this root and
// exactly these types.
struct Jet {
  std::string name;
  Digest256 root;
  TyRef ty_in = 0;
  TyRef ty_out = 0;
  std::shared_ptr<const JetNative> native;
  std::shared_ptr<const TypedDag> spec;  // the term the native stands in for
};

struct JetVerdict {
  bool ok = true;
  uint64_t checked = 0;   // inputs compared
  std::string detail;     // first disagreement, if any
};

// Checks the native against the spec term's denotational semantics: over the
// whole domain when value_count(tyIn) <= exhaustiveLimit, otherwise on
// `samples` seeded pseudo-random inputs. Spec terms must be core.
JetVerdict verify_jet(const Jet& jet, uint64_t exhaustive_limit = 1u << 16,
                      uint64_t samples = 1000, uint64_t seed = 1);

class JetRegistry {
 public:
  // Validates and registers. Throws Error if the root is already registered,
  // if the spec contains witness nodes or is not core, if the spec's
  // inferred types disagree with the jet's, if the native's cell counts
  // disagree with the types, or if a quick sampled verification disagrees.
  void add(Jet jet, uint64_t verify_samples = 4);

  // The registered jet with this root and exactly these types, or null.
  const Jet* find(const Digest256& root, TyRef in, TyRef out) const;
  const Jet* find_by_name(const std::string& name) const;

  const std::vector<Jet>& list() const { return jets_; }  // registration order

 private:
  std::vector<Jet> jets_;
  std::unordered_map<Digest256, size_t, DigestHash> by_root_;
};

// The built-in registry: word adders, full adders, subtractors, multipliers,
// comparisons, bitwise logic, byte constants, the SHA-256 block compression,
// and the toy signature check. Built once, on first use.
const JetRegistry& default_registry();

}  // namespace simplicity
