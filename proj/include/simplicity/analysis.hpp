#pragma once

#include <cstdint>

#include "simplicity/digest.hpp"
#include "simplicity/term.hpp"
#include "simplicity/typing.hpp"

namespace simplicity {

// The pair computed by the tail-composition cell analysis. The translation's
// peak extra-cell use (beyond the input and output frames) is bounded by
// max(n1, n2); the components separately bound the two translation phases.
struct TcoBound {
  uint64_t n1 = 0;
  uint64_t n2 = 0;

  bool operator==(const TcoBound& o) const {
    return n1 == o.n1 && n2 == o.n2;
  }
};

// Static bound on total cells in use at any point while running the plain
// translation: bitSize(A) + bitSize(B) + extra, saturating at the size cap.
uint64_t cell_bound(const TypedDag& typed);

// The (n1, n2) pair at the root of the tail-composition analysis.
TcoBound tco_cells(const TypedDag& typed);

// Static bound for the tail-composition-optimized translation:
// bitSize(A) + bitSize(B) + max(n1, n2).
uint64_t cell_bound_tco(const TypedDag& typed);

struct AnalysisReport {
  uint64_t input_bits = 0;
  uint64_t output_bits = 0;
  uint64_t cb = 0;       // plain-translation cell bound
  uint64_t cb_tco = 0;   // TCO-translation cell bound
  TcoBound tco_pair;
  NodeCounts counts;
  Digest256 root;
};

// All static analyses in one pass over the dag.
AnalysisReport analyze(const TypedDag& typed);

}  // namespace simplicity
