#include "simplicity/analysis.hpp"

#include <algorithm>
#include <vector>

#include "simplicity/merkle.hpp"
#include "simplicity/ty.hpp"

namespace simplicity {

namespace {

uint64_t sat_add(uint64_t a, uint64_t b) {
  // Operands never exceed the cap, so the sum cannot wrap uint64.
  return std::min(a + b, kSizeCap);
}

// Extra cells (beyond the input and output frames) of the plain translation.
std::vector<uint64_t> extra_cells(const TypedDag& typed) {
  const TermDag& dag = typed.dag;
  std::vector<uint64_t> e(dag.nodes.size(), 0);
  for (size_t i = 0; i < dag.nodes.size(); ++i) {
    const Node& n = dag.nodes[i];
    switch (n.kind) {
      case NodeKind::Iden:
      case NodeKind::Unit:
      case NodeKind::Fail:
      case NodeKind::Witness:
      case NodeKind::SigHash:
        e[i] = 0;
        break;
      case NodeKind::Injl:
      case NodeKind::Injr:
      case NodeKind::Take:
      case NodeKind::Drop:
      case NodeKind::AssertL:
      case NodeKind::AssertR:
        e[i] = e[n.a];
        break;
      case NodeKind::Case:
      case NodeKind::Pair:
        e[i] = std::max(e[n.a], e[n.b]);
        break;
      case NodeKind::Comp:
        e[i] = sat_add(bit_size(typed.out[n.a]), std::max(e[n.a], e[n.b]));
        break;
    }
  }
  return e;
}

std::vector<TcoBound> tco_pairs(const TypedDag& typed) {
  const TermDag& dag = typed.dag;
  std::vector<TcoBound> e(dag.nodes.size());
  for (size_t i = 0; i < dag.nodes.size(); ++i) {
    const Node& n = dag.nodes[i];
    switch (n.kind) {
      case NodeKind::Iden:
      case NodeKind::Unit:
      case NodeKind::Fail:
      case NodeKind::Witness:
      case NodeKind::SigHash:
        e[i] = {0, 0};
        break;
      case NodeKind::Injl:
      case NodeKind::Injr:
      case NodeKind::Take:
      case NodeKind::Drop:
      case NodeKind::AssertL:
      case NodeKind::AssertR:
        e[i] = e[n.a];
        break;
      case NodeKind::Case:
        e[i] = {std::max(e[n.a].n1, e[n.b].n1),
                std::max(e[n.a].n2, e[n.b].n2)};
        break;
      case NodeKind::Pair: {
        const TcoBound& s = e[n.a];
        const TcoBound& t = e[n.b];
        e[i] = {t.n1, std::max({s.n1, s.n2, t.n2})};
        break;
      }
      case NodeKind::Comp: {
        const TcoBound& s = e[n.a];
        const TcoBound& t = e[n.b];
        uint64_t b = bit_size(typed.out[n.a]);
        e[i] = {std::max({sat_add(b, s.n1), t.n1, sat_add(b, t.n2)}),
                sat_add(b, s.n2)};
        break;
      }
    }
  }
  return e;
}

uint64_t frame_bits(const TypedDag& typed) {
  return sat_add(bit_size(typed.root_in()), bit_size(typed.root_out()));
}

}  // namespace

uint64_t cell_bound(const TypedDag& typed) {
  return sat_add(frame_bits(typed), extra_cells(typed)[typed.dag.root]);
}

TcoBound tco_cells(const TypedDag& typed) {
  return tco_pairs(typed)[typed.dag.root];
}

uint64_t cell_bound_tco(const TypedDag& typed) {
  TcoBound p = tco_cells(typed);
  return sat_add(frame_bits(typed), std::max(p.n1, p.n2));
}

AnalysisReport analyze(const TypedDag& typed) {
  AnalysisReport r;
  r.input_bits = bit_size(typed.root_in());
  r.output_bits = bit_size(typed.root_out());
  r.cb = cell_bound(typed);
  r.tco_pair = tco_cells(typed);
  r.cb_tco = sat_add(frame_bits(typed), std::max(r.tco_pair.n1, r.tco_pair.n2));
  r.counts = node_counts(typed.dag, &typed);
  r.root = merkle_root(typed.dag);
  return r;
}

}  // namespace simplicity
