#include "dca/pipeline.hpp"

#include <algorithm>

#include "dca/free_dga.hpp"

namespace dca {

DcaResult derived_contraction_algebra(const WeightedQuiverPresentation& p, int v,
                                      const DcaCutoffs& c) {
  if (v < 0 || v >= (int)p.vertices.size())
    throw input_error("vertex index out of range");
  if (c.w_max <= 0 || c.hdeg_max <= 0 || c.arity_max < 2)
    throw input_error("cutoffs must be positive (arity at least 2)");
  std::vector<int> expected;
  for (int u = 0; u < (int)p.vertices.size(); ++u)
    if (u != v) expected.push_back(u);
  if (p.marked != expected)
    throw input_error(
        "marked vertices must be exactly the complement of the chosen simple");

  DcaResult out;
  out.cutoffs = c;
  out.A = TruncatedAlgebra::build(p, c.w_max);
  AlgebraPtr Q = out.A->quotient_by_idempotent_ideal();
  if (Q->dim_weight(0) != 1)
    throw input_error("quotient by the marked idempotent is not local");
  out.quotient_finite = Q->certify_finite();

  ProjectiveComplex C = resolve_simple(out.A, v, c.hdeg_max, c.w_max);
  if (!verify_complex(C))
    throw internal_error("resolution failed verification");
  out.E = std::make_shared<EndomorphismDga>(end_dga(C));
  out.mm = transfer_minimal_model(view_of(*out.E), c.arity_max, 0, c.w_max);
  out.dual = koszul_dual(out.mm.M);
  return out;
}

CohomologyTable free_dga_cohomology(const FreeDgaPresentation& F, int w_abs) {
  FreeDgaTruncation T = truncate_free_dga(F, -w_abs, 0);
  return cohomology(T.cx);
}

}  // namespace dca
