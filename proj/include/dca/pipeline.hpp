#pragma once

#include <memory>

#include "dca/drinfeld.hpp"
#include "dca/koszul.hpp"

namespace dca {

struct DcaCutoffs {
  int w_max = 0;
  int hdeg_max = 0;
  int arity_max = 0;
};

// Output of the full pipeline: the presentation lives in dual.pres; the
// intermediate stages are kept for reporting and further checks.  The
// certified window is (weight <= w_max, homological degree <= hdeg_max,
// arity <= arity_max) carried in cutoffs.
struct DcaResult {
  AlgebraPtr A;
  std::shared_ptr<EndomorphismDga> E;
  MinimalModel mm;
  KoszulDual dual;
  DcaCutoffs cutoffs;
  // Whether the quotient by the marked idempotent was certified finite
  // inside the weight window; false may just mean the window is too small.
  bool quotient_finite = false;
};

// Koszul dual of the derived endomorphism algebra of the simple at v:
// resolve the simple, take its endomorphism dga, transfer to a minimal
// A-infinity model, and dualize.  The marked vertices must be exactly the
// complement of {v}, and the quotient by the marked idempotent must be
// local (a single simple at v).
DcaResult derived_contraction_algebra(const WeightedQuiverPresentation& p, int v,
                                      const DcaCutoffs& c);

// Cohomology of a negatively-weighted free dga, exact per weight down to
// dual weight -w_abs.
CohomologyTable free_dga_cohomology(const FreeDgaPresentation& F, int w_abs);

}  // namespace dca
