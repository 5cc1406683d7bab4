#pragma once

#include "dca/ainfty.hpp"
#include "dca/free_dga.hpp"

namespace dca {

// Reduced bar construction of a minimal A-infinity algebra, truncated to the
// weight window of the model.  Basis words are tuples of non-unit classes;
// the differential applies every operation to every consecutive subword.
struct BarTruncation {
  BlockComplex cx;
  std::map<BlockKey, std::vector<std::vector<int>>> basis;
  std::map<BlockKey, std::map<std::vector<int>, int>> index;
};

BarTruncation bar_construction(const AInfinityStructure& M);

// Koszul dual: the free dga on duals of the non-unit classes, with the
// differential dual to the full operation table (cobar of the bar coalgebra).
// A generator dual to a class of bidegree (deg, w) sits in (1 - deg, -w).
struct KoszulDual {
  FreeDgaPresentation pres;
  std::vector<int> gen_gid;  // model class each generator dualizes
};

KoszulDual koszul_dual(const AInfinityStructure& M);

// Dualize twice and compare: the cohomology of the truncated double dual must
// reproduce the block dimensions of the input model inside |weight| <= w_abs.
bool double_dual_check(const AInfinityStructure& M, int arity_max, int w_abs);

}  // namespace dca
