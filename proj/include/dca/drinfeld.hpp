#pragma once

#include "dca/complex.hpp"

namespace dca {

// Model of the quotient that homotopy-annihilates the marked idempotent e.
// Degree -n is spanned by tuples x0|r1|...|r_{n-1}|xn where x0 ends at a
// marked vertex, the middle factors are corner monomials, and xn starts at a
// marked vertex; degree 0 is the algebra itself.  The differential is the
// alternating sum of adjacent multiplications and the product concatenates
// through the joining factor.
struct DrinfeldModel {
  AlgebraPtr A;
  int hdeg_max = 0, w_max = 0;
  std::map<BlockKey, std::vector<std::vector<int>>> basis;  // tuples of mon ids
  std::map<BlockKey, std::map<std::vector<int>, int>> index;
  BlockComplex cx;

  std::string label(const std::vector<int>& t) const;
  // Concatenation product of two basis tuples; throws window_error when the
  // combined weight leaves the window.
  std::map<std::vector<int>, Rat> mul(const std::vector<int>& x,
                                      const std::vector<int>& y) const;
};

// Builds the model through homological degree -(hdeg_max) with one extra
// uncertified level, and verifies d^2 = 0.
DrinfeldModel drinfeld_model(AlgebraPtr A, int hdeg_max, int w_max);

CohomologyTable dq_cohomology(const DrinfeldModel& B);
CohomologyTable dq_cohomology(AlgebraPtr A, int hdeg_max, int w_max);

// Product of two chosen H^0 representatives, expanded in the H^0
// representative basis at weight w1 + w2.
Vec h0_mul(const DrinfeldModel& B, const CohomologyTable& H, int w1, int i, int w2,
           int j);

// A relation with one chosen split per monomial.  Splits at marked vertices
// evaluate as honest degree -1 tensors; a split at an unmarked vertex is kept
// as a formal pair of factors.
struct MarkedRelation {
  int relation = -1;
  std::vector<int> positions;               // split position per monomial
  std::map<std::pair<int, int>, Rat> pairs;  // (left, right) monomial ids
  std::string text;
  int src = 0, tgt = 0, weight = 0;
};

struct MarkedRelationsResult {
  std::vector<MarkedRelation> classes;  // canonical markings + quotient multiples
  std::vector<int> basis;               // independent subset, greedy in order
  int rank = 0;
  int ell_bound = 0;  // number of independent markings: sum of prod max(1, l-1)
  int dim_bound = 0;  // dim(A/AeA)^2 * ell_bound
};

// Marked relations spanning the degree -1 cohomology classes of the quotient.
// Each monomial gets one canonical marking: the leftmost interior split at a
// marked vertex, else a marked endpoint; in relations identifying a single
// arrow with composites, the composites are split at their leftmost interior
// position instead.  Monomials meeting no marked vertex cannot be marked and
// such relations are skipped.  The rank is taken modulo the boundaries of
// honest degree -2 tuples.  Quotient multiples are enumerated up to weight
// w_cap (0 = the algebra's window).
MarkedRelationsResult marked_relations(AlgebraPtr A, int w_cap = 0);

// True iff dim H^j = dim H^{j-2}, summed over weights, for every j in
// [deg_lo + 2, 0].  Throws window_error when a block in the degree range is
// not certified.
bool eta_periodicity_check(const CohomologyTable& T, int deg_lo);

}  // namespace dca
