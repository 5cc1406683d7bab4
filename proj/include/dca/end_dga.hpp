#pragma once

#include <map>
#include <tuple>

#include "dca/complex.hpp"

namespace dca {

// One graded endomorphism basis element: the map sending the summand-b
// component of terms[q] to the summand-a component of terms[q - deg] by left
// multiplication with the algebra basis monomial `mon`.
struct EndBasisElem {
  int q = 0, a = 0, b = 0, mon = 0;
};

// Model of REnd_A(S) assembled from a resolution: Hom blocks per
// (cohomological degree, Adams weight), differential by graded commutation
// with d_C, composition as the product.
struct EndomorphismDga {
  ProjectiveComplex C;
  BlockComplex cx;
  std::map<BlockKey, std::vector<EndBasisElem>> basis;
  std::map<BlockKey, std::map<std::tuple<int, int, int, int>, int>> index;
  int deg_trust = 0;     // cohomology trusted for |deg| <= deg_trust
  int w_trust_min = 0;   // blocks below this Adams weight may be incomplete

  // Composition f.g = f o g of basis elements; coordinates in the block
  // (sum of degrees, sum of weights).  Throws window_error if that block is
  // not completely computed.
  Vec mul_basis(BlockKey kf, int f, BlockKey kg, int g) const;
  Vec unit() const;  // coordinates of the identity in block (0, 0)
  BlockKey unit_key() const { return BlockKey{0, 0}; }
};

EndomorphismDga end_dga(const ProjectiveComplex& C);

}  // namespace dca
