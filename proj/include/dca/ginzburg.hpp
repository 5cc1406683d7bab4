#pragma once

#include "dca/free_dga.hpp"
#include "dca/path_algebra.hpp"

namespace dca {

// Cyclic derivative of the superpotential with respect to one arrow: for
// every occurrence of the arrow in a term, rotate that occurrence to the
// front and drop it.  Rotation-invariant by construction; an absent arrow
// gives the zero polynomial.
PathPoly cyclic_derivative(const WeightedQuiverPresentation& p,
                           const Superpotential& W, int arrow);

// Dga on the doubled quiver: each arrow a in degree 0, its reverse a* in
// degree -1, and one loop z per vertex in degree -2, with
// d(a*) = -dW/da and d(z_i) = sum_a e_i [a, a*] e_i.  Weights are negated
// so the result lives on the dual side: wt(a) = -w_a, wt(a*) = w_a - w_W,
// wt(z) = -w_W, where w_W is the common weight of the superpotential terms
// (0 when W has no terms).  Throws input_error when the terms are of mixed
// weight and internal_error should d^2 fail, which would refute a theorem.
FreeDgaPresentation ginzburg_dga(const WeightedQuiverPresentation& p,
                                 const Superpotential& W);

// Path algebra of the quiver modulo the cyclic derivatives of W, truncated
// at w_max.  Equals H^0 of the Ginzburg dga in each weight.
AlgebraPtr jacobi_algebra(const WeightedQuiverPresentation& p,
                          const Superpotential& W, int w_max);

// Restriction to a nonempty vertex subset: arrows with both endpoints kept
// survive, the superpotential and the relations keep exactly the terms
// supported on surviving arrows, and marked vertices are intersected with
// the kept set.  Keeping every vertex returns the document unchanged.
InputDocument contraction_subquiver(const InputDocument& doc,
                                    const std::vector<int>& keep);

}  // namespace dca
