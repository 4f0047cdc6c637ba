#ifndef JWB_CONSTRUCTIONS_HPP
#define JWB_CONSTRUCTIONS_HPP

#include "jwb/assoc.hpp"
#include "jwb/composition.hpp"
#include "jwb/cubic_jordan.hpp"

namespace jwb {

struct HermitianParams {
  Scalar g1, g2, g3;  // all invertible
};

// Twisted 3x3 hermitian matrices over a composition algebra, coordinates
// (a1, a2, a3; c1, c2, c3) with off-diagonal blocks x23 = c1, x31 = c2,
// x12 = c3 and hermitian rule x_ji = g_j^{-1} conj(x_ij) g_i. The adjoint is
// recovered from the polarized norm by solving T(x#, y) = DyN(x) on the
// basis; a failing axiom suite aborts the construction.
CubicJordanAlgebra hermitian_h3(const CompositionAlgebra& c, const HermitianParams& gamma);

// Generalized first Tits construction J(A, mu) on A + A + A for an
// admissible A (multiplicative cubic norm) and invertible mu.
CubicJordanAlgebra first_tits(const AssocAlgebra& a, const Scalar& mu);

// Restriction of a cubic form to the coordinate block [lo, lo+m); throws if
// the adjoint or base point leaves the block (i.e. the block is not closed).
CubicForm restrict_block(const CubicForm& cf, int lo, int m);

}  // namespace jwb

#endif
