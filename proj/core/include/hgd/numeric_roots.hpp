#pragma once

#include "hgd/numeric.hpp"
#include "hgd/polynomial.hpp"

#include <vector>

namespace hgd {

// Approximates all complex roots of a squarefree polynomial (Aberth iteration:
// a long double phase followed by refinement at `prec` bits).  The result is
// only a numerical approximation; callers verify anything they rely on.
std::vector<Complex> approximate_roots(const IntPoly& f, mpfr_prec_t prec);

// A comfortable working precision for root approximations of f.
mpfr_prec_t root_precision_for(const IntPoly& f);

}  // namespace hgd
