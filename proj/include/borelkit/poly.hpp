#pragma once

#include <vector>

#include "borelkit/support.hpp"

namespace borelkit {

/// Polynomial with ascending coefficients p[0] + p[1] x + ...
cplx poly_eval(const std::vector<cplx>& p, cplx x);

/// All roots by Durand-Kerner iteration followed by Newton polishing.
std::vector<cplx> poly_roots(const std::vector<cplx>& p);

/// Degree after dropping trailing zeros; -1 for the zero polynomial.
int poly_degree(const std::vector<cplx>& p);

/// Ascending coefficients of prod (x - r_i).
std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots, cplx lead = 1.0);

}  // namespace borelkit
