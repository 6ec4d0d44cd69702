#pragma once

#include <cstdint>
#include <vector>

#include "borelkit/cauchy1.hpp"
#include "borelkit/pathgrid.hpp"
#include "borelkit/quadrature.hpp"

namespace borelkit {

struct Term2 {
    int l0 = 0;
    int l1 = 1;
    int l2 = 0;
    CoeffSeries d;
    int d01() const { return l0 - 2 * l1; }
};

struct ProblemSpec2 {
    std::vector<Term2> B;
    int S_B = 1;
    std::vector<cplx> P{1.0};  ///< ascending coefficients
    double b = 2.0;
};

/// Checks d_{l0,l1} >= 1, l1 >= 1, S_B >= b (l0 - l1) + l2, S_B > l2, and P_B constant or with roots
/// in the open right halfplane. Roots inside forbidden sectors are reported when sectors are given.
ValidationReport validate_spec2(const ProblemSpec2& spec, const std::vector<UnboundedSector>& forbidden = {},
                                double disc_radius = 0.0);

/// Integer coefficients A_{l1,1..l1-1} with t^{2 l1} d_t^{l1} = (t^2 d_t)^{l1} + sum_p A_{l1,p} t^{l1-p} (t^2 d_t)^p.
std::vector<std::int64_t> tahara_coeffs_exact(int l1);
std::vector<double> tahara_coeffs(int l1);

/// Applies the expanded right side to t^m and returns the integer coefficient of t^{m + l1};
/// the left side gives m (m-1) ... (m-l1+1).
std::int64_t tahara_rhs_on_monomial(int l1, int m);
std::int64_t falling_factorial(int m, int k);

struct KernelResult {
    cplx value{0.0, 0.0};
    double error = 0.0;  ///< |one panel - two panels| summed over segments
};

/// int_{L} (tau - s)^g0 s^g1 v(s) ds (or ds/s) along the segments of a prepared path.
KernelResult convolve_power_kernel(const std::function<cplx(cplx)>& v, cplx tau, int g0, int g1, const PathSpec& L0,
                                   bool divide_by_s, int order = 32);
/// L_{0,tau} inside an L-shaped domain.
KernelResult convolve_power_kernel(const std::function<cplx(cplx)>& v, cplx tau, int g0, int g1, const LShape& dom,
                                   bool divide_by_s, int order = 32);
/// Straight segment [0, tau] inside S_d union D(0, r).
KernelResult convolve_power_kernel(const std::function<cplx(cplx)>& v, cplx tau, int g0, int g1,
                                   const UnboundedSector& dom, double r, bool divide_by_s, int order = 32);
/// Grid-function version on a path grid: the sub-path from 0 to node i plays the role of L_{0,tau}.
Scaled convolve_power_kernel(const PathGrid& g, const GridFunction& v, std::size_t i, int g0, int g1, bool divide_by_s);

/// v_{beta + S_B} from the recursion on a path grid, for beta + S_B <= beta_max.
/// forcing entries beyond its table are treated as zero; an empty forcing table means w = 0.
CoeffTable recurse_v(const ProblemSpec2& spec, const PathGrid& g, const std::vector<GridFunction>& init,
                     const CoeffTable& forcing, cplx eps, int beta_max, unsigned workers = 1,
                     double singular_tol = 1e-12);

}  // namespace borelkit
