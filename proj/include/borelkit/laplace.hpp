#pragma once

#include <optional>
#include <vector>

#include "borelkit/funcspace.hpp"
#include "borelkit/geometry.hpp"
#include "borelkit/pathgrid.hpp"
#include "borelkit/quadrature.hpp"

namespace borelkit {

struct LaplaceOptions {
    double tol = 1e-13;              ///< relative quadrature tolerance
    double truncation_tol = 1e-18;   ///< relative size of the neglected tail of unbounded pieces
    bool allow_nonzero_at_origin = false;
    int max_extensions = 12;         ///< halfline doublings when the integrand decays slower than the kernel
};

struct LaplaceResult {
    Scaled value;
    double error = 0.0;              ///< absolute, in the scale of value.e
    std::vector<double> piece_errors;
    cplx as_complex() const { return value.value(); }
    double abs_error() const { return error * std::exp(value.e); }
};

/// w(u, z, eps) for fixed z and eps along a path, and the variables of the kernel exp(-u / (eps t)) / u.
struct LaplaceJob {
    BorelFn integrand;
    PathSpec path;
    cplx eps{0.1, 0.0};
    cplx t{1.0, 0.0};
    LaplaceOptions opt;
};

/// cos(theta - arg eps - arg t); positive iff the kernel decays along direction theta.
double decay_margin(double theta, cplx eps, cplx t);

/// int_path w(u) exp(-u / (eps t)) du / u. Unbounded pieces are cut where the kernel tail is below
/// truncation_tol; the error is |order 32 - order 16| per piece plus the tail bound.
/// Throws DomainError when an unbounded piece violates the decay condition or w(0) != 0.
LaplaceResult laplace_eval(const LaplaceJob& job);
LaplaceResult laplace_eval(const BorelFn& w, const PathSpec& path, cplx eps, cplx t, const LaplaceOptions& opt = {});

/// Same transform for a grid function sampled on a path grid (the grid must reach far enough for the tail).
LaplaceResult laplace_on_grid(const PathGrid& g, const GridFunction& v, cplx eps, cplx t);

/// Interpolating evaluator of a table at fixed z on a path grid.
GridFunction assemble_on_grid(const CoeffTable& tab, cplx z);

/// int_0^{Gamma Log(Omega s / eps)} V(tau) exp(-s tau / eps) d tau along the straight segment.
cplx truncated_laplace(const std::function<cplx(cplx)>& V, cplx Gamma, cplx Omega, cplx s, cplx eps,
                       double tol = 1e-13);

struct DifferenceResult {
    std::vector<LaplaceResult> pieces;
    Scaled total;
    double error = 0.0;              ///< absolute, in the scale of total.e
    std::optional<cplx> direct;      ///< plain difference of the two transforms when requested
    std::optional<double> direct_error;
    double log_abs() const { return total.log_abs(); }
};

/// u_{k+1} - u_k = -int_{L_{h_k,inf}} + int_{[h_k, h_{k+1}]} + int_{L_{h_{k+1},inf}} with horizontal halflines.
/// When both A points are given the direct difference over P_{k+1} and P_k is also evaluated.
DifferenceResult difference_decomposition(const BorelFn& w, cplx h_k, cplx h_k1, cplx eps, cplx t,
                                          const LaplaceOptions& opt = {}, std::optional<cplx> A_k = std::nullopt,
                                          std::optional<cplx> A_k1 = std::nullopt);

/// Difference of the transforms along the rays gamma_b and gamma_a:
/// halfline L_{gamma_b, r/2} - halfline L_{gamma_a, r/2} + arc of radius r/2 from gamma_a to gamma_b.
/// w_a and w_b must agree on D(0, r); the arc uses w_a.
DifferenceResult sector_difference_decomposition(const BorelFn& w_a, const BorelFn& w_b, double r, double gamma_a,
                                                 double gamma_b, cplx eps, cplx t, const LaplaceOptions& opt = {},
                                                 bool with_direct = false);

struct PoleAwareOptions {
    double R = 3.0;                  ///< arc radius, larger than every listed pole
    std::vector<cplx> poles;         ///< singularities of the integrand
    double loop_radius = 0.0;        ///< 0 selects min(10 |eps t|, half the pole separation)
    int loop_points = 128;
};

/// int_X w - int_Y w for two paths from 0, both leaving the disc |u| <= R once.
/// Evaluated as tail_X - tail_Y + arc - sum_p n_p loop_p, with n_p the winding number of
/// prefix_Y + arc - prefix_X around p. Every piece is far smaller than the true difference
/// when R exceeds the pole moduli, which avoids cancellation between the two transforms.
DifferenceResult pole_aware_difference(const BorelFn& w, const PathSpec& X, const PathSpec& Y, cplx eps, cplx t,
                                       const PoleAwareOptions& pa, const LaplaceOptions& opt = {});

/// CCW trapezoid integral of w(u) exp(-u/(eps t)) / u on the circle |u - p| = rho.
Scaled loop_integral(const BorelFn& w, cplx p, double rho, cplx eps, cplx t, int points);

}  // namespace borelkit
