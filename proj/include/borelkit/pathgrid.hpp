#pragma once

#include <vector>

#include "borelkit/funcspace.hpp"
#include "borelkit/support.hpp"

namespace borelkit {

/// Composite Gauss-Legendre discretisation of a polyline starting at 0.
/// Panels are graded geometrically toward 0 and never straddle a vertex.
/// Node i sits at arclength lambda[i]; nodes are stored panel by panel.
struct PathGrid {
    std::vector<cplx> vertices;     ///< polyline corners, vertices[0] == 0
    std::vector<double> corner;     ///< arclength of each vertex
    std::vector<double> breaks;     ///< panel end points in arclength
    int order = 16;
    std::vector<cplx> nodes;
    std::vector<double> lambda;
    std::vector<double> weights;    ///< |ds| quadrature weights

    std::size_t panels() const { return breaks.empty() ? 0 : breaks.size() - 1; }
    double length() const { return corner.empty() ? 0.0 : corner.back(); }
    cplx point(double lam) const;
    /// Unit tangent of the piece containing lam.
    cplx tangent(double lam) const;
    /// Panel index containing lam (last panel for lam == length()).
    std::size_t panel_of(double lam) const;
    /// Arclength of a point on the path; DomainError when it is farther than tol from the path.
    double locate(cplx s, double tol = 1e-9) const;
    GridFunction zeros() const { return GridFunction::zeros(DomainTag::Path, nodes, spacing()); }
    GridFunction sample(const BorelFn& f) const { return GridFunction::sample(DomainTag::Path, nodes, f, spacing()); }
    double spacing() const;
};

struct PathGridOptions {
    int order = 16;
    double h_max = 0.5;   ///< largest panel length
    double h_min = 1e-6;  ///< first panel length at 0
};

/// Grid along the polyline through the given vertices (first vertex must be 0).
PathGrid make_path_grid(const std::vector<cplx>& vertices, const PathGridOptions& opt = {});

/// [0, A_k] followed by the horizontal halfline from A_k, cut at length halfline_length.
PathGrid path_grid_Pk(cplx A_k, double halfline_length, const PathGridOptions& opt = {});

/// Barycentric weights of the Gauss-Legendre points of the given order.
const std::vector<double>& gl_barycentric_weights(int order);

/// Value of v at arclength lam by barycentric interpolation inside the containing panel.
Scaled interpolate(const PathGrid& g, const GridFunction& v, double lam);

/// Integral of f(s) v(s) ds along the sub-path from 0 to arclength lam_end.
/// f must be smooth on each panel; the partial last panel uses interpolated values of v.
Scaled integrate_along(const PathGrid& g, const GridFunction& v, double lam_end, const std::function<cplx(cplx)>& f);

}  // namespace borelkit
