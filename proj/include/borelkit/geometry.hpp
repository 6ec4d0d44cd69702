#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "borelkit/support.hpp"

namespace borelkit {

enum class StripKind { H, J };

/// Closed horizontal band {Re <= 0, im_lo <= Im <= im_hi}.
struct Strip {
    double im_lo = 0.0;
    double im_hi = 0.0;
    StripKind kind = StripKind::H;

    double mid() const { return 0.5 * (im_lo + im_hi); }
    bool contains(cplx tau, double slack = 1e-12) const {
        return tau.real() <= slack && tau.imag() >= im_lo - slack && tau.imag() <= im_hi + slack;
    }
};

/// H_k and J_k for k = -n..n, stored at index k + n.
struct StripFamily {
    int n = 1;
    std::vector<Strip> H;
    std::vector<Strip> J;

    const Strip& h(int k) const { return H.at(static_cast<std::size_t>(k + n)); }
    const Strip& j(int k) const { return J.at(static_cast<std::size_t>(k + n)); }
    /// Im-range of the hull HJ_n.
    std::pair<double, double> hull() const;
};

/// The worked family H_k: [pi/2+eta+2k pi, 3pi/2-eta+2k pi], J_k: [3pi/2-eta-eta1+2(k-1)pi, pi/2+eta+eta1+2k pi].
StripFamily worked_strip_family(int n, double eta, double eta1);

struct Violation {
    std::string condition;
    std::vector<int> indices;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    void add(std::string condition, std::vector<int> indices, std::string message) {
        violations.push_back({std::move(condition), std::move(indices), std::move(message)});
    }
};

ValidationReport validate_strip_family(const StripFamily& f);

/// Unbounded open sector in the Borel plane.
struct UnboundedSector {
    double direction = 0.0;
    double half_aperture = 0.1;

    bool in_right_halfplane() const { return std::abs(direction) + half_aperture < kPi / 2; }
    bool contains(cplx tau) const;
};

/// Open bounded sector {0 < |z| < radius, arg z in (angle_lo, angle_hi) mod 2 pi}.
struct BoundedSector {
    double angle_lo = 0.0;
    double angle_hi = 0.0;
    double radius = 1.0;

    double bisector() const { return 0.5 * (angle_lo + angle_hi); }
    double aperture() const { return angle_hi - angle_lo; }
    bool contains(cplx z) const;
};

struct GoodCovering {
    int n = 1;
    std::vector<BoundedSector> hj;  ///< E^k, k = -n..n at index k + n
    std::vector<BoundedSector> s;   ///< E_{S_{d_p}}, p = 0..iota-1

    const BoundedSector& e_hj(int k) const { return hj.at(static_cast<std::size_t>(k + n)); }
};

ValidationReport validate_good_covering(const GoodCovering& g);

/// Angular overlap of two sectors as a list of intervals on the universal cover of the first one.
std::vector<std::pair<double, double>> angular_intersection(const BoundedSector& a, const BoundedSector& b);

/// The n = 1, iota = 2 covering used by the desk fixtures (five sectors, staggered overlaps).
GoodCovering example_good_covering(double radius = 1.0);

struct LShape {
    Strip strip;
    double rect_im_lo = 0.0;
    double rect_im_hi = 0.0;
    double upsilon = -0.5;  ///< left edge of the rectangle, negative

    bool in_rectangle(cplx tau, double slack = 1e-12) const {
        return tau.real() <= slack && tau.real() >= upsilon - slack && tau.imag() >= rect_im_lo - slack &&
               tau.imag() <= rect_im_hi + slack;
    }
    bool contains(cplx tau, double slack = 1e-12) const { return in_rectangle(tau, slack) || strip.contains(tau, slack); }
};

/// Builds the L-shape attached to a strip: rectangle Im in [0, im_hi] or [im_lo, 0].
LShape make_lshape(const Strip& strip, double upsilon);

// Path pieces.
struct Segment {
    cplx z0, z1;
};
/// {anchor - s : s >= 0}
struct HorizontalHalfline {
    cplx anchor;
};
/// {r e^{i angle} : r >= r_lo}
struct RadialHalfline {
    double angle = 0.0;
    double r_lo = 0.0;
};
/// r e^{i theta}, theta from theta0 to theta1 (either orientation).
struct Arc {
    double radius = 1.0;
    double theta0 = 0.0;
    double theta1 = 0.0;
};

using PathPiece = std::variant<Segment, HorizontalHalfline, RadialHalfline, Arc>;

struct PathSpec {
    std::vector<PathPiece> pieces;
    int nodes_per_piece = 32;
    double halfline_truncation_tol = 1e-16;
    std::optional<cplx> c_point;  ///< corner point c of L_{0,tau} when relevant
};

cplx piece_start(const PathPiece& p);
/// End point; unbounded pieces report nullopt.
std::optional<cplx> piece_end(const PathPiece& p);
bool is_unbounded(const PathPiece& p);
/// Direction of travel at infinity for unbounded pieces (radians).
double unbounded_direction(const PathPiece& p);
/// True when every piece starts where the previous one ended.
bool path_connected(const PathSpec& p, double tol = 1e-12);

/// [0, A_k] followed by the horizontal halfline from A_k toward -infinity.
PathSpec build_path_Pk(cplx A_k);

/// Point where a halfline is cut when the integrand decays like exp(-rate * s).
cplx halfline_truncation_point(const PathPiece& p, double decay_rate, double tol);

/// L_{0,tau} inside an L-shape: straight segment when tau is in the rectangle,
/// otherwise [0, i Im tau] then [i Im tau, tau].
PathSpec build_L0tau(cplx tau, const LShape& dom);

/// h_q = rho log|eps t| + i rho (arg t + arg eps - chi_q), q = k, k+1.
std::pair<cplx, cplx> build_h_points(double rho, double chi_k, double chi_k1, cplx eps, cplx t,
                                     const Strip* h_k = nullptr, const Strip* h_k1 = nullptr);

/// Chooses A_k on the midline of an H strip so that the decay condition holds at all corners
/// of eps_sector x t_sector. When the admissible set is bounded in Re the farthest point is
/// taken, capped at max_abs_re; otherwise the nearest admissible point no closer than min_abs_re.
cplx choose_Ak(const Strip& h, const BoundedSector& eps_sector, const BoundedSector& t_sector, double eta_k,
               double min_abs_re = 1.0, double max_abs_re = INFINITY);

/// Reduces an angle to (-pi, pi].
double wrap_angle(double a);

}  // namespace borelkit
