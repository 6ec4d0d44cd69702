#pragma once

#include <string>
#include <vector>

#include "borelkit/asymptotics.hpp"
#include "borelkit/cauchy1.hpp"
#include "borelkit/cauchy2.hpp"
#include "borelkit/geometry.hpp"
#include "borelkit/laplace.hpp"

namespace borelkit {

/// h(s + 1) = (a h(s) + 1) / s solved by h_n(s) = int_{C_n} exp(-s tau) exp(tau - a) exp(a e^tau) d tau,
/// C_n = [0, i theta] followed by the horizontal ray from i theta to +infinity.
struct BfiCase {
    double a = 0.5;
    int n = 0;
    double theta = kPi;
    std::vector<cplx> s_samples;
    /// Throws DomainError unless a > 0 and theta lies strictly inside (pi/2 + 2 n pi, 3 pi/2 + 2 n pi).
    void check() const;
};

struct BfiValue {
    cplx value{0.0, 0.0};
    Scaled scaled;         ///< same value, representable below the double range
    double error = 0.0;    ///< absolute
    double ray_end = 0.0;  ///< Re tau where the ray is cut
};

BfiValue bfi_solve_detail(const BfiCase& c, cplx s, double tol = 1e-15);
cplx bfi_solve(const BfiCase& c, cplx s);

/// h_{n+1}(s) - h_n(s) as one contour integral: two horizontal rays in the windows of n and n + 1
/// joined by a vertical segment through the saddle of exp(-s tau + a e^tau) at Re tau = Log(|s| / a).
/// Avoids the cancellation of subtracting two separately computed solutions.
BfiValue bfi_branch_difference(double a, int n, cplx s, double tol = 1e-15);

struct BfiRow {
    cplx s;
    cplx h_s, h_s1;
    double residual = 0.0;  ///< |h(s+1) - (a h(s) + 1)/s| over the largest of |h(s+1)|, |a h(s)/s|, |1/s|
};

struct BfiReport {
    BfiCase c;
    std::vector<BfiRow> rows;
    double max_residual = 0.0;
};

/// 5 x 5 grid with Re s in [2, 10] and Im s in [-5, 5].
std::vector<cplx> bfi_default_grid();
BfiReport bfi_residuals(const BfiCase& c, unsigned workers = 1);

/// Initial data of the first problem: "worked" is tau exp(a e^-tau), "tau" is tau, "zero" is 0.
BorelFn make_init(const std::string& kind, double a);

struct EpsLadder {
    double eps_max = 0.5;
    int n = 16;
    double ratio = 0.70710678118654752;
};

struct Theorem1Config {
    std::string name = "desk-theorem1";
    ProblemSpec1 spec;
    std::vector<std::string> init{"worked", "worked"};
    double a = 2.0;                 ///< parameter of the worked initial data and of the saddle location
    StripFamily strips;
    GoodCovering covering;
    std::vector<double> directions; ///< Borel directions d_p; empty selects bisector(E_{d_p}) + arg t
    double decay_eta = 0.05;        ///< margin used when choosing A_k
    double min_abs_re = 1.0;        ///< bounds on |Re A_k|
    double max_abs_re = 4.0;
    cplx t{0.1, 0.0};
    cplx z{0.5, 0.0};
    int beta_max = 24;
    EpsLadder ladder;
    double arc_radius = 3.0;        ///< pole-aware arc radius for junction and sector differences
    unsigned workers = 1;
    LaplaceOptions laplace;
    FlatnessOptions flatness;
};

/// The bundled single-term fixture: S = 2, A = {(0,1,0)} with c = 0.2, P with roots 1, exp(+-1.2 i).
Theorem1Config desk_theorem1_config();

struct SectorValue {
    std::string sector;
    cplx eps;
    Scaled u;
    double error = 0.0;  ///< absolute, in the scale of u.e
};

struct NeighbourResult {
    std::string name;
    std::string kind;               ///< "hj", "junction" or "sector"
    FlatClass expected = FlatClass::Inconclusive;
    double arg_eps = 0.0;
    SectorSample sample;
    std::vector<double> log_error;  ///< log of the absolute error estimate per ladder point
    std::vector<bool> below_noise;
    FlatnessFit fit;
    FlatClass halved_class = FlatClass::Inconclusive;
    bool stable = false;
    bool degenerate = false;        ///< every difference is below the quadrature noise floor
    bool pass = false;
};

struct Theorem1Report {
    std::string name;
    std::vector<cplx> A;            ///< chosen A_k, k = -n..n
    std::vector<double> directions;
    std::vector<SectorValue> sectors;
    std::vector<NeighbourResult> pairs;
    bool degenerate = false;
    bool all_pass = false;
    std::string diagnostic;
};

Theorem1Report run_theorem1_desk(const Theorem1Config& cfg);

struct Theorem2Config {
    std::string name = "desk-theorem2";
    Theorem1Config first;           ///< supplies the forcing w and the geometry
    bool use_forcing = true;
    ProblemSpec2 spec;
    std::vector<std::string> init;  ///< S_B kinds; empty means zero
    int k = 0;                      ///< HJ path P_k used for the run
    cplx eps{-0.1, 0.02};
    cplx t{0.1, 0.0};
    cplx z{0.5, 0.0};
    int beta_max = 10;
    double fd_step = 0.05;          ///< baseline step in 1/t, relative to |1/t|
    int refinements = 3;
    PathGridOptions grid{16, 0.25, 1e-7};
    double halfline_factor = 60.0;  ///< halfline length in units of |eps t| / decay margin
    double identity_tol = 1e-4;
};

/// The bundled fixture: B = {(3,1,0)}, b = 1.5, S_B = 3, forcing from the first desk problem.
Theorem2Config desk_theorem2_config();

struct IdentityCheck {
    int term = 0;
    int d = 0, l1 = 0;
    std::vector<double> steps;
    std::vector<double> rel_errors;
    double observed_order = 0.0;
    bool pass = false;
};

struct Theorem2Report {
    std::string name;
    cplx A;
    Scaled y;
    double y_error = 0.0;
    std::vector<IdentityCheck> checks;
    bool zero_solution = false;     ///< y vanishes identically (zero forcing and data)
    bool all_pass = false;
    std::string diagnostic;
};

Theorem2Report run_theorem2_desk(const Theorem2Config& cfg);

/// Key=value report text.
std::string describe(const BfiReport& r);
std::string describe(const Theorem1Report& r);
std::string describe(const Theorem2Report& r);

}  // namespace borelkit
