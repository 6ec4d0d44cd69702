#pragma once

#include <cstdint>
#include <vector>

#include "borelkit/funcspace.hpp"
#include "borelkit/geometry.hpp"
#include "borelkit/poly.hpp"

namespace borelkit {

/// Taylor coefficients c_{k,beta}(eps); entries past the table are zero.
struct CoeffSeries {
    std::vector<cplx> constant;  ///< eps-independent coefficients
    std::function<cplx(int, cplx)> fn;  ///< optional closure (beta, eps) -> coefficient

    cplx at(int beta, cplx eps) const {
        if (fn) return fn(beta, eps);
        return beta < static_cast<int>(constant.size()) ? constant[static_cast<std::size_t>(beta)] : cplx(0.0);
    }
};

struct Term1 {
    int k0 = 0;
    int k1 = 0;
    int k2 = 0;
    CoeffSeries c;
};

struct ProblemSpec1 {
    std::vector<Term1> A;
    int S = 1;
    std::vector<cplx> P{1.0};  ///< ascending coefficients
    double b = 2.0;
    double xi = 1.0;
};

/// Checks P != 0, roots in the open right halfplane, S >= k1 + b k0 + b k2 / xi and S > k1,
/// and xi <= min(sigma3', varsigma3') when those are supplied (positive).
ValidationReport validate_spec1(const ProblemSpec1& spec, double sigma3p = -1.0, double varsigma3p = -1.0);

/// Pointwise recursion at one tau: returns w_0..w_{beta_max} from w_0..w_{S-1}.
std::vector<cplx> recurse_w_at(const ProblemSpec1& spec, const std::vector<cplx>& init, cplx tau, cplx eps, int beta_max,
                               double singular_tol = 1e-12);

/// Grid recursion. init holds S grid functions sharing one node set.
CoeffTable recurse_w(const ProblemSpec1& spec, const std::vector<GridFunction>& init, cplx eps, int beta_max,
                     unsigned workers = 1, double singular_tol = 1e-12);

/// tau -> sum_beta w_beta(tau) z^beta / beta!, recomputing the recursion at each point.
BorelFn make_w_evaluator(const ProblemSpec1& spec, std::vector<BorelFn> init, cplx eps, int beta_max, cplx z);

/// The map A_eps acting on U = d_z^S w (entries 0..beta_max - S), with the W_S forcing from init.
CoeffTable apply_A_eps(const ProblemSpec1& spec, const CoeffTable& U, const std::vector<GridFunction>& init, cplx eps);

struct ContractionReport {
    double max_ratio = 0.0;
    std::vector<double> ratios;
    bool divergent = false;
    double fixed_point_residual = NAN;  ///< relative series-norm residual of the recursion solution
    int trials = 0;
};

struct ContractionOptions {
    NormKind kind = NormKind::SED;
    int beta_max = 24;
    std::uint64_t seed = 1;
    std::vector<cplx> nodes;            ///< defaults to a grid on the worked H_0 strip
    std::vector<GridFunction> init;     ///< optional init for the fixed-point residual
};

ContractionReport contraction_check(const ProblemSpec1& spec, const NormParams& p, cplx eps, double R, int trials,
                                    const ContractionOptions& opt = {});

/// Largest delta in (0, delta_hi] (bisection) whose empirical contraction ratio stays below target.
double find_contraction_delta(const ProblemSpec1& spec, NormParams p, cplx eps, double target, double delta_hi,
                              const ContractionOptions& opt = {});

struct AdmissibleConstants {
    double sigma1p, sigma2p, sigma3p;
    double varsigma2p, varsigma3p;
    double delta_eta;
    double K_mn;
};

/// sigma' = (sigma1', a Delta_eta / (M - 1), K_{m;n}) and varsigma' = (sigma1', a, 1) for w = tau exp(a e^-tau).
AdmissibleConstants admissible_constants(double a, double eta, double eta1, double m, int n, double sigma1p, double M);

/// w(tau) = tau exp(a exp(-tau)) in scaled form.
BorelFn worked_example_w(double a);

struct StripBound {
    StripKind kind;
    int k;
    double I_w = 0.0;
    bool growth = false;  ///< ratio still increasing at the far edge of the grid
};

struct AdmissibleReport {
    std::vector<StripBound> strips;
    double I_w = 0.0;
    bool bounded() const {
        for (const auto& s : strips)
            if (s.growth) return false;
        return true;
    }
};

struct AdmissibleGrid {
    double re_min = -12.0;
    int n_re = 120;
    int n_im = 25;
    cplx eps{0.1, 0.0};
    double b = 2.0;
    double M = -1.0;
};

/// Grid estimate of the minimal I_w with ||w||_(0,sigma',H_k) <= I_w and ||w||_(0,varsigma',J_k) <= I_w.
AdmissibleReport verify_admissible_bounds(const BorelFn& w, const StripFamily& strips, const AdmissibleConstants& c,
                                          const AdmissibleGrid& grid = {});

}  // namespace borelkit
