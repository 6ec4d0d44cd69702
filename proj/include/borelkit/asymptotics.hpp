#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "borelkit/geometry.hpp"
#include "borelkit/support.hpp"

namespace borelkit {

/// Values of a function of eps on points of a sector. Values are stored scaled so that
/// super-exponentially small differences stay representable.
struct SectorSample {
    std::vector<cplx> eps;
    std::vector<Scaled> values;
    BoundedSector sector{-kPi, kPi, 1.0};
    void check() const;
    /// log10 of max |eps| / min |eps|.
    double decades() const;
};

/// Geometric ladder |eps| = eps_max ratio^j, j = 0..n-1, at angle arg.
std::vector<cplx> geometric_ladder(double eps_max, int n, double ratio = 0.70710678118654752, double arg = 0.0);
/// Ladder inside the closed subsector spanning `fraction` of the aperture around the bisector;
/// angles cycle through n_angles evenly spaced positions.
std::vector<cplx> sector_ladder(const BoundedSector& s, double eps_max, int n, int n_angles = 1,
                                double ratio = 0.70710678118654752, double fraction = 0.85);
SectorSample sample_function(const std::vector<cplx>& eps, const std::function<Scaled(cplx)>& f,
                             const BoundedSector& sector = {-kPi, kPi, 1.0});

struct ExtractResult {
    std::vector<cplx> a;
    std::vector<double> spread;  ///< agreement of neighbouring extrapolation windows per coefficient
    bool truncated = false;      ///< true when extraction stopped early on an unstable coefficient
};

/// Limit extraction along the ladder: a_k is the k-th Taylor coefficient at eps = 0 of the polynomial
/// interpolating f on a window of consecutive ladder points, taken from the window that agrees best with
/// its neighbours (shifted by one point and raised by one degree). This equals the extrapolation of
/// (f - sum_{j<k} a_j eps^j) / eps^k with the lower coefficients taken from the same window.
ExtractResult extract_coeffs(const SectorSample& s, int K, double max_spread = 1e-2);

enum class GevreyLevel { One, OnePlus };
enum class GevreyClass { Gevrey1, Gevrey1Plus, Inconclusive };
std::string to_string(GevreyClass c);

struct GevreyFit {
    GevreyLevel level = GevreyLevel::One;
    GevreyClass cls = GevreyClass::Inconclusive;
    bool passes = false;
    double C = 0.0, M = 0.0;
    double M_lower = 0.0, M_upper = 0.0;  ///< growth rates fitted on the two halves of the N range
    double drift = INFINITY;              ///< M_upper / M_lower - 1
    std::vector<int> N;
    std::vector<double> log_ratio;        ///< log sup |remainder| / (w_N |eps|^N) per N
    std::vector<int> used_points;         ///< samples above the roundoff floor per N
    std::string diagnostic;
};

/// Gevrey weight log w_N: N log(N / e) for level 1, N log(N / Log N) for level 1+.
double gevrey_log_weight(GevreyLevel level, int N);

/// Checks sup |f - sum_{k<N} a_k eps^k| <= C M^N w_N |eps|^N over the sample for N = N_min..N_max.
/// Remainders below the roundoff floor of the partial sum are excluded. log ratio_N is fitted
/// linearly in N on the lower and upper halves of the N range; the check passes when the upper
/// rate exceeds the lower one by less than max_drift (relative).
GevreyFit gevrey_check(const SectorSample& s, const std::vector<cplx>& a, GevreyLevel level, int N_max = -1,
                       double max_drift = 0.2);

enum class FlatClass { ExpFlat, SuperExpFlat, NotFlat, Inconclusive };
std::string to_string(FlatClass c);

struct FlatnessFit {
    FlatClass cls = FlatClass::Inconclusive;
    double K = 0.0, M = 0.0, L = 0.0;
    std::vector<double> coef;   ///< on 1, 1/|eps|, (1/|eps|) log(1/|eps|), log(1/|eps|)
    std::vector<double> se;
    double effect_superexp = 0.0;  ///< e-folds explained by the x log x column beyond the others
    double effect_exp = 0.0;       ///< same for the 1/|eps| column in the reduced model
    double rms_residual = 0.0;
    int used = 0;
    int clipped = 0;
    std::string diagnostic;
};

struct FlatnessOptions {
    double significance = 3.0;   ///< |coef| > significance * standard error
    double min_effect = 1.0;     ///< minimum e-folds a term must explain on the sample
    int min_points = 6;
    double min_decades = 1.0;
};

/// Regression of log|Delta| on {1, x, x log x, log x} with x = 1/|eps|.
/// superexp-flat when the x log x coefficient is negative, significant and explains at least
/// min_effect e-folds; exp-flat when the same holds for x in the model without x log x.
/// Mapping: M = -c_xlogx, L = exp(c_x / c_xlogx) (superexp) or M = -c_x (exp), K = exp(c_1).
FlatnessFit flatness_classify(const SectorSample& s, const FlatnessOptions& opt = {});

/// CSV columns: re_eps, im_eps, re_value, im_value, log_scale (value = (re + i im) exp(log_scale)).
/// The reader also accepts four-column files without log_scale.
void write_sample_csv(std::ostream& os, const SectorSample& s);
SectorSample read_sample_csv(std::istream& is);

/// Reference Gevrey-1 function: integral over x > 0 of exp(-x) / (1 + eps x), with a_k = (-1)^k k!.
/// Evaluated through a continued fraction for exp(z) E1(z), z = 1/eps; eps off the negative axis.
Scaled euler_function(cplx eps);
cplx euler_coeff(int k);
/// Reference Gevrey-1+ coefficients a_k = (k / Log(k + 2))^k with a_0 = 1.
cplx gevrey1plus_coeff(int k);
/// The Gevrey-1+ series summed up to (excluding) its smallest term.
Scaled gevrey1plus_function(cplx eps);

/// Report text for a flatness fit (one key=value per line).
std::string describe(const FlatnessFit& f);
std::string describe(const GevreyFit& f);

}  // namespace borelkit
